//! On-disk cache of computed JSON payloads.
//!
//! One file per key, holding the payload and its SHA-256. Entries whose
//! checksum or key does not match are treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!("{}.json", &sha256_hex(key.as_bytes())[..32])))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let bytes = fs::read(self.path(key)?).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        if entry.key != key || entry.checksum != sha256_hex(entry.payload.as_bytes()) {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    /// Write temp then rename, so readers never see a partial entry.
    /// Failures are ignored: the cache is an optimization.
    pub fn put(&self, key: &str, value: &Value) {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return;
        };
        let _ = write_atomic(dir, &path, key, value);
    }

    pub fn get_or_compute<E>(
        &self,
        key: &str,
        f: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = f()?;
        self.put(key, &v);
        Ok(v)
    }
}

fn write_atomic(dir: &Path, path: &Path, key: &str, value: &Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let payload = serde_json::to_string(value)?;
    let entry = Entry {
        key: key.to_string(),
        checksum: sha256_hex(payload.as_bytes()),
        payload,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&serde_json::to_vec(&entry)?)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn key(kind: &str, n_param: u32, k_param: u32, rest: &str) -> String {
    format!("v{SCHEMA_VERSION}/N={n_param}/K={k_param}/{kind}/{rest}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let k = key("gram", 2, 2, "n=3");
        assert!(cache.get(&k).is_none());
        let v = json!({"rank": 4, "x": [1, 2, 3]});
        cache.put(&k, &v);
        assert_eq!(cache.get(&k), Some(v.clone()));
        assert!(cache.get(&key("gram", 2, 2, "n=4")).is_none());

        let path = cache.path(&k).unwrap();
        let mut entry: Entry = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        entry.payload = r#"{"rank":5}"#.into();
        fs::write(&path, serde_json::to_vec(&entry).unwrap()).unwrap();
        assert!(cache.get(&k).is_none());

        fs::write(&path, b"not json").unwrap();
        assert!(cache.get(&k).is_none());
    }

    #[test]
    fn disabled_cache_computes() {
        let cache = Cache::disabled();
        let v: Result<Value, ()> = cache.get_or_compute("k", || Ok(json!(1)));
        assert_eq!(v, Ok(json!(1)));
        assert!(cache.get("k").is_none());
    }
}

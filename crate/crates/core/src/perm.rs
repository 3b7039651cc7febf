//! Symmetric groups `S_n` (n ≤ 8) with an indexing that is stable under the
//! inclusion `S_{n-1} ⊂ S_n` (fixing the last point).
//!
//! A permutation is stored in one-line notation, 0-based: `w[j]` is the image
//! of `j`. Products compose right to left, `(uv)(j) = u(v(j))`, and `s_i`
//! swaps `i` and `i+1`. The index of `w` is `Σ_j c_j · j!` where
//! `c_j = #{i < j : w(i) > w(j)}`, so `Σ_j c_j` is the Coxeter length.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 8;

pub type Perm = Vec<u8>;

#[derive(Debug)]
pub struct SymmetricGroup {
    n: usize,
    perms: Vec<Perm>,
    length: Vec<u8>,
    /// `left[i][w]` is the index of `s_i w`.
    left: Vec<Vec<u32>>,
    /// `right[i][w]` is the index of `w s_i`.
    right: Vec<Vec<u32>>,
    /// Smallest `i` with `ℓ(s_i w) < ℓ(w)`; `None` for the identity.
    left_descent: Vec<Option<u8>>,
    /// Children in the tree whose parent map is `w ↦ s_{d(w)} w`, `d` the
    /// left descent above.
    children: Vec<Vec<u32>>,
}

static GROUPS: [OnceLock<Arc<SymmetricGroup>>; MAX_DEGREE + 1] =
    [const { OnceLock::new() }; MAX_DEGREE + 1];

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl SymmetricGroup {
    pub fn get(n: usize) -> Result<Arc<SymmetricGroup>> {
        if n > MAX_DEGREE {
            return Err(Error::LimitExceeded {
                what: "strand",
                requested: n,
                limit: MAX_DEGREE,
            });
        }
        Ok(GROUPS[n]
            .get_or_init(|| Arc::new(SymmetricGroup::build(n)))
            .clone())
    }

    fn build(n: usize) -> SymmetricGroup {
        let size = factorial(n);
        let perms: Vec<Perm> = (0..size).map(|i| decode(i, n)).collect();
        let length = perms
            .iter()
            .map(|p| inversions(p) as u8)
            .collect::<Vec<_>>();
        let gens = n.saturating_sub(1);
        let mut left = vec![vec![0u32; size]; gens];
        let mut right = vec![vec![0u32; size]; gens];
        for (idx, p) in perms.iter().enumerate() {
            for i in 0..gens {
                let mut l = p.clone();
                for v in l.iter_mut() {
                    if *v as usize == i {
                        *v = (i + 1) as u8;
                    } else if *v as usize == i + 1 {
                        *v = i as u8;
                    }
                }
                left[i][idx] = encode(&l) as u32;
                let mut r = p.clone();
                r.swap(i, i + 1);
                right[i][idx] = encode(&r) as u32;
            }
        }
        let left_descent = (0..size)
            .map(|w| {
                (0..gens)
                    .find(|&i| length[left[i][w] as usize] < length[w])
                    .map(|i| i as u8)
            })
            .collect::<Vec<_>>();
        let mut children = vec![Vec::new(); size];
        for w in 0..size {
            if let Some(i) = left_descent[w] {
                children[left[i as usize][w] as usize].push(w as u32);
            }
        }
        SymmetricGroup {
            n,
            perms,
            length,
            left,
            right,
            left_descent,
            children,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, w: usize) -> &Perm {
        &self.perms[w]
    }

    pub fn index_of(&self, p: &[u8]) -> Result<usize> {
        if p.len() != self.n || !is_permutation(p) {
            return Err(Error::Parse(format!(
                "{p:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        Ok(encode(p))
    }

    pub fn length(&self, w: usize) -> usize {
        self.length[w] as usize
    }

    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        self.left[i][w] as usize
    }

    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right[i][w] as usize
    }

    pub fn left_descent(&self, w: usize) -> Option<usize> {
        self.left_descent[w].map(|i| i as usize)
    }

    /// Children of `w` in the left-descent tree rooted at the identity.
    pub fn children(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.children[w].iter().map(|&c| c as usize)
    }

    /// Parent `s_d w` of `w` together with the descent `d`.
    pub fn parent(&self, w: usize) -> Option<(usize, usize)> {
        self.left_descent(w).map(|d| (self.left_mul(d, w), d))
    }

    /// A reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`.
    pub fn reduced_word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        while let Some(i) = self.left_descent(w) {
            word.push(i);
            w = self.left_mul(i, w);
        }
        word
    }

    pub fn inverse(&self, w: usize) -> usize {
        let p = &self.perms[w];
        let mut inv = vec![0u8; self.n];
        for (j, &v) in p.iter().enumerate() {
            inv[v as usize] = j as u8;
        }
        encode(&inv)
    }

    /// Index of the product `uv`.
    pub fn compose(&self, u: usize, v: usize) -> usize {
        let (pu, pv) = (&self.perms[u], &self.perms[v]);
        let prod: Perm = pv.iter().map(|&j| pu[j as usize]).collect();
        encode(&prod)
    }

    /// The longest element `w_0`.
    pub fn longest(&self) -> usize {
        let p: Perm = (0..self.n as u8).rev().collect();
        encode(&p)
    }
}

fn is_permutation(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        match seen.get_mut(v as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

fn inversions(p: &[u8]) -> usize {
    let mut c = 0;
    for j in 0..p.len() {
        for i in 0..j {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn encode(p: &[u8]) -> usize {
    let mut idx = 0;
    let mut fact = 1;
    for j in 0..p.len() {
        if j > 0 {
            fact *= j;
        }
        let c = (0..j).filter(|&i| p[i] > p[j]).count();
        idx += c * fact;
    }
    idx
}

pub fn decode(mut idx: usize, n: usize) -> Perm {
    let mut code = vec![0usize; n];
    for (j, slot) in code.iter_mut().enumerate() {
        let base = j + 1;
        *slot = idx % base;
        idx /= base;
    }
    // Fill from the last position: among the values still unused, w(j) has
    // exactly c_j larger ones placed before it.
    let mut remaining: Vec<u8> = (0..n as u8).collect();
    let mut p = vec![0u8; n];
    for j in (0..n).rev() {
        let pos = j - code[j];
        p[j] = remaining.remove(pos);
    }
    p
}

/// Embed a permutation of `b` points into `S_{a+b+c}` acting on the points
/// `a..a+b`.
pub fn shift(p: &[u8], a: usize, total: usize) -> Perm {
    let mut out: Perm = (0..total as u8).collect();
    for (j, &v) in p.iter().enumerate() {
        out[a + j] = v + a as u8;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_roundtrip() {
        for n in 0..=6 {
            for i in 0..factorial(n) {
                assert_eq!(encode(&decode(i, n)), i);
            }
        }
    }

    #[test]
    fn index_is_stable_under_inclusion() {
        let g4 = SymmetricGroup::get(4).unwrap();
        let g5 = SymmetricGroup::get(5).unwrap();
        for w in 0..g4.order() {
            let mut p = g4.perm(w).clone();
            p.push(4);
            assert_eq!(g5.index_of(&p).unwrap(), w);
        }
    }

    #[test]
    fn reduced_words_have_length_many_letters() {
        let g = SymmetricGroup::get(5).unwrap();
        for w in 0..g.order() {
            let word = g.reduced_word(w);
            assert_eq!(word.len(), g.length(w));
            let mut acc = 0;
            for &i in word.iter().rev() {
                acc = g.left_mul(i, acc);
            }
            assert_eq!(acc, w);
        }
    }

    #[test]
    fn left_and_right_actions() {
        let g = SymmetricGroup::get(4).unwrap();
        for w in 0..g.order() {
            for i in 0..3 {
                let s = g.left_mul(i, 0);
                assert_eq!(g.left_mul(i, w), g.compose(s, w));
                assert_eq!(g.right_mul(w, i), g.compose(w, s));
            }
            assert_eq!(g.compose(w, g.inverse(w)), 0);
        }
        assert_eq!(g.length(g.longest()), 6);
    }

    #[test]
    fn descent_tree_spans_group() {
        let g = SymmetricGroup::get(5).unwrap();
        let mut seen = 0;
        let mut stack = vec![0usize];
        while let Some(w) = stack.pop() {
            seen += 1;
            for c in g.children(w) {
                assert_eq!(g.parent(c), Some((w, g.left_descent(c).unwrap())));
                assert_eq!(g.length(c), g.length(w) + 1);
                stack.push(c);
            }
        }
        assert_eq!(seen, g.order());
    }

    #[test]
    fn rejects_non_permutations() {
        let g = SymmetricGroup::get(3).unwrap();
        assert!(g.index_of(&[0, 0, 1]).is_err());
        assert!(g.index_of(&[0, 1]).is_err());
        assert!(SymmetricGroup::get(9).is_err());
    }
}

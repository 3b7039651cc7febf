//! The purified category at finite strand count.
//!
//! `A_n = H_n / Rad(Tr)` is semisimple. An element `x` is represented in `A_n`
//! by its trace functional `Φ_x(T_y) = Tr(x T_y)`, which determines `x`
//! modulo the radical. Left multiplication by `T_s` acts on functionals by
//! `Φ ↦ Φ(· T_s)`, so the irreducible module `A_n e_λ` of a minimal
//! idempotent `e_λ` is built by closing `Φ_{e_λ}` under these maps. Its
//! character `χ_λ` gives the central idempotent through
//! `Φ_{z_λ} = Tr(e_λ)·χ_λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::diagrams::{self, YoungDiagram};
use crate::error::{Error, Result};
use crate::hecke::{self, BraidWord, HeckeElement, HeckeJson};
use crate::linalg::{self, Matrix};
use crate::perm::SymmetricGroup;
use crate::scalar::{Params, Scalar, ScalarJson};
use crate::trace::{self, Form};

/// `H_n` modulo the radical of the trace form.
#[derive(Debug)]
pub struct Purified {
    pub params: Params,
    pub n: usize,
    /// Bilinear Gram matrix `Tr(T_x T_y)`.
    pub gram: Matrix,
    /// Basis indices whose Gram columns span the column space.
    pub pivots: Vec<usize>,
}

type Key = (u32, u32, usize);

fn purified_cache() -> &'static Mutex<HashMap<Key, Arc<Purified>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Purified>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn block_cache() -> &'static Mutex<HashMap<Key, Arc<BlockData>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<BlockData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Purified {
    pub fn get(p: &Params, n: usize, limit: usize) -> Result<Arc<Purified>> {
        trace::check_gram_limit(n, limit)?;
        let key = (p.n, p.k, n);
        if let Some(a) = purified_cache().lock().expect("cache").get(&key) {
            return Ok(a.clone());
        }
        let gram = trace::gram_matrix(p, n, Form::Bilinear)?;
        let profile = linalg::rank_profile(&gram)?;
        let a = Arc::new(Purified {
            params: *p,
            n,
            gram,
            pivots: profile.pivot_cols,
        });
        purified_cache()
            .lock()
            .expect("cache")
            .insert(key, a.clone());
        Ok(a)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim_h(&self) -> usize {
        self.gram.len()
    }

    /// `Φ_x` on every basis element.
    pub fn functional(&self, x: &HeckeElement) -> Vec<Scalar> {
        let mut out = vec![self.params.zero(); self.dim_h()];
        for (a, c) in x.terms() {
            for (o, g) in out.iter_mut().zip(&self.gram[a]) {
                if !g.is_zero() {
                    *o += &(c * g);
                }
            }
        }
        out
    }

    /// The element `Σ_{i} c_i T_{pivot_i}` with the given functional.
    pub fn element_with_functional(&self, phi: &[Scalar]) -> Result<HeckeElement> {
        let elems = self.elements_with_functionals(&[phi.to_vec()])?;
        Ok(elems.into_iter().next().expect("one functional"))
    }

    pub fn elements_with_functionals(&self, phis: &[Vec<Scalar>]) -> Result<Vec<HeckeElement>> {
        let a: Matrix = self
            .pivots
            .iter()
            .map(|&i| {
                self.pivots
                    .iter()
                    .map(|&j| self.gram[i][j].clone())
                    .collect()
            })
            .collect();
        let b: Matrix = self
            .pivots
            .iter()
            .map(|&j| phis.iter().map(|phi| phi[j].clone()).collect())
            .collect();
        let c = linalg::solve(&a, &b)?;
        (0..phis.len())
            .map(|k| {
                HeckeElement::from_indexed(
                    &self.params,
                    self.n,
                    self.pivots
                        .iter()
                        .enumerate()
                        .map(|(i, &w)| (w, c[i][k].clone())),
                )
            })
            .collect()
    }
}

/// `Ψ ↦ Ψ(· T_s)` on functionals.
fn right_act(
    g: &SymmetricGroup,
    q: &Scalar,
    q_minus: &Scalar,
    phi: &[Scalar],
    s: usize,
) -> Vec<Scalar> {
    (0..phi.len())
        .map(|y| {
            let ys = g.right_mul(y, s);
            if g.length(ys) > g.length(y) {
                phi[ys].clone()
            } else {
                &(q_minus * &phi[y]) + &(q * &phi[ys])
            }
        })
        .collect()
}

/// Incremental row echelon form with unit pivots.
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: Vec<Scalar>) -> Result<bool> {
        let v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[pc].inv()?;
        let row = v.iter().map(|x| x * &inv).collect();
        self.rows.push((pc, row));
        Ok(true)
    }
}

/// An irreducible representation of `A_n`, given by `ρ(T_w)` for all `w`.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    pub rho: Vec<Matrix>,
}

impl Irrep {
    pub fn character(&self) -> Vec<Scalar> {
        self.rho
            .iter()
            .map(|m| {
                let mut acc = m[0][0].clone();
                for (i, row) in m.iter().enumerate().skip(1) {
                    acc += &row[i];
                }
                acc
            })
            .collect()
    }

    /// `ρ(x)`.
    pub fn image(&self, x: &HeckeElement) -> Matrix {
        let p = x.params();
        let mut out = vec![vec![p.zero(); self.dim]; self.dim];
        for (w, c) in x.terms() {
            for (orow, mrow) in out.iter_mut().zip(&self.rho[w]) {
                for (o, m) in orow.iter_mut().zip(mrow) {
                    if !m.is_zero() {
                        *o += &(c * m);
                    }
                }
            }
        }
        out
    }
}

/// The module `A_n e` for an idempotent `e` whose class is primitive.
pub fn irrep_of(alg: &Purified, e: &HeckeElement) -> Result<Irrep> {
    let p = alg.params;
    let g = SymmetricGroup::get(alg.n)?;
    let q = p.q();
    let q_minus = &q - &p.one();
    let phi0 = alg.functional(e);
    let mut echelon = Echelon { rows: Vec::new() };
    if !echelon.insert(phi0.clone())? {
        return Err(Error::Precondition("idempotent lies in the radical".into()));
    }
    let mut basis = vec![phi0];
    let mut i = 0;
    while i < basis.len() {
        for s in 0..alg.n.saturating_sub(1) {
            let v = right_act(&g, &q, &q_minus, &basis[i], s);
            if echelon.insert(v.clone())? {
                basis.push(v);
            }
        }
        i += 1;
    }
    let d = basis.len();
    let cols: Vec<usize> = echelon.rows.iter().map(|r| r.0).collect();
    // coordinates c of v solve Σ_i c_i basis[i][cols[k]] = v[cols[k]]
    let m: Matrix = cols
        .iter()
        .map(|&c| basis.iter().map(|b| b[c].clone()).collect())
        .collect();
    let ident: Matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { p.one() } else { p.zero() })
                .collect()
        })
        .collect();
    let m_inv = linalg::solve(&m, &ident)?;
    let gens: Vec<Matrix> = (0..alg.n.saturating_sub(1))
        .map(|s| {
            let images: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|b| {
                    let v = right_act(&g, &q, &q_minus, b, s);
                    cols.iter().map(|&c| v[c].clone()).collect()
                })
                .collect();
            // column j of ρ(T_s) = m_inv · images[j]
            let img_t: Matrix = (0..d)
                .map(|k| (0..d).map(|j| images[j][k].clone()).collect())
                .collect();
            linalg::matmul(&m_inv, &img_t)
        })
        .collect();
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&w| g.length(w));
    let mut rho: Vec<Option<Matrix>> = vec![None; g.order()];
    for w in order {
        rho[w] = Some(match g.parent(w) {
            None => ident.clone(),
            Some((parent, s)) => {
                linalg::matmul(&gens[s], rho[parent].as_ref().expect("parent first"))
            }
        });
    }
    Ok(Irrep {
        dim: d,
        rho: rho.into_iter().map(|r| r.expect("all built")).collect(),
    })
}

/// `dim span ρ(A_n)`; equals `dim²` exactly when the module is irreducible.
pub fn span_dimension(mats: &[Matrix]) -> Result<usize> {
    let flat: Matrix = mats
        .iter()
        .map(|m| m.iter().flat_map(|r| r.iter().cloned()).collect())
        .collect();
    linalg::rank(&flat)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PurifiedDim {
    pub dim: usize,
    pub radical_dim: usize,
}

pub fn purified_dim(p: &Params, n: usize, limit: usize) -> Result<PurifiedDim> {
    let alg = Purified::get(p, n, limit)?;
    Ok(PurifiedDim {
        dim: alg.rank(),
        radical_dim: alg.dim_h() - alg.rank(),
    })
}

/// `y_λ ⊗ c ⊗ ⋯ ⊗ c` with `c` the projector on a full column of `N` strands,
/// `(n - |λ|)/N` copies.
pub fn minimal_idempotent(p: &Params, n: usize, d: &YoungDiagram) -> Result<HeckeElement> {
    if !diagrams::in_gamma_n(p, n, d) {
        return Err(Error::Precondition(format!("{d} is not in Γ^{n} at {p}")));
    }
    let column = hecke::jones_wenzl(p, p.n as usize, hecke::COLUMN_KIND)?;
    let mut e = hecke::young_projector(p, d)?;
    for _ in 0..(n - d.size()) / p.n as usize {
        e = e.tensor(&column)?;
    }
    Ok(e)
}

#[derive(Clone, Debug)]
pub struct Block {
    pub label: YoungDiagram,
    /// Central idempotent (a representative modulo the radical).
    pub z: HeckeElement,
    pub dim: usize,
    pub minimal: HeckeElement,
    /// `Tr` of a rank-one idempotent of the block.
    pub weight: Scalar,
    pub irrep: Irrep,
}

impl Block {
    pub fn character(&self) -> Vec<Scalar> {
        self.irrep.character()
    }
}

#[derive(Clone, Debug)]
pub struct BlockData {
    pub params: Params,
    pub n: usize,
    pub blocks: Vec<Block>,
    pub algebra: Arc<Purified>,
}

impl BlockData {
    pub fn block(&self, d: &YoungDiagram) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.label == d)
    }

    pub fn to_json(&self, with_elements: bool) -> BlockDataJson {
        BlockDataJson {
            n_param: self.params.n,
            k_param: self.params.k,
            n: self.n,
            purified_dim: self.algebra.rank(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    label: b.label.clone(),
                    dim: b.dim,
                    weight: b.weight.to_json(),
                    z: with_elements.then(|| b.z.to_json()),
                    minimal: with_elements.then(|| b.minimal.to_json()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDataJson {
    #[serde(rename = "N")]
    pub n_param: u32,
    #[serde(rename = "K")]
    pub k_param: u32,
    pub n: usize,
    pub purified_dim: usize,
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub label: YoungDiagram,
    pub dim: usize,
    pub weight: ScalarJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<HeckeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<HeckeJson>,
}

/// Blocks of `A_n`, one per label in `Γ^n`. Cached per `(N, K, n)`.
pub fn central_idempotents(p: &Params, n: usize, limit: usize) -> Result<Arc<BlockData>> {
    trace::check_gram_limit(n, limit)?;
    let key = (p.n, p.k, n);
    if let Some(b) = block_cache().lock().expect("cache").get(&key) {
        return Ok(b.clone());
    }
    let alg = Purified::get(p, n, limit)?;
    let mut pending = Vec::new();
    for label in diagrams::gamma_n(p, n) {
        let minimal = minimal_idempotent(p, n, &label)?;
        let irrep = irrep_of(&alg, &minimal)?;
        let span = span_dimension(&irrep.rho)?;
        if span != irrep.dim * irrep.dim {
            return Err(Error::Internal(format!(
                "module of {label} at n = {n} is reducible ({span} vs {}²)",
                irrep.dim
            )));
        }
        let weight = trace::markov_trace(&minimal)?;
        pending.push((label, minimal, irrep, weight));
    }
    let phis: Vec<Vec<Scalar>> = pending
        .iter()
        .map(|(_, _, irrep, w)| irrep.character().iter().map(|c| c * w).collect())
        .collect();
    let zs = alg.elements_with_functionals(&phis)?;
    let blocks = pending
        .into_iter()
        .zip(zs)
        .map(|((label, minimal, irrep, weight), z)| Block {
            label,
            z,
            dim: irrep.dim,
            minimal,
            weight,
            irrep,
        })
        .collect();
    let data = Arc::new(BlockData {
        params: *p,
        n,
        blocks,
        algebra: alg,
    });
    block_cache()
        .lock()
        .expect("cache")
        .insert(key, data.clone());
    Ok(data)
}

/// Multiplicities of the blocks of `A_{n-1}` in the restriction of the
/// block `λ` of `A_n`, read off from `χ_λ(z_μ) = m_μ dim(μ)`.
pub fn restriction(
    p: &Params,
    n: usize,
    d: &YoungDiagram,
    limit: usize,
) -> Result<BTreeMap<YoungDiagram, u64>> {
    if n < 2 {
        return Err(Error::Precondition("restriction needs n ≥ 2".into()));
    }
    let upper = central_idempotents(p, n, limit)?;
    let lower = central_idempotents(p, n - 1, limit)?;
    let block = upper
        .block(d)
        .ok_or_else(|| Error::Precondition(format!("{d} is not in Γ^{n} at {p}")))?;
    let chi = block.character();
    let mut out = BTreeMap::new();
    for b in &lower.blocks {
        let z = b.z.embed(0, n)?;
        let mut value = p.zero();
        for (w, c) in z.terms() {
            value += &(c * &chi[w]);
        }
        let m = value
            .div_int(b.dim as i64)?
            .as_rational()
            .filter(|r| r.is_integer() && *r >= num_rational::BigRational::from_integer(0.into()))
            .ok_or_else(|| {
                Error::Internal(format!("non-integral multiplicity of {} in {d}", b.label))
            })?;
        let m: u64 = m
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal("multiplicity overflow".into()))?;
        if m > 0 {
            out.insert(b.label.clone(), m);
        }
    }
    Ok(out)
}

fn check_label(p: &Params, d: &YoungDiagram) -> Result<()> {
    if !d.in_gamma(p) {
        return Err(Error::Precondition(format!(
            "{d} is not a label of Γ at {p}"
        )));
    }
    Ok(())
}

/// Fusion multiplicity `N_{λμ}^ν`.
pub fn fusion(
    p: &Params,
    a: &YoungDiagram,
    b: &YoungDiagram,
    c: &YoungDiagram,
    limit: usize,
) -> Result<u64> {
    for d in [a, b, c] {
        check_label(p, d)?;
    }
    let n = a.size() + b.size();
    if !diagrams::in_gamma_n(p, n, c) {
        return Ok(0);
    }
    let blocks = central_idempotents(p, n, limit)?;
    let block = blocks.block(c).expect("every label of Γ^n has a block");
    fusion_in_block(p, a, b, block)
}

fn fusion_in_block(p: &Params, a: &YoungDiagram, b: &YoungDiagram, block: &Block) -> Result<u64> {
    let pi = hecke::young_projector(p, a)?.tensor(&hecke::young_projector(p, b)?)?;
    let rp = block.irrep.image(&pi);
    let mult = linalg::rank(&rp)?;
    // the compressed block z π A π z must be a full matrix algebra
    let compressed: Vec<Matrix> = block
        .irrep
        .rho
        .iter()
        .map(|r| linalg::matmul(&linalg::matmul(&rp, r), &rp))
        .collect();
    let dim = span_dimension(&compressed)?;
    if dim != mult * mult {
        return Err(Error::Internal(format!(
            "compressed block of {} in {a}⊗{b} has dimension {dim}, not {mult}²",
            block.label
        )));
    }
    Ok(mult as u64)
}

/// All fusion multiplicities over `Γ_{N,K}`.
#[derive(Clone, Debug)]
pub struct FusionTable {
    pub params: Params,
    pub labels: Vec<YoungDiagram>,
    /// `entries[(a, b)][c]`, indices into `labels`.
    pub entries: BTreeMap<(usize, usize), Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionJson {
    #[serde(rename = "N")]
    pub n_param: u32,
    #[serde(rename = "K")]
    pub k_param: u32,
    pub entries: Vec<FusionEntryJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionEntryJson {
    pub a: YoungDiagram,
    pub b: YoungDiagram,
    pub c: YoungDiagram,
    pub n: u64,
}

impl FusionTable {
    pub fn build(p: &Params, limit: usize) -> Result<FusionTable> {
        let labels = diagrams::labels(p).members;
        let max = labels.iter().map(YoungDiagram::size).max().unwrap_or(0);
        trace::check_gram_limit(2 * max, limit)?;
        let mut entries = BTreeMap::new();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                let n = a.size() + b.size();
                let blocks = central_idempotents(p, n, limit)?;
                let row = labels
                    .iter()
                    .map(|c| match blocks.block(c) {
                        Some(block) => fusion_in_block(p, a, b, block),
                        None => Ok(0),
                    })
                    .collect::<Result<Vec<_>>>()?;
                entries.insert((i, j), row);
            }
        }
        Ok(FusionTable {
            params: *p,
            labels,
            entries,
        })
    }

    pub fn index(&self, d: &YoungDiagram) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == d)
            .ok_or_else(|| Error::Precondition(format!("{d} is not a label")))
    }

    pub fn get(&self, a: &YoungDiagram, b: &YoungDiagram, c: &YoungDiagram) -> Result<u64> {
        Ok(self.entries[&(self.index(a)?, self.index(b)?)][self.index(c)?])
    }

    /// `(N_a)_{bc} = N_{ab}^c`.
    pub fn matrix(&self, a: usize) -> Vec<Vec<u64>> {
        (0..self.labels.len())
            .map(|b| self.entries[&(a, b)].clone())
            .collect()
    }

    pub fn to_json(&self) -> FusionJson {
        let mut entries = Vec::new();
        for (&(i, j), row) in &self.entries {
            for (k, &n) in row.iter().enumerate() {
                if n != 0 {
                    entries.push(FusionEntryJson {
                        a: self.labels[i].clone(),
                        b: self.labels[j].clone(),
                        c: self.labels[k].clone(),
                        n,
                    });
                }
            }
        }
        FusionJson {
            n_param: self.params.n,
            k_param: self.params.k,
            entries,
        }
    }
}

fn int_matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Dimension of the space on a genus `g` surface with the given boundary
/// labels: `(N_{λ_1} ⋯ N_{λ_k} H^g)_{∅∅}` with `H = Σ_μ N_μ N_{μ†}`.
pub fn mf_dim(table: &FusionTable, genus: usize, labels: &[YoungDiagram]) -> Result<u64> {
    let p = &table.params;
    let size = table.labels.len();
    let empty = table.index(&YoungDiagram::empty())?;
    let mut acc: Vec<Vec<u64>> = (0..size)
        .map(|i| (0..size).map(|j| u64::from(i == j)).collect())
        .collect();
    for d in labels {
        acc = int_matmul(&acc, &table.matrix(table.index(d)?));
    }
    if genus > 0 {
        let mut handle = vec![vec![0u64; size]; size];
        for (mu, d) in table.labels.iter().enumerate() {
            let dual = table.index(&diagrams::dagger(p, d)?)?;
            let prod = int_matmul(&table.matrix(mu), &table.matrix(dual));
            for (h, r) in handle.iter_mut().zip(prod) {
                for (x, y) in h.iter_mut().zip(r) {
                    *x += y;
                }
            }
        }
        for _ in 0..genus {
            acc = int_matmul(&acc, &handle);
        }
    }
    Ok(acc[empty][empty])
}

/// `[N]^{|λ|} Tr(y_λ)`.
pub fn qdim(p: &Params, d: &YoungDiagram) -> Result<Scalar> {
    check_label(p, d)?;
    let y = hecke::young_projector(p, d)?;
    Ok(&trace::loop_power(p, d.size()) * &trace::markov_trace(&y)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    /// `c` with `y_λ Δ² = c y_λ`, every crossing of the framing sign.
    pub raw: Scalar,
    /// `c` times the kink factor to the power `|λ|`.
    pub theta: Scalar,
}

pub fn twist(p: &Params, d: &YoungDiagram) -> Result<Twist> {
    check_label(p, d)?;
    if d.is_empty() {
        return Ok(Twist {
            raw: p.one(),
            theta: p.one(),
        });
    }
    let n = d.size();
    let y = hecke::young_projector(p, d)?;
    let yd = y.mul_braid(&BraidWord::full_twist(n, trace::FRAMING_SIGN))?;
    let (w, c0) = y.terms().next().expect("nonzero projector");
    let raw = yd.coefficient(w).div(c0)?;
    if yd != y.scale(&raw) {
        return Err(Error::Internal(format!("full twist is not scalar on {d}")));
    }
    let mut theta = raw.clone();
    let curl = trace::curl_factor(p, trace::FRAMING_SIGN);
    for _ in 0..n {
        theta = &theta * &curl;
    }
    Ok(Twist { raw, theta })
}

/// Double braiding of an `a`-block with a `b`-block, positive crossings.
pub fn hopf_braid(a: usize, b: usize) -> Result<BraidWord> {
    let n = (a + b).max(1);
    let first = BraidWord::block_transposition(a, b, 1);
    let second = BraidWord::block_transposition(b, a, 1);
    let word = first.word().iter().chain(second.word()).copied().collect();
    BraidWord::new(n, word)
}

/// `S̃_{λμ} = [N]^{a+b} Tr((y_λ ⊗ y_μ) β_{a,b})`.
pub fn s_entry(p: &Params, a: &YoungDiagram, b: &YoungDiagram) -> Result<Scalar> {
    check_label(p, a)?;
    check_label(p, b)?;
    let (la, lb) = (a.size(), b.size());
    let pi = hecke::young_projector(p, a)?.tensor(&hecke::young_projector(p, b)?)?;
    let pi = if la + lb == 0 {
        HeckeElement::identity(p, 1)?
    } else {
        pi
    };
    let x = pi.mul_braid(&hopf_braid(la, lb)?)?;
    let norm = trace::loop_power(p, la + lb);
    Ok(&norm * &trace::markov_trace(&x)?)
}

/// `q^{-2ab/N} S̃_{λμ}`: removes the linking contribution of the framed
/// generators, so a full column links trivially with everything.
pub fn s_entry_balanced(p: &Params, a: &YoungDiagram, b: &YoungDiagram) -> Result<Scalar> {
    let link = (a.size() * b.size()) as i64;
    Ok(s_entry(p, a, b)?.mul_zeta_pow(-4 * link))
}

/// The matrix `S̃` over `Γ_{N,K}` in label order.
/// Every entry uses at most `limit` strands.
pub fn s_matrix(p: &Params, limit: usize) -> Result<Matrix> {
    s_matrix_with(p, limit, s_entry)
}

pub fn s_matrix_balanced(p: &Params, limit: usize) -> Result<Matrix> {
    s_matrix_with(p, limit, s_entry_balanced)
}

fn s_matrix_with(
    p: &Params,
    limit: usize,
    entry: fn(&Params, &YoungDiagram, &YoungDiagram) -> Result<Scalar>,
) -> Result<Matrix> {
    let labels = diagrams::labels(p).members;
    let max = labels.iter().map(YoungDiagram::size).max().unwrap_or(0);
    let limit = limit.min(crate::perm::MAX_DEGREE);
    if 2 * max > limit {
        return Err(Error::LimitExceeded {
            what: "strand",
            requested: 2 * max,
            limit,
        });
    }
    labels
        .iter()
        .map(|a| labels.iter().map(|b| entry(p, a, b)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::GRAM_LIMIT;

    fn pr(n: u32, k: u32) -> Params {
        Params::new(n, k).unwrap()
    }

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn purified_dim_examples() {
        assert_eq!(
            purified_dim(&pr(2, 1), 2, GRAM_LIMIT).unwrap(),
            PurifiedDim {
                dim: 1,
                radical_dim: 1
            }
        );
        assert_eq!(
            purified_dim(&pr(2, 2), 3, GRAM_LIMIT).unwrap(),
            PurifiedDim {
                dim: 4,
                radical_dim: 2
            }
        );
        for (n, k) in [(2, 1), (3, 2), (4, 1)] {
            assert_eq!(
                purified_dim(&pr(n, k), 1, GRAM_LIMIT).unwrap(),
                PurifiedDim {
                    dim: 1,
                    radical_dim: 0
                }
            );
        }
    }

    #[test]
    fn minimal_idempotent_examples() {
        let p = pr(2, 2);
        assert_eq!(
            minimal_idempotent(&p, 1, &d(&[1])).unwrap(),
            HeckeElement::identity(&p, 1).unwrap()
        );
        let e = minimal_idempotent(&p, 2, &YoungDiagram::empty()).unwrap();
        assert_eq!(e, hecke::jones_wenzl(&p, 2, hecke::COLUMN_KIND).unwrap());
        let e = minimal_idempotent(&p, 2, &d(&[2])).unwrap();
        assert_eq!(e, hecke::jones_wenzl(&p, 2, hecke::ROW_KIND).unwrap());
        let alg = Purified::get(&p, 2, GRAM_LIMIT).unwrap();
        assert_eq!(irrep_of(&alg, &e).unwrap().dim, 1);
        assert!(minimal_idempotent(&p, 3, &d(&[2])).is_err());
    }

    #[test]
    fn blocks_at_small_n() {
        let p = pr(2, 2);
        let data = central_idempotents(&p, 2, GRAM_LIMIT).unwrap();
        let labels: Vec<_> = data.blocks.iter().map(|b| b.label.clone()).collect();
        assert_eq!(labels, vec![YoungDiagram::empty(), d(&[2])]);
        // the radical vanishes at n = 2, so the idempotents are exact
        assert_eq!(
            data.block(&YoungDiagram::empty()).unwrap().z,
            hecke::jones_wenzl(&p, 2, hecke::COLUMN_KIND).unwrap()
        );
        assert_eq!(
            data.block(&d(&[2])).unwrap().z,
            hecke::jones_wenzl(&p, 2, hecke::ROW_KIND).unwrap()
        );
    }

    #[test]
    fn blocks_sum_to_one_and_match_path_counts() {
        for (nn, kk) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let p = pr(nn, kk);
            for n in 1..=4 {
                let data = central_idempotents(&p, n, GRAM_LIMIT).unwrap();
                let alg = &data.algebra;
                let mut total = HeckeElement::zero(&p, n).unwrap();
                for b in &data.blocks {
                    assert_eq!(b.dim as u64, diagrams::path_count(&p, n, &b.label));
                    total = total.add(&b.z).unwrap();
                    for c in &data.blocks {
                        let img = c.irrep.image(&b.z);
                        for (i, row) in img.iter().enumerate() {
                            for (j, v) in row.iter().enumerate() {
                                let want = i == j && b.label == c.label;
                                assert_eq!(v.is_one(), want);
                                assert!(want || v.is_zero());
                            }
                        }
                    }
                }
                let one = HeckeElement::identity(&p, n).unwrap();
                assert_eq!(alg.functional(&total), alg.functional(&one));
                let sq: usize = data.blocks.iter().map(|b| b.dim * b.dim).sum();
                assert_eq!(sq, alg.rank());
            }
        }
    }

    #[test]
    fn restriction_matches_branching() {
        for (nn, kk) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let p = pr(nn, kk);
            for n in 2..=4 {
                for lab in diagrams::gamma_n(&p, n) {
                    let got = restriction(&p, n, &lab, GRAM_LIMIT).unwrap();
                    let want: BTreeMap<_, _> = diagrams::branch(&p, n, &lab)
                        .unwrap()
                        .into_iter()
                        .map(|d| (d, 1))
                        .collect();
                    assert_eq!(got, want, "{lab} at n = {n}, {p}");
                }
            }
        }
    }

    #[test]
    fn fusion_examples() {
        let p = pr(2, 2);
        let (e, b, r) = (YoungDiagram::empty(), d(&[1]), d(&[2]));
        assert_eq!(fusion(&p, &b, &b, &e, GRAM_LIMIT).unwrap(), 1);
        assert_eq!(fusion(&p, &b, &b, &r, GRAM_LIMIT).unwrap(), 1);
        assert_eq!(fusion(&p, &r, &r, &r, GRAM_LIMIT).unwrap(), 0);
        assert_eq!(fusion(&p, &r, &r, &e, GRAM_LIMIT).unwrap(), 1);
        assert_eq!(fusion(&p, &r, &b, &b, GRAM_LIMIT).unwrap(), 1);
        let p = pr(2, 1);
        assert_eq!(fusion(&p, &b, &b, &e, GRAM_LIMIT).unwrap(), 1);
        assert!(fusion(&p, &b, &b, &r, GRAM_LIMIT).is_err());
    }

    #[test]
    fn qdim_matches_content_formula() {
        for (nn, kk) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
            let p = pr(nn, kk);
            for lab in diagrams::labels(&p).members {
                if lab.size() > 4 {
                    continue;
                }
                let mut want = p.one();
                for ((_, c), h) in lab.contents().iter().enumerate().zip(lab.hooks()) {
                    let num = p.qint((nn as i64 + c) as u32);
                    want = &(&want * &num) * &p.qint(h).inv().unwrap();
                }
                assert_eq!(qdim(&p, &lab).unwrap(), want, "{lab} at {p}");
                let dual = diagrams::dagger(&p, &lab).unwrap();
                assert_eq!(qdim(&p, &lab).unwrap(), qdim(&p, &dual).unwrap());
            }
            assert!(qdim(&p, &YoungDiagram::empty()).unwrap().is_one());
            assert_eq!(qdim(&p, &d(&[1])).unwrap(), p.qint(nn));
        }
        // a full column is the unit object
        for (nn, kk) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let p = pr(nn, kk);
            let col = hecke::young_projector(&p, &YoungDiagram::column(nn)).unwrap();
            let v = &trace::loop_power(&p, nn as usize) * &trace::markov_trace(&col).unwrap();
            assert!(v.is_one());
        }
    }

    #[test]
    fn twist_examples() {
        let p = pr(3, 2);
        assert!(twist(&p, &YoungDiagram::empty()).unwrap().theta.is_one());
        let t = twist(&p, &d(&[1])).unwrap();
        assert!(t.raw.is_one());
        assert_eq!(t.theta, trace::curl_factor(&p, trace::FRAMING_SIGN));
        for lab in [d(&[2]), d(&[1, 1]), d(&[2, 1]), d(&[2, 2])] {
            twist(&p, &lab).unwrap();
        }
    }

    #[test]
    fn hopf_braid_is_pure() {
        for a in 0..4 {
            for b in 0..4 {
                let w = hopf_braid(a, b).unwrap();
                let g = SymmetricGroup::get(w.strands()).unwrap();
                let mut acc = 0;
                for &x in w.word() {
                    acc = g.right_mul(acc, x.unsigned_abs() as usize - 1);
                }
                assert_eq!(acc, 0);
                assert_eq!(w.word().len(), 2 * a * b);
            }
        }
    }

    #[test]
    fn s_matrix_examples() {
        for (nn, kk) in [(2, 1), (2, 2), (3, 1)] {
            let p = pr(nn, kk);
            let labels = diagrams::labels(&p).members;
            for s in [
                s_matrix(&p, GRAM_LIMIT).unwrap(),
                s_matrix_balanced(&p, GRAM_LIMIT).unwrap(),
            ] {
                assert!(s[0][0].is_one());
                for (i, a) in labels.iter().enumerate() {
                    assert_eq!(s[0][i], qdim(&p, a).unwrap());
                    for (j, row) in s.iter().enumerate() {
                        assert_eq!(s[i][j], row[i]);
                    }
                }
            }
            let s = s_matrix_balanced(&p, GRAM_LIMIT).unwrap();
            assert!(!linalg::determinant(&s).unwrap().is_zero());
        }
        let s = s_matrix(&pr(2, 1), GRAM_LIMIT).unwrap();
        assert!(!linalg::determinant(&s).unwrap().is_zero());
        // the raw matrix sees the column's linking phase at (2,2)
        let s = s_matrix(&pr(2, 2), GRAM_LIMIT).unwrap();
        assert!(linalg::determinant(&s).unwrap().is_zero());
    }

    #[test]
    fn full_column_links_trivially_after_balancing() {
        for (nn, kk) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let p = pr(nn, kk);
            let col = hecke::young_projector(&p, &YoungDiagram::column(nn)).unwrap();
            let box1 = HeckeElement::identity(&p, 1).unwrap();
            let x = col.tensor(&box1).unwrap();
            let x = x.mul_braid(&hopf_braid(nn as usize, 1).unwrap()).unwrap();
            let raw = &trace::loop_power(&p, nn as usize + 1) * &trace::markov_trace(&x).unwrap();
            assert_eq!(raw.mul_zeta_pow(-4 * nn as i64), p.qint(nn));
        }
    }

    #[test]
    fn s_matrix_respects_strand_limit() {
        assert!(matches!(
            s_matrix(&pr(3, 2), 6),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn mf_dim_examples() {
        let p = pr(2, 2);
        let table = FusionTable::build(&p, GRAM_LIMIT).unwrap();
        let b = d(&[1]);
        assert_eq!(mf_dim(&table, 0, &vec![b.clone(); 4]).unwrap(), 2);
        assert_eq!(mf_dim(&table, 1, &[]).unwrap(), 3);
        assert_eq!(mf_dim(&table, 0, &[]).unwrap(), 1);
        for a in &table.labels {
            for c in &table.labels {
                let want = u64::from(*c == diagrams::dagger(&p, a).unwrap());
                assert_eq!(mf_dim(&table, 0, &[a.clone(), c.clone()]).unwrap(), want);
            }
        }
    }
}

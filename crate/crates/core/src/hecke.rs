//! The Hecke algebra `H_n` at `q = e^{2πi/(N+K)}` in the basis `{T_w : w ∈ S_n}`.
//!
//! Internally `T_i = T_{s_i}` satisfies `T_i² = (q-1)T_i + q`, with
//! eigenvalues `q` and `-1`. Braid generators act as
//! `σ_i = -q^{-(N-1)/2N} T_i`, so `σ_i` has eigenvalues
//! `q^{(1-N)/2N}` (on the `T = -1` part) and `-q^{(1+N)/2N}` (on the `T = q`
//! part). With this normalization
//!
//! * `e_i = (q + q^{(N-1)/2N}σ_i)/(q+1) = (q - T_i)/(q+1)` is idempotent,
//! * `σ_i f_n = q^{(1-N)/2N} f_n` and `σ_i g_n = -q^{(1+N)/2N} g_n`,
//! * `q^{-1/2N}σ_i - q^{1/2N}σ_i^{-1} = (q^{-1/2} - q^{1/2})·1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};
use crate::perm::{self, SymmetricGroup};
use crate::scalar::{Params, Scalar, ScalarJson};

/// A word in the Artin generators: `+i` is `σ_i`, `-i` is `σ_i^{-1}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!(
                    "generator {g} is not valid on {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// Whitespace-separated nonzero integers. Without an explicit strand
    /// count the braid has `max |g| + 1` strands.
    pub fn parse(s: &str, strands: Option<usize>) -> Result<Self> {
        let word = s
            .split_whitespace()
            .map(|t| {
                i32::from_str(t).map_err(|_| Error::Parse(format!("bad braid generator {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let min = word.iter().map(|g| g.unsigned_abs() as usize + 1).max();
        let strands = match (strands, min) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Parse(
                    "the strand count is required for an empty braid word".into(),
                ))
            }
        };
        BraidWord::new(strands, word)
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            word: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Writhe, the signed crossing count.
    pub fn writhe(&self) -> i64 {
        self.word.iter().map(|g| g.signum() as i64).sum()
    }

    /// Markov stabilization `b ↦ b·σ_n^{±1}` on `n+1` strands.
    pub fn stabilize(&self, positive: bool) -> Self {
        let g = self.strands as i32;
        let mut word = self.word.clone();
        word.push(if positive { g } else { -g });
        BraidWord {
            strands: self.strands + 1,
            word,
        }
    }

    /// Full twist `Δ²` with every crossing of the given sign.
    pub fn full_twist(strands: usize, sign: i32) -> Self {
        let mut word = Vec::new();
        for _ in 0..strands {
            for i in 1..strands as i32 {
                word.push(i * sign.signum());
            }
        }
        BraidWord { strands, word }
    }

    /// Crossing of a block of `a` strands over a block of `b` strands, each
    /// crossing of the given sign.
    pub fn block_transposition(a: usize, b: usize, sign: i32) -> Self {
        let mut word = Vec::new();
        for i in 0..a {
            for j in 0..b {
                word.push(((a - i + j) as i32) * sign.signum());
            }
        }
        BraidWord {
            strands: (a + b).max(1),
            word,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}; {}]", self.strands, parts.join(" "))
    }
}

/// An element of `H_n`: a finite combination of basis elements `T_w`, keyed
/// by the permutation index of [`SymmetricGroup`]. Zero coefficients are
/// never stored.
#[derive(Clone)]
pub struct HeckeElement {
    params: Params,
    group: Arc<SymmetricGroup>,
    terms: BTreeMap<u32, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && self.strands() == other.strands()
            && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}[", self.strands())?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})T{:?}", self.group.perm(*w as usize))?;
        }
        write!(f, "]")
    }
}

fn accumulate(map: &mut BTreeMap<u32, Scalar>, w: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(w as u32) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl HeckeElement {
    pub fn zero(p: &Params, strands: usize) -> Result<Self> {
        Ok(HeckeElement {
            params: *p,
            group: SymmetricGroup::get(strands)?,
            terms: BTreeMap::new(),
        })
    }

    pub fn identity(p: &Params, strands: usize) -> Result<Self> {
        Self::basis(p, strands, 0)
    }

    /// `T_w` for the permutation with index `w`.
    pub fn basis(p: &Params, strands: usize, w: usize) -> Result<Self> {
        let mut x = Self::zero(p, strands)?;
        if w >= x.group.order() {
            return Err(Error::Precondition(format!(
                "no permutation with index {w}"
            )));
        }
        x.terms.insert(w as u32, p.one());
        Ok(x)
    }

    /// `T_i`, 1-based generator index.
    pub fn t_generator(p: &Params, strands: usize, i: usize) -> Result<Self> {
        check_generator(strands, i)?;
        Self::identity(p, strands)?.left_t(i - 1)
    }

    /// `σ_i^{±1}`, 1-based generator index.
    pub fn sigma(p: &Params, strands: usize, i: usize, inverse: bool) -> Result<Self> {
        check_generator(strands, i)?;
        let sign = if inverse { -1 } else { 1 };
        Self::identity(p, strands)?.right_sigma(i - 1, sign)
    }

    /// Build from `(one-line permutation (0-based), coefficient)` pairs.
    pub fn from_terms<I>(p: &Params, strands: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, Scalar)>,
    {
        let mut x = Self::zero(p, strands)?;
        for (perm, c) in terms {
            let w = x.group.index_of(&perm)?;
            accumulate(&mut x.terms, w, c);
        }
        Ok(x)
    }

    /// Build from `(group index, coefficient)` pairs.
    pub fn from_indexed<I>(p: &Params, strands: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut x = Self::zero(p, strands)?;
        for (w, c) in terms {
            if w >= x.group.order() {
                return Err(Error::Precondition(format!(
                    "no permutation with index {w}"
                )));
            }
            accumulate(&mut x.terms, w, c);
        }
        Ok(x)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn strands(&self) -> usize {
        self.group.degree()
    }

    pub fn group(&self) -> &Arc<SymmetricGroup> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: usize) -> Scalar {
        self.terms
            .get(&(w as u32))
            .cloned()
            .unwrap_or_else(|| self.params.zero())
    }

    /// `(index, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(w, c)| (*w as usize, c))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.strands() != other.strands() {
            return Err(Error::StrandMismatch {
                left: self.strands(),
                right: other.strands(),
            });
        }
        if self.params != other.params {
            return Err(Error::FieldMismatch {
                left: self.params.m(),
                right: other.params.m(),
            });
        }
        Ok(())
    }

    fn with_terms(&self, terms: BTreeMap<u32, Scalar>) -> Self {
        HeckeElement {
            params: self.params,
            group: self.group.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut terms = self.terms.clone();
        for (&w, c) in &other.terms {
            accumulate(&mut terms, w as usize, c.clone());
        }
        Ok(self.with_terms(terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut terms = self.terms.clone();
        for (&w, c) in &other.terms {
            accumulate(&mut terms, w as usize, -c);
        }
        Ok(self.with_terms(terms))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return self.with_terms(BTreeMap::new());
        }
        let terms = self.terms.iter().map(|(&w, c)| (w, c * s)).collect();
        self.with_terms(terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&w, c)| (w, -c)).collect();
        self.with_terms(terms)
    }

    /// Multiply by `T_i` (0-based) on the given side.
    fn act_t(&self, i: usize, side: Side) -> Self {
        let g = &self.group;
        // q = ζ^{2N}
        let two_n = 2 * self.params.n as i64;
        let mut out = BTreeMap::new();
        for (&w, c) in &self.terms {
            let w = w as usize;
            let sw = match side {
                Side::Left => g.left_mul(i, w),
                Side::Right => g.right_mul(w, i),
            };
            if g.length(sw) > g.length(w) {
                accumulate(&mut out, sw, c.clone());
            } else {
                let qc = c.mul_zeta_pow(two_n);
                accumulate(&mut out, w, &qc - c);
                accumulate(&mut out, sw, qc);
            }
        }
        self.with_terms(out)
    }

    /// Multiply by `T_i^{-1} = q^{-1}T_i + (q^{-1} - 1)` (0-based `i`).
    fn act_t_inv(&self, i: usize, side: Side) -> Self {
        let g = &self.group;
        let two_n = 2 * self.params.n as i64;
        let mut out = BTreeMap::new();
        for (&w, c) in &self.terms {
            let w = w as usize;
            let sw = match side {
                Side::Left => g.left_mul(i, w),
                Side::Right => g.right_mul(w, i),
            };
            let cq = c.mul_zeta_pow(-two_n);
            if g.length(sw) > g.length(w) {
                // q^{-1}T_{sw} + (q^{-1}-1)T_w
                accumulate(&mut out, sw, cq.clone());
                accumulate(&mut out, w, &cq - c);
            } else {
                // q^{-1}((q-1)T_w + qT_{sw}) + (q^{-1}-1)T_w = T_{sw}
                accumulate(&mut out, sw, c.clone());
            }
        }
        self.with_terms(out)
    }

    /// `T_i · x` with a 0-based generator index.
    pub fn left_t(&self, i: usize) -> Result<Self> {
        check_generator(self.strands(), i + 1)?;
        Ok(self.act_t(i, Side::Left))
    }

    /// `x · T_i` with a 0-based generator index.
    pub fn right_t(&self, i: usize) -> Result<Self> {
        check_generator(self.strands(), i + 1)?;
        Ok(self.act_t(i, Side::Right))
    }

    fn sigma_scale(&self, sign: i32) -> Scalar {
        // σ = -ζ^{-(N-1)} T, σ^{-1} = -ζ^{N-1} T^{-1}
        let e = (self.params.n as i64 - 1) * if sign > 0 { -1 } else { 1 };
        -self.params.zeta_pow(e)
    }

    fn act_sigma(&self, i: usize, sign: i32, side: Side) -> Self {
        let scale = self.sigma_scale(sign);
        let t = if sign > 0 {
            self.act_t(i, side)
        } else {
            self.act_t_inv(i, side)
        };
        t.scale(&scale)
    }

    /// `x · σ_i^{sign}`, 0-based generator index.
    pub fn right_sigma(&self, i: usize, sign: i32) -> Result<Self> {
        check_generator(self.strands(), i + 1)?;
        Ok(self.act_sigma(i, sign, Side::Right))
    }

    /// `σ_i^{sign} · x`, 0-based generator index.
    pub fn left_sigma(&self, i: usize, sign: i32) -> Result<Self> {
        check_generator(self.strands(), i + 1)?;
        Ok(self.act_sigma(i, sign, Side::Left))
    }

    /// `x · b` for a braid word on the same number of strands.
    pub fn mul_braid(&self, b: &BraidWord) -> Result<Self> {
        if b.strands() != self.strands() {
            return Err(Error::StrandMismatch {
                left: self.strands(),
                right: b.strands(),
            });
        }
        let mut x = self.clone();
        for &g in b.word() {
            x = x.act_sigma(g.unsigned_abs() as usize - 1, g.signum(), Side::Right);
        }
        Ok(x)
    }

    /// `b · x` for a braid word on the same number of strands.
    pub fn braid_mul(&self, b: &BraidWord) -> Result<Self> {
        if b.strands() != self.strands() {
            return Err(Error::StrandMismatch {
                left: b.strands(),
                right: self.strands(),
            });
        }
        let mut x = self.clone();
        for &g in b.word().iter().rev() {
            x = x.act_sigma(g.unsigned_abs() as usize - 1, g.signum(), Side::Left);
        }
        Ok(x)
    }

    /// Product `self · other`.
    ///
    /// `T_w · y` is computed for every `w` in the support by walking the
    /// left-descent tree of `S_n`, so each tree edge costs one generator
    /// action.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = BTreeMap::new();
        if self.is_zero() || other.is_zero() {
            return Ok(self.with_terms(out));
        }
        let g = self.group.clone();
        let needed = self.ancestors();
        let mut stack = vec![(0usize, other.clone())];
        while let Some((w, val)) = stack.pop() {
            if let Some(c) = self.terms.get(&(w as u32)) {
                for (&v, d) in &val.terms {
                    accumulate(&mut out, v as usize, c * d);
                }
            }
            for ch in g.children(w) {
                if needed[ch] {
                    let d = g.left_descent(ch).expect("non-root node");
                    stack.push((ch, val.act_t(d, Side::Left)));
                }
            }
        }
        Ok(self.with_terms(out))
    }

    /// Every node of the descent tree on a path from the root to the support.
    fn ancestors(&self) -> Vec<bool> {
        let g = &self.group;
        let mut needed = vec![false; g.order()];
        for &w in self.terms.keys() {
            let mut v = w as usize;
            while !needed[v] {
                needed[v] = true;
                match g.parent(v) {
                    Some((p, _)) => v = p,
                    None => break,
                }
            }
        }
        needed
    }

    /// The conjugate-linear anti-involution with `e_i* = e_i`, so
    /// `(T_w)* = (T_w)^{-1}` and `σ_i* = σ_i^{-1}`.
    pub fn star(&self) -> Self {
        let g = self.group.clone();
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return self.with_terms(out);
        }
        let needed = self.ancestors();
        let one = HeckeElement::identity(&self.params, self.strands()).expect("valid strands");
        let mut stack = vec![(0usize, one)];
        while let Some((w, inv)) = stack.pop() {
            if let Some(c) = self.terms.get(&(w as u32)) {
                let cc = c.conjugate();
                for (&v, d) in &inv.terms {
                    accumulate(&mut out, v as usize, &cc * d);
                }
            }
            for ch in g.children(w) {
                if needed[ch] {
                    // T_ch = T_d T_w, so T_ch^{-1} = T_w^{-1} T_d^{-1}
                    let d = g.left_descent(ch).expect("non-root node");
                    stack.push((ch, inv.act_t_inv(d, Side::Right)));
                }
            }
        }
        self.with_terms(out)
    }

    /// Place `self` on strands `offset..offset + self.strands()` of `total`.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.strands() > total {
            return Err(Error::Precondition(format!(
                "cannot place {} strands at offset {offset} among {total}",
                self.strands()
            )));
        }
        let target = SymmetricGroup::get(total)?;
        let terms = self
            .terms
            .iter()
            .map(|(&w, c)| {
                let p = perm::shift(self.group.perm(w as usize), offset, total);
                (perm::encode(&p) as u32, c.clone())
            })
            .collect();
        Ok(HeckeElement {
            params: self.params,
            group: target,
            terms,
        })
    }

    /// Juxtaposition `self ⊗ other`: `other` is shifted past `self`'s strands.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::FieldMismatch {
                left: self.params.m(),
                right: other.params.m(),
            });
        }
        let (a, b) = (self.strands(), other.strands());
        let group = SymmetricGroup::get(a + b)?;
        let mut terms = BTreeMap::new();
        for (&u, c) in &self.terms {
            for (&v, d) in &other.terms {
                let mut p = self.group.perm(u as usize).clone();
                p.extend(other.group.perm(v as usize).iter().map(|&x| x + a as u8));
                accumulate(&mut terms, perm::encode(&p), c * d);
            }
        }
        Ok(HeckeElement {
            params: self.params,
            group,
            terms,
        })
    }

    /// Conjugate by a basis element: `T_w^{-1} x T_w`.
    pub fn conjugate_by(&self, w: usize) -> Self {
        let word = self.group.reduced_word(w);
        let mut x = self.clone();
        // T_w = T_{i1}⋯T_{ik}
        for &i in &word {
            x = x.act_t_inv(i, Side::Left);
        }
        for &i in &word {
            x = x.act_t(i, Side::Right);
        }
        x
    }

    pub fn to_json(&self) -> HeckeJson {
        HeckeJson {
            n: self.strands(),
            terms: self
                .terms
                .iter()
                .map(|(&w, c)| TermJson {
                    perm: self
                        .group
                        .perm(w as usize)
                        .iter()
                        .map(|&v| v as u32 + 1)
                        .collect(),
                    coeff: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(p: &Params, json: &HeckeJson) -> Result<Self> {
        let field = p.field();
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let perm = t
                    .perm
                    .iter()
                    .map(|&v| {
                        if v == 0 || v as usize > json.n {
                            Err(Error::Parse(format!("permutation entry {v} out of range")))
                        } else {
                            Ok((v - 1) as u8)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((perm, Scalar::from_json(field.clone(), &t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(p, json.n, terms)
    }
}

/// Wire form: permutations in 1-based one-line notation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub perm: Vec<u32>,
    pub coeff: ScalarJson,
}

fn check_generator(strands: usize, i: usize) -> Result<()> {
    if i == 0 || i >= strands {
        return Err(Error::Precondition(format!(
            "generator {i} is not valid on {strands} strands"
        )));
    }
    Ok(())
}

/// Image of a braid in `H_n`.
pub fn from_braid(p: &Params, b: &BraidWord) -> Result<HeckeElement> {
    HeckeElement::identity(p, b.strands())?.mul_braid(b)
}

/// `e_i = (q - T_i)/(q + 1)`, 1-based `i`.
pub fn e_idempotent(p: &Params, strands: usize, i: usize) -> Result<HeckeElement> {
    check_generator(strands, i)?;
    let q = p.q();
    let denom = (&q + &p.one())
        .inv()
        .map_err(|_| Error::DivisionByZero("q + 1 vanishes".into()))?;
    let t = HeckeElement::t_generator(p, strands, i)?;
    let one = HeckeElement::identity(p, strands)?;
    Ok(one.scale(&q).sub(&t)?.scale(&denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JwKind {
    /// `f_n`, absorbing `σ_i` with `q^{(1-N)/2N}`.
    Sym,
    /// `g_n`, absorbing `σ_i` with `-q^{(1+N)/2N}`.
    Antisym,
}

impl FromStr for JwKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "f" => Ok(JwKind::Sym),
            "antisym" | "g" => Ok(JwKind::Antisym),
            _ => Err(Error::Parse(format!("unknown Jones-Wenzl kind {s:?}"))),
        }
    }
}

/// `[n]!·f_n = q^{n(n-1)/4} Σ_w (-q^{-1})^{ℓ(w)} T_w` or
/// `[n]!·g_n = q^{-n(n-1)/4} Σ_w T_w`. Always defined.
pub fn jones_wenzl_unnormalized(p: &Params, strands: usize, kind: JwKind) -> Result<HeckeElement> {
    let mut x = HeckeElement::zero(p, strands)?;
    let g = x.group.clone();
    let nn = p.n as i64;
    let half = (strands * strands.saturating_sub(1) / 2) as i64;
    // q^{n(n-1)/4} = ζ^{N·n(n-1)/2}
    let prefactor = match kind {
        JwKind::Sym => nn * half,
        JwKind::Antisym => -nn * half,
    };
    for w in 0..g.order() {
        let l = g.length(w) as i64;
        let c = match kind {
            JwKind::Sym => {
                let s = p.zeta_pow(prefactor - 2 * nn * l);
                if l % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            JwKind::Antisym => p.zeta_pow(prefactor),
        };
        x.terms.insert(w as u32, c);
    }
    Ok(x)
}

/// The Jones-Wenzl idempotent `f_n` (`Sym`) or `g_n` (`Antisym`).
pub fn jones_wenzl(p: &Params, strands: usize, kind: JwKind) -> Result<HeckeElement> {
    let fact = p
        .qfact(strands as u32)
        .inv()
        .map_err(|_| Error::DivisionByZero(format!("[{strands}]! vanishes at {p}")))?;
    Ok(jones_wenzl_unnormalized(p, strands, kind)?.scale(&fact))
}

/// The permutation taking row-major cell positions of `λ` to column-major
/// positions, as a group index.
pub fn row_to_column_permutation(d: &YoungDiagram) -> Result<usize> {
    let n = d.size();
    let cells: Vec<(usize, usize)> = d.cells().collect();
    let mut col_major = cells.clone();
    col_major.sort_by_key(|&(i, j)| (j, i));
    let mut p = vec![0u8; n];
    for (r, cell) in cells.iter().enumerate() {
        let k = col_major
            .iter()
            .position(|c| c == cell)
            .expect("same cells");
        p[r] = k as u8;
    }
    SymmetricGroup::get(n)?.index_of(&p)
}

/// Jones-Wenzl kind placed along the rows of a Young diagram. Under the
/// Markov trace `Tr(f_2) = Tr(e_1) = [N-1]/([2][N])`, so `f_n` carries the
/// quantum dimension of an exterior power and `g_n` that of a symmetric
/// power; rows get `g`, columns get `f`.
pub const ROW_KIND: JwKind = JwKind::Antisym;
pub const COLUMN_KIND: JwKind = JwKind::Sym;

/// `F_λ`: the unnormalized row projector on the consecutive strands of
/// each row.
pub fn row_symmetrizer(p: &Params, d: &YoungDiagram) -> Result<HeckeElement> {
    let mut acc = HeckeElement::identity(p, 0)?;
    for &r in d.rows() {
        acc = acc.tensor(&jones_wenzl_unnormalized(p, r as usize, ROW_KIND)?)?;
    }
    Ok(acc)
}

/// `G_λ`: the unnormalized column projectors along each column, i.e. the
/// consecutive ones conjugated by `T_π` where `π` moves row-major positions
/// to column-major ones.
pub fn column_antisymmetrizer(p: &Params, d: &YoungDiagram) -> Result<HeckeElement> {
    let mut acc = HeckeElement::identity(p, 0)?;
    for &c in d.transpose().rows() {
        acc = acc.tensor(&jones_wenzl_unnormalized(p, c as usize, COLUMN_KIND)?)?;
    }
    let pi = row_to_column_permutation(d)?;
    Ok(acc.conjugate_by(pi))
}

#[derive(Clone, Debug)]
pub struct YoungIdempotent {
    /// `ỹ_λ = F_λ G_λ`.
    pub quasi: HeckeElement,
    /// `y_λ = ỹ_λ / ∏_c [hl(c)]` when the hook product is nonzero.
    pub idem: Option<HeckeElement>,
    pub hook_product: Scalar,
}

pub fn young_idempotent(p: &Params, d: &YoungDiagram) -> Result<YoungIdempotent> {
    let quasi = row_symmetrizer(p, d)?.mul(&column_antisymmetrizer(p, d)?)?;
    let hook_product = d.quantum_hook_product(p);
    let idem = if hook_product.is_zero() {
        None
    } else {
        Some(quasi.scale(&hook_product.inv()?))
    };
    Ok(YoungIdempotent {
        quasi,
        idem,
        hook_product,
    })
}

/// `y_λ`, failing when `[hl(λ)] = 0`.
pub fn young_projector(p: &Params, d: &YoungDiagram) -> Result<HeckeElement> {
    young_idempotent(p, d)?.idem.ok_or_else(|| {
        Error::DivisionByZero(format!("quantum hook product of {d} vanishes at {p}"))
    })
}

/// A random element with `terms` basis elements and small integer
/// coefficients times random powers of `ζ`.
pub fn random_element<R: Rng>(
    p: &Params,
    strands: usize,
    terms: usize,
    rng: &mut R,
) -> Result<HeckeElement> {
    let mut x = HeckeElement::zero(p, strands)?;
    let order = x.group.order();
    let m = p.m() as i64;
    for _ in 0..terms {
        let w = rng.gen_range(0..order);
        let c = p
            .zeta_pow(rng.gen_range(0..m))
            .mul_int(rng.gen_range(-3i64..=3));
        accumulate(&mut x.terms, w, c);
    }
    Ok(x)
}

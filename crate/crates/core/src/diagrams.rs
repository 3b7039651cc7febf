//! Young diagrams and the label sets of the `SU(N)` level-`K` theory.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Params, Scalar};

/// A partition, stored as its weakly decreasing positive row lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<u32>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.rows
    }
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::Parse(format!(
                "{rows:?}: row lengths must be positive"
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "{rows:?}: rows must be weakly decreasing"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    /// Build from row lengths that may contain trailing zeros.
    pub fn from_padded(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Self::new(rows)
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn box_() -> Self {
        YoungDiagram { rows: vec![1] }
    }

    /// The single row `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            YoungDiagram { rows: vec![n] }
        }
    }

    /// The single column `(1^n)`.
    pub fn column(n: u32) -> Self {
        YoungDiagram {
            rows: vec![1; n as usize],
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Row `i` (0-based), zero beyond the last row.
    pub fn row_len(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn first_row(&self) -> u32 {
        self.row_len(0)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `λ^∨`, by counting the rows that reach each column.
    pub fn transpose(&self) -> YoungDiagram {
        let cols = (0..self.first_row())
            .map(|c| self.rows.iter().filter(|&&r| r > c).count() as u32)
            .collect();
        YoungDiagram { rows: cols }
    }

    /// Cells `(row, col)`, 0-based, in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
    }

    /// Hook lengths in row-major cell order.
    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        self.cells()
            .map(|(i, j)| (self.rows[i] - j as u32) + (t.rows[j] - i as u32) - 1)
            .collect()
    }

    /// Contents `j - i` in row-major cell order.
    pub fn contents(&self) -> Vec<i64> {
        self.cells().map(|(i, j)| j as i64 - i as i64).collect()
    }

    /// `∏_c [hl(c)]`, the product of quantum hook lengths.
    pub fn quantum_hook_product(&self, p: &Params) -> Scalar {
        self.hooks()
            .into_iter()
            .fold(p.one(), |acc, h| &acc * &p.qint(h))
    }

    /// `λ ∈ Γ_{N,K}`: fewer than `N` rows and `λ_1 ≤ K`.
    pub fn in_gamma(&self, p: &Params) -> bool {
        self.num_rows() < p.n as usize && self.first_row() <= p.k
    }

    /// `λ ∈ Γ̄_{N,K}`: at most `N` rows and `λ_1 ≤ K`.
    pub fn in_gamma_bar(&self, p: &Params) -> bool {
        self.num_rows() <= p.n as usize && self.first_row() <= p.k
    }

    /// `λ ∈ 𝒞_{N,K}`: `λ_1 + λ^∨_1 ≤ N + K`.
    pub fn in_c(&self, p: &Params) -> bool {
        self.is_empty() || self.first_row() as usize + self.num_rows() <= p.order()
    }

    /// Add a box at the end of row `i`, if the result is a partition.
    pub fn add_box(&self, i: usize) -> Option<YoungDiagram> {
        if i > self.rows.len() || (i > 0 && self.row_len(i - 1) == self.row_len(i)) {
            return None;
        }
        let mut rows = self.rows.clone();
        if i == rows.len() {
            rows.push(1);
        } else {
            rows[i] += 1;
        }
        Some(YoungDiagram { rows })
    }

    /// Remove the last box of row `i`, if the result is a partition.
    pub fn remove_box(&self, i: usize) -> Option<YoungDiagram> {
        if i >= self.rows.len() || self.row_len(i + 1) == self.rows[i] {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i] -= 1;
        Self::from_padded(rows).ok()
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `2,1`, `[2,1]`, `2 1`; the empty diagram is `""`, `[]` or `∅`.
impl std::str::FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if t.is_empty() || t == "∅" {
            return Ok(YoungDiagram::empty());
        }
        let rows = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad row length {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(rows)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n` with at most `max_rows` rows and first row at most
/// `max_first`, sorted lexicographically.
pub fn partitions(n: usize, max_rows: usize, max_first: usize) -> Vec<YoungDiagram> {
    fn go(
        rem: usize,
        cap: usize,
        rows_left: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<YoungDiagram>,
    ) {
        if rem == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for r in 1..=cap.min(rem) {
            cur.push(r as u32);
            go(rem - r, r, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_first, max_rows, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The label set `Γ_{N,K}` in its canonical order (size, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelSet {
    pub params: Params,
    pub members: Vec<YoungDiagram>,
}

impl LabelSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, d: &YoungDiagram) -> Option<usize> {
        self.members.iter().position(|m| m == d)
    }
}

pub fn labels(p: &Params) -> LabelSet {
    let max_rows = p.n as usize - 1;
    let max_first = p.k as usize;
    let mut members = Vec::new();
    for size in 0..=max_rows * max_first {
        members.extend(partitions(size, max_rows, max_first));
    }
    LabelSet {
        params: *p,
        members,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramStats {
    pub transpose: YoungDiagram,
    pub size: usize,
    pub hooks: Vec<u32>,
    pub quantum_hook_product: Scalar,
    pub in_gamma: bool,
    pub in_gamma_bar: bool,
    pub in_c_nk: bool,
}

pub fn diagram_stats(p: &Params, d: &YoungDiagram) -> DiagramStats {
    DiagramStats {
        transpose: d.transpose(),
        size: d.size(),
        hooks: d.hooks(),
        quantum_hook_product: d.quantum_hook_product(p),
        in_gamma: d.in_gamma(p),
        in_gamma_bar: d.in_gamma_bar(p),
        in_c_nk: d.in_c(p),
    }
}

/// `λ†`: the complement of `λ` in the `N × λ_1` rectangle, rotated by 180°.
pub fn dagger(p: &Params, d: &YoungDiagram) -> Result<YoungDiagram> {
    if !d.in_gamma_bar(p) {
        return Err(Error::Precondition(format!(
            "dagger needs at most N rows and first row at most K; got {d} at {p}"
        )));
    }
    let n = p.n as usize;
    let w = d.first_row();
    let rows = (0..n).map(|i| w - d.row_len(n - 1 - i)).collect();
    YoungDiagram::from_padded(rows)
}

/// `Γ^n_{N,K}`: labels with `|λ| ≤ n` and `N | n - |λ|`.
pub fn gamma_n(p: &Params, n: usize) -> Vec<YoungDiagram> {
    labels(p)
        .members
        .into_iter()
        .filter(|d| d.size() <= n && (n - d.size()).is_multiple_of(p.n as usize))
        .collect()
}

pub fn in_gamma_n(p: &Params, n: usize, d: &YoungDiagram) -> bool {
    d.in_gamma(p) && d.size() <= n && (n - d.size()).is_multiple_of(p.n as usize)
}

/// `Γ^{n-1,λ}`: labels at level `n-1` below `λ`. Either a box is removed from
/// `λ`, or (when `n > |λ|`) one box is added to each of the first `N-1` rows,
/// which is the unpadded picture of removing a box from the last of the
/// `N` rows of the padded diagram.
pub fn branch(p: &Params, n: usize, d: &YoungDiagram) -> Result<Vec<YoungDiagram>> {
    if n == 0 || !in_gamma_n(p, n, d) {
        return Err(Error::Precondition(format!("{d} is not in Γ^{n} at {p}")));
    }
    let mut out: Vec<YoungDiagram> = (0..d.num_rows()).filter_map(|i| d.remove_box(i)).collect();
    if n > d.size() {
        let rows = (0..p.n as usize - 1).map(|i| d.row_len(i) + 1).collect();
        let up = YoungDiagram::new(rows)?;
        if up.in_gamma(p) {
            out.push(up);
        }
    }
    debug_assert!(out.iter().all(|l| in_gamma_n(p, n - 1, l)));
    out.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
    Ok(out)
}

/// Number of branching paths `∅ = λ_0, …, λ_n = λ`; zero outside `Γ^n`.
pub fn path_count(p: &Params, n: usize, d: &YoungDiagram) -> u64 {
    let mut memo = HashMap::new();
    path_count_memo(p, n, d, &mut memo)
}

fn path_count_memo(
    p: &Params,
    n: usize,
    d: &YoungDiagram,
    memo: &mut HashMap<(usize, YoungDiagram), u64>,
) -> u64 {
    if !in_gamma_n(p, n, d) {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(&(n, d.clone())) {
        return v;
    }
    let v = branch(p, n, d)
        .expect("membership checked")
        .iter()
        .map(|l| path_count_memo(p, n - 1, l, memo))
        .sum();
    memo.insert((n, d.clone()), v);
    v
}

/// `(λ)_n`: attach `l = (n - |λ|)/N` columns of height `N`.
pub fn pad(p: &Params, d: &YoungDiagram, n: usize) -> Result<YoungDiagram> {
    let nn = p.n as usize;
    if d.num_rows() > nn || n < d.size() || !(n - d.size()).is_multiple_of(nn) {
        return Err(Error::Precondition(format!(
            "cannot pad {d} to {n} boxes with columns of height {nn}"
        )));
    }
    let l = ((n - d.size()) / nn) as u32;
    if l == 0 {
        return Ok(d.clone());
    }
    let rows = (0..nn).map(|i| d.row_len(i) + l).collect();
    YoungDiagram::new(rows)
}

/// Dominant weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weight {
    /// Coefficients of `Λ_1, …, Λ_{N-1}`.
    pub coefficients: Vec<u32>,
    /// `(Λ, θ)`.
    pub level: u32,
}

impl Weight {
    pub fn in_alcove(&self, p: &Params) -> bool {
        self.level <= p.k
    }
}

/// `Λ = Σ_i (λ_i - λ_{i+1}) Λ_i`, with `(Λ, θ) = λ_1 - λ_N`.
pub fn weight(p: &Params, d: &YoungDiagram) -> Result<Weight> {
    let n = p.n as usize;
    if d.num_rows() > n {
        return Err(Error::Precondition(format!(
            "{d} has more than N = {n} rows"
        )));
    }
    let coefficients = (0..n - 1)
        .map(|i| d.row_len(i) - d.row_len(i + 1))
        .collect();
    Ok(Weight {
        coefficients,
        level: d.first_row() - d.row_len(n - 1),
    })
}

/// Inverse of [`weight`] on `Γ_{N,K}`: the diagram with fewer than `N` rows.
pub fn diagram_of_weight(coefficients: &[u32]) -> YoungDiagram {
    let mut rows = vec![0u32; coefficients.len()];
    let mut acc = 0;
    for i in (0..coefficients.len()).rev() {
        acc += coefficients[i];
        rows[i] = acc;
    }
    YoungDiagram::from_padded(rows).expect("partial sums are decreasing")
}

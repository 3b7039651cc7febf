//! Exact linear algebra over `Q(ζ_m)`.
//!
//! Ranks are found in two stages. A reduction modulo a prime `p ≡ 1 (mod m)`,
//! sending `ζ` to a primitive `m`-th root of unity in `F_p`, gives candidate
//! pivot rows and columns. A nonzero minor modulo `p` is nonzero exactly, so
//! the candidate is a lower bound; the upper bound is certified by solving
//! for every remaining column exactly and checking the relation on all rows.
//! An unlucky prime only costs a retry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduction `Z[ζ_m][1/den] → F_p`.
#[derive(Clone, Debug)]
pub struct ModularImage {
    p: u64,
    big_p: BigInt,
    zeta_powers: Vec<u64>,
}

impl ModularImage {
    /// The `index`-th prime `p ≡ 1 (mod m)` below `2^62`, counting downwards.
    pub fn new(m: usize, index: usize) -> Self {
        let m64 = m as u64;
        let mut t = ((1u64 << 62) - 1) / m64;
        let mut found = 0;
        let p = loop {
            let cand = t * m64 + 1;
            if is_prime(cand) {
                if found == index {
                    break cand;
                }
                found += 1;
            }
            t -= 1;
        };
        let factors = prime_factors(m64);
        let omega = (2..)
            .map(|g| pow_mod(g, (p - 1) / m64, p))
            .find(|&w| factors.iter().all(|&r| pow_mod(w, m64 / r, p) != 1))
            .expect("F_p^* is cyclic");
        let mut zeta_powers = Vec::with_capacity(m);
        let mut acc = 1u64;
        for _ in 0..m {
            zeta_powers.push(acc);
            acc = mul_mod(acc, omega, p);
        }
        ModularImage {
            p,
            big_p: BigInt::from(p),
            zeta_powers,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn residue(&self, c: &BigInt) -> u64 {
        c.mod_floor(&self.big_p).to_u64().expect("residue fits")
    }

    /// Image of `s`, or `None` when `p` divides the denominator.
    pub fn reduce(&self, s: &Scalar) -> Option<u64> {
        let den = self.residue(s.denominator());
        if den == 0 {
            return None;
        }
        let mut acc = 0u64;
        for (i, c) in s.numerator().iter().enumerate() {
            if !c.is_zero() {
                acc = (acc + mul_mod(self.residue(c), self.zeta_powers[i], self.p)) % self.p;
            }
        }
        Some(mul_mod(acc, pow_mod(den, self.p - 2, self.p), self.p))
    }

    pub fn reduce_matrix(&self, m: &[Vec<Scalar>]) -> Option<Vec<Vec<u64>>> {
        m.iter()
            .map(|row| row.iter().map(|s| self.reduce(s)).collect())
            .collect()
    }
}

/// Row echelon form modulo `p`; returns `(pivot rows, pivot columns)` as
/// indices into the original matrix, in pivot order.
pub fn rank_profile_mod(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<usize>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut origin: Vec<usize> = (0..nrows).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        origin.swap(r, k);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for v in rows[r].iter_mut().skip(c) {
            *v = mul_mod(*v, inv, p);
        }
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        pivot_rows.push(origin[r]);
        pivot_cols.push(c);
        r += 1;
    }
    (pivot_rows, pivot_cols)
}

/// Solve `a·x = b` for a square nonsingular `a` and several right-hand sides
/// (`b` is `n × k`). Gauss-Jordan over the field.
pub fn solve(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Matrix> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::Precondition(
            "right-hand side has the wrong height".into(),
        ));
    }
    let k = b.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for c in 0..n {
        let k_piv = (c..n)
            .find(|&r| !aug[r][c].is_zero())
            .ok_or_else(|| Error::DivisionByZero("singular system".into()))?;
        aug.swap(c, k_piv);
        let inv = aug[c][c].inv()?;
        for v in aug[c].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        let pivot = aug[c].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..n + k].to_vec()).collect())
}

/// Determinant of a square matrix by elimination.
pub fn determinant(a: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Precondition("determinant of an empty matrix".into()));
    }
    let mut m = a.to_vec();
    let mut det = Scalar::one(m[0][0].field().clone());
    for c in 0..n {
        let Some(k) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(Scalar::zero(det.field().clone()));
        };
        if k != c {
            m.swap(c, k);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv()?;
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Ok(det)
}

/// Product of two matrices.
pub fn matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero(row[0].field().clone());
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Certified rank data of an exact matrix.
#[derive(Clone, Debug)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    /// For each non-pivot column `j`: coefficients `c` (aligned with
    /// `pivot_cols`) with `column j = Σ c_i · column pivot_cols[i]`.
    pub relations: Vec<(usize, Vec<Scalar>)>,
}

impl RankProfile {
    /// Right kernel basis: one vector `e_j - Σ c_i e_{pivot_i}` per
    /// non-pivot column, as sparse `(index, coefficient)` lists.
    pub fn kernel(&self) -> Vec<Vec<(usize, Scalar)>> {
        self.relations
            .iter()
            .map(|(j, c)| {
                let one = Scalar::one(c.first().map_or_else(
                    || panic!("kernel requested for a rank-zero relation"),
                    |s| s.field().clone(),
                ));
                let mut v = vec![(*j, one)];
                for (i, ci) in self.pivot_cols.iter().zip(c) {
                    if !ci.is_zero() {
                        v.push((*i, -ci));
                    }
                }
                v.sort_by_key(|t| t.0);
                v
            })
            .collect()
    }
}

const PRIME_ATTEMPTS: usize = 6;

/// Exact rank of `m` with pivot data and column relations.
pub fn rank_profile(m: &[Vec<Scalar>]) -> Result<RankProfile> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Precondition("ragged matrix".into()));
    }
    if nrows == 0 || ncols == 0 {
        return Ok(RankProfile {
            rank: 0,
            pivot_rows: vec![],
            pivot_cols: vec![],
            relations: vec![],
        });
    }
    let field = m[0][0].field().clone();
    let mut attempts = 0;
    for index in 0.. {
        if attempts == PRIME_ATTEMPTS {
            break;
        }
        let image = ModularImage::new(field.conductor(), index);
        let Some(reduced) = image.reduce_matrix(m) else {
            continue;
        };
        attempts += 1;
        let (pivot_rows, pivot_cols) = rank_profile_mod(reduced, image.prime());
        if let Some(relations) = certify(m, &pivot_rows, &pivot_cols)? {
            return Ok(RankProfile {
                rank: pivot_cols.len(),
                pivot_rows,
                pivot_cols,
                relations,
            });
        }
    }
    Err(Error::Internal(format!(
        "rank could not be certified after {PRIME_ATTEMPTS} primes"
    )))
}

/// Exact rank only.
pub fn rank(m: &[Vec<Scalar>]) -> Result<usize> {
    Ok(rank_profile(m)?.rank)
}

/// Non-pivot columns with their coefficients over the pivot columns.
type Relations = Vec<(usize, Vec<Scalar>)>;

fn certify(
    m: &[Vec<Scalar>],
    pivot_rows: &[usize],
    pivot_cols: &[usize],
) -> Result<Option<Relations>> {
    let ncols = m[0].len();
    let others: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    if pivot_cols.is_empty() {
        // rank 0 modulo p; certified only if the matrix is zero
        let zero = m.iter().all(|r| r.iter().all(Scalar::is_zero));
        return Ok(zero.then(Vec::new));
    }
    if others.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let a: Matrix = pivot_rows
        .iter()
        .map(|&r| pivot_cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let b: Matrix = pivot_rows
        .iter()
        .map(|&r| others.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let x = solve(&a, &b)?;
    let mut relations = Vec::with_capacity(others.len());
    for (k, &j) in others.iter().enumerate() {
        let c: Vec<Scalar> = x.iter().map(|row| row[k].clone()).collect();
        for (r, row) in m.iter().enumerate() {
            if pivot_rows.contains(&r) {
                continue;
            }
            let mut acc = row[j].clone();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                if !c[i].is_zero() && !row[pc].is_zero() {
                    acc -= &(&c[i] * &row[pc]);
                }
            }
            if !acc.is_zero() {
                return Ok(None);
            }
        }
        relations.push((j, c));
    }
    Ok(Some(relations))
}

//! The Markov trace on `H_n`, trace forms, Gram matrices and braid closures.
//!
//! `Tr` is normalized by `Tr(1) = 1` and `Tr(x e_n) = η Tr(x)`. On basis
//! elements it is evaluated by the Ocneanu recursion: every `w ∈ S_n` moving
//! the last point factors as `w = u·s_{n-2}⋯s_k` with `u ∈ S_{n-1}`, and
//! `Tr(a T_{n-2} b) = z Tr(ab)` for `a, b ∈ H_{n-1}` where `z = Tr(T_1)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{self, BraidWord, HeckeElement};
use crate::linalg::{self, Matrix};
use crate::perm::{SymmetricGroup, MAX_DEGREE};
use crate::scalar::{Params, Scalar};

/// Largest strand count for which full Gram matrices are built by default.
pub const GRAM_LIMIT: usize = 6;

/// Crossing sign used for framing corrections (twists). Its kink is
/// `-q^{-(N²+1)/2N}`, which equals `q^{(N²-1)/2N}` exactly when `K = N`; the
/// opposite sign carries the inverse factor.
pub const FRAMING_SIGN: i32 = -1;

/// `η = (q - q^N) / ((1 + q)(1 - q^N))`.
pub fn eta(p: &Params) -> Result<Scalar> {
    let q = p.q();
    let qn = p.q_pow(p.n as i64, 1);
    let den = &(&p.one() + &q) * &(&p.one() - &qn);
    (&q - &qn)
        .div(&den)
        .map_err(|_| Error::DivisionByZero(format!("η is undefined at {p}")))
}

/// `z = Tr(T_1) = q - (q + 1)η`.
pub fn markov_parameter(p: &Params) -> Result<Scalar> {
    let q = p.q();
    Ok(&q - &(&(&q + &p.one()) * &eta(p)?))
}

type TableKey = (u32, u32, usize);

fn tables() -> &'static Mutex<HashMap<TableKey, Arc<Vec<Scalar>>>> {
    static TABLES: OnceLock<Mutex<HashMap<TableKey, Arc<Vec<Scalar>>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Tr(T_w)` for every `w ∈ S_n`, indexed by group index. Cached.
pub fn basis_traces(p: &Params, n: usize) -> Result<Arc<Vec<Scalar>>> {
    if n > MAX_DEGREE {
        return Err(Error::LimitExceeded {
            what: "strand",
            requested: n,
            limit: MAX_DEGREE,
        });
    }
    let key = (p.n, p.k, n);
    if let Some(t) = tables().lock().expect("trace cache").get(&key) {
        return Ok(t.clone());
    }
    let table = if n <= 1 {
        vec![p.one()]
    } else {
        build_table(p, n, &basis_traces(p, n - 1)?)?
    };
    let table = Arc::new(table);
    tables()
        .lock()
        .expect("trace cache")
        .insert(key, table.clone());
    Ok(table)
}

fn build_table(p: &Params, n: usize, prev: &[Scalar]) -> Result<Vec<Scalar>> {
    let g = SymmetricGroup::get(n)?;
    let z = markov_parameter(p)?;
    let mut table = prev.to_vec();
    table.reserve(g.order() - prev.len());
    for w in prev.len()..g.order() {
        let k = g
            .perm(w)
            .iter()
            .position(|&v| v as usize == n - 1)
            .expect("permutation");
        let mut u = w;
        for i in k..n - 1 {
            u = g.right_mul(u, i);
        }
        let mut x = HeckeElement::basis(p, n, u)?;
        for i in (k..n.saturating_sub(2)).rev() {
            x = x.right_t(i)?;
        }
        let mut acc = p.zero();
        for (v, c) in x.terms() {
            acc += &(c * &prev[v]);
        }
        table.push(&z * &acc);
    }
    Ok(table)
}

/// The normalized Markov trace `Tr`.
pub fn markov_trace(x: &HeckeElement) -> Result<Scalar> {
    let p = x.params();
    let table = basis_traces(p, x.strands())?;
    let mut acc = p.zero();
    for (w, c) in x.terms() {
        acc += &(c * &table[w]);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `⟨x, y⟩ = Tr(xy)`.
    Bilinear,
    /// `(x, y) = Tr(y* x)`.
    Hermitian,
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bilinear" => Ok(Form::Bilinear),
            "hermitian" => Ok(Form::Hermitian),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

pub fn pairing(x: &HeckeElement, y: &HeckeElement, form: Form) -> Result<Scalar> {
    match form {
        Form::Bilinear => markov_trace(&x.mul(y)?),
        Form::Hermitian => markov_trace(&y.star().mul(x)?),
    }
}

/// Gram matrix on the `T_w` basis. Bilinear: `G[x][y] = Tr(T_x T_y)`.
/// Hermitian: `M[b][a] = (T_a, T_b) = Tr(T_b^{-1} T_a)`. In both cases an
/// element `x = Σ x_a T_a` lies in the radical iff the matrix kills its
/// coefficient vector.
pub fn gram_matrix(p: &Params, n: usize, form: Form) -> Result<Matrix> {
    let g = SymmetricGroup::get(n)?;
    let table = basis_traces(p, n)?;
    let size = g.order();
    let q = p.q();
    let q_inv = p.q_pow(-1, 1);
    let q_minus = &q - &p.one();
    let q_inv_minus = &q_inv - &p.one();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&w| g.length(w));
    let mut rows: Vec<Option<Vec<Scalar>>> = vec![None; size];
    for &w in &order {
        let row = match g.parent(w) {
            None => table.to_vec(),
            Some((parent, s)) => {
                let prev = rows[parent].as_ref().expect("parents come first");
                (0..size)
                    .map(|y| match form {
                        Form::Bilinear => {
                            // Tr(T_s T_x' T_y) = Tr(T_x' T_y T_s)
                            let ys = g.right_mul(y, s);
                            if g.length(ys) > g.length(y) {
                                prev[ys].clone()
                            } else {
                                &(&q_minus * &prev[y]) + &(&q * &prev[ys])
                            }
                        }
                        Form::Hermitian => {
                            // Tr(T_b'^{-1} T_s^{-1} T_a)
                            let sa = g.left_mul(s, y);
                            if g.length(sa) < g.length(y) {
                                prev[sa].clone()
                            } else {
                                &(&q_inv * &prev[sa]) + &(&q_inv_minus * &prev[y])
                            }
                        }
                    })
                    .collect()
            }
        };
        rows[w] = Some(row);
    }
    Ok(rows
        .into_iter()
        .map(|r| r.expect("every row built"))
        .collect())
}

#[derive(Clone, Debug)]
pub struct GramData {
    pub n: usize,
    pub form: Form,
    pub matrix: Matrix,
    pub rank: usize,
    /// Basis indices whose columns span the column space.
    pub pivots: Vec<usize>,
    pub kernel_basis: Vec<HeckeElement>,
}

impl GramData {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

pub fn check_gram_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "Gram strand",
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Gram matrix with exact rank and a basis of the radical.
pub fn gram(p: &Params, n: usize, form: Form, limit: usize) -> Result<GramData> {
    check_gram_limit(n, limit)?;
    let matrix = gram_matrix(p, n, form)?;
    let profile = linalg::rank_profile(&matrix)?;
    let kernel_basis = profile
        .kernel()
        .into_iter()
        .map(|v| HeckeElement::from_indexed(p, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(GramData {
        n,
        form,
        rank: profile.rank,
        pivots: profile.pivot_cols,
        matrix,
        kernel_basis,
    })
}

/// Smallest eigenvalue of the complex embedding of a hermitian matrix.
pub fn min_eigenvalue(m: &[Vec<Scalar>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    let dm = DMatrix::<Complex64>::from_fn(n, n, |i, j| m[i][j].embed());
    // symmetrize away rounding noise before the hermitian solver
    let h = (&dm + dm.adjoint()).scale(0.5);
    h.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// The curl scalar of a kink whose crossing has the given sign.
pub fn curl_factor(p: &Params, sign: i32) -> Scalar {
    let e = (p.n as i64) * (p.n as i64) + 1;
    let s = if sign.signum() == FRAMING_SIGN { -e } else { e };
    -p.zeta_pow(s)
}

/// Framed invariant of the braid closure, `[N]^n · Tr(b)`.
pub fn closure_invariant(p: &Params, b: &BraidWord) -> Result<Scalar> {
    let tr = markov_trace(&hecke::from_braid(p, b)?)?;
    Ok(&loop_power(p, b.strands()) * &tr)
}

/// `[N]^n`, the value of `n` unlinked loops.
pub fn loop_power(p: &Params, n: usize) -> Scalar {
    let qn = p.qint(p.n);
    let mut acc = p.one();
    for _ in 0..n {
        acc = &acc * &qn;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{e_idempotent, random_element};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PARAMS: &[(u32, u32)] = &[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)];

    fn pr(n: u32, k: u32) -> Params {
        Params::new(n, k).unwrap()
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&pr(2, 2)).unwrap(), pr(2, 2).ratio(1, 2));
        assert_eq!(eta(&pr(2, 1)).unwrap(), pr(2, 1).one());
        let p = pr(3, 1);
        let q = p.q();
        let q3 = &(&q * &q) * &q;
        let direct = &(&q - &q3) * &(&(&p.one() + &q) * &(&p.one() - &q3)).inv().unwrap();
        assert_eq!(eta(&p).unwrap(), direct);
    }

    #[test]
    fn markov_parameter_closed_form() {
        for &(n, k) in PARAMS {
            let p = pr(n, k);
            let q = p.q();
            let qn = p.q_pow(n as i64, 1);
            let want = (&qn * &(&p.one() - &q)).div(&(&p.one() - &qn)).unwrap();
            assert_eq!(markov_parameter(&p).unwrap(), want);
        }
    }

    #[test]
    fn trace_examples() {
        for &(n, k) in PARAMS {
            let p = pr(n, k);
            let et = eta(&p).unwrap();
            for strands in 1..=5 {
                let one = HeckeElement::identity(&p, strands).unwrap();
                assert!(markov_trace(&one).unwrap().is_one());
                for i in 1..strands {
                    let e = e_idempotent(&p, strands, i).unwrap();
                    assert_eq!(markov_trace(&e).unwrap(), et);
                }
            }
            let e1 = e_idempotent(&p, 3, 1).unwrap();
            let e2 = e_idempotent(&p, 3, 2).unwrap();
            assert_eq!(markov_trace(&e1.mul(&e2).unwrap()).unwrap(), &et * &et);
        }
    }

    #[test]
    fn trace_and_markov_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, k) in PARAMS {
            let p = pr(n, k);
            let et = eta(&p).unwrap();
            for strands in 2..=5 {
                let x = random_element(&p, strands, 6, &mut rng).unwrap();
                let y = random_element(&p, strands, 6, &mut rng).unwrap();
                assert_eq!(
                    markov_trace(&x.mul(&y).unwrap()).unwrap(),
                    markov_trace(&y.mul(&x).unwrap()).unwrap()
                );
                assert_eq!(
                    markov_trace(&x.star()).unwrap(),
                    markov_trace(&x).unwrap().conjugate()
                );
                let a = random_element(&p, strands - 1, 4, &mut rng).unwrap();
                let b = random_element(&p, strands - 1, 4, &mut rng).unwrap();
                let (ia, ib) = (a.embed(0, strands).unwrap(), b.embed(0, strands).unwrap());
                let e = e_idempotent(&p, strands, strands - 1).unwrap();
                assert_eq!(
                    markov_trace(&ia.mul(&e).unwrap()).unwrap(),
                    &et * &markov_trace(&a).unwrap()
                );
                let sandwich = ia.mul(&e).unwrap().mul(&ib).unwrap();
                assert_eq!(
                    markov_trace(&sandwich).unwrap(),
                    &et * &markov_trace(&a.mul(&b).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let p = pr(3, 2);
        let one = HeckeElement::identity(&p, 2).unwrap();
        assert!(pairing(&one, &one, Form::Bilinear).unwrap().is_one());
        let s = HeckeElement::sigma(&p, 2, 1, false).unwrap();
        let si = HeckeElement::sigma(&p, 2, 1, true).unwrap();
        assert!(pairing(&s, &si, Form::Bilinear).unwrap().is_one());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for strands in 1..=4 {
            let x = random_element(&p, strands, 5, &mut rng).unwrap();
            let v = pairing(&x, &x, Form::Hermitian).unwrap().embed();
            assert!(v.im.abs() < 1e-9 && v.re > -1e-9);
        }
    }

    #[test]
    fn gram_matrices_agree_with_pairing() {
        let p = pr(2, 2);
        let g = SymmetricGroup::get(3).unwrap();
        for form in [Form::Bilinear, Form::Hermitian] {
            let m = gram_matrix(&p, 3, form).unwrap();
            for (a, row) in m.iter().enumerate().take(g.order()) {
                for (b, entry) in row.iter().enumerate().take(g.order()) {
                    let ta = HeckeElement::basis(&p, 3, a).unwrap();
                    let tb = HeckeElement::basis(&p, 3, b).unwrap();
                    let want = match form {
                        Form::Bilinear => pairing(&ta, &tb, form).unwrap(),
                        Form::Hermitian => pairing(&tb, &ta, form).unwrap(),
                    };
                    assert_eq!(*entry, want);
                }
            }
        }
    }

    #[test]
    fn gram_rank_examples() {
        assert_eq!(
            gram(&pr(2, 1), 2, Form::Bilinear, GRAM_LIMIT).unwrap().rank,
            1
        );
        let d = gram(&pr(2, 2), 3, Form::Bilinear, GRAM_LIMIT).unwrap();
        assert_eq!(d.rank, 4);
        assert_eq!(d.kernel_dim(), 2);
        assert!(matches!(
            gram(&pr(2, 2), 7, Form::Bilinear, GRAM_LIMIT),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn radicals_coincide_and_hermitian_form_is_psd() {
        for &(n, k) in &[(2, 1), (2, 2), (3, 1)] {
            let p = pr(n, k);
            for strands in 1..=4 {
                let bil = gram(&p, strands, Form::Bilinear, GRAM_LIMIT).unwrap();
                let her = gram(&p, strands, Form::Hermitian, GRAM_LIMIT).unwrap();
                assert_eq!(bil.rank, her.rank);
                for x in &bil.kernel_basis {
                    for w in 0..SymmetricGroup::get(strands).unwrap().order() {
                        let t = HeckeElement::basis(&p, strands, w).unwrap();
                        assert!(pairing(x, &t, Form::Hermitian).unwrap().is_zero());
                    }
                    assert!(pairing(x, x, Form::Hermitian).unwrap().embed().norm() < 1e-8);
                }
                assert!(min_eigenvalue(&her.matrix) >= -1e-8);
            }
        }
    }

    #[test]
    fn closure_examples() {
        for &(n, k) in PARAMS {
            let p = pr(n, k);
            for strands in 1..=4 {
                let b = BraidWord::identity(strands);
                assert_eq!(closure_invariant(&p, &b).unwrap(), loop_power(&p, strands));
            }
            let pos = closure_invariant(&p, &BraidWord::new(2, vec![1]).unwrap()).unwrap();
            let neg = closure_invariant(&p, &BraidWord::new(2, vec![-1]).unwrap()).unwrap();
            let qn = p.qint(n);
            assert_eq!(pos, &curl_factor(&p, 1) * &qn);
            assert_eq!(neg, &curl_factor(&p, -1) * &qn);
            assert!((&curl_factor(&p, 1) * &curl_factor(&p, -1)).is_one());
            // the kink q^{(N²-1)/2N}, off by -q^{-N} unless K = N
            let printed = p.q_pow((n * n - 1) as i64, 2 * n as i64);
            let ratio = -p.q_pow(-(n as i64), 1);
            assert_eq!(curl_factor(&p, FRAMING_SIGN), &printed * &ratio);
            assert_eq!(curl_factor(&p, FRAMING_SIGN) == printed, n == k);
        }
        let p = pr(2, 2);
        let v = closure_invariant(&p, &BraidWord::new(2, vec![-1]).unwrap()).unwrap();
        let want = Complex64::from_polar(2f64.sqrt(), 6.0 * std::f64::consts::PI / 16.0);
        assert!((v.embed() - want).norm() < 1e-12);
    }

    #[test]
    fn closure_is_stable_under_stabilization() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for &(n, k) in PARAMS {
            let p = pr(n, k);
            for _ in 0..5 {
                let strands = rng.gen_range(1..=3usize);
                let len = rng.gen_range(0..6);
                let word: Vec<i32> = if strands > 1 {
                    (0..len)
                        .map(|_| {
                            let g = rng.gen_range(1..strands as i32);
                            if rng.gen_bool(0.5) {
                                g
                            } else {
                                -g
                            }
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                let b = BraidWord::new(strands, word).unwrap();
                let base = closure_invariant(&p, &b).unwrap();
                for sign in [1, -1] {
                    let s = closure_invariant(&p, &b.stabilize(sign > 0)).unwrap();
                    assert_eq!(s, &curl_factor(&p, sign) * &base);
                }
            }
        }
    }
}

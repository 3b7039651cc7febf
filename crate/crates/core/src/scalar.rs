//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ = e^{2πi/m}` with
//! `m = 2N(N+K)`.
//!
//! The field contains `q = ζ^{2N}`, `q^{1/2} = ζ^N` and `q^{1/2N} = ζ`, so every
//! scalar that shows up in the Hecke algebra, the trace and the category data
//! lives here. Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}`
//! with a common positive denominator, reduced modulo the cyclotomic
//! polynomial `Φ_m`. The representation is canonical (content of the numerator
//! coprime to the denominator), so equality is a coefficient compare.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(N, K)`: the rank of `SU(N)` and the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub k: u32,
}

impl Params {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!(
                "N must be at least 2, got {n}"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParams(format!(
                "K must be at least 1, got {k}"
            )));
        }
        if 2 * (n as u64) * (n as u64 + k as u64) > 4096 {
            return Err(Error::InvalidParams(format!(
                "conductor 2N(N+K) too large for N={n}, K={k}"
            )));
        }
        Ok(Self { n, k })
    }

    /// Conductor `m = 2N(N+K)` of the cyclotomic field.
    pub fn m(&self) -> usize {
        2 * self.n as usize * (self.n + self.k) as usize
    }

    /// The order `N+K` of `q`.
    pub fn order(&self) -> usize {
        (self.n + self.k) as usize
    }

    pub fn field(&self) -> Arc<Field> {
        Field::get(self.m())
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.field())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.field())
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_int(self.field(), v)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        Scalar::from_ratio(self.field(), BigInt::from(num), BigInt::from(den))
    }

    /// `ζ^e = q^{e/2N}`.
    pub fn zeta_pow(&self, e: i64) -> Scalar {
        Scalar::zeta_pow(self.field(), e)
    }

    /// `q^{num/den}`; `den` must divide `2N`.
    pub fn q_pow(&self, num: i64, den: i64) -> Scalar {
        let two_n = 2 * self.n as i64;
        assert!(
            den != 0 && two_n % den == 0,
            "q^(1/{den}) is not a power of zeta for N={}",
            self.n
        );
        self.zeta_pow(num * (two_n / den))
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1, 1)
    }

    /// Quantum integer `[j] = q^{(j-1)/2} + q^{(j-3)/2} + … + q^{-(j-1)/2}`.
    pub fn qint(&self, j: u32) -> Scalar {
        let field = self.field();
        let mut acc = Scalar::zero(field.clone());
        let n = self.n as i64;
        for t in 0..j as i64 {
            acc.add_zeta_pow(n * (j as i64 - 1 - 2 * t), &BigInt::one());
        }
        acc
    }

    /// Quantum factorial `[n]! = [1][2]…[n]`.
    pub fn qfact(&self, n: u32) -> Scalar {
        (1..=n).fold(self.one(), |acc, j| &acc * &self.qint(j))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, K={})", self.n, self.k)
    }
}

/// Tables for `Q(ζ_m)`: the cyclotomic polynomial and reduced powers of `ζ`.
#[derive(Debug)]
pub struct Field {
    m: usize,
    phi: usize,
    /// `Φ_m`, low degree first, monic of degree `phi`.
    cyclo: Vec<i64>,
    /// `ζ^j` reduced, for `0 <= j < m`.
    powers: Vec<Vec<i64>>,
}

static FIELDS: OnceLock<Mutex<HashMap<usize, Arc<Field>>>> = OnceLock::new();

impl Field {
    /// Shared field tables for conductor `m`; built once per `m`.
    pub fn get(m: usize) -> Arc<Field> {
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        guard
            .entry(m)
            .or_insert_with(|| Arc::new(Field::build(m)))
            .clone()
    }

    fn build(m: usize) -> Field {
        assert!(m >= 1);
        let cyclo = cyclotomic_polynomial(m);
        let phi = cyclo.len() - 1;
        let mut powers = Vec::with_capacity(m);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1] - top * cyclo[j];
            }
            cur[0] = -top * cyclo[0];
        }
        debug_assert_eq!(cur[0], 1);
        Field {
            m,
            phi,
            cyclo,
            powers,
        }
    }

    pub fn conductor(&self) -> usize {
        self.m
    }

    /// Degree `φ(m)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic(&self) -> &[i64] {
        &self.cyclo
    }

    /// Residues in `1..m` coprime to `m`; these index the Galois group.
    pub fn units(&self) -> Vec<usize> {
        (1..self.m).filter(|k| k.gcd(&self.m) == 1).collect()
    }

    /// Reduce a polynomial of arbitrary degree modulo `Φ_m` in place, returning
    /// the first `phi` coefficients.
    fn reduce(&self, mut buf: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if buf.len() > phi {
            for d in (phi..buf.len()).rev() {
                if buf[d].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut buf[d]);
                for j in 0..phi {
                    let cj = self.cyclo[j];
                    if cj != 0 {
                        buf[d - phi + j] -= &c * cj;
                    }
                }
            }
            buf.truncate(phi);
        } else {
            buf.resize(phi, BigInt::zero());
        }
        buf
    }
}

/// Integer polynomial long division `a / b` with `b` monic; panics if inexact.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for d in (db..a.len()).rev() {
        let c = rem[d];
        quot[d - db] = c;
        for j in 0..=db {
            rem[d - db + j] -= c * b[j];
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// `Φ_m` via `x^m - 1 = ∏_{d | m} Φ_d`.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    let mut memo: HashMap<usize, Vec<i64>> = HashMap::new();
    fn go(m: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut p = vec![0i64; m + 1];
        p[0] = -1;
        p[m] = 1;
        for d in 1..m {
            if m.is_multiple_of(d) {
                let phi_d = go(d, memo);
                p = poly_div_exact(&p, &phi_d);
            }
        }
        memo.insert(m, p.clone());
        p
    }
    go(m, &mut memo)
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<Field>,
    den: BigInt,
    num: Vec<BigInt>,
}

impl Scalar {
    pub fn zero(field: Arc<Field>) -> Self {
        let phi = field.phi;
        Scalar {
            field,
            den: BigInt::one(),
            num: vec![BigInt::zero(); phi],
        }
    }

    pub fn one(field: Arc<Field>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: Arc<Field>, v: i64) -> Self {
        let mut s = Self::zero(field);
        s.num[0] = BigInt::from(v);
        s
    }

    pub fn from_ratio(field: Arc<Field>, num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Self::zero(field);
        s.num[0] = num;
        s.den = den;
        s.normalize();
        s
    }

    pub fn zeta_pow(field: Arc<Field>, e: i64) -> Self {
        let m = field.m as i64;
        let t = e.rem_euclid(m) as usize;
        let num = field.powers[t].iter().map(|&c| BigInt::from(c)).collect();
        Scalar {
            field,
            den: BigInt::one(),
            num,
        }
    }

    /// Build from a numerator vector of length `φ(m)` (already reduced) and a
    /// nonzero denominator.
    pub fn from_parts(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Result<Self> {
        if num.len() != field.phi {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                field.phi,
                num.len()
            )));
        }
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        let mut s = Scalar { field, den, num };
        s.normalize();
        Ok(s)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &Scalar) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.m == other.field.m,
            "mixing scalars from Q(zeta_{}) and Q(zeta_{})",
            self.field.m,
            other.field.m
        );
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// `self += c·ζ^e` for an integer `c`; the denominator is respected.
    pub fn add_zeta_pow(&mut self, e: i64, c: &BigInt) {
        let m = self.field.m as i64;
        let t = e.rem_euclid(m) as usize;
        let scaled = c * &self.den;
        let field = self.field.clone();
        if t < field.phi {
            self.num[t] += scaled;
        } else {
            for (dst, &p) in self.num.iter_mut().zip(&field.powers[t]) {
                if p != 0 {
                    *dst += &scaled * p;
                }
            }
        }
        self.normalize();
    }

    /// Multiply by `ζ^e`. Units of `Z[ζ]` preserve the numerator content, so
    /// no renormalization is needed.
    pub fn mul_zeta_pow(&self, e: i64) -> Scalar {
        let field = &self.field;
        let m = field.m as i64;
        let phi = field.phi;
        let shift = e.rem_euclid(m) as usize;
        if shift == 0 {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (i + shift) % field.m;
            if t < phi {
                out[t] += c;
            } else {
                for (dst, &p) in out.iter_mut().zip(&field.powers[t]) {
                    if p != 0 {
                        *dst += c * p;
                    }
                }
            }
        }
        Scalar {
            field: field.clone(),
            den: self.den.clone(),
            num: out,
        }
    }

    pub fn mul_int(&self, v: i64) -> Scalar {
        if v == 0 {
            return Scalar::zero(self.field.clone());
        }
        let mut s = Scalar {
            field: self.field.clone(),
            den: self.den.clone(),
            num: self.num.iter().map(|c| c * v).collect(),
        };
        s.normalize();
        s
    }

    pub fn div_int(&self, v: i64) -> Result<Scalar> {
        if v == 0 {
            return Err(Error::DivisionByZero("integer divisor".into()));
        }
        let mut s = self.clone();
        s.den *= v;
        s.normalize();
        Ok(s)
    }

    /// Galois automorphism `ζ ↦ ζ^k` for `k` coprime to `m`.
    pub fn galois(&self, k: usize) -> Scalar {
        let field = &self.field;
        debug_assert_eq!(k.gcd(&field.m), 1);
        let mut out = vec![BigInt::zero(); field.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (i * k) % field.m;
            for (dst, &p) in out.iter_mut().zip(&field.powers[t]) {
                if p != 0 {
                    *dst += c * p;
                }
            }
        }
        Scalar {
            field: field.clone(),
            den: self.den.clone(),
            num: out,
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Scalar {
        self.galois(self.field.m - 1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let (_, n) = self.norm_and_cofactor();
        n
    }

    fn norm_and_cofactor(&self) -> (Scalar, BigRational) {
        let mut cof = Scalar::one(self.field.clone());
        for k in self.field.units() {
            if k != 1 {
                cof = &cof * &self.galois(k);
            }
        }
        let n = (&cof * self)
            .as_rational()
            .expect("norm of a cyclotomic element must be rational");
        (cof, n)
    }

    /// Multiplicative inverse via the Galois norm: `x^{-1} = (∏_{σ≠1} σ(x)) / N(x)`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(
                "inverting the zero element of the cyclotomic field".into(),
            ));
        }
        if self.num[1..].iter().all(Zero::is_zero) {
            return Ok(Scalar::from_ratio(
                self.field.clone(),
                self.den.clone(),
                self.num[0].clone(),
            ));
        }
        let (cof, n) = self.norm_and_cofactor();
        let mut out = cof;
        out.den *= n.numer();
        for c in &mut out.num {
            *c *= n.denom();
        }
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Complex embedding at `ζ = e^{2πi/m}`. Reporting only; never used for
    /// exact decisions.
    pub fn embed(&self) -> Complex64 {
        let m = self.field.m as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / m;
            acc += Complex64::from_polar(v, ang);
        }
        acc
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson {
            den: big_to_number(&self.den),
            num: self.num.iter().map(big_to_number).collect(),
        }
    }

    pub fn from_json(field: Arc<Field>, json: &ScalarJson) -> Result<Scalar> {
        let den = number_to_big(&json.den)?;
        if !den.is_positive() {
            return Err(Error::Parse("denominator must be positive".into()));
        }
        let num = json
            .num
            .iter()
            .map(number_to_big)
            .collect::<Result<Vec<_>>>()?;
        Scalar::from_parts(field, num, den)
    }
}

/// Wire form of a scalar: `(1/den)·Σ num[i]·ζ^i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub den: serde_json::Number,
    pub num: Vec<serde_json::Number>,
}

fn big_to_number(v: &BigInt) -> serde_json::Number {
    v.to_string()
        .parse()
        .expect("integer literal is a valid JSON number")
}

fn number_to_big(n: &serde_json::Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer, got {n}")))
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        let body = terms.join(" + ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check_field(rhs);
        if rhs.is_zero() {
            return;
        }
        if self.den == rhs.den {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
        } else {
            let g = self.den.gcd(&rhs.den);
            let fa = &rhs.den / &g;
            let fb = &self.den / &g;
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a *= &fa;
                *a += b * &fb;
            }
            self.den *= fa;
        }
        self.normalize();
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.check_field(rhs);
        if rhs.is_zero() {
            return;
        }
        if self.den == rhs.den {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a -= b;
            }
        } else {
            let g = self.den.gcd(&rhs.den);
            let fa = &rhs.den / &g;
            let fb = &self.den / &g;
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a *= &fa;
                *a -= b * &fb;
            }
            self.den *= fa;
        }
        self.normalize();
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        let field = self.field.clone();
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero(field);
        }
        let phi = field.phi;
        let mut buf = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += a * b;
                }
            }
        }
        let num = field.reduce(buf);
        let mut out = Scalar {
            field,
            den: &self.den * &rhs.den,
            num,
        };
        out.normalize();
        out
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            den: self.den.clone(),
            num: self.num.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Scalar {
    /// Sum that is well defined for an empty iterator.
    pub fn sum_in<'a, I: IntoIterator<Item = &'a Scalar>>(field: Arc<Field>, it: I) -> Scalar {
        let mut acc = Scalar::zero(field);
        for x in it {
            acc += x;
        }
        acc
    }
}

/// A random element with small integer coordinates over a small denominator.
pub fn random_scalar<R: Rng>(p: &Params, rng: &mut R) -> Scalar {
    let field = p.field();
    let num = (0..field.degree())
        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
        .collect();
    let den = BigInt::from(rng.gen_range(1i64..=4));
    Scalar::from_parts(field, num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const PARAMS: &[(u32, u32)] = &[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (2, 5)];

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(40).len(), 17);
    }

    #[test]
    fn zeta_has_order_m() {
        let p = Params::new(2, 2).unwrap();
        let z = p.zeta_pow(1);
        let mut acc = p.one();
        for i in 1..=p.m() {
            acc = &acc * &z;
            assert_eq!(acc.is_one(), i == p.m(), "zeta^{i}");
        }
    }

    #[test]
    fn qint_examples() {
        for &(n, k) in PARAMS {
            let p = Params::new(n, k).unwrap();
            assert!(p.qint(1).is_one());
            assert!(p.qint(p.order() as u32).is_zero());
            for j in 1..p.order() as u32 {
                assert!(!p.qint(j).is_zero(), "[{j}] vanished at {p}");
            }
        }
        let p = Params::new(2, 2).unwrap();
        assert_eq!(p.qint(2), &p.zeta_pow(2) + &p.zeta_pow(-2));
        assert!((p.qint(2).embed().re - 2f64.sqrt()).abs() < 1e-12);
        assert!(p.qint(2).embed().im.abs() < 1e-12);
    }

    #[test]
    fn qfact_examples() {
        let p = Params::new(3, 2).unwrap();
        assert!(p.qfact(0).is_one());
        assert_eq!(p.qfact(3), &(&p.qint(1) * &p.qint(2)) * &p.qint(3));
        let p = Params::new(2, 2).unwrap();
        assert!((p.qfact(2).embed().re - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn conjugate_examples() {
        let p = Params::new(3, 1).unwrap();
        assert!(p.one().conjugate().is_one());
        assert_eq!(p.zeta_pow(1).conjugate(), p.zeta_pow(p.m() as i64 - 1));
        for j in 0..10 {
            assert_eq!(p.qint(j).conjugate(), p.qint(j));
        }
    }

    #[test]
    fn invert_examples() {
        let p = Params::new(2, 2).unwrap();
        assert!(p.one().inv().unwrap().is_one());
        let inv2 = p.qint(2).inv().unwrap();
        assert!((inv2.embed().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(matches!(p.qint(4).inv(), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn embed_examples() {
        let p = Params::new(3, 2).unwrap();
        assert_eq!(p.zero().embed(), Complex64::new(0.0, 0.0));
        let z = p.zeta_pow(1).embed();
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / p.m() as f64);
        assert!((z - want).norm() < 1e-14);
    }

    #[test]
    fn q_powers_are_consistent() {
        let p = Params::new(3, 2).unwrap();
        let q = p.q();
        assert_eq!(&p.q_pow(1, 2) * &p.q_pow(1, 2), q);
        let mut acc = p.one();
        for _ in 0..2 * p.n {
            acc = &acc * &p.q_pow(1, 2 * p.n as i64);
        }
        assert_eq!(acc, q);
        let mut acc = p.one();
        for _ in 0..p.order() {
            acc = &acc * &q;
        }
        assert!(acc.is_one());
    }

    #[test]
    fn json_shape() {
        let p = Params::new(2, 1).unwrap();
        let x = p.ratio(3, 6);
        let v = serde_json::to_value(x.to_json()).unwrap();
        assert_eq!(v, serde_json::json!({"den": 2, "num": [1, 0, 0, 0]}));
        let back: ScalarJson = serde_json::from_value(v).unwrap();
        assert_eq!(Scalar::from_json(p.field(), &back).unwrap(), x);
    }

    #[test]
    fn random_field_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, k) in PARAMS {
            let p = Params::new(n, k).unwrap();
            for _ in 0..20 {
                let x = random_scalar(&p, &mut rng);
                let y = random_scalar(&p, &mut rng);
                let z = random_scalar(&p, &mut rng);
                assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                assert_eq!(&(&x + &y) - &y, x);
                let prod = (x.embed() * y.embed() - (&x * &y).embed()).norm();
                assert!(prod < 1e-10);
                assert_eq!(x.conjugate().conjugate(), x);
                assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
                assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
                assert!((x.conjugate().embed() - x.embed().conj()).norm() < 1e-10);
                if !x.is_zero() {
                    assert!((&x * &x.inv().unwrap()).is_one());
                }
            }
        }
    }
}

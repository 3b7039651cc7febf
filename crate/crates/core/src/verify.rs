//! Property suite over one parameter pair, reported check by check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{self, FusionTable, Purified};
use crate::diagrams::{self, YoungDiagram};
use crate::error::{Error, Result};
use crate::hecke::{self, BraidWord, HeckeElement, JwKind};
use crate::linalg;
use crate::scalar::{random_scalar, Params};
use crate::trace::{self, Form, FRAMING_SIGN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "N")]
    pub n_param: u32,
    #[serde(rename = "K")]
    pub k_param: u32,
    pub max_n: usize,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub overall: Status,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Families of checks, runnable separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Scalar,
    Diagrams,
    Convention,
    QuasiIdempotent,
    Orthogonality,
    Markov,
    Radical,
    Closure,
    Blocks,
    Fusion,
    ModularData,
    Twist,
    ModularFunctor,
}

impl Group {
    pub const ALL: [Group; 13] = [
        Group::Scalar,
        Group::Diagrams,
        Group::Convention,
        Group::QuasiIdempotent,
        Group::Orthogonality,
        Group::Markov,
        Group::Radical,
        Group::Closure,
        Group::Blocks,
        Group::Fusion,
        Group::ModularData,
        Group::Twist,
        Group::ModularFunctor,
    ];
}

enum Outcome {
    Pass(String),
    Skip(String),
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Check = std::result::Result<Outcome, Failure>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(Failure(format!($($arg)+)));
        }
    };
}

struct Runner {
    p: Params,
    max_n: usize,
    seed: u64,
    records: Vec<CheckRecord>,
}

impl Runner {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let (status, details) = match f() {
            Ok(Outcome::Pass(d)) => (Status::Pass, d),
            Ok(Outcome::Skip(d)) => (Status::Skip, d),
            Err(Failure(d)) => (Status::Fail, d),
        };
        self.records.push(CheckRecord {
            name: name.into(),
            status,
            details,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
}

/// Runs every group. `max_n` bounds strand counts and must not exceed `limit`.
pub fn verify(p: &Params, max_n: usize, seed: u64, limit: usize) -> Result<VerifyReport> {
    verify_groups(p, max_n, seed, limit, &Group::ALL)
}

pub fn verify_groups(
    p: &Params,
    max_n: usize,
    seed: u64,
    limit: usize,
    groups: &[Group],
) -> Result<VerifyReport> {
    trace::check_gram_limit(max_n, limit)?;
    if max_n == 0 {
        return Err(Error::Precondition("max_n must be at least 1".into()));
    }
    let mut r = Runner {
        p: *p,
        max_n,
        seed,
        records: Vec::new(),
    };
    for g in groups {
        match g {
            Group::Scalar => scalar_checks(&mut r),
            Group::Diagrams => diagram_checks(&mut r),
            Group::Convention => convention_checks(&mut r),
            Group::QuasiIdempotent => quasi_checks(&mut r),
            Group::Orthogonality => orthogonality_checks(&mut r),
            Group::Markov => markov_checks(&mut r),
            Group::Radical => radical_checks(&mut r),
            Group::Closure => closure_checks(&mut r),
            Group::Blocks => block_checks(&mut r),
            Group::Fusion => fusion_checks(&mut r),
            Group::ModularData => modular_checks(&mut r),
            Group::Twist => twist_checks(&mut r),
            Group::ModularFunctor => mf_checks(&mut r),
        }
    }
    let overall = if r.records.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(VerifyReport {
        n_param: p.n,
        k_param: p.k,
        max_n,
        seed,
        checks: r.records,
        overall,
    })
}

fn scalar_checks(r: &mut Runner) {
    let p = r.p;
    let mut rng = r.rng(1);
    r.run("scalar: embedding is multiplicative", || {
        for _ in 0..20 {
            let (x, y) = (random_scalar(&p, &mut rng), random_scalar(&p, &mut rng));
            let err = (x.embed() * y.embed() - (&x * &y).embed()).norm();
            ensure!(err < 1e-10, "embedding error {err:e} on {x} · {y}");
        }
        Ok(Outcome::Pass("20 random pairs".into()))
    });
    let mut rng = r.rng(2);
    r.run("scalar: conjugation is an involutive ring map", || {
        for _ in 0..20 {
            let (x, y) = (random_scalar(&p, &mut rng), random_scalar(&p, &mut rng));
            ensure!(x.conjugate().conjugate() == x, "not an involution on {x}");
            ensure!(
                (&x * &y).conjugate() == &x.conjugate() * &y.conjugate(),
                "not multiplicative"
            );
            ensure!(
                (&x + &y).conjugate() == &x.conjugate() + &y.conjugate(),
                "not additive"
            );
        }
        Ok(Outcome::Pass("20 random pairs".into()))
    });
    r.run("scalar: [j] vanishes exactly at j = N+K", || {
        let order = p.order() as u32;
        for j in 1..order {
            ensure!(!p.qint(j).is_zero(), "[{j}] = 0");
        }
        ensure!(p.qint(order).is_zero(), "[{order}] ≠ 0");
        Ok(Outcome::Pass(format!("j = 1..{order}")))
    });
    let mut rng = r.rng(3);
    r.run("scalar: inverses", || {
        for _ in 0..20 {
            let x = random_scalar(&p, &mut rng);
            if !x.is_zero() {
                ensure!((&x * &x.inv()?).is_one(), "x · x⁻¹ ≠ 1 for {x}");
            }
        }
        Ok(Outcome::Pass("20 random elements".into()))
    });
}

fn diagram_checks(r: &mut Runner) {
    let p = r.p;
    let nn = p.n as usize;
    r.run("diagrams: dagger is an involution on Γ", || {
        let labels = diagrams::labels(&p);
        ensure!(
            diagrams::dagger(&p, &YoungDiagram::empty())?.is_empty(),
            "∅† ≠ ∅"
        );
        for d in &labels.members {
            let dd = diagrams::dagger(&p, d)?;
            ensure!(dd.in_gamma(&p), "{d}† = {dd} leaves Γ");
            ensure!(diagrams::dagger(&p, &dd)? == *d, "{d}†† ≠ {d}");
        }
        Ok(Outcome::Pass(format!("{} labels", labels.len())))
    });
    r.run("diagrams: weights of Γ fill the alcove", || {
        let labels = diagrams::labels(&p).members;
        let mut seen = BTreeSet::new();
        for d in &labels {
            let w = diagrams::weight(&p, d)?;
            ensure!(w.in_alcove(&p), "{d} has level {}", w.level);
            ensure!(
                diagrams::diagram_of_weight(&w.coefficients) == *d,
                "weight of {d} does not invert"
            );
            seen.insert(w.coefficients);
        }
        let mut alcove = 0usize;
        let mut stack = vec![Vec::<u32>::new()];
        while let Some(v) = stack.pop() {
            if v.len() == nn - 1 {
                alcove += 1;
                ensure!(seen.contains(&v), "alcove weight {v:?} is not hit");
                continue;
            }
            let used: u32 = v.iter().sum();
            for c in 0..=p.k - used {
                let mut w = v.clone();
                w.push(c);
                stack.push(w);
            }
        }
        ensure!(
            alcove == labels.len(),
            "{alcove} alcove weights vs {} labels",
            labels.len()
        );
        Ok(Outcome::Pass(format!("{alcove} weights")))
    });
    r.run("diagrams: padding is a bijection for n ≤ 8", || {
        for n in 0..=8 {
            let padded: BTreeSet<YoungDiagram> = diagrams::gamma_n(&p, n)
                .iter()
                .map(|d| diagrams::pad(&p, d, n))
                .collect::<Result<_>>()?;
            ensure!(
                padded.len() == diagrams::gamma_n(&p, n).len(),
                "padding not injective at n = {n}"
            );
            let target: BTreeSet<YoungDiagram> = diagrams::partitions(n, nn, n)
                .into_iter()
                .filter(|d| d.first_row() - d.row_len(nn - 1) <= p.k)
                .collect();
            ensure!(
                padded == target,
                "padding image differs from target at n = {n}"
            );
        }
        Ok(Outcome::Pass("n = 0..8".into()))
    });
    r.run("diagrams: path counts follow branching", || {
        for n in 1..=8 {
            for d in diagrams::gamma_n(&p, n) {
                let sum: u64 = diagrams::branch(&p, n, &d)?
                    .iter()
                    .map(|l| diagrams::path_count(&p, n - 1, l))
                    .sum();
                ensure!(
                    sum == diagrams::path_count(&p, n, &d),
                    "recursion fails at {d}, n = {n}"
                );
            }
        }
        Ok(Outcome::Pass("n = 1..8".into()))
    });
    let max_n = r.max_n;
    r.run("diagrams: path counts bound the Gram rank", || {
        let mut fact = 1u64;
        let mut details = Vec::new();
        for n in 1..=max_n {
            fact *= n as u64;
            let total: u64 = diagrams::gamma_n(&p, n)
                .iter()
                .map(|d| diagrams::path_count(&p, n, d).pow(2))
                .sum();
            let rank = Purified::get(&p, n, max_n)?.rank() as u64;
            ensure!(total <= fact, "Σ paths² = {total} > {n}!");
            ensure!(
                total == rank,
                "Σ paths² = {total} but rank {rank} at n = {n}"
            );
            details.push(format!("n={n}: {total}/{fact}"));
        }
        Ok(Outcome::Pass(details.join(", ")))
    });
}

fn sigma(p: &Params, n: usize, i: usize) -> Result<HeckeElement> {
    HeckeElement::sigma(p, n, i, false)
}

fn convention_checks(r: &mut Runner) {
    let p = r.p;
    let max_n = r.max_n;
    r.run("hecke: braid relations", || {
        let top = max_n.clamp(3, 6);
        for n in 2..=top {
            for i in 1..n {
                let s = sigma(&p, n, i)?;
                let si = HeckeElement::sigma(&p, n, i, true)?;
                ensure!(
                    s.mul(&si)? == HeckeElement::identity(&p, n)?,
                    "σ_{i}σ_{i}⁻¹ ≠ 1 on {n} strands"
                );
                if i + 1 < n {
                    let t = sigma(&p, n, i + 1)?;
                    ensure!(
                        s.mul(&t)?.mul(&s)? == t.mul(&s)?.mul(&t)?,
                        "braid relation fails at i = {i}, n = {n}"
                    );
                }
            }
        }
        Ok(Outcome::Pass(format!("n ≤ {top}")))
    });
    r.run("hecke: skein relation", || {
        let lhs = sigma(&p, 2, 1)?
            .scale(&p.zeta_pow(-1))
            .sub(&HeckeElement::sigma(&p, 2, 1, true)?.scale(&p.zeta_pow(1)))?;
        let rhs = HeckeElement::identity(&p, 2)?.scale(&(&p.q_pow(-1, 2) - &p.q_pow(1, 2)));
        ensure!(
            lhs == rhs,
            "q^(-1/2N)σ - q^(1/2N)σ⁻¹ ≠ (q^(-1/2) - q^(1/2))"
        );
        Ok(Outcome::Pass("exact".into()))
    });
    let mut rng = r.rng(4);
    r.run("hecke: star is a conjugate-linear anti-involution", || {
        for n in 1..=max_n {
            let x = hecke::random_element(&p, n, 5, &mut rng)?;
            let y = hecke::random_element(&p, n, 5, &mut rng)?;
            ensure!(x.star().star() == x, "x** ≠ x on {n} strands");
            ensure!(
                x.mul(&y)?.star() == y.star().mul(&x.star())?,
                "(xy)* ≠ y*x* on {n} strands"
            );
            let c = random_scalar(&p, &mut rng);
            ensure!(
                x.scale(&c).star() == x.star().scale(&c.conjugate()),
                "star not conjugate-linear"
            );
        }
        Ok(Outcome::Pass(format!("n ≤ {max_n}")))
    });
    let fval = p.zeta_pow(1 - p.n as i64);
    let gval = -p.zeta_pow(1 + p.n as i64);
    for n in 2..=max_n {
        r.run(
            format!("convention n={n}: e_i idempotent, f_n and g_n absorb σ_i"),
            || {
                for i in 1..n {
                    let e = hecke::e_idempotent(&p, n, i)?;
                    ensure!(e.mul(&e)? == e, "e_{i}² ≠ e_{i}");
                }
                if n >= p.order() {
                    return Ok(Outcome::Pass(format!(
                        "e_i idempotent; [{n}]! = 0 so f_{n}, g_{n} are undefined"
                    )));
                }
                let f = hecke::jones_wenzl(&p, n, JwKind::Sym)?;
                let g = hecke::jones_wenzl(&p, n, JwKind::Antisym)?;
                ensure!(f.mul(&f)? == f, "f_{n} not idempotent");
                ensure!(g.mul(&g)? == g, "g_{n} not idempotent");
                for i in 1..n {
                    let s = sigma(&p, n, i)?;
                    ensure!(
                        s.mul(&f)? == f.scale(&fval),
                        "σ_{i} f_{n} ≠ q^((1-N)/2N) f_{n}"
                    );
                    ensure!(
                        f.mul(&s)? == f.scale(&fval),
                        "f_{n} σ_{i} ≠ q^((1-N)/2N) f_{n}"
                    );
                    ensure!(
                        s.mul(&g)? == g.scale(&gval),
                        "σ_{i} g_{n} ≠ -q^((1+N)/2N) g_{n}"
                    );
                    ensure!(
                        g.mul(&s)? == g.scale(&gval),
                        "g_{n} σ_{i} ≠ -q^((1+N)/2N) g_{n}"
                    );
                    let e = hecke::e_idempotent(&p, n, i)?;
                    ensure!(e.mul(&f)? == f && f.mul(&e)? == f, "e_{i} f_{n} ≠ f_{n}");
                    ensure!(
                        e.mul(&g)?.is_zero() && g.mul(&e)?.is_zero(),
                        "e_{i} g_{n} ≠ 0"
                    );
                }
                Ok(Outcome::Pass("exact".into()))
            },
        );
    }
}

fn quasi_checks(r: &mut Runner) {
    let p = r.p;
    for n in 1..=r.max_n {
        r.run(format!("quasi-idempotent |λ|={n}"), || {
            let shapes: Vec<_> = diagrams::partitions(n, n, n)
                .into_iter()
                .filter(|d| d.in_c(&p))
                .collect();
            if shapes.is_empty() {
                return Ok(Outcome::Skip(format!("no diagram of size {n} in 𝒞")));
            }
            for d in &shapes {
                let y = hecke::young_idempotent(&p, d)?;
                ensure!(
                    y.quasi.mul(&y.quasi)? == y.quasi.scale(&y.hook_product),
                    "ỹ² ≠ [hl]ỹ for {d}"
                );
            }
            let names: Vec<String> = shapes.iter().map(|d| d.to_string()).collect();
            Ok(Outcome::Pass(names.join(" ")))
        });
    }
}

fn orthogonality_checks(r: &mut Runner) {
    let p = r.p;
    for n in 1..=r.max_n.min(4) {
        let mut rng = r.rng(100 + n as u64);
        r.run(format!("orthogonality |λ|={n}"), || {
            let ys: Vec<(YoungDiagram, HeckeElement)> = diagrams::partitions(n, n, n)
                .into_iter()
                .filter(|d| d.in_c(&p))
                .filter_map(|d| hecke::young_projector(&p, &d).ok().map(|y| (d, y)))
                .collect();
            for (a, ya) in &ys {
                for (b, yb) in &ys {
                    for _ in 0..20 {
                        let x = hecke::random_element(&p, n, 6, &mut rng)?;
                        let s = ya.mul(&x)?.mul(yb)?;
                        if a != b {
                            ensure!(s.is_zero(), "y_{a} x y_{b} ≠ 0");
                        } else {
                            ensure!(
                                proportional(&s, ya)?,
                                "y_{a} x y_{a} not proportional to y_{a}"
                            );
                        }
                    }
                }
            }
            Ok(Outcome::Pass(format!(
                "{} idempotents, 20 samples per pair",
                ys.len()
            )))
        });
    }
}

fn proportional(x: &HeckeElement, y: &HeckeElement) -> Result<bool> {
    let Some((w, c)) = y.terms().next() else {
        return Ok(x.is_zero());
    };
    let ratio = x.coefficient(w).div(c)?;
    Ok(*x == y.scale(&ratio))
}

fn markov_checks(r: &mut Runner) {
    let p = r.p;
    for n in 1..=r.max_n {
        let mut rng = r.rng(200 + n as u64);
        r.run(format!("markov n={n}"), || {
            let eta = trace::eta(&p)?;
            ensure!(
                trace::markov_trace(&HeckeElement::identity(&p, n)?)?.is_one(),
                "Tr(1) ≠ 1"
            );
            for i in 1..n {
                let e = hecke::e_idempotent(&p, n, i)?;
                ensure!(trace::markov_trace(&e)? == eta, "Tr(e_{i}) ≠ η");
            }
            for _ in 0..50 {
                let x = hecke::random_element(&p, n, 6, &mut rng)?;
                let y = hecke::random_element(&p, n, 6, &mut rng)?;
                ensure!(
                    trace::markov_trace(&x.mul(&y)?)? == trace::markov_trace(&y.mul(&x)?)?,
                    "Tr(xy) ≠ Tr(yx)"
                );
                ensure!(
                    trace::markov_trace(&x.star())? == trace::markov_trace(&x)?.conjugate(),
                    "Tr(x*) ≠ conj Tr(x)"
                );
                if n >= 2 {
                    let a = hecke::random_element(&p, n - 1, 4, &mut rng)?;
                    let b = hecke::random_element(&p, n - 1, 4, &mut rng)?;
                    let (ia, ib) = (a.embed(0, n)?, b.embed(0, n)?);
                    let e = hecke::e_idempotent(&p, n, n - 1)?;
                    ensure!(
                        trace::markov_trace(&ia.mul(&e)?)? == &eta * &trace::markov_trace(&a)?,
                        "Tr(x e) ≠ η Tr(x)"
                    );
                    ensure!(
                        trace::markov_trace(&ia.mul(&e)?.mul(&ib)?)?
                            == &eta * &trace::markov_trace(&a.mul(&b)?)?,
                        "Tr(x e y) ≠ η Tr(xy)"
                    );
                }
            }
            Ok(Outcome::Pass("50 random pairs".into()))
        });
    }
}

fn radical_checks(r: &mut Runner) {
    let p = r.p;
    let limit = r.max_n;
    for n in 1..=r.max_n {
        let expected: u64 = diagrams::gamma_n(&p, n)
            .iter()
            .map(|d| diagrams::path_count(&p, n, d).pow(2))
            .sum();
        r.run(format!("gram rank n={n} equals {expected}"), || {
            let bil = trace::gram(&p, n, Form::Bilinear, limit)?;
            let her = trace::gram(&p, n, Form::Hermitian, limit)?;
            ensure!(bil.rank as u64 == expected, "bilinear rank {}", bil.rank);
            ensure!(her.rank as u64 == expected, "hermitian rank {}", her.rank);
            let mut worst = 0f64;
            for x in &bil.kernel_basis {
                // x lies in the hermitian radical iff M x = 0
                for row in &her.matrix {
                    let mut acc = p.zero();
                    for (a, c) in x.terms() {
                        acc += &(c * &row[a]);
                    }
                    ensure!(
                        acc.is_zero(),
                        "bilinear radical vector outside the hermitian radical"
                    );
                }
                worst = worst.max(trace::pairing(x, x, Form::Hermitian)?.embed().norm());
            }
            ensure!(worst < 1e-8, "Tr(x*x) = {worst:e} on the radical");
            let min = trace::min_eigenvalue(&her.matrix);
            ensure!(min >= -1e-8, "hermitian Gram has eigenvalue {min:e}");
            Ok(Outcome::Pass(format!(
                "radical dimension {}, min eigenvalue {min:.3e}",
                bil.kernel_dim()
            )))
        });
    }
}

fn random_braid<R: Rng>(rng: &mut R, strands: usize, len: usize) -> Result<BraidWord> {
    let word = if strands < 2 {
        Vec::new()
    } else {
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
    };
    BraidWord::new(strands, word)
}

fn closure_checks(r: &mut Runner) {
    let p = r.p;
    let max_n = r.max_n;
    r.run("closure: trivial braids give [N]^n", || {
        for n in 1..=max_n {
            let v = trace::closure_invariant(&p, &BraidWord::identity(n))?;
            ensure!(
                v == trace::loop_power(&p, n),
                "trivial {n}-braid closes to {v}"
            );
        }
        Ok(Outcome::Pass(format!("n ≤ {max_n}")))
    });
    r.run("closure: single-crossing curls", || {
        let qn = p.qint(p.n);
        let pos = trace::closure_invariant(&p, &BraidWord::new(2, vec![1])?)?.div(&qn)?;
        let neg = trace::closure_invariant(&p, &BraidWord::new(2, vec![-1])?)?.div(&qn)?;
        ensure!((&pos * &neg).is_one(), "curls are not mutually inverse");
        ensure!(
            pos == trace::curl_factor(&p, 1),
            "positive curl differs from the library constant"
        );
        let framed = if FRAMING_SIGN > 0 { &pos } else { &neg };
        let nn = p.n as i64;
        let printed = p.q_pow(nn * nn - 1, 2 * nn);
        ensure!(
            *framed == &printed * &-p.q_pow(-nn, 1),
            "framed curl is not q^((N²-1)/2N)·(-q^(-N))"
        );
        ensure!(
            (*framed == printed) == (p.n == p.k),
            "printed kink matched off the diagonal"
        );
        if p.n == 2 && p.k == 2 {
            let want = Complex64::from_polar(2f64.sqrt(), 6.0 * std::f64::consts::PI / 16.0);
            let got = (framed * &qn).embed();
            ensure!(
                (got - want).norm() < 1e-12,
                "(2,2) closure {got} ≠ √2·e^(6πi/16)"
            );
        }
        Ok(Outcome::Pass(format!(
            "framed curl {} the printed q^((N²-1)/2N)",
            if p.n == p.k {
                "equals"
            } else {
                "is -q^(-N) times"
            }
        )))
    });
    let mut rng = r.rng(300);
    r.run("closure: stabilization changes closures by a curl", || {
        let top = (max_n - 1).clamp(1, 4);
        for _ in 0..20 {
            let strands = rng.gen_range(1..=top);
            let len = rng.gen_range(0..7);
            let b = random_braid(&mut rng, strands, len)?;
            let base = trace::closure_invariant(&p, &b)?;
            for positive in [true, false] {
                let sign = if positive { 1 } else { -1 };
                let v = trace::closure_invariant(&p, &b.stabilize(positive))?;
                ensure!(
                    v == &base * &trace::curl_factor(&p, sign),
                    "stabilizing {b} changes the closure by more than a curl"
                );
            }
        }
        Ok(Outcome::Pass(format!(
            "20 random braids on ≤ {top} strands"
        )))
    });
}

fn block_checks(r: &mut Runner) {
    let p = r.p;
    let limit = r.max_n;
    for n in 1..=r.max_n {
        r.run(format!("blocks n={n}"), || {
            let data = category::central_idempotents(&p, n, limit)?;
            let alg = &data.algebra;
            let labels = diagrams::gamma_n(&p, n);
            ensure!(
                data.blocks.len() == labels.len(),
                "{} blocks for {} labels",
                data.blocks.len(),
                labels.len()
            );
            let mut total = HeckeElement::zero(&p, n)?;
            let mut squares = 0;
            for b in &data.blocks {
                ensure!(
                    b.dim as u64 == diagrams::path_count(&p, n, &b.label),
                    "block {} has dimension {}",
                    b.label,
                    b.dim
                );
                squares += b.dim * b.dim;
                total = total.add(&b.z)?;
                for c in &data.blocks {
                    let img = c.irrep.image(&b.z);
                    for (i, row) in img.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            let want = i == j && b.label == c.label;
                            ensure!(
                                if want { v.is_one() } else { v.is_zero() },
                                "z_{} acts wrongly on the module of {}",
                                b.label,
                                c.label
                            );
                        }
                    }
                }
            }
            ensure!(
                squares == alg.rank(),
                "Σ dim² = {squares} but rank {}",
                alg.rank()
            );
            let one = HeckeElement::identity(&p, n)?;
            ensure!(
                alg.functional(&total) == alg.functional(&one),
                "Σ z_λ ≢ 1 modulo the radical"
            );
            if n >= 2 {
                for d in &labels {
                    let got = category::restriction(&p, n, d, limit)?;
                    let want: BTreeMap<_, _> = diagrams::branch(&p, n, d)?
                        .into_iter()
                        .map(|l| (l, 1))
                        .collect();
                    ensure!(got == want, "restriction of {d} is {got:?}");
                }
            }
            Ok(Outcome::Pass(format!(
                "{} blocks, Σ dim² = {squares}",
                data.blocks.len()
            )))
        });
    }
}

fn fusion_checks(r: &mut Runner) {
    let p = r.p;
    let limit = r.max_n;
    r.run("fusion: unit, symmetry and box rule", || {
        let labels: Vec<_> = diagrams::labels(&p).members;
        let empty = YoungDiagram::empty();
        let boxd = YoungDiagram::box_();
        let mut count = 0;
        for a in &labels {
            for b in &labels {
                if a.size() + b.size() > limit {
                    continue;
                }
                for c in &labels {
                    let v = category::fusion(&p, a, b, c, limit)?;
                    ensure!(
                        v == category::fusion(&p, b, a, c, limit)?,
                        "N_{a}{b}^{c} is not symmetric"
                    );
                    if b == &empty {
                        ensure!(v == u64::from(a == c), "N_{a}∅^{c} = {v}");
                    }
                    if b == &boxd {
                        let n = a.size() + 1;
                        let want = diagrams::in_gamma_n(&p, n, c)
                            && diagrams::branch(&p, n, c)?.contains(a);
                        ensure!(v == u64::from(want), "N_{a}□^{c} = {v} against branching");
                    }
                    count += 1;
                }
            }
        }
        if count == 0 {
            return Ok(Outcome::Skip("no pair fits under max_n".into()));
        }
        Ok(Outcome::Pass(format!("{count} coefficients")))
    });
    if p.n == 2 && p.k == 2 && limit >= 4 {
        r.run("fusion: (2)⊗(2) at (2,2)", || {
            let two = YoungDiagram::row(2);
            ensure!(
                category::fusion(&p, &two, &two, &YoungDiagram::empty(), limit)? == 1,
                "N ≠ 1 at ∅"
            );
            ensure!(
                category::fusion(&p, &two, &two, &two, limit)? == 0,
                "N ≠ 0 at (2)"
            );
            Ok(Outcome::Pass("N^∅ = 1, N^(2) = 0".into()))
        });
    }
}

fn max_label(p: &Params) -> usize {
    diagrams::labels(p)
        .members
        .iter()
        .map(YoungDiagram::size)
        .max()
        .unwrap_or(0)
}

fn modular_checks(r: &mut Runner) {
    let p = r.p;
    let max_n = r.max_n;
    r.run("qdim: content formula and duality", || {
        let mut count = 0;
        for d in diagrams::labels(&p).members {
            if d.size() > max_n {
                continue;
            }
            let mut want = p.one();
            for (c, h) in d.contents().into_iter().zip(d.hooks()) {
                want = &(&want * &p.qint((p.n as i64 + c) as u32)) * &p.qint(h).inv()?;
            }
            let got = category::qdim(&p, &d)?;
            ensure!(got == want, "qdim({d}) disagrees with the content formula");
            let dual = diagrams::dagger(&p, &d)?;
            if dual.size() <= max_n {
                ensure!(
                    got == category::qdim(&p, &dual)?,
                    "qdim({d}) ≠ qdim({dual})"
                );
            }
            count += 1;
        }
        Ok(Outcome::Pass(format!("{count} labels")))
    });
    r.run("S-matrix: symmetry, first row, invertibility", || {
        if 2 * max_label(&p) > max_n {
            return Ok(Outcome::Skip(format!(
                "needs {} strands",
                2 * max_label(&p)
            )));
        }
        let labels = diagrams::labels(&p).members;
        let raw = category::s_matrix(&p, max_n)?;
        let balanced = category::s_matrix_balanced(&p, max_n)?;
        for s in [&raw, &balanced] {
            ensure!(s[0][0].is_one(), "S_∅∅ ≠ 1");
            for (i, a) in labels.iter().enumerate() {
                ensure!(s[0][i] == category::qdim(&p, a)?, "S_∅{a} ≠ qdim");
                for j in 0..i {
                    ensure!(
                        s[i][j] == s[j][i],
                        "S not symmetric at ({a}, {})",
                        labels[j]
                    );
                }
            }
        }
        let det = linalg::determinant(&balanced)?;
        ensure!(!det.is_zero(), "det S = 0");
        let raw_det = linalg::determinant(&raw)?;
        Ok(Outcome::Pass(format!(
            "|det S| = {:.6}, unbalanced det {}",
            det.embed().norm(),
            if raw_det.is_zero() { "0" } else { "≠ 0" }
        )))
    });
}

fn twist_checks(r: &mut Runner) {
    let p = r.p;
    let max_n = r.max_n;
    r.run("twist: Δ² is scalar on y_λ", || {
        ensure!(
            category::twist(&p, &YoungDiagram::empty())?.theta.is_one(),
            "θ_∅ ≠ 1"
        );
        let t = category::twist(&p, &YoungDiagram::box_())?;
        ensure!(
            t.theta == trace::curl_factor(&p, FRAMING_SIGN),
            "θ_□ is not the kink factor"
        );
        let mut count = 0;
        for d in diagrams::labels(&p).members {
            if d.size() <= max_n.min(4) {
                category::twist(&p, &d)?;
                count += 1;
            }
        }
        Ok(Outcome::Pass(format!("{count} labels")))
    });
}

fn mf_checks(r: &mut Runner) {
    let p = r.p;
    let limit = r.max_n;
    r.run("modular functor dimensions", || {
        if 2 * max_label(&p) > limit {
            return Ok(Outcome::Skip(format!(
                "fusion table needs {} strands",
                2 * max_label(&p)
            )));
        }
        let table = FusionTable::build(&p, limit)?;
        let labels = table.labels.clone();
        ensure!(
            category::mf_dim(&table, 0, &[])? == 1,
            "sphere without labels ≠ 1"
        );
        let torus = category::mf_dim(&table, 1, &[])?;
        ensure!(torus == labels.len() as u64, "torus gives {torus}");
        for a in &labels {
            let dual = diagrams::dagger(&p, a)?;
            for b in &labels {
                let two = category::mf_dim(&table, 0, &[a.clone(), b.clone()])?;
                ensure!(two == u64::from(*b == dual), "two-point ({a}, {b}) = {two}");
                for c in &labels {
                    let three = category::mf_dim(&table, 0, &[a.clone(), b.clone(), c.clone()])?;
                    let want = table.get(a, b, &diagrams::dagger(&p, c)?)?;
                    ensure!(
                        three == want,
                        "three-point ({a}, {b}, {c}) = {three}, fusion gives {want}"
                    );
                    for perm in [[b, a, c], [c, b, a], [a, c, b]] {
                        let v = category::mf_dim(&table, 0, &perm.map(|d| d.clone()))?;
                        ensure!(v == three, "not symmetric under relabeling ({a}, {b}, {c})");
                    }
                }
            }
        }
        if p.n == 2 && p.k == 2 {
            let four = category::mf_dim(&table, 0, &vec![YoungDiagram::box_(); 4])?;
            ensure!(four == 2, "four boxes on the sphere give {four}");
        }
        Ok(Outcome::Pass(format!("torus dimension {torus}")))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::GRAM_LIMIT;

    #[test]
    fn verify_small_passes() {
        let p = Params::new(2, 1).unwrap();
        let report = verify(&p, 4, 0, GRAM_LIMIT).unwrap();
        let fails: Vec<_> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.details))
            .collect();
        assert!(report.passed(), "{fails:?}");
    }

    #[test]
    fn verify_names_gram_ranks() {
        let p = Params::new(2, 2).unwrap();
        let report = verify_groups(&p, 5, 0, GRAM_LIMIT, &[Group::Radical]).unwrap();
        let c = report
            .checks
            .iter()
            .find(|c| c.name == "gram rank n=3 equals 4")
            .unwrap();
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn verify_rejects_large_max_n() {
        let p = Params::new(2, 1).unwrap();
        assert!(matches!(
            verify(&p, 9, 0, GRAM_LIMIT),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn records_serialize_lowercase_status() {
        let p = Params::new(2, 1).unwrap();
        let report = verify_groups(&p, 2, 0, GRAM_LIMIT, &[Group::Scalar]).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["overall"], "pass");
        assert_eq!(v["N"], 2);
    }
}

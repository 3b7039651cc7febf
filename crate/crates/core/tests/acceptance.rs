//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hsk::category;
use hsk::diagrams::YoungDiagram;
use hsk::verify::{self, Group, Status};
use hsk::Params;

const ALL: &[(u32, u32)] = &[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)];
const MODULAR: &[(u32, u32)] = &[(2, 1), (2, 2), (3, 1)];

struct Criterion {
    id: u32,
    title: &'static str,
    params: &'static [(u32, u32)],
    groups: &'static [Group],
    max_n: fn(u32, u32) -> usize,
    budget: Duration,
    extra: Option<fn() -> Result<(), String>>,
}

fn five(_: u32, _: u32) -> usize {
    5
}

fn five_or_four(n: u32, k: u32) -> usize {
    if (n, k) == (4, 1) {
        4
    } else {
        5
    }
}

fn fusion_examples() -> Result<(), String> {
    let p = Params::new(2, 2).map_err(|e| e.to_string())?;
    let two = YoungDiagram::row(2);
    let f = |c: &YoungDiagram| category::fusion(&p, &two, &two, c, 6).map_err(|e| e.to_string());
    match (f(&YoungDiagram::empty())?, f(&two)?) {
        (1, 0) => Ok(()),
        (a, b) => Err(format!("(2)⊗(2) at (2,2): ∅ ↦ {a}, (2) ↦ {b}")),
    }
}

fn run(c: &Criterion) -> (bool, String, Duration) {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for &(n, k) in c.params {
        let p = Params::new(n, k).expect("valid parameters");
        let max_n = (c.max_n)(n, k);
        match verify::verify_groups(&p, max_n, 0, max_n, c.groups) {
            Ok(report) => {
                for check in &report.checks {
                    match check.status {
                        Status::Fail => {
                            ok = false;
                            notes.push(format!("({n},{k}) {}: {}", check.name, check.details));
                        }
                        Status::Skip => notes.push(format!("({n},{k}) skipped {}", check.name)),
                        Status::Pass => {}
                    }
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("({n},{k}): {e}"));
            }
        }
    }
    if let Some(extra) = c.extra {
        if let Err(e) = extra() {
            ok = false;
            notes.push(e);
        }
    }
    let elapsed = start.elapsed();
    if elapsed > c.budget {
        ok = false;
        notes.push(format!("over budget {:?}", c.budget));
    }
    (ok, notes.join("; "), elapsed)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "convention coherence",
            params: ALL,
            groups: &[Group::Convention],
            max_n: five,
            budget: Duration::from_secs(30),
            extra: None,
        },
        Criterion {
            id: 2,
            title: "quasi-idempotent law",
            params: ALL,
            groups: &[Group::QuasiIdempotent],
            max_n: five,
            budget: Duration::from_secs(120),
            extra: None,
        },
        Criterion {
            id: 3,
            title: "orthogonality of Young idempotents",
            params: ALL,
            groups: &[Group::Orthogonality],
            max_n: five,
            budget: Duration::from_secs(120),
            extra: None,
        },
        Criterion {
            id: 4,
            title: "Markov axioms",
            params: ALL,
            groups: &[Group::Markov],
            max_n: five,
            budget: Duration::from_secs(60),
            extra: None,
        },
        Criterion {
            id: 5,
            title: "radical of the trace form",
            params: ALL,
            groups: &[Group::Radical],
            max_n: five_or_four,
            budget: Duration::from_secs(300),
            extra: None,
        },
        Criterion {
            id: 6,
            title: "block structure",
            params: ALL,
            groups: &[Group::Blocks],
            max_n: five,
            budget: Duration::from_secs(300),
            extra: None,
        },
        Criterion {
            id: 7,
            title: "fusion sanity",
            params: ALL,
            groups: &[Group::Fusion],
            max_n: five,
            budget: Duration::from_secs(300),
            extra: Some(fusion_examples),
        },
        Criterion {
            id: 8,
            title: "modular data",
            params: MODULAR,
            groups: &[Group::ModularData],
            max_n: five,
            budget: Duration::from_secs(180),
            extra: None,
        },
        Criterion {
            id: 9,
            title: "modular-functor dimensions",
            params: MODULAR,
            groups: &[Group::ModularFunctor],
            max_n: five,
            budget: Duration::from_secs(60),
            extra: None,
        },
        Criterion {
            id: 10,
            title: "skein and trace consistency",
            params: ALL,
            groups: &[Group::Closure],
            max_n: five,
            budget: Duration::from_secs(120),
            extra: None,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let (ok, notes, elapsed) = run(c);
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        let secs = elapsed.as_secs_f64();
        if notes.is_empty() {
            println!("{status} criterion {:>2}: {} ({secs:.2}s)", c.id, c.title);
        } else {
            println!(
                "{status} criterion {:>2}: {} ({secs:.2}s) [{notes}]",
                c.id, c.title
            );
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

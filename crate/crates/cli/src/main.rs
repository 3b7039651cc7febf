use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hsk::category::{self, FusionTable};
use hsk::diagrams::{self, YoungDiagram};
use hsk::hecke::{self, BraidWord, JwKind};
use hsk::trace::{self, Form, GRAM_LIMIT};
use hsk::verify;
use hsk::{Error, Params, Scalar};

mod cache;

use cache::Cache;

/// Largest strand count any command accepts.
const STRAND_MAX: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "hsk",
    version,
    about = "Hecke algebras and the SU(N) level-K skein category, exactly"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Rank parameter N (≥ 2).
    #[arg(long = "N", id = "N_PARAM", value_name = "N", global = true)]
    n: Option<u32>,
    /// Level K (≥ 1).
    #[arg(long = "K", id = "K_PARAM", value_name = "K", global = true)]
    k: Option<u32>,
    /// Cache directory; falls back to $HSK_CACHE, then ./.hsk-cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest n for Gram, purification and block computations.
    #[arg(long, global = true, default_value_t = GRAM_LIMIT)]
    gram_limit: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The label set Γ_{N,K}.
    Labels,
    /// Quantum integer [j].
    Qint {
        #[arg(long)]
        j: u32,
    },
    /// Dual label λ†.
    Dagger {
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Labels of Γ^{n-1} below λ ∈ Γ^n.
    Branch {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Number of branching paths from ∅ to λ in n steps.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Jones-Wenzl idempotent f_n (sym) or g_n (antisym).
    Jw {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        kind: JwKind,
    },
    /// Young quasi-idempotent and idempotent of λ.
    Yidem {
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Markov trace of a braid word.
    Trace {
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
    },
    /// Closure invariant [N]^n Tr(b).
    Closure {
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
    },
    /// Gram matrix of the trace form: rank and radical.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "bilinear")]
        form: Form,
        /// Include the matrix and a radical basis.
        #[arg(long)]
        full: bool,
    },
    /// Dimensions of H_n modulo the radical.
    Purify {
        #[arg(long)]
        n: usize,
    },
    /// Central and minimal idempotents of the purified H_n.
    Blocks {
        #[arg(long)]
        n: usize,
        /// Include the idempotents themselves.
        #[arg(long)]
        elements: bool,
    },
    /// One fusion coefficient, or the whole table when no label is given.
    Fusion {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<YoungDiagram>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<YoungDiagram>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<YoungDiagram>,
    },
    /// Quantum dimension of λ.
    Qdim {
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Twist of λ.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        lambda: YoungDiagram,
    },
    /// Hopf-link matrix over Γ_{N,K}.
    Smatrix {
        /// Remove the linking phase of the framed generators.
        #[arg(long)]
        balanced: bool,
    },
    /// Modular-functor dimension of a labeled genus-g surface.
    Mfdim {
        #[arg(long, default_value_t = 0)]
        genus: usize,
        /// Boundary label; repeat for several.
        #[arg(long = "label", allow_hyphen_values = true)]
        labels: Vec<YoungDiagram>,
    },
    /// Run the property suite.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn scalar(s: &Scalar) -> Value {
    let z = s.embed();
    json!({"exact": s.to_json(), "float": {"re": z.re, "im": z.im}})
}

fn matrix(m: &[Vec<Scalar>]) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(scalar).collect()))
            .collect(),
    )
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn check_strands(flag: &str, n: usize, limit: usize) -> CliResult<()> {
    if n > limit {
        return Err(usage(format!("--{flag} {n} exceeds the limit {limit}")));
    }
    Ok(())
}

fn params(g: &Global) -> CliResult<Params> {
    let n = g.n.ok_or_else(|| usage("missing --N"))?;
    let k = g.k.ok_or_else(|| usage("missing --K"))?;
    Params::new(n, k).map_err(|e| usage(format!("--N {n} --K {k}: {e}")))
}

fn open_cache(g: &Global) -> Cache {
    if g.no_cache {
        return Cache::disabled();
    }
    let dir = g
        .cache
        .clone()
        .or_else(|| std::env::var_os("HSK_CACHE").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".hsk-cache"));
    Cache::new(Some(dir))
}

fn braid(s: &str, strands: Option<usize>) -> CliResult<BraidWord> {
    if let Some(n) = strands {
        check_strands("strands", n, STRAND_MAX)?;
    }
    let b = BraidWord::parse(s, strands).map_err(|e| usage(format!("--braid: {e}")))?;
    check_strands("strands", b.strands(), STRAND_MAX)?;
    Ok(b)
}

fn run(cli: &Cli) -> CliResult<Value> {
    let g = &cli.global;
    if g.gram_limit > STRAND_MAX {
        return Err(usage(format!(
            "--gram-limit {} exceeds {STRAND_MAX}",
            g.gram_limit
        )));
    }
    let limit = g.gram_limit;
    let p = params(g)?;
    let cache = open_cache(g);
    let key = |kind: &str, rest: String| cache::key(kind, p.n, p.k, &rest);
    let value = match &cli.command {
        Command::Labels => to_value(diagrams::labels(&p).members),
        Command::Qint { j } => scalar(&p.qint(*j)),
        Command::Dagger { lambda } => to_value(diagrams::dagger(&p, lambda)?),
        Command::Branch { n, lambda } => to_value(diagrams::branch(&p, *n, lambda)?),
        Command::Paths { n, lambda } => json!(diagrams::path_count(&p, *n, lambda)),
        Command::Jw { strands, kind } => {
            check_strands("strands", *strands, STRAND_MAX)?;
            to_value(hecke::jones_wenzl(&p, *strands, *kind)?.to_json())
        }
        Command::Yidem { lambda } => {
            check_strands("lambda size", lambda.size(), STRAND_MAX)?;
            let y = hecke::young_idempotent(&p, lambda)?;
            json!({
                "quasi": y.quasi.to_json(),
                "idem": y.idem.map(|e| e.to_json()),
                "hook_product": scalar(&y.hook_product),
            })
        }
        Command::Trace {
            strands,
            braid: word,
        } => {
            let b = braid(word, *strands)?;
            scalar(&trace::markov_trace(&hecke::from_braid(&p, &b)?)?)
        }
        Command::Closure {
            strands,
            braid: word,
        } => {
            let b = braid(word, *strands)?;
            scalar(&trace::closure_invariant(&p, &b)?)
        }
        Command::Gram { n, form, full } => {
            check_strands("n", *n, limit)?;
            cache.get_or_compute(
                &key("gram", format!("n={n}/form={form:?}/full={full}")),
                || {
                    let data = trace::gram(&p, *n, *form, limit)?;
                    let mut v = json!({
                        "N": p.n,
                        "K": p.k,
                        "n": n,
                        "form": form,
                        "rank": data.rank,
                        "kernel_dim": data.kernel_dim(),
                    });
                    if *form == Form::Hermitian {
                        v["min_eigenvalue"] = json!(trace::min_eigenvalue(&data.matrix));
                    }
                    if *full {
                        v["matrix"] = matrix(&data.matrix);
                        v["kernel"] = to_value(
                            data.kernel_basis
                                .iter()
                                .map(|x| x.to_json())
                                .collect::<Vec<_>>(),
                        );
                    }
                    Ok::<_, CliError>(v)
                },
            )?
        }
        Command::Purify { n } => {
            check_strands("n", *n, limit)?;
            cache.get_or_compute(&key("purify", format!("n={n}")), || {
                Ok::<_, CliError>(to_value(category::purified_dim(&p, *n, limit)?))
            })?
        }
        Command::Blocks { n, elements } => {
            check_strands("n", *n, limit)?;
            cache.get_or_compute(&key("blocks", format!("n={n}/elements={elements}")), || {
                let data = category::central_idempotents(&p, *n, limit)?;
                Ok::<_, CliError>(to_value(data.to_json(*elements)))
            })?
        }
        Command::Fusion { a, b, c } => match (a, b, c) {
            (Some(a), Some(b), Some(c)) => {
                let v = category::fusion(&p, a, b, c, limit)?;
                json!({"a": a, "b": b, "c": c, "n": v})
            }
            (None, None, None) => cache
                .get_or_compute(&key("fusion", format!("limit={limit}")), || {
                    Ok::<_, CliError>(to_value(FusionTable::build(&p, limit)?.to_json()))
                })?,
            _ => return Err(usage("give all of --a --b --c, or none for the full table")),
        },
        Command::Qdim { lambda } => {
            check_strands("lambda size", lambda.size(), STRAND_MAX)?;
            scalar(&category::qdim(&p, lambda)?)
        }
        Command::Twist { lambda } => {
            check_strands("lambda size", lambda.size(), STRAND_MAX)?;
            let t = category::twist(&p, lambda)?;
            json!({"raw": scalar(&t.raw), "theta": scalar(&t.theta)})
        }
        Command::Smatrix { balanced } => cache.get_or_compute(
            &key("smatrix", format!("balanced={balanced}/limit={limit}")),
            || {
                let s = if *balanced {
                    category::s_matrix_balanced(&p, limit)?
                } else {
                    category::s_matrix(&p, limit)?
                };
                let det = hsk::linalg::determinant(&s)?;
                Ok::<_, CliError>(json!({
                    "N": p.n,
                    "K": p.k,
                    "balanced": balanced,
                    "labels": diagrams::labels(&p).members,
                    "matrix": matrix(&s),
                    "determinant": scalar(&det),
                }))
            },
        )?,
        Command::Mfdim { genus, labels } => {
            let table = FusionTable::build(&p, limit)?;
            json!(category::mf_dim(&table, *genus, labels)?)
        }
        Command::Verify { max_n } => {
            if *max_n == 0 {
                return Err(usage("--max-n must be at least 1"));
            }
            check_strands("max-n", *max_n, limit)?;
            let report = verify::verify(&p, *max_n, g.seed, limit)?;
            let passed = report.passed();
            let v = to_value(report);
            if !passed {
                print(&v, g.pretty);
                return Err(CliError::Domain(Error::Internal(
                    "verification failed".into(),
                )));
            }
            v
        }
    };
    Ok(value)
}

fn print(v: &Value, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(out, "{}", s.expect("serializable output"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(v) => {
            print(&v, cli.global.pretty);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

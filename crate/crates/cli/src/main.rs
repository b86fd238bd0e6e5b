//! `nqsym`: JSON front end for the quasisymmetric-function and matroid
//! library.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use nqsym::matroid::rank2::recover_rank2;
use nqsym::matroid::split::{geom_decompose, split};
use nqsym::matroid::Matroid;
use nqsym::qsym::{in_vnr, mul, n_basis_element};
use nqsym::verify::{self, VerifyConfig};
use nqsym::{Basis, Composition, Error, Partition, QSymElement};

/// Largest degree `expand` and `convert` will work in.
const MAX_DEGREE: usize = 20;
/// Largest ground set `matroid-f` accepts.
const MAX_GROUND_SET: usize = 16;
/// Largest degree bound `verify` accepts.
const MAX_VERIFY_N: usize = 10;

#[derive(Parser)]
#[command(name = "nqsym", version, about = "Quasisymmetric N-basis and matroid invariant toolkit")]
struct Cli {
    /// Output basis: M, L or N.
    #[arg(long, global = true)]
    basis: Option<Basis>,
    /// Degree bound for `verify`.
    #[arg(long, global = true, default_value_t = 8)]
    max_n: usize,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Read the JSON payload from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand N_alpha in the L and M bases.
    Expand {
        #[arg(long)]
        comp: Composition,
    },
    /// Convert an element to `--basis`.
    Convert,
    /// Multiply the two elements of a JSON array.
    Mul,
    /// The invariant F(M) of a matroid `{"n", "bases"}` with statistics.
    MatroidF,
    /// Recover a rank-two matroid from its invariant.
    Recover,
    /// Split the rank-two base polytope of `lambda` after `s` blocks.
    Rank2Split {
        #[arg(long)]
        lambda: Composition,
        #[arg(long)]
        s: usize,
    },
    /// Decompose Q(M_lambda) into pieces of the given types, from
    /// `{"lambda": [...], "J": [[...], ...]}`.
    GeomDecompose,
    /// Run the self-check harness.
    Verify {
        /// Random matroids per sampled check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

struct Failure {
    kind: String,
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind().to_string(),
            message: e.to_string(),
            code: if e.is_resource_limit() { 2 } else { 1 },
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            kind: "invalid_input".into(),
            message: e.to_string(),
            code: 1,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            kind: "io".into(),
            message: e.to_string(),
            code: 1,
        }
    }
}

fn limit(size: usize, limit: usize) -> Result<(), Failure> {
    if size > limit {
        Err(Error::EnumerationLimit { size, limit }.into())
    } else {
        Ok(())
    }
}

fn read_payload(cli: &Cli) -> Result<Value, Failure> {
    let mut text = String::new();
    match &cli.input {
        Some(p) => text = std::fs::read_to_string(p)?,
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(serde_json::from_str(&text)?)
}

fn read_element(v: &Value) -> Result<QSymElement, Failure> {
    let q = QSymElement::from_json_value(v)?;
    limit(q.degrees().last().copied().unwrap_or(0), MAX_DEGREE)?;
    Ok(q)
}

/// Output of one command: the JSON value and its human-readable form.
struct Output {
    json: Value,
    text: String,
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let basis = cli.basis;
    match &cli.command {
        Command::Expand { comp } => {
            limit(comp.weight(), MAX_DEGREE)?;
            let l = n_basis_element(comp);
            let targets = match basis {
                Some(b) => vec![b],
                None => vec![Basis::Fundamental, Basis::Monomial],
            };
            let mut json = serde_json::Map::new();
            json.insert("comp".into(), json!(comp.parts()));
            let mut text = String::new();
            for b in targets {
                let q = l.convert(b);
                text.push_str(&format!("N{comp} = {}\n", q));
                json.insert(b.symbol().into(), q.to_json_value());
            }
            Ok(Output {
                json: Value::Object(json),
                text,
            })
        }
        Command::Convert => {
            let q = read_element(&read_payload(cli)?)?;
            let target = basis.ok_or_else(|| Failure {
                kind: "usage".into(),
                message: "convert needs --basis".into(),
                code: 1,
            })?;
            let out = q.convert(target);
            Ok(Output {
                text: format!("{}\n", out),
                json: out.to_json_value(),
            })
        }
        Command::Mul => {
            let v = read_payload(cli)?;
            let items = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Failure {
                kind: "invalid_input".into(),
                message: "mul expects a JSON array of two elements".into(),
                code: 1,
            })?;
            let a = read_element(&items[0])?;
            let b = read_element(&items[1])?;
            limit(a.degrees().last().unwrap_or(&0) + b.degrees().last().unwrap_or(&0), MAX_DEGREE)?;
            let mut out = mul(&a, &b);
            if let Some(t) = basis {
                out = out.convert(t);
            }
            Ok(Output {
                text: format!("{}\n", out),
                json: out.to_json_value(),
            })
        }
        Command::MatroidF => {
            #[derive(Deserialize)]
            struct Request {
                n: usize,
                bases: Vec<Vec<usize>>,
            }
            let req = Request::deserialize(&read_payload(cli)?)?;
            limit(req.n, MAX_GROUND_SET)?;
            let m = Matroid::new(req.n, &req.bases)?;
            let f = m.qsym();
            let shown = f.convert(basis.unwrap_or(Basis::NBasis));
            let (n, r) = (m.ground_set_size(), m.rank());
            let c = m.loops().len() + m.coloops().len();
            let loopless_rank = r + m.loops().len();
            let json = json!({
                "n": n,
                "rank": r,
                "F": shown.to_json_value(),
                "in_rank_space": in_vnr(&f, n, loopless_rank),
                "rank_space": [n, loopless_rank],
                "num_bases": m.num_bases(),
                "loops": m.loops(),
                "coloops": m.coloops(),
                "loops_and_coloops": c,
            });
            let text = format!(
                "F(M) = {}\nn = {n}, rank = {r}, bases = {}, loops = {:?}, coloops = {:?}\nin V^{n}_{loopless_rank}: {}\n",
                shown,
                m.num_bases(),
                m.loops(),
                m.coloops(),
                in_vnr(&f, n, loopless_rank)
            );
            Ok(Output { json, text })
        }
        Command::Recover => {
            let q = read_element(&read_payload(cli)?)?;
            let rec = recover_rank2(&q)?;
            let json = serde_json::to_value(&rec)?;
            Ok(Output {
                text: format!("{rec:?}\n"),
                json,
            })
        }
        Command::Rank2Split { lambda, s } => {
            limit(lambda.weight(), 64)?;
            let sp = split(lambda, *s)?;
            let json = serde_json::to_value(&sp)?;
            let text = format!(
                "alpha = {}, beta = {}, mu = {}\nS = {:?}\n",
                sp.alpha, sp.beta, sp.mu, sp.certificate.s
            );
            Ok(Output { json, text })
        }
        Command::GeomDecompose => {
            #[derive(Deserialize)]
            struct Request {
                lambda: Partition,
                #[serde(rename = "J")]
                j: Vec<Partition>,
            }
            let req = Request::deserialize(&read_payload(cli)?)?;
            limit(req.lambda.weight(), 64)?;
            let d = geom_decompose(&req.lambda, &req.j)?;
            let json = serde_json::to_value(&d)?;
            let mut text = String::new();
            for r in &d.representatives {
                text.push_str(&format!("{} {:?}\n", r.lambda(), r.blocks()));
            }
            for cert in &d.splits {
                text.push_str(&format!("split S = {:?} of {:?}\n", cert.s, cert.parent));
            }
            Ok(Output { json, text })
        }
        Command::Verify { samples } => {
            limit(cli.max_n, MAX_VERIFY_N)?;
            let report = verify::run(&VerifyConfig {
                max_n: cli.max_n,
                seed: cli.seed,
                samples: *samples,
            });
            let mut text = String::new();
            for ch in &report.checks {
                let status = if ch.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {:<28} {:>7} ms  {}\n", ch.id, ch.elapsed_ms, ch.detail));
            }
            let passed = report.checks.iter().filter(|c| c.passed).count();
            text.push_str(&format!("{passed}/{} checks passed\n", report.checks.len()));
            Ok(Output {
                json: serde_json::to_value(&report)?,
                text,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let obj = json!({ "kind": "usage", "message": e.to_string().trim_end() });
            eprintln!("{obj}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let res = if cli.pretty {
                stdout.write_all(out.text.as_bytes())
            } else {
                writeln!(stdout, "{}", out.json)
            };
            if res.is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", json!({ "kind": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}

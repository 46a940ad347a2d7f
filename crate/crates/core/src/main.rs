use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use fplct::bracket::BracketContext;
use fplct::combinat::{Basis, Diagram, GeneralSequence};
use fplct::fpl::{enumerate_fpl_square, enumerate_fpl_triangle};
use fplct::harness::{
    self, cost_guard, envelope, estimate_cost, matrix_json, t_label, vector_json, HarnessError,
    VerificationReport, SQUARE_LIMIT, TRIANGLE_LIMIT,
};
use fplct::opalgebra::Operators;
use fplct::polyring::{parse_rational, Coeff, TPoly};
use fplct::tlmodel::ground_state;
use fplct::Matrix;

#[derive(Parser)]
#[command(name = "fplct", version, about = "Exact computations for fully packed loops in a triangle")]
struct Cli {
    /// Also write the JSON result to this file ("-" for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Size {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
struct Param {
    /// Rational value of t, written p/q.
    #[arg(long, value_parser = parse_t)]
    t: Option<BigRational>,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis with its diagram, partition and link pattern readings.
    Bij(Size),
    #[command(subcommand)]
    Compute(ComputeCmd),
    #[command(subcommand)]
    Tl(TlCmd),
    #[command(subcommand)]
    Fpl(FplCmd),
    /// Print one of the structural matrices.
    Op {
        which: OpKind,
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        param: Param,
        /// Diagram, either a sequence "0,1,3" or a partition "p:2,1".
        #[arg(long)]
        lambda: Option<String>,
    },
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum ComputeCmd {
    /// The tensor A_{σ,α,τ}; t stays symbolic unless --t is given.
    A {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        param: Param,
    },
    /// The vector Ψ, or Ψ on the embedded diagrams (α)_m with --m.
    Psi {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[command(flatten)]
        param: Param,
    },
}

#[derive(Subcommand)]
enum TlCmd {
    /// Integer ground state of the loop Hamiltonian.
    GroundState(Size),
}

#[derive(Subcommand)]
enum FplCmd {
    /// Counts on the square grid by link pattern.
    Square {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        force: bool,
    },
    /// Counts on the triangle by boundary (σ, π, τ).
    Triangle {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    P,
    C,
    K,
    R,
    Lr,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Conjecture1 {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        force: bool,
    },
    Rs {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        force: bool,
    },
    Summation {
        #[command(flatten)]
        size: Size,
        /// Window of k, written lo..hi (default -3..n+3).
        #[arg(long, allow_hyphen_values = true)]
        k_range: Option<String>,
    },
    Lemmas(Size),
    Matrices {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        param: Param,
    },
    Recurrences {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        param: Param,
    },
    All {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        force: bool,
    },
}

fn parse_t(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("expected a rational p/q, got {s:?}"))
}

fn parse_k_range(s: &str) -> Result<(i64, i64), HarnessError> {
    let bad = || HarnessError::Usage(format!("expected lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn usage(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Usage(e.to_string())
}

enum Outcome {
    Data(Value),
    Report(VerificationReport, Basis),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (value, code) = match outcome {
        Outcome::Data(v) => {
            if cli.json.is_none() {
                emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            }
            (v, ExitCode::SUCCESS)
        }
        Outcome::Report(report, basis) => {
            emit(report.to_string().trim_end());
            let code = if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
            (report.to_json(&basis), code)
        }
    };
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&value).expect("serializable");
        let written = if path.as_os_str() == "-" {
            emit(&text);
            Ok(())
        } else {
            std::fs::write(path, text + "\n")
        };
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    code
}

/// Prints a line, treating a closed pipe as the reader losing interest.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

/// Checks the guard, announcing the estimate whenever the size is past the default limit.
fn guarded(what: &'static str, n: usize, limit: usize, force: bool) -> Result<(), HarnessError> {
    if n > limit && force {
        eprintln!("{what} at n={n}: {}", estimate_cost(what, n));
    }
    cost_guard(what, n, limit, force)
}

fn check_n(n: usize) -> Result<(), HarnessError> {
    if n == 0 {
        return Err(HarnessError::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn run(cmd: &Command) -> Result<Outcome, HarnessError> {
    match cmd {
        Command::Bij(Size { n }) => {
            check_n(*n)?;
            let basis = Basis::new(*n);
            let rows: Vec<Value> = basis
                .iter()
                .map(|d| {
                    json!({
                        "sequence": d.to_string(),
                        "partition": d.partition(),
                        "transpose": d.transpose().to_string(),
                        "link_pattern": d.to_link_pattern().pairs(),
                    })
                })
                .collect();
            Ok(Outcome::Data(envelope(*n, "symbolic", &basis, json!(rows))))
        }
        Command::Compute(c) => compute(c),
        Command::Tl(TlCmd::GroundState(Size { n })) => {
            check_n(*n)?;
            let psi = ground_state(*n).map_err(usage)?;
            let basis = Basis::new(*n);
            Ok(Outcome::Data(envelope(*n, "1", &basis, json!({ "psi_prime": vector_json(&psi) }))))
        }
        Command::Fpl(f) => fpl(f),
        Command::Op {
            which,
            size,
            param,
            lambda,
        } => op(*which, size.n, param.t.clone().unwrap_or_else(one), lambda.as_deref()),
        Command::Verify(v) => verify(v),
    }
}

fn compute(cmd: &ComputeCmd) -> Result<Outcome, HarnessError> {
    match cmd {
        ComputeCmd::A { size, param } => {
            check_n(size.n)?;
            Ok(Outcome::Data(match &param.t {
                Some(t) => tensor_json(BracketContext::new(size.n, t.clone()), &t_label(t)),
                None => tensor_json(BracketContext::new(size.n, TPoly::t()), "symbolic"),
            }))
        }
        ComputeCmd::Psi { size, m, param } => {
            check_n(size.n)?;
            Ok(Outcome::Data(match &param.t {
                Some(t) => psi_json(BracketContext::new(size.n, t.clone()), *m, &t_label(t)),
                None => psi_json(BracketContext::new(size.n, TPoly::t()), *m, "symbolic"),
            }))
        }
    }
}

/// `data[σ][τ]` is the vector over `α`.
fn tensor_json<R: Coeff + Send + Sync>(ctx: BracketContext<R>, t: &str) -> Value {
    let tensor = ctx.a_tensor();
    let basis = ctx.basis();
    let mut data = serde_json::Map::new();
    for (si, s) in basis.iter().enumerate() {
        let mut inner = serde_json::Map::new();
        for (ti, tau) in basis.iter().enumerate() {
            inner.insert(tau.to_string(), vector_json(&tensor.row(si, ti)));
        }
        data.insert(s.to_string(), Value::Object(inner));
    }
    envelope(ctx.n(), t, basis, json!({ "A": data }))
}

fn psi_json<R: Coeff>(ctx: BracketContext<R>, m: u32, t: &str) -> Value {
    let v = if m == 0 { ctx.psi_vector() } else { ctx.psi_shifted_vector(m) };
    envelope(ctx.n(), t, ctx.basis(), json!({ "m": m, "Psi": vector_json(&v) }))
}

fn fpl(cmd: &FplCmd) -> Result<Outcome, HarnessError> {
    match cmd {
        FplCmd::Square { size, force } => {
            check_n(size.n)?;
            guarded("square enumeration", size.n, SQUARE_LIMIT, *force)?;
            let counts = enumerate_fpl_square(size.n).map_err(usage)?;
            let basis = Basis::new(size.n);
            let mut data = serde_json::Map::new();
            for d in basis.iter() {
                let c = counts.get(&d.to_link_pattern()).copied().unwrap_or(0);
                data.insert(d.to_link_pattern().to_string(), json!(c.to_string()));
            }
            let total: u64 = counts.values().sum();
            Ok(Outcome::Data(envelope(
                size.n,
                "1",
                &basis,
                json!({ "counts": data, "total": total.to_string() }),
            )))
        }
        FplCmd::Triangle { size, force } => {
            check_n(size.n)?;
            guarded("triangle enumeration", size.n, TRIANGLE_LIMIT, *force)?;
            let counts = enumerate_fpl_triangle(size.n).map_err(usage)?;
            let mut keys: Vec<_> = counts.iter().collect();
            keys.sort();
            let data: Vec<Value> = keys
                .into_iter()
                .map(|(k, c)| {
                    json!({
                        "sigma": k.sigma.to_string(),
                        "pi": k.pi.to_string(),
                        "tau": k.tau.to_string(),
                        "count": c.to_string(),
                    })
                })
                .collect();
            Ok(Outcome::Data(envelope(size.n, "1", &Basis::new(size.n), json!(data))))
        }
    }
}

/// Non-decreasing sequences with `a_i ≤ 2i`, the columns on which `K` is defined.
fn k_columns(n: usize) -> Vec<GeneralSequence> {
    fn grow(n: usize, prefix: &mut Vec<i64>, out: &mut Vec<GeneralSequence>) {
        let i = prefix.len();
        if i == n {
            out.push(GeneralSequence::new(prefix.clone()).expect("length n"));
            return;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        for a in lo..=2 * i as i64 {
            prefix.push(a);
            grow(n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, &mut Vec::new(), &mut out);
    out
}

fn op(which: OpKind, n: usize, t: BigRational, lambda: Option<&str>) -> Result<Outcome, HarnessError> {
    check_n(n)?;
    let lambda = lambda.map(|s| Diagram::parse(s, n)).transpose().map_err(usage)?;
    let ops = Operators::new(n, t.clone()).map_err(usage)?;
    let label = t_label(&t);
    let matrix_data = |name: &str, m: &Matrix<BigRational>| {
        let mut d = json!({ "operator": name, "matrix": matrix_json(m) });
        if let Some(l) = &lambda {
            d["lambda"] = json!(l.to_string());
        }
        d
    };
    let data = match which {
        OpKind::P => matrix_data("P", ops.p()),
        OpKind::R => matrix_data("R", &ops.r()),
        OpKind::C => match &lambda {
            Some(l) => matrix_data("C(lambda)", &ops.c_matrix(l)),
            None => matrix_data("C", &ops.c()),
        },
        OpKind::Lr => match &lambda {
            Some(l) => matrix_data("LR(lambda)", &ops.lr(l)),
            None => matrix_data("LR", &ops.lr_total()),
        },
        OpKind::K => {
            let cols = k_columns(n);
            let k = ops.k_matrix(&cols).map_err(usage)?;
            json!({
                "operator": "K",
                "columns": cols.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "matrix": matrix_json(&k),
            })
        }
    };
    Ok(Outcome::Data(envelope(n, &label, ops.basis(), data)))
}

fn verify(cmd: &VerifyCmd) -> Result<Outcome, HarnessError> {
    let (n, report) = match cmd {
        VerifyCmd::Conjecture1 { size, force } => {
            check_n(size.n)?;
            guarded("triangle enumeration", size.n, TRIANGLE_LIMIT, *force)?;
            (size.n, harness::verify_conjecture1(size.n, *force)?)
        }
        VerifyCmd::Rs { size, force } => {
            check_n(size.n)?;
            guarded("square enumeration", size.n, SQUARE_LIMIT, *force)?;
            (size.n, harness::verify_rs(size.n, *force)?)
        }
        VerifyCmd::Summation { size, k_range } => {
            check_n(size.n)?;
            let (lo, hi) = match k_range {
                Some(s) => parse_k_range(s)?,
                None => (-3, size.n as i64 + 3),
            };
            (size.n, harness::verify_summation(size.n, lo, hi)?)
        }
        VerifyCmd::Lemmas(Size { n }) => {
            check_n(*n)?;
            (*n, harness::verify_lemma_suite(*n)?)
        }
        VerifyCmd::Matrices { size, param } => {
            check_n(size.n)?;
            let t = param.t.clone().unwrap_or_else(one);
            (size.n, harness::verify_matrix_suite(size.n, &t)?)
        }
        VerifyCmd::Recurrences { size, param } => {
            check_n(size.n)?;
            let ts: Vec<BigRational> = match &param.t {
                Some(t) => vec![t.clone()],
                None => harness::DEFAULT_T_SAMPLES
                    .iter()
                    .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
                    .collect(),
            };
            (size.n, harness::verify_recurrences(size.n, &ts)?)
        }
        VerifyCmd::All { size, force } => {
            check_n(size.n)?;
            (size.n, harness::verify_all(size.n, *force)?)
        }
    };
    Ok(Outcome::Report(report, Basis::new(n)))
}

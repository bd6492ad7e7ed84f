//! `xoppak`: construct exceptional Meixner, Krawtchouk and Laguerre
//! families, verify their identities and sweep the invariance conjectures.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 internal
//! inconsistency, 4 check failure.

mod job;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use xoppak::exact_core::parse_rational;
use xoppak::pair_combinatorics::{admissibility_bound, admissibility_witnesses};
use xoppak::sweep::{
    conjecture_sweep, laguerre_check, meixner_check, par_map, CheckOptions, Outcome, Status, SweepParams, LAGUERRE_CHECKS,
    MEIXNER_CHECKS,
};
use xoppak::Error;

use job::{parse_pair, Family, FamilyArgs, Job, Kind};
use report::{construct_json, CheckRow, SCHEMA};

#[derive(Parser)]
#[command(name = "xoppak", version, about = "Exceptional Meixner and Laguerre polynomials, exactly")]
struct Cli {
    /// Worker threads for parallel checks and sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomials, Omega, Lambda and operator coefficients as exact rationals.
    Construct {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs named checks and writes a JSON report.
    Verify {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Comma-separated check names; all checks for the kind by default.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long = "rel-tol")]
        rel_tol: Option<f64>,
        /// A `construct` report to rebuild and compare against.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariance and alternative-representation checks over all pairs.
    Sweep {
        #[arg(long = "max-elem", default_value_t = 3)]
        max_elem: i64,
        #[arg(long = "max-card", default_value_t = 3)]
        max_card: usize,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides admissibility of (c, F), or of (alpha + 1, F).
    Admissible {
        #[arg(long = "F1", default_value = "", allow_hyphen_values = true)]
        f1: String,
        #[arg(long = "F2", default_value = "", allow_hyphen_values = true)]
        f2: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that ends the program with a specific exit code.
struct Exit {
    code: u8,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistency(_) | Error::Dimension(_) | Error::Numerical(_) => 3,
            _ => 2,
        };
        Exit { code, message: e.to_string() }
    }
}

fn io_exit(e: std::io::Error) -> Exit {
    Exit { code: 2, message: format!("i/o error: {e}") }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Exit> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(io_exit),
        None => {
            let mut so = std::io::stdout().lock();
            writeln!(so, "{text}").map_err(io_exit)
        }
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), Exit> {
    emit(out, &serde_json::to_string_pretty(v).expect("serialisable report"))
}

const KRAWTCHOUK_CHECKS: &[&str] = &["structure", "eigen", "lowering", "invariance"];

fn run_check(job: &Job, name: &str, opts: &CheckOptions) -> Outcome {
    match &job.family {
        Family::Meixner(_) if job.kind == Kind::Krawtchouk && !KRAWTCHOUK_CHECKS.contains(&name) => Outcome {
            check: name.to_string(),
            status: Status::Refused,
            detail: "only exact checks are available for Krawtchouk parameters".into(),
            witnesses: Vec::new(),
        },
        Family::Meixner(f) => meixner_check(f, name, opts),
        Family::Laguerre(f) => laguerre_check(f, name, opts),
    }
}

fn default_checks(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::Meixner => MEIXNER_CHECKS,
        Kind::Laguerre => LAGUERRE_CHECKS,
        Kind::Krawtchouk => KRAWTCHOUK_CHECKS,
    }
}

fn construct(fam: &FamilyArgs, out: &Option<PathBuf>) -> Result<(), Exit> {
    let job = fam.job()?;
    emit_json(out, &construct_json(&job)?)
}

/// Rebuilds the family recorded in a `construct` report and compares every
/// polynomial string.
fn roundtrip(path: &PathBuf) -> Outcome {
    let check = "construct_roundtrip";
    let result = (|| -> Result<Vec<String>, Exit> {
        let text = std::fs::read_to_string(path).map_err(io_exit)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Exit { code: 2, message: format!("bad report: {e}") })?;
        let args = report::family_args_from(&v)?;
        let rebuilt = construct_json(&args.job()?)?;
        let mut w = Vec::new();
        for key in ["omega", "lambda", "operator", "polynomials"] {
            if v.get(key) != rebuilt.get(key) {
                w.push(format!("{key} differs"));
            }
        }
        Ok(w)
    })();
    match result {
        Ok(w) => Outcome {
            check: check.into(),
            status: if w.is_empty() { Status::Pass } else { Status::Fail },
            detail: format!("rebuilt from {}", path.display()),
            witnesses: w,
        },
        Err(e) => Outcome { check: check.into(), status: Status::Refused, detail: e.message, witnesses: Vec::new() },
    }
}

fn verify(
    fam: &FamilyArgs,
    checks: &Option<String>,
    rel_tol: Option<f64>,
    against: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> Result<u8, Exit> {
    let job = fam.job()?;
    let names: Vec<String> = match checks {
        Some(s) => s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect(),
        None => default_checks(job.kind).iter().map(|s| s.to_string()).collect(),
    };
    let all_known = match job.kind {
        Kind::Laguerre => LAGUERRE_CHECKS,
        _ => MEIXNER_CHECKS,
    };
    if let Some(bad) = names.iter().find(|n| !all_known.contains(&n.as_str())) {
        let message = format!("unknown check {bad:?} for --kind {}; known: {}", job.kind.as_str(), all_known.join(","));
        return Err(Exit { code: 2, message });
    }
    let mut opts = CheckOptions { rel_tol, ..CheckOptions::default() };
    if let Some((lo, hi)) = job.n_range {
        opts.n_lo = Some(lo);
        opts.n_hi = Some(hi);
    }
    let mut rows: Vec<CheckRow> = par_map(&names, |name| {
        let t = Instant::now();
        let o = run_check(&job, name, &opts);
        CheckRow::new(o, t.elapsed().as_secs_f64())
    });
    if let Some(p) = against {
        let t = Instant::now();
        rows.push(CheckRow::new(roundtrip(p), t.elapsed().as_secs_f64()));
    }
    let code = if rows.iter().any(|r| r.status == Status::Internal.as_str()) {
        3
    } else if rows.iter().any(|r| r.status == Status::Fail.as_str()) {
        4
    } else {
        0
    };
    let report = json!({
        "schema": SCHEMA,
        "command": "verify",
        "kind": job.kind.as_str(),
        "f1": job.pair.f1.elems(),
        "f2": job.pair.f2.elems(),
        "params": report::params_json(&job),
        "checks": rows,
        "ok": code == 0,
    });
    emit_json(out, &report)?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn sweep(max_elem: i64, max_card: usize, a: &str, c: &str, alpha: &str, format: Format, out: &Option<PathBuf>) -> Result<u8, Exit> {
    if max_elem < 1 {
        return Err(Exit { code: 2, message: "--max-elem must be at least 1".into() });
    }
    let sample = SweepParams { a: parse_rational(a)?, c: parse_rational(c)?, alpha: parse_rational(alpha)? };
    let t = Instant::now();
    let rows = conjecture_sweep(max_elem, max_card, std::slice::from_ref(&sample));
    let seconds = t.elapsed().as_secs_f64();
    let internal = rows.iter().any(|r| r.outcome.status == Status::Internal);
    match format {
        Format::Csv => emit(out, report::sweep_csv(&rows)?.trim_end())?,
        Format::Json => emit_json(out, &report::sweep_json(max_elem, max_card, &sample, &rows, seconds))?,
    }
    Ok(if internal { 3 } else { 0 })
}

fn admissible(f1: &str, f2: &str, c: &Option<String>, alpha: &Option<String>, out: &Option<PathBuf>) -> Result<(), Exit> {
    let pair = parse_pair(f1, f2)?;
    let c = match (c, alpha) {
        (Some(c), None) => parse_rational(c)?,
        (None, Some(al)) => parse_rational(al)? + xoppak::exact_core::rational::int(1),
        _ => return Err(Exit { code: 2, message: "give exactly one of --c and --alpha".into() }),
    };
    let w = admissibility_witnesses(&c, &pair)?;
    let report = json!({
        "schema": SCHEMA,
        "command": "admissible",
        "f1": pair.f1.elems(),
        "f2": pair.f2.elems(),
        "c": c.to_string(),
        "scan_bound": admissibility_bound(&c, &pair)?,
        "admissible": w.is_empty(),
        "witnesses": w,
    });
    emit_json(out, &report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("xoppak: cannot configure {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.cmd {
        Command::Construct { fam, out } => construct(fam, out).map(|_| 0),
        Command::Verify { fam, checks, rel_tol, against, out } => verify(fam, checks, *rel_tol, against, out),
        Command::Sweep { max_elem, max_card, a, c, alpha, format, out } => {
            sweep(*max_elem, *max_card, a, c, alpha, *format, out)
        }
        Command::Admissible { f1, f2, c, alpha, out } => admissible(f1, f2, c, alpha, out).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("xoppak: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

//! Command-line front end: build Suslin matrices, run the identity suites,
//! certify Spin elements and verify orbit witnesses.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use suslin_core::json::{error_name, spin_check, MatrixJson, SpinInput, SpinJson, WitnessFile};
use suslin_core::matrix::RingMat;
use suslin_core::ring::{Rational, RingCtx, RingElem};
use suslin_core::suite::{identity, identity_names, run_suite, Mode, Report, RingChoice, SuiteConfig};
use suslin_core::suslin::{e_matrix, j_matrix, psi_degree_map, suslin_alpha, suslin_alpha_bar, UnitVector};

#[derive(Parser)]
#[command(name = "suslin-cli", version, about = "Suslin matrices, Spin groups and unit-vector orbits, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print alpha_n, alpha_bar_n, J_n, E_n or Psi_n
    Suslin(SuslinArgs),
    /// Run the identity suites
    Verify(VerifyArgs),
    /// Certify a matrix as an element of Spin_2n
    SpinCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check congruence and factorization witnesses
    OrbitWitness {
        #[command(subcommand)]
        action: WitnessAction,
    },
}

#[derive(Subcommand)]
enum WitnessAction {
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Alpha,
    Alphabar,
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "E", alias = "e")]
    E,
    Psi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VecChoice {
    Unit,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Rational,
    Quadric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Args)]
struct SuslinArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    show: Show,
    #[arg(long = "vec", value_enum, default_value_t = VecChoice::Generic)]
    vector: VecChoice,
    /// shorthand for `--vec generic`
    #[arg(long, conflicts_with = "vector")]
    generic: bool,
    /// explicit rational coordinates, e.g. `--a 1,0,1/2`
    #[arg(long, requires = "b", conflicts_with_all = ["vector", "generic"])]
    a: Option<String>,
    #[arg(long, requires = "a")]
    b: Option<String>,
    /// ring for generic alpha: free polynomials or the quadric `sum x_i y_i = 1`
    #[arg(long, value_enum, default_value_t = RingArg::Rational)]
    ring: RingArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// a single n, a range `2..4`, or a list `2,5,7`
    #[arg(long)]
    n: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// restrict to these identities (repeatable)
    #[arg(long)]
    identity: Vec<String>,
    #[arg(long, value_enum, default_value_t = RingArg::Rational)]
    ring: RingArg,
}

/// Usage/input errors (exit 2) and mathematical failures (exit 1).
enum Failure {
    Usage(String),
    Math(String),
}

type CliResult = Result<String, (Failure, Option<String>)>;

fn usage(msg: impl Into<String>) -> (Failure, Option<String>) {
    (Failure::Usage(msg.into()), None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Suslin(args) => cmd_suslin(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::SpinCheck { input } => cmd_spin_check(input, cli.format),
        Command::OrbitWitness { action: WitnessAction::Verify { file } } => cmd_orbit_witness(file, cli.format),
    };
    // failing reports are still written before exiting nonzero
    let (output, code) = match result {
        Ok(out) => (Some(out), 0),
        Err((Failure::Math(msg), out)) => {
            eprintln!("{msg}");
            (out, 1)
        }
        Err((Failure::Usage(msg), out)) => {
            eprintln!("error: {msg}");
            (out, 2)
        }
    };
    if let Some(out) = output {
        if let Err(e) = emit(&out, cli.out.as_deref()) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SUSLIN_THREADS") else { return Ok(()) };
    let k: usize = v.parse().ok().filter(|&k| k > 0).ok_or(format!("SUSLIN_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| e.to_string())
}

fn emit(out: &str, path: Option<&Path>) -> std::io::Result<()> {
    let mut text = out.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

// ---- suslin ----

#[derive(Serialize)]
struct MatrixOutput {
    matrix: &'static str,
    n: usize,
    vector: String,
    value: MatrixJson,
}

fn parse_coords(s: &str, n: usize) -> Result<Vec<RingElem>, String> {
    let vals = s
        .split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|_| format!("bad coordinate {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != n {
        return Err(format!("expected {n} coordinates, got {}", vals.len()));
    }
    Ok(vals.into_iter().map(|v| RingCtx::Rational.rational(v)).collect())
}

fn cmd_suslin(args: &SuslinArgs, format: Format) -> CliResult {
    let n = args.n;
    if !(1..=12).contains(&n) {
        return Err(usage(format!("--n must be between 1 and 12, got {n}")));
    }
    let explicit = match (&args.a, &args.b) {
        (Some(a), Some(b)) => Some((parse_coords(a, n).map_err(usage)?, parse_coords(b, n).map_err(usage)?)),
        _ => None,
    };
    let vector = if explicit.is_some() {
        "explicit"
    } else if args.generic || args.vector == VecChoice::Generic {
        "generic"
    } else {
        "unit"
    };
    let pair = || -> (Vec<RingElem>, Vec<RingElem>) {
        match (&explicit, vector) {
            (Some(p), _) => p.clone(),
            (None, "generic") => match args.ring {
                RingArg::Rational => RingCtx::Poly(n).generic_pair(),
                RingArg::Quadric => RingCtx::Quadric(n).generic_pair(),
            },
            _ => {
                let u = UnitVector::standard(RingCtx::Rational, n);
                (u.a().to_vec(), u.b().to_vec())
            }
        }
    };
    let (name, m): (&'static str, RingMat) = match args.show {
        Show::Alpha => {
            let (a, b) = pair();
            ("alpha", suslin_alpha(&a, &b).map_err(|e| usage(e.to_string()))?.into_matrix())
        }
        Show::Alphabar => {
            let (a, b) = pair();
            ("alphabar", suslin_alpha_bar(&a, &b).map_err(|e| usage(e.to_string()))?.into_matrix())
        }
        Show::J => ("J", j_matrix(RingCtx::Rational, n)),
        Show::E => ("E", e_matrix(RingCtx::Rational, n)),
        Show::Psi => {
            // Psi needs q(v, w) = 1: generic vectors live on the quadric
            let u = match (&explicit, vector) {
                (Some((a, b)), _) => UnitVector::new(a.clone(), b.clone()).map_err(|e| usage(e.to_string()))?,
                (None, "generic") => UnitVector::generic(n),
                _ => UnitVector::standard(RingCtx::Rational, n),
            };
            ("psi", psi_degree_map(&u).map_err(|e| usage(e.to_string()))?)
        }
    };
    let vector = if matches!(args.show, Show::J | Show::E) { "none" } else { vector };
    Ok(match format {
        Format::Json => to_json(&MatrixOutput { matrix: name, n, vector: vector.to_string(), value: (&m).into() }),
        Format::Text => format!("{name}_{n} ({vector}, {}x{} over {}):\n{m}", m.rows(), m.cols(), m.ctx()),
    })
}

// ---- verify ----

fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad n {t:?}"));
    let ns: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if ns.iter().any(|&n| n == 0 || n > 10) {
        return Err("n must be between 1 and 10".into());
    }
    Ok(ns)
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> CliResult {
    let ns = parse_range(&args.n).map_err(usage)?;
    if args.seeds == 0 {
        return Err(usage("--seeds must be at least 1"));
    }
    for name in &args.identity {
        if identity(name).is_none() {
            return Err(usage(format!("unknown identity {name:?}; known: {}", identity_names().join(", "))));
        }
    }
    let mut cfg = SuiteConfig {
        mode: match args.mode {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Sampled => Mode::Sampled,
        },
        ring: match args.ring {
            RingArg::Rational => RingChoice::Rational,
            RingArg::Quadric => RingChoice::Quadric,
        },
        seeds: args.seeds,
        ..SuiteConfig::default()
    };
    if !args.identity.is_empty() {
        cfg.identities = Some(args.identity.clone());
    }
    let max = cfg.thresholds.max_symbolic();
    if cfg.mode == Mode::Symbolic && ns.iter().any(|&n| n > max) {
        return Err(usage(format!("symbolic mode supports n <= {max}; use --mode sampled")));
    }
    let report: Report = run_suite(&ns, &cfg);
    if report.results.is_empty() {
        return Err(usage("no selected identity applies to the requested n"));
    }
    let out = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if report.all_passed() {
        Ok(out)
    } else {
        Err((Failure::Math(format!("{} identity check(s) failed", report.summary.fail)), Some(out)))
    }
}

// ---- spin-check and orbit-witness ----

fn read(path: &Path) -> Result<String, (Failure, Option<String>)> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

#[derive(Serialize)]
struct SpinReport {
    certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    element: Option<SpinJson>,
}

fn cmd_spin_check(path: &Path, format: Format) -> CliResult {
    let input: SpinInput = serde_json::from_str(&read(path)?).map_err(|e| usage(format!("malformed input: {e}")))?;
    let result = spin_check(&input).map_err(|e| usage(e.to_string()))?;
    let report = match &result {
        Ok(g) => SpinReport { certified: true, error: None, message: None, element: Some(g.into()) },
        Err(e) => SpinReport { certified: false, error: Some(error_name(e)), message: Some(e.to_string()), element: None },
    };
    let out = match format {
        Format::Json => to_json(&report),
        Format::Text => match &result {
            Ok(g) => format!("certified: Spin_{} element\nso_matrix:\n{}", g.n(), g.so_matrix().matrix()),
            Err(e) => format!("not certified: {e}"),
        },
    };
    match result {
        Ok(_) => Ok(out),
        Err(e) => Err((Failure::Math(format!("certification failed: {}", error_name(&e))), Some(out))),
    }
}

fn cmd_orbit_witness(path: &Path, format: Format) -> CliResult {
    let file: WitnessFile = serde_json::from_str(&read(path)?).map_err(|e| usage(format!("malformed witness: {e}")))?;
    let report = file.verify().map_err(|e| usage(e.to_string()))?;
    let out = match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "{} witness: {} (expected {})",
                report.flavor,
                if report.accepted { "accepted" } else { "rejected" },
                if report.expected { "accept" } else { "reject" }
            );
            if let Some(m) = &report.message {
                s.push_str(&format!("\n{}: {m}", report.error.as_deref().unwrap_or("error")));
            }
            s
        }
    };
    if report.verdict {
        Ok(out)
    } else {
        let why = report.error.clone().unwrap_or_else(|| "unexpectedly accepted".into());
        Err((Failure::Math(format!("witness verdict differs from expectation: {why}")), Some(out)))
    }
}

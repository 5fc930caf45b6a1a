//! `fockspace`: evaluate, tabulate and verify hydrogen wavefunctions and the
//! identities around them.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockspace::hydrogen::{fock_map, psi_momentum, psi_position, radial_momentum, radial_position};
use fockspace::quadrature::{RadialHankel, DEFAULT_HANKEL_NODES};
use fockspace::specfun::{gegenbauer, QuantumNumbers};
use fockspace::verify::{self, Report, Suite, VerifyConfig};

use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "fockspace", version, about = "Hydrogen wavefunctions in position and momentum space, with verification suites")]
struct Cli {
    /// Output format; defaults to csv, or json for verify.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance override `key=value`, repeatable (verify only).
    #[arg(long = "tol", global = true, value_name = "KEY=VAL")]
    tol: Vec<String>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Node count for the radial quadrature rules.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate ψ(r⃗) or ψ̃(p⃗) at one point.
    Eval(EvalArgs),
    /// Tabulate a function on a uniform grid.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Same as `table fock`.
    FockMap(FockArgs),
    /// The determinant and Clifford-relation cases of `verify clifford`.
    CliffordDet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(value_enum)]
    kind: Space,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// Cartesian point (bohr, or atomic momentum units).
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["X", "Y", "Z"])]
    point: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hydrogen,
    Maps,
    Clifford,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Hydrogen => Suite::Hydrogen,
            SuiteArg::Maps => Suite::Maps,
            SuiteArg::Clifford => Suite::Clifford,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
enum TableKind {
    /// Columns r_bohr, R_nl.
    Radial(RadialArgs),
    /// Columns p_au, F_nl (closed form), F_nl (Hankel quadrature).
    MomentumRadial(RadialArgs),
    /// Columns x, C_m^(a)(x).
    Gegenbauer(GegenbauerArgs),
    /// Columns p_au, y1..y4, norm.
    Fock(FockArgs),
}

#[derive(Debug, Args)]
struct RadialArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    /// start stop count
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["START", "STOP", "COUNT"])]
    grid: Vec<String>,
}

#[derive(Debug, Args)]
struct GegenbauerArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long)]
    m: u32,
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["START", "STOP", "COUNT"])]
    grid: Vec<String>,
}

#[derive(Debug, Args)]
struct FockArgs {
    #[arg(long)]
    delta: f64,
    /// Momentum magnitudes: start stop count.
    #[arg(long = "grid-p", alias = "grid", num_args = 3, allow_negative_numbers = true, value_names = ["START", "STOP", "COUNT"])]
    grid_p: Vec<String>,
    /// Direction of p⃗ (normalized internally).
    #[arg(long, num_args = 3, allow_negative_numbers = true, default_values_t = [0.0, 0.0, 1.0])]
    dir: Vec<f64>,
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure
where
    E: Into<Box<dyn std::error::Error>>,
{
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

const MAX_GRID: usize = 1_000_000;

fn parse_grid(args: &[String]) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("bad grid '{}': expected START STOP COUNT", args.join(" ")));
    let [start, stop, count] = args else { return Err(bad()) };
    let start: f64 = start.parse().map_err(|_| bad())?;
    let stop: f64 = stop.parse().map_err(|_| bad())?;
    let count: usize = count.parse().map_err(|_| bad())?;
    if !start.is_finite() || !stop.is_finite() || stop < start || count == 0 || count > MAX_GRID {
        return Err(Failure::Usage(format!("bad grid: need finite start <= stop and 1 <= count <= {MAX_GRID}")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count).map(|k| start + (stop - start) * k as f64 / (count - 1) as f64).collect())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("FOCKSPACE_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("FOCKSPACE_THREADS='{v}' is not a non-negative integer")))?;
    // 0 leaves rayon's automatic choice in place
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Verify { .. } | Command::CliffordDet => Format::Json,
        _ => Format::Csv,
    });
    let sink = output::Sink::new(cli.out.clone());
    match &cli.command {
        Command::Eval(a) => {
            let qn = QuantumNumbers::new(a.n, a.l, a.m)?;
            let p = [a.point[0], a.point[1], a.point[2]];
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Failure::Usage("point must be finite".into()));
            }
            let (v, kind) = match a.kind {
                Space::Position => (psi_position(qn, p)?, "position"),
                Space::Momentum => (psi_momentum(qn, p)?, "momentum"),
            };
            let mut t = Table::new(
                format!("eval {kind}"),
                cli.seed,
                &["n", "l", "m", "px_or_x", "py_or_y", "pz_or_z", "re", "im", "abs"],
            );
            t.push_mixed(&[a.n as f64, a.l as f64, a.m as f64], &[p[0], p[1], p[2], v.re, v.im, v.norm()]);
            sink.write(&t.render(format))?;
        }
        Command::Table { kind } => sink.write(&table(kind, cli.seed, cli.nodes)?.render(format))?,
        Command::FockMap(a) => sink.write(&fock_table(a, cli.seed)?.render(format))?,
        Command::Verify { suite } => {
            let report = verify::run((*suite).into(), &verify_config(&cli)?)?;
            return finish_report(report, format, &sink);
        }
        Command::CliffordDet => {
            let mut report = verify::run(Suite::Clifford, &verify_config(&cli)?)?;
            report.cases.retain(|c| c.case.id == "det_identity" || c.case.id == "clifford_relations");
            report.suite = "clifford-det".into();
            report.failed = report.cases.iter().filter(|c| !c.pass).count();
            report.passed = report.cases.len() - report.failed;
            return finish_report(report, format, &sink);
        }
    }
    Ok(())
}

fn verify_config(cli: &Cli) -> Result<VerifyConfig, Failure> {
    let mut cfg = VerifyConfig { seed: cli.seed, nodes: cli.nodes, ..VerifyConfig::default() };
    for t in &cli.tol {
        cfg.tolerances.apply(t)?;
    }
    if let Some(n) = cli.nodes {
        if n < 2 {
            return Err(Failure::Usage("--nodes must be at least 2".into()));
        }
    }
    Ok(cfg)
}

fn finish_report(report: Report, format: Format, sink: &output::Sink) -> Outcome {
    sink.write(&output::render_report(&report, format)?)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn table(kind: &TableKind, seed: u64, nodes: Option<usize>) -> Result<Table, Failure> {
    Ok(match kind {
        TableKind::Radial(a) => {
            QuantumNumbers::new(a.n, a.l, 0)?;
            let grid = parse_grid(&a.grid)?;
            let mut t = Table::new(format!("radial n={} l={}", a.n, a.l), seed, &["r_bohr", "R_nl"]);
            for r in grid {
                t.push(&[r, radial_position(a.n, a.l, r)?]);
            }
            t
        }
        TableKind::MomentumRadial(a) => {
            QuantumNumbers::new(a.n, a.l, 0)?;
            let grid = parse_grid(&a.grid)?;
            let nodes = nodes.unwrap_or(DEFAULT_HANKEL_NODES);
            if nodes < 2 {
                return Err(Failure::Usage("--nodes must be at least 2".into()));
            }
            let hankel = RadialHankel::new(nodes)?;
            let mut t = Table::new(format!("momentum-radial n={} l={} nodes={nodes}", a.n, a.l), seed, &["p_au", "F_nl", "F_nl_hankel"]);
            for p in grid {
                t.push(&[p, radial_momentum(a.n, a.l, p)?, hankel.transform(a.n, a.l, p)?.radial]);
            }
            t
        }
        TableKind::Gegenbauer(a) => {
            let grid = parse_grid(&a.grid)?;
            let mut t = Table::new(format!("gegenbauer a={} m={}", a.a, a.m), seed, &["x", "C"]);
            for x in grid {
                t.push(&[x, gegenbauer(a.m, a.a, x)?]);
            }
            t
        }
        TableKind::Fock(a) => fock_table(a, seed)?,
    })
}

fn fock_table(a: &FockArgs, seed: u64) -> Result<Table, Failure> {
    let grid = parse_grid(&a.grid_p)?;
    let d = (a.dir.iter().map(|v| v * v).sum::<f64>()).sqrt();
    if !(d > 0.0 && d.is_finite()) {
        return Err(Failure::Usage("--dir must be a non-zero finite vector".into()));
    }
    let dir: Vec<f64> = a.dir.iter().map(|v| v / d).collect();
    let mut t = Table::new(format!("fock delta={}", a.delta), seed, &["p_au", "y1", "y2", "y3", "y4", "norm"]);
    for p in grid {
        let f = fock_map([dir[0] * p, dir[1] * p, dir[2] * p], a.delta)?;
        t.push(&[p, f.y[0], f.y[1], f.y[2], f.y[3], f.norm()]);
    }
    Ok(t)
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end: construct flag data, run verification suites,
//! and emit the toy-model figures.
//!
//! Exit codes: 0 = all checks passed, 1 = at least one check failed,
//! 2 = usage error, 3 = I/O error.

use clap::{Args, Parser, Subcommand};
use flag_orbit::flag::FlagParams;
use flag_orbit::report::{run_verification, CheckStatus, RunConfig, Suite};
use flag_orbit::scalar::Tolerances;
use flag_orbit::toy::{emit_toy_figures, ToyModel};
use flag_orbit::{Error, FlagDatum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flag-orbit",
    version,
    about = "Symmetric flag spaces, cotangent bundles as adjoint orbits, and their numerical certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family: A, C, or D
    #[arg(long)]
    family: Option<String>,
    /// Block size p (family A; requires p <= q)
    #[arg(long)]
    p: Option<usize>,
    /// Block size q (family A)
    #[arg(long)]
    q: Option<usize>,
    /// Rank l (families C and D)
    #[arg(long)]
    l: Option<usize>,
}

impl FamilyArgs {
    fn parse(&self) -> Result<FlagParams, String> {
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| "missing --family (A, C, or D)".to_string())?;
        match family {
            "A" | "a" => {
                let p = self.p.ok_or("family A requires --p")?;
                let q = self.q.ok_or("family A requires --q")?;
                Ok(FlagParams::A { p, q })
            }
            "C" | "c" => Ok(FlagParams::C {
                l: self.l.ok_or("family C requires --l")?,
            }),
            "D" | "d" => Ok(FlagParams::D {
                l: self.l.ok_or("family D requires --l")?,
            }),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a flag datum and write it as JSON
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Residual tolerance (default 1e-9, or FLAG_ORBIT_TOL)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run verification suites over a datum
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Load the datum from a serialized JSON file instead
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Suite: all, algebra, symmetric, symplectic, curvature, toy
        #[arg(long, default_value = "all")]
        suite: String,
        /// Residual tolerance (default 1e-9, or FLAG_ORBIT_TOL)
        #[arg(long)]
        tol: Option<f64>,
        /// Sample count for randomized checks
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit timing fields so identical runs are byte-identical
        #[arg(long)]
        stable: bool,
    },
    /// Emit toy-model figure data (CSV polylines, SVG)
    Toy {
        /// Model: sl2 or su2
        #[arg(long)]
        model: String,
        /// SVG output path
        #[arg(long)]
        svg: Option<PathBuf>,
        /// CSV output path
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Samples per polyline (minimum 16)
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

fn base_tolerance(flag: Option<f64>) -> Result<Tolerances<f64>, String> {
    if let Some(t) = flag {
        return Ok(Tolerances::with_base(t));
    }
    match std::env::var("FLAG_ORBIT_TOL") {
        Ok(text) => text
            .parse::<f64>()
            .map(Tolerances::with_base)
            .map_err(|_| format!("FLAG_ORBIT_TOL is not a number: {text:?}")),
        Err(_) => Ok(Tolerances::default()),
    }
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn usage_err(msg: String) -> (u8, String) {
    (EXIT_USAGE, msg)
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    match cli.cmd {
        Cmd::Construct { family, out, tol } => {
            let params = family.parse().map_err(usage_err)?;
            let tol = base_tolerance(tol).map_err(usage_err)?;
            let fd = FlagDatum::build(params, tol)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            let text = fd
                .to_json()
                .map_err(|e| (EXIT_IO, e.to_string()))?;
            write_or_print(&out, &text).map_err(|m| (EXIT_IO, m))?;
            Ok(0)
        }
        Cmd::Verify {
            family,
            input,
            suite,
            tol,
            samples,
            seed,
            out,
            stable,
        } => {
            let tol = base_tolerance(tol).map_err(usage_err)?;
            let suite: Suite = suite
                .parse()
                .map_err(|e: Error| usage_err(e.to_string()))?;
            let params = match (&input, family.family.is_some()) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage_err(format!("reading {}: {e}", path.display())))?;
                    FlagDatum::<f64>::from_json(&text, tol)
                        .map_err(|e| usage_err(format!("datum: {e}")))?
                        .params
                }
                (None, true) => family.parse().map_err(usage_err)?,
                (None, false) => {
                    return Err(usage_err(
                        "verify needs either --in DATUM or --family/--p/--q/--l".into(),
                    ))
                }
            };
            let cfg = RunConfig { tol, samples, seed };
            let report = run_verification::<f64>(params, suite, cfg, stable)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            for c in &report.checks {
                let tag = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::ReportedMismatch => "reported-mismatch",
                };
                eprintln!(
                    "{tag:<17} {:<38} residual {:>10.3e}  {}",
                    c.check_id, c.max_residual, c.details
                );
            }
            let text = report.to_json().map_err(|e| (EXIT_IO, e.to_string()))?;
            write_or_print(&out, &text).map_err(|m| (EXIT_IO, m))?;
            Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
        }
        Cmd::Toy {
            model,
            svg,
            csv,
            resolution,
        } => {
            let model: ToyModel = model
                .parse()
                .map_err(|e: Error| usage_err(e.to_string()))?;
            let figs = emit_toy_figures(model, resolution)
                .map_err(|e| usage_err(e.to_string()))?;
            if svg.is_none() && csv.is_none() {
                return Err(usage_err("toy needs --svg and/or --csv output paths".into()));
            }
            if let Some(path) = svg {
                std::fs::write(&path, figs.to_svg())
                    .map_err(|e| (EXIT_IO, format!("writing {}: {e}", path.display())))?;
            }
            if let Some(path) = csv {
                std::fs::write(&path, figs.to_csv())
                    .map_err(|e| (EXIT_IO, format!("writing {}: {e}", path.display())))?;
            }
            Ok(0)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_) | Error::DatumMismatch { .. } | Error::Json(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

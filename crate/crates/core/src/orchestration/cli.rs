//! Command-line front end. Exit codes: 0 success, 1 usage error,
//! 2 invalid configuration, 3 runtime failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::{audit_dir, execute_run, execute_sweep, load_config, verify, Config, ConfigError, RunError};
use crate::model::{check_condition_case, format_ratio, predict_regime, RegimePrediction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chemoradial", version, about = "Radial attraction-repulsion chemotaxis lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the regime prediction for a configuration.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Simulate one configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate every point of a sweep configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute audit.csv of a run directory from its stored snapshots.
    Audit {
        #[arg(long)]
        dir: PathBuf,
    },
    /// Run the built-in numerical self-checks.
    Verify,
}

/// Headline of a prediction, e.g. `BlowupThm44 (κ < 7/6)`.
pub fn headline(pred: &RegimePrediction) -> String {
    match pred.kappa_bound {
        Some(bound) if pred.verdict.is_blowup() => format!("{} (κ < {})", pred.verdict, format_ratio(bound)),
        _ => pred.verdict.to_string(),
    }
}

fn exit_code(err: &RunError) -> i32 {
    match err {
        RunError::Config(_) => EXIT_INVALID,
        _ => EXIT_RUNTIME,
    }
}

fn load(path: &PathBuf) -> Result<Config, i32> {
    load_config(path).map_err(|e: ConfigError| {
        eprintln!("error: {e}");
        EXIT_INVALID
    })
}

fn wrong_kind(expected: &str) -> i32 {
    eprintln!("error: expected a {expected} configuration");
    EXIT_INVALID
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn dispatch(command: Command) -> Result<(), i32> {
    match command {
        Command::Check { config } => {
            let cfg = match load(&config)? {
                Config::Run(cfg) => cfg,
                Config::Sweep(sw) => sw.base,
            };
            let pred = predict_regime(&cfg.model, &cfg.domain, cfg.diag.eps0);
            println!("{}", headline(&pred));
            let case = check_condition_case(cfg.model.m, cfg.model.p, cfg.domain.n);
            let case = case.map_or_else(|| "none".to_string(), |c| c.to_string());
            println!("condition case (n, m, p) = ({}, {}, {}): {case}", cfg.domain.n, cfg.model.m, cfg.model.p);
            println!("chi*alpha - xi*gamma = {}", cfg.model.attraction_excess());
            if let Some(sigma) = pred.sigma_exponent {
                println!("sigma = {} (eps0 = {})", format_ratio(sigma), cfg.diag.eps0);
            }
            println!("{}", pred.details);
            Ok(())
        }
        Command::Run { config, out } => {
            let Config::Run(cfg) = load(&config)? else { return Err(wrong_kind("run")) };
            let rec = execute_run(&cfg, &out).map_err(|e| {
                eprintln!("error: {e}");
                exit_code(&e)
            })?;
            let t = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
            println!(
                "{} (T_detect {}, T* estimate {}, {} steps, {:.2} s) -> {}",
                rec.classification,
                t(rec.t_detect),
                t(rec.t_star_estimate),
                rec.accepted_steps,
                rec.wall_time_s,
                out.display()
            );
            Ok(())
        }
        Command::Sweep { config, out } => {
            let Config::Sweep(cfg) = load(&config)? else { return Err(wrong_kind("sweep")) };
            let rows = execute_sweep(&cfg, &out).map_err(|e| {
                eprintln!("error: {e}");
                exit_code(&e)
            })?;
            let errors = rows.iter().filter(|r| r.observed == "ERROR").count();
            let disagree = rows.iter().filter(|r| r.agreement == Some(false)).count();
            println!(
                "{} points, {} errors, {} disagreements -> {}",
                rows.len(),
                errors,
                disagree,
                out.join("regime_map.csv").display()
            );
            Ok(())
        }
        Command::Audit { dir } => {
            let rows = audit_dir(&dir).map_err(|e| {
                eprintln!("error: {e}");
                exit_code(&e)
            })?;
            let worst = rows
                .iter()
                .filter_map(|d| {
                    let scale = d.dphi_dt?.abs() + d.signed_sum().abs();
                    Some(d.margin()? / scale)
                })
                .fold(f64::INFINITY, f64::min);
            println!("{} audit rows, smallest relative margin {worst:.3e}", rows.len());
            Ok(())
        }
        Command::Verify => {
            let checks = verify::run_suite();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(EXIT_RUNTIME)
            }
        }
    }
}

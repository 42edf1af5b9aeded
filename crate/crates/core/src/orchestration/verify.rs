//! Self-checks behind the `verify` subcommand: elliptic manufactured
//! solution, discrete mass conservation, and the logistic ODE oracle.

use std::f64::consts::PI;

use crate::diagnostics::NormOptions;
use crate::dynamics::{run, OutputCadence, Scenario, StepControl};
use crate::elliptic::{solve_helmholtz, HelmholtzProblem};
use crate::grid::{build_grid, integrate};
use crate::initdata::{make_initial, InitialDataSpec};
use crate::model::ModelParams;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Max-norm error of the Helmholtz solve for `v = cos(pi r)` in three
/// dimensions with unit coefficients on `N` cells.
pub fn elliptic_mms_error(cells: usize) -> f64 {
    let grid = build_grid(3, 1.0, cells).expect("valid grid");
    // -v'' - 2v'/r + v for v = cos(pi r)
    let load: Vec<f64> = grid
        .centers()
        .iter()
        .map(|&r| (1.0 + PI * PI) * (PI * r).cos() + 2.0 * PI * (PI * r).sin() / r)
        .collect();
    let prob = HelmholtzProblem { grid: &grid, absorption: 1.0, load_coeff: 1.0, source: &load };
    let v = solve_helmholtz(&prob).expect("well-posed problem");
    grid.centers()
        .iter()
        .zip(&v)
        .map(|(&r, vi)| (vi - (PI * r).cos()).abs())
        .fold(0.0, f64::max)
}

fn mms_check() -> Check {
    let errs: Vec<f64> = [128, 256, 512].iter().map(|&n| elliptic_mms_error(n)).collect();
    let orders: Vec<f64> = errs.windows(2).map(|e| (e[0] / e[1]).log2()).collect();
    Check {
        name: "elliptic manufactured solution",
        passed: orders.iter().all(|&p| p >= 1.9) && errs[2] < 1e-4,
        detail: format!(
            "errors {:.3e} {:.3e} {:.3e}, orders {:.3} {:.3}",
            errs[0], errs[1], errs[2], orders[0], orders[1]
        ),
    }
}

fn conservation_check() -> Check {
    let grid = build_grid(3, 1.0, 128).expect("valid grid");
    let u0 = make_initial(&InitialDataSpec::gaussian(5.0, 0.2), &grid).expect("valid data").u0;
    let params = ModelParams { gamma: 1.5, ..Default::default() };
    let scenario = Scenario {
        params,
        grid,
        initial: u0,
        control: StepControl::with_horizon(0.2),
        norms: NormOptions { sigma_norm: 4.0, sigma_profile: 1.0 },
        cadence: OutputCadence::default(),
    };
    match run(&scenario) {
        Ok(summary) => {
            let m0 = summary.trace[0].mass_u;
            let drift = summary
                .trace
                .iter()
                .map(|n| ((n.mass_u - m0) / m0).abs())
                .fold(0.0, f64::max);
            Check {
                name: "mass conservation",
                passed: summary.accepted_steps >= 10_000 && drift <= 1e-10,
                detail: format!("{} steps, max relative drift {drift:.3e}", summary.accepted_steps),
            }
        }
        Err(e) => Check { name: "mass conservation", passed: false, detail: e.to_string() },
    }
}

fn logistic_check() -> Check {
    let grid = build_grid(3, 1.0, 64).expect("valid grid");
    let volume = integrate(&grid, &[1.0; 64]).expect("matching length");
    let u0 = vec![0.5; 64];
    let params = ModelParams {
        chi: 0.0,
        xi: 0.0,
        lambda0: 1.0,
        mu1: 1.0,
        a: 0.0,
        kappa: 2.0,
        source_enabled: true,
        ..Default::default()
    };
    let scenario = Scenario {
        params,
        grid,
        initial: u0,
        control: StepControl::with_horizon(5.0),
        norms: NormOptions { sigma_norm: 4.0, sigma_profile: 1.0 },
        cadence: OutputCadence { frames: 100, growth_factor: 1.25 },
    };
    match run(&scenario) {
        Ok(summary) => {
            let err = summary
                .trace
                .iter()
                .map(|n| (n.mass_u / volume - 1.0 / (1.0 + (-n.t).exp())).abs())
                .fold(0.0, f64::max);
            Check {
                name: "logistic oracle",
                passed: err <= 5e-3,
                detail: format!("max |u - 1/(1+e^-t)| = {err:.3e}"),
            }
        }
        Err(e) => Check { name: "logistic oracle", passed: false, detail: e.to_string() },
    }
}

pub fn run_suite() -> Vec<Check> {
    vec![mms_check(), conservation_check(), logistic_check()]
}

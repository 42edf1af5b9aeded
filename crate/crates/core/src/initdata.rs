//! Initial densities: regularised singular profiles, Gaussian bumps and
//! constants, each normalised to a prescribed total mass on the grid.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{integrate, RadialGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InitDataError {
    #[error("total mass M0 = {0} must be positive")]
    InfeasibleMass(f64),
    #[error("core radius {0} must be positive")]
    BadCore(f64),
    #[error("profile exponent sigma = {0} must be positive")]
    BadExponent(f64),
    #[error("r1 = {r1} outside (0, {radius}]")]
    BadRadius { r1: f64, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    /// `c (r^2 + rho0^2)^{-sigma/2}`.
    Singular,
    /// `c exp(-r^2 / (2 rho0^2))`.
    Gaussian,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialDataSpec {
    pub kind: InitialKind,
    /// Target constant in `u0(r) <= L r^{-sigma}`; only compared against.
    #[serde(rename = "L")]
    pub l: f64,
    pub sigma: f64,
    /// `rho0`; `None` means two cells.
    #[serde(rename = "core")]
    pub core_radius: Option<f64>,
    #[serde(rename = "M0")]
    pub m0: f64,
    /// Radius of the concentration ball; `None` means `R / 4`.
    pub r1: Option<f64>,
    #[serde(rename = "M1")]
    pub m1_check: Option<f64>,
}

impl InitialDataSpec {
    pub fn constant(m0: f64) -> Self {
        Self { kind: InitialKind::Constant, l: 1.0, sigma: 1.0, core_radius: None, m0, r1: None, m1_check: None }
    }

    pub fn singular(m0: f64, sigma: f64, core: f64) -> Self {
        Self { kind: InitialKind::Singular, l: f64::INFINITY, sigma, core_radius: Some(core), m0, r1: None, m1_check: None }
    }

    pub fn gaussian(m0: f64, core: f64) -> Self {
        Self { kind: InitialKind::Gaussian, l: f64::INFINITY, sigma: 1.0, core_radius: Some(core), m0, r1: None, m1_check: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialReport {
    pub actual_mass: f64,
    pub r1: f64,
    pub mass_in_r1: f64,
    /// `max_r u0(r) r^sigma` over the grid's radial interval.
    pub profile_bound_l: f64,
    pub within_l: bool,
    pub m1_satisfied: Option<bool>,
    pub core_radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub u0: Vec<f64>,
    pub report: InitialReport,
}

/// Samples the profile at cell centres and rescales it so that the grid
/// integral equals `M0`.
pub fn make_initial(spec: &InitialDataSpec, grid: &RadialGrid) -> Result<InitialData, InitDataError> {
    if !(spec.m0 > 0.0 && spec.m0.is_finite()) {
        return Err(InitDataError::InfeasibleMass(spec.m0));
    }
    let radius = grid.radius();
    let core = spec.core_radius.unwrap_or(2.0 * grid.dr());
    if spec.kind != InitialKind::Constant && !(core > 0.0 && core.is_finite()) {
        return Err(InitDataError::BadCore(core));
    }
    if spec.kind == InitialKind::Singular && !(spec.sigma > 0.0 && spec.sigma.is_finite()) {
        return Err(InitDataError::BadExponent(spec.sigma));
    }
    let r1 = spec.r1.unwrap_or(0.25 * radius);
    if !(r1 > 0.0 && r1 <= radius) {
        return Err(InitDataError::BadRadius { r1, radius });
    }

    let shape: Vec<f64> = grid
        .centers()
        .iter()
        .map(|&r| match spec.kind {
            InitialKind::Singular => {
                // scaled by core^sigma to keep the unnormalised values O(1)
                (1.0 + (r / core).powi(2)).powf(-0.5 * spec.sigma)
            }
            InitialKind::Gaussian => (-(r * r) / (2.0 * core * core)).exp(),
            InitialKind::Constant => 1.0,
        })
        .collect();
    let raw_mass = integrate(grid, &shape).expect("shape sampled on the grid");
    let scale = spec.m0 / raw_mass;
    let u0: Vec<f64> = shape.iter().map(|x| x * scale).collect();

    let actual_mass = integrate(grid, &u0).expect("field sampled on the grid");
    let mass_in_r1 = mass_inside(grid, &u0, r1);
    let profile_bound_l = match spec.kind {
        InitialKind::Singular => {
            // u0 r^sigma = c (r^2 / (r^2 + rho0^2))^{sigma/2} increases in r
            let c = scale * core.powf(spec.sigma);
            c * (radius * radius / (radius * radius + core * core)).powf(0.5 * spec.sigma)
        }
        _ => grid
            .centers()
            .iter()
            .zip(&u0)
            .map(|(r, u)| u * r.powf(spec.sigma))
            .fold(0.0, f64::max),
    };
    let report = InitialReport {
        actual_mass,
        r1,
        mass_in_r1,
        profile_bound_l,
        within_l: profile_bound_l <= spec.l,
        m1_satisfied: spec.m1_check.map(|m1| mass_in_r1 >= m1),
        core_radius: core,
    };
    Ok(InitialData { u0, report })
}

/// Mass of a cell-centred field inside `B_{r1}`, counting the cell that
/// straddles `r1` in proportion to its weight.
pub fn mass_inside(grid: &RadialGrid, field: &[f64], r1: f64) -> f64 {
    let n = grid.dim() as i32;
    let faces = grid.faces();
    let mut acc = 0.0;
    for (i, (w, u)) in grid.volumes().iter().zip(field).enumerate() {
        let (lo, hi) = (faces[i], faces[i + 1]);
        if hi <= r1 {
            acc += w * u;
        } else {
            if lo < r1 {
                acc += (r1.powi(n) - lo.powi(n)) / n as f64 * u;
            }
            break;
        }
    }
    grid.sphere_area() * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::model::sigma_exponent;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn constant_unit_density() {
        let grid = build_grid(3, 1.0, 64).unwrap();
        let init = make_initial(&InitialDataSpec::constant(4.0 * PI / 3.0), &grid).unwrap();
        for u in &init.u0 {
            assert_relative_eq!(*u, 1.0, max_relative = 1e-13);
        }
        assert_relative_eq!(init.report.mass_in_r1, 4.0 * PI / 3.0 / 64.0, max_relative = 1e-12);
    }

    #[test]
    fn singular_profile_concentrates() {
        let sigma = sigma_exponent(3, 1.0, 2.0, 0.1).unwrap();
        let grid = build_grid(3, 1.0, 400).unwrap();
        let spec = InitialDataSpec { r1: Some(0.2), ..InitialDataSpec::singular(1.0, sigma, 0.05) };
        let init = make_initial(&spec, &grid).unwrap();
        assert_relative_eq!(init.report.actual_mass, 1.0, max_relative = 1e-12);
        assert!(init.report.mass_in_r1 >= 0.9, "{}", init.report.mass_in_r1);
        assert!(init.u0.windows(2).all(|p| p[1] <= p[0]));
        // the recorded constant dominates the profile on every cell
        for (r, u) in grid.centers().iter().zip(&init.u0) {
            assert!(*u <= init.report.profile_bound_l * r.powf(-sigma) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn wide_gaussian_is_nearly_flat() {
        let grid = build_grid(3, 1.0, 64).unwrap();
        let flat = make_initial(&InitialDataSpec::constant(2.0), &grid).unwrap();
        let wide = make_initial(&InitialDataSpec::gaussian(2.0, 10.0), &grid).unwrap();
        let diff = flat.u0.iter().zip(&wide.u0).map(|(a, b)| (a - b).abs() / a).fold(0.0, f64::max);
        assert!(diff <= 0.05, "{diff}");
    }

    #[test]
    fn default_core_is_two_cells() {
        let grid = build_grid(3, 1.0, 100).unwrap();
        let spec = InitialDataSpec { core_radius: None, ..InitialDataSpec::gaussian(1.0, 1.0) };
        assert_relative_eq!(make_initial(&spec, &grid).unwrap().report.core_radius, 0.02, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        let grid = build_grid(3, 1.0, 16).unwrap();
        assert_eq!(
            make_initial(&InitialDataSpec::constant(0.0), &grid).unwrap_err(),
            InitDataError::InfeasibleMass(0.0)
        );
        assert_eq!(
            make_initial(&InitialDataSpec::singular(1.0, 6.0, -0.1), &grid).unwrap_err(),
            InitDataError::BadCore(-0.1)
        );
        let far = InitialDataSpec { r1: Some(2.0), ..InitialDataSpec::constant(1.0) };
        assert!(matches!(make_initial(&far, &grid), Err(InitDataError::BadRadius { .. })));
    }

    #[test]
    fn straddling_cell_counts_fractionally() {
        let grid = build_grid(3, 1.0, 8).unwrap();
        let ones = vec![1.0; 8];
        assert_relative_eq!(mass_inside(&grid, &ones, 0.3), 4.0 * PI / 3.0 * 0.027, max_relative = 1e-13);
    }
}

//! Radial Neumann problems `0 = lap v + load * u - absorption * v`.
//!
//! Finite-volume form on cell `i`:
//!
//! ```text
//! -(c_{i+1/2} (v_{i+1} - v_i) - c_{i-1/2} (v_i - v_{i-1})) + absorption w_i v_i = load w_i u_i
//! ```
//!
//! with `c_f = r_f^{n-1} / dr` and `c = 0` on the two boundary faces. Summing
//! over cells telescopes the flux terms, so `absorption * sum(w v) = load * sum(w u)`
//! holds up to roundoff.

use thiserror::Error;

use crate::grid::{GridError, RadialGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("absorption coefficient {0} must be positive")]
    NonPositiveAbsorption(f64),
    #[error("tridiagonal system is singular at row {0}")]
    SingularSystem(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy)]
pub struct HelmholtzProblem<'a> {
    pub grid: &'a RadialGrid,
    /// `beta` or `delta`.
    pub absorption: f64,
    /// `alpha` or `gamma`.
    pub load_coeff: f64,
    pub source: &'a [f64],
}

/// Solves one radial Helmholtz problem from scratch.
pub fn solve_helmholtz(prob: &HelmholtzProblem<'_>) -> Result<Vec<f64>, EllipticError> {
    let solver = HelmholtzSolver::new(prob.grid, prob.absorption)?;
    let mut out = vec![0.0; prob.grid.cells()];
    solver.solve_into(prob.load_coeff, prob.source, &mut out)?;
    Ok(out)
}

/// Pre-factored tridiagonal operator for a fixed grid and absorption.
///
/// The factorisation is read-only after construction, so one solver can be
/// shared by concurrent solves; each solve writes only to its output slice.
#[derive(Debug, Clone)]
pub struct HelmholtzSolver {
    /// `-c_{i-1/2}` (entry 0 unused).
    lower: Vec<f64>,
    /// Modified super-diagonal of the forward sweep.
    sweep_upper: Vec<f64>,
    /// `1 / pivot_i`.
    inv_pivot: Vec<f64>,
    volumes: Vec<f64>,
}

impl HelmholtzSolver {
    pub fn new(grid: &RadialGrid, absorption: f64) -> Result<Self, EllipticError> {
        if !(absorption > 0.0 && absorption.is_finite()) {
            return Err(EllipticError::NonPositiveAbsorption(absorption));
        }
        let cells = grid.cells();
        let face_coeff = face_coefficients(grid);
        let volumes = grid.volumes().to_vec();

        let mut lower = vec![0.0; cells];
        let mut sweep_upper = vec![0.0; cells];
        let mut inv_pivot = vec![0.0; cells];
        let mut prev_upper = 0.0;
        for i in 0..cells {
            let (c_in, c_out) = (face_coeff[i], face_coeff[i + 1]);
            let diag = c_in + c_out + absorption * volumes[i];
            let sub = -c_in;
            let sup = -c_out;
            let pivot = diag - sub * prev_upper;
            if !(pivot.abs() > 0.0) || !pivot.is_finite() {
                return Err(EllipticError::SingularSystem(i));
            }
            lower[i] = sub;
            inv_pivot[i] = 1.0 / pivot;
            sweep_upper[i] = sup / pivot;
            prev_upper = sweep_upper[i];
        }
        Ok(Self { lower, sweep_upper, inv_pivot, volumes })
    }

    pub fn cells(&self) -> usize {
        self.volumes.len()
    }

    /// Solves for `v` with right-hand side `load * w_i * source_i`.
    pub fn solve_into(&self, load: f64, source: &[f64], out: &mut [f64]) -> Result<(), EllipticError> {
        let cells = self.cells();
        if source.len() != cells {
            return Err(GridError::LengthMismatch { expected: cells, got: source.len() }.into());
        }
        if out.len() != cells {
            return Err(GridError::LengthMismatch { expected: cells, got: out.len() }.into());
        }
        let mut prev = 0.0;
        for i in 0..cells {
            let rhs = load * self.volumes[i] * source[i];
            prev = (rhs - self.lower[i] * prev) * self.inv_pivot[i];
            out[i] = prev;
        }
        for i in (0..cells - 1).rev() {
            out[i] -= self.sweep_upper[i] * out[i + 1];
        }
        Ok(())
    }
}

/// Solves two problems sharing one grid and one source in a single pass.
///
/// Same result as two `solve_into` calls; interleaving the two recurrences
/// roughly halves the latency of the sweeps.
pub fn solve_pair(
    first: (&HelmholtzSolver, f64, &mut [f64]),
    second: (&HelmholtzSolver, f64, &mut [f64]),
    source: &[f64],
) -> Result<(), EllipticError> {
    let (sa, la, oa) = first;
    let (sb, lb, ob) = second;
    let cells = sa.cells();
    for len in [sb.cells(), source.len(), oa.len(), ob.len()] {
        if len != cells {
            return Err(GridError::LengthMismatch { expected: cells, got: len }.into());
        }
    }
    let (mut pa, mut pb) = (0.0, 0.0);
    for i in 0..cells {
        let x = source[i];
        pa = (la * sa.volumes[i] * x - sa.lower[i] * pa) * sa.inv_pivot[i];
        pb = (lb * sb.volumes[i] * x - sb.lower[i] * pb) * sb.inv_pivot[i];
        oa[i] = pa;
        ob[i] = pb;
    }
    for i in (0..cells - 1).rev() {
        oa[i] -= sa.sweep_upper[i] * oa[i + 1];
        ob[i] -= sb.sweep_upper[i] * ob[i + 1];
    }
    Ok(())
}

/// `r_f^{n-1} / dr` on every face, zero on the boundary faces.
pub(crate) fn face_coefficients(grid: &RadialGrid) -> Vec<f64> {
    let cells = grid.cells();
    let mut coeff: Vec<f64> = (0..=cells).map(|f| grid.face_metric(f) / grid.dr()).collect();
    coeff[0] = 0.0;
    coeff[cells] = 0.0;
    coeff
}

/// Face-centred radial derivative: central differences inside, zero on
/// the symmetry face `r = 0` and the Neumann face `r = R`.
pub fn radial_gradient(grid: &RadialGrid, field: &[f64]) -> Result<Vec<f64>, GridError> {
    grid.check_len(field)?;
    let mut grad = vec![0.0; grid.cells() + 1];
    gradient_into(grid.dr(), field, &mut grad);
    Ok(grad)
}

pub(crate) fn gradient_into(dr: f64, field: &[f64], grad: &mut [f64]) {
    let cells = field.len();
    grad[0] = 0.0;
    grad[cells] = 0.0;
    for f in 1..cells {
        grad[f] = (field[f] - field[f - 1]) / dr;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grid, integrate, to_mass_coordinate};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn manufactured_load(r: f64) -> f64 {
        // -lap(cos(pi r)) + cos(pi r) in n = 3
        (1.0 + PI * PI) * (PI * r).cos() + 2.0 * PI / r * (PI * r).sin()
    }

    fn mms_error(cells: usize) -> f64 {
        let grid = build_grid(3, 1.0, cells).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|&r| manufactured_load(r)).collect();
        let prob = HelmholtzProblem { grid: &grid, absorption: 1.0, load_coeff: 1.0, source: &u };
        let v = solve_helmholtz(&prob).unwrap();
        grid.centers()
            .iter()
            .zip(&v)
            .map(|(&r, vi)| (vi - (PI * r).cos()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_load_gives_constant_solution() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let u = vec![0.7; 32];
        let prob = HelmholtzProblem { grid: &grid, absorption: 2.0, load_coeff: 3.0, source: &u };
        for v in solve_helmholtz(&prob).unwrap() {
            assert_relative_eq!(v, 3.0 * 0.7 / 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn manufactured_solution_second_order() {
        let e1 = mms_error(64);
        let e2 = mms_error(128);
        let ratio = e1 / e2;
        assert!((3.6..=4.4).contains(&ratio), "ratio {ratio} ({e1}, {e2})");
    }

    #[test]
    fn integral_identity() {
        let grid = build_grid(3, 1.0, 50).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|r| (-r * r * 20.0).exp()).collect();
        let scale = 1.0 / integrate(&grid, &u).unwrap();
        let u: Vec<f64> = u.iter().map(|x| x * scale).collect();
        let prob = HelmholtzProblem { grid: &grid, absorption: 4.0, load_coeff: 2.0, source: &u };
        let w = solve_helmholtz(&prob).unwrap();
        assert_relative_eq!(integrate(&grid, &w).unwrap(), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn maximum_principle() {
        let grid = build_grid(3, 1.0, 40).unwrap();
        let u: Vec<f64> = (0..40).map(|i| if i % 7 == 0 { 5.0 } else { 0.0 }).collect();
        let prob = HelmholtzProblem { grid: &grid, absorption: 1.0, load_coeff: 1.0, source: &u };
        assert!(solve_helmholtz(&prob).unwrap().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn gradient_of_constant_and_cosine() {
        let grid = build_grid(3, 1.0, 200).unwrap();
        assert!(radial_gradient(&grid, &vec![3.0; 200]).unwrap().iter().all(|&g| g == 0.0));

        let v: Vec<f64> = grid.centers().iter().map(|r| (PI * r).cos()).collect();
        let g = radial_gradient(&grid, &v).unwrap();
        let err = grid.faces()[1..200]
            .iter()
            .zip(&g[1..200])
            .map(|(&r, gi)| (gi + PI * (PI * r).sin()).abs())
            .fold(0.0, f64::max);
        assert!(err < 2e-4, "{err}");
        assert_eq!(g[0], 0.0);
        assert_eq!(g[200], 0.0);
    }

    #[test]
    fn discrete_flux_identity_holds_at_every_face() {
        // r^{n-1} v_r = beta V - alpha U on faces, exactly in the discrete setting
        let grid = build_grid(3, 1.0, 64).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|&r| manufactured_load(r)).collect();
        let (alpha, beta) = (1.5, 0.5);
        let prob = HelmholtzProblem { grid: &grid, absorption: beta, load_coeff: alpha, source: &u };
        let v = solve_helmholtz(&prob).unwrap();
        let vr = radial_gradient(&grid, &v).unwrap();
        let big_u = to_mass_coordinate(&grid, &u).unwrap();
        let big_v = to_mass_coordinate(&grid, &v).unwrap();
        let scale = alpha * big_u.values.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        for f in 0..=64 {
            let lhs = grid.face_metric(f) * vr[f];
            let rhs = beta * big_v.values[f] - alpha * big_u.values[f];
            assert!((lhs - rhs).abs() <= 1e-12 * scale, "face {f}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn paired_solve_matches_separate_solves() {
        let grid = build_grid(4, 2.0, 40).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|r| 1.0 / (1.0 + r * r)).collect();
        let (a, b) = (HelmholtzSolver::new(&grid, 0.7).unwrap(), HelmholtzSolver::new(&grid, 3.0).unwrap());
        let (mut va, mut vb) = (vec![0.0; 40], vec![0.0; 40]);
        solve_pair((&a, 1.3, &mut va), (&b, 0.4, &mut vb), &u).unwrap();
        let (mut ea, mut eb) = (vec![0.0; 40], vec![0.0; 40]);
        a.solve_into(1.3, &u, &mut ea).unwrap();
        b.solve_into(0.4, &u, &mut eb).unwrap();
        assert_eq!(va, ea);
        assert_eq!(vb, eb);
    }

    #[test]
    fn rejects_bad_absorption() {
        let grid = build_grid(3, 1.0, 16).unwrap();
        assert!(matches!(
            HelmholtzSolver::new(&grid, 0.0),
            Err(EllipticError::NonPositiveAbsorption(_))
        ));
    }
}

//! Radial finite-volume grid on `[0, R]` for the ball `B_R(0)` in `R^n`.

use thiserror::Error;

pub const MIN_CELLS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid with {0} cells is too coarse (need at least {MIN_CELLS})")]
    TooCoarse(usize),
    #[error("invalid grid: {0}")]
    InvalidGeometry(String),
    #[error("field has length {got}, grid has {expected} cells")]
    LengthMismatch { expected: usize, got: usize },
}

/// Surface area of the unit sphere in `R^n` (`omega_{n-1}`).
pub fn unit_sphere_area(n: usize) -> f64 {
    use std::f64::consts::PI;
    // S(1) = 2, S(2) = 2 pi, S(k + 2) = 2 pi S(k) / k
    let (mut area, mut k) = if n % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while k < n {
        area *= 2.0 * PI / k as f64;
        k += 2;
    }
    area
}

/// Uniform radial grid with cell-centred unknowns.
///
/// Cell `i` spans `[i dr, (i+1) dr]`. Its weight `w_i = (r_out^n - r_in^n) / n`
/// is the radial part of its volume; the full volume is `omega_{n-1} w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    n: usize,
    radius: f64,
    dr: f64,
    centers: Vec<f64>,
    faces: Vec<f64>,
    volumes: Vec<f64>,
    sphere_area: f64,
}

impl RadialGrid {
    pub fn new(n: usize, radius: f64, cells: usize) -> Result<Self, GridError> {
        if cells < MIN_CELLS {
            return Err(GridError::TooCoarse(cells));
        }
        if n < 1 {
            return Err(GridError::InvalidGeometry(format!("dimension n = {n}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GridError::InvalidGeometry(format!("radius R = {radius}")));
        }
        let dr = radius / cells as f64;
        let centers = (0..cells).map(|i| (i as f64 + 0.5) * dr).collect();
        let mut faces: Vec<f64> = (0..=cells).map(|i| i as f64 * dr).collect();
        faces[cells] = radius;
        let nf = n as f64;
        let powers: Vec<f64> = faces.iter().map(|r| r.powi(n as i32)).collect();
        let volumes = powers.windows(2).map(|p| (p[1] - p[0]) / nf).collect();
        Ok(Self {
            n,
            radius,
            dr,
            centers,
            faces,
            volumes,
            sphere_area: unit_sphere_area(n),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn cells(&self) -> usize {
        self.centers.len()
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    /// Cell centres `r_i = (i + 1/2) dr`.
    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Face radii `0, dr, ..., R` (`cells + 1` entries).
    pub fn faces(&self) -> &[f64] {
        &self.faces
    }

    /// Radial cell weights `w_i`.
    pub fn volumes(&self) -> &[f64] {
        &self.volumes
    }

    pub fn sphere_area(&self) -> f64 {
        self.sphere_area
    }

    /// `|B_R| = omega_{n-1} R^n / n`.
    pub fn ball_volume(&self) -> f64 {
        self.sphere_area * self.radius.powi(self.n as i32) / self.n as f64
    }

    /// Geometric face factor `r_f^{n-1}` (zero at the origin for `n > 1`).
    pub fn face_metric(&self, face: usize) -> f64 {
        self.faces[face].powi(self.n as i32 - 1)
    }

    /// Mass-coordinate nodes `s = r^n` at the faces, starting with `s = 0`.
    pub fn mass_nodes(&self) -> Vec<f64> {
        self.faces.iter().map(|r| r.powi(self.n as i32)).collect()
    }

    pub fn check_len(&self, field: &[f64]) -> Result<(), GridError> {
        if field.len() != self.cells() {
            return Err(GridError::LengthMismatch { expected: self.cells(), got: field.len() });
        }
        Ok(())
    }
}

/// Builds a grid of `cells` cells on `[0, radius]` in dimension `n`.
pub fn build_grid(n: usize, radius: f64, cells: usize) -> Result<RadialGrid, GridError> {
    RadialGrid::new(n, radius, cells)
}

/// Full `n`-dimensional integral of a cell-centred field over the ball.
pub fn integrate(grid: &RadialGrid, field: &[f64]) -> Result<f64, GridError> {
    grid.check_len(field)?;
    Ok(grid.sphere_area * weighted_sum(grid, field))
}

pub(crate) fn weighted_sum(grid: &RadialGrid, field: &[f64]) -> f64 {
    grid.volumes.iter().zip(field).map(|(w, f)| w * f).sum()
}

/// A function sampled on the mass-coordinate nodes `s_k = r_{k+1/2}^n`,
/// with the leading node `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    pub s: Vec<f64>,
    pub values: Vec<f64>,
}

impl MassFunction {
    /// Value at the outer boundary `s = R^n`.
    pub fn total(&self) -> f64 {
        *self.values.last().expect("mass function has at least one node")
    }

    /// Piecewise-linear interpolation in `s`; clamps outside the node range.
    pub fn interpolate(&self, s: f64) -> f64 {
        let nodes = &self.s;
        if s <= nodes[0] {
            return self.values[0];
        }
        let last = nodes.len() - 1;
        if s >= nodes[last] {
            return self.values[last];
        }
        let k = nodes.partition_point(|&x| x <= s);
        let (s0, s1) = (nodes[k - 1], nodes[k]);
        let theta = (s - s0) / (s1 - s0);
        self.values[k - 1] + theta * (self.values[k] - self.values[k - 1])
    }
}

/// Mass accumulation `U(s_k) = sum_{i<=k} w_i u_i`, i.e. the integral of
/// `rho^{n-1} u` over `[0, s^{1/n}]`.
pub fn to_mass_coordinate(grid: &RadialGrid, field: &[f64]) -> Result<MassFunction, GridError> {
    grid.check_len(field)?;
    let mut values = Vec::with_capacity(field.len() + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for (w, f) in grid.volumes.iter().zip(field) {
        acc += w * f;
        values.push(acc);
    }
    Ok(MassFunction { s: grid.mass_nodes(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(unit_sphere_area(1), 2.0);
        assert_relative_eq!(unit_sphere_area(2), 2.0 * PI);
        assert_relative_eq!(unit_sphere_area(3), 4.0 * PI);
        assert_relative_eq!(unit_sphere_area(4), 2.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn weights_telescope() {
        let grid = build_grid(3, 1.0, 8).unwrap();
        let total: f64 = grid.volumes().iter().sum();
        assert_relative_eq!(total, 1.0 / 3.0, max_relative = 1e-13);
        assert_eq!(grid.faces()[0], 0.0);
        assert_eq!(*grid.faces().last().unwrap(), 1.0);
    }

    #[test]
    fn flat_measure_in_one_dimension() {
        let grid = build_grid(1, 2.0, 16).unwrap();
        for w in grid.volumes() {
            assert_relative_eq!(*w, 0.125, max_relative = 1e-15);
        }
    }

    #[test]
    fn too_coarse() {
        assert_eq!(build_grid(3, 1.0, 4).unwrap_err(), GridError::TooCoarse(4));
    }

    #[test]
    fn integrate_constants_and_linear() {
        let grid = build_grid(3, 1.0, 64).unwrap();
        let ones = vec![1.0; 64];
        assert_relative_eq!(integrate(&grid, &ones).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-13);
        assert_eq!(integrate(&grid, &vec![0.0; 64]).unwrap(), 0.0);

        // u(r) = r in 1-D: midpoint rule is exact for linear integrands
        let grid = build_grid(1, 1.0, 32).unwrap();
        let lin: Vec<f64> = grid.centers().to_vec();
        assert_relative_eq!(integrate(&grid, &lin).unwrap(), 1.0, max_relative = 1e-14);

        assert!(matches!(
            integrate(&grid, &[1.0; 3]),
            Err(GridError::LengthMismatch { expected: 32, got: 3 })
        ));
    }

    #[test]
    fn constant_field_accumulates_linearly_in_s() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let ubar = 2.5;
        let mf = to_mass_coordinate(&grid, &vec![ubar; 32]).unwrap();
        assert_eq!(mf.values[0], 0.0);
        for (s, v) in mf.s.iter().zip(&mf.values) {
            assert_relative_eq!(*v, ubar * s / 3.0, max_relative = 1e-13, epsilon = 1e-300);
        }
        assert_relative_eq!(mf.total(), ubar / 3.0, max_relative = 1e-13);

        let zero = to_mass_coordinate(&grid, &vec![0.0; 32]).unwrap();
        assert!(zero.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn interpolation_hits_nodes() {
        let grid = build_grid(2, 1.0, 8).unwrap();
        let mf = to_mass_coordinate(&grid, &vec![1.0; 8]).unwrap();
        for (s, v) in mf.s.iter().zip(&mf.values) {
            assert_relative_eq!(mf.interpolate(*s), *v, max_relative = 1e-14);
        }
        assert_relative_eq!(mf.interpolate(0.5), 0.25, max_relative = 1e-14);
    }
}

//! Trajectory measurements: norms, mass accumulation functions, the moment
//! functional and the term-by-term audit of its differential inequality.
//!
//! With `U, V, W` the accumulation functions in `s = r^n`, integrating the
//! density equation over `[0, s^{1/n}]` gives
//!
//! ```text
//! U_t = n^2 s^{2-2/n} (nU_s+1)^{m-1} U_ss
//!     + chi n U_s (nU_s+1)^{p-2} (alpha U - beta V)
//!     - xi  n U_s (nU_s+1)^{q-2} (gamma U - delta W)
//!     + lambda0 U - n^{kappa-1} mu1 int_0^s eta^{a/n} U_s^kappa d eta
//! ```
//!
//! and testing against `s^{-b} (s0 - s)` yields
//! `phi_t = J1 - J2 + J3 - J4 + J5 - J6 + lambda0 phi >= J1 - J2 + J3 - J4 + J5 - J6`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{upwind_value, State, StepControl};
use crate::grid::{to_mass_coordinate, weighted_sum, MassFunction, RadialGrid};
use crate::model::ModelParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("window s0 = {s0} outside (0, {max}]")]
    BadWindow { s0: f64, max: f64 },
    #[error("exponent b = {0} outside (0, 1)")]
    BadExponent(f64),
    #[error("empty trace")]
    EmptyTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormOptions {
    /// Exponent of the `L^sigma` norm recorded in the trace.
    pub sigma_norm: f64,
    /// Exponent of the profile monitor `max u r^sigma`.
    pub sigma_profile: f64,
}

/// One row of `timeseries.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormTrace {
    pub t: f64,
    pub linf_u: f64,
    pub min_u: f64,
    pub mass_u: f64,
    pub mass_v: f64,
    pub mass_w: f64,
    pub lsigma_u: f64,
    pub profile_sup: f64,
    pub dt: f64,
}

pub fn norms(state: &State, _params: &ModelParams, grid: &RadialGrid, opts: &NormOptions) -> NormTrace {
    let omega = grid.sphere_area();
    let (min_u, linf_u) = state
        .u
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &x| (lo.min(x), hi.max(x.abs())));
    let power_sum: f64 = grid
        .volumes()
        .iter()
        .zip(&state.u)
        .map(|(w, u)| w * u.abs().powf(opts.sigma_norm))
        .sum();
    NormTrace {
        t: state.t,
        linf_u,
        min_u,
        mass_u: omega * weighted_sum(grid, &state.u),
        mass_v: omega * weighted_sum(grid, &state.v),
        mass_w: omega * weighted_sum(grid, &state.w),
        lsigma_u: (omega * power_sum).powf(1.0 / opts.sigma_norm),
        profile_sup: profile_monitor(state, grid, opts.sigma_profile),
        dt: state.dt_last,
    }
}

/// Empirical profile constant `max_i u_i r_i^sigma`.
pub fn profile_monitor(state: &State, grid: &RadialGrid, sigma: f64) -> f64 {
    grid.centers()
        .iter()
        .zip(&state.u)
        .map(|(r, u)| u * r.powf(sigma))
        .fold(0.0, f64::max)
}

/// `(U, V, W)` on the mass-coordinate nodes.
pub fn mass_functions(state: &State, grid: &RadialGrid) -> (MassFunction, MassFunction, MassFunction) {
    let acc = |f: &[f64]| to_mass_coordinate(grid, f).expect("state fields match the grid");
    (acc(&state.u), acc(&state.v), acc(&state.w))
}

fn check_window(s0: f64, s_max: f64, b: f64) -> Result<(), DiagnosticsError> {
    if !(b > 0.0 && b < 1.0) {
        return Err(DiagnosticsError::BadExponent(b));
    }
    if !(s0 > 0.0 && s0 <= s_max * (1.0 + 1e-14)) {
        return Err(DiagnosticsError::BadWindow { s0, max: s_max });
    }
    Ok(())
}

/// Quadrature for `int_0^{s0} s^{-b} (s0 - s) h(s) ds` with `h` sampled on
/// the nodes and interpolated linearly between them.
///
/// Each subinterval is integrated exactly against the weight (product
/// integration), so the integrable `s^{-b}` singularity at the origin costs
/// no accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentQuadrature {
    pub s0: f64,
    pub b: f64,
    weights: Vec<f64>,
}

impl MomentQuadrature {
    pub fn new(nodes: &[f64], s0: f64, b: f64) -> Result<Self, DiagnosticsError> {
        let s_max = *nodes.last().expect("nonempty nodes");
        check_window(s0, s_max, b)?;
        let s0 = s0.min(s_max);
        let mut weights = vec![0.0; nodes.len()];
        for k in 0..nodes.len() - 1 {
            let (lo, hi) = (nodes[k], nodes[k + 1]);
            if lo >= s0 {
                break;
            }
            let top = hi.min(s0);
            // weights of h(lo) and h(top) on [lo, top]
            let (w_lo, w_top) = linear_moments(lo, top, s0, b);
            weights[k] += w_lo;
            if top == hi {
                weights[k + 1] += w_top;
            } else {
                // h(s0) interpolated between the bracketing nodes
                let theta = (top - lo) / (hi - lo);
                weights[k] += (1.0 - theta) * w_top;
                weights[k + 1] += theta * w_top;
            }
        }
        Ok(Self { s0, b, weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn apply(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(q, h)| q * h).sum()
    }
}

/// `int s^{e} ds` over `[lo, hi]`, stable when the ends are close.
fn power_moment(lo: f64, hi: f64, e: f64) -> f64 {
    let k = e + 1.0;
    if lo <= 0.0 {
        return hi.powf(k) / k;
    }
    -hi.powf(k) * (k * (lo / hi).ln()).exp_m1() / k
}

/// Integrals of `s^{-b}(s0-s)` against the two hat functions on `[lo, hi]`.
fn linear_moments(lo: f64, hi: f64, s0: f64, b: f64) -> (f64, f64) {
    let len = hi - lo;
    let m0 = power_moment(lo, hi, -b);
    let m1 = power_moment(lo, hi, 1.0 - b);
    let m2 = power_moment(lo, hi, 2.0 - b);
    // (s0 - s)(hi - s) and (s0 - s)(s - lo) expanded in powers of s
    let w_lo = (s0 * hi * m0 - (s0 + hi) * m1 + m2) / len;
    let w_hi = (-s0 * lo * m0 + (s0 + lo) * m1 - m2) / len;
    (w_lo, w_hi)
}

/// `phi(s0) = int_0^{s0} s^{-b} (s0 - s) U(s) ds`.
pub fn moment_phi(big_u: &MassFunction, s0: f64, b: f64) -> Result<f64, DiagnosticsError> {
    let quad = MomentQuadrature::new(&big_u.s, s0, b)?;
    Ok(quad.apply(&big_u.values))
}

/// `phi`, the six inequality terms and (once neighbouring frames are known)
/// the time derivative of `phi` at one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentDiagnostics {
    pub t: f64,
    pub b: f64,
    pub s0: f64,
    pub phi: f64,
    pub j: [f64; 6],
    pub dphi_dt: Option<f64>,
}

impl MomentDiagnostics {
    /// `J1 - J2 + J3 - J4 + J5 - J6`.
    pub fn signed_sum(&self) -> f64 {
        let j = &self.j;
        j[0] - j[1] + j[2] - j[3] + j[4] - j[5]
    }

    pub fn margin(&self) -> Option<f64> {
        self.dphi_dt.map(|d| d - self.signed_sum())
    }
}

/// Integrands of `J1..J6` (without the `s^{-b}(s0-s)` weight) on the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityIntegrands {
    pub s: Vec<f64>,
    pub big_u: Vec<f64>,
    pub terms: [Vec<f64>; 6],
}

/// Evaluates the integrands on the face nodes `s_f = r_f^n`.
///
/// `nU_s = u` is needed at faces. In the drift terms `J1, J2, J4, J5` it is
/// the cell value upwinded by the sign of the face speed
/// `-chi (u~+1)^{p-2} v_r + xi (u~+1)^{q-2} w_r`, which is the density the
/// stepper transports across that face. In `J3` the diffusivity uses the face
/// average `u~` and `U_ss` is the centred difference of the cell values
/// `U_s = u_i / n` between the `s`-midpoints of the adjacent cells. The
/// source integral uses the cell-centre value of `eta^{a/n}`.
pub fn inequality_integrands(state: &State, params: &ModelParams, grid: &RadialGrid) -> InequalityIntegrands {
    let n = grid.dim();
    let nf = n as f64;
    let cells = grid.cells();
    let dr = grid.dr();
    let s = grid.mass_nodes();
    let (big_u, big_v, big_w) = mass_functions(state, grid);
    let (u, v, w) = (&state.u, &state.v, &state.w);
    let mid: Vec<f64> = s.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    let mu1 = if params.source_enabled { params.mu1 } else { 0.0 };

    let mut terms: [Vec<f64>; 6] = std::array::from_fn(|_| vec![0.0; cells + 1]);
    let mut source_acc = 0.0;
    for f in 1..=cells {
        let i_in = f - 1;
        source_acc += grid.centers()[i_in].powf(params.a)
            * (u[i_in] / nf).powf(params.kappa)
            * (s[f] - s[f - 1]);
        terms[5][f] = nf.powf(params.kappa - 1.0) * mu1 * source_acc;
        if f == cells {
            // outer face: u_r = 0, and beta V = alpha U, delta W = gamma U make
            // J1/J4 and J2/J5 cancel pointwise; U_s from the last cell
            let us = u[cells - 1] / nf;
            let shifted = u[cells - 1] + 1.0;
            let attract = shifted.powf(params.p - 2.0);
            let repel = shifted.powf(params.q - 2.0);
            terms[0][f] = params.chi * params.alpha * nf * attract * big_u.values[f] * us;
            terms[1][f] = params.xi * params.gamma * nf * repel * big_u.values[f] * us;
            terms[3][f] = params.chi * params.beta * nf * attract * big_v.values[f] * us;
            terms[4][f] = params.xi * params.delta * nf * repel * big_w.values[f] * us;
            continue;
        }
        let (ul, ur) = (u[f - 1], u[f]);
        let avg = 0.5 * (ul + ur) + 1.0;
        let vr = (v[f] - v[f - 1]) / dr;
        let wr = (w[f] - w[f - 1]) / dr;
        let speed = -params.chi * avg.powf(params.p - 2.0) * vr + params.xi * avg.powf(params.q - 2.0) * wr;
        let up = upwind_value(speed, ul, ur);
        let us = up / nf;
        let attract = (up + 1.0).powf(params.p - 2.0);
        let repel = (up + 1.0).powf(params.q - 2.0);
        let uss = (ur - ul) / nf / (mid[f] - mid[f - 1]);
        let (uu, vv, ww) = (big_u.values[f], big_v.values[f], big_w.values[f]);
        terms[0][f] = params.chi * params.alpha * nf * attract * uu * us;
        terms[1][f] = params.xi * params.gamma * nf * repel * uu * us;
        terms[2][f] = nf * nf * s[f].powf(2.0 - 2.0 / nf) * avg.powf(params.m - 1.0) * uss;
        terms[3][f] = params.chi * params.beta * nf * attract * vv * us;
        terms[4][f] = params.xi * params.delta * nf * repel * ww * us;
    }
    InequalityIntegrands { s, big_u: big_u.values, terms }
}

/// `phi` and `J1..J6` at one frame; `dphi_dt` is left empty.
pub fn inequality_terms(
    state: &State,
    params: &ModelParams,
    grid: &RadialGrid,
    s0: f64,
    b: f64,
) -> Result<MomentDiagnostics, DiagnosticsError> {
    let quad = MomentQuadrature::new(&grid.mass_nodes(), s0, b)?;
    let integrands = inequality_integrands(state, params, grid);
    Ok(evaluate_terms(state.t, &quad, &integrands))
}

pub fn evaluate_terms(t: f64, quad: &MomentQuadrature, integrands: &InequalityIntegrands) -> MomentDiagnostics {
    MomentDiagnostics {
        t,
        b: quad.b,
        s0: quad.s0,
        phi: quad.apply(&integrands.big_u),
        j: std::array::from_fn(|k| quad.apply(&integrands.terms[k])),
        dphi_dt: None,
    }
}

/// Fills `dphi_dt` on interior frames by the three-point centred difference
/// on the (possibly nonuniform) frame times and returns only those frames.
pub fn with_time_derivatives(frames: &[MomentDiagnostics]) -> Vec<MomentDiagnostics> {
    frames
        .windows(3)
        .filter_map(|w| {
            let (a, c, e) = (&w[0], &w[1], &w[2]);
            let h1 = c.t - a.t;
            let h2 = e.t - c.t;
            if !(h1 > 0.0 && h2 > 0.0) {
                return None;
            }
            let d = -h2 / (h1 * (h1 + h2)) * a.phi
                + (h2 - h1) / (h1 * h2) * c.phi
                + h1 / (h2 * (h1 + h2)) * e.phi;
            Some(MomentDiagnostics { dphi_dt: Some(d), ..*c })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Bounded,
    Blowup,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Bounded => "BOUNDED",
            Outcome::Blowup => "BLOWUP",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a trajectory from its recorded frames.
///
/// * `BLOWUP`: some frame reached `u_max_detect`, or the run stopped before
///   the horizon (step collapse) while `||u||_inf` was still rising.
/// * `BOUNDED`: the horizon was reached and `||u||_inf` grew by less than
///   `plateau_rate` (relative) over the final `plateau_window` of the horizon.
/// * `INCONCLUSIVE`: anything else.
pub fn classify_outcome(trace: &[NormTrace], ctl: &StepControl) -> Result<Outcome, DiagnosticsError> {
    let last = trace.last().ok_or(DiagnosticsError::EmptyTrace)?;
    if trace.iter().any(|n| n.linf_u >= ctl.u_max_detect) {
        return Ok(Outcome::Blowup);
    }
    let horizon = ctl.t_horizon;
    if last.t < horizon * (1.0 - 1e-12) {
        let rising = trace.len() >= 2 && last.linf_u > trace[trace.len() - 2].linf_u;
        return Ok(if rising { Outcome::Blowup } else { Outcome::Inconclusive });
    }
    let window_start = horizon * (1.0 - ctl.plateau_window);
    let Some(first) = trace.iter().position(|n| n.t >= window_start) else {
        return Ok(Outcome::Inconclusive);
    };
    let base = trace[first].linf_u;
    let peak = trace[first..].iter().map(|n| n.linf_u).fold(base, f64::max);
    let growth = if base > 0.0 { (peak - base) / base } else { f64::INFINITY };
    Ok(if growth < ctl.plateau_rate { Outcome::Bounded } else { Outcome::Inconclusive })
}

/// Extrapolated blow-up time: least-squares line through `1/||u||_inf`
/// against `t` over the trailing frames within one decade of the final
/// value, evaluated at its zero.
pub fn estimate_blowup_time(trace: &[NormTrace]) -> Option<f64> {
    let last = trace.last()?.linf_u;
    let start = trace
        .iter()
        .rposition(|n| n.linf_u < last / 10.0)
        .map_or(0, |k| k + 1);
    let tail = &trace[start..];
    if tail.len() < 3 {
        return None;
    }
    let count = tail.len() as f64;
    let mean_t = tail.iter().map(|n| n.t).sum::<f64>() / count;
    let mean_y = tail.iter().map(|n| 1.0 / n.linf_u).sum::<f64>() / count;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for n in tail {
        let dt = n.t - mean_t;
        sxy += dt * (1.0 / n.linf_u - mean_y);
        sxx += dt * dt;
    }
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy / sxx;
    if !(slope < 0.0) {
        return None;
    }
    Some(mean_t - mean_y / slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn constant_state(grid: &RadialGrid, ubar: f64) -> State {
        let cells = grid.cells();
        State { t: 0.0, u: vec![ubar; cells], v: vec![ubar; cells], w: vec![ubar; cells], dt_last: 0.0, steps: 0 }
    }

    fn opts() -> NormOptions {
        NormOptions { sigma_norm: 2.0, sigma_profile: 6.0 }
    }

    fn frame(t: f64, linf: f64) -> NormTrace {
        NormTrace {
            t,
            linf_u: linf,
            min_u: 0.0,
            mass_u: 1.0,
            mass_v: 1.0,
            mass_w: 1.0,
            lsigma_u: 1.0,
            profile_sup: 1.0,
            dt: 1e-3,
        }
    }

    #[test]
    fn lsigma_of_constant() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let tr = norms(&constant_state(&grid, 2.0), &ModelParams::default(), &grid, &opts());
        assert_relative_eq!(tr.lsigma_u, 2.0 * (4.0 * PI / 3.0).sqrt(), max_relative = 1e-13);
        assert_relative_eq!(tr.mass_u, 2.0 * 4.0 * PI / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn norms_are_homogeneous_in_the_mass() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let a = norms(&constant_state(&grid, 0.25), &ModelParams::default(), &grid, &opts());
        let b = norms(&constant_state(&grid, 0.75), &ModelParams::default(), &grid, &opts());
        assert_relative_eq!(b.linf_u, 3.0 * a.linf_u, max_relative = 1e-14);
        assert_relative_eq!(b.lsigma_u, 3.0 * a.lsigma_u, max_relative = 1e-13);
        assert_relative_eq!(b.mass_u, 3.0 * a.mass_u, max_relative = 1e-13);
    }

    #[test]
    fn profile_monitor_of_constant() {
        let grid = build_grid(3, 1.0, 64).unwrap();
        let r_last = grid.centers()[63];
        let value = profile_monitor(&constant_state(&grid, 1.7), &grid, 6.0);
        assert_relative_eq!(value, 1.7 * r_last.powi(6), max_relative = 1e-14);
        assert_eq!(profile_monitor(&constant_state(&grid, 0.0), &grid, 6.0), 0.0);
    }

    #[test]
    fn phi_of_constant_density() {
        let grid = build_grid(3, 1.0, 64).unwrap();
        let (big_u, _, _) = mass_functions(&constant_state(&grid, 1.0), &grid);
        let phi = moment_phi(&big_u, 1.0, 0.5).unwrap();
        assert_relative_eq!(phi, 1.0 / 11.25, max_relative = 1e-12);

        // window ending between nodes
        let s0: f64 = 0.3;
        let exact = s0.powf(2.5) / 3.0 / (1.5 * 2.5);
        assert_relative_eq!(moment_phi(&big_u, s0, 0.5).unwrap(), exact, max_relative = 1e-12);
    }

    #[test]
    fn phi_is_linear_and_rejects_bad_arguments() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|r| (-5.0 * r).exp()).collect();
        let big = to_mass_coordinate(&grid, &u).unwrap();
        let doubled = MassFunction { s: big.s.clone(), values: big.values.iter().map(|x| 2.0 * x).collect() };
        let one = moment_phi(&big, 0.5, 0.3).unwrap();
        assert_relative_eq!(moment_phi(&doubled, 0.5, 0.3).unwrap(), 2.0 * one, max_relative = 1e-14);

        let zero = to_mass_coordinate(&grid, &vec![0.0; 32]).unwrap();
        assert_eq!(moment_phi(&zero, 0.5, 0.3).unwrap(), 0.0);
        assert!(matches!(moment_phi(&big, 1.5, 0.3), Err(DiagnosticsError::BadWindow { .. })));
        assert!(matches!(moment_phi(&big, 0.0, 0.3), Err(DiagnosticsError::BadWindow { .. })));
        assert!(matches!(moment_phi(&big, 0.5, 1.0), Err(DiagnosticsError::BadExponent(_))));
    }

    #[test]
    fn zero_density_gives_zero_terms() {
        let grid = build_grid(3, 1.0, 32).unwrap();
        let params = ModelParams { source_enabled: true, mu1: 1.0, kappa: 1.5, ..Default::default() };
        let d = inequality_terms(&constant_state(&grid, 0.0), &params, &grid, 0.1, 0.5).unwrap();
        assert_eq!(d.phi, 0.0);
        assert!(d.j.iter().all(|&j| j == 0.0));
    }

    #[test]
    fn terms_are_linear_in_their_coefficients() {
        let grid = build_grid(3, 1.0, 48).unwrap();
        let u: Vec<f64> = grid.centers().iter().map(|r| 1.0 + 4.0 * (-10.0 * r * r).exp()).collect();
        // gamma < alpha keeps the face speeds positive, so doubling chi
        // does not move any upwind choice
        let params = ModelParams { gamma: 0.5, source_enabled: true, mu1: 0.3, kappa: 1.2, ..Default::default() };
        let sim = crate::dynamics::Simulator::new(params, grid.clone(), StepControl::with_horizon(1.0)).unwrap();
        let state = sim.initial_state(&u).unwrap();
        let base = inequality_terms(&state, &params, &grid, 0.2, 0.5).unwrap();
        let doubled = ModelParams { chi: 2.0, ..params };
        let twice = inequality_terms(&state, &doubled, &grid, 0.2, 0.5).unwrap();
        assert_relative_eq!(twice.j[0], 2.0 * base.j[0], max_relative = 1e-14);
        assert_relative_eq!(twice.j[3], 2.0 * base.j[3], max_relative = 1e-14);
        for k in [1, 2, 4, 5] {
            assert_eq!(twice.j[k], base.j[k]);
        }
    }

    #[test]
    fn centred_difference_exact_for_quadratics() {
        let times = [0.0, 0.1, 0.25, 0.3, 0.7];
        let frames: Vec<MomentDiagnostics> = times
            .iter()
            .map(|&t| MomentDiagnostics { t, b: 0.5, s0: 0.1, phi: 3.0 * t * t - t + 2.0, j: [0.0; 6], dphi_dt: None })
            .collect();
        let out = with_time_derivatives(&frames);
        assert_eq!(out.len(), 3);
        for d in out {
            assert_relative_eq!(d.dphi_dt.unwrap(), 6.0 * d.t - 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn classification_rules() {
        let ctl = StepControl::with_horizon(10.0);
        assert_eq!(classify_outcome(&[], &ctl), Err(DiagnosticsError::EmptyTrace));

        let blowup = vec![frame(0.0, 10.0), frame(0.5, 2e6)];
        assert_eq!(classify_outcome(&blowup, &ctl).unwrap(), Outcome::Blowup);

        let flat: Vec<NormTrace> = (0..=100).map(|k| frame(k as f64 * 0.1, 3.0)).collect();
        assert_eq!(classify_outcome(&flat, &ctl).unwrap(), Outcome::Bounded);

        let growing: Vec<NormTrace> =
            (0..=100).map(|k| frame(k as f64 * 0.1, 3.0 * 1.1_f64.powf(k as f64 * 0.1))).collect();
        assert_eq!(classify_outcome(&growing, &ctl).unwrap(), Outcome::Inconclusive);

        let collapsed = vec![frame(0.0, 10.0), frame(0.2, 50.0), frame(0.21, 900.0)];
        assert_eq!(classify_outcome(&collapsed, &ctl).unwrap(), Outcome::Blowup);

        let stalled = vec![frame(0.0, 10.0), frame(0.2, 5.0)];
        assert_eq!(classify_outcome(&stalled, &ctl).unwrap(), Outcome::Inconclusive);
    }

    #[test]
    fn blowup_time_from_reciprocal_line() {
        // ||u|| = 1 / (2 (1 - t)): blow-up at t = 1
        let trace: Vec<NormTrace> = (0..40)
            .map(|k| {
                let t = 1.0 - 0.5_f64.powi(k / 4) * (1.0 - 0.1 * (k % 4) as f64);
                frame(t, 1.0 / (2.0 * (1.0 - t)))
            })
            .collect();
        let est = estimate_blowup_time(&trace).unwrap();
        assert_relative_eq!(est, 1.0, max_relative = 1e-9);
    }
}

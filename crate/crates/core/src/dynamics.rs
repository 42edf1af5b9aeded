//! Explicit conservative time stepping for the cell density.
//!
//! Face fluxes (positive = mass moving towards the origin):
//!
//! ```text
//! F_f = r_f^{n-1} [ D(u~) (u_R - u_L)/dr - chi S_p(u_up) v_r + xi S_q(u_up) w_r ],
//! S_e(u) = u (u+1)^{e-2},   D(u) = (u+1)^{m-1},
//! ```
//!
//! where `u~` is the arithmetic face average and `u_up` is taken from the
//! right cell when the face speed `c_f = -chi (u~+1)^{p-2} v_r + xi (u~+1)^{q-2} w_r`
//! is positive (mass flows left) and from the left cell otherwise. Boundary faces carry no flux, so the update
//! `w_i du_i/dt = F_{i+1/2} - F_{i-1/2} + w_i f(u_i)` conserves `sum w_i u_i`
//! exactly when `f = 0`.

use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{self, NormOptions, NormTrace, Outcome};
use crate::elliptic::{solve_pair, EllipticError, HelmholtzSolver};
use crate::grid::{weighted_sum, GridError, RadialGrid};
use crate::model::ModelParams;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("time step collapsed to {dt:e} at t = {t}")]
    StepCollapse { t: f64, dt: f64 },
    #[error("invalid initial data: {0}")]
    InvalidInitialData(String),
    #[error("invalid simulation parameters: {0}")]
    InvalidParams(String),
    #[error("invalid step control: {0}")]
    InvalidControl(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error("frame observer failed: {0}")]
    Io(#[from] io::Error),
}

/// Time-step and detector settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepControl {
    pub cfl_diff: f64,
    pub cfl_adv: f64,
    pub dt_min: f64,
    pub u_max_detect: f64,
    pub t_horizon: f64,
    /// Relative `L^inf` growth over the final window below which a run that
    /// reached the horizon counts as bounded.
    pub plateau_rate: f64,
    /// Fraction of the horizon inspected by the plateau test.
    pub plateau_window: f64,
    pub max_halvings: u32,
}

impl StepControl {
    pub fn with_horizon(t_horizon: f64) -> Self {
        Self {
            cfl_diff: 0.45,
            cfl_adv: 0.8,
            dt_min: 1e-12,
            u_max_detect: 1e6,
            t_horizon,
            plateau_rate: 0.01,
            plateau_window: 0.2,
            max_halvings: 20,
        }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let bad = |msg: String| Err(DynamicsError::InvalidControl(msg));
        if !(self.cfl_diff > 0.0 && self.cfl_diff <= 1.0) {
            return bad(format!("cfl_diff = {} not in (0, 1]", self.cfl_diff));
        }
        if !(self.cfl_adv > 0.0 && self.cfl_adv <= 1.0) {
            return bad(format!("cfl_adv = {} not in (0, 1]", self.cfl_adv));
        }
        if !(self.t_horizon > 0.0 && self.t_horizon.is_finite()) {
            return bad(format!("horizon T = {}", self.t_horizon));
        }
        if !(self.dt_min > 0.0 && self.dt_min < self.t_horizon) {
            return bad(format!("dt_min = {} must lie in (0, T)", self.dt_min));
        }
        if !(self.u_max_detect > 1.0) {
            return bad(format!("u_max_detect = {} must exceed 1", self.u_max_detect));
        }
        if !(self.plateau_rate > 0.0) {
            return bad(format!("plateau_rate = {}", self.plateau_rate));
        }
        if !(self.plateau_window > 0.0 && self.plateau_window <= 1.0) {
            return bad(format!("plateau_window = {} not in (0, 1]", self.plateau_window));
        }
        Ok(())
    }
}

/// Snapshot of `(u, v, w)` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
    /// Size of the last accepted step (0 before the first step).
    pub dt_last: f64,
    pub steps: u64,
}

/// Exponent of `(u+1)^e` with cheap special cases.
#[derive(Debug, Clone, Copy)]
enum Power {
    Zero,
    One,
    Half,
    NegHalf,
    Other(f64),
}

impl Power {
    fn new(e: f64) -> Self {
        match e {
            e if e == 0.0 => Power::Zero,
            e if e == 1.0 => Power::One,
            e if e == 0.5 => Power::Half,
            e if e == -0.5 => Power::NegHalf,
            e => Power::Other(e),
        }
    }

    #[inline]
    fn eval(self, base: f64) -> f64 {
        match self {
            Power::Zero => 1.0,
            Power::One => base,
            Power::Half => base.sqrt(),
            Power::NegHalf => 1.0 / base.sqrt(),
            Power::Other(e) => base.powf(e),
        }
    }
}

fn check_params(params: &ModelParams) -> Result<(), DynamicsError> {
    let finite = [
        params.m, params.p, params.q, params.chi, params.xi, params.alpha, params.beta,
        params.gamma, params.delta, params.lambda0, params.mu1, params.a, params.kappa,
    ];
    if finite.iter().any(|x| !x.is_finite()) {
        return Err(DynamicsError::InvalidParams("non-finite coefficient".into()));
    }
    // The decoupled limits chi = 0 or xi = 0 are admissible numerically.
    if params.chi < 0.0 || params.xi < 0.0 {
        return Err(DynamicsError::InvalidParams("chi and xi must be nonnegative".into()));
    }
    if params.lambda0 < 0.0 || params.mu1 < 0.0 || params.a < 0.0 {
        return Err(DynamicsError::InvalidParams("lambda0, mu1 and a must be nonnegative".into()));
    }
    if params.source_enabled && params.kappa < 1.0 {
        return Err(DynamicsError::InvalidParams(format!("kappa = {} < 1", params.kappa)));
    }
    Ok(())
}

/// Cell value transported across a face with drift speed `speed`.
///
/// A positive flux moves mass inward, so a positive speed takes the outer
/// (right) cell.
pub(crate) fn upwind_value(speed: f64, left: f64, right: f64) -> f64 {
    if speed > 0.0 {
        right
    } else {
        left
    }
}

/// Per-run stepping engine: owns the factored elliptic operators and scratch.
#[derive(Debug, Clone)]
pub struct Simulator {
    params: ModelParams,
    grid: RadialGrid,
    control: StepControl,
    v_solver: HelmholtzSolver,
    w_solver: HelmholtzSolver,
    metric: Vec<f64>,
    inv_volumes: Vec<f64>,
    /// `r_i^a` at cell centres.
    radial_weight: Vec<f64>,
    diffusion_power: Power,
    attraction_power: Power,
    repulsion_power: Power,
    fluxes: Vec<f64>,
    candidate: Vec<f64>,
    rejected_steps: u64,
}

impl Simulator {
    pub fn new(params: ModelParams, grid: RadialGrid, control: StepControl) -> Result<Self, DynamicsError> {
        check_params(&params)?;
        control.validate()?;
        let v_solver = HelmholtzSolver::new(&grid, params.beta)?;
        let w_solver = HelmholtzSolver::new(&grid, params.delta)?;
        let cells = grid.cells();
        let mut metric: Vec<f64> = (0..=cells).map(|f| grid.face_metric(f)).collect();
        metric[0] = 0.0;
        metric[cells] = 0.0;
        let radial_weight = grid.centers().iter().map(|r| r.powf(params.a)).collect();
        let inv_volumes = grid.volumes().iter().map(|w| 1.0 / w).collect();
        Ok(Self {
            diffusion_power: Power::new(params.m - 1.0),
            attraction_power: Power::new(params.p - 2.0),
            repulsion_power: Power::new(params.q - 2.0),
            params,
            grid,
            control,
            v_solver,
            w_solver,
            metric,
            inv_volumes,
            radial_weight,
            fluxes: vec![0.0; cells + 1],
            candidate: vec![0.0; cells],
            rejected_steps: 0,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn control(&self) -> &StepControl {
        &self.control
    }

    /// Number of trial steps rejected for producing negative densities.
    pub fn rejected_steps(&self) -> u64 {
        self.rejected_steps
    }

    /// Builds the `t = 0` state, solving for `v` and `w`.
    pub fn initial_state(&self, u0: &[f64]) -> Result<State, DynamicsError> {
        self.grid.check_len(u0)?;
        if u0.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(DynamicsError::InvalidInitialData(
                "u0 must be finite and nonnegative".into(),
            ));
        }
        if u0.iter().all(|&x| x == 0.0) {
            return Err(DynamicsError::InvalidInitialData("u0 vanishes identically".into()));
        }
        let cells = self.grid.cells();
        let mut state = State {
            t: 0.0,
            u: u0.to_vec(),
            v: vec![0.0; cells],
            w: vec![0.0; cells],
            dt_last: 0.0,
            steps: 0,
        };
        self.refresh_signals(&mut state)?;
        Ok(state)
    }

    fn refresh_signals(&self, state: &mut State) -> Result<(), DynamicsError> {
        solve_pair(
            (&self.v_solver, self.params.alpha, &mut state.v),
            (&self.w_solver, self.params.gamma, &mut state.w),
            &state.u,
        )?;
        Ok(())
    }

    /// Fills `self.fluxes`; returns `(max face drift speed, max D)`.
    fn assemble(&mut self, state: &State) -> (f64, f64) {
        let (u, v, w) = (&state.u[..], &state.v[..], &state.w[..]);
        let inv_dr = 1.0 / self.grid.dr();
        let cells = u.len();
        let (chi, xi) = (self.params.chi, self.params.xi);
        let (diffusion, attraction, repulsion) =
            (self.diffusion_power, self.attraction_power, self.repulsion_power);
        let (lo, hi) = u.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), &x| {
            (if x < lo { x } else { lo }, if x > hi { x } else { hi })
        });
        // (u+1)^{m-1} is monotone in u
        let max_diff = diffusion.eval(lo + 1.0).max(diffusion.eval(hi + 1.0));
        let mut max_speed = 0.0_f64;
        let fluxes = &mut self.fluxes[..=cells];
        let metric = &self.metric[..=cells];
        let (v, w) = (&v[..cells], &w[..cells]);
        fluxes[0] = 0.0;
        fluxes[cells] = 0.0;
        for f in 1..cells {
            let (ul, ur) = (u[f - 1], u[f]);
            let shifted = 0.5 * (ul + ur) + 1.0;
            let diffusive = diffusion.eval(shifted) * (ur - ul) * inv_dr;
            let vr = (v[f] - v[f - 1]) * inv_dr;
            let wr = (w[f] - w[f - 1]) * inv_dr;
            let mut speed = 0.0;
            if chi != 0.0 {
                speed -= chi * attraction.eval(shifted) * vr;
            }
            if xi != 0.0 {
                speed += xi * repulsion.eval(shifted) * wr;
            }
            max_speed = max_speed.max(speed.abs());
            let up = upwind_value(speed, ul, ur);
            let mut drift = 0.0;
            if chi != 0.0 {
                drift -= chi * up * attraction.eval(up + 1.0) * vr;
            }
            if xi != 0.0 {
                drift += xi * up * repulsion.eval(up + 1.0) * wr;
            }
            fluxes[f] = metric[f] * (diffusive + drift);
        }
        (max_speed, max_diff)
    }


    /// Stability-limited step from already assembled face speeds; ignores the horizon.
    fn physical_dt(&self, state: &State, max_speed: f64, max_diff: f64) -> f64 {
        let dr = self.grid.dr();
        let ctl = &self.control;
        let mut dt = ctl.cfl_diff * dr * dr / (2.0 * max_diff);
        if max_speed > 0.0 {
            dt = dt.min(ctl.cfl_adv * dr / max_speed);
        }
        if self.params.source_enabled {
            let u_max = state.u.iter().copied().fold(0.0, f64::max);
            let decay = self.params.mu1
                * self.grid.radius().powf(self.params.a)
                * u_max.powf(self.params.kappa - 1.0);
            let rate = self.params.lambda0.max(decay);
            if rate > 0.0 {
                dt = dt.min(0.1 / rate);
            }
        }
        dt
    }

    pub fn compute_fluxes(&mut self, state: &State) -> Vec<f64> {
        self.assemble(state);
        self.fluxes.clone()
    }

    pub fn stable_dt(&mut self, state: &State) -> Result<f64, DynamicsError> {
        let (speed, diff) = self.assemble(state);
        let dt = self.physical_dt(state, speed, diff);
        if !(dt >= self.control.dt_min) {
            return Err(DynamicsError::StepCollapse { t: state.t, dt });
        }
        Ok(dt.min((self.control.t_horizon - state.t).max(0.0)))
    }

    /// Advances `state` in place by one accepted step of size at most `dt_cap`.
    ///
    /// A trial producing a negative density is rejected and retried with half
    /// the step, at most `max_halvings` times.
    pub fn advance(&mut self, state: &mut State, dt_cap: f64) -> Result<f64, DynamicsError> {
        let (speed, diff) = self.assemble(state);
        let physical = self.physical_dt(state, speed, diff);
        if !(physical >= self.control.dt_min) {
            return Err(DynamicsError::StepCollapse { t: state.t, dt: physical });
        }
        let mut dt = physical.min(dt_cap);
        let cells = self.grid.cells();
        let src = self.params.source_enabled;
        let (lambda0, mu1, kappa) = (self.params.lambda0, self.params.mu1, self.params.kappa);
        let mut halvings = 0;
        loop {
            let mut ok = true;
            for i in 0..cells {
                let ui = state.u[i];
                let mut rate = (self.fluxes[i + 1] - self.fluxes[i]) * self.inv_volumes[i];
                if src {
                    rate += lambda0 * ui - mu1 * self.radial_weight[i] * ui.powf(kappa);
                }
                let next = ui + dt * rate;
                if !(next >= 0.0) || !next.is_finite() {
                    ok = false;
                    break;
                }
                self.candidate[i] = next;
            }
            if ok {
                break;
            }
            self.rejected_steps += 1;
            halvings += 1;
            dt *= 0.5;
            if halvings > self.control.max_halvings || dt < self.control.dt_min {
                return Err(DynamicsError::StepCollapse { t: state.t, dt });
            }
        }
        std::mem::swap(&mut state.u, &mut self.candidate);
        self.refresh_signals(state)?;
        state.t += dt;
        state.dt_last = dt;
        state.steps += 1;
        Ok(dt)
    }

    /// One step capped only by the horizon.
    pub fn step(&mut self, state: &State) -> Result<State, DynamicsError> {
        let mut next = state.clone();
        let cap = (self.control.t_horizon - state.t).max(0.0);
        self.advance(&mut next, cap)?;
        Ok(next)
    }

    /// Radial mass `sum w_i u_i` (without the sphere factor).
    pub fn radial_mass(&self, u: &[f64]) -> f64 {
        weighted_sum(&self.grid, u)
    }
}

/// Face fluxes of the current state (boundary faces are zero).
pub fn compute_fluxes(
    state: &State,
    params: &ModelParams,
    grid: &RadialGrid,
) -> Result<Vec<f64>, DynamicsError> {
    let mut sim = Simulator::new(*params, grid.clone(), StepControl::with_horizon(1.0))?;
    Ok(sim.compute_fluxes(state))
}

/// Largest admissible explicit step, clipped to the remaining horizon.
pub fn stable_dt(
    state: &State,
    params: &ModelParams,
    grid: &RadialGrid,
    ctl: &StepControl,
) -> Result<f64, DynamicsError> {
    Simulator::new(*params, grid.clone(), *ctl)?.stable_dt(state)
}

/// One forward-Euler step followed by the elliptic refresh.
pub fn step(
    state: &State,
    params: &ModelParams,
    grid: &RadialGrid,
    ctl: &StepControl,
) -> Result<State, DynamicsError> {
    Simulator::new(*params, grid.clone(), *ctl)?.step(state)
}

/// How often frames are recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputCadence {
    /// Uniform frames over the horizon (in addition to `t = 0`).
    pub frames: usize,
    /// Extra frame whenever `||u||_inf` exceeds this factor times its value at
    /// the previous frame; resolves the approach to blow-up.
    pub growth_factor: f64,
}

impl Default for OutputCadence {
    fn default() -> Self {
        Self { frames: 200, growth_factor: 1.25 }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: ModelParams,
    pub grid: RadialGrid,
    pub initial: Vec<f64>,
    pub control: StepControl,
    pub norms: NormOptions,
    pub cadence: OutputCadence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndReason {
    Horizon,
    Threshold,
    Collapse,
}

/// Receives every accepted step and every recorded frame of a run.
pub trait RunObserver {
    fn on_step(&mut self, _state: &State) {}

    fn on_frame(&mut self, _state: &State, _norms: &NormTrace) -> io::Result<()> {
        Ok(())
    }
}

impl RunObserver for () {}

/// Summary of one trajectory.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub outcome: Outcome,
    pub end: EndReason,
    pub t_detect: Option<f64>,
    /// Zero of the line fitted to `1/||u||_inf` over the last decade of growth.
    pub t_star_estimate: Option<f64>,
    pub trace: Vec<NormTrace>,
    pub final_state: State,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    /// Smallest density seen over all accepted steps.
    pub min_u_seen: f64,
}

fn emit(
    scenario: &Scenario,
    observer: &mut dyn RunObserver,
    state: &State,
    trace: &mut Vec<NormTrace>,
) -> Result<f64, DynamicsError> {
    let norms = diagnostics::norms(state, &scenario.params, &scenario.grid, &scenario.norms);
    observer.on_frame(state, &norms)?;
    let linf = norms.linf_u;
    trace.push(norms);
    Ok(linf)
}

pub fn run(scenario: &Scenario) -> Result<RunSummary, DynamicsError> {
    run_observed(scenario, &mut ())
}

pub fn run_observed(
    scenario: &Scenario,
    observer: &mut dyn RunObserver,
) -> Result<RunSummary, DynamicsError> {
    if scenario.cadence.frames == 0 || !(scenario.cadence.growth_factor > 1.0) {
        return Err(DynamicsError::InvalidControl(
            "output cadence needs frames >= 1 and growth_factor > 1".into(),
        ));
    }
    let mut sim = Simulator::new(scenario.params, scenario.grid.clone(), scenario.control)?;
    let mut state = sim.initial_state(&scenario.initial)?;
    let ctl = scenario.control;
    let horizon = ctl.t_horizon;
    let frame_dt = horizon / scenario.cadence.frames as f64;

    let mut trace = Vec::new();
    let mut last_frame_linf = emit(scenario, observer, &state, &mut trace)?;
    let mut min_u_seen = state.u.iter().copied().fold(f64::INFINITY, f64::min);
    let mut next_frame = 1usize;
    let end = loop {
        if state.t >= horizon {
            break EndReason::Horizon;
        }
        let target = if next_frame >= scenario.cadence.frames {
            horizon
        } else {
            next_frame as f64 * frame_dt
        };
        let cap = target - state.t;
        match sim.advance(&mut state, cap) {
            // land exactly on the frame time
            Ok(dt) if dt == cap => state.t = target,
            Ok(_) => {}
            Err(DynamicsError::StepCollapse { .. }) => {
                if trace.last().map(|n| n.t) != Some(state.t) {
                    emit(scenario, observer, &state, &mut trace)?;
                }
                break EndReason::Collapse;
            }
            Err(e) => return Err(e),
        }
        observer.on_step(&state);
        let (min_u, linf) = state
            .u
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        min_u_seen = min_u_seen.min(min_u);

        let on_schedule = state.t >= target;
        if on_schedule {
            next_frame += 1;
        }
        if linf >= ctl.u_max_detect {
            emit(scenario, observer, &state, &mut trace)?;
            break EndReason::Threshold;
        }
        if on_schedule || linf >= scenario.cadence.growth_factor * last_frame_linf {
            last_frame_linf = emit(scenario, observer, &state, &mut trace)?;
        }
    };

    let outcome = diagnostics::classify_outcome(&trace, &ctl)
        .expect("trace always holds the initial frame");
    let t_detect = (outcome == Outcome::Blowup).then(|| trace.last().map(|n| n.t)).flatten();
    let t_star_estimate = if outcome == Outcome::Blowup {
        diagnostics::estimate_blowup_time(&trace)
    } else {
        None
    };
    Ok(RunSummary {
        outcome,
        end,
        t_detect,
        t_star_estimate,
        trace,
        accepted_steps: state.steps,
        rejected_steps: sim.rejected_steps(),
        final_state: state,
        min_u_seen,
    })
}

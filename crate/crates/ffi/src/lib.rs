//! C ABI over the chemoradial solver.
//!
//! Simulations live behind an opaque `ChemoSimulation` handle created from a
//! TOML configuration string. Every fallible call returns a `ChemoStatus`; on
//! failure the message is available from `chemo_last_error` on the same
//! thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chemoradial::diagnostics::{NormTrace, Outcome};
use chemoradial::dynamics::{self, RunSummary, Scenario};
use chemoradial::model::{predict_regime, ConditionCase, Verdict};
use chemoradial::orchestration::{self, Config, ConfigError, RunConfig, RunError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChemoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownKey = 4,
    ValidationError = 5,
    RuntimeError = 6,
    /// The requested quantity does not exist (e.g. no run yet, no blow-up).
    NotAvailable = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChemoOutcome {
    NotRun = 0,
    Bounded = 1,
    Blowup = 2,
    Inconclusive = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChemoVerdict {
    BoundedThm31 = 0,
    BoundedThm33 = 1,
    BlowupThm41 = 2,
    BlowupThm44 = 3,
    NoTheoremApplies = 4,
}

/// One recorded frame; same columns as `timeseries.csv`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChemoFrame {
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

/// Regime prediction; absent values are NaN, `condition_case` is 0 when
/// none of C1-C3 holds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChemoPrediction {
    pub verdict: ChemoVerdict,
    pub condition_case: i32,
    pub kappa_bound: f64,
    pub sigma_exponent: f64,
}

/// Opaque simulation handle.
pub struct ChemoSimulation {
    config: RunConfig,
    scenario: Scenario,
    summary: Option<RunSummary>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn fail(status: ChemoStatus, message: impl Into<String>) -> ChemoStatus {
    set_error(message);
    status
}

fn guard(body: impl FnOnce() -> ChemoStatus) -> ChemoStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(ChemoStatus::Panic, "internal panic"))
}

fn config_status(err: &ConfigError) -> ChemoStatus {
    match err {
        ConfigError::ParseError { .. } => ChemoStatus::ParseError,
        ConfigError::UnknownKey(_) => ChemoStatus::UnknownKey,
        ConfigError::ValidationError(_) | ConfigError::Io { .. } => ChemoStatus::ValidationError,
    }
}

fn run_status(err: &RunError) -> ChemoStatus {
    match err {
        RunError::Config(e) => config_status(e),
        _ => ChemoStatus::RuntimeError,
    }
}

/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ChemoStatus> {
    if text.is_null() {
        return Err(fail(ChemoStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(ChemoStatus::InvalidUtf8, "string argument is not UTF-8"))
}

/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_run_config(text: *const c_char) -> Result<RunConfig, ChemoStatus> {
    let text = read_str(text)?;
    match orchestration::parse_config(text) {
        Ok(Config::Run(cfg)) => Ok(cfg),
        Ok(Config::Sweep(_)) => Err(fail(ChemoStatus::ValidationError, "sweep configurations are not accepted here")),
        Err(e) => Err(fail(config_status(&e), e.to_string())),
    }
}

/// Parses a run configuration (TOML text) and builds a simulation.
///
/// # Safety
/// `config_toml` must be a valid NUL-terminated string and `out` a valid
/// pointer. On success `*out` owns a handle to release with
/// `chemo_simulation_free`.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_new(
    config_toml: *const c_char,
    out: *mut *mut ChemoSimulation,
) -> ChemoStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChemoStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let config = match read_run_config(config_toml) {
            Ok(cfg) => cfg,
            Err(status) => return status,
        };
        match orchestration::prepare(&config) {
            Ok((scenario, _)) => {
                *out = Box::into_raw(Box::new(ChemoSimulation { config, scenario, summary: None }));
                ChemoStatus::Ok
            }
            Err(e) => fail(run_status(&e), e.to_string()),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `sim` must be null or a handle from `chemo_simulation_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_free(sim: *mut ChemoSimulation) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Runs the simulation to its horizon or to blow-up detection.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_run(sim: *mut ChemoSimulation) -> ChemoStatus {
    guard(|| {
        let Some(sim) = sim.as_mut() else {
            return fail(ChemoStatus::NullPointer, "null simulation");
        };
        match dynamics::run(&sim.scenario) {
            Ok(summary) => {
                sim.summary = Some(summary);
                ChemoStatus::Ok
            }
            Err(e) => fail(ChemoStatus::RuntimeError, e.to_string()),
        }
    })
}

/// Writes the classification of the last run (`NotRun` before any run).
///
/// # Safety
/// `sim` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_outcome(sim: *const ChemoSimulation, out: *mut ChemoOutcome) -> ChemoStatus {
    guard(|| {
        let (Some(sim), false) = (sim.as_ref(), out.is_null()) else {
            return fail(ChemoStatus::NullPointer, "null argument");
        };
        *out = match sim.summary.as_ref().map(|s| s.outcome) {
            None => ChemoOutcome::NotRun,
            Some(Outcome::Bounded) => ChemoOutcome::Bounded,
            Some(Outcome::Blowup) => ChemoOutcome::Blowup,
            Some(Outcome::Inconclusive) => ChemoOutcome::Inconclusive,
        };
        ChemoStatus::Ok
    })
}

/// Writes the detection time; `NotAvailable` unless the run blew up.
///
/// # Safety
/// `sim` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_t_detect(sim: *const ChemoSimulation, out: *mut f64) -> ChemoStatus {
    guard(|| {
        let (Some(sim), false) = (sim.as_ref(), out.is_null()) else {
            return fail(ChemoStatus::NullPointer, "null argument");
        };
        match sim.summary.as_ref().and_then(|s| s.t_detect) {
            Some(t) => {
                *out = t;
                ChemoStatus::Ok
            }
            None => fail(ChemoStatus::NotAvailable, "no blow-up detected"),
        }
    })
}

/// Number of recorded frames of the last run (0 before any run).
///
/// # Safety
/// `sim` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_frame_count(sim: *const ChemoSimulation) -> usize {
    sim.as_ref().and_then(|s| s.summary.as_ref()).map_or(0, |s| s.trace.len())
}

/// Copies frame `index` of the last run.
///
/// # Safety
/// `sim` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_frame(
    sim: *const ChemoSimulation,
    index: usize,
    out: *mut ChemoFrame,
) -> ChemoStatus {
    guard(|| {
        let (Some(sim), false) = (sim.as_ref(), out.is_null()) else {
            return fail(ChemoStatus::NullPointer, "null argument");
        };
        let Some(n) = sim.summary.as_ref().and_then(|s| s.trace.get(index)) else {
            return fail(ChemoStatus::NotAvailable, format!("no frame {index}"));
        };
        *out = frame(n);
        ChemoStatus::Ok
    })
}

fn frame(n: &NormTrace) -> ChemoFrame {
    ChemoFrame {
        t: n.t,
        linf_u: n.linf_u,
        min_u: n.min_u,
        mass_u: n.mass_u,
        mass_v: n.mass_v,
        mass_w: n.mass_w,
        lsigma_u: n.lsigma_u,
        profile_sup: n.profile_sup,
        dt: n.dt,
    }
}

/// Number of radial cells.
///
/// # Safety
/// `sim` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_cells(sim: *const ChemoSimulation) -> usize {
    sim.as_ref().map_or(0, |s| s.scenario.grid.cells())
}

/// Copies the density: the final state after a run, the initial data before.
///
/// # Safety
/// `sim` must be a live handle and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_density(
    sim: *const ChemoSimulation,
    buf: *mut f64,
    len: usize,
) -> ChemoStatus {
    guard(|| {
        let (Some(sim), false) = (sim.as_ref(), buf.is_null()) else {
            return fail(ChemoStatus::NullPointer, "null argument");
        };
        let u = sim.summary.as_ref().map_or(&sim.scenario.initial, |s| &s.final_state.u);
        if len < u.len() {
            return fail(ChemoStatus::BufferTooSmall, format!("need {} values", u.len()));
        }
        ptr::copy_nonoverlapping(u.as_ptr(), buf, u.len());
        ChemoStatus::Ok
    })
}

/// Regime prediction for the handle's parameters.
///
/// # Safety
/// `sim` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chemo_simulation_predict(sim: *const ChemoSimulation, out: *mut ChemoPrediction) -> ChemoStatus {
    guard(|| {
        let (Some(sim), false) = (sim.as_ref(), out.is_null()) else {
            return fail(ChemoStatus::NullPointer, "null argument");
        };
        *out = prediction(&sim.config);
        ChemoStatus::Ok
    })
}

/// Regime prediction straight from configuration text, without a handle.
///
/// # Safety
/// `config_toml` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn chemo_predict(config_toml: *const c_char, out: *mut ChemoPrediction) -> ChemoStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChemoStatus::NullPointer, "null output pointer");
        }
        match read_run_config(config_toml) {
            Ok(cfg) => {
                *out = prediction(&cfg);
                ChemoStatus::Ok
            }
            Err(status) => status,
        }
    })
}

fn prediction(cfg: &RunConfig) -> ChemoPrediction {
    let pred = predict_regime(&cfg.model, &cfg.domain, cfg.diag.eps0);
    ChemoPrediction {
        verdict: match pred.verdict {
            Verdict::BoundedThm31 => ChemoVerdict::BoundedThm31,
            Verdict::BoundedThm33 => ChemoVerdict::BoundedThm33,
            Verdict::BlowupThm41 => ChemoVerdict::BlowupThm41,
            Verdict::BlowupThm44 => ChemoVerdict::BlowupThm44,
            Verdict::NoTheoremApplies => ChemoVerdict::NoTheoremApplies,
        },
        condition_case: match pred.condition_case {
            None => 0,
            Some(ConditionCase::C1) => 1,
            Some(ConditionCase::C2) => 2,
            Some(ConditionCase::C3) => 3,
        },
        kappa_bound: pred.kappa_bound.unwrap_or(f64::NAN),
        sigma_exponent: pred.sigma_exponent.unwrap_or(f64::NAN),
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn chemo_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn chemo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

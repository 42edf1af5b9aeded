use std::ffi::{CStr, CString};
use std::ptr;

use chemoradial_ffi::*;

const BLOWUP: &str = r#"
[domain]
n = 3
R = 1.0

[grid]
N = 256

[model]
gamma = 0.5

[init]
kind = "singular"
sigma = 6.1
core = 0.3
M0 = 50.0
"#;

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

fn last_error() -> String {
    let p = chemo_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_sim(text: &str) -> (ChemoStatus, *mut ChemoSimulation) {
    let text = c(text);
    let mut sim = ptr::null_mut();
    let status = unsafe { chemo_simulation_new(text.as_ptr(), &mut sim) };
    (status, sim)
}

#[test]
fn blowup_run_through_handle() {
    let (status, sim) = new_sim(BLOWUP);
    assert_eq!(status, ChemoStatus::Ok);
    unsafe {
        let mut outcome = ChemoOutcome::Bounded;
        assert_eq!(chemo_simulation_outcome(sim, &mut outcome), ChemoStatus::Ok);
        assert_eq!(outcome, ChemoOutcome::NotRun);
        let mut t = 0.0;
        assert_eq!(chemo_simulation_t_detect(sim, &mut t), ChemoStatus::NotAvailable);

        assert_eq!(chemo_simulation_run(sim), ChemoStatus::Ok);
        assert_eq!(chemo_simulation_outcome(sim, &mut outcome), ChemoStatus::Ok);
        assert_eq!(outcome, ChemoOutcome::Blowup);
        assert_eq!(chemo_simulation_t_detect(sim, &mut t), ChemoStatus::Ok);
        assert!(t > 0.0 && t < 1.0, "{t}");

        let frames = chemo_simulation_frame_count(sim);
        assert!(frames >= 2);
        let mut first = std::mem::zeroed::<ChemoFrame>();
        assert_eq!(chemo_simulation_frame(sim, 0, &mut first), ChemoStatus::Ok);
        assert_eq!(first.t, 0.0);
        assert!((first.mass_u - 50.0).abs() < 1e-9 * 50.0);
        let mut frame = first;
        assert_eq!(chemo_simulation_frame(sim, frames, &mut frame), ChemoStatus::NotAvailable);

        let cells = chemo_simulation_cells(sim);
        assert_eq!(cells, 256);
        let mut small = vec![0.0; cells - 1];
        assert_eq!(chemo_simulation_density(sim, small.as_mut_ptr(), small.len()), ChemoStatus::BufferTooSmall);
        let mut u = vec![0.0; cells];
        assert_eq!(chemo_simulation_density(sim, u.as_mut_ptr(), u.len()), ChemoStatus::Ok);
        assert!(u.iter().all(|&x| x >= 0.0));
        assert!(u[0] > 1e3);

        let mut pred = std::mem::zeroed::<ChemoPrediction>();
        assert_eq!(chemo_simulation_predict(sim, &mut pred), ChemoStatus::Ok);
        assert_eq!(pred.verdict, ChemoVerdict::BlowupThm44);
        assert_eq!(pred.condition_case, 1);
        assert!((pred.kappa_bound - 7.0 / 6.0).abs() < 1e-12);
        chemo_simulation_free(sim);
    }
}

#[test]
fn prediction_without_handle() {
    let text = c(&BLOWUP.replace("gamma = 0.5", "gamma = 1.5"));
    let mut pred = unsafe { std::mem::zeroed::<ChemoPrediction>() };
    assert_eq!(unsafe { chemo_predict(text.as_ptr(), &mut pred) }, ChemoStatus::Ok);
    assert_eq!(pred.verdict, ChemoVerdict::BoundedThm33);
    assert!(pred.kappa_bound.is_nan());
}

#[test]
fn error_codes_and_messages() {
    let (status, sim) = new_sim(&format!("{BLOWUP}\n[extra]\nfoo = 1\n"));
    assert_eq!(status, ChemoStatus::UnknownKey);
    assert!(sim.is_null());
    assert!(last_error().contains("extra.foo"));

    let (status, _) = new_sim("[domain\nn = 3");
    assert_eq!(status, ChemoStatus::ParseError);

    let (status, _) = new_sim(&BLOWUP.replace("gamma = 0.5", "gamma = -1.0"));
    assert_eq!(status, ChemoStatus::ValidationError);
    assert!(!last_error().is_empty());

    let mut sim = ptr::null_mut();
    assert_eq!(unsafe { chemo_simulation_new(ptr::null(), &mut sim) }, ChemoStatus::NullPointer);
    let text = c(BLOWUP);
    assert_eq!(unsafe { chemo_simulation_new(text.as_ptr(), ptr::null_mut()) }, ChemoStatus::NullPointer);
    assert_eq!(unsafe { chemo_simulation_run(ptr::null_mut()) }, ChemoStatus::NullPointer);
    assert_eq!(unsafe { chemo_simulation_frame_count(ptr::null()) }, 0);
    unsafe { chemo_simulation_free(ptr::null_mut()) };

    let bad = [b'[', 0xff, 0xfe, 0];
    assert_eq!(unsafe { chemo_simulation_new(bad.as_ptr().cast(), &mut sim) }, ChemoStatus::InvalidUtf8);
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(chemo_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/chemoradial.h")).unwrap();
    for name in [
        "chemo_simulation_new",
        "chemo_simulation_run",
        "chemo_simulation_outcome",
        "chemo_simulation_t_detect",
        "chemo_simulation_frame",
        "chemo_simulation_density",
        "chemo_simulation_free",
        "chemo_predict",
        "chemo_last_error",
        "typedef struct ChemoSimulation ChemoSimulation",
        "CHEMO_STATUS_UNKNOWN_KEY = 4",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

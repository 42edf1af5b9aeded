//! Config ingestion, single runs and sweeps with their output files, and the
//! built-in verification suite used by the `verify` subcommand.

pub mod cli;
pub mod config;
pub mod output;
pub mod verify;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::diagnostics::{
    evaluate_terms, inequality_integrands, with_time_derivatives, DiagnosticsError, MomentDiagnostics,
    MomentQuadrature, NormTrace, Outcome,
};
use crate::dynamics::{self, DynamicsError, EndReason, RunObserver, RunSummary, Scenario, State};
use crate::grid::{build_grid, GridError, RadialGrid};
use crate::initdata::{make_initial, InitDataError, InitialReport};
use crate::model::{predict_regime, RegimePrediction, Verdict};

pub use config::{load_config, parse_config, Axis, AxisName, Config, ConfigError, RunConfig, SweepConfig};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Init(#[from] InitDataError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> RunError {
    let context = context.into();
    move |source| RunError::Io { context, source }
}

/// What a run leaves behind in `manifest.json` next to the configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    /// SHA-256 of the canonical JSON echo of the configuration.
    pub config_digest: String,
    pub classification: Outcome,
    #[serde(rename = "T_detect")]
    pub t_detect: Option<f64>,
    #[serde(rename = "T_star_estimate")]
    pub t_star_estimate: Option<f64>,
    pub end: EndReason,
    pub final_norms: NormTrace,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    pub min_u_seen: f64,
    pub frames: usize,
    pub prediction: RegimePrediction,
    pub initial: InitialReport,
    pub files: Vec<String>,
    pub wall_time_s: f64,
}

/// Grid, initial density and scenario for a configuration.
pub fn prepare(cfg: &RunConfig) -> Result<(Scenario, InitialReport), RunError> {
    cfg.validate()?;
    let grid = build_grid(cfg.domain.n, cfg.domain.radius, cfg.cells)?;
    let init = make_initial(&cfg.init, &grid)?;
    let scenario = Scenario {
        params: cfg.model,
        grid,
        initial: init.u0,
        control: cfg.control,
        norms: cfg.diag.norms,
        cadence: cfg.cadence,
    };
    Ok((scenario, init.report))
}

pub fn config_digest(cfg: &RunConfig) -> String {
    let canonical = cfg.to_json().to_string();
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Evaluates `phi` and `J1..J6` on a sequence of frames for several windows.
pub struct AuditAccumulator {
    params: crate::model::ModelParams,
    grid: RadialGrid,
    quads: Vec<MomentQuadrature>,
    series: Vec<Vec<MomentDiagnostics>>,
}

impl AuditAccumulator {
    pub fn new(cfg: &RunConfig, grid: &RadialGrid) -> Result<Self, DiagnosticsError> {
        let nodes = grid.mass_nodes();
        let quads = cfg
            .diag
            .s0
            .iter()
            .map(|&s0| MomentQuadrature::new(&nodes, s0, cfg.diag.b))
            .collect::<Result<Vec<_>, _>>()?;
        let series = vec![Vec::new(); quads.len()];
        Ok(Self { params: cfg.model, grid: grid.clone(), quads, series })
    }

    pub fn push(&mut self, state: &State) {
        if self.quads.is_empty() {
            return;
        }
        let integrands = inequality_integrands(state, &self.params, &self.grid);
        for (quad, series) in self.quads.iter().zip(&mut self.series) {
            series.push(evaluate_terms(state.t, quad, &integrands));
        }
    }

    /// Interior frames with `dphi_dt` filled, grouped by window then time.
    pub fn finish(self) -> Vec<MomentDiagnostics> {
        self.series.iter().flat_map(|s| with_time_derivatives(s)).collect()
    }
}

struct FrameWriter {
    timeseries: BufWriter<File>,
    snapshots: Option<BufWriter<File>>,
    audit: AuditAccumulator,
    radii: Vec<f64>,
}

impl RunObserver for FrameWriter {
    fn on_frame(&mut self, state: &State, norms: &NormTrace) -> io::Result<()> {
        output::write_norm_row(&mut self.timeseries, norms)?;
        if let Some(snap) = &mut self.snapshots {
            output::write_snapshot(snap, &self.radii, state)?;
        }
        self.audit.push(state);
        Ok(())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, RunError> {
    let file = File::create(path).map_err(io_err(format!("cannot create {}", path.display())))?;
    Ok(BufWriter::new(file))
}

/// Runs one configuration and writes `timeseries.csv`, `snapshots.jsonl`,
/// `audit.csv` and `manifest.json` into `out_dir`.
pub fn execute_run(cfg: &RunConfig, out_dir: &Path) -> Result<RunRecord, RunError> {
    let started = Instant::now();
    let (scenario, initial) = prepare(cfg)?;
    fs::create_dir_all(out_dir).map_err(io_err(format!("cannot create {}", out_dir.display())))?;

    let mut files = vec!["timeseries.csv".to_string()];
    let mut timeseries = create(&out_dir.join("timeseries.csv"))?;
    writeln!(timeseries, "{}", output::TIMESERIES_HEADER).map_err(io_err("timeseries.csv"))?;
    let snapshots = if cfg.snapshots {
        files.push("snapshots.jsonl".into());
        Some(create(&out_dir.join("snapshots.jsonl"))?)
    } else {
        None
    };
    let mut writer = FrameWriter {
        timeseries,
        snapshots,
        audit: AuditAccumulator::new(cfg, &scenario.grid)?,
        radii: scenario.grid.centers().to_vec(),
    };
    let summary = dynamics::run_observed(&scenario, &mut writer)?;
    writer.timeseries.flush().map_err(io_err("timeseries.csv"))?;
    if let Some(snap) = &mut writer.snapshots {
        snap.flush().map_err(io_err("snapshots.jsonl"))?;
    }
    if !cfg.diag.s0.is_empty() {
        files.push("audit.csv".into());
        let rows = writer.audit.finish();
        let mut audit = create(&out_dir.join("audit.csv"))?;
        output::write_audit(&mut audit, &rows)
            .and_then(|_| audit.flush())
            .map_err(io_err("audit.csv"))?;
    }
    files.push("manifest.json".into());

    let record = make_record(cfg, &summary, initial, files, started.elapsed().as_secs_f64());
    let manifest = serde_json::json!({ "config": cfg.to_json(), "record": record });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    fs::write(out_dir.join("manifest.json"), text + "\n").map_err(io_err("manifest.json"))?;
    Ok(record)
}

fn make_record(
    cfg: &RunConfig,
    summary: &RunSummary,
    initial: InitialReport,
    files: Vec<String>,
    wall_time_s: f64,
) -> RunRecord {
    RunRecord {
        config_digest: config_digest(cfg),
        classification: summary.outcome,
        t_detect: summary.t_detect,
        t_star_estimate: summary.t_star_estimate,
        end: summary.end,
        final_norms: *summary.trace.last().expect("trace holds the initial frame"),
        accepted_steps: summary.accepted_steps,
        rejected_steps: summary.rejected_steps,
        min_u_seen: summary.min_u_seen,
        frames: summary.trace.len(),
        prediction: predict_regime(&cfg.model, &cfg.domain, cfg.diag.eps0),
        initial,
        files,
        wall_time_s,
    }
}

/// Recomputes `audit.csv` in a run directory from `manifest.json` and
/// `snapshots.jsonl`; returns the rows.
pub fn audit_dir(dir: &Path) -> Result<Vec<MomentDiagnostics>, RunError> {
    let cfg = match load_config(&dir.join("manifest.json"))? {
        Config::Run(cfg) => cfg,
        Config::Sweep(_) => {
            return Err(ConfigError::ValidationError("manifest holds a sweep configuration".into()).into())
        }
    };
    let path = dir.join("snapshots.jsonl");
    let file = File::open(&path).map_err(io_err(format!("cannot open {}", path.display())))?;
    let snaps = output::read_snapshots(BufReader::new(file)).map_err(io_err("snapshots.jsonl"))?;
    let grid = build_grid(cfg.domain.n, cfg.domain.radius, cfg.cells)?;
    let mut audit = AuditAccumulator::new(&cfg, &grid)?;
    for snap in snaps {
        for field in [&snap.u, &snap.v, &snap.w] {
            grid.check_len(field)?;
        }
        let state = State { t: snap.t, u: snap.u, v: snap.v, w: snap.w, dt_last: 0.0, steps: 0 };
        audit.push(&state);
    }
    let rows = audit.finish();
    let mut out = create(&dir.join("audit.csv"))?;
    output::write_audit(&mut out, &rows).and_then(|_| out.flush()).map_err(io_err("audit.csv"))?;
    Ok(rows)
}

/// One line of `regime_map.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub predicted: Verdict,
    /// `BOUNDED`, `BLOWUP`, `INCONCLUSIVE` or `ERROR`.
    pub observed: String,
    pub t_detect: Option<f64>,
    pub agreement: Option<bool>,
}

impl SweepRow {
    fn csv(&self) -> String {
        let opt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), output::fmt17);
        let agreement = match self.agreement {
            Some(true) => "true",
            Some(false) => "false",
            None => "NA",
        };
        format!(
            "{},{},{},{},{},{}",
            output::fmt17(self.axis1),
            opt(self.axis2),
            self.predicted,
            self.observed,
            opt(self.t_detect),
            agreement
        )
    }
}

/// `Some(predicted family == observed)` when both sides are definite.
pub fn agreement(predicted: Verdict, observed: &str) -> Option<bool> {
    let observed_blowup = match observed {
        "BLOWUP" => true,
        "BOUNDED" => false,
        _ => return None,
    };
    if predicted.is_blowup() {
        Some(observed_blowup)
    } else if predicted.is_bounded() {
        Some(!observed_blowup)
    } else {
        None
    }
}

/// Sweep points in axes-major order.
pub fn sweep_points(cfg: &SweepConfig) -> Vec<(f64, Option<f64>)> {
    let first = cfg.axes[0].values();
    match cfg.axes.get(1) {
        None => first.into_iter().map(|a| (a, None)).collect(),
        Some(axis) => {
            let second = axis.values();
            first.iter().flat_map(|&a| second.iter().map(move |&b| (a, Some(b)))).collect()
        }
    }
}

/// Runs every sweep point (up to `jobs` at a time) into `out_dir/run_NNNN`
/// and writes `regime_map.csv`. A failing point is recorded as `ERROR`.
pub fn execute_sweep(cfg: &SweepConfig, out_dir: &Path) -> Result<Vec<SweepRow>, RunError> {
    fs::create_dir_all(out_dir).map_err(io_err(format!("cannot create {}", out_dir.display())))?;
    let points = sweep_points(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| RunError::Io { context: "thread pool".into(), source: io::Error::other(e) })?;
    let rows: Vec<SweepRow> = pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let mut point = cfg.axes[0].name.apply(&cfg.base, a);
                if let (Some(axis), Some(b)) = (cfg.axes.get(1), b) {
                    point = axis.name.apply(&point, b);
                }
                let predicted = predict_regime(&point.model, &point.domain, point.diag.eps0).verdict;
                let dir: PathBuf = out_dir.join(format!("run_{k:04}"));
                let (observed, t_detect) = match execute_run(&point, &dir) {
                    Ok(rec) => (rec.classification.as_str().to_string(), rec.t_detect),
                    Err(_) => ("ERROR".to_string(), None),
                };
                SweepRow { axis1: a, axis2: b, predicted, agreement: agreement(predicted, &observed), observed, t_detect }
            })
            .collect()
    });
    let mut out = create(&out_dir.join("regime_map.csv"))?;
    let mut text = String::from(output::REGIME_HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&row.csv());
        text.push('\n');
    }
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err("regime_map.csv"))?;
    Ok(rows)
}

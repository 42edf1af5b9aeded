//! Flat dotted-key configuration (`grid.N = 256`, `init.kind = "singular"`).
//!
//! TOML files and the `config` object of a run manifest go through the same
//! key table, so a manifest reloads to exactly the configuration it echoes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value as Json};
use thiserror::Error;

use crate::diagnostics::NormOptions;
use crate::dynamics::{OutputCadence, StepControl};
use crate::initdata::{InitialDataSpec, InitialKind};
use crate::model::{validate_params, DomainSpec, ModelError, ModelParams, DEFAULT_EPS0};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid configuration: {0}")]
    ValidationError(String),
}

impl From<ModelError> for ConfigError {
    fn from(e: ModelError) -> Self {
        ConfigError::ValidationError(e.to_string())
    }
}

/// A leaf value of the key table.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    List(Vec<f64>),
}

impl Scalar {
    fn to_json(&self) -> Json {
        match self {
            Scalar::Int(i) => Json::from(*i),
            Scalar::Float(x) => Json::from(*x),
            Scalar::Bool(b) => Json::from(*b),
            Scalar::Str(s) => Json::from(s.as_str()),
            Scalar::List(xs) => Json::from(xs.clone()),
        }
    }
}

/// Moment-audit and norm options.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagOptions {
    pub norms: NormOptions,
    /// Exponent `b` of the moment weight `s^{-b}`.
    pub b: f64,
    /// Audit windows; empty disables `audit.csv`.
    pub s0: Vec<f64>,
    /// Offset used when reporting the profile exponent of a prediction.
    pub eps0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub domain: DomainSpec,
    pub cells: usize,
    pub model: ModelParams,
    pub init: InitialDataSpec,
    pub control: StepControl,
    pub diag: DiagOptions,
    pub cadence: OutputCadence,
    pub snapshots: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisName {
    P,
    Q,
    Chi,
    Xi,
    Alpha,
    Gamma,
    M,
    Kappa,
    M0,
}

impl AxisName {
    const ALL: [(AxisName, &'static str); 9] = [
        (AxisName::P, "p"),
        (AxisName::Q, "q"),
        (AxisName::Chi, "chi"),
        (AxisName::Xi, "xi"),
        (AxisName::Alpha, "alpha"),
        (AxisName::Gamma, "gamma"),
        (AxisName::M, "m"),
        (AxisName::Kappa, "kappa"),
        (AxisName::M0, "M0"),
    ];

    pub fn as_str(&self) -> &'static str {
        AxisName::ALL.iter().find(|(a, _)| a == self).map(|(_, s)| *s).unwrap()
    }

    pub fn parse(name: &str) -> Option<AxisName> {
        AxisName::ALL.iter().find(|(_, s)| *s == name).map(|(a, _)| *a)
    }

    /// Copy of `cfg` with this parameter set to `value`.
    pub fn apply(&self, cfg: &RunConfig, value: f64) -> RunConfig {
        let mut out = cfg.clone();
        let model = &mut out.model;
        match self {
            AxisName::P => model.p = value,
            AxisName::Q => model.q = value,
            AxisName::Chi => model.chi = value,
            AxisName::Xi => model.xi = value,
            AxisName::Alpha => model.alpha = value,
            AxisName::Gamma => model.gamma = value,
            AxisName::M => model.m = value,
            AxisName::Kappa => model.kappa = value,
            AxisName::M0 => out.init.m0 = value,
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    /// `count` equally spaced values from `min` to `max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == self.count - 1 {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub base: RunConfig,
    pub axes: Vec<Axis>,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Run(RunConfig),
    Sweep(SweepConfig),
}

/// Reads a `.toml` config, or the configuration echoed in a `.json` manifest.
pub fn load_config(path: &Path) -> Result<Config, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_manifest(&text)
    } else {
        parse_config(&text)
    }
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        ConfigError::ParseError { line, column, message: e.message().to_string() }
    })?;
    let mut keys = BTreeMap::new();
    flatten_toml("", &table, &mut keys)?;
    from_keys(keys)
}

/// Parses the `config` object of a manifest written by `execute_run`.
pub fn parse_manifest(text: &str) -> Result<Config, ConfigError> {
    let json: Json = serde_json::from_str(text).map_err(|e| ConfigError::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Some(Json::Object(map)) = json.get("config") else {
        return Err(ConfigError::ValidationError("manifest has no `config` object".into()));
    };
    let mut keys = BTreeMap::new();
    for (key, value) in map {
        keys.insert(key.clone(), scalar_from_json(key, value)?);
    }
    from_keys(keys)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |k| k + 1) + 1;
    (line, column)
}

fn flatten_toml(
    prefix: &str,
    table: &toml::Table,
    out: &mut BTreeMap<String, Scalar>,
) -> Result<(), ConfigError> {
    for (key, value) in table {
        let full = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
        let scalar = match value {
            toml::Value::Table(inner) => {
                flatten_toml(&full, inner, out)?;
                continue;
            }
            toml::Value::Integer(i) => Scalar::Int(*i),
            toml::Value::Float(x) => Scalar::Float(*x),
            toml::Value::Boolean(b) => Scalar::Bool(*b),
            toml::Value::String(s) => Scalar::Str(s.clone()),
            toml::Value::Array(items) => {
                let mut xs = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        toml::Value::Float(x) => xs.push(*x),
                        toml::Value::Integer(i) => xs.push(*i as f64),
                        _ => return Err(type_error(&full, "a list of numbers")),
                    }
                }
                Scalar::List(xs)
            }
            toml::Value::Datetime(_) => return Err(type_error(&full, "a number, string or boolean")),
        };
        out.insert(full, scalar);
    }
    Ok(())
}

fn scalar_from_json(key: &str, value: &Json) -> Result<Scalar, ConfigError> {
    Ok(match value {
        Json::Bool(b) => Scalar::Bool(*b),
        Json::String(s) => Scalar::Str(s.clone()),
        Json::Number(num) => match num.as_i64() {
            Some(i) if !num.is_f64() => Scalar::Int(i),
            _ => Scalar::Float(num.as_f64().ok_or_else(|| type_error(key, "a number"))?),
        },
        Json::Array(items) => Scalar::List(
            items
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| type_error(key, "a list of numbers")))
                .collect::<Result<_, _>>()?,
        ),
        _ => return Err(type_error(key, "a number, string, boolean or list")),
    })
}

fn type_error(key: &str, expected: &str) -> ConfigError {
    ConfigError::ValidationError(format!("`{key}` must be {expected}"))
}

/// Consumes keys from the table; whatever is left over is unknown.
struct Keys(BTreeMap<String, Scalar>);

impl Keys {
    fn float(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.opt_float(key)?.unwrap_or(default))
    }

    fn opt_float(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Scalar::Float(x)) => Ok(Some(x)),
            Some(Scalar::Int(i)) => Ok(Some(i as f64)),
            Some(_) => Err(type_error(key, "a number")),
        }
    }

    fn required_float(&mut self, key: &str) -> Result<f64, ConfigError> {
        self.opt_float(key)?.ok_or_else(|| missing(key))
    }

    fn opt_count(&mut self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Scalar::Int(i)) if i >= 0 => Ok(Some(i as usize)),
            Some(_) => Err(type_error(key, "a nonnegative integer")),
        }
    }

    fn count(&mut self, key: &str, default: usize) -> Result<usize, ConfigError> {
        Ok(self.opt_count(key)?.unwrap_or(default))
    }

    fn required_count(&mut self, key: &str) -> Result<usize, ConfigError> {
        self.opt_count(key)?.ok_or_else(|| missing(key))
    }

    fn flag(&mut self, key: &str, default: bool) -> Result<bool, ConfigError> {
        match self.0.remove(key) {
            None => Ok(default),
            Some(Scalar::Bool(b)) => Ok(b),
            Some(_) => Err(type_error(key, "a boolean")),
        }
    }

    fn opt_text(&mut self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Scalar::Str(s)) => Ok(Some(s)),
            Some(_) => Err(type_error(key, "a string")),
        }
    }

    fn opt_list(&mut self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Scalar::List(xs)) => Ok(Some(xs)),
            Some(Scalar::Float(x)) => Ok(Some(vec![x])),
            Some(Scalar::Int(i)) => Ok(Some(vec![i as f64])),
            Some(_) => Err(type_error(key, "a list of numbers")),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.0.into_keys().next() {
            Some(key) => Err(ConfigError::UnknownKey(key)),
            None => Ok(()),
        }
    }
}

fn missing(key: &str) -> ConfigError {
    ConfigError::ValidationError(format!("missing required key `{key}`"))
}

fn from_keys(table: BTreeMap<String, Scalar>) -> Result<Config, ConfigError> {
    let is_sweep = table.keys().any(|k| k.starts_with("sweep."));
    let mut keys = Keys(table);
    let base = read_run(&mut keys)?;
    if !is_sweep {
        keys.finish()?;
        return Ok(Config::Run(base));
    }
    let jobs = keys.count("sweep.jobs", 1)?;
    if jobs == 0 {
        return Err(ConfigError::ValidationError("sweep.jobs must be at least 1".into()));
    }
    let mut axes = Vec::new();
    for label in ["axis1", "axis2"] {
        let name = keys.opt_text(&format!("sweep.{label}.name"))?;
        let Some(name) = name else { continue };
        let axis_name = AxisName::parse(&name).ok_or_else(|| {
            ConfigError::ValidationError(format!("sweep.{label}.name = {name:?} is not a sweepable parameter"))
        })?;
        let axis = Axis {
            name: axis_name,
            min: keys.required_float(&format!("sweep.{label}.min"))?,
            max: keys.required_float(&format!("sweep.{label}.max"))?,
            count: keys.required_count(&format!("sweep.{label}.count"))?,
        };
        if axis.count < 2 {
            return Err(ConfigError::ValidationError(format!("sweep.{label}.count must be at least 2")));
        }
        if !(axis.min.is_finite() && axis.max.is_finite()) {
            return Err(ConfigError::ValidationError(format!("sweep.{label} bounds must be finite")));
        }
        axes.push(axis);
    }
    keys.finish()?;
    if axes.is_empty() {
        return Err(ConfigError::ValidationError("sweep needs sweep.axis1".into()));
    }
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(ConfigError::ValidationError("sweep axes must differ".into()));
    }
    Ok(Config::Sweep(SweepConfig { base, axes, jobs }))
}

fn read_run(keys: &mut Keys) -> Result<RunConfig, ConfigError> {
    let n = keys.required_count("domain.n")?;
    let radius = keys.required_float("domain.R")?;
    let domain = DomainSpec::new(n, radius);
    let cells = keys.required_count("grid.N")?;

    let d = ModelParams::default();
    let source_enabled = keys.flag("model.source", false)?;
    let model = ModelParams {
        m: keys.float("model.m", d.m)?,
        p: keys.float("model.p", d.p)?,
        q: keys.float("model.q", d.q)?,
        chi: keys.float("model.chi", d.chi)?,
        xi: keys.float("model.xi", d.xi)?,
        alpha: keys.float("model.alpha", d.alpha)?,
        beta: keys.float("model.beta", d.beta)?,
        gamma: keys.float("model.gamma", d.gamma)?,
        delta: keys.float("model.delta", d.delta)?,
        lambda0: keys.float("model.lambda0", d.lambda0)?,
        mu1: keys.float("model.mu1", d.mu1)?,
        a: keys.float("model.a", d.a)?,
        kappa: keys.float("model.kappa", d.kappa)?,
        source_enabled,
    };

    let kind = match keys.opt_text("init.kind")?.as_deref() {
        None | Some("constant") => InitialKind::Constant,
        Some("singular") => InitialKind::Singular,
        Some("gaussian") => InitialKind::Gaussian,
        Some(other) => {
            return Err(ConfigError::ValidationError(format!(
                "init.kind = {other:?} (expected \"singular\", \"gaussian\" or \"constant\")"
            )))
        }
    };
    let init = InitialDataSpec {
        kind,
        l: keys.float("init.L", f64::INFINITY)?,
        sigma: keys.float("init.sigma", 1.0)?,
        core_radius: keys.opt_float("init.core")?,
        m0: keys.float("init.M0", 1.0)?,
        r1: keys.opt_float("init.r1")?,
        m1_check: keys.opt_float("init.M1")?,
    };

    let dc = StepControl::with_horizon(keys.float("control.T", 20.0)?);
    let control = StepControl {
        cfl_diff: keys.float("control.cfl_diff", dc.cfl_diff)?,
        cfl_adv: keys.float("control.cfl_adv", dc.cfl_adv)?,
        dt_min: keys.float("control.dt_min", dc.dt_min)?,
        u_max_detect: keys.float("control.u_max_detect", dc.u_max_detect)?,
        plateau_rate: keys.float("control.plateau_rate", dc.plateau_rate)?,
        plateau_window: keys.float("control.plateau_window", dc.plateau_window)?,
        max_halvings: keys.count("control.max_halvings", dc.max_halvings as usize)? as u32,
        ..dc
    };

    let diag = DiagOptions {
        norms: NormOptions {
            sigma_norm: keys.float("diag.sigma_norm", n as f64 + 1.0)?,
            sigma_profile: keys.float("diag.sigma_profile", init.sigma)?,
        },
        b: keys.float("diag.b", 0.5)?,
        s0: keys.opt_list("diag.s0")?.unwrap_or_else(|| vec![(radius / 4.0).powi(n as i32)]),
        eps0: keys.float("diag.eps0", DEFAULT_EPS0)?,
    };
    let dcad = OutputCadence::default();
    let cadence = OutputCadence {
        frames: keys.count("output.frames", dcad.frames)?,
        growth_factor: keys.float("output.growth_factor", dcad.growth_factor)?,
    };
    let snapshots = keys.flag("output.snapshots", true)?;

    let cfg = RunConfig { domain, cells, model, init, control, diag, cadence, snapshots };
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    /// Checks everything that can be checked without building the grid.
    pub fn validate(&self) -> Result<(), ConfigError> {
        validate_params(self.model, self.domain)?;
        let bad = |msg: String| Err(ConfigError::ValidationError(msg));
        if self.cells < crate::grid::MIN_CELLS {
            return bad(format!("grid.N = {} is below {}", self.cells, crate::grid::MIN_CELLS));
        }
        self.control.validate().or_else(|e| bad(e.to_string()))?;
        if !(self.init.m0 > 0.0 && self.init.m0.is_finite()) {
            return bad(format!("init.M0 = {} must be positive", self.init.m0));
        }
        if self.init.kind != InitialKind::Constant {
            if let Some(core) = self.init.core_radius {
                if !(core > 0.0) {
                    return bad(format!("init.core = {core} must be positive"));
                }
            }
        }
        if self.init.kind == InitialKind::Singular && !(self.init.sigma > 0.0) {
            return bad(format!("init.sigma = {} must be positive", self.init.sigma));
        }
        if let Some(r1) = self.init.r1 {
            if !(r1 > 0.0 && r1 <= self.domain.radius) {
                return bad(format!("init.r1 = {r1} outside (0, R]"));
            }
        }
        if !(self.diag.b > 0.0 && self.diag.b < 1.0) {
            return bad(format!("diag.b = {} outside (0, 1)", self.diag.b));
        }
        let s_max = self.domain.radius.powi(self.domain.n as i32);
        if let Some(s0) = self.diag.s0.iter().find(|&&s0| !(s0 > 0.0 && s0 < s_max)) {
            return bad(format!("diag.s0 = {s0} outside (0, R^n) = (0, {s_max})"));
        }
        if !(self.diag.norms.sigma_norm >= 1.0) || !(self.diag.norms.sigma_profile > 0.0) {
            return bad("diag.sigma_norm must be >= 1 and diag.sigma_profile positive".into());
        }
        if !(self.diag.eps0 > 0.0) {
            return bad(format!("diag.eps0 = {} must be positive", self.diag.eps0));
        }
        if self.cadence.frames == 0 || !(self.cadence.growth_factor > 1.0) {
            return bad("output.frames must be >= 1 and output.growth_factor > 1".into());
        }
        Ok(())
    }

    /// Every key with its effective value, defaults included.
    pub fn entries(&self) -> Vec<(&'static str, Scalar)> {
        use Scalar::*;
        let m = &self.model;
        let c = &self.control;
        let mut out = vec![
            ("domain.n", Int(self.domain.n as i64)),
            ("domain.R", Float(self.domain.radius)),
            ("grid.N", Int(self.cells as i64)),
            ("model.m", Float(m.m)),
            ("model.p", Float(m.p)),
            ("model.q", Float(m.q)),
            ("model.chi", Float(m.chi)),
            ("model.xi", Float(m.xi)),
            ("model.alpha", Float(m.alpha)),
            ("model.beta", Float(m.beta)),
            ("model.gamma", Float(m.gamma)),
            ("model.delta", Float(m.delta)),
            ("model.source", Bool(m.source_enabled)),
            ("model.lambda0", Float(m.lambda0)),
            ("model.mu1", Float(m.mu1)),
            ("model.a", Float(m.a)),
            ("model.kappa", Float(m.kappa)),
            ("init.kind", Str(kind_name(self.init.kind).into())),
            ("init.sigma", Float(self.init.sigma)),
            ("init.M0", Float(self.init.m0)),
            ("control.T", Float(c.t_horizon)),
            ("control.cfl_diff", Float(c.cfl_diff)),
            ("control.cfl_adv", Float(c.cfl_adv)),
            ("control.dt_min", Float(c.dt_min)),
            ("control.u_max_detect", Float(c.u_max_detect)),
            ("control.plateau_rate", Float(c.plateau_rate)),
            ("control.plateau_window", Float(c.plateau_window)),
            ("control.max_halvings", Int(c.max_halvings as i64)),
            ("diag.sigma_norm", Float(self.diag.norms.sigma_norm)),
            ("diag.sigma_profile", Float(self.diag.norms.sigma_profile)),
            ("diag.b", Float(self.diag.b)),
            ("diag.s0", List(self.diag.s0.clone())),
            ("diag.eps0", Float(self.diag.eps0)),
            ("output.frames", Int(self.cadence.frames as i64)),
            ("output.growth_factor", Float(self.cadence.growth_factor)),
            ("output.snapshots", Bool(self.snapshots)),
        ];
        // JSON has no infinity; an absent L means "no target"
        if self.init.l.is_finite() {
            out.push(("init.L", Float(self.init.l)));
        }
        for (key, value) in [
            ("init.core", self.init.core_radius),
            ("init.r1", self.init.r1),
            ("init.M1", self.init.m1_check),
        ] {
            if let Some(x) = value {
                out.push((key, Float(x)));
            }
        }
        out
    }

    /// The configuration as a JSON object of dotted keys.
    pub fn to_json(&self) -> Json {
        let map: Map<String, Json> =
            self.entries().into_iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
        Json::Object(map)
    }
}

pub fn kind_name(kind: InitialKind) -> &'static str {
    match kind {
        InitialKind::Singular => "singular",
        InitialKind::Gaussian => "gaussian",
        InitialKind::Constant => "constant",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "
domain.n = 3
domain.R = 1.0
grid.N = 256
model.p = 2.0
model.q = 2.5
init.kind = \"constant\"
";

    fn run(text: &str) -> RunConfig {
        match parse_config(text).unwrap() {
            Config::Run(cfg) => cfg,
            Config::Sweep(_) => panic!("expected a run config"),
        }
    }

    #[test]
    fn minimal_file() {
        let cfg = run(MINIMAL);
        assert_eq!(cfg.cells, 256);
        assert_eq!(cfg.model.q, 2.5);
        assert_eq!(cfg.init.kind, InitialKind::Constant);
        assert_eq!(cfg.diag.s0, vec![1.0 / 64.0]);
    }

    #[test]
    fn misspelled_key() {
        let text = format!("{MINIMAL}model.chii = 1.0\n");
        assert_eq!(parse_config(&text).unwrap_err(), ConfigError::UnknownKey("model.chii".into()));
        let text = format!("{MINIMAL}chii = 1.0\n");
        assert_eq!(parse_config(&text).unwrap_err(), ConfigError::UnknownKey("chii".into()));
    }

    #[test]
    fn section_headers_are_equivalent_to_dotted_keys() {
        let text = "[domain]\nn = 3\nR = 1.0\n[grid]\nN = 256\n[model]\np = 2.0\nq = 2.5\n";
        assert_eq!(run(text), run(MINIMAL));
    }

    #[test]
    fn invalid_kappa_with_source() {
        let text = format!("{MINIMAL}model.source = true\nmodel.kappa = 0.5\n");
        assert!(matches!(parse_config(&text), Err(ConfigError::ValidationError(_))));
    }

    #[test]
    fn parse_error_position() {
        let err = parse_config("domain.n = 3\ngrid.N = = 4\n").unwrap_err();
        match err {
            ConfigError::ParseError { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_types_and_windows() {
        let text = format!("{MINIMAL}model.m = \"one\"\n");
        assert!(matches!(parse_config(&text), Err(ConfigError::ValidationError(_))));
        let text = format!("{MINIMAL}diag.s0 = [0.5, 1.0]\n");
        assert!(matches!(parse_config(&text), Err(ConfigError::ValidationError(_))));
        let text = "domain.n = 3\ngrid.N = 64\n";
        assert!(matches!(parse_config(text), Err(ConfigError::ValidationError(_))));
    }

    #[test]
    fn json_echo_round_trips() {
        let text = format!(
            "{MINIMAL}init.kind = \"singular\"\ninit.sigma = 6.1\ninit.core = 0.3\ninit.M0 = 50.0\ndiag.s0 = [0.1, 0.2]\n"
        )
        .replace("init.kind = \"constant\"\n", "");
        let cfg = run(&text);
        let manifest = serde_json::json!({ "config": cfg.to_json() }).to_string();
        match parse_manifest(&manifest).unwrap() {
            Config::Run(back) => assert_eq!(back, cfg),
            Config::Sweep(_) => panic!(),
        }
    }

    #[test]
    fn sweep_axes() {
        let text = format!(
            "{MINIMAL}sweep.jobs = 2\nsweep.axis1.name = \"p\"\nsweep.axis1.min = 1.8\nsweep.axis1.max = 2.2\nsweep.axis1.count = 2\n"
        );
        let Config::Sweep(sw) = parse_config(&text).unwrap() else { panic!() };
        assert_eq!(sw.jobs, 2);
        assert_eq!(sw.axes[0].values(), vec![1.8, 2.2]);
        let bad = text.replace("name = \"p\"", "name = \"beta\"");
        assert!(matches!(parse_config(&bad), Err(ConfigError::ValidationError(_))));
        let one = text.replace("count = 2", "count = 1");
        assert!(matches!(parse_config(&one), Err(ConfigError::ValidationError(_))));
    }
}

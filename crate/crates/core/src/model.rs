//! Model parameters and the closed-form regime predicates.
//!
//! The system under study is
//!
//! ```text
//! u_t = div((u+1)^{m-1} grad u - chi u (u+1)^{p-2} grad v + xi u (u+1)^{q-2} grad w) + f(u)
//! 0   = lap v + alpha u - beta v
//! 0   = lap w + gamma u - delta w
//! ```
//!
//! on a ball with homogeneous Neumann data, with `f(u) = lambda0 u - mu1 r^a u^kappa`
//! when the source is enabled and `f = 0` otherwise.
//!
//! Everything here is pure arithmetic on parameters: no grids, no fields.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default offset added to the critical profile exponent when a blow-up
/// prediction reports its `sigma`.
pub const DEFAULT_EPS0: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("coefficient `{0}` must be strictly positive")]
    NonPositiveCoefficient(&'static str),
    #[error("parameter `{0}` must be nonnegative")]
    NegativeParameter(&'static str),
    #[error("parameter `{0}` must be finite")]
    NonFinite(&'static str),
    #[error("kappa = {0} is invalid: the source law needs kappa >= 1")]
    InvalidKappa(f64),
    #[error("space dimension n = {0} is invalid (need n >= 1)")]
    InvalidDimension(usize),
    #[error("ball radius R = {0} must be positive")]
    InvalidRadius(f64),
    #[error("source disabled but `{0}` is nonzero")]
    SourceParameterWithoutSource(&'static str),
    #[error("(m - p + 1) n + 1 = {0} is not positive")]
    DegenerateDenominator(f64),
    #[error("exponent ell = {0} must exceed 1")]
    InvalidExponent(f64),
    #[error("eps = {0} must be positive")]
    InvalidEps(f64),
}

/// PDE coefficients and source-law parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub m: f64,
    pub p: f64,
    pub q: f64,
    pub chi: f64,
    pub xi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// Constant value of `lambda(r)`.
    pub lambda0: f64,
    /// Coefficient in `mu(r) = mu1 r^a`.
    pub mu1: f64,
    pub a: f64,
    pub kappa: f64,
    /// `false` means `f = 0`.
    pub source_enabled: bool,
}

impl Default for ModelParams {
    /// The canonical semilinear case: `m = 1`, `p = q = 2`, unit coefficients, no source.
    fn default() -> Self {
        Self {
            m: 1.0,
            p: 2.0,
            q: 2.0,
            chi: 1.0,
            xi: 1.0,
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
            delta: 1.0,
            lambda0: 0.0,
            mu1: 0.0,
            a: 0.0,
            kappa: 1.0,
            source_enabled: false,
        }
    }
}

impl ModelParams {
    /// `chi alpha - xi gamma`, the sign that separates the `p = q` regimes.
    pub fn attraction_excess(&self) -> f64 {
        self.chi * self.alpha - self.xi * self.gamma
    }

    /// Evaluates `f(u)` at radius `r`.
    pub fn source(&self, r: f64, u: f64) -> f64 {
        if !self.source_enabled {
            return 0.0;
        }
        self.lambda0 * u - self.mu1 * r.powf(self.a) * u.powf(self.kappa)
    }

    fn named_values(&self) -> [(&'static str, f64); 13] {
        [
            ("m", self.m),
            ("p", self.p),
            ("q", self.q),
            ("chi", self.chi),
            ("xi", self.xi),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("lambda0", self.lambda0),
            ("mu1", self.mu1),
            ("a", self.a),
            ("kappa", self.kappa),
        ]
    }
}

/// The ball `B_R(0)` in `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub n: usize,
    #[serde(rename = "R")]
    pub radius: f64,
}

impl DomainSpec {
    pub fn new(n: usize, radius: f64) -> Self {
        Self { n, radius }
    }
}

/// Parameters that passed [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedParams {
    params: ModelParams,
    domain: DomainSpec,
}

impl ValidatedParams {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn into_parts(self) -> (ModelParams, DomainSpec) {
        (self.params, self.domain)
    }
}

/// Enforces the standing hypotheses on the coefficients and the domain.
pub fn validate_params(
    params: ModelParams,
    domain: DomainSpec,
) -> Result<ValidatedParams, ModelError> {
    for (name, value) in params.named_values() {
        if !value.is_finite() {
            return Err(ModelError::NonFinite(name));
        }
    }
    for (name, value) in [
        ("chi", params.chi),
        ("xi", params.xi),
        ("alpha", params.alpha),
        ("beta", params.beta),
        ("gamma", params.gamma),
        ("delta", params.delta),
    ] {
        if value <= 0.0 {
            return Err(ModelError::NonPositiveCoefficient(name));
        }
    }
    for (name, value) in [("lambda0", params.lambda0), ("mu1", params.mu1), ("a", params.a)] {
        if value < 0.0 {
            return Err(ModelError::NegativeParameter(name));
        }
    }
    if params.source_enabled {
        if params.kappa < 1.0 {
            return Err(ModelError::InvalidKappa(params.kappa));
        }
    } else {
        if params.lambda0 != 0.0 {
            return Err(ModelError::SourceParameterWithoutSource("lambda0"));
        }
        if params.mu1 != 0.0 {
            return Err(ModelError::SourceParameterWithoutSource("mu1"));
        }
    }
    if domain.n < 1 {
        return Err(ModelError::InvalidDimension(domain.n));
    }
    if !(domain.radius > 0.0 && domain.radius.is_finite()) {
        return Err(ModelError::InvalidRadius(domain.radius));
    }
    Ok(ValidatedParams { params, domain })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    BoundedThm31,
    BoundedThm33,
    BlowupThm41,
    BlowupThm44,
    NoTheoremApplies,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::BoundedThm31 => "BoundedThm31",
            Verdict::BoundedThm33 => "BoundedThm33",
            Verdict::BlowupThm41 => "BlowupThm41",
            Verdict::BlowupThm44 => "BlowupThm44",
            Verdict::NoTheoremApplies => "NoTheoremApplies",
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Verdict::BoundedThm31 | Verdict::BoundedThm33)
    }

    pub fn is_blowup(&self) -> bool {
        matches!(self, Verdict::BlowupThm41 | Verdict::BlowupThm44)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The three admissible `(n, m, p)` regions for the blow-up results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionCase {
    C1,
    C2,
    C3,
}

impl fmt::Display for ConditionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionCase::C1 => "C1",
            ConditionCase::C2 => "C2",
            ConditionCase::C3 => "C3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimePrediction {
    pub verdict: Verdict,
    pub condition_case: Option<ConditionCase>,
    pub kappa_bound: Option<f64>,
    pub sigma_exponent: Option<f64>,
    pub details: String,
}

impl RegimePrediction {
    fn none(details: impl Into<String>) -> Self {
        Self {
            verdict: Verdict::NoTheoremApplies,
            condition_case: None,
            kappa_bound: None,
            sigma_exponent: None,
            details: details.into(),
        }
    }
}

fn positive_part(y: f64) -> f64 {
    y.max(0.0)
}

/// Boundedness predicate for the source-free problem.
///
/// `p < q` gives global boundedness unconditionally; `p = q` needs the
/// repulsion to win, `chi alpha - xi gamma < 0`.
pub fn check_boundedness_regime(params: &ModelParams, _domain: &DomainSpec) -> RegimePrediction {
    if params.source_enabled {
        return RegimePrediction::none(
            "boundedness results assume f = 0; the source law is enabled",
        );
    }
    let excess = params.attraction_excess();
    if params.p < params.q {
        RegimePrediction {
            verdict: Verdict::BoundedThm31,
            details: format!("p = {} < q = {}", params.p, params.q),
            ..RegimePrediction::none("")
        }
    } else if params.p == params.q && excess < 0.0 {
        RegimePrediction {
            verdict: Verdict::BoundedThm33,
            details: format!("p = q = {}, chi*alpha - xi*gamma = {} < 0", params.p, excess),
            ..RegimePrediction::none("")
        }
    } else if params.p == params.q && excess == 0.0 {
        RegimePrediction::none("p = q with chi*alpha - xi*gamma = 0: borderline, not covered")
    } else {
        RegimePrediction::none(format!(
            "no boundedness hypothesis holds (p = {}, q = {}, chi*alpha - xi*gamma = {})",
            params.p, params.q, excess
        ))
    }
}

/// Returns the unique region among C1, C2, C3 containing `(m, p)` for the
/// given dimension, or `None`.
///
/// Each inequality is evaluated with the strictness it is stated with; C2 and
/// C3 split at the same threshold with `<` versus `<=` so at most one holds.
pub fn check_condition_case(m: f64, p: f64, n: usize) -> Option<ConditionCase> {
    if n < 3 || m < 1.0 {
        return None;
    }
    let nf = n as f64;
    let upper_common = 2.0 / (nf + 1.0) * m + 2.0 * (nf * nf + 1.0) / (nf * (nf + 1.0));
    let gap = m - p < -2.0 / nf;

    if n == 3 || n == 4 {
        let second = -m / (nf - 2.0) + 2.0 * (nf * nf - nf - 1.0) / (nf * (nf - 2.0));
        if p < upper_common && p < second && gap {
            return Some(ConditionCase::C1);
        }
        return None;
    }

    let lower = -2.0 / (nf - 3.0) * m + 2.0 * (nf * nf - 2.0 * nf - 1.0) / (nf * (nf - 3.0));
    if !(lower < p && p < upper_common) {
        return None;
    }
    let split = -(nf + 2.0) / (nf - 4.0) * m + (3.0 * nf * nf - 5.0 * nf - 4.0) / (nf * (nf - 4.0));
    let c2_cap = (nf + 2.0) / 3.0 * m - (nf * nf - 3.0 * nf - 4.0) / (3.0 * nf);
    if p < split && p <= c2_cap {
        return Some(ConditionCase::C2);
    }
    let c3_cap = -m / (nf - 2.0) + 2.0 * (nf * nf - nf - 1.0) / (nf * (nf - 2.0));
    if split <= p && p < c3_cap && gap {
        return Some(ConditionCase::C3);
    }
    None
}

/// Strict upper bound on `kappa` in the given condition case.
pub fn kappa_upper_bound(params: &ModelParams, domain: &DomainSpec, case: ConditionCase) -> f64 {
    let nf = domain.n as f64;
    let (m, p, a) = (params.m, params.p, params.a);
    let k = (m - p + 1.0) * nf + 1.0;
    let weight_term = a * k / (nf * (nf - 1.0));
    match case {
        ConditionCase::C1 | ConditionCase::C2 => {
            1.0 + (nf - 2.0) * k / (nf * (nf - 1.0)) + weight_term
                - (m - 1.0)
                - positive_part(2.0 - p)
        }
        ConditionCase::C3 => {
            1.0 + k / (2.0 * (nf - 1.0)) + weight_term - positive_part(2.0 - p) / 2.0
        }
    }
}

/// `n (n-1) / ((m - p + 1) n + 1) + eps`, the decay exponent of admissible
/// initial profiles.
pub fn sigma_exponent(n: usize, m: f64, p: f64, eps: f64) -> Result<f64, ModelError> {
    let nf = n as f64;
    let denom = (m - p + 1.0) * nf + 1.0;
    if denom <= 0.0 {
        return Err(ModelError::DegenerateDenominator(denom));
    }
    Ok(nf * (nf - 1.0) / denom + eps)
}

/// The constant `C_eps` in `(x+1)^ell <= (1+eps) x^ell + C_eps` for `x >= 0`.
///
/// Evaluated as `(1 - (1+eps)^{-1/(ell-1)})^{-(ell-1)}`, which is the same
/// quantity as `(1+eps)((1+eps)^{1/(ell-1)} - 1)^{-(ell-1)}` but does not
/// overflow when `ell` is close to 1.
pub fn convexity_constant(ell: f64, eps: f64) -> Result<f64, ModelError> {
    if !(ell > 1.0) {
        return Err(ModelError::InvalidExponent(ell));
    }
    if !(eps > 0.0) {
        return Err(ModelError::InvalidEps(eps));
    }
    let k = 1.0 / (ell - 1.0);
    let gap = -(-k * eps.ln_1p()).exp_m1();
    Ok((-(ell - 1.0) * gap.ln()).exp())
}

/// Blow-up predicate for radial solutions.
///
/// `p > q` with an admissible condition case and `kappa` below its bound
/// gives `BlowupThm41`; `p = q` with `chi alpha - xi gamma > 0` and the same
/// exponent conditions gives `BlowupThm44`. `eps0` is the offset reported on
/// the profile exponent.
pub fn check_blowup_regime(
    params: &ModelParams,
    domain: &DomainSpec,
    eps0: f64,
) -> RegimePrediction {
    if domain.n < 3 {
        return RegimePrediction::none(format!("blow-up results need n >= 3 (n = {})", domain.n));
    }
    if !(params.m > 0.0) {
        return RegimePrediction::none(format!("blow-up results need m > 0 (m = {})", params.m));
    }
    if params.kappa < 1.0 {
        return RegimePrediction::none(format!("kappa = {} < 1", params.kappa));
    }
    let excess = params.attraction_excess();
    let verdict = if params.p > params.q {
        Verdict::BlowupThm41
    } else if params.p == params.q && excess > 0.0 {
        Verdict::BlowupThm44
    } else {
        return RegimePrediction::none(format!(
            "no blow-up hypothesis holds (p = {}, q = {}, chi*alpha - xi*gamma = {})",
            params.p, params.q, excess
        ));
    };
    let Some(case) = check_condition_case(params.m, params.p, domain.n) else {
        return RegimePrediction::none(format!(
            "(n, m, p) = ({}, {}, {}) lies outside C1-C3",
            domain.n, params.m, params.p
        ));
    };
    let bound = kappa_upper_bound(params, domain, case);
    let sigma = sigma_exponent(domain.n, params.m, params.p, eps0).ok();
    if params.kappa < bound {
        RegimePrediction {
            verdict,
            condition_case: Some(case),
            kappa_bound: Some(bound),
            sigma_exponent: sigma,
            details: format!("case {case}, kappa = {} < {}", params.kappa, format_ratio(bound)),
        }
    } else {
        RegimePrediction {
            verdict: Verdict::NoTheoremApplies,
            condition_case: Some(case),
            kappa_bound: Some(bound),
            sigma_exponent: sigma,
            details: format!(
                "case {case} holds but kappa = {} >= {}",
                params.kappa,
                format_ratio(bound)
            ),
        }
    }
}

/// Boundedness first, then blow-up: the combined prediction used by sweeps.
pub fn predict_regime(params: &ModelParams, domain: &DomainSpec, eps0: f64) -> RegimePrediction {
    let bounded = check_boundedness_regime(params, domain);
    if bounded.verdict.is_bounded() {
        return bounded;
    }
    let blowup = check_blowup_regime(params, domain, eps0);
    if blowup.verdict.is_blowup() {
        return blowup;
    }
    RegimePrediction::none(format!("{}; {}", bounded.details, blowup.details))
}

/// Writes `x` as `a/b` when a fraction with denominator at most 1000 matches
/// it to 1e-12 relative, otherwise as a decimal.
pub fn format_ratio(x: f64) -> String {
    if x.is_finite() {
        for den in 1..=1000_i64 {
            let num = (x * den as f64).round();
            if (num / den as f64 - x).abs() <= 1e-12 * x.abs().max(1.0) {
                return if den == 1 {
                    format!("{}", num as i64)
                } else {
                    format!("{}/{}", num as i64, den)
                };
            }
        }
    }
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dom3() -> DomainSpec {
        DomainSpec::new(3, 1.0)
    }

    #[test]
    fn canonical_semilinear_case_validates() {
        assert!(validate_params(ModelParams::default(), dom3()).is_ok());
    }

    #[test]
    fn zero_chi_is_rejected_by_name() {
        let params = ModelParams { chi: 0.0, ..Default::default() };
        assert_eq!(
            validate_params(params, dom3()).unwrap_err(),
            ModelError::NonPositiveCoefficient("chi")
        );
    }

    #[test]
    fn kappa_below_one_rejected_with_source() {
        let params = ModelParams { source_enabled: true, kappa: 0.5, ..Default::default() };
        assert_eq!(validate_params(params, dom3()).unwrap_err(), ModelError::InvalidKappa(0.5));
    }

    #[test]
    fn zero_dimension_rejected() {
        let err = validate_params(ModelParams::default(), DomainSpec::new(0, 1.0)).unwrap_err();
        assert_eq!(err, ModelError::InvalidDimension(0));
    }

    #[test]
    fn source_coefficients_require_source() {
        let params = ModelParams { mu1: 0.1, ..Default::default() };
        assert!(matches!(
            validate_params(params, dom3()),
            Err(ModelError::SourceParameterWithoutSource("mu1"))
        ));
    }

    #[test]
    fn boundedness_verdicts() {
        let p_lt_q = ModelParams { p: 2.0, q: 2.5, ..Default::default() };
        assert_eq!(check_boundedness_regime(&p_lt_q, &dom3()).verdict, Verdict::BoundedThm31);

        let repulsive = ModelParams { gamma: 2.0, ..Default::default() };
        assert_eq!(check_boundedness_regime(&repulsive, &dom3()).verdict, Verdict::BoundedThm33);

        let p_gt_q = ModelParams { p: 2.5, q: 2.0, ..Default::default() };
        assert_eq!(
            check_boundedness_regime(&p_gt_q, &dom3()).verdict,
            Verdict::NoTheoremApplies
        );

        let tie = ModelParams::default();
        assert_eq!(check_boundedness_regime(&tie, &dom3()).verdict, Verdict::NoTheoremApplies);

        let with_source = ModelParams { q: 2.5, source_enabled: true, ..Default::default() };
        assert_eq!(
            check_boundedness_regime(&with_source, &dom3()).verdict,
            Verdict::NoTheoremApplies
        );
    }

    #[test]
    fn condition_cases_by_hand() {
        assert_eq!(check_condition_case(1.0, 2.0, 3), Some(ConditionCase::C1));
        assert_eq!(check_condition_case(1.0, 1.0, 3), None);
        assert_eq!(check_condition_case(1.0, 1.9, 5), Some(ConditionCase::C2));
        // m < 1 is excluded everywhere
        assert_eq!(check_condition_case(0.9, 2.0, 3), None);
        assert_eq!(check_condition_case(1.0, 2.0, 2), None);
    }

    #[test]
    fn c3_reached_above_the_split() {
        let m = 1.2;
        let n = 6;
        let nf = n as f64;
        let split = -(nf + 2.0) / (nf - 4.0) * m + (3.0 * nf * nf - 5.0 * nf - 4.0) / (nf * (nf - 4.0));
        let cap = -m / (nf - 2.0) + 2.0 * (nf * nf - nf - 1.0) / (nf * (nf - 2.0));
        let upper = 2.0 / (nf + 1.0) * m + 2.0 * (nf * nf + 1.0) / (nf * (nf + 1.0));
        let lower = -2.0 / (nf - 3.0) * m + 2.0 * (nf * nf - 2.0 * nf - 1.0) / (nf * (nf - 3.0));
        let lo = split.max(lower).max(m + 2.0 / nf);
        let hi = cap.min(upper);
        assert!(lo < hi, "empty C3 window [{lo}, {hi})");
        let p = 0.5 * (lo + hi);
        assert_eq!(check_condition_case(m, p, n), Some(ConditionCase::C3));
    }

    #[test]
    fn kappa_bounds_by_hand() {
        let mut params = ModelParams::default();
        assert_relative_eq!(
            kappa_upper_bound(&params, &dom3(), ConditionCase::C1),
            7.0 / 6.0,
            max_relative = 1e-12
        );
        params.a = 6.0;
        assert_relative_eq!(
            kappa_upper_bound(&params, &dom3(), ConditionCase::C1),
            13.0 / 6.0,
            max_relative = 1e-12
        );
        let params = ModelParams { p: 1.9, ..Default::default() };
        assert_relative_eq!(
            kappa_upper_bound(&params, &DomainSpec::new(5, 1.0), ConditionCase::C2),
            1.125,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sigma_by_hand() {
        assert_relative_eq!(sigma_exponent(3, 1.0, 2.0, 0.1).unwrap(), 6.1, max_relative = 1e-12);
        assert_relative_eq!(sigma_exponent(4, 1.0, 2.0, 0.0).unwrap(), 12.0, max_relative = 1e-12);
        assert_relative_eq!(sigma_exponent(3, 1.3, 1.3, 0.0).unwrap(), 1.5, max_relative = 1e-12);
        assert!(matches!(
            sigma_exponent(3, 1.0, 3.0, 0.0),
            Err(ModelError::DegenerateDenominator(_))
        ));
    }

    #[test]
    fn convexity_constant_by_hand() {
        assert_relative_eq!(convexity_constant(2.0, 1.0).unwrap(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(
            convexity_constant(3.0, 1.0).unwrap(),
            6.0 + 4.0 * 2f64.sqrt(),
            max_relative = 1e-12
        );
        // equality at x = 1 for ell = 2, eps = 1
        let c = convexity_constant(2.0, 1.0).unwrap();
        assert_relative_eq!(4.0, 2.0 * 1.0 + c, max_relative = 1e-15);
        assert!(convexity_constant(1.0, 1.0).is_err());
        assert!(convexity_constant(2.0, 0.0).is_err());
        // ell near 1 stays finite and >= 1
        let c = convexity_constant(1.0 + 1e-6, 10.0).unwrap();
        assert!(c >= 1.0 && c.is_finite());
    }

    #[test]
    fn blowup_verdicts() {
        let thm41 = ModelParams { q: 1.5, ..Default::default() };
        let pred = check_blowup_regime(&thm41, &dom3(), DEFAULT_EPS0);
        assert_eq!(pred.verdict, Verdict::BlowupThm41);
        assert_eq!(pred.condition_case, Some(ConditionCase::C1));
        assert_relative_eq!(pred.kappa_bound.unwrap(), 7.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(pred.sigma_exponent.unwrap(), 6.1, max_relative = 1e-12);

        let thm44 = ModelParams { gamma: 0.5, ..Default::default() };
        assert_eq!(check_blowup_regime(&thm44, &dom3(), DEFAULT_EPS0).verdict, Verdict::BlowupThm44);

        let too_big_kappa = ModelParams { q: 1.5, kappa: 1.2, ..Default::default() };
        let pred = check_blowup_regime(&too_big_kappa, &dom3(), DEFAULT_EPS0);
        assert_eq!(pred.verdict, Verdict::NoTheoremApplies);
        assert_eq!(pred.condition_case, Some(ConditionCase::C1));

        let low_dim = check_blowup_regime(&thm41, &DomainSpec::new(2, 1.0), DEFAULT_EPS0);
        assert_eq!(low_dim.verdict, Verdict::NoTheoremApplies);
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(7.0 / 6.0), "7/6");
        assert_eq!(format_ratio(2.0), "2");
        assert_eq!(format_ratio(2f64.sqrt()), format!("{}", 2f64.sqrt()));
    }
}

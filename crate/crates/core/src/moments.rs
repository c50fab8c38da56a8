//! Raw, central, raw-absolute and central-absolute moments of N(μ, σ²) for
//! real order ν > −1.
//!
//! Each moment is available through several algebraically equivalent routes
//! ([`FormulaPath`]), kept deliberately redundant so they can cross-validate
//! each other:
//!
//! - `pcf`: `E{X^ν} = (jσ)^ν e^{−μ²/4σ²} D_ν(−jμ/σ)`;
//! - `phi-pair`: the same expanded into the two Kummer-Φ terms;
//! - `psi`: `(jσ)^ν 2^{ν/2} Ψ(−ν/2, ½; −μ²/2σ²)`, conjugated for μ > 0;
//! - `integer`: terminating polynomial forms for ν ∈ ℕ₀ (exact zeros, no
//!   complex arithmetic);
//! - `gamma-form`: the closed Γ-quotient forms of the central and absolute
//!   moments.
//!
//! Fractional-order raw and central moments are complex; `x^ν` for x < 0 is
//! evaluated on the principal branch (`|x|^ν e^{jπν}`), the convention under
//! which every route above agrees with direct quadrature of the defining
//! expectation.

use core::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::specfun::{
    imag_scaled_pow, kummer_phi_detail, parabolic_cylinder_d_detail, recip_gamma,
    tricomi_psi_detail, unit_phase_pi, SeriesControl, SpecFunError,
};

const SQRT_PI: f64 = 1.7724538509055160;
const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// ν is treated as an integer when within this distance of one; the integer
/// formula paths need a crisp predicate for their exact-zero behavior.
pub const INTEGER_ORDER_EPS: f64 = 1e-12;

/// Largest allowed (μ/σ)²/2, matching the series-argument cap.
pub const MAX_RATIO_HALF_SQ: f64 = 700.0;

/// Mean and standard deviation of the distribution under study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalParams {
    mu: f64,
    sigma: f64,
}

impl NormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self, MomentError> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(MomentError::InvalidSigma { sigma });
        }
        if !mu.is_finite() {
            return Err(MomentError::InvalidMu { mu });
        }
        let half_sq = (mu / sigma) * (mu / sigma) / 2.0;
        if half_sq > MAX_RATIO_HALF_SQ {
            return Err(MomentError::RatioTooLarge { half_sq });
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Same σ, mean zero; central moments are raw moments of this.
    fn centered(&self) -> Self {
        Self {
            mu: 0.0,
            sigma: self.sigma,
        }
    }
}

/// Which of the four moment families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    Raw,
    Central,
    RawAbs,
    CentralAbs,
}

impl MomentKind {
    pub const ALL: [MomentKind; 4] = [
        MomentKind::Raw,
        MomentKind::Central,
        MomentKind::RawAbs,
        MomentKind::CentralAbs,
    ];
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Raw => "raw",
            Self::Central => "central",
            Self::RawAbs => "abs",
            Self::CentralAbs => "central-abs",
        };
        f.write_str(name)
    }
}

impl FromStr for MomentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" => Ok(Self::Raw),
            "central" => Ok(Self::Central),
            "abs" => Ok(Self::RawAbs),
            "central-abs" => Ok(Self::CentralAbs),
            other => Err(format!(
                "unknown kind `{other}` (expected raw, central, abs or central-abs)"
            )),
        }
    }
}

/// A moment request: family plus real order ν > −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub kind: MomentKind,
    pub nu: f64,
}

impl MomentQuery {
    pub fn new(kind: MomentKind, nu: f64) -> Result<Self, MomentError> {
        check_order(nu)?;
        Ok(Self { kind, nu })
    }
}

/// Selector over the redundant formula routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaPath {
    Auto,
    /// Parabolic cylinder form.
    Pcf,
    /// Two-term Kummer-Φ form.
    PhiPair,
    /// Tricomi-Ψ form with the μ-sign conjugation split.
    Psi,
    /// Terminating polynomial forms for ν ∈ ℕ₀.
    Integer,
    /// Closed Γ-quotient forms (central and absolute moments).
    GammaForm,
}

impl fmt::Display for FormulaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Auto => "auto",
            Self::Pcf => "pcf",
            Self::PhiPair => "phi-pair",
            Self::Psi => "psi",
            Self::Integer => "integer",
            Self::GammaForm => "gamma-form",
        };
        f.write_str(name)
    }
}

impl FromStr for FormulaPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "pcf" => Ok(Self::Pcf),
            "phi-pair" => Ok(Self::PhiPair),
            "psi" => Ok(Self::Psi),
            "integer" => Ok(Self::Integer),
            "gamma-form" => Ok(Self::GammaForm),
            other => Err(format!(
                "unknown method `{other}` (expected auto, pcf, phi-pair, psi, integer or gamma-form)"
            )),
        }
    }
}

/// A computed moment: value (complex in general), the route that produced it
/// and an engineering error estimate (series truncation bounds plus ulp-scale
/// slack per special-function call; not a proof).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub value: Complex64,
    pub path: FormulaPath,
    pub err_estimate: f64,
}

/// Errors from moment evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentError {
    InvalidSigma { sigma: f64 },
    InvalidMu { mu: f64 },
    RatioTooLarge { half_sq: f64 },
    OrderOutOfRange { nu: f64 },
    InvalidPath { path: FormulaPath, reason: &'static str },
    SpecFun(SpecFunError),
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidSigma { sigma } => {
                write!(f, "sigma must be positive and finite (got {sigma})")
            }
            Self::InvalidMu { mu } => write!(f, "mu must be finite (got {mu})"),
            Self::RatioTooLarge { half_sq } => write!(
                f,
                "(mu/sigma)^2/2 must not exceed {MAX_RATIO_HALF_SQ} (got {half_sq})"
            ),
            Self::OrderOutOfRange { nu } => write!(f, "nu must exceed -1 (got {nu})"),
            Self::InvalidPath { path, reason } => write!(f, "path {path} is invalid: {reason}"),
            Self::SpecFun(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MomentError {}

impl From<SpecFunError> for MomentError {
    fn from(e: SpecFunError) -> Self {
        Self::SpecFun(e)
    }
}

fn check_order(nu: f64) -> Result<(), MomentError> {
    if nu > -1.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(MomentError::OrderOutOfRange { nu })
    }
}

/// The integer-order predicate: |ν − round(ν)| ≤ 1e-12 with round(ν) ≥ 0.
pub fn integer_order(nu: f64) -> Option<i64> {
    let rounded = nu.round();
    if (nu - rounded).abs() <= INTEGER_ORDER_EPS && rounded >= 0.0 {
        Some(rounded as i64)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// formula routes
// ---------------------------------------------------------------------------

struct PathValue {
    value: Complex64,
    err: f64,
}

/// Φ(−k, γ; −t) for k ∈ ℕ₀ as the terminating sum; every term is positive,
/// so there is no cancellation for any t ≥ 0.
fn phi_poly(k: i64, gamma0: f64, t: f64) -> f64 {
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    for m in 0..k {
        let mf = m as f64;
        term *= (k - m) as f64 * t / ((gamma0 + mf) * (mf + 1.0));
        sum += term;
    }
    sum
}

/// Integer-order raw moment: σ^ν (ν−1)!! Φ(−ν/2, ½; −t) for even ν and
/// μ σ^{ν−1} ν!! Φ((1−ν)/2, 3/2; −t) for odd ν, with exact double-factorial
/// coefficients and the terminating Φ polynomials. Purely real.
fn raw_integer(p: &NormalParams, n: i64) -> Result<PathValue, MomentError> {
    let t = p.mu * p.mu / (2.0 * p.sigma * p.sigma);
    let (coef, k, gamma0) = if n % 2 == 0 {
        let coef =
            p.sigma.powi(n as i32) * crate::specfun::odd_double_factorial_exact(n - 1);
        (coef, n / 2, 0.5)
    } else {
        let coef = p.mu
            * p.sigma.powi(n as i32 - 1)
            * crate::specfun::odd_double_factorial_exact(n);
        (coef, (n - 1) / 2, 1.5)
    };
    let value = coef * phi_poly(k, gamma0, t);
    if !value.is_finite() {
        return Err(MomentError::SpecFun(SpecFunError::Overflow {
            what: "integer moment",
        }));
    }
    Ok(PathValue {
        value: Complex64::new(value, 0.0),
        err: f64::EPSILON * (k as f64 + 4.0) * value.abs(),
    })
}

/// Raw moment through the parabolic cylinder function.
fn raw_pcf(p: &NormalParams, nu: f64) -> Result<PathValue, MomentError> {
    let z = Complex64::new(0.0, -p.mu / p.sigma);
    let d = parabolic_cylinder_d_detail(nu, z)?;
    let damp = (-p.mu * p.mu / (4.0 * p.sigma * p.sigma)).exp();
    let prefactor = imag_scaled_pow(p.sigma, nu).scale(damp);
    let value = prefactor * d.value;
    Ok(PathValue {
        value,
        err: prefactor.norm() * d.err_bound + 15.0 * f64::EPSILON * value.norm(),
    })
}

/// Raw moment through the two-term Kummer-Φ expansion.
fn raw_phi_pair(p: &NormalParams, nu: f64) -> Result<PathValue, MomentError> {
    let ctl = SeriesControl::full_domain();
    let t = -p.mu * p.mu / (2.0 * p.sigma * p.sigma);
    let weight_a = SQRT_PI * recip_gamma((1.0 - nu) / 2.0);
    let weight_b = (p.mu / p.sigma) * SQRT_TWO_PI * recip_gamma(-nu / 2.0);
    let mut bracket = Complex64::new(0.0, 0.0);
    let mut err = 0.0_f64;
    if weight_a != 0.0 {
        let phi_a = kummer_phi_detail(-nu / 2.0, 0.5, t, ctl)?;
        bracket.re = weight_a * phi_a.value;
        err += weight_a.abs() * phi_a.err_bound;
    }
    if weight_b != 0.0 {
        let phi_b = kummer_phi_detail((1.0 - nu) / 2.0, 1.5, t, ctl)?;
        bracket.im = weight_b * phi_b.value;
        err += weight_b.abs() * phi_b.err_bound;
    }
    let scale = 2.0_f64.powf(0.5 * nu);
    let value = imag_scaled_pow(p.sigma, nu).scale(scale) * bracket;
    Ok(PathValue {
        value,
        err: p.sigma.powf(nu) * scale * err + 15.0 * f64::EPSILON * value.norm(),
    })
}

/// Raw moment through Tricomi's Ψ, conjugated for μ > 0. At μ = 0 the z → 0
/// limit of Ψ(−ν/2, ½; z) is √π/Γ((1−ν)/2), which keeps the route defined
/// where `tricomi_psi` itself rejects z = 0.
fn raw_psi(p: &NormalParams, nu: f64) -> Result<PathValue, MomentError> {
    let (psi, psi_err) = if p.mu == 0.0 {
        (
            Complex64::new(SQRT_PI * recip_gamma((1.0 - nu) / 2.0), 0.0),
            0.0,
        )
    } else {
        let t = -p.mu * p.mu / (2.0 * p.sigma * p.sigma);
        let eval = tricomi_psi_detail(-nu / 2.0, 0.5, t)?;
        (eval.value, eval.err_bound)
    };
    let psi = if p.mu > 0.0 { psi.conj() } else { psi };
    let scale = 2.0_f64.powf(0.5 * nu);
    let value = imag_scaled_pow(p.sigma, nu).scale(scale) * psi;
    Ok(PathValue {
        value,
        err: p.sigma.powf(nu) * scale * psi_err + 15.0 * f64::EPSILON * value.norm(),
    })
}

/// Central moment in the closed Γ form: (jσ)^ν 2^{ν/2} √π / Γ((1−ν)/2).
fn central_gamma_form(sigma: f64, nu: f64) -> PathValue {
    let coef = 2.0_f64.powf(0.5 * nu) * SQRT_PI * recip_gamma((1.0 - nu) / 2.0);
    let value = imag_scaled_pow(sigma, nu).scale(coef);
    PathValue {
        value,
        err: 15.0 * f64::EPSILON * value.norm(),
    }
}

/// Central moment through the reflection-rewritten cosine form:
/// (jσ)^ν 2^{ν/2} cos(πν/2) Γ((ν+1)/2)/√π. Exposed for cross-validation.
pub fn central_moment_cos_form(sigma: f64, nu: f64) -> Result<Complex64, MomentError> {
    check_order(nu)?;
    check_sigma(sigma)?;
    let g = crate::specfun::gamma((nu + 1.0) / 2.0)?;
    let coef = 2.0_f64.powf(0.5 * nu) * crate::specfun::cos_pi(0.5 * nu) * g / SQRT_PI;
    Ok(imag_scaled_pow(sigma, nu).scale(coef))
}

/// Central moment through the half-sum form:
/// (1 + (−1)^ν) σ^ν 2^{ν/2−1} Γ((ν+1)/2)/√π with (−1)^ν read as e^{jπν} on
/// the principal branch. Exposed for cross-validation; exactly 0 at odd
/// integer ν because e^{jπν} is then exactly −1.
pub fn central_moment_half_sum_form(sigma: f64, nu: f64) -> Result<Complex64, MomentError> {
    check_order(nu)?;
    check_sigma(sigma)?;
    let g = crate::specfun::gamma((nu + 1.0) / 2.0)?;
    let coef = sigma.powf(nu) * 2.0_f64.powf(0.5 * nu - 1.0) * g / SQRT_PI;
    let phase = unit_phase_pi(nu) + 1.0;
    Ok(phase.scale(coef))
}

fn check_sigma(sigma: f64) -> Result<(), MomentError> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(MomentError::InvalidSigma { sigma })
    }
}

/// Absolute moment in the Γ form: σ^ν 2^{ν/2} Γ((ν+1)/2)/√π, times
/// Φ(−ν/2, ½; −μ²/2σ²) for the raw-absolute case. Strictly positive real.
fn abs_gamma_form(p: &NormalParams, nu: f64, about_mean: bool) -> Result<PathValue, MomentError> {
    let g = crate::specfun::gamma((nu + 1.0) / 2.0)?;
    let coef = p.sigma.powf(nu) * 2.0_f64.powf(0.5 * nu) * g / SQRT_PI;
    if about_mean || p.mu == 0.0 {
        return Ok(PathValue {
            value: Complex64::new(coef, 0.0),
            err: 10.0 * f64::EPSILON * coef,
        });
    }
    let t = -p.mu * p.mu / (2.0 * p.sigma * p.sigma);
    let phi = kummer_phi_detail(-nu / 2.0, 0.5, t, SeriesControl::full_domain())?;
    let value = coef * phi.value;
    Ok(PathValue {
        value: Complex64::new(value, 0.0),
        err: coef * phi.err_bound + 10.0 * f64::EPSILON * value.abs(),
    })
}

/// Absolute moment through the parabolic-cylinder pair:
/// σ^ν/√(2π) e^{−μ²/4σ²} Γ(ν+1) (D_{−ν−1}(μ/σ) + D_{−ν−1}(−μ/σ)).
fn abs_pcf(p: &NormalParams, nu: f64, about_mean: bool) -> Result<PathValue, MomentError> {
    let ratio = if about_mean { 0.0 } else { p.mu / p.sigma };
    let d_pos = parabolic_cylinder_d_detail(-nu - 1.0, Complex64::new(ratio, 0.0))?;
    let d_neg = parabolic_cylinder_d_detail(-nu - 1.0, Complex64::new(-ratio, 0.0))?;
    let g = crate::specfun::gamma(nu + 1.0)?;
    let coef = p.sigma.powf(nu) / SQRT_TWO_PI * (-0.25 * ratio * ratio).exp() * g;
    let value = coef * (d_pos.value.re + d_neg.value.re);
    Ok(PathValue {
        value: Complex64::new(value, 0.0),
        err: coef * (d_pos.err_bound + d_neg.err_bound) + 15.0 * f64::EPSILON * value.abs(),
    })
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// E{X^ν} through the requested route. `auto` picks the integer polynomial
/// form when the integer predicate holds and the Φ pair otherwise.
pub fn raw_moment(
    p: &NormalParams,
    nu: f64,
    path: FormulaPath,
) -> Result<MomentResult, MomentError> {
    check_order(nu)?;
    let integer = integer_order(nu);
    let resolved = match path {
        FormulaPath::Auto => {
            if integer.is_some() {
                FormulaPath::Integer
            } else {
                FormulaPath::PhiPair
            }
        }
        other => other,
    };
    let pv = match resolved {
        FormulaPath::Integer => {
            let n = integer.ok_or(MomentError::InvalidPath {
                path: FormulaPath::Integer,
                reason: "integer path requires integer nu",
            })?;
            raw_integer(p, n)?
        }
        FormulaPath::Pcf => raw_pcf(p, nu)?,
        FormulaPath::PhiPair => raw_phi_pair(p, nu)?,
        FormulaPath::Psi => raw_psi(p, nu)?,
        FormulaPath::GammaForm => {
            if p.mu != 0.0 {
                return Err(MomentError::InvalidPath {
                    path: FormulaPath::GammaForm,
                    reason: "gamma-form raw moments require mu = 0",
                });
            }
            central_gamma_form(p.sigma, nu)
        }
        FormulaPath::Auto => unreachable!(),
    };
    Ok(MomentResult {
        value: pv.value,
        path: resolved,
        err_estimate: pv.err,
    })
}

/// E{(X−μ)^ν}: the raw moment of the centered distribution, so every raw
/// route is available; `auto` picks the integer form or the closed Γ form.
/// Odd integer orders return exactly 0 through the integer path.
pub fn central_moment(
    p: &NormalParams,
    nu: f64,
    path: FormulaPath,
) -> Result<MomentResult, MomentError> {
    check_order(nu)?;
    let resolved = match path {
        FormulaPath::Auto => {
            if integer_order(nu).is_some() {
                FormulaPath::Integer
            } else {
                FormulaPath::GammaForm
            }
        }
        other => other,
    };
    raw_moment(&p.centered(), nu, resolved)
}

/// E{|X|^ν}: strictly positive real, symmetric in μ.
pub fn raw_abs_moment(p: &NormalParams, nu: f64) -> Result<MomentResult, MomentError> {
    check_order(nu)?;
    let pv = abs_gamma_form(p, nu, false)?;
    Ok(MomentResult {
        value: pv.value,
        path: FormulaPath::GammaForm,
        err_estimate: pv.err,
    })
}

/// E{|X−μ|^ν}: strictly positive real, independent of μ.
pub fn central_abs_moment(p: &NormalParams, nu: f64) -> Result<MomentResult, MomentError> {
    check_order(nu)?;
    let pv = abs_gamma_form(p, nu, true)?;
    Ok(MomentResult {
        value: pv.value,
        path: FormulaPath::GammaForm,
        err_estimate: pv.err,
    })
}

// ---------------------------------------------------------------------------
// consistency report
// ---------------------------------------------------------------------------

/// One evaluated route inside a [`ConsistencyReport`].
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyEntry {
    pub kind: MomentKind,
    pub path: FormulaPath,
    pub result: MomentResult,
    /// Largest |value − other| against the other routes of the same
    /// comparison group.
    pub max_abs_deviation: f64,
}

/// All redundant routes evaluated side by side.
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub entries: Vec<ConsistencyEntry>,
    /// Largest pairwise deviation across all comparison groups.
    pub max_deviation: f64,
    /// max(1, |values|); deviations are judged relative to this.
    pub scale: f64,
}

impl ConsistencyReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol * self.scale
    }
}

/// Evaluates every route valid for (p, ν) in all four families and reports
/// the pairwise deviations. Raw and central routes form one comparison group
/// when μ = 0 (they must then coincide), and likewise for the absolute
/// families.
pub fn consistency_report(p: &NormalParams, nu: f64) -> Result<ConsistencyReport, MomentError> {
    check_order(nu)?;
    let integer = integer_order(nu).is_some();
    let at_zero = p.mu == 0.0;

    // (kind, path, value, group id)
    let mut raw_paths = vec![FormulaPath::Pcf, FormulaPath::PhiPair, FormulaPath::Psi];
    if integer {
        raw_paths.push(FormulaPath::Integer);
    }
    if at_zero {
        raw_paths.push(FormulaPath::GammaForm);
    }
    let mut central_paths = vec![
        FormulaPath::Pcf,
        FormulaPath::PhiPair,
        FormulaPath::Psi,
        FormulaPath::GammaForm,
    ];
    if integer {
        central_paths.push(FormulaPath::Integer);
    }

    let mut entries: Vec<(ConsistencyEntry, u8)> = Vec::new();
    for path in raw_paths {
        let result = raw_moment(p, nu, path)?;
        let group = if at_zero { 0 } else { 1 };
        entries.push((
            ConsistencyEntry {
                kind: MomentKind::Raw,
                path,
                result,
                max_abs_deviation: 0.0,
            },
            group,
        ));
    }
    for path in central_paths {
        let result = central_moment(p, nu, path)?;
        entries.push((
            ConsistencyEntry {
                kind: MomentKind::Central,
                path,
                result,
                max_abs_deviation: 0.0,
            },
            0,
        ));
    }
    for (kind, about_mean, group) in [
        (MomentKind::RawAbs, false, if at_zero { 2 } else { 3 }),
        (MomentKind::CentralAbs, true, 2),
    ] {
        let gamma_route = abs_gamma_form(p, nu, about_mean)?;
        let pcf_route = abs_pcf(p, nu, about_mean)?;
        for (path, pv) in [
            (FormulaPath::GammaForm, gamma_route),
            (FormulaPath::Pcf, pcf_route),
        ] {
            entries.push((
                ConsistencyEntry {
                    kind,
                    path,
                    result: MomentResult {
                        value: pv.value,
                        path,
                        err_estimate: pv.err,
                    },
                    max_abs_deviation: 0.0,
                },
                group,
            ));
        }
    }

    let mut max_deviation = 0.0_f64;
    let mut scale = 1.0_f64;
    for i in 0..entries.len() {
        scale = scale.max(entries[i].0.result.value.norm());
        let mut worst = 0.0_f64;
        for j in 0..entries.len() {
            if i != j && entries[i].1 == entries[j].1 {
                let dev = (entries[i].0.result.value - entries[j].0.result.value).norm();
                worst = worst.max(dev);
            }
        }
        entries[i].0.max_abs_deviation = worst;
        max_deviation = max_deviation.max(worst);
    }

    Ok(ConsistencyReport {
        entries: entries.into_iter().map(|(e, _)| e).collect(),
        max_deviation,
        scale,
    })
}

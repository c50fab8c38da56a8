//! Special functions: Γ, 1/Γ, rising and double factorials, Kummer's Φ,
//! Tricomi's Ψ and the parabolic cylinder function D_ν.
//!
//! All functions work in `f64`. Poles of Γ are handled through
//! [`recip_gamma`], which returns an exact 0 at nonpositive integers so that
//! coefficient terms such as `√(2π)/Γ(−ν/2)` vanish exactly at integer `ν`
//! instead of surviving as large/large cancellation noise.
//!
//! Complex values only arise from principal-branch powers of negative reals
//! (`z^{1−γ}` in Ψ, powers of `jσ` in the moment formulas) and from D_ν on the
//! imaginary axis; see [`branch`].

use core::fmt;

mod branch;
mod gamma;
mod hyper;
mod parabolic;

pub use branch::{cos_pi, imag_scaled_pow, real_pow, sin_pi};
pub use gamma::{double_factorial, gamma, recip_gamma, rising_factorial};
pub use hyper::{kummer_phi, tricomi_psi};
pub use parabolic::parabolic_cylinder_d;

pub(crate) use branch::unit_phase_pi;
pub(crate) use gamma::odd_double_factorial_exact;
pub(crate) use hyper::{kummer_phi_detail, tricomi_psi_detail};
pub(crate) use parabolic::parabolic_cylinder_d_detail;

/// Series arguments beyond this magnitude would push `e^z` out of `f64`
/// range; they are rejected rather than evaluated inaccurately.
pub const MAX_SERIES_ARG: f64 = 700.0;

/// Truncation policy for the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once the estimated series tail drops below this fraction of the
    /// partial sum.
    pub rel_tolerance: f64,
    /// Hard cap on the number of summed terms.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-16,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    /// Control sized for the largest argument accepted by [`MAX_SERIES_ARG`]:
    /// the positive-argument series needs roughly `z + 9√z` terms, so 1400
    /// covers `z = 700` with margin. Used internally by the functions that
    /// take no explicit control.
    pub(crate) fn full_domain() -> Self {
        Self {
            rel_tolerance: 1e-16,
            max_terms: 1400,
        }
    }

    fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.rel_tolerance > 0.0) || self.max_terms == 0 {
            return Err(SpecFunError::InvalidControl);
        }
        Ok(())
    }
}

/// Errors from special-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecFunError {
    /// Γ evaluated at a nonpositive integer.
    GammaPole { arg: f64 },
    /// Result magnitude exceeds `f64` range.
    Overflow { what: &'static str },
    /// Series did not converge within the term budget.
    NoConvergence { what: &'static str, terms: usize },
    /// Argument outside the supported domain.
    Domain { what: &'static str },
    /// Malformed [`SeriesControl`].
    InvalidControl,
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GammaPole { arg } => write!(f, "gamma pole at nonpositive integer {arg}"),
            Self::Overflow { what } => write!(f, "{what} exceeds f64 range"),
            Self::NoConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Self::Domain { what } => write!(f, "{what}"),
            Self::InvalidControl => {
                write!(f, "series control requires rel_tolerance > 0 and max_terms >= 1")
            }
        }
    }
}

impl std::error::Error for SpecFunError {}

/// True when `x` is a nonpositive integer (exact check, no tolerance).
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.trunc()
}

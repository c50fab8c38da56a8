//! Moments and absolute moments of the normal distribution.
//!
//! For `X ~ N(μ, σ²)` and any real order `ν > −1` this crate evaluates the
//! four moment families
//!
//! - raw moments `E{X^ν}`,
//! - central moments `E{(X−μ)^ν}`,
//! - raw absolute moments `E{|X|^ν}`,
//! - central absolute moments `E{|X−μ|^ν}`,
//!
//! through closed forms built on the confluent hypergeometric functions Φ
//! (Kummer) and Ψ (Tricomi) and the parabolic cylinder function `D_ν`. For
//! fractional `ν` the raw and central moments are complex; powers of negative
//! reals are taken on the principal branch, `x^ν = |x|^ν e^{jπν}` for `x < 0`.
//!
//! Every closed form is backed by an independent oracle ([`oracle`]): adaptive
//! Gauss–Kronrod quadrature of the defining expectation and seeded Monte Carlo
//! sampling. The redundant formula routes cross-check each other through
//! [`moments::consistency_report`].

pub mod moments;
pub mod oracle;
pub mod record;
pub mod specfun;

pub use num_complex::Complex64;

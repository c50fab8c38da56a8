//! Gamma function Γ(x) ≜ ∫₀^∞ t^{x−1} e^{−t} dt and relatives.
//!
//! Γ uses a Lanczos approximation in partial-fraction form with g = 607/128
//! and 15 coefficients, reflected through `Γ(x)Γ(1−x) = π/sin(πx)` for
//! x < 1/2. Measured relative error is below 2e-15 for x ≥ 1/2 and below
//! 1e-13 across [−170, 170] away from the poles.

use super::{is_nonpositive_integer, SpecFunError};
use crate::specfun::branch::sin_pi;

/// Lanczos parameter g = 607/128.
const LANCZOS_G: f64 = 4.7421875;

/// Partial-fraction Lanczos coefficients for g = 607/128, 15 terms
/// (Godfrey's method: interpolation of the scaled Γ at the integers 0..14,
/// solved in 80-digit arithmetic).
const LANCZOS_COEFFS: [f64; 15] = [
    0.9999999999999971,
    57.15623566586292,
    -59.59796035547549,
    14.136097974741746,
    -0.4919138160976202,
    3.399464998481189e-5,
    4.652362892704858e-5,
    -9.837447530487956e-5,
    1.580887032249125e-4,
    -2.1026444172410488e-4,
    2.1743961811521265e-4,
    -1.643181065367639e-4,
    8.441822398385275e-5,
    -2.6190838401581408e-5,
    3.6899182659531625e-6,
];

const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// Lanczos core, no pole or finiteness checks.
fn lanczos_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x) = π / (sin(πx) Γ(1−x))
        return std::f64::consts::PI / (sin_pi(x) * lanczos_gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    // split the power so intermediates stay representable up to Γ(171.6)
    let p = w.powf(0.5 * (z + 0.5));
    SQRT_TWO_PI * sum * p * (p * (-w).exp())
}

/// Γ(x) for real x away from the poles at 0, −1, −2, …
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "gamma requires a finite argument",
        });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::GammaPole { arg: x });
    }
    let value = lanczos_gamma(x);
    if value.is_infinite() {
        return Err(SpecFunError::Overflow { what: "gamma" });
    }
    Ok(value)
}

/// 1/Γ(x), entire in x: returns exactly 0 at the nonpositive integers.
///
/// Total on finite reals; the moment formulas rely on the exact zeros so
/// that vanishing coefficient terms vanish exactly.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / lanczos_gamma(x)
    } else {
        // reflected directly to avoid the intermediate huge/tiny Γ(x)
        sin_pi(x) * lanczos_gamma(1.0 - x) / std::f64::consts::PI
    }
}

/// Rising factorial z⁽ⁿ⁾ = z(z+1)···(z+n−1); empty product 1 for n = 0.
pub fn rising_factorial(z: f64, n: u32) -> Result<f64, SpecFunError> {
    let mut product = 1.0_f64;
    for k in 0..n {
        product *= z + k as f64;
    }
    if product.is_finite() {
        Ok(product)
    } else {
        Err(SpecFunError::Overflow {
            what: "rising_factorial",
        })
    }
}

/// Double factorial generalized through Γ: z!! = √(2^{z+1}/π) Γ(z/2 + 1).
///
/// Agrees with the product z·(z−2)···3·1 for odd positive integers. At even
/// integers this continuation differs from the combinatorial even double
/// factorial (z = 0 gives √(2/π), not 1); the Γ form is the one the moment
/// formulas are built on and is what this function returns.
pub fn double_factorial(z: f64) -> Result<f64, SpecFunError> {
    if !(z > -2.0) {
        return Err(SpecFunError::Domain {
            what: "double_factorial requires z > -2",
        });
    }
    let g = gamma(z / 2.0 + 1.0)?;
    let value = (2.0_f64.powf(z + 1.0) / std::f64::consts::PI).sqrt() * g;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(SpecFunError::Overflow {
            what: "double_factorial",
        })
    }
}

/// (n−1)!! as an exact small-integer product: 1 for n ∈ {0, 1}, otherwise
/// (n−1)(n−3)···. Used by the integer fast paths, where n−1 is odd.
pub(crate) fn odd_double_factorial_exact(n_minus_1: i64) -> f64 {
    let mut product = 1.0_f64;
    let mut k = n_minus_1;
    while k >= 3 {
        product *= k as f64;
        k -= 2;
    }
    product
}

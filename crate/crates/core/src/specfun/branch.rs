//! Principal-branch complex powers and argument-reduced circular functions.
//!
//! The branch convention used throughout the crate: `z^w = exp(w · Log z)`
//! with `Log` the principal logarithm (argument in (−π, π]). Concretely,
//! for x < 0 this makes `x^ν = |x|^ν e^{jπν}` and `(jσ)^ν = σ^ν e^{jπν/2}`
//! for σ > 0.

use num_complex::Complex64;

/// sin(πx) with exact argument reduction: exactly 0 at integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = (x + 0.5).floor();
    let r = x - n; // exact for |x| < 2^52
    let s = (std::f64::consts::PI * r).sin();
    if (n * 0.5).fract() == 0.0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact argument reduction: exactly 0 at half-integers,
/// exactly ±1 at integers.
pub fn cos_pi(x: f64) -> f64 {
    let n = (x + 0.5).floor();
    let r = x - n; // r ∈ [−0.5, 0.5)
    let c = if r == -0.5 {
        0.0
    } else {
        (std::f64::consts::PI * r).cos()
    };
    if (n * 0.5).fract() == 0.0 {
        c
    } else {
        -c
    }
}

/// e^{jπx} as (cos πx, sin πx), exact on the axes.
pub(crate) fn unit_phase_pi(x: f64) -> Complex64 {
    Complex64::new(cos_pi(x), sin_pi(x))
}

/// x^w on the principal branch; complex (argument π) for x < 0.
pub fn real_pow(x: f64, w: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.powf(w), 0.0)
    } else {
        unit_phase_pi(w).scale((-x).powf(w))
    }
}

/// (j·s)^w for s > 0 on the principal branch: s^w e^{jπw/2}.
pub fn imag_scaled_pow(s: f64, w: f64) -> Complex64 {
    debug_assert!(s > 0.0);
    unit_phase_pi(0.5 * w).scale(s.powf(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reduced_trig_is_exact_on_the_lattice() {
        for n in -8i32..=8 {
            assert_eq!(sin_pi(n as f64), 0.0);
            assert_eq!(cos_pi(n as f64).abs(), 1.0);
            assert_eq!(cos_pi(n as f64 + 0.5), 0.0);
        }
        assert_eq!(cos_pi(3.0), -1.0);
        assert_eq!(cos_pi(4.0), 1.0);
        assert_relative_eq!(sin_pi(0.25), std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(sin_pi(10.5), 1.0, max_relative = 1e-15);
        assert_relative_eq!(cos_pi(-1.0 / 3.0), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn negative_base_powers_take_the_upper_branch() {
        // (−1)^{1/2} = j
        let v = real_pow(-1.0, 0.5);
        assert!(v.re.abs() < 1e-16);
        assert_relative_eq!(v.im, 1.0, max_relative = 1e-15);
        // (−2)^3 = −8 with zero imaginary part exactly
        let v = real_pow(-2.0, 3.0);
        assert_relative_eq!(v.re, -8.0, max_relative = 1e-15);
        assert_eq!(v.im, 0.0);
        // matches exp(w Log z) from the complex library
        let z = Complex64::new(-1.37, 0.0);
        for &w in &[0.5, 1.7, -0.3, 2.25] {
            let ours = real_pow(-1.37, w);
            let lib = (z.ln() * w).exp();
            assert_relative_eq!(ours.re, lib.re, max_relative = 1e-13, epsilon = 1e-14);
            assert_relative_eq!(ours.im, lib.im, max_relative = 1e-13, epsilon = 1e-14);
        }
    }

    #[test]
    fn imaginary_scaled_powers() {
        // (j·2)^2 = −4
        let v = imag_scaled_pow(2.0, 2.0);
        assert_relative_eq!(v.re, -4.0, max_relative = 1e-15);
        assert_eq!(v.im, 0.0);
        // (j)^{0.5} = e^{jπ/4}
        let v = imag_scaled_pow(1.0, 0.5);
        assert_relative_eq!(v.re, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(v.im, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-15);
    }
}

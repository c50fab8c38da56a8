//! Property tests over the special functions and moment routes.

use normal_moments::moments::{
    central_moment, raw_abs_moment, raw_moment, FormulaPath, NormalParams,
};
use normal_moments::specfun::{
    cos_pi, gamma, imag_scaled_pow, kummer_phi, real_pow, recip_gamma, rising_factorial, sin_pi,
    SeriesControl,
};
use normal_moments::Complex64;
use proptest::prelude::*;

/// Direct f64 summation of the defining series, no transformation. Only
/// trustworthy while the alternating cancellation stays mild (|z| ≲ 4).
fn phi_series_direct(alpha: f64, gamma_param: f64, z: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 0..200 {
        let nf = n as f64;
        term *= (alpha + nf) / (gamma_param + nf) * z / (nf + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn far_from_poles(gamma_param: f64) -> bool {
    gamma_param > 0.0 || (gamma_param - gamma_param.round()).abs() > 1e-3
}

proptest! {
    // Φ(α, γ; z) = e^z Φ(γ−α, γ; −z)
    #[test]
    fn kummer_transformation(alpha in -3.0..3.0f64, gamma_param in 0.05..5.0f64, z in -20.0..20.0f64) {
        let ctl = SeriesControl::default();
        let left = kummer_phi(alpha, gamma_param, z, ctl).unwrap();
        let right = z.exp() * kummer_phi(gamma_param - alpha, gamma_param, -z, ctl).unwrap();
        prop_assert!((left - right).abs() <= 1e-12 * left.abs().max(right.abs()).max(1e-300));
    }

    // the transformed evaluation agrees with the raw defining series where
    // the latter is numerically trustworthy
    #[test]
    fn phi_matches_direct_series_for_small_arguments(
        alpha in -3.0..3.0f64,
        gamma_param in 0.3..5.0f64,
        z in -4.0..0.0f64,
    ) {
        let direct = phi_series_direct(alpha, gamma_param, z);
        let transformed = kummer_phi(alpha, gamma_param, z, SeriesControl::default()).unwrap();
        prop_assert!(
            (direct - transformed).abs() <= 1e-11 * direct.abs().max(transformed.abs()).max(1.0),
            "direct {direct}, transformed {transformed}"
        );
    }

    #[test]
    fn recip_gamma_inverts_gamma(x in -50.0..50.0f64) {
        prop_assume!(far_from_poles(x) && x.abs() > 1e-3);
        let product = recip_gamma(x) * gamma(x).unwrap();
        prop_assert!((product - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rising_factorial_recurrence(z in -30.0..30.0f64, n in 0u32..40) {
        let left = rising_factorial(z, n + 1).unwrap();
        let right = rising_factorial(z, n).unwrap() * (z + n as f64);
        prop_assert_eq!(left.to_bits(), right.to_bits());
    }

    // Γ(x+1) = x Γ(x)
    #[test]
    fn gamma_recurrence(x in 0.05..60.0f64) {
        let left = gamma(x + 1.0).unwrap();
        let right = x * gamma(x).unwrap();
        prop_assert!((left - right).abs() <= 1e-12 * left.abs());
    }

    #[test]
    fn abs_moment_symmetry_and_scaling(
        mu in -5.0..5.0f64,
        sigma in 0.2..4.0f64,
        nu in -0.9..6.0f64,
        a in 0.2..5.0f64,
    ) {
        let base = raw_abs_moment(&NormalParams::new(mu, sigma).unwrap(), nu).unwrap();
        let mirrored = raw_abs_moment(&NormalParams::new(-mu, sigma).unwrap(), nu).unwrap();
        prop_assert!(
            (base.value.re - mirrored.value.re).abs() <= 1e-14 * base.value.re.abs()
        );
        prop_assert!(base.value.re > 0.0 && base.value.im == 0.0);

        let scaled = raw_abs_moment(&NormalParams::new(a * mu, a * sigma).unwrap(), nu).unwrap();
        prop_assert!(
            (scaled.value.re - a.powf(nu) * base.value.re).abs()
                <= 1e-12 * scaled.value.re.abs()
        );
    }

    // raw moments of the centered distribution are central moments,
    // bit for bit, through every shared route
    #[test]
    fn translation_bitwise(sigma in 0.2..4.0f64, nu in -0.9..6.0f64, mu in -5.0..5.0f64) {
        for path in [FormulaPath::Pcf, FormulaPath::PhiPair, FormulaPath::Psi, FormulaPath::GammaForm] {
            let raw = raw_moment(&NormalParams::new(0.0, sigma).unwrap(), nu, path).unwrap();
            let central = central_moment(&NormalParams::new(mu, sigma).unwrap(), nu, path).unwrap();
            prop_assert_eq!(raw.value.re.to_bits(), central.value.re.to_bits());
            prop_assert_eq!(raw.value.im.to_bits(), central.value.im.to_bits());
        }
    }

    // principal-branch powers against the complex library's exp(w Log z)
    #[test]
    fn principal_powers_match_complex_log(x in 0.01..8.0f64, w in -3.0..3.0f64) {
        let ours = real_pow(-x, w);
        let lib = (Complex64::new(-x, 0.0).ln() * w).exp();
        prop_assert!((ours - lib).norm() <= 1e-12 * ours.norm().max(1.0));

        let ours = imag_scaled_pow(x, w);
        let lib = (Complex64::new(0.0, x).ln() * w).exp();
        prop_assert!((ours - lib).norm() <= 1e-12 * ours.norm().max(1.0));
    }

    #[test]
    fn reduced_trig_matches_naive_for_moderate_arguments(x in -20.0..20.0f64) {
        let pi_x = std::f64::consts::PI * x;
        prop_assert!((sin_pi(x) - pi_x.sin()).abs() <= 1e-13);
        prop_assert!((cos_pi(x) - pi_x.cos()).abs() <= 1e-13);
    }

    #[test]
    fn record_numbers_round_trip(bits in any::<u64>()) {
        let v = f64::from_bits(bits);
        prop_assume!(v.is_finite());
        let parsed: f64 = normal_moments::record::format_f64(v).parse().unwrap();
        prop_assert_eq!(parsed.to_bits(), v.to_bits());
    }

    // conjugation is an involution and complex arithmetic keeps values finite
    #[test]
    fn conjugation_involution(re in -1e6..1e6f64, im in -1e6..1e6f64) {
        let z = Complex64::new(re, im);
        let back = z.conj().conj();
        prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
        prop_assert_eq!(back.im.to_bits(), z.im.to_bits());
    }
}

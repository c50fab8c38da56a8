//! Parabolic cylinder function D_ν(z) through Kummer's Φ:
//!
//! D_ν(z) = 2^{ν/2} e^{−z²/4} [ √π/Γ((1−ν)/2) · Φ(−ν/2, 1/2; z²/2)
//!                            − √(2π) z/Γ(−ν/2) · Φ((1−ν)/2, 3/2; z²/2) ].
//!
//! Supported arguments are real or purely imaginary z, which keeps z²/2 real
//! (nonnegative on the real axis, nonpositive on the imaginary axis) and the
//! whole evaluation in real arithmetic apart from the single factor z.

use num_complex::Complex64;

use super::hyper::kummer_phi_detail;
use super::{SeriesControl, SpecFunError, MAX_SERIES_ARG};
use crate::specfun::recip_gamma;

const SQRT_PI: f64 = 1.7724538509055160;
const SQRT_TWO_PI: f64 = 2.5066282746310002;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PcdEval {
    pub value: Complex64,
    pub err_bound: f64,
}

pub(crate) fn parabolic_cylinder_d_detail(
    nu: f64,
    z: Complex64,
) -> Result<PcdEval, SpecFunError> {
    let on_real_axis = z.im == 0.0;
    let on_imag_axis = z.re == 0.0;
    if !on_real_axis && !on_imag_axis {
        return Err(SpecFunError::Domain {
            what: "parabolic_cylinder_d requires z on the real or imaginary axis",
        });
    }
    // z²/2, real on both axes
    let half_sq = if on_real_axis {
        0.5 * z.re * z.re
    } else {
        -0.5 * z.im * z.im
    };
    if half_sq.abs() > MAX_SERIES_ARG {
        return Err(SpecFunError::Domain {
            what: "parabolic_cylinder_d requires |z|^2/2 <= 700",
        });
    }
    let ctl = SeriesControl::full_domain();
    let weight_a = SQRT_PI * recip_gamma((1.0 - nu) / 2.0);
    let weight_b = SQRT_TWO_PI * recip_gamma(-nu / 2.0);
    let prefactor = 2.0_f64.powf(0.5 * nu) * (-0.5 * half_sq).exp();

    let mut bracket = Complex64::new(0.0, 0.0);
    let mut err = 0.0_f64;
    if weight_a != 0.0 {
        let phi_a = kummer_phi_detail(-nu / 2.0, 0.5, half_sq, ctl)?;
        bracket.re += weight_a * phi_a.value;
        err += weight_a.abs() * phi_a.err_bound;
    }
    if weight_b != 0.0 && (z.re != 0.0 || z.im != 0.0) {
        let phi_b = kummer_phi_detail((1.0 - nu) / 2.0, 1.5, half_sq, ctl)?;
        bracket -= z.scale(weight_b * phi_b.value);
        err += z.norm() * weight_b.abs() * phi_b.err_bound;
    }
    let value = bracket.scale(prefactor);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(SpecFunError::Overflow {
            what: "parabolic_cylinder_d",
        });
    }
    Ok(PcdEval {
        value,
        err_bound: prefactor * err + 5.0 * f64::EPSILON * value.norm(),
    })
}

/// D_ν(z) for z on the real or imaginary axis with |z|²/2 ≤ 700.
pub fn parabolic_cylinder_d(nu: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    parabolic_cylinder_d_detail(nu, z).map(|e| e.value)
}

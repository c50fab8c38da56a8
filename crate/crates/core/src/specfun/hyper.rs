//! Confluent hypergeometric functions.
//!
//! Kummer's function is summed as the defining series
//! Φ(α, γ; z) = Σₙ (α⁽ⁿ⁾/γ⁽ⁿ⁾) zⁿ/n!. Negative arguments always go through
//! the Kummer transformation Φ(α, γ; z) = e^z Φ(γ−α, γ; −z) first: for the
//! parameter families used by the moment formulas (γ−α = (1+ν)/2 > 0 when
//! ν > −1) the transformed series has nonnegative terms, so the alternating
//! cancellation of the direct series never occurs.
//!
//! Tricomi's function is the two-term combination
//! Ψ(α, γ; z) = Γ(1−γ)/Γ(α−γ+1) Φ(α, γ; z)
//!            + Γ(γ−1)/Γ(α) z^{1−γ} Φ(α−γ+1, 2−γ; z),
//! complex for z < 0 through the principal branch of z^{1−γ}.

use num_complex::Complex64;

use super::branch::real_pow;
use super::gamma::{gamma, recip_gamma};
use super::{is_nonpositive_integer, SeriesControl, SpecFunError, MAX_SERIES_ARG};

/// Series value with an engineering error bound.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesEval {
    pub value: f64,
    /// Truncation tail estimate plus a roundoff term; not a proof.
    pub err_bound: f64,
    pub terms: usize,
}

/// Direct summation for z ≥ 0.
fn phi_series(
    alpha: f64,
    gamma_param: f64,
    z: f64,
    ctl: SeriesControl,
) -> Result<SeriesEval, SpecFunError> {
    debug_assert!(z >= 0.0);
    let mut sum = 1.0_f64;
    let mut abs_sum = 1.0_f64;
    let mut term = 1.0_f64;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (alpha + nf) / (gamma_param + nf) * z / (nf + 1.0);
        sum += term;
        abs_sum += term.abs();
        if !sum.is_finite() {
            return Err(SpecFunError::Overflow { what: "kummer_phi" });
        }
        if term == 0.0 {
            // terminating (polynomial) case
            return Ok(SeriesEval {
                value: sum,
                err_bound: f64::EPSILON * abs_sum,
                terms: n + 1,
            });
        }
        // Ratio of the next term to this one; only trust the tail bound
        // once the terms are decreasing.
        let ratio = ((alpha + nf + 1.0) / (gamma_param + nf + 1.0) * z / (nf + 2.0)).abs();
        if ratio < 1.0 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            let floor = f64::EPSILON * abs_sum;
            if tail <= ctl.rel_tolerance * sum.abs() || tail <= floor {
                return Ok(SeriesEval {
                    value: sum,
                    err_bound: tail + floor,
                    terms: n + 1,
                });
            }
        }
    }
    Err(SpecFunError::NoConvergence {
        what: "kummer_phi",
        terms: ctl.max_terms,
    })
}

pub(crate) fn kummer_phi_detail(
    alpha: f64,
    gamma_param: f64,
    z: f64,
    ctl: SeriesControl,
) -> Result<SeriesEval, SpecFunError> {
    ctl.validate()?;
    if is_nonpositive_integer(gamma_param) {
        return Err(SpecFunError::GammaPole { arg: gamma_param });
    }
    if !z.is_finite() || z.abs() > MAX_SERIES_ARG {
        return Err(SpecFunError::Domain {
            what: "kummer_phi requires |z| <= 700",
        });
    }
    if z < 0.0 {
        // Kummer transformation: Φ(α, γ; z) = e^z Φ(γ−α, γ; −z)
        let inner = phi_series(gamma_param - alpha, gamma_param, -z, ctl)?;
        let scale = z.exp();
        return Ok(SeriesEval {
            value: scale * inner.value,
            err_bound: scale * inner.err_bound + f64::EPSILON * (scale * inner.value).abs(),
            terms: inner.terms,
        });
    }
    phi_series(alpha, gamma_param, z, ctl)
}

/// Kummer's confluent hypergeometric function Φ(α, γ; z) = ₁F₁(α; γ; z).
pub fn kummer_phi(
    alpha: f64,
    gamma_param: f64,
    z: f64,
    ctl: SeriesControl,
) -> Result<f64, SpecFunError> {
    kummer_phi_detail(alpha, gamma_param, z, ctl).map(|s| s.value)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PsiEval {
    pub value: Complex64,
    pub err_bound: f64,
}

pub(crate) fn tricomi_psi_detail(
    alpha: f64,
    gamma_param: f64,
    z: f64,
) -> Result<PsiEval, SpecFunError> {
    if z == 0.0 || !z.is_finite() {
        return Err(SpecFunError::Domain {
            what: "tricomi_psi requires finite nonzero z",
        });
    }
    if gamma_param == gamma_param.trunc() {
        return Err(SpecFunError::GammaPole {
            arg: gamma_param.min(2.0 - gamma_param),
        });
    }
    let ctl = SeriesControl::full_domain();
    let weight_a = gamma(1.0 - gamma_param)? * recip_gamma(alpha - gamma_param + 1.0);
    let weight_b = gamma(gamma_param - 1.0)? * recip_gamma(alpha);
    let mut result = Complex64::new(0.0, 0.0);
    let mut err = 0.0_f64;
    if weight_a != 0.0 {
        let phi_a = kummer_phi_detail(alpha, gamma_param, z, ctl)?;
        result += Complex64::new(weight_a * phi_a.value, 0.0);
        err += weight_a.abs() * phi_a.err_bound;
    }
    if weight_b != 0.0 {
        let phi_b = kummer_phi_detail(alpha - gamma_param + 1.0, 2.0 - gamma_param, z, ctl)?;
        let power = real_pow(z, 1.0 - gamma_param);
        result += power.scale(weight_b * phi_b.value);
        err += power.norm() * weight_b.abs() * phi_b.err_bound;
    }
    if result.re.is_finite() && result.im.is_finite() {
        Ok(PsiEval {
            value: result,
            err_bound: err + 5.0 * f64::EPSILON * result.norm(),
        })
    } else {
        Err(SpecFunError::Overflow { what: "tricomi_psi" })
    }
}

/// Tricomi's confluent hypergeometric function Ψ(α, γ; z) = U(α, γ, z).
///
/// Requires z ≠ 0 and non-integer γ (integer γ puts a Γ pole in one of the
/// two weights). The Γ reciprocals in the denominators go through
/// [`recip_gamma`], so a term whose denominator Γ is at a pole drops out
/// exactly. For z < 0 the factor z^{1−γ} makes the result complex.
pub fn tricomi_psi(alpha: f64, gamma_param: f64, z: f64) -> Result<Complex64, SpecFunError> {
    tricomi_psi_detail(alpha, gamma_param, z).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn phi_at_zero_is_one_exactly() {
        for &(a, g) in &[(0.3, 0.5), (-1.7, 1.5), (4.0, 0.25)] {
            assert_eq!(kummer_phi(a, g, 0.0, ctl()).unwrap(), 1.0);
        }
    }

    #[test]
    fn phi_collapses_to_exp_when_parameters_match() {
        assert_relative_eq!(
            kummer_phi(1.0, 1.0, 2.0, ctl()).unwrap(),
            7.38905609893065,
            max_relative = 1e-15
        );
    }

    // Reference values from 60-digit term-by-term summation of the series.
    #[test]
    fn phi_matches_high_precision_reference() {
        let table = [
            (-0.5, 0.5, -2.0, 2.5279113098818291),
            (-2.5, 0.5, 3.0, 3.3930097980128707),
            (0.25, 1.5, -7.5, 0.58550105102995133),
            (3.2, 4.1, 12.3, 55080.332349718640),
            (-0.85, 0.5, -18.0, 23.590880978254104),
            (2.65, 0.5, 18.0, 47047190914.235705),
        ];
        for (a, g, z, want) in table {
            assert_relative_eq!(
                kummer_phi(a, g, z, ctl()).unwrap(),
                want,
                max_relative = 1e-13
            );
        }
        // large positive argument needs the bigger internal budget
        assert_relative_eq!(
            kummer_phi(0.75, 1.5, 300.0, SeriesControl::full_domain()).unwrap(),
            1.9500112650532048e128,
            max_relative = 1e-13
        );
    }

    #[test]
    fn phi_error_paths() {
        assert_eq!(
            kummer_phi(0.5, 0.0, 1.0, ctl()),
            Err(SpecFunError::GammaPole { arg: 0.0 })
        );
        assert_eq!(
            kummer_phi(0.5, -2.0, 1.0, ctl()),
            Err(SpecFunError::GammaPole { arg: -2.0 })
        );
        assert!(matches!(
            kummer_phi(0.5, 0.5, 701.0, ctl()),
            Err(SpecFunError::Domain { .. })
        ));
        let starved = SeriesControl {
            rel_tolerance: 1e-16,
            max_terms: 3,
        };
        assert_eq!(
            kummer_phi(0.5, 0.5, 30.0, starved),
            Err(SpecFunError::NoConvergence {
                what: "kummer_phi",
                terms: 3
            })
        );
        assert_eq!(
            kummer_phi(0.5, 0.5, 1.0, SeriesControl { rel_tolerance: 0.0, max_terms: 10 }),
            Err(SpecFunError::InvalidControl)
        );
    }

    #[test]
    fn phi_reports_a_usable_error_bound() {
        let detail = kummer_phi_detail(-0.85, 0.5, -18.0, ctl()).unwrap();
        let err = (detail.value - 23.590880978254104_f64).abs();
        assert!(detail.err_bound > 0.0);
        assert!(err <= detail.err_bound * 10.0 + 1e-13 * detail.value.abs());
    }

    // Reference values from the two-term combination evaluated in 60-digit
    // arithmetic on the principal branch.
    #[test]
    fn psi_matches_high_precision_reference() {
        let v = tricomi_psi(-0.5, 0.5, 1.0).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-13);
        assert_eq!(v.im, 0.0);

        let v = tricomi_psi(1.3, 0.7, 2.5).unwrap();
        assert_relative_eq!(v.re, 0.17856320541310631, max_relative = 1e-13);
        assert_eq!(v.im, 0.0);

        let v = tricomi_psi(-0.75, 0.5, -3.0).unwrap();
        assert_relative_eq!(v.re, -1.7177266539119494, max_relative = 1e-13);
        assert_relative_eq!(v.im, 1.7162735541888306, max_relative = 1e-13);

        let v = tricomi_psi(-1.25, 0.5, -4.5).unwrap();
        assert_relative_eq!(v.re, -5.5926926206886572, max_relative = 1e-13);
        assert_relative_eq!(v.im, -5.5925910189972272, max_relative = 1e-13);
    }

    // α = −1 puts the second weight at 1/Γ(−1) = 0 exactly; the imaginary
    // part from z^{1−γ} drops with it and the value is the rational −5/2.
    #[test]
    fn psi_vanishing_weight_is_real() {
        let v = tricomi_psi(-1.0, 0.5, -2.0).unwrap();
        assert_relative_eq!(v.re, -2.5, max_relative = 5e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn psi_real_for_positive_argument() {
        for &(a, g, z) in &[(-0.3, 0.5, 2.0), (1.7, 0.25, 5.5), (-2.2, 1.5, 0.75)] {
            let v = tricomi_psi(a, g, z).unwrap();
            assert!(
                v.im.abs() <= 1e-14 * v.re.abs().max(1.0),
                "psi({a},{g},{z}) = {v}"
            );
        }
    }

    #[test]
    fn psi_error_paths() {
        assert!(matches!(
            tricomi_psi(-0.5, 0.5, 0.0),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            tricomi_psi(-0.5, 1.0, 1.0),
            Err(SpecFunError::GammaPole { .. })
        ));
        assert!(matches!(
            tricomi_psi(-0.5, -2.0, 1.0),
            Err(SpecFunError::GammaPole { .. })
        ));
    }
}

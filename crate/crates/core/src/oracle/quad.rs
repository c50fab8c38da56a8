//! Adaptive quadrature: 15-point Gauss–Kronrod panels with the embedded
//! 7-point Gauss error estimate, refined globally by always bisecting the
//! panel with the largest error estimate, plus a power-weighted variant for
//! ∫₀ x^ν g(x) dx that removes the endpoint singularity of ν ∈ (−1, 0)
//! through the substitution x = t^{1/(1+ν)} (under which x^ν dx = dt/(1+ν)
//! exactly).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Hard cap on the number of panel bisections per integration.
const MAX_SPLITS: u32 = 20_000;

// 15-point Kronrod abscissae (positive half), 7-point Gauss weights and
// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// GSL-style error rescaling: sharpen the raw |K − G| difference against the
/// scale of the integrand's variation, floored at the roundoff level.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if result_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / result_asc).powf(1.5);
        scaled = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * result_abs);
    }
    scaled
}

/// One 15-point Kronrod panel on [a, b]: (integral, error estimate, ∫|f|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut result_gauss = 0.0;
    let mut result_kronrod = f_center * WGK[7];
    let mut result_abs = result_kronrod.abs();
    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let y1 = f(center - dx);
        let y2 = f(center + dx);
        fv1[j] = y1;
        fv2[j] = y2;
        let sum = y1 + y2;
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * sum;
        }
        result_kronrod += WGK[j] * sum;
        result_abs += WGK[j] * (y1.abs() + y2.abs());
    }
    result_gauss += WG[3] * f_center;

    let mean = 0.5 * result_kronrod;
    let mut result_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (result_kronrod - result_gauss) * half;
    let value = result_kronrod * half;
    let resabs = result_abs * half.abs();
    if value.is_finite() {
        (value, rescale_error(err, resabs, result_asc * half.abs()), resabs)
    } else {
        (value, f64::INFINITY, resabs)
    }
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
    /// Set once the panel is too narrow to bisect in f64.
    frozen: bool,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Self {
        let (value, err, resabs) = gk15(f, a, b);
        Self {
            a,
            b,
            value,
            err,
            resabs,
            frozen: false,
        }
    }

    fn sort_err(&self) -> f64 {
        if self.frozen {
            -1.0 // frozen panels sink below every live one
        } else {
            self.err
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.sort_err() == other.sort_err()
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_err().total_cmp(&other.sort_err())
    }
}

/// Accumulated result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadResult {
    pub value: f64,
    pub err_bound: f64,
    pub evaluations: u64,
    /// True when the summed estimate met the target, or reached the f64
    /// roundoff floor of the estimator (~100·ε·∫|f|, below which further
    /// bisection cannot help). False only when the split budget ran out
    /// while refinement was still productive; `err_bound` stays honest
    /// either way.
    pub converged: bool,
}

impl QuadResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            err_bound: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

/// ∫_a^b f with an initial partition at `breaks` (clamped into (a, b)),
/// globally adaptive: the panel with the worst error estimate is bisected
/// until the summed estimate meets `abs_tol` or the budget runs out.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
) -> QuadResult {
    if !(b > a) {
        return QuadResult::zero();
    }
    let mut edges = vec![a];
    for &p in breaks {
        if p > a && p < b && p > *edges.last().unwrap() {
            edges.push(p);
        }
    }
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0_u64;
    let mut err_sum = 0.0_f64;
    let mut resabs_sum = 0.0_f64;
    for pair in edges.windows(2) {
        let panel = Panel::new(&f, pair[0], pair[1]);
        err_sum += panel.err;
        resabs_sum += panel.resabs;
        heap.push(panel);
        evaluations += 15;
    }

    let roundoff_floor = |resabs: f64| 100.0 * f64::EPSILON * resabs;
    let mut splits = 0_u32;
    while err_sum > abs_tol && err_sum > roundoff_floor(resabs_sum) && splits < MAX_SPLITS {
        let worst = heap.peek().expect("heap is never empty");
        if worst.frozen {
            break; // every remaining panel is unsplittable
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(Panel { frozen: true, ..worst });
            continue;
        }
        let left = Panel::new(&f, worst.a, mid);
        let right = Panel::new(&f, mid, worst.b);
        err_sum += left.err + right.err - worst.err;
        resabs_sum += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
        splits += 1;
    }

    // recompute the sums exactly; the incremental ones only drive the loop
    let err_bound = heap.iter().map(|p| p.err).sum::<f64>();
    let resabs = heap.iter().map(|p| p.resabs).sum::<f64>();
    QuadResult {
        value: heap.iter().map(|p| p.value).sum(),
        err_bound,
        evaluations,
        converged: err_bound <= abs_tol.max(roundoff_floor(resabs)),
    }
}

/// ∫_0^upper x^ν g(x) dx for ν > −1 with g bounded.
///
/// For ν < 0 the substitution x = t^{1/(1+ν)} absorbs the weight exactly and
/// the transformed integrand 1/(1+ν) · g(t^{1/(1+ν)}) is bounded; otherwise
/// the weight is integrated directly (its derivative kink at 0 for
/// fractional ν < 1 is handled by subdivision). `x_breaks` are hints in the
/// original variable.
pub(crate) fn power_weighted_with_breaks<F: Fn(f64) -> f64>(
    nu: f64,
    g: F,
    upper: f64,
    abs_tol: f64,
    x_breaks: &[f64],
) -> QuadResult {
    debug_assert!(nu > -1.0);
    if !(upper > 0.0) {
        return QuadResult::zero();
    }
    if nu < 0.0 {
        let p = 1.0 + nu;
        let inv_p = 1.0 / p;
        let t_upper = upper.powf(p);
        let t_breaks: Vec<f64> = x_breaks.iter().map(|&x| x.max(0.0).powf(p)).collect();
        let mut result = adaptive(|t| g(t.powf(inv_p)), 0.0, t_upper, &t_breaks, abs_tol * p);
        result.value *= inv_p;
        result.err_bound *= inv_p;
        result
    } else {
        adaptive(|x| x.powf(nu) * g(x), 0.0, upper, x_breaks, abs_tol)
    }
}

/// ∫_0^upper x^ν g(x) dx without partition hints.
#[cfg(test)]
pub(crate) fn power_weighted<F: Fn(f64) -> f64>(
    nu: f64,
    g: F,
    upper: f64,
    abs_tol: f64,
) -> QuadResult {
    power_weighted_with_breaks(nu, g, upper, abs_tol, &[])
}

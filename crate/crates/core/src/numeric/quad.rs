//! Quadrature rules.
//!
//! * [`gauss_kronrod15`] / [`adaptive_gauss_kronrod`]: globally adaptive
//!   7/15-point Gauss–Kronrod, used for running antiderivatives of smooth
//!   prescriptions.
//! * [`tanh_sinh`]: double-exponential rule for integrands with endpoint
//!   singularities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

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

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel. Returns the Kronrod estimate and
/// `|K15 - G7|` as a (conservative) error estimate.
pub fn gauss_kronrod15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

struct Queued(Panel);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest error first, ties resolved by position so the refinement
        // order never depends on heap internals
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// Globally adaptive Gauss–Kronrod. The panel with the largest error
/// estimate is bisected until the summed estimate drops below `abs_tol`.
/// Returns the accepted panels sorted by position.
pub fn adaptive_gauss_kronrod<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<Vec<Panel>> {
    let fail = Error::QuadratureFailure { a, b, tol: abs_tol };
    if a == b {
        return Ok(vec![Panel { a, b, value: 0.0, error: 0.0 }]);
    }
    let (value, error) = gauss_kronrod15(f, a, b);
    if !value.is_finite() {
        return Err(fail);
    }
    let mut heap = BinaryHeap::new();
    heap.push(Queued(Panel { a, b, value, error }));
    let mut total_error = error;
    while total_error > abs_tol {
        if heap.len() >= max_panels {
            return Err(fail);
        }
        let Queued(worst) = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(fail);
        }
        let (v1, e1) = gauss_kronrod15(f, worst.a, mid);
        let (v2, e2) = gauss_kronrod15(f, mid, worst.b);
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(fail);
        }
        total_error += e1 + e2 - worst.error;
        heap.push(Queued(Panel { a: worst.a, b: mid, value: v1, error: e1 }));
        heap.push(Queued(Panel { a: mid, b: worst.b, value: v2, error: e2 }));
        // guard against drift of the running sum
        if total_error <= abs_tol {
            total_error = heap.iter().map(|q| q.0.error).sum();
        }
    }
    let mut panels: Vec<Panel> = heap.into_iter().map(|q| q.0).collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(panels)
}

/// Convenience wrapper returning only the integral.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if b < a {
        return integrate(f, b, a, abs_tol).map(|v| -v);
    }
    let panels = adaptive_gauss_kronrod(f, a, b, abs_tol, 4000)?;
    Ok(panels.iter().map(|p| p.value).sum())
}

/// Tanh–sinh (double exponential) quadrature on a finite interval.
///
/// The integrand receives the abscissa; nodes whose value is not finite are
/// skipped when they sit within `1e-12` (relative) of an endpoint, which is
/// where rounding pushes the abscissa onto an integrable singularity.
pub fn tanh_sinh<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return tanh_sinh(f, b, a, tol).map(|v| -v);
    }
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: u32 = 11;
    const MIN_LEVEL: u32 = 3;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    let fail = Error::QuadratureFailure { a, b, tol };

    // contribution of the symmetric node pair at parameter t
    let pair = |t: f64| -> Option<f64> {
        let u = half_pi * t.sinh();
        let eu = u.exp();
        let emu = 1.0 / eu;
        // 1 - tanh(u), computed without cancellation
        let comp = 2.0 * emu / (eu + emu);
        let ch = 0.5 * (eu + emu);
        let w = half_pi * t.cosh() / (ch * ch);
        if w == 0.0 || comp == 0.0 {
            return Some(0.0);
        }
        let xl = a + d * comp;
        let xr = b - d * comp;
        let near_end = comp < 1e-12;
        let mut s = 0.0;
        for x in [xl, xr] {
            let y = f(x);
            if y.is_finite() {
                s += y;
            } else if !near_end {
                return None;
            }
        }
        Some(w * s)
    };

    let f0 = f(c);
    if !f0.is_finite() {
        return Err(fail);
    }
    let mut sum = half_pi * f0;
    let mut h = 1.0;
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        sum += pair(k as f64 * h).ok_or_else(|| fail.clone())?;
        k += 1;
    }
    let mut estimate = d * h * sum;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1u64;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            sum += pair(t).ok_or_else(|| fail.clone())?;
            k += 2;
        }
        let next = d * h * sum;
        let delta = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && delta <= tol.max(1e-15 * estimate.abs()) {
            return Ok(estimate);
        }
    }
    Err(fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_is_exact_for_polynomials() {
        let (v, e) = gauss_kronrod15(&|x: f64| x.powi(9) - 3.0 * x * x, -1.0, 2.0);
        let exact = (2f64.powi(10) - 1.0) / 10.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
        assert!(e < 1e-10);
    }

    #[test]
    fn adaptive_handles_integrable_endpoint_singularity() {
        let v = integrate(&|x: f64| 1.0 / x.sqrt(), 0.0, 4.0, 1e-10).unwrap();
        assert!((v - 4.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn adaptive_reports_divergence() {
        assert!(matches!(
            integrate(&|x: f64| 1.0 / x, 0.0, 1.0, 1e-10),
            Err(Error::QuadratureFailure { .. })
        ));
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let v = tanh_sinh(&|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11, "{v}");
        let v = tanh_sinh(&|x: f64| x.exp(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
        let v = tanh_sinh(&|x: f64| x.ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v + 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn reversed_bounds_negate() {
        let f = |x: f64| x.cos();
        let a = tanh_sinh(&f, 0.0, 1.0, 1e-13).unwrap();
        let b = tanh_sinh(&f, 1.0, 0.0, 1e-13).unwrap();
        assert_eq!(a, -b);
        assert_eq!(integrate(&f, 0.0, 1.0, 1e-13).unwrap(), -integrate(&f, 1.0, 0.0, 1e-13).unwrap());
    }
}

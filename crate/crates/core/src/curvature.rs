//! Curvatures of a rotational surface read off its momentum, and the
//! coupling between mean and Gauss curvature prescriptions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::momentum::{Antiderivative, Domain, Momentum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub x: f64,
    pub k_m: f64,
    pub k_p: f64,
    pub h: f64,
    pub k_g: f64,
}

impl CurvatureSample {
    pub fn from_principal(x: f64, k_m: f64, k_p: f64) -> Self {
        CurvatureSample { x, k_m, k_p, h: (k_m + k_p) / 2.0, k_g: k_m * k_p }
    }
}

/// `(k_m, k_p) = (K'(x), K(x)/x)`. On the axis `k_p` is replaced by its
/// limit `K'(0)`, which exists only when `K(0) = 0`.
pub fn principal_curvatures(m: &Momentum, x: f64) -> Result<(f64, f64)> {
    let d = m.domain();
    if !d.contains(x) {
        return Err(Error::DomainViolation { x, reason: format!("outside {d}") });
    }
    let k_m = m.deriv(x);
    if x.abs() < d.axis_tol() {
        let k0 = m.eval(x);
        if k0.abs() > 1e-12 || !k_m.is_finite() {
            return Err(Error::AxisSingularity { x });
        }
        return Ok((k_m, k_m));
    }
    Ok((k_m, m.eval(x) / x))
}

pub fn curvature_sample(m: &Momentum, x: f64) -> Result<CurvatureSample> {
    let (k_m, k_p) = principal_curvatures(m, x)?;
    Ok(CurvatureSample::from_principal(x, k_m, k_p))
}

pub fn mean_curvature(m: &Momentum, x: f64) -> Result<f64> {
    curvature_sample(m, x).map(|c| c.h)
}

pub fn gauss_curvature(m: &Momentum, x: f64) -> Result<f64> {
    curvature_sample(m, x).map(|c| c.k_g)
}

/// `k_m - q k_p`; vanishes identically on the Hopf-Kühnel surface of index `q`.
pub fn weingarten_residual(m: &Momentum, q: f64, x: f64) -> Result<f64> {
    if x.abs() < m.domain().axis_tol() {
        return Err(Error::AxisSingularity { x });
    }
    let (k_m, k_p) = principal_curvatures(m, x)?;
    Ok(k_m - q * k_p)
}

/// Gauss curvature of the surface with mean curvature `H`, from
/// `A(x) = Γ + ∫x H` where `a` is the antiderivative of `x H`:
///
/// `K_G = (2/x) (2 A A'/x² - 2 A²/x³)`, with `A' = x H` taken exactly.
pub fn gauss_from_mean(a: &Antiderivative, gamma: f64, x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::AxisSingularity { x });
    }
    let big_a = gamma + a.eval(x);
    let da = a.integrand().eval(x);
    let x2 = x * x;
    Ok((2.0 / x) * (2.0 * big_a * da / x2 - 2.0 * big_a * big_a / (x2 * x)))
}

/// Gauss curvature of the surfaces with `H = μ xⁿ` and Gaussian constant Γ.
pub fn gauss_monomial(mu: f64, n: f64, gamma: f64, x: f64) -> Result<f64> {
    if n == -2.0 {
        return Err(Error::ExponentForbidden);
    }
    let n2 = n + 2.0;
    Ok(4.0 * (n + 1.0) * mu * mu / (n2 * n2) * x.powf(2.0 * n)
        + 4.0 * n * gamma * mu / n2 * x.powf(n - 2.0)
        - 4.0 * gamma * gamma / x.powi(4))
}

/// The constant Γ of `∫x H dx` for a monomial mean curvature `H = μ xⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianConstant {
    pub gamma: f64,
    pub mu: f64,
    pub n: f64,
}

impl GaussianConstant {
    pub fn new(gamma: f64, mu: f64, n: f64) -> Result<Self> {
        if n == -2.0 {
            return Err(Error::ExponentForbidden);
        }
        Ok(GaussianConstant { gamma, mu, n })
    }

    /// The momentum constant `c` paired with Γ.
    pub fn momentum_constant(&self) -> f64 {
        2.0 * self.gamma
    }

    /// `K = 2μ/(n+2) x^{n+1} + 2Γ/x`.
    pub fn momentum(&self, domain: Domain) -> Momentum {
        let GaussianConstant { gamma, mu, n } = *self;
        let coef = 2.0 * mu / (n + 2.0);
        Momentum::from_jet(move |x| x.powf(n + 1.0) * coef + 2.0 * gamma * x.recip(), domain)
    }

    pub fn gauss_curvature(&self, x: f64) -> f64 {
        gauss_monomial(self.mu, self.n, self.gamma, x).expect("n != -2 checked in new")
    }
}

/// `(∫x H + Γ_H)² - (x²/2)(∫x K_G + c_G)`. Zero on a grid certifies that
/// the pair `(H, K_G)` is realized by a single rotational surface.
///
/// `ah` and `ag` are antiderivatives of `x H` and `x K_G`.
pub fn constraint_residual(ah: &Antiderivative, ag: &Antiderivative, gamma_h: f64, c_g: f64, x: f64) -> f64 {
    let lhs = ah.eval(x) + gamma_h;
    lhs * lhs - 0.5 * x * x * (ag.eval(x) + c_g)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum MeanInverseBranch {
    Parabolic,
    Trigonometric { theta: f64 },
    Hyperbolic { delta: f64 },
}

impl MeanInverseBranch {
    pub fn name(&self) -> &'static str {
        match self {
            MeanInverseBranch::Parabolic => "Parabolic",
            MeanInverseBranch::Trigonometric { .. } => "Trigonometric",
            MeanInverseBranch::Hyperbolic { .. } => "Hyperbolic",
        }
    }
}

/// Which of the three families of surfaces with `H = μ/x` applies.
pub fn classify_mean_inverse(mu: f64) -> Result<MeanInverseBranch> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::NonPositiveMu { mu });
    }
    if (mu - 0.5).abs() <= 1e-12 {
        Ok(MeanInverseBranch::Parabolic)
    } else if mu < 0.5 {
        Ok(MeanInverseBranch::Trigonometric { theta: (2.0 * mu).asin() })
    } else {
        Ok(MeanInverseBranch::Hyperbolic { delta: (2.0 * mu).acosh() })
    }
}

//! Named rotational surfaces with explicit momenta and, where they exist,
//! explicit profile curves.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::momentum::{Anchor, Antiderivative, Domain, Momentum, ScalarFn, Sign};
use crate::numeric::quad::{gauss_kronrod15, tanh_sinh};
use crate::numeric::roots::brent;
use crate::reconstruct::{graph_height_at, integrate_profile, Profile, ProfileOptions, ProfileSample};

type CurveFn = Arc<dyn Fn(Jet) -> (Jet, Jet) + Send + Sync>;

/// An explicit profile `t ↦ (x(t), z(t))` traversed from `t0` to `t1`
/// (`t1 < t0` means the parameter decreases along the curve).
#[derive(Clone)]
pub struct ClosedProfile {
    f: CurveFn,
    speed: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    pub t0: f64,
    pub t1: f64,
    /// `t` is an arc-length parameter.
    pub unit_speed: bool,
}

impl std::fmt::Debug for ClosedProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosedProfile")
            .field("t0", &self.t0)
            .field("t1", &self.t1)
            .field("unit_speed", &self.unit_speed)
            .finish_non_exhaustive()
    }
}

impl ClosedProfile {
    pub fn new(f: impl Fn(Jet) -> (Jet, Jet) + Send + Sync + 'static, t0: f64, t1: f64, unit_speed: bool) -> Self {
        ClosedProfile { f: Arc::new(f), speed: None, t0, t1, unit_speed }
    }

    /// Supplies `|α'(t)|` directly, sparing arc-length quadrature the
    /// position.
    pub fn with_speed(mut self, speed: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.speed = Some(Arc::new(speed));
        self
    }

    /// The same curve restricted to parameters from `t0` to `t1`.
    pub fn with_range(&self, t0: f64, t1: f64) -> Self {
        ClosedProfile { t0, t1, ..self.clone() }
    }

    fn dir(&self) -> f64 {
        if self.t1 >= self.t0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn point(&self, t: f64) -> [f64; 2] {
        let (x, z) = (self.f)(Jet::constant(t));
        [x.v, z.v]
    }

    /// Position with first and second derivatives along the direction of
    /// traversal.
    pub fn jets(&self, t: f64) -> (Jet, Jet) {
        let (x, z) = (self.f)(Jet::variable(t));
        let d = self.dir();
        (Jet::new(x.v, d * x.d1, x.d2), Jet::new(z.v, d * z.d1, z.d2))
    }

    pub fn speed(&self, t: f64) -> f64 {
        if let Some(v) = &self.speed {
            return v(t);
        }
        let (x, z) = self.jets(t);
        x.d1.hypot(z.d1)
    }

    /// Unit tangent. At a cusp on an end of the parameter range the
    /// one-sided limit is taken from the second derivative.
    pub fn tangent(&self, t: f64) -> [f64; 2] {
        let (x, z) = self.jets(t);
        let v = x.d1.hypot(z.d1);
        if v > 0.0 {
            return [x.d1 / v, z.d1 / v];
        }
        let side = if (t - self.t0).abs() <= (t - self.t1).abs() { 1.0 } else { -1.0 };
        let a = x.d2.hypot(z.d2);
        [side * x.d2 / a, side * z.d2 / a]
    }

    /// `z'/|α'|` on the parametrization.
    pub fn momentum_at(&self, t: f64) -> f64 {
        self.tangent(t)[1]
    }

    /// Turning rate of the tangent per unit length, i.e. `k_m`.
    pub fn curvature_at(&self, t: f64) -> f64 {
        let (x, z) = self.jets(t);
        let v = x.d1.hypot(z.d1);
        (x.d1 * z.d2 - z.d1 * x.d2) / (v * v * v)
    }

    /// `(k_m, k_p)` from the parametrization.
    pub fn principal_at(&self, t: f64) -> (f64, f64) {
        let [x, _] = self.point(t);
        (self.curvature_at(t), self.momentum_at(t) / x)
    }

    /// `n` parameter values equally spaced from `t0` to `t1`.
    pub fn params(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| if i == n - 1 { self.t1 } else { self.t0 + (self.t1 - self.t0) * i as f64 / (n - 1) as f64 })
            .collect()
    }

    /// Samples the curve at `n` equally spaced parameter values. Arc length
    /// is accumulated by quadrature of the speed unless `t` already is one;
    /// the quadrature tolerates an infinite speed at a vertical tangent.
    pub fn sample(&self, n: usize) -> Result<Profile> {
        let ts = self.params(n);
        let mut s = 0.0;
        let mut out = Vec::with_capacity(ts.len());
        for (i, &t) in ts.iter().enumerate() {
            if i > 0 {
                let a = ts[i - 1];
                s += if self.unit_speed {
                    (t - a).abs()
                } else {
                    let sp = |u: f64| self.speed(u);
                    let (lo, hi) = (a.min(t), a.max(t));
                    match gauss_kronrod15(&sp, lo, hi) {
                        (v, e) if v.is_finite() && e <= 1e-13 * v.abs().max(1.0) => v,
                        _ => tanh_sinh(&sp, lo, hi, 1e-10)?,
                    }
                };
            }
            let [x, z] = self.point(t);
            let [tx, tz] = self.tangent(t);
            out.push(ProfileSample { s, x, z, tx, tz });
        }
        Ok(Profile::from_samples(out))
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<(String, f64)>,
    /// `None` for the cylinder, whose profile is not a graph over `x`.
    pub momentum: Option<Momentum>,
    /// The momentum as an expression in `x`.
    pub momentum_expr: String,
    pub closed_profile: Option<ClosedProfile>,
    pub provenance: String,
    /// Declared Weingarten index, `k_m = q k_p`.
    pub weingarten_q: Option<f64>,
    pub regime: Option<String>,
    pub alias: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogInfo {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub provenance: String,
    pub momentum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
}

impl CatalogEntry {
    fn new(name: &str, params: &[(&str, f64)], momentum_expr: String, provenance: &str) -> Self {
        CatalogEntry {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            momentum: None,
            momentum_expr,
            closed_profile: None,
            provenance: provenance.to_string(),
            weingarten_q: None,
            regime: None,
            alias: None,
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn info(&self) -> CatalogInfo {
        CatalogInfo {
            name: self.name.clone(),
            params: self.params.iter().cloned().collect(),
            provenance: self.provenance.clone(),
            momentum: self.momentum_expr.clone(),
            regime: self.regime.clone(),
            alias: self.alias.clone(),
        }
    }

    /// Sampled profile: the explicit curve when there is one, otherwise the
    /// numerical reconstruction from the momentum.
    pub fn profile(&self, n: usize) -> Result<Profile> {
        if let Some(c) = &self.closed_profile {
            return c.sample(n);
        }
        let m = self.momentum.as_ref().ok_or_else(|| Error::DegenerateProfile(format!("{} has no profile", self.name)))?;
        let start = m.domain().hi;
        let opts = ProfileOptions { s_max: 4.0 * m.domain().width().max(1.0), samples_per_branch: n.max(2), ..Default::default() };
        integrate_profile(m, start, Sign::Minus, &opts)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {v}")))
    }
}

pub fn plane() -> CatalogEntry {
    let mut e = CatalogEntry::new("plane", &[], "0".into(), "rotational surfaces determined by their momentum: plane");
    e.momentum = Some(Momentum::from_jet(|_| Jet::constant(0.0), Domain { lo: 0.0, hi: 1.0 }));
    e.closed_profile = Some(ClosedProfile::new(|t| (t, Jet::constant(0.0)), 0.0, 1.0, true));
    e.weingarten_q = Some(0.0);
    e
}

pub fn cone(theta: f64) -> Result<CatalogEntry> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::param("theta", "opening angle must lie in (0, pi/2)"));
    }
    let (s, c) = theta.sin_cos();
    let mut e = CatalogEntry::new("cone", &[("theta", theta)], format!("{s}"), "rotational surfaces determined by their momentum: circular cone");
    e.momentum = Some(Momentum::from_jet(move |_| Jet::constant(s), Domain { lo: 0.0, hi: c }));
    e.closed_profile = Some(ClosedProfile::new(move |t| (t * c, t * s), 0.0, 1.0, true));
    Ok(e)
}

pub fn sphere(r: f64) -> Result<CatalogEntry> {
    positive("R", r)?;
    let mut e = CatalogEntry::new("sphere", &[("R", r)], format!("x/{r}"), "rotational surfaces determined by their momentum: sphere");
    e.momentum = Some(Momentum::from_jet(move |x| x / r, Domain { lo: 0.0, hi: r }));
    e.closed_profile = Some(ClosedProfile::new(
        move |t| ((t / r).sin() * r, -((t / r).cos() * r)),
        0.0,
        PI * r,
        true,
    ));
    e.weingarten_q = Some(1.0);
    Ok(e)
}

pub fn torus(a: f64, r: f64) -> Result<CatalogEntry> {
    positive("R", r)?;
    finite("a", a)?;
    if a == 0.0 {
        return Err(Error::param("a", "major radius must be nonzero"));
    }
    let mut e = CatalogEntry::new("torus", &[("a", a), ("R", r)], format!("(x - {a})/{r}"), "rotational surfaces determined by their momentum: torus");
    e.momentum = Some(Momentum::from_jet(move |x| (x - a) / r, Domain { lo: a - r, hi: a + r }));
    e.closed_profile = Some(ClosedProfile::new(
        move |t| (a - (t / r).cos() * r, -((t / r).sin() * r)),
        0.0,
        2.0 * PI * r,
        true,
    ));
    Ok(e)
}

pub fn catenoid(a: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    let t_max = 3.0 * a;
    let x_max = (a * a + t_max * t_max).sqrt();
    let mut e = CatalogEntry::new("catenoid", &[("a", a)], format!("{a}/x"), "minimal rotational surfaces: catenoid x = a cosh(z/a)");
    e.momentum = Some(Momentum::from_jet(move |x| a * x.recip(), Domain { lo: a, hi: x_max }));
    e.closed_profile = Some(ClosedProfile::new(
        move |t| ((t * t + a * a).sqrt(), (t / a + ((t / a) * (t / a) + 1.0).sqrt()).ln() * a),
        -t_max,
        t_max,
        true,
    ));
    e.weingarten_q = Some(-1.0);
    Ok(e)
}

/// Right circular cylinder. Its profile is a vertical line, so `x` is
/// constant and there is no momentum function of `x`.
pub fn cylinder(a: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    let mut e = CatalogEntry::new("cylinder", &[("a", a)], "none".into(), "right circular cylinder (no momentum function)");
    e.closed_profile = Some(ClosedProfile::new(move |t| (Jet::constant(a), t), -1.0, 1.0, true));
    Ok(e)
}

pub fn basic(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogEntry> {
    let p = |k: &str, d: f64| params.get(k).copied().unwrap_or(d);
    match name {
        "plane" => Ok(plane()),
        "cone" => cone(p("theta", PI / 6.0)),
        "sphere" => sphere(p("R", 1.0)),
        "torus" => torus(p("a", 2.0), p("R", 1.0)),
        "catenoid" => catenoid(p("a", 1.0)),
        "cylinder" => cylinder(p("a", 1.0)),
        other => Err(Error::InvalidInput(format!("unknown basic surface `{other}`"))),
    }
}

/// Surfaces with `k_m = q k_p`, generated by `x = a cos^{1/q} t`,
/// `z = (a/q) ∫₀ᵗ cos^{1/q} v dv`. For `q < 0` the curve is traversed with
/// `t` decreasing so that its momentum is `(x/a)^q` rather than its negative.
pub fn hopf_kuhnel(q: f64, a: f64) -> Result<CatalogEntry> {
    hopf_kuhnel_on(q, a, if q > 0.0 { FRAC_PI_2 - 1e-3 } else { 1.2 })
}

pub fn hopf_kuhnel_on(q: f64, a: f64, t_max: f64) -> Result<CatalogEntry> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::param("q", "must be nonzero"));
    }
    positive("a", a)?;
    if !(t_max > 0.0 && t_max < FRAC_PI_2) {
        return Err(Error::param("t_max", "must lie in (0, pi/2)"));
    }
    let p = 1.0 / q;
    let integral = Antiderivative::new(
        ScalarFn::new(move |v: f64| v.cos().powf(p)),
        Domain::new(-t_max, t_max)?,
        Anchor::At(0.0),
        1e-13,
    )?;
    let height = move |t: f64| (a / q) * integral.eval(t);
    let curve = move |t: Jet| {
        let x = t.cos().powf(p) * a;
        let dz = Jet::variable(t.v).cos().powf(p) * (a / q);
        let z = t.chain(height(t.v), dz.v, dz.d1);
        (x, z)
    };
    let (t0, t1) = if q > 0.0 { (-t_max, t_max) } else { (t_max, -t_max) };
    let x_end = a * t_max.cos().powf(p);
    let domain = if q > 0.0 { Domain { lo: x_end.min(a), hi: a } } else { Domain { lo: a, hi: x_end.max(a) } };
    let mut e = CatalogEntry::new(
        "hopf_kuhnel",
        &[("q", q), ("a", a)],
        format!("(x/{a})^{q}"),
        "Hopf-Kühnel surfaces: k_m = q k_p",
    );
    e.momentum = Some(Momentum::from_jet(move |x| (x / a).powf(q), domain));
    e.closed_profile =
        Some(ClosedProfile::new(curve, t0, t1, false).with_speed(move |t| (a / q.abs()) * t.cos().powf(p - 1.0)));
    e.weingarten_q = Some(q);
    e.alias = match q {
        1.0 => Some("sphere"),
        -1.0 => Some("catenoid"),
        2.0 => Some("Mylar balloon"),
        0.5 => Some("onducycloid"),
        -0.5 => Some("Flamm's paraboloid"),
        _ => None,
    }
    .map(String::from);
    Ok(e)
}

/// Net height gained by the elastic curve with momentum `a x² - k` between
/// the axis and its outermost point; it vanishes for the figure-eight.
pub fn closure_integral(a: f64, k: f64) -> Result<f64> {
    let x_plus = ((k + 1.0) / a).sqrt();
    let m = Momentum::from_jet(move |x| x * x * a - k, Domain::new(0.0, x_plus)?);
    graph_height_at(&m, 0.0, x_plus)
}

/// Value of `k` for which the elasticoid profile closes up into a
/// pseudolemniscate. Independent of `a`.
pub fn pseudolemniscate_modulus(a: f64) -> Result<f64> {
    positive("a", a)?;
    let (lo, hi) = (0.0, 0.99);
    let mut failure = None;
    let root = brent(
        |k| match closure_integral(a, k) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        1e-12,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    root
}

fn modulus() -> f64 {
    static K1: OnceLock<f64> = OnceLock::new();
    *K1.get_or_init(|| pseudolemniscate_modulus(1.0).expect("closure root exists"))
}

pub fn elasticoid_regime(k: f64) -> &'static str {
    let k1 = modulus();
    if k < 0.0 {
        "pseudo-sinusoid"
    } else if k == 0.0 {
        "lintearia"
    } else if (k - k1).abs() < 1e-9 {
        "pseudolemniscate"
    } else if k < 1.0 {
        "elastic curve"
    } else if k == 1.0 {
        "convict curve"
    } else {
        "pseudotrochoid"
    }
}

/// Surface generated by an elastic curve rotated about its directrix,
/// momentum `a x² - k`. No closed profile; it is reconstructed numerically.
pub fn elasticoid(a: f64, k: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    if !(k > -1.0) || !k.is_finite() {
        return Err(Error::param("k", "must exceed -1"));
    }
    let x_plus = ((k + 1.0) / a).sqrt();
    let lo = if k < 1.0 { -x_plus } else { ((k - 1.0) / a).sqrt() };
    let mut e = CatalogEntry::new("elasticoid", &[("a", a), ("k", k)], format!("{a}*x^2 - {k}"), "elasticoids: elastic curves rotated about their directrix");
    e.momentum = Some(Momentum::from_jet(move |x| x * x * a - k, Domain::new(lo, x_plus)?));
    e.regime = Some(elasticoid_regime(k).into());
    if k == 0.0 {
        e.alias = Some("Mylar balloon".into());
    }
    Ok(e)
}

/// Generalized catenoid of equal strength: momentum `a eˣ + sin β`.
pub fn equal_strength(a: f64, beta: f64) -> Result<CatalogEntry> {
    equal_strength_on(a, beta, 3.0)
}

pub fn equal_strength_on(a: f64, beta: f64, s_max: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    if !(beta.abs() < FRAC_PI_2) {
        return Err(Error::param("beta", "must lie in (-pi/2, pi/2)"));
    }
    positive("s_max", s_max)?;
    let (sb, cb) = beta.sin_cos();
    let curve = move |s: Jet| {
        let x = ((s * cb).cosh() + sb).recip().ln() + (cb * cb / a).ln();
        let z = s * sb + (((s * cb).exp() + sb) / cb).atan() * 2.0;
        (x, z)
    };
    let x_lo = (cb * cb / (a * ((s_max * cb).cosh() + sb))).ln();
    let x_hi = ((1.0 - sb) / a).ln();
    let mut e = CatalogEntry::new(
        "equal_strength",
        &[("a", a), ("beta", beta)],
        format!("{a}*exp(x) + {sb}"),
        "exponential meridian curvature: generalized catenoid of equal strength",
    );
    e.momentum = Some(Momentum::from_jet(move |x| x.exp() * a + sb, Domain::new(x_lo, x_hi)?));
    e.closed_profile = Some(ClosedProfile::new(curve, -s_max, s_max, true));
    Ok(e)
}

/// Momentum `a eˣ - 1`.
pub fn ondualysoid(a: f64) -> Result<CatalogEntry> {
    ondualysoid_on(a, 3.0)
}

pub fn ondualysoid_on(a: f64, s_max: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    positive("s_max", s_max)?;
    let curve = move |s: Jet| {
        let x = (s * s + 1.0).recip().ln() + (2.0 / a).ln();
        let z = s.atan() * 2.0 - s;
        (x, z)
    };
    let x_lo = (2.0 / (a * (1.0 + s_max * s_max))).ln();
    let mut e = CatalogEntry::new("ondualysoid", &[("a", a)], format!("{a}*exp(x) - 1"), "exponential meridian curvature: ondualysoid");
    e.momentum = Some(Momentum::from_jet(move |x| x.exp() * a - 1.0, Domain::new(x_lo, (2.0 / a).ln())?));
    e.closed_profile = Some(ClosedProfile::new(curve, -s_max, s_max, true));
    Ok(e)
}

pub fn loopoid_regime(a: f64, eta: f64) -> &'static str {
    let ch = eta.cosh();
    if ch < a + 1.0 {
        "cosh(eta) < a + 1"
    } else if ch == a + 1.0 {
        "cosh(eta) = a + 1"
    } else {
        "cosh(eta) > a + 1"
    }
}

/// Momentum `a eˣ - cosh η`. The height is continued across the poles of
/// `tan(sinh η · s / 2)` so that it stays smooth.
pub fn loopoid(a: f64, eta: f64) -> Result<CatalogEntry> {
    loopoid_on(a, eta, 3.0)
}

pub fn loopoid_on(a: f64, eta: f64, s_max: f64) -> Result<CatalogEntry> {
    positive("a", a)?;
    positive("eta", eta)?;
    positive("s_max", s_max)?;
    let (sh, ch) = (eta.sinh(), eta.cosh());
    let curve = move |s: Jet| {
        let x = ((s * sh).sin() * -1.0 + ch).recip().ln() + (sh * sh / a).ln();
        let half = s.v * sh / 2.0;
        let branch = ((half + FRAC_PI_2) / PI).floor();
        let z = -ch * s.v - 2.0 * ((1.0 - half.tan() * ch) / sh).atan() + 2.0 * PI * branch;
        // derivatives from the pole-free form of dz/ds
        let dz = (((Jet::variable(s.v) * sh).sin() * -1.0 + ch).recip()) * (sh * sh) - ch;
        (x, Jet::new(z, dz.v * s.d1, dz.d1 * s.d1 * s.d1 + dz.v * s.d2))
    };
    let mut e = CatalogEntry::new(
        "loopoid",
        &[("a", a), ("eta", eta)],
        format!("{a}*exp(x) - {ch}"),
        "exponential meridian curvature: loopoid",
    );
    e.momentum = Some(Momentum::from_jet(
        move |x| x.exp() * a - ch,
        Domain::new(((ch - 1.0) / a).ln(), ((ch + 1.0) / a).ln())?,
    ));
    e.closed_profile = Some(ClosedProfile::new(curve, -s_max, s_max, true));
    e.regime = Some(loopoid_regime(a, eta).into());
    Ok(e)
}

/// Closed-form height of the surfaces with `H = μ/x`, i.e. momentum
/// `2μ + c/x`, together with the open interval where it is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanInverseGraph {
    pub mu: f64,
    pub c: f64,
    pub lo: f64,
    /// `f64::INFINITY` when unbounded above.
    pub hi: f64,
}

impl MeanInverseGraph {
    pub fn new(mu: f64, c: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::NonPositiveMu { mu });
        }
        finite("c", c)?;
        let s = 2.0 * mu;
        if (mu - 0.5).abs() <= 1e-12 {
            if !(c < 0.0) {
                return Err(Error::param("c", "the parabolic branch needs c < 0"));
            }
            Ok(MeanInverseGraph { mu, c, lo: -c / 2.0, hi: f64::INFINITY })
        } else if mu < 0.5 {
            let lo = if c > 0.0 {
                c / (1.0 - s)
            } else if c < 0.0 {
                -c / (1.0 + s)
            } else {
                0.0
            };
            Ok(MeanInverseGraph { mu, c, lo, hi: f64::INFINITY })
        } else {
            if !(c < 0.0) {
                return Err(Error::param("c", "the hyperbolic branch needs c < 0"));
            }
            Ok(MeanInverseGraph { mu, c, lo: -c / (1.0 + s), hi: c / (1.0 - s) })
        }
    }

    /// `z(x)` as printed for the branch, without normalization.
    pub fn height(&self, x: Jet) -> Jet {
        let (mu, c) = (self.mu, self.c);
        let s = 2.0 * mu;
        if (mu - 0.5).abs() <= 1e-12 {
            (x + 2.0 * c) * (x * 2.0 + c).sqrt() / (3.0 * (-c).sqrt())
        } else if mu < 0.5 {
            let ct = (1.0 - s * s).sqrt();
            let p = x * x * (ct * ct) - x * (2.0 * s * c) - c * c;
            let rp = p.max0().sqrt();
            rp * (s / (ct * ct)) + (rp * (2.0 * ct) + x * (2.0 * ct * ct) - 2.0 * s * c).ln() * (c / (ct * ct * ct))
        } else {
            let ch = s;
            let sh = (ch * ch - 1.0).sqrt();
            let p = x * x * (-sh * sh) - x * (2.0 * ch * c) - c * c;
            let u = ((x * (sh * sh) + ch * c) / c).clamp1();
            p.max0().sqrt() * (-ch / (sh * sh)) + u.asin() * (c / (sh * sh * sh))
        }
    }

    pub fn momentum(&self, x: f64) -> f64 {
        2.0 * self.mu + self.c / x
    }
}

trait Clamp {
    fn max0(self) -> Self;
    fn clamp1(self) -> Self;
}

impl Clamp for Jet {
    fn max0(self) -> Jet {
        if self.v < 0.0 {
            Jet::new(0.0, self.d1, self.d2)
        } else {
            self
        }
    }

    fn clamp1(self) -> Jet {
        Jet::new(self.v.clamp(-1.0, 1.0), self.d1, self.d2)
    }
}

/// Surfaces with `H = μ/x`. The profile is the graph `z(x)` on
/// `[lo, x_max]`, shifted so that `z(lo) = 0`.
pub fn mean_inverse_profile(mu: f64, c: f64) -> Result<CatalogEntry> {
    let g = MeanInverseGraph::new(mu, c)?;
    let x_max = if g.hi.is_finite() { g.hi } else if g.lo > 0.0 { 5.0 * g.lo } else { 1.0 };
    mean_inverse_profile_on(mu, c, x_max)
}

pub fn mean_inverse_profile_on(mu: f64, c: f64, x_max: f64) -> Result<CatalogEntry> {
    let g = MeanInverseGraph::new(mu, c)?;
    if !(x_max > g.lo && x_max <= g.hi) {
        return Err(Error::param("x_max", format!("must lie in ({}, {}]", g.lo, g.hi)));
    }
    let z0 = g.height(Jet::constant(g.lo)).v;
    let curve = move |x: Jet| (x, g.height(x) - z0);
    let mut e = CatalogEntry::new(
        "mean_inverse",
        &[("mu", mu), ("c", c)],
        format!("{} + {c}/x", 2.0 * mu),
        "mean curvature inversely proportional to the distance to the axis",
    );
    e.momentum = Some(Momentum::from_jet(move |x| 2.0 * mu + c * x.recip(), Domain::new(g.lo, x_max)?));
    e.closed_profile = Some(ClosedProfile::new(curve, g.lo, x_max, false));
    e.regime = Some(crate::curvature::classify_mean_inverse(mu)?.name().to_string());
    Ok(e)
}

/// Cycloid of radius `R` with base at distance `a` from the axis, rotated
/// about that axis. Gauss curvature `1/(4R x)`.
pub fn transonducycloid(r: f64, a: f64) -> Result<CatalogEntry> {
    positive("R", r)?;
    finite("a", a)?;
    let curve = move |t: Jet| ((1.0 - t.cos()) * r + a, (t - t.sin() - PI) * r);
    let mut e = CatalogEntry::new(
        "transonducycloid",
        &[("R", r), ("a", a)],
        format!("sqrt((x - {a})/(2*{r}))"),
        "Gauss curvature inversely proportional to the distance to the axis: cycloid",
    );
    e.momentum = Some(Momentum::from_jet(move |x| ((x - a) / (2.0 * r)).sqrt(), Domain::new(a, a + 2.0 * r)?));
    e.closed_profile = Some(ClosedProfile::new(curve, 0.0, 2.0 * PI, false));
    Ok(e)
}

pub const NAMES: [&str; 13] = [
    "plane",
    "cone",
    "sphere",
    "torus",
    "catenoid",
    "cylinder",
    "hopf_kuhnel",
    "elasticoid",
    "equal_strength",
    "ondualysoid",
    "loopoid",
    "mean_inverse",
    "transonducycloid",
];

/// Builds an entry by name; missing parameters take the listed defaults.
pub fn build(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogEntry> {
    let known: &[&str] = match name {
        "plane" => &[],
        "cone" => &["theta"],
        "sphere" => &["R"],
        "torus" => &["a", "R"],
        "catenoid" | "cylinder" | "ondualysoid" => &["a"],
        "hopf_kuhnel" => &["q", "a", "t_max"],
        "elasticoid" => &["a", "k"],
        "equal_strength" => &["a", "beta"],
        "loopoid" => &["a", "eta"],
        "mean_inverse" => &["mu", "c", "x_max"],
        "transonducycloid" => &["R", "a"],
        other => return Err(Error::InvalidInput(format!("unknown catalog entry `{other}`"))),
    };
    if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::param(k, format!("not a parameter of {name}")));
    }
    let p = |k: &str, d: f64| params.get(k).copied().unwrap_or(d);
    match name {
        "hopf_kuhnel" => {
            let q = p("q", 2.0);
            match params.get("t_max") {
                Some(&t) => hopf_kuhnel_on(q, p("a", 1.0), t),
                None => hopf_kuhnel(q, p("a", 1.0)),
            }
        }
        "elasticoid" => elasticoid(p("a", 1.0), p("k", 0.5)),
        "equal_strength" => equal_strength(p("a", 1.0), p("beta", 0.0)),
        "ondualysoid" => ondualysoid(p("a", 1.0)),
        "loopoid" => loopoid(p("a", 1.0), p("eta", 1.0)),
        "mean_inverse" => {
            let (mu, c) = (p("mu", 0.25), p("c", 0.3));
            match params.get("x_max") {
                Some(&x) => mean_inverse_profile_on(mu, c, x),
                None => mean_inverse_profile(mu, c),
            }
        }
        "transonducycloid" => transonducycloid(p("R", 1.0), p("a", 0.0)),
        _ => basic(name, params),
    }
}

/// Every family with its default parameters.
pub fn list() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| build(n, &BTreeMap::new()).expect("defaults are valid")).collect()
}

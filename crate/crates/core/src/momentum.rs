//! Geometric linear momentum and the four prescription problems.
//!
//! A rotational surface is determined, up to a vertical translation, by the
//! function `K(x)` giving the `z`-component of the unit tangent of its
//! profile as a function of the distance `x` to the axis. The principal
//! curvatures are `k_m = K'(x)` and `k_p = K(x)/x`, so prescribing any of
//! `k_p`, `k_m`, `H` or `K_G` turns into an explicit formula (possibly with
//! one quadrature) for `K`:
//!
//! | prescribed | momentum                       |
//! |------------|--------------------------------|
//! | `k_p = p`  | `K = x p`                      |
//! | `k_m = k`  | `K = ∫k + c`                   |
//! | `H`        | `x K = 2∫x H + c`              |
//! | `K_G`      | `K² = 2∫x K_G + c`             |

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::numeric::quad::{adaptive_gauss_kronrod, gauss_kronrod15};
use crate::numeric::roots::{bisect_predicate, brent};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type JetFn = Arc<dyn Fn(Jet) -> Jet + Send + Sync>;

/// Closed interval of `x` values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidDomain { lo, hi });
        }
        Ok(Domain { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Points closer than this to `x = 0` are treated as lying on the axis.
    pub fn axis_tol(&self) -> f64 {
        1e-13 * self.width()
    }

    pub fn contains_axis(&self) -> bool {
        self.lo <= self.axis_tol() && self.hi >= -self.axis_tol()
    }

    /// `n` equally spaced points including both endpoints.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + self.width() * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone)]
enum Repr {
    Plain { f: RealFn, df: Option<RealFn> },
    Jet(JetFn),
}

/// A real function of one variable, optionally carrying exact derivatives.
///
/// Functions built with [`ScalarFn::from_jet`] report exact first and second
/// derivatives; plain closures fall back to five-point finite differences.
#[derive(Clone)]
pub struct ScalarFn(Repr);

impl ScalarFn {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarFn(Repr::Plain { f: Arc::new(f), df: None })
    }

    pub fn with_derivative(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarFn(Repr::Plain { f: Arc::new(f), df: Some(Arc::new(df)) })
    }

    pub fn from_jet(f: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> Self {
        ScalarFn(Repr::Jet(Arc::new(f)))
    }

    pub fn constant(c: f64) -> Self {
        ScalarFn::from_jet(move |_| Jet::constant(c))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.0 {
            Repr::Plain { f, .. } => f(x),
            Repr::Jet(f) => f(Jet::constant(x)).v,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match &self.0 {
            Repr::Plain { df: Some(df), .. } => df(x),
            Repr::Plain { f, df: None } => five_point(&**f, x),
            Repr::Jet(f) => f(Jet::variable(x)).d1,
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        match &self.0 {
            Repr::Plain { df: Some(df), .. } => five_point(&**df, x),
            Repr::Plain { f, df: None } => {
                let h = 2e-3 * x.abs().max(1.0);
                (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h)
                    - f(x - 2.0 * h))
                    / (12.0 * h * h)
            }
            Repr::Jet(f) => f(Jet::variable(x)).d2,
        }
    }

    /// Value and first two derivatives at `x`.
    pub fn jet(&self, x: f64) -> Jet {
        match &self.0 {
            Repr::Jet(f) => f(Jet::variable(x)),
            _ => Jet::new(self.eval(x), self.derivative(x), self.second_derivative(x)),
        }
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Plain { .. } => f.write_str("ScalarFn(closure)"),
            Repr::Jet(_) => f.write_str("ScalarFn(jet)"),
        }
    }
}

fn five_point(f: &(dyn Fn(f64) -> f64 + Send + Sync), x: f64) -> f64 {
    let h = 1e-3 * x.abs().max(1.0);
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Where the running antiderivative is pinned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "at", content = "x")]
pub enum Anchor {
    /// Left end of the domain.
    #[default]
    LeftEndpoint,
    /// `x = 0`, so that power laws integrate to their plain antiderivative.
    Origin,
    At(f64),
}

impl Anchor {
    fn point(&self, domain: &Domain) -> f64 {
        match *self {
            Anchor::LeftEndpoint => domain.lo,
            Anchor::Origin => 0.0,
            Anchor::At(x) => x,
        }
    }
}

/// Running antiderivative `F(x) = ∫_{x_ref}^x f`.
///
/// Built once by globally adaptive Gauss–Kronrod over the hull of the domain
/// and the anchor; later evaluations add a single 15-point panel to the
/// stored cumulative value at the nearest panel boundary on the left.
#[derive(Clone, Debug)]
pub struct Antiderivative {
    f: ScalarFn,
    nodes: Vec<f64>,
    cum: Vec<f64>,
    offset: f64,
    anchor: f64,
}

impl Antiderivative {
    pub fn new(f: ScalarFn, domain: Domain, anchor: Anchor, tol: f64) -> Result<Self> {
        let anchor_x = anchor.point(&domain);
        if !anchor_x.is_finite() {
            return Err(Error::InvalidInput(format!("anchor {anchor_x} is not finite")));
        }
        let lo = domain.lo.min(anchor_x);
        let hi = domain.hi.max(anchor_x);
        let g = |x: f64| f.eval(x);
        let panels = adaptive_gauss_kronrod(&g, lo, hi, tol, 20_000)?;
        let mut nodes = Vec::with_capacity(panels.len() + 1);
        let mut cum = Vec::with_capacity(panels.len() + 1);
        nodes.push(lo);
        cum.push(0.0);
        let mut acc = 0.0;
        for p in &panels {
            acc += p.value;
            nodes.push(p.b);
            cum.push(acc);
        }
        let mut out = Antiderivative { f, nodes, cum, offset: 0.0, anchor: anchor_x };
        out.offset = out.raw(anchor_x);
        Ok(out)
    }

    fn raw(&self, x: f64) -> f64 {
        let i = match self.nodes.partition_point(|&n| n <= x) {
            0 => 0,
            k => (k - 1).min(self.nodes.len() - 1),
        };
        let a = self.nodes[i];
        if x == a {
            return self.cum[i];
        }
        let g = |t: f64| self.f.eval(t);
        self.cum[i] + gauss_kronrod15(&g, a, x).0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.raw(x) - self.offset
    }

    pub fn integrand(&self) -> &ScalarFn {
        &self.f
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }
}

/// The geometric linear momentum `K(x)` with its derivative.
#[derive(Clone)]
pub struct Momentum {
    eval: RealFn,
    deriv: RealFn,
    deriv2: Option<RealFn>,
    domain: Domain,
}

impl fmt::Debug for Momentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Momentum").field("domain", &self.domain).finish_non_exhaustive()
    }
}

impl Momentum {
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: Domain,
    ) -> Self {
        Momentum { eval: Arc::new(eval), deriv: Arc::new(deriv), deriv2: None, domain }
    }

    pub fn with_second_derivative(mut self, d2: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv2 = Some(Arc::new(d2));
        self
    }

    /// Momentum given in closed form; all derivatives are exact.
    pub fn from_jet(k: impl Fn(Jet) -> Jet + Send + Sync + 'static, domain: Domain) -> Self {
        let k: JetFn = Arc::new(k);
        let (k0, k1, k2) = (k.clone(), k.clone(), k);
        Momentum {
            eval: Arc::new(move |x| k0(Jet::constant(x)).v),
            deriv: Arc::new(move |x| k1(Jet::variable(x)).d1),
            deriv2: Some(Arc::new(move |x| k2(Jet::variable(x)).d2)),
            domain,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.deriv)(x)
    }

    pub fn deriv2(&self, x: f64) -> f64 {
        if let Some(d2) = &self.deriv2 {
            return d2(x);
        }
        // stay inside the domain near its ends
        let h = 1e-4 * self.domain.width().min(1.0);
        let d = &self.deriv;
        if x - h < self.domain.lo {
            (-3.0 * d(x) + 4.0 * d(x + h) - d(x + 2.0 * h)) / (2.0 * h)
        } else if x + h > self.domain.hi {
            (3.0 * d(x) - 4.0 * d(x - h) + d(x - 2.0 * h)) / (2.0 * h)
        } else {
            (d(x + h) - d(x - h)) / (2.0 * h)
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Same momentum restricted (or extended) to another domain.
    pub fn with_domain(&self, domain: Domain) -> Self {
        Momentum { domain, ..self.clone() }
    }

    pub fn negate(&self) -> Self {
        let (e, d) = (self.eval.clone(), self.deriv.clone());
        Momentum {
            eval: Arc::new(move |x| -e(x)),
            deriv: Arc::new(move |x| -d(x)),
            deriv2: self.deriv2.clone().map(|d2| -> RealFn { Arc::new(move |x| -d2(x)) }),
            domain: self.domain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrescriptionKind {
    OnParallels,
    OnMeridians,
    Mean,
    Gauss,
}

impl std::str::FromStr for PrescriptionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kp" | "on_parallels" => Ok(PrescriptionKind::OnParallels),
            "km" | "on_meridians" => Ok(PrescriptionKind::OnMeridians),
            "mean" | "H" => Ok(PrescriptionKind::Mean),
            "gauss" | "KG" => Ok(PrescriptionKind::Gauss),
            other => Err(Error::InvalidInput(format!("unknown prescription kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(s: f64) -> Result<Self> {
        if s == 1.0 {
            Ok(Sign::Plus)
        } else if s == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::param("sign", format!("must be +1 or -1, got {s}")))
        }
    }
}

/// A curvature function of `x` together with its integration data.
#[derive(Debug, Clone)]
pub struct Prescription {
    pub kind: PrescriptionKind,
    pub func: ScalarFn,
    pub constant: f64,
    pub sign: Sign,
    pub domain: Domain,
    pub anchor: Anchor,
    pub tol: f64,
}

impl Prescription {
    pub fn new(kind: PrescriptionKind, func: ScalarFn, domain: Domain) -> Self {
        Prescription {
            kind,
            func,
            constant: 0.0,
            sign: Sign::Plus,
            domain,
            anchor: Anchor::LeftEndpoint,
            tol: DEFAULT_QUAD_TOL,
        }
    }

    pub fn constant(mut self, c: f64) -> Self {
        self.constant = c;
        self
    }

    pub fn sign(mut self, s: Sign) -> Self {
        self.sign = s;
        self
    }

    pub fn anchor(mut self, a: Anchor) -> Self {
        self.anchor = a;
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn momentum(&self) -> Result<Momentum> {
        let f = self.func.clone();
        match self.kind {
            PrescriptionKind::OnParallels => momentum_from_kp(f, self.domain),
            PrescriptionKind::OnMeridians => {
                km_with(f, self.constant, self.domain, self.anchor, self.tol)
            }
            PrescriptionKind::Mean => mean_with(f, self.constant, self.domain, self.anchor, self.tol),
            PrescriptionKind::Gauss => {
                gauss_with(f, self.constant, self.sign, self.domain, self.anchor, self.tol)
            }
        }
    }
}

const SCAN_POINTS: usize = 2049;

/// `K = x p(x)`. There is no free constant.
pub fn momentum_from_kp(p: ScalarFn, domain: Domain) -> Result<Momentum> {
    for x in domain.grid(SCAN_POINTS) {
        let k = x * p.eval(x);
        if !(k.abs() <= 1.0 + 1e-12) {
            return Err(Error::DomainViolation {
                x,
                reason: format!("|x p(x)| = {} exceeds 1", k.abs()),
            });
        }
    }
    let (p0, p1, p2) = (p.clone(), p.clone(), p);
    Ok(Momentum::new(
        move |x| x * p0.eval(x),
        move |x| {
            let j = p1.jet(x);
            j.v + x * j.d1
        },
        domain,
    )
    .with_second_derivative(move |x| {
        let j = p2.jet(x);
        2.0 * j.d1 + x * j.d2
    }))
}

/// `K = ∫k + c`, the antiderivative vanishing at the left end of `domain`.
pub fn momentum_from_km(k: ScalarFn, c: f64, domain: Domain) -> Result<Momentum> {
    km_with(k, c, domain, Anchor::LeftEndpoint, DEFAULT_QUAD_TOL)
}

pub fn momentum_from_km_anchored(k: ScalarFn, c: f64, domain: Domain, anchor: Anchor) -> Result<Momentum> {
    km_with(k, c, domain, anchor, DEFAULT_QUAD_TOL)
}

fn km_with(k: ScalarFn, c: f64, domain: Domain, anchor: Anchor, tol: f64) -> Result<Momentum> {
    let a = Arc::new(Antiderivative::new(k.clone(), domain, anchor, tol)?);
    let (k1, k2) = (k.clone(), k);
    Ok(Momentum::new(move |x| a.eval(x) + c, move |x| k1.eval(x), domain)
        .with_second_derivative(move |x| k2.derivative(x)))
}

/// `x K = 2∫x H + c`.
pub fn momentum_from_mean(h: ScalarFn, c: f64, domain: Domain) -> Result<Momentum> {
    mean_with(h, c, domain, Anchor::LeftEndpoint, DEFAULT_QUAD_TOL)
}

pub fn momentum_from_mean_anchored(h: ScalarFn, c: f64, domain: Domain, anchor: Anchor) -> Result<Momentum> {
    mean_with(h, c, domain, anchor, DEFAULT_QUAD_TOL)
}

fn mean_with(h: ScalarFn, c: f64, domain: Domain, anchor: Anchor, tol: f64) -> Result<Momentum> {
    let hh = h.clone();
    let xh = ScalarFn::new(move |x| x * hh.eval(x));
    let a = Arc::new(Antiderivative::new(xh, domain, anchor, tol)?);
    let axis = domain.axis_tol();
    if domain.contains_axis() {
        let numerator = 2.0 * a.eval(0.0) + c;
        if numerator.abs() > 1e-9 {
            return Err(Error::SingularAxis { numerator });
        }
    }
    let k = {
        let (a, h) = (a.clone(), h.clone());
        move |x: f64| {
            if x.abs() < axis {
                // K ~ H(0) x near the axis
                return h.eval(0.0) * x;
            }
            (2.0 * a.eval(x) + c) / x
        }
    };
    let k = Arc::new(k);
    let (k1, k2, h1, h2) = (k.clone(), k.clone(), h.clone(), h);
    let kp = move |x: f64| {
        if x.abs() < axis {
            return h1.eval(0.0);
        }
        2.0 * h1.eval(x) - k1(x) / x
    };
    let kp = Arc::new(kp);
    let kp2 = kp.clone();
    Ok(Momentum::new(move |x| k(x), move |x| kp(x), domain).with_second_derivative(move |x| {
        if x.abs() < axis {
            return 4.0 * h2.derivative(0.0) / 3.0;
        }
        2.0 * h2.derivative(x) - kp2(x) / x + k2(x) / (x * x)
    }))
}

/// `K = σ √(2∫x K_G + c)`.
pub fn momentum_from_gauss(kg: ScalarFn, c: f64, sign: Sign, domain: Domain) -> Result<Momentum> {
    gauss_with(kg, c, sign, domain, Anchor::LeftEndpoint, DEFAULT_QUAD_TOL)
}

pub fn momentum_from_gauss_anchored(
    kg: ScalarFn,
    c: f64,
    sign: Sign,
    domain: Domain,
    anchor: Anchor,
) -> Result<Momentum> {
    gauss_with(kg, c, sign, domain, anchor, DEFAULT_QUAD_TOL)
}

fn gauss_with(kg: ScalarFn, c: f64, sign: Sign, domain: Domain, anchor: Anchor, tol: f64) -> Result<Momentum> {
    let g = kg.clone();
    let xkg = ScalarFn::new(move |x| x * g.eval(x));
    let a = Arc::new(Antiderivative::new(xkg, domain, anchor, tol)?);
    let radicand = {
        let a = a.clone();
        move |x: f64| 2.0 * a.eval(x) + c
    };
    let (min, at) = radicand_minimum(&radicand, a.integrand(), domain);
    if min < -RADICAND_TOL {
        check_radicand(&radicand, domain)?;
        return Err(Error::NegativeRadicand { lo: at, hi: at });
    }
    let s = sign.value();
    let radicand = Arc::new(radicand);
    let r0 = radicand.clone();
    let k = Arc::new(move |x: f64| s * r0(x).max(0.0).sqrt());
    let (k0, k1, k2) = (k.clone(), k.clone(), k);
    let (g1, g2) = (kg.clone(), kg);
    let kp = Arc::new(move |x: f64| x * g1.eval(x) / k1(x));
    let kp2 = kp.clone();
    Ok(Momentum::new(move |x| k0(x), move |x| kp(x), domain).with_second_derivative(move |x| {
        let kv = k2(x);
        let j = g2.jet(x);
        (j.v + x * j.d1) / kv - x * j.v * kp2(x) / (kv * kv)
    }))
}

const RADICAND_TOL: f64 = 1e-10;

/// Smallest radicand over the ends of the domain and the interior points
/// where its derivative `f` changes sign from negative to positive.
fn radicand_minimum(r: &impl Fn(f64) -> f64, f: &ScalarFn, domain: Domain) -> (f64, f64) {
    let grid = domain.grid(SCAN_POINTS);
    let fs: Vec<f64> = grid.iter().map(|&x| f.eval(x)).collect();
    let mut best = (f64::INFINITY, domain.lo);
    let mut visit = |x: f64| {
        let v = r(x);
        if !(v >= best.0) {
            best = (if v.is_nan() { f64::NEG_INFINITY } else { v }, x);
        }
    };
    visit(domain.lo);
    visit(domain.hi);
    for i in 0..grid.len() - 1 {
        let (fa, fb) = (fs[i], fs[i + 1]);
        if !fa.is_finite() {
            visit(grid[i]);
        } else if fa < 0.0 && fb >= 0.0 {
            visit(brent(|x| f.eval(x), grid[i], grid[i + 1], 1e-13).unwrap_or(grid[i + 1]));
        }
    }
    best
}

fn check_radicand(r: &impl Fn(f64) -> f64, domain: Domain) -> Result<()> {
    let grid = domain.grid(SCAN_POINTS);
    let tol = RADICAND_TOL;
    let bad = |x: f64| r(x) < -tol;
    let Some(first) = grid.iter().position(|&x| bad(x)) else {
        return Ok(());
    };
    let last = grid.iter().rposition(|&x| bad(x)).unwrap_or(first);
    let lo = if first == 0 {
        grid[0]
    } else {
        bisect_predicate(&bad, grid[first - 1], grid[first], 1e-12).1
    };
    let hi = if last + 1 == grid.len() {
        grid[last]
    } else {
        bisect_predicate(|x| !bad(x), grid[last], grid[last + 1], 1e-12).0
    };
    Err(Error::NegativeRadicand { lo, hi })
}

/// A maximal interval on which `|K| < 1`. Ends are open where `K² = 1`
/// and closed where the interval stops at the edge of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibleInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl AdmissibleInterval {
    pub fn contains(&self, x: f64) -> bool {
        (x > self.lo || (!self.lo_open && x == self.lo)) && (x < self.hi || (!self.hi_open && x == self.hi))
    }
}

impl fmt::Display for AdmissibleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

pub fn admissible_intervals(m: &Momentum) -> Vec<AdmissibleInterval> {
    let d = m.domain();
    let g = |x: f64| {
        let k = m.eval(x);
        k * k - 1.0
    };
    let inside = |x: f64| g(x) < 0.0;
    let grid = d.grid(4 * SCAN_POINTS);
    let flags: Vec<bool> = grid.iter().map(|&x| inside(x)).collect();
    // boundary between grid[i] and grid[i+1] where admissibility changes
    let edge = |i: usize| -> f64 {
        let (a, b) = (grid[i], grid[i + 1]);
        let (ga, gb) = (g(a), g(b));
        if ga.is_finite() && gb.is_finite() {
            if let Ok(r) = brent(g, a, b, 1e-13) {
                return r;
            }
        }
        let (lo, hi) = if flags[i] {
            bisect_predicate(|x| !inside(x), a, b, 1e-13)
        } else {
            bisect_predicate(inside, a, b, 1e-13)
        };
        0.5 * (lo + hi)
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if !flags[i] {
            i += 1;
            continue;
        }
        let (lo, lo_open) = if i == 0 { (d.lo, false) } else { (edge(i - 1), true) };
        let mut j = i;
        while j + 1 < grid.len() && flags[j + 1] {
            j += 1;
        }
        let (hi, hi_open) = if j + 1 == grid.len() { (d.hi, false) } else { (edge(j), true) };
        out.push(AdmissibleInterval { lo, hi, lo_open, hi_open });
        i = j + 1;
    }
    out
}

#![allow(dead_code)]

use proptest::prelude::*;
use revolve_core::catalog::{self, CatalogEntry, ClosedProfile, MeanInverseGraph};
use revolve_core::curvature::{
    constraint_residual, curvature_sample, gauss_curvature, gauss_from_mean, mean_curvature, principal_curvatures,
    GaussianConstant,
};
use revolve_core::mesh::{discrete_mesh_curvature, fundamental_forms, revolve};
use revolve_core::momentum::{
    momentum_from_gauss, momentum_from_kp, momentum_from_km, momentum_from_mean, Anchor, Antiderivative, Domain,
    Momentum, ScalarFn, Sign, DEFAULT_QUAD_TOL,
};
use revolve_core::reconstruct::{
    arclength, discrete_curvatures, graph_height, integrate_profile, momentum_of_profile, Profile,
    ProfileOptions, ProfileSample,
};
use revolve_core::Jet;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// A random cubic momentum on `[lo, hi]`, scaled so that `|K| ≤ 0.95`.
#[derive(Debug, Clone, Copy)]
pub struct Cubic {
    pub c: [f64; 4],
    pub lo: f64,
    pub hi: f64,
}

fn poly(c: &[f64], x: Jet) -> Jet {
    c.iter().rev().fold(Jet::constant(0.0), |acc, &k| acc * x + k)
}

impl Cubic {
    pub fn new(raw: [f64; 4], lo: f64, width: f64) -> Cubic {
        let hi = lo + width;
        let mut c = Cubic { c: raw, lo, hi };
        let max = Domain::new(lo, hi).unwrap().grid(4001).into_iter().map(|x| c.k(x).abs()).fold(0.0, f64::max);
        if max > 0.95 {
            let s = 0.95 / max;
            c.c = raw.map(|v| v * s);
        }
        c
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.lo, self.hi).unwrap()
    }

    pub fn k(&self, x: f64) -> f64 {
        poly(&self.c, Jet::constant(x)).v
    }

    pub fn k_jet(&self, x: Jet) -> Jet {
        poly(&self.c, x)
    }

    fn dk_jet(&self, x: Jet) -> Jet {
        let [_, c1, c2, c3] = self.c;
        poly(&[c1, 2.0 * c2, 3.0 * c3], x)
    }

    pub fn momentum(&self) -> Momentum {
        let c = *self;
        Momentum::from_jet(move |x| c.k_jet(x), self.domain())
    }

    pub fn kp(&self) -> ScalarFn {
        let c = *self;
        ScalarFn::from_jet(move |x| c.k_jet(x) / x)
    }

    pub fn km(&self) -> ScalarFn {
        let c = *self;
        ScalarFn::from_jet(move |x| c.dk_jet(x))
    }

    pub fn mean(&self) -> ScalarFn {
        let c = *self;
        ScalarFn::from_jet(move |x| (c.dk_jet(x) + c.k_jet(x) / x) * 0.5)
    }

    pub fn gauss(&self) -> ScalarFn {
        let c = *self;
        ScalarFn::from_jet(move |x| c.k_jet(x) * c.dk_jet(x) / x)
    }
}

pub fn cubic_strategy() -> impl Strategy<Value = Cubic> {
    (prop::array::uniform4(-1.0f64..1.0), 0.3f64..1.5, 0.5f64..2.0).prop_map(|(c, lo, w)| Cubic::new(c, lo, w))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn momentum_invariants(cu: &Cubic) -> Check {
    let d = cu.domain();
    let grid = d.grid(100);
    let err = |e: revolve_core::Error| e.to_string();

    let m = momentum_from_kp(cu.kp(), d).map_err(err)?;
    let p = cu.kp();
    for &x in &grid {
        let r = (m.eval(x) / x - p.eval(x)).abs() / p.eval(x).abs().max(f64::MIN_POSITIVE);
        ensure!(r <= 1e-12 || (m.eval(x) / x - p.eval(x)).abs() <= 1e-15, "k_p round trip at {x}: {r}");
    }

    let h = cu.mean();
    let c0 = cu.lo * cu.k(cu.lo);
    let m = momentum_from_mean(h.clone(), c0, d).map_err(err)?;
    for &x in &grid {
        let got = mean_curvature(&m, x).map_err(err)?;
        ensure!((got - h.eval(x)).abs() <= 1e-8, "H round trip at {x}: {got} vs {}", h.eval(x));
        ensure!((m.eval(x) - cu.k(x)).abs() <= 1e-9, "K from H at {x}");
    }

    let kg = cu.gauss();
    let eps = 1e-6;
    let cg = cu.k(cu.lo).powi(2) + eps;
    let plus = momentum_from_gauss(kg.clone(), cg, Sign::Plus, d).map_err(err)?;
    let minus = momentum_from_gauss(kg.clone(), cg, Sign::Minus, d).map_err(err)?;
    for &x in &grid {
        ensure!(minus.eval(x) == -plus.eval(x), "sign covariance at {x}");
        if cu.k(x).abs() > 0.05 {
            let got = gauss_curvature(&plus, x).map_err(err)?;
            ensure!((got - kg.eval(x)).abs() <= 1e-8, "K_G round trip at {x}: {got} vs {}", kg.eval(x));
        }
    }

    let (c1, c2) = (0.3, -0.2);
    let a = momentum_from_mean(h.clone(), c0 + c1, d).map_err(err)?;
    let b = momentum_from_mean(h, c0 + c2, d).map_err(err)?;
    let ka = momentum_from_km(cu.km(), c1, d).map_err(err)?;
    let kb = momentum_from_km(cu.km(), c2, d).map_err(err)?;
    let ga = momentum_from_gauss(kg.clone(), cg + c1, Sign::Plus, d).map_err(err)?;
    let gb = momentum_from_gauss(kg, cg + 0.5, Sign::Plus, d).map_err(err)?;
    for &x in &grid {
        ensure!((x * (a.eval(x) - b.eval(x)) - (c1 - c2)).abs() <= 1e-12, "mean family offset at {x}");
        ensure!((ka.eval(x) - kb.eval(x) - (c1 - c2)).abs() <= 1e-12, "meridian family offset at {x}");
        ensure!((ka.eval(x) - c1 - cu.k(x) + cu.k(cu.lo)).abs() <= 1e-10, "meridian antiderivative at {x}");
        ensure!((ga.eval(x).powi(2) - gb.eval(x).powi(2) - (c1 - 0.5)).abs() <= 1e-12, "gauss family offset at {x}");
    }
    Ok(())
}

pub fn curvature_invariants(cu: &Cubic, mu: f64, n: f64, gamma: f64) -> Check {
    let d = cu.domain();
    let m = cu.momentum();
    let err = |e: revolve_core::Error| e.to_string();
    for x in d.grid(100) {
        let s = curvature_sample(&m, x).map_err(err)?;
        ensure!(s.h == (s.k_m + s.k_p) / 2.0 && s.k_g == s.k_m * s.k_p, "identities at {x}");
        ensure!(s.k_m == m.deriv(x) && s.k_p == m.eval(x) / x, "principal curvatures at {x}");
    }

    let h = cu.mean();
    let xh = {
        let h = h.clone();
        ScalarFn::new(move |x| x * h.eval(x))
    };
    let ah = Antiderivative::new(xh, d, Anchor::LeftEndpoint, DEFAULT_QUAD_TOL).map_err(err)?;
    let mg = momentum_from_mean(h, 2.0 * gamma, d).map_err(err)?;
    for x in d.grid(100) {
        let a = gauss_from_mean(&ah, gamma, x).map_err(err)?;
        let b = gauss_curvature(&mg, x).map_err(err)?;
        ensure!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "gauss_from_mean at {x}: {a} vs {b}");
    }

    let gc = GaussianConstant::new(gamma, mu, n).map_err(err)?;
    let mm = gc.momentum(d);
    for x in d.grid(100) {
        let a = gc.gauss_curvature(x);
        let b = gauss_curvature(&mm, x).map_err(err)?;
        ensure!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "monomial (mu={mu}, n={n}) at {x}: {a} vs {b}");
    }

    let kg = cu.gauss();
    let xkg = ScalarFn::new(move |x| x * kg.eval(x));
    let ag = Antiderivative::new(xkg, d, Anchor::LeftEndpoint, DEFAULT_QUAD_TOL).map_err(err)?;
    let k0 = cu.k(cu.lo);
    for x in d.grid(100) {
        let r = constraint_residual(&ah, &ag, cu.lo * k0 / 2.0, k0 * k0 / 2.0, x);
        ensure!(r.abs() <= 1e-9, "constraint residual at {x}: {r}");
    }
    Ok(())
}

/// Rounds every coordinate to a multiple of `2⁻⁴⁰` so that adding small
/// integers is exact.
fn quantize(p: &Profile) -> Profile {
    let q = |v: f64| (v * 2f64.powi(40)).round() / 2f64.powi(40);
    Profile::from_samples(
        p.samples.iter().map(|s| ProfileSample { s: s.s, x: q(s.x), z: q(s.z), tx: s.tx, tz: s.tz }).collect(),
    )
}

/// Romberg extrapolation of the trapezoid rule with `2^levels` panels.
pub fn romberg(f: impl Fn(f64) -> f64, a: f64, b: f64, levels: usize) -> f64 {
    let mut row = vec![(b - a) * (f(a) + f(b)) / 2.0];
    for k in 1..=levels {
        let n = 1usize << k;
        let h = (b - a) / n as f64;
        let mid: f64 = (1..n).step_by(2).map(|j| f(a + h * j as f64)).sum();
        let mut next = vec![row[0] / 2.0 + h * mid];
        let mut p = 1.0;
        for j in 1..=k {
            p *= 4.0;
            next.push(next[j - 1] + (next[j - 1] - row[j - 1]) / (p - 1.0));
        }
        row = next;
    }
    row[levels]
}

pub fn reconstruct_invariants(cu: &Cubic, mid: f64, shift: f64) -> Check {
    let m = cu.momentum();
    let err = |e: revolve_core::Error| e.to_string();
    let p = integrate_profile(&m, cu.lo, Sign::Plus, &ProfileOptions::default()).map_err(err)?;
    let n = p.len();
    ensure!(n > 20, "too few samples: {n}");
    let measured = momentum_of_profile(&p.points()).map_err(err)?;
    for &(x, k) in &measured[2..n - 2] {
        ensure!((k - m.eval(x)).abs() <= 1e-6, "momentum round trip at {x}: {k} vs {}", m.eval(x));
    }
    let curv = discrete_curvatures(&p).map_err(err)?;
    for c in &curv[2..n - 2] {
        ensure!((c.k_m - m.deriv(c.x)).abs() <= 1e-4, "k_m round trip at {}: {} vs {}", c.x, c.k_m, m.deriv(c.x));
    }
    for s in &p.samples {
        ensure!((s.tx.hypot(s.tz) - 1.0).abs() <= 1e-10, "unit tangent at s = {}", s.s);
    }

    let b = cu.lo + mid * (cu.hi - cu.lo);
    let ab = arclength(&m, cu.lo, b).map_err(err)?;
    let bc = arclength(&m, b, cu.hi).map_err(err)?;
    let ac = arclength(&m, cu.lo, cu.hi).map_err(err)?;
    ensure!((ab + bc - ac).abs() <= 2e-10, "arclength additivity: {}", ab + bc - ac);
    ensure!((p.length() - ac).abs() <= 1e-8, "profile length {} vs quadrature {ac}", p.length());

    let q = quantize(&p);
    let base = momentum_of_profile(&q.points()).map_err(err)?;
    let moved = momentum_of_profile(&q.translated(shift.round()).points()).map_err(err)?;
    ensure!(base == moved, "momentum changed under an exact z shift");
    let moved = momentum_of_profile(&p.translated(shift).points()).map_err(err)?;
    for (a, b) in measured.iter().zip(&moved) {
        ensure!(a.0 == b.0 && (a.1 - b.1).abs() <= 1e-10, "momentum changed under z shift {shift}");
    }

    let g = graph_height(&m, cu.lo, cu.hi, 101).map_err(err)?;
    let slope = |x: f64| {
        let k = m.eval(x);
        k / (1.0 - k * k).sqrt()
    };
    let mut z = 0.0;
    for i in 1..g.x.len() {
        z += romberg(slope, g.x[i - 1], g.x[i], 10);
        ensure!((g.z[i] - z).abs() <= 1e-10 * z.abs().max(1.0), "graph height at {}: {} vs {z}", g.x[i], g.z[i]);
    }
    Ok(())
}

pub fn mesh_invariants(cu: &Cubic) -> Check {
    let m = cu.momentum();
    let err = |e: revolve_core::Error| e.to_string();
    for x in cu.domain().grid(50) {
        let ((e, g), (l, n)) = fundamental_forms(&m, x).map_err(err)?;
        let (k_m, k_p) = principal_curvatures(&m, x).map_err(err)?;
        ensure!(rel(l / e, k_m) <= 1e-14 && rel(n / g, k_p) <= 1e-14, "shape operator at {x}");
    }
    let opts = ProfileOptions { samples_per_branch: 40, ..Default::default() };
    let p = integrate_profile(&m, cu.lo, Sign::Plus, &opts).map_err(err)?;
    let mesh = revolve(&p, 32).map_err(err)?;
    let pts = p.points();
    for (v, &i) in mesh.vertices.iter().zip(&mesh.vertex_sample) {
        ensure!((v[0].hypot(v[1]) - pts[i][0].abs()).abs() <= 1e-12 && v[2] == pts[i][1], "vertex off its parallel");
    }
    let perm = mesh.rotation_permutation(8);
    for (v, r) in mesh.rotated_vertices(8).iter().enumerate() {
        ensure!(*r == mesh.vertices[perm[v]], "quarter turn is not a vertex permutation");
    }
    let perm = mesh.rotation_permutation(1);
    let scale = cu.hi;
    for (v, r) in mesh.rotated_vertices(1).iter().enumerate() {
        let w = mesh.vertices[perm[v]];
        ensure!((0..3).all(|k| (r[k] - w[k]).abs() <= 4.0 * f64::EPSILON * scale), "rotation by one meridian");
    }
    ensure!(mesh.is_manifold() && mesh.boundary_loops() == 2, "open band expected");
    ensure!(mesh.euler_characteristic() == 0, "band has Euler characteristic {}", mesh.euler_characteristic());
    discrete_mesh_curvature(&mesh).map_err(err)?;
    Ok(())
}

/// Largest curvature error on a unit-sphere mesh with `n` meridians and
/// `n/2 + 1` parallels.
pub fn sphere_mesh_error(n: usize) -> Result<f64, String> {
    let err = |e: revolve_core::Error| e.to_string();
    let p = catalog::sphere(1.0).map_err(err)?.profile(n / 2 + 1).map_err(err)?;
    let mesh = revolve(&p, n).map_err(err)?;
    let c = discrete_mesh_curvature(&mesh).map_err(err)?;
    Ok(c.iter().flatten().map(|&(h, k)| (h - 1.0).abs().max((k - 1.0).abs())).fold(0.0, f64::max))
}

pub fn sphere_convergence() -> Result<f64, String> {
    let coarse = sphere_mesh_error(32)?;
    let fine = sphere_mesh_error(64)?;
    let ratio = coarse / fine;
    ensure!(ratio >= 3.0, "error ratio {ratio} ({coarse} -> {fine})");
    Ok(ratio)
}

/// Checks shared by all closed profiles: unit tangents after
/// reparametrization, momentum against the stored one and, where declared,
/// the Weingarten relation.
pub fn closed_profile_invariants(e: &CatalogEntry) -> Check {
    let cp = e.closed_profile.as_ref().ok_or("no closed profile")?;
    let err = |e: revolve_core::Error| e.to_string();
    let p = cp.sample(2001).map_err(err)?;
    for w in p.samples.windows(2) {
        let chord = (w[1].x - w[0].x).hypot(w[1].z - w[0].z);
        let ds = w[1].s - w[0].s;
        ensure!(chord <= ds * (1.0 + 1e-12) && chord >= ds * (1.0 - 1e-4), "{}: chord {chord} vs ds {ds}", e.name);
    }
    for t in cp.params(201) {
        let (x, z) = cp.jets(t);
        let v = x.d1.hypot(z.d1);
        let same = if v.is_finite() { (cp.speed(t) - v).abs() <= 1e-12 * v.max(1.0) } else { cp.speed(t) == v };
        ensure!(same, "{}: speed {} vs {v} at {t}", e.name, cp.speed(t));
    }
    if cp.unit_speed {
        for t in cp.params(201) {
            ensure!((cp.speed(t) - 1.0).abs() <= 1e-12, "{}: speed {} at {t}", e.name, cp.speed(t));
        }
    }
    if let Some(m) = &e.momentum {
        for t in cp.params(201) {
            let [x, _] = cp.point(t);
            let (got, want) = (cp.momentum_at(t), m.eval(x));
            if want.is_finite() && got.is_finite() {
                ensure!((got - want).abs() <= 1e-8, "{}: momentum {got} vs {want} at t = {t}", e.name);
            }
        }
    }
    if let Some(q) = e.weingarten_q {
        for t in cp.params(201) {
            if cp.point(t)[0].abs() < 1e-12 {
                continue;
            }
            let (k_m, k_p) = cp.principal_at(t);
            let r = k_m - q * k_p;
            ensure!(r.abs() <= 1e-8 * k_m.abs().max(1.0), "{}: Weingarten residual {r} at t = {t}", e.name);
        }
    }
    Ok(())
}

/// `ẋ² + ż² = 1` and `k_m = a eˣ` along one of the exponential-meridian
/// closed forms.
pub fn exponential_meridian(e: &CatalogEntry, a: f64) -> Check {
    let cp = e.closed_profile.as_ref().ok_or("no closed profile")?;
    for s in (0..=600).map(|i| -3.0 + i as f64 * 0.01) {
        ensure!((cp.speed(s).powi(2) - 1.0).abs() <= 1e-12, "{}: speed at s = {s}", e.name);
        let [x, _] = cp.point(s);
        let k = cp.curvature_at(s);
        ensure!((k - a * x.exp()).abs() <= 1e-10, "{}: k_m {k} vs {} at s = {s}", e.name, a * x.exp());
    }
    Ok(())
}

/// Integrates the entry's momentum from the closed-form point at `s0` for
/// a length `len` and returns the largest distance to the closed form at
/// the same arc length, after matching heights at the start.
pub fn pipeline_deviation(e: &CatalogEntry, s0: f64, len: f64) -> Result<f64, String> {
    let cp = e.closed_profile.as_ref().ok_or("no closed profile")?;
    let m = e.momentum.as_ref().ok_or("no momentum")?;
    let err = |e: revolve_core::Error| e.to_string();
    let [x0, z0] = cp.point(s0);
    let dir = if cp.tangent(s0)[0] >= 0.0 { Sign::Plus } else { Sign::Minus };
    let p = integrate_profile(m, x0, dir, &ProfileOptions::with_length(len)).map_err(err)?;
    ensure!((p.length() - len).abs() <= 1e-9, "{}: stopped at s = {} ({:?})", e.name, p.length(), p.stop);
    Ok(p.samples
        .iter()
        .map(|q| {
            let [x, z] = cp.point(s0 + q.s);
            (q.x - x).hypot(q.z + z0 - z)
        })
        .fold(0.0, f64::max))
}

/// Largest distance from the points to the curve `cp`, each projected by
/// Newton iteration from its nearest parameter sample.
pub fn distance_to_curve(cp: &ClosedProfile, pts: &[[f64; 2]], n: usize) -> f64 {
    let ts = cp.params(n);
    let verts: Vec<[f64; 2]> = ts.iter().map(|&t| cp.point(t)).collect();
    let dir = if cp.t1 >= cp.t0 { 1.0 } else { -1.0 };
    let (lo, hi) = (cp.t0.min(cp.t1), cp.t0.max(cp.t1));
    let d2 = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
    pts.iter()
        .map(|&p| {
            let j = (0..verts.len()).min_by(|&a, &b| d2(verts[a], p).total_cmp(&d2(verts[b], p))).unwrap();
            let mut t = ts[j];
            let mut best = d2(verts[j], p);
            for _ in 0..8 {
                let (x, z) = cp.jets(t);
                let (ex, ez) = (x.v - p[0], z.v - p[1]);
                let g = ex * x.d1 + ez * z.d1;
                let gp = x.d1 * x.d1 + z.d1 * z.d1 + ex * x.d2 + ez * z.d2;
                if !(gp > 0.0) {
                    break;
                }
                t = (t - dir * g / gp).clamp(lo, hi);
                best = best.min(d2(cp.point(t), p));
            }
            best.sqrt()
        })
        .fold(0.0, f64::max)
}

/// Distance between the numerical profile traced from `t = 0` of a
/// Hopf-Kühnel curve and the matching half of its closed form: every
/// numerical sample lies on the curve and both ends coincide.
pub fn hopf_kuhnel_pipeline(q: f64, a: f64) -> Result<f64, String> {
    let err = |e: revolve_core::Error| e.to_string();
    let e = catalog::hopf_kuhnel(q, a).map_err(err)?;
    let cp = e.closed_profile.as_ref().unwrap();
    let half = cp.with_range(0.0, cp.t1);
    let m = e.momentum.as_ref().unwrap();
    let dir = if q > 0.0 { Sign::Minus } else { Sign::Plus };
    let opts = ProfileOptions { s_max: 1e4, samples_per_branch: 512, ..Default::default() };
    let pts = integrate_profile(m, a, dir, &opts).map_err(err)?.points();
    let d2 = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
    let ends = d2(pts[0], half.point(half.t0)).max(d2(pts[pts.len() - 1], half.point(half.t1)));
    Ok(ends.max(distance_to_curve(&half, &pts, 257)))
}

pub fn mean_inverse_slope(mu: f64, c: f64) -> Check {
    let g = MeanInverseGraph::new(mu, c).map_err(|e| e.to_string())?;
    let hi = if g.hi.is_finite() { g.hi } else { 4.0 * g.lo.max(0.25) };
    let w = hi - g.lo;
    for i in 0..=100 {
        let x = g.lo + w * (0.02 + 0.96 * i as f64 / 100.0);
        let k = g.momentum(x);
        let want = k / (1.0 - k * k).sqrt();
        let got = g.height(Jet::variable(x)).d1;
        ensure!((got - want).abs() <= 1e-8 * want.abs().max(1.0), "mu={mu}, c={c}: slope {got} vs {want} at {x}");
    }
    Ok(())
}

pub fn catalog_invariants(q: f64, a: f64, beta: f64, eta: f64, mu: f64, c: f64) -> Check {
    let err = |e: revolve_core::Error| e.to_string();
    let hk = catalog::hopf_kuhnel(q, a).map_err(err)?;
    closed_profile_invariants(&hk)?;
    let d = hopf_kuhnel_pipeline(q, a)?;
    ensure!(d <= 1e-7, "Hopf-Kühnel q={q}: pipeline distance {d}");

    let es = catalog::equal_strength_on(a, beta, 3.5).map_err(err)?;
    exponential_meridian(&es, a)?;
    closed_profile_invariants(&es)?;
    let d = pipeline_deviation(&es, -3.0, 6.0)?;
    ensure!(d <= 1e-5, "equal strength: pipeline distance {d}");

    let lp = catalog::loopoid(a, eta).map_err(err)?;
    exponential_meridian(&lp, a)?;
    closed_profile_invariants(&lp)?;

    mean_inverse_slope(mu, c)?;
    Ok(())
}

pub fn catalog_params() -> impl Strategy<Value = (f64, f64, f64, f64, f64, f64)> {
    let q = prop_oneof![-3.0f64..-0.3, 0.3f64..3.0];
    let branch = prop_oneof![
        (0.05f64..0.45, -1.0f64..1.0),
        Just((0.5, -1.0)),
        (0.55f64..3.0, -2.0f64..-0.1),
    ];
    (q, 0.5f64..2.0, -1.2f64..1.2, 0.3f64..2.0, branch).prop_map(|(q, a, b, e, (mu, c))| (q, a, b, e, mu, c))
}

pub fn monomial_params() -> impl Strategy<Value = (f64, f64, f64)> {
    let n = prop_oneof![-3.0f64..-2.2, -1.8f64..3.0];
    (0.1f64..2.0, n, -0.5f64..0.5)
}

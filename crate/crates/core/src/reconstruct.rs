//! Profile curves from momenta, and the discrete measurements that go the
//! other way.
//!
//! The profile is integrated as the unit-speed system
//!
//! ```text
//! x' = cos φ,   z' = sin φ,   φ' = K'(x)
//! ```
//!
//! started on `sin φ = K(x)`. Along solutions `sin φ - K(x)` is conserved,
//! so this is the usual `x' = ±√(1 - K²), z' = K` system, but it stays
//! smooth through vertical tangents: turning points show up as sign changes
//! of `cos φ` and the direction of travel flips on its own.

use std::io::{Read, Write};

use serde::Serialize;

use crate::curvature::CurvatureSample;
use crate::error::{Error, Result};
use crate::momentum::{Momentum, Sign};
use crate::numeric::ode::{dopri5_step, step_factor, State};
use crate::numeric::quad::tanh_sinh;
use crate::numeric::roots::bisect_predicate;
use crate::numeric::stencil::{derivative, fornberg_weights, window};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub s: f64,
    pub x: f64,
    pub z: f64,
    pub tx: f64,
    pub tz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StopReason {
    MaxLength,
    DomainBoundary { x: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub samples: Vec<ProfileSample>,
    /// Arc-length values where the tangent became vertical and `x`
    /// reversed direction.
    pub branch_events: Vec<f64>,
    pub stop: StopReason,
}

impl Profile {
    pub fn from_samples(samples: Vec<ProfileSample>) -> Self {
        Profile { samples, branch_events: Vec::new(), stop: StopReason::MaxLength }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        self.samples.iter().map(|p| [p.x, p.z]).collect()
    }

    pub fn length(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => b.s - a.s,
            _ => 0.0,
        }
    }

    pub fn translated(&self, dz: f64) -> Profile {
        let mut p = self.clone();
        for q in &mut p.samples {
            q.z += dz;
        }
        p
    }

    /// Writes `s,x,z,tx,tz` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::InvalidInput(e.to_string());
        out.write_record(["s", "x", "z", "tx", "tz"]).map_err(io)?;
        for p in &self.samples {
            out.write_record([p.s, p.x, p.z, p.tx, p.tz].map(|v| format!("{v:.16e}"))).map_err(io)?;
        }
        out.flush().map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Profile> {
        let mut rdr = csv::Reader::from_reader(r);
        let bad = |m: String| Error::InvalidInput(format!("profile csv: {m}"));
        let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["s", "x", "z", "tx", "tz"] {
            return Err(bad(format!("unexpected header {headers:?}")));
        }
        let mut samples = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            let v: Vec<f64> = rec
                .iter()
                .map(|f| f.trim().parse::<f64>().map_err(|e| bad(format!("{f}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != 5 {
                return Err(bad(format!("expected 5 fields, got {}", v.len())));
            }
            samples.push(ProfileSample { s: v[0], x: v[1], z: v[2], tx: v[3], tz: v[4] });
        }
        Ok(Profile::from_samples(samples))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    pub s_max: f64,
    pub samples_per_branch: usize,
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            s_max: 10.0,
            samples_per_branch: 512,
            rtol: 1e-10,
            atol: 1e-12,
            initial_step: 1e-3,
            max_steps: 2_000_000,
        }
    }
}

impl ProfileOptions {
    pub fn with_length(s_max: f64) -> Self {
        ProfileOptions { s_max, ..Default::default() }
    }
}

const EVENT_TOL: f64 = 1e-12;

struct Tracer<'a> {
    m: &'a Momentum,
    lo: f64,
    hi: f64,
    slack: f64,
    /// Runge-Kutta stages may overshoot a grazed edge by more than `slack`.
    stage_slack: f64,
    rtol: f64,
    atol: f64,
}

impl Tracer<'_> {
    fn rhs(&self, _s: f64, y: &State) -> Option<State> {
        let x = y[0];
        if !(x >= self.lo - self.stage_slack && x <= self.hi + self.stage_slack) {
            return None;
        }
        let kp = self.m.deriv(x);
        if !kp.is_finite() {
            return None;
        }
        let (sp, cp) = y[2].sin_cos();
        Some([cp, sp, kp])
    }

    fn step(&self, s: f64, y: &State, h: f64) -> Option<(State, f64)> {
        let f = |t: f64, y: &State| self.rhs(t, y);
        dopri5_step(&f, s, y, h, self.rtol, self.atol).map(|st| (st.y, st.err))
    }

    fn outside(&self, y: &State) -> bool {
        y[0] < self.lo || y[0] > self.hi
    }

    /// Leaving the domain, as opposed to grazing it at a turning point.
    fn exiting(&self, y: &State) -> bool {
        let c = y[2].cos();
        (y[0] < self.lo && (c < -1e-6 || y[0] < self.lo - self.slack))
            || (y[0] > self.hi && (c > 1e-6 || y[0] > self.hi + self.slack))
    }

    fn near_edge(&self, x: f64) -> bool {
        let tol = 1e-6 * (self.hi - self.lo);
        (x - self.lo).abs() < tol || (x - self.hi).abs() < tol
    }
}

/// Traces the profile of `m` from `start_x`, initially moving towards larger
/// `x` for [`Sign::Plus`] and smaller `x` for [`Sign::Minus`].
pub fn integrate_profile(m: &Momentum, start_x: f64, direction: Sign, opts: &ProfileOptions) -> Result<Profile> {
    let d = m.domain();
    if !(opts.s_max > 0.0) || !opts.s_max.is_finite() {
        return Err(Error::param("s_max", "must be positive and finite"));
    }
    if opts.samples_per_branch < 2 {
        return Err(Error::param("samples_per_branch", "need at least 2"));
    }
    let slack = 1e-9 * d.width();
    if !(start_x >= d.lo - slack && start_x <= d.hi + slack) {
        return Err(Error::DomainViolation { x: start_x, reason: format!("start outside {d}") });
    }
    let k0 = m.eval(start_x);
    if !(k0.abs() <= 1.0 + 1e-9) {
        return Err(Error::DomainViolation { x: start_x, reason: format!("|K| = {} > 1", k0.abs()) });
    }
    let a0 = k0.clamp(-1.0, 1.0).asin();
    let phi0 = match direction {
        Sign::Plus => a0,
        Sign::Minus => std::f64::consts::PI - a0,
    };
    let tr = Tracer { m, lo: d.lo, hi: d.hi, slack, stage_slack: 1e-6 * d.width(), rtol: opts.rtol, atol: opts.atol };

    let mut nodes: Vec<(f64, State)> = vec![(0.0, [start_x, 0.0, phi0])];
    let mut events: Vec<f64> = Vec::new();
    let mut s = 0.0;
    let mut y: State = [start_x, 0.0, phi0];
    let mut h = opts.initial_step.min(opts.s_max);
    let mut stop = StopReason::MaxLength;
    let mut steps = 0usize;

    while s < opts.s_max {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepUnderflow { s });
        }
        h = h.min(opts.s_max - s);
        let h_min = 1e-13 * s.abs().max(1.0);
        let trial = tr.step(s, &y, h);
        let accepted = match trial {
            Some((y1, err)) if err <= 1.0 => Some((y1, err)),
            Some((_, err)) => {
                h *= step_factor(err);
                None
            }
            None => {
                h *= 0.25;
                None
            }
        };
        let Some((y1, err)) = accepted else {
            if h < h_min {
                if tr.near_edge(y[0]) || !m.deriv(y[0]).is_finite() {
                    stop = StopReason::DomainBoundary { x: y[0] };
                    break;
                }
                return Err(Error::StepUnderflow { s });
            }
            continue;
        };

        if tr.exiting(&y1) {
            // largest step that stays inside
            let (lo, _) = bisect_predicate(
                |t| match tr.step(s, &y, t) {
                    Some((yt, _)) => tr.outside(&yt),
                    None => true,
                },
                0.0,
                h,
                EVENT_TOL,
            );
            if lo > 0.0 {
                if let Some((yb, _)) = tr.step(s, &y, lo) {
                    s += lo;
                    y = yb;
                    nodes.push((s, y));
                }
            }
            stop = StopReason::DomainBoundary { x: y[0] };
            break;
        }

        let c0 = y[2].cos();
        let c1 = y1[2].cos();
        if c0.abs() > 1e-12 && c0.signum() != c1.signum() {
            let crossed = |t: f64| match tr.step(s, &y, t) {
                Some((yt, _)) => yt[2].cos().signum() != c0.signum(),
                None => true,
            };
            let (_, hi) = bisect_predicate(crossed, 0.0, h, EVENT_TOL);
            let (ye, _) = tr.step(s, &y, hi).ok_or(Error::EventLocatorFailure {
                s: s + hi,
                reason: "right-hand side failed at the event".into(),
            })?;
            if m.deriv(ye[0]).abs() < 1e-10 {
                return Err(Error::EventLocatorFailure {
                    s: s + hi,
                    reason: "K' vanishes where K² = 1".into(),
                });
            }
            s += hi;
            y = ye;
            nodes.push((s, y));
            events.push(s);
            continue;
        }

        s += h;
        y = y1;
        nodes.push((s, y));
        h *= step_factor(err);
    }

    let s_end = s;
    if s_end <= 0.0 {
        return Err(Error::DegenerateProfile(format!("profile from x = {start_x} has zero length")));
    }
    let samples = resample(&tr, &nodes, &events, s_end, opts.samples_per_branch);
    Ok(Profile { samples, branch_events: events, stop })
}

/// Smooth mild clustering toward both ends of `[0, 1]`.
fn cluster(u: f64) -> f64 {
    u - 0.5 * (2.0 * std::f64::consts::PI * u).sin() / (2.0 * std::f64::consts::PI)
}

fn resample(tr: &Tracer, nodes: &[(f64, State)], events: &[f64], s_end: f64, n: usize) -> Vec<ProfileSample> {
    let mut bounds = vec![0.0];
    bounds.extend(events.iter().copied().filter(|&e| e > 0.0 && e < s_end));
    bounds.push(s_end);
    let mut out = Vec::with_capacity(n * (bounds.len() - 1));
    let at = |t: f64| -> State {
        let k = nodes.partition_point(|(s, _)| *s <= t).saturating_sub(1);
        let (sk, yk) = nodes[k];
        if t == sk {
            return yk;
        }
        tr.step(sk, &yk, t - sk).map(|(y, _)| y).unwrap_or(yk)
    };
    for (b, w) in bounds.windows(2).enumerate() {
        let (sa, sb) = (w[0], w[1]);
        for i in 0..n {
            if b > 0 && i == 0 {
                continue;
            }
            let t = if i == n - 1 {
                sb
            } else {
                sa + (sb - sa) * cluster(i as f64 / (n - 1) as f64)
            };
            let y = at(t);
            let (tz, tx) = y[2].sin_cos();
            out.push(ProfileSample { s: t, x: y[0], z: y[1], tx, tz });
        }
    }
    out
}

/// What multiplies `1/√(1 - K²)` under the integral.
#[derive(Clone, Copy)]
enum Weight {
    One,
    Momentum,
}

fn singular_integral(m: &Momentum, x0: f64, x1: f64, weight: Weight, interior_checks: usize) -> Result<f64> {
    if x0 == x1 {
        return Ok(0.0);
    }
    let (a, b, sign) = if x0 < x1 { (x0, x1, 1.0) } else { (x1, x0, -1.0) };
    let d = m.domain();
    let slack = 1e-12 * d.width();
    for x in [a, b] {
        if !(x >= d.lo - slack && x <= d.hi + slack) {
            return Err(Error::DomainViolation { x, reason: format!("outside {d}") });
        }
    }
    let width = b - a;
    for i in 1..interior_checks {
        let x = a + width * i as f64 / interior_checks as f64;
        let k = m.eval(x);
        if !(k * k < 1.0) {
            return Err(Error::DomainViolation { x, reason: format!("K² = {} is not below 1", k * k) });
        }
    }
    let g = |x: f64| match weight {
        Weight::One => 1.0,
        Weight::Momentum => m.eval(x),
    };

    let mut lo = a;
    let mut hi = b;
    let mut peeled = 0.0;
    for (e, inward) in [(a, 1.0), (b, -1.0)] {
        let k = m.eval(e);
        let d0 = 1.0 - k * k;
        if d0 < -1e-12 {
            return Err(Error::DomainViolation { x: e, reason: format!("K² = {} exceeds 1", k * k) });
        }
        if d0 > 1e-14 {
            continue;
        }
        // 1 - K² ≈ d1 u + d2 u² at distance u inside the endpoint
        let kp = m.deriv(e);
        let d1 = -2.0 * k * kp * inward;
        if !(d1 * width > 1e-8) {
            return Err(Error::NonIntegrableSingularity { x: e });
        }
        let d2 = -(kp * kp + k * m.deriv2(e));
        let r = d2 / d1;
        let delta = (1e-6 * width).min(0.25 * width);
        let (g0, g1) = match weight {
            Weight::One => (1.0, 0.0),
            Weight::Momentum => (k, inward * kp),
        };
        let rd = r * delta;
        peeled += (g0 * 2.0 * delta.sqrt() * (1.0 - rd / 6.0 + 3.0 * rd * rd / 40.0)
            + g1 * (2.0 / 3.0) * delta.powf(1.5) * (1.0 - 0.3 * rd))
            / d1.sqrt();
        if inward > 0.0 {
            lo = e + delta;
        } else {
            hi = e - delta;
        }
    }
    let f = |x: f64| {
        let k = m.eval(x);
        g(x) / (1.0 - k * k).sqrt()
    };
    let core = tanh_sinh(&f, lo, hi, 1e-12)?;
    Ok(sign * (core + peeled))
}

/// `s = ∫ dx / √(1 - K²)` from `x0` to `x1` (negative when `x1 < x0`).
/// Endpoints where `K² = 1` are allowed.
pub fn arclength(m: &Momentum, x0: f64, x1: f64) -> Result<f64> {
    singular_integral(m, x0, x1, Weight::One, 256)
}

/// Heights `z(x) = ∫ K / √(1 - K²)` on a grid, with `z(x0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphHeight {
    pub x: Vec<f64>,
    pub z: Vec<f64>,
}

/// Cumulative graph height on `n` equally spaced points from `x0` to `x1`.
pub fn graph_height(m: &Momentum, x0: f64, x1: f64, n: usize) -> Result<GraphHeight> {
    let n = n.max(2);
    let xs: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { x1 } else { x0 + (x1 - x0) * i as f64 / (n - 1) as f64 })
        .collect();
    let mut zs = Vec::with_capacity(n);
    zs.push(0.0);
    let mut z = 0.0;
    for w in xs.windows(2) {
        z += singular_integral(m, w[0], w[1], Weight::Momentum, 8)?;
        zs.push(z);
    }
    Ok(GraphHeight { x: xs, z: zs })
}

/// Height of the graph at a single point, `z(x1) - z(x0)`.
pub fn graph_height_at(m: &Momentum, x0: f64, x1: f64) -> Result<f64> {
    singular_integral(m, x0, x1, Weight::Momentum, 256)
}

fn chord_parameter(pts: &[[f64; 2]]) -> Result<Vec<f64>> {
    if pts.len() < 5 {
        return Err(Error::DegeneratePolyline(format!("need at least 5 points, got {}", pts.len())));
    }
    let mut t = Vec::with_capacity(pts.len());
    t.push(0.0);
    for (i, w) in pts.windows(2).enumerate() {
        let l = (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
        if !(l > 0.0) {
            return Err(Error::DegeneratePolyline(format!("points {i} and {} coincide", i + 1)));
        }
        t.push(t[i] + l);
    }
    Ok(t)
}

/// Momentum measured on a polyline as `z'/|α'|`, returned as `(x, K)`
/// pairs. Derivatives are five-point differences in the chord-length
/// parameter, taken on coordinate differences so that a vertical shift of
/// the input does not enter the arithmetic.
pub fn momentum_of_profile(pts: &[[f64; 2]]) -> Result<Vec<(f64, f64)>> {
    let t = chord_parameter(pts)?;
    let n = pts.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = window(i, n, 5);
        let w = fornberg_weights(t[i], &t[r.clone()], 1);
        let (mut dx, mut dz) = (0.0, 0.0);
        for (j, wj) in r.zip(&w[1]) {
            dx += wj * (pts[j][0] - pts[i][0]);
            dz += wj * (pts[j][1] - pts[i][1]);
        }
        let speed = dx.hypot(dz);
        if !(speed > 0.0) {
            return Err(Error::DegeneratePolyline(format!("zero speed at point {i}")));
        }
        out.push((pts[i][0], dz / speed));
    }
    Ok(out)
}

/// Curvatures measured on a sampled profile: `k_m` is the rate of turning
/// of the tangent per unit length and `k_p = t_z / x`.
pub fn discrete_curvatures(p: &Profile) -> Result<Vec<CurvatureSample>> {
    let n = p.samples.len();
    if n < 5 {
        return Err(Error::DegeneratePolyline(format!("need at least 5 samples, got {n}")));
    }
    let s: Vec<f64> = p.samples.iter().map(|q| q.s).collect();
    if s.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::DegeneratePolyline("arc length is not strictly increasing".into()));
    }
    let mut phi: Vec<f64> = p.samples.iter().map(|q| q.tz.atan2(q.tx)).collect();
    let tau = 2.0 * std::f64::consts::PI;
    for i in 1..n {
        let jump = phi[i] - phi[i - 1];
        phi[i] -= tau * (jump / tau).round();
    }
    let km = derivative(&s, &phi);
    p.samples
        .iter()
        .zip(km)
        .map(|(q, k_m)| {
            let k_p = if q.x.abs() < 1e-12 {
                if q.tz.abs() > 1e-9 {
                    return Err(Error::AxisSingularity { x: q.x });
                }
                k_m
            } else {
                q.tz / q.x
            };
            Ok(CurvatureSample::from_principal(q.x, k_m, k_p))
        })
        .collect()
}

fn point_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dz) = (b[0] - a[0], b[1] - a[1]);
    let l2 = dx * dx + dz * dz;
    let t = if l2 > 0.0 {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dz) / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dz)
}

fn brute(p: [f64; 2], b: &[[f64; 2]]) -> f64 {
    if b.len() == 1 {
        return (p[0] - b[0][0]).hypot(p[1] - b[0][1]);
    }
    b.windows(2).map(|w| point_segment(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}

/// Segments of a polyline bucketed on a uniform grid.
struct SegmentGrid<'a> {
    pts: &'a [[f64; 2]],
    origin: [f64; 2],
    cell: f64,
    dims: [usize; 2],
    cells: Vec<Vec<u32>>,
}

impl<'a> SegmentGrid<'a> {
    fn new(pts: &'a [[f64; 2]]) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let total: f64 = pts.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum();
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let cell = (total / pts.len() as f64).max(extent / 512.0).max(f64::MIN_POSITIVE);
        let dims = [0, 1].map(|k| (((hi[k] - lo[k]) / cell).floor() as usize + 1).min(4096));
        let mut g = SegmentGrid { pts, origin: lo, cell, dims, cells: vec![Vec::new(); dims[0] * dims[1]] };
        for (i, w) in pts.windows(2).enumerate() {
            let (c0, c1) = (g.coord(w[0]), g.coord(w[1]));
            for cx in c0[0].min(c1[0])..=c0[0].max(c1[0]) {
                for cy in c0[1].min(c1[1])..=c0[1].max(c1[1]) {
                    g.cells[cy * dims[0] + cx].push(i as u32);
                }
            }
        }
        g
    }

    fn coord(&self, p: [f64; 2]) -> [usize; 2] {
        [0, 1].map(|k| (((p[k] - self.origin[k]) / self.cell).floor().max(0.0) as usize).min(self.dims[k] - 1))
    }

    fn nearest(&self, p: [f64; 2]) -> f64 {
        let c = self.coord(p);
        let mut best = f64::INFINITY;
        let max_r = self.dims[0].max(self.dims[1]);
        for r in 0..=max_r {
            // cells on the ring of Chebyshev radius r around c
            let (x0, x1) = (c[0] as isize - r as isize, c[0] as isize + r as isize);
            let (y0, y1) = (c[1] as isize - r as isize, c[1] as isize + r as isize);
            for cy in y0..=y1 {
                for cx in x0..=x1 {
                    if cx != x0 && cx != x1 && cy != y0 && cy != y1 {
                        continue;
                    }
                    if cx < 0 || cy < 0 || cx as usize >= self.dims[0] || cy as usize >= self.dims[1] {
                        continue;
                    }
                    for &i in &self.cells[cy as usize * self.dims[0] + cx as usize] {
                        let i = i as usize;
                        best = best.min(point_segment(p, self.pts[i], self.pts[i + 1]));
                    }
                }
            }
            if best <= r as f64 * self.cell {
                break;
            }
        }
        best
    }
}

fn directed(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    if b.len() < 64 || a.len() < 64 {
        return a.iter().map(|&p| brute(p, b)).fold(0.0, f64::max);
    }
    let grid = SegmentGrid::new(b);
    a.iter().map(|&p| grid.nearest(p)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines (vertices of one
/// against segments of the other).
pub fn hausdorff(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    directed(a, b).max(directed(b, a))
}

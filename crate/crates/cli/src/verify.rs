use std::collections::BTreeMap;

use revolve_core::curvature::{constraint_residual, curvature_sample, gauss_curvature, mean_curvature};
use revolve_core::expr::Expr;
use revolve_core::momentum::{Anchor, Antiderivative, Momentum, PrescriptionKind, ScalarFn};
use revolve_core::reconstruct::{discrete_curvatures, momentum_of_profile, Profile};
use serde::Serialize;

use crate::output::CliResult;
use crate::source::{Model, Source};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Exact derivatives of the momentum on a grid over its domain.
    Analytic,
    /// Finite differences on the sampled profile.
    Discrete,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metric {
    /// Discrete residuals are divided by `max(1, |expected|)`.
    pub basis: Basis,
    pub max: f64,
    /// Where the maximum occurs; absent when nothing was measured.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_x: Option<f64>,
    pub points: usize,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub source: Source,
    pub profile_samples: usize,
    pub grid_points: usize,
    /// Discrete checks skip samples with `|x|` below this fraction of the
    /// largest `|x|`.
    pub axis_margin: f64,
    pub checks: BTreeMap<String, Metric>,
    /// Ranges of `H`, `K_G` and `K_G x` over the grid.
    pub curvature: BTreeMap<String, Range>,
    pub pass: bool,
}

pub struct Options {
    pub grid: usize,
    pub axis_margin: f64,
    pub tol: f64,
    pub tol_discrete: f64,
    pub tol_quad: f64,
    pub q: Option<f64>,
    pub expr_h: Option<Expr>,
    pub expr_kg: Option<Expr>,
    pub gamma_h: Option<f64>,
    pub c_g: Option<f64>,
    pub expect_h: Option<Expr>,
    pub expect_kg: Option<Expr>,
    pub params: BTreeMap<String, f64>,
}

/// Largest of `f` over the points, ignoring points where it is undefined.
struct Max {
    value: f64,
    at: Option<f64>,
    points: usize,
}

impl Max {
    fn new() -> Self {
        Max { value: 0.0, at: None, points: 0 }
    }

    fn push(&mut self, x: f64, r: f64) {
        if !r.is_finite() {
            return;
        }
        self.points += 1;
        if self.at.is_none() || r.abs() > self.value {
            self.value = r.abs();
            self.at = Some(x);
        }
    }

    fn metric(self, basis: Basis, tolerance: f64) -> Metric {
        Metric { basis, max: self.value, at_x: self.at, points: self.points, tolerance, pass: self.value <= tolerance }
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want) / want.abs().max(1.0)
}

fn range(values: impl Iterator<Item = f64>) -> Option<Range> {
    values.filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some(Range { min: v, max: v }),
        Some(r) => Some(Range { min: r.min.min(v), max: r.max.max(v) }),
    })
}

/// Interior samples away from the axis, where five-point differences and
/// `K/x` are both meaningful.
fn interior(p: &Profile, margin: f64) -> impl Iterator<Item = usize> + '_ {
    let n = p.samples.len();
    let x_max = p.samples.iter().map(|s| s.x.abs()).fold(0.0, f64::max);
    (2..n.saturating_sub(2)).filter(move |&i| p.samples[i].x.abs() > margin * x_max)
}

pub fn verify(model: &Model, profile: &Profile, o: &Options) -> CliResult<Report> {
    let mut checks = BTreeMap::new();
    let mut curvature = BTreeMap::new();
    let m = model.momentum.as_ref();
    let tol = o.tol;
    let tol_d = o.tol_discrete;

    let mut speed = Max::new();
    for s in &profile.samples {
        speed.push(s.x, s.tx.hypot(s.tz) - 1.0);
    }
    checks.insert("unit_speed".into(), speed.metric(Basis::Discrete, tol));

    let grid = m.map(|m| m.domain().grid(o.grid)).unwrap_or_default();
    let kept: Vec<usize> = interior(profile, o.axis_margin).collect();

    if let Some(m) = m {
        let measured = momentum_of_profile(&profile.points())?;
        let mut r = Max::new();
        for &i in &kept {
            let (x, k) = measured[i];
            r.push(x, rel(k, m.eval(x)));
        }
        checks.insert("momentum_round_trip".into(), r.metric(Basis::Discrete, tol_d));

        let curv = discrete_curvatures(profile)?;
        let (mut h, mut kg) = (Max::new(), Max::new());
        for &i in &kept {
            let c = curv[i];
            if let Ok(s) = curvature_sample(m, c.x) {
                h.push(c.x, rel(c.h, s.h));
                kg.push(c.x, rel(c.k_g, s.k_g));
            }
        }
        checks.insert("h_round_trip".into(), h.metric(Basis::Discrete, tol_d));
        checks.insert("kg_round_trip".into(), kg.metric(Basis::Discrete, tol_d));

        if let (Some(f), Source::Prescription(p)) = (&model.prescribed, &model.source) {
            checks.insert("prescription_round_trip".into(), prescription_residual(m, f, p.kind, &grid).metric(Basis::Analytic, tol));
        }

        let samples: Vec<_> = grid.iter().filter_map(|&x| curvature_sample(m, x).ok()).collect();
        if let Some(r) = range(samples.iter().map(|s| s.h)) {
            curvature.insert("h".into(), r);
        }
        if let Some(r) = range(samples.iter().map(|s| s.k_g)) {
            curvature.insert("kg".into(), r);
        }
        if let Some(r) = range(samples.iter().map(|s| s.k_g * s.x)) {
            curvature.insert("kg_x".into(), r);
        }

        if let Some(q) = o.q {
            let mut w = Max::new();
            for s in &samples {
                w.push(s.x, s.k_m - q * s.k_p);
            }
            checks.insert("weingarten".into(), w.metric(Basis::Analytic, tol));
        }

        for (name, e, f) in [
            ("expect_h", &o.expect_h, mean_curvature as fn(&Momentum, f64) -> _),
            ("expect_kg", &o.expect_kg, gauss_curvature),
        ] {
            let Some(e) = e else { continue };
            let g = e.to_scalar_fn(&o.params)?;
            let mut r = Max::new();
            for &x in &grid {
                if let Ok(v) = f(m, x) {
                    r.push(x, v - g.eval(x));
                }
            }
            checks.insert(name.into(), r.metric(Basis::Analytic, tol));
            let mut d = Max::new();
            for &i in &kept {
                let c = curv[i];
                let v = if name == "expect_h" { c.h } else { c.k_g };
                d.push(c.x, rel(v, g.eval(c.x)));
            }
            checks.insert(format!("{name}_discrete"), d.metric(Basis::Discrete, tol_d));
        }
    }

    if let (Some(eh), Some(ek)) = (&o.expr_h, &o.expr_kg) {
        let domain = match (m, &model.source) {
            (Some(m), _) => m.domain(),
            (None, Source::Prescription(p)) => p.domain()?,
            (None, _) => return Err(crate::output::invalid("the constraint check needs a domain")),
        };
        let (h, kg) = (eh.to_scalar_fn(&o.params)?, ek.to_scalar_fn(&o.params)?);
        let xh = ScalarFn::new(move |x| x * h.eval(x));
        let xkg = ScalarFn::new(move |x| x * kg.eval(x));
        let ah = Antiderivative::new(xh, domain, Anchor::Origin, o.tol_quad)?;
        let ag = Antiderivative::new(xkg, domain, Anchor::Origin, o.tol_quad)?;
        // unless given, the constants are those of the momentum at the
        // left end, where `x K = 2(∫xH + Γ)` and `K² = 2(∫xK_G + c)`
        let x0 = domain.lo;
        let k0 = m.map(|m| m.eval(x0));
        let gamma_h = o.gamma_h.or(k0.map(|k| x0 * k / 2.0 - ah.eval(x0))).unwrap_or(0.0);
        let c_g = o.c_g.or(k0.map(|k| k * k / 2.0 - ag.eval(x0))).unwrap_or(0.0);
        let mut r = Max::new();
        for x in domain.grid(o.grid) {
            r.push(x, constraint_residual(&ah, &ag, gamma_h, c_g, x));
        }
        checks.insert("constraint".into(), r.metric(Basis::Analytic, tol));
    }

    let pass = checks.values().all(|c| c.pass);
    Ok(Report {
        source: model.source.clone(),
        profile_samples: profile.samples.len(),
        grid_points: grid.len(),
        axis_margin: o.axis_margin,
        checks,
        curvature,
        pass,
    })
}

/// The prescribed quantity recomputed from the momentum.
fn prescription_residual(m: &Momentum, f: &ScalarFn, kind: PrescriptionKind, grid: &[f64]) -> Max {
    let mut r = Max::new();
    for &x in grid {
        let got = match kind {
            PrescriptionKind::OnParallels => m.eval(x) / x,
            PrescriptionKind::OnMeridians => m.deriv(x),
            PrescriptionKind::Mean => mean_curvature(m, x).unwrap_or(f64::NAN),
            PrescriptionKind::Gauss => gauss_curvature(m, x).unwrap_or(f64::NAN),
        };
        r.push(x, got - f.eval(x));
    }
    r
}

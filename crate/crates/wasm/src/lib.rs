//! Browser bindings for the `www/` demo page.
//!
//! [`Demo`] does the work and reports errors as strings so it can be tested
//! natively; [`Surface`] wraps it for JavaScript.

use std::collections::BTreeMap;

use revolve_core::catalog;
use revolve_core::curvature::curvature_sample;
use revolve_core::expr::{parse_params, Expr};
use revolve_core::mesh::{revolve, SurfaceMesh};
use revolve_core::momentum::{Domain, Momentum, Prescription, PrescriptionKind, Sign};
use revolve_core::reconstruct::{discrete_curvatures, integrate_profile, Profile, ProfileOptions};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Parses `a=1, b=2` (commas or whitespace between pairs).
pub fn params(s: &str) -> Result<BTreeMap<String, f64>, String> {
    parse_params(s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty())).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub start: Option<f64>,
    pub direction: Sign,
    pub length: f64,
    pub samples: usize,
}

impl Default for Trace {
    fn default() -> Self {
        Trace { start: None, direction: Sign::Plus, length: 10.0, samples: 256 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub label: String,
    pub samples: usize,
    pub length: f64,
    pub branch_events: usize,
    pub x: [f64; 2],
    pub z: [f64; 2],
    pub h: Option<[f64; 2]>,
    pub k_g: Option<[f64; 2]>,
}

/// A profile curve, its mean and Gauss curvature per sample, and the last
/// mesh built from it.
pub struct Demo {
    label: String,
    profile: Profile,
    curvature: Vec<(f64, f64)>,
    mesh: Option<SurfaceMesh>,
}

impl Demo {
    pub fn prescribe(kind: &str, expr: &str, params_src: &str, constant: f64, domain: [f64; 2], trace: &Trace) -> Result<Demo, String> {
        let kind: PrescriptionKind = kind.parse().map_err(err)?;
        let table = params(params_src)?;
        let f = Expr::parse(expr).and_then(|e| e.to_scalar_fn(&table)).map_err(err)?;
        let domain = Domain::new(domain[0], domain[1]).map_err(err)?;
        let m = Prescription::new(kind, f, domain).constant(constant).momentum().map_err(err)?;
        let start = trace.start.unwrap_or(domain.lo);
        let opts = ProfileOptions { s_max: trace.length, samples_per_branch: trace.samples, ..Default::default() };
        let profile = integrate_profile(&m, start, trace.direction, &opts).map_err(err)?;
        Ok(Demo::new(format!("{kind:?} = {expr}"), profile, Some(&m)))
    }

    pub fn catalog(name: &str, params_src: &str, samples: usize) -> Result<Demo, String> {
        let entry = catalog::build(name, &params(params_src)?).map_err(err)?;
        let profile = entry.profile(samples).map_err(err)?;
        let label = entry.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ");
        Ok(Demo::new(format!("{name}({label})"), profile, entry.momentum.as_ref()))
    }

    fn new(label: String, profile: Profile, m: Option<&Momentum>) -> Demo {
        let discrete = discrete_curvatures(&profile).ok();
        let curvature = profile
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let exact = m.and_then(|m| curvature_sample(m, s.x).ok()).map(|c| (c.h, c.k_g));
                let approx = discrete.as_ref().map(|d| (d[i].h, d[i].k_g));
                exact.or(approx).filter(|(h, k)| h.is_finite() && k.is_finite()).unwrap_or((f64::NAN, f64::NAN))
            })
            .collect();
        Demo { label, profile, curvature, mesh: None }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// `x0, z0, x1, z1, ...`
    pub fn points(&self) -> Vec<f64> {
        self.profile.samples.iter().flat_map(|s| [s.x, s.z]).collect()
    }

    pub fn mean_curvature(&self) -> Vec<f64> {
        self.curvature.iter().map(|c| c.0).collect()
    }

    pub fn summary(&self) -> Summary {
        let s = &self.profile.samples;
        let span = |v: &mut dyn Iterator<Item = f64>| {
            v.filter(|v| v.is_finite()).fold(None, |r: Option<[f64; 2]>, v| Some(r.map_or([v, v], |r| [r[0].min(v), r[1].max(v)])))
        };
        Summary {
            label: self.label.clone(),
            samples: s.len(),
            length: self.profile.length(),
            branch_events: self.profile.branch_events.len(),
            x: span(&mut s.iter().map(|p| p.x)).unwrap_or([0.0; 2]),
            z: span(&mut s.iter().map(|p| p.z)).unwrap_or([0.0; 2]),
            h: span(&mut self.curvature.iter().map(|c| c.0)),
            k_g: span(&mut self.curvature.iter().map(|c| c.1)),
        }
    }

    pub fn revolve(&mut self, n_theta: usize) -> Result<&SurfaceMesh, String> {
        Ok(self.mesh.insert(revolve(&self.profile, n_theta).map_err(err)?))
    }

    pub fn mesh(&self) -> Option<&SurfaceMesh> {
        self.mesh.as_ref()
    }

    /// Mean curvature of each mesh vertex, taken from its profile sample.
    pub fn vertex_mean_curvature(&self) -> Vec<f64> {
        self.mesh.as_ref().map_or_else(Vec::new, |m| m.vertex_sample.iter().map(|&i| self.curvature[i].0).collect())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub struct Surface(Demo);

#[wasm_bindgen]
impl Surface {
    /// `start` and `length` may be NaN for their defaults; `direction` is +1
    /// or -1.
    #[allow(clippy::too_many_arguments)]
    pub fn prescribe(
        kind: &str,
        expr: &str,
        params: &str,
        constant: f64,
        lo: f64,
        hi: f64,
        start: f64,
        direction: f64,
        length: f64,
        samples: usize,
    ) -> Result<Surface, JsError> {
        let trace = Trace {
            start: start.is_finite().then_some(start),
            direction: Sign::from_value(direction).map_err(|e| js(e.to_string()))?,
            length: if length.is_finite() { length } else { Trace::default().length },
            samples,
        };
        Demo::prescribe(kind, expr, params, constant, [lo, hi], &trace).map(Surface).map_err(js)
    }

    pub fn catalog(name: &str, params: &str, samples: usize) -> Result<Surface, JsError> {
        Demo::catalog(name, params, samples).map(Surface).map_err(js)
    }

    pub fn points(&self) -> Vec<f64> {
        self.0.points()
    }

    pub fn mean_curvature(&self) -> Vec<f64> {
        self.0.mean_curvature()
    }

    pub fn summary(&self) -> String {
        serde_json::to_string(&self.0.summary()).expect("summary serializes")
    }

    /// Returns the number of vertices.
    pub fn revolve(&mut self, n_theta: usize) -> Result<usize, JsError> {
        self.0.revolve(n_theta).map(|m| m.vertices.len()).map_err(js)
    }

    pub fn vertices(&self) -> Vec<f32> {
        self.0.mesh().map_or_else(Vec::new, |m| m.vertices.iter().flatten().map(|&c| c as f32).collect())
    }

    pub fn triangles(&self) -> Vec<u32> {
        self.0.mesh().map_or_else(Vec::new, |m| m.triangles.iter().flatten().map(|&i| i as u32).collect())
    }

    pub fn vertex_mean_curvature(&self) -> Vec<f64> {
        self.0.vertex_mean_curvature()
    }
}

/// JSON array of `{name, params, momentum, ...}` with default parameters.
#[wasm_bindgen]
pub fn catalog_entries() -> String {
    let infos: Vec<_> = catalog::list().iter().map(|e| e.info()).collect();
    serde_json::to_string(&infos).expect("catalog serializes")
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use revolve_core::catalog::{self, CatalogEntry};
use revolve_core::expr::Expr;
use revolve_core::momentum::{Anchor, Domain, Momentum, Prescription, PrescriptionKind, ScalarFn, Sign};
use revolve_core::reconstruct::{integrate_profile, Profile, ProfileOptions};
use serde::{Deserialize, Serialize};

use crate::output::{invalid, read_file, CliResult};

pub const SOURCE_FILE: &str = "source.json";

/// Everything needed to rebuild a momentum, as written by `prescribe` and
/// `catalog build`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Source {
    Prescription(PrescriptionSpec),
    Catalog { name: String, params: BTreeMap<String, f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrescriptionSpec {
    pub kind: PrescriptionKind,
    pub expr: String,
    pub params: BTreeMap<String, f64>,
    pub constant: f64,
    pub sign: Sign,
    pub domain: [f64; 2],
    pub anchor: Anchor,
    pub tol_quad: f64,
}

/// A source with its momentum built.
pub struct Model {
    pub source: Source,
    pub momentum: Option<Momentum>,
    pub entry: Option<CatalogEntry>,
    /// The prescribed curvature function for prescriptions.
    pub prescribed: Option<ScalarFn>,
}

impl PrescriptionSpec {
    pub fn function(&self) -> CliResult<ScalarFn> {
        let e = Expr::parse(&self.expr)?;
        Ok(e.to_scalar_fn(&self.params)?)
    }

    pub fn domain(&self) -> CliResult<Domain> {
        Ok(Domain::new(self.domain[0], self.domain[1])?)
    }
}

impl Source {
    pub fn build(self) -> CliResult<Model> {
        match &self {
            Source::Prescription(p) => {
                let f = p.function()?;
                let m = Prescription::new(p.kind, f.clone(), p.domain()?)
                    .constant(p.constant)
                    .sign(p.sign)
                    .anchor(p.anchor)
                    .tolerance(p.tol_quad)
                    .momentum()?;
                Ok(Model { source: self, momentum: Some(m), entry: None, prescribed: Some(f) })
            }
            Source::Catalog { name, params } => {
                let e = catalog::build(name, params)?;
                Ok(Model { momentum: e.momentum.clone(), entry: Some(e), source: self, prescribed: None })
            }
        }
    }

    /// Reads `path`, or `path/source.json` when `path` is a directory.
    pub fn load(path: &Path) -> CliResult<Source> {
        let file = resolve(path, SOURCE_FILE);
        let bytes = read_file(&file)?;
        serde_json::from_slice(&bytes).map_err(|e| invalid(format!("{}: {e}", file.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("sources serialize");
        s.push('\n');
        s
    }
}

pub fn resolve(path: &Path, default_name: &str) -> PathBuf {
    if path.is_dir() {
        path.join(default_name)
    } else {
        path.to_path_buf()
    }
}

/// How to trace a profile when no explicit one is supplied.
#[derive(Debug, Clone, Copy)]
pub struct Tracing {
    pub start: Option<f64>,
    pub direction: Sign,
    pub length: f64,
    pub samples: usize,
    pub rtol: f64,
}

impl Model {
    pub fn momentum(&self) -> CliResult<&Momentum> {
        self.momentum.as_ref().ok_or_else(|| invalid("this source has no momentum (its profile is not a graph over x)"))
    }

    /// Catalog entries use their explicit curve unless a start point is
    /// given; prescriptions are traced from `start`, by default the left
    /// end of the domain.
    pub fn profile(&self, t: &Tracing) -> CliResult<Profile> {
        if let (Some(e), None) = (&self.entry, t.start) {
            return Ok(e.profile(t.samples)?);
        }
        let m = self.momentum()?;
        let start = t.start.unwrap_or(m.domain().lo);
        let opts = ProfileOptions {
            s_max: t.length,
            samples_per_branch: t.samples,
            rtol: t.rtol,
            atol: t.rtol * 1e-2,
            ..Default::default()
        };
        Ok(integrate_profile(m, start, t.direction, &opts)?)
    }
}

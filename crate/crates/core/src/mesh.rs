//! Triangle meshes of surfaces of revolution.
//!
//! A profile sample `(x, z)` at angle `θ` becomes the vertex
//! `(x cos θ, x sin θ, z)`. Triangles are wound so that their normals point
//! along `X_θ × X_s`, which for `x > 0` is the unit normal `(ż cos θ,
//! ż sin θ, −ẋ)`; the mean curvature `H = (k_m + k_p)/2` is positive with
//! respect to this normal on a sphere traversed upward.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::momentum::Momentum;
use crate::reconstruct::Profile;

pub type Vec3 = [f64; 3];

/// Vertex indices of the mesh organised by profile sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Seams {
    /// One entry per profile sample: the `n_theta` vertices of its parallel,
    /// or a single vertex at a pole.
    pub rings: Vec<Vec<usize>>,
    /// The last profile sample reuses the first ring.
    pub welded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
    pub n_theta: usize,
    pub seams: Seams,
    /// Profile sample each vertex was generated from.
    pub vertex_sample: Vec<usize>,
    /// `(H, K_G)` per vertex, `None` on the boundary.
    pub per_vertex: Option<Vec<Option<(f64, f64)>>>,
}

pub const POLE_TOL: f64 = 1e-12;

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var("REVOLVE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok());
    match threads.filter(|&n| n > 0) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(feature = "parallel")]
fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    with_pool(|| (0..n).into_par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
fn map_indexed<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Angles `2πj/n`; cosines and sines are taken from one table so that every
/// parallel uses identical factors. When `4 | n` the table is built from its
/// first quadrant, so a quarter turn maps it onto itself exactly.
fn angle_table(n: usize) -> Vec<(f64, f64)> {
    let direct = |j: usize| {
        let t = 2.0 * PI * j as f64 / n as f64;
        (t.cos(), t.sin())
    };
    if n % 4 != 0 {
        return (0..n).map(direct).collect();
    }
    let q = n / 4;
    (0..n)
        .map(|j| {
            let (c, s) = direct(j % q);
            match j / q {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            }
        })
        .collect()
}

/// Revolves a profile through a full turn with `n_theta` meridians.
pub fn revolve(p: &Profile, n_theta: usize) -> Result<SurfaceMesh> {
    if n_theta < 8 {
        return Err(Error::param("n_theta", format!("must be at least 8, got {n_theta}")));
    }
    let pts = p.points();
    if pts.len() < 2 {
        return Err(Error::DegenerateProfile(format!("need at least 2 samples, got {}", pts.len())));
    }
    if let Some(i) = pts.iter().position(|q| !q[0].is_finite() || !q[1].is_finite()) {
        return Err(Error::DegenerateProfile(format!("sample {i} is not finite")));
    }
    if let Some(i) = pts.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::DegenerateProfile(format!("samples {i} and {} coincide", i + 1)));
    }
    let scale = pts.iter().fold(0.0f64, |m, q| m.max(q[0].abs()).max(q[1].abs())).max(1.0);
    let is_pole = |q: &[f64; 2]| q[0].abs() < POLE_TOL;
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    let welded = pts.len() > 2
        && !is_pole(&first)
        && (first[0] - last[0]).abs() <= 1e-9 * scale
        && (first[1] - last[1]).abs() <= 1e-9 * scale;
    let n_rings = if welded { pts.len() - 1 } else { pts.len() };
    if pts[..n_rings].iter().filter(|q| is_pole(q)).count() == n_rings {
        return Err(Error::DegenerateProfile("every sample lies on the axis".into()));
    }

    let mut rings = Vec::with_capacity(pts.len());
    let mut vertex_sample = Vec::new();
    let mut next = 0;
    for (i, q) in pts[..n_rings].iter().enumerate() {
        let count = if is_pole(q) { 1 } else { n_theta };
        rings.push((next..next + count).collect::<Vec<_>>());
        vertex_sample.extend(std::iter::repeat(i).take(count));
        next += count;
    }
    if welded {
        rings.push(rings[0].clone());
    }

    let trig = angle_table(n_theta);
    let vertices = map_indexed(next, |v| {
        let q = pts[vertex_sample[v]];
        if is_pole(&q) {
            [0.0, 0.0, q[1]]
        } else {
            let j = v - rings[vertex_sample[v]][0];
            let (c, s) = trig[j];
            [q[0] * c, q[0] * s, q[1]]
        }
    });

    let mut triangles = Vec::new();
    for i in 0..rings.len() - 1 {
        let (r0, r1) = (&rings[i], &rings[i + 1]);
        if r0.len() == 1 && r1.len() == 1 {
            continue;
        }
        for j in 0..n_theta {
            let k = (j + 1) % n_theta;
            let at = |r: &Vec<usize>, j: usize| if r.len() == 1 { r[0] } else { r[j] };
            let (a, b, c, d) = (at(r0, j), at(r0, k), at(r1, k), at(r1, j));
            if r0.len() > 1 {
                triangles.push([a, b, c]);
            }
            if r1.len() > 1 {
                triangles.push([a, c, d]);
            }
        }
    }

    Ok(SurfaceMesh {
        vertices,
        triangles,
        n_theta,
        seams: Seams { rings, welded },
        vertex_sample,
        per_vertex: None,
    })
}

/// Coefficients of the first and second fundamental forms in the
/// `(s, θ)` chart: `I = (1, x²)`, `II = (K′, xK)`.
pub fn fundamental_forms(m: &Momentum, x: f64) -> Result<((f64, f64), (f64, f64))> {
    if x.abs() < POLE_TOL {
        return Err(Error::AxisSingularity { x });
    }
    Ok(((1.0, x * x), (m.deriv(x), x * m.eval(x))))
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SurfaceMesh {
    /// Number of triangles using each undirected edge.
    fn edge_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *counts.entry(edge_key(t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_counts().len() as i64 + self.triangles.len() as i64
    }

    /// Boundary edges, sorted.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edge_counts().into_iter().filter(|&(_, c)| c == 1).map(|(k, _)| k).collect();
        e.sort_unstable();
        e
    }

    /// Number of closed boundary curves.
    pub fn boundary_loops(&self) -> usize {
        let edges = self.boundary_edges();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut on_boundary = vec![false; self.vertices.len()];
        for &(a, b) in &edges {
            on_boundary[a] = true;
            on_boundary[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..self.vertices.len()).filter(|&v| on_boundary[v] && find(&mut parent, v) == v).count()
    }

    pub fn is_manifold(&self) -> bool {
        self.edge_counts().values().all(|&c| c <= 2)
    }

    /// Area-weighted vertex normals (unit length).
    pub fn vertex_normals(&self) -> Vec<Vec3> {
        let mut acc = vec![[0.0; 3]; self.vertices.len()];
        for t in &self.triangles {
            let [a, b, c] = t.map(|i| self.vertices[i]);
            let n = cross(sub(b, a), sub(c, a));
            for &v in t {
                for k in 0..3 {
                    acc[v][k] += n[k];
                }
            }
        }
        acc.into_iter()
            .map(|n| {
                let l = norm(n);
                [n[0] / l, n[1] / l, n[2] / l]
            })
            .collect()
    }

    /// Applies the rotation by `steps · 2π/n_theta` about the axis to every
    /// vertex. A quarter turn is applied exactly.
    pub fn rotated_vertices(&self, steps: usize) -> Vec<Vec3> {
        let steps = steps % self.n_theta;
        if 4 * steps == self.n_theta {
            return self.vertices.iter().map(|v| [-v[1], v[0], v[2]]).collect();
        }
        let t = 2.0 * PI * steps as f64 / self.n_theta as f64;
        let (c, s) = (t.cos(), t.sin());
        self.vertices.iter().map(|v| [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]).collect()
    }

    /// Index of the vertex `steps` meridians further on.
    pub fn rotation_permutation(&self, steps: usize) -> Vec<usize> {
        let mut perm = vec![0; self.vertices.len()];
        for ring in &self.seams.rings {
            let n = ring.len();
            for (j, &v) in ring.iter().enumerate() {
                perm[v] = ring[(j + steps) % n];
            }
        }
        perm
    }
}

/// Per-vertex mean and Gauss curvature: cotangent Laplacian over the mixed
/// Voronoi area for `H`, angle defect over the same area for `K_G`. Vertices
/// on the boundary get `None`.
pub fn discrete_mesh_curvature(mesh: &SurfaceMesh) -> Result<Vec<Option<(f64, f64)>>> {
    let counts = mesh.edge_counts();
    if let Some((e, c)) = counts.iter().filter(|&(_, &c)| c > 2).min() {
        return Err(Error::NonManifold(format!("edge {e:?} is shared by {c} triangles")));
    }
    let nv = mesh.vertices.len();
    let mut boundary = vec![false; nv];
    for (&(a, b), &c) in &counts {
        if c == 1 {
            boundary[a] = true;
            boundary[b] = true;
        }
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for &v in tri {
            incident[v].push(t);
        }
    }
    let normals = mesh.vertex_normals();
    let v = &mesh.vertices;

    Ok(map_indexed(nv, |i| {
        if boundary[i] || incident[i].is_empty() {
            return None;
        }
        let p = v[i];
        let mut lap = [0.0; 3];
        let mut area = 0.0;
        let mut angle = 0.0;
        for &t in &incident[i] {
            let tri = mesh.triangles[t];
            let k = tri.iter().position(|&u| u == i).expect("incident");
            let (q, r) = (v[tri[(k + 1) % 3]], v[tri[(k + 2) % 3]]);
            let (pq, pr, qr) = (sub(q, p), sub(r, p), sub(r, q));
            let twice = norm(cross(pq, pr));
            if !(twice > 0.0) {
                continue;
            }
            // cotangents of the angles at q and r
            let cot_q = dot(sub(p, q), qr) / twice;
            let cot_r = dot(sub(p, r), sub(q, r)) / twice;
            let cos_p = dot(pq, pr);
            angle += twice.atan2(cos_p);
            for c in 0..3 {
                lap[c] += cot_r * pq[c] + cot_q * pr[c];
            }
            let tri_area = 0.5 * twice;
            area += if cos_p < 0.0 {
                tri_area / 2.0
            } else if cot_q < 0.0 || cot_r < 0.0 {
                tri_area / 4.0
            } else {
                (dot(pr, pr) * cot_q + dot(pq, pq) * cot_r) / 8.0
            };
        }
        if !(area > 0.0) {
            return None;
        }
        let lap = lap.map(|c| c / (2.0 * area));
        let h = -0.5 * dot(lap, normals[i]);
        let kg = (2.0 * PI - angle) / area;
        Some((h, kg))
    }))
}

impl SurfaceMesh {
    /// Computes and stores [`discrete_mesh_curvature`].
    pub fn with_curvature(mut self) -> Result<Self> {
        self.per_vertex = Some(discrete_mesh_curvature(&self)?);
        Ok(self)
    }
}

/// ASCII OBJ with 17 significant digits and 1-based indices.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut w: W) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("write failed: {e}"));
    writeln!(w, "# surface of revolution: {} vertices, {} triangles", mesh.vertices.len(), mesh.triangles.len()).map_err(io)?;
    writeln!(w, "# faces wound counterclockwise about X_theta x X_s; H is signed against this normal").map_err(io)?;
    for p in &mesh.vertices {
        writeln!(w, "v {:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]).map_err(io)?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Binary STL, little-endian `f32`.
pub fn write_stl<W: Write>(mesh: &SurfaceMesh, mut w: W) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("write failed: {e}"));
    let mut header = [b' '; 80];
    let text = b"surface of revolution; outward normal X_theta x X_s";
    header[..text.len()].copy_from_slice(text);
    w.write_all(&header).map_err(io)?;
    let n = u32::try_from(mesh.triangles.len()).map_err(|_| Error::InvalidInput("too many triangles for STL".into()))?;
    w.write_all(&n.to_le_bytes()).map_err(io)?;
    let mut buf = Vec::with_capacity(50 * mesh.triangles.len());
    for t in &mesh.triangles {
        let [a, b, c] = t.map(|i| mesh.vertices[i]);
        let nrm = cross(sub(b, a), sub(c, a));
        let l = norm(nrm);
        let unit = if l > 0.0 { nrm.map(|x| x / l) } else { [0.0; 3] };
        for vec in [unit, a, b, c] {
            for x in vec {
                buf.extend_from_slice(&(x as f32).to_le_bytes());
            }
        }
        buf.extend_from_slice(&0u16.to_le_bytes());
    }
    w.write_all(&buf).map_err(io)?;
    w.flush().map_err(io)
}

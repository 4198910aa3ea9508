import init, { Surface, catalog_entries } from "./pkg/revolve_wasm.js";

await init();

const SAMPLES = 256;
const $ = (id) => document.getElementById(id);
const status = $("status");
const profileCanvas = $("profile");
const surfaceCanvas = $("surface");

let surface = null;
let mesh = null;
let view = { yaw: 0.6, pitch: 0.35 };

function report(text, error = false) {
  status.textContent = text;
  status.className = error ? "error" : "";
}

function errorText(e) {
  return e instanceof Error ? e.message : String(e);
}

// robust colour range: 2nd to 98th percentile of the finite values
function colourRange(values) {
  const v = Array.from(values).filter(Number.isFinite).sort((a, b) => a - b);
  if (v.length === 0) return [0, 1];
  let lo = v[Math.floor(0.02 * (v.length - 1))];
  let hi = v[Math.ceil(0.98 * (v.length - 1))];
  if (hi - lo < 1e-9 * Math.max(1, Math.abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

function colour(h, [lo, hi]) {
  if (!Number.isFinite(h)) return "#999";
  const t = Math.min(1, Math.max(0, (h - lo) / (hi - lo)));
  return `hsl(${240 * (1 - t)}, 75%, 45%)`;
}

function fit(canvas) {
  const r = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.round(canvas.clientWidth * r));
  canvas.height = Math.max(1, Math.round(canvas.clientHeight * r));
  const ctx = canvas.getContext("2d");
  ctx.setTransform(r, 0, 0, r, 0, 0);
  ctx.clearRect(0, 0, canvas.clientWidth, canvas.clientHeight);
  return ctx;
}

function drawProfile() {
  const ctx = fit(profileCanvas);
  if (!surface) return;
  const p = surface.points();
  const h = surface.mean_curvature();
  const n = p.length / 2;
  let xMax = 0, zMin = Infinity, zMax = -Infinity;
  for (let i = 0; i < n; i++) {
    xMax = Math.max(xMax, Math.abs(p[2 * i]));
    zMin = Math.min(zMin, p[2 * i + 1]);
    zMax = Math.max(zMax, p[2 * i + 1]);
  }
  const w = profileCanvas.clientWidth, ht = profileCanvas.clientHeight, pad = 16;
  const scale = Math.min((w - 2 * pad) / (2 * xMax || 1), (ht - 2 * pad) / (zMax - zMin || 1));
  const zMid = (zMin + zMax) / 2;
  const X = (x) => w / 2 + scale * x;
  const Z = (z) => ht / 2 - scale * (z - zMid);

  ctx.strokeStyle = "#ccc";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(X(0), 0);
  ctx.lineTo(X(0), ht);
  ctx.stroke();
  ctx.setLineDash([]);

  const range = colourRange(h);
  ctx.lineWidth = 2;
  for (const side of [1, -1]) {
    ctx.globalAlpha = side > 0 ? 1 : 0.3;
    for (let i = 1; i < n; i++) {
      ctx.strokeStyle = colour(0.5 * (h[i - 1] + h[i]), range);
      ctx.beginPath();
      ctx.moveTo(X(side * p[2 * i - 2]), Z(p[2 * i - 1]));
      ctx.lineTo(X(side * p[2 * i]), Z(p[2 * i + 1]));
      ctx.stroke();
    }
  }
  ctx.globalAlpha = 1;
  ctx.lineWidth = 1;
}

function buildMesh(ntheta) {
  surface.revolve(ntheta);
  const v = surface.vertices();
  const t = surface.triangles();
  const h = surface.vertex_mean_curvature();
  const seen = new Set();
  const edges = [];
  for (let i = 0; i < t.length; i += 3) {
    for (let k = 0; k < 3; k++) {
      const a = t[i + k], b = t[i + ((k + 1) % 3)];
      const key = a < b ? a * 4294967296 + b : b * 4294967296 + a;
      if (!seen.has(key)) {
        seen.add(key);
        edges.push(a, b);
      }
    }
  }
  let c = [0, 0, 0], r = 0;
  const nv = v.length / 3;
  for (let i = 0; i < nv; i++) for (let k = 0; k < 3; k++) c[k] += v[3 * i + k] / nv;
  for (let i = 0; i < nv; i++) {
    r = Math.max(r, Math.hypot(v[3 * i] - c[0], v[3 * i + 1] - c[1], v[3 * i + 2] - c[2]));
  }
  mesh = { v, h, edges, centre: c, radius: r || 1, range: colourRange(h), triangles: t.length / 3 };
}

const BINS = 24;

function drawSurface() {
  const ctx = fit(surfaceCanvas);
  if (!mesh) return;
  const w = surfaceCanvas.clientWidth, ht = surfaceCanvas.clientHeight;
  const s = (0.45 * Math.min(w, ht)) / mesh.radius;
  const [cy, sy, cp, sp] = [Math.cos(view.yaw), Math.sin(view.yaw), Math.cos(view.pitch), Math.sin(view.pitch)];
  const { v, h, edges, centre, range } = mesh;
  const nv = v.length / 3;
  const px = new Float32Array(nv), py = new Float32Array(nv);
  for (let i = 0; i < nv; i++) {
    const x = v[3 * i] - centre[0], y = v[3 * i + 1] - centre[1], z = v[3 * i + 2] - centre[2];
    const x1 = cy * x + sy * y;
    const y1 = -sy * x + cy * y;
    px[i] = w / 2 + s * x1;
    py[i] = ht / 2 - s * (cp * z - sp * y1);
  }
  const [lo, hi] = range;
  const paths = Array.from({ length: BINS + 1 }, () => new Path2D());
  for (let e = 0; e < edges.length; e += 2) {
    const a = edges[e], b = edges[e + 1];
    const m = 0.5 * (h[a] + h[b]);
    const bin = Number.isFinite(m) ? Math.round((BINS - 1) * Math.min(1, Math.max(0, (m - lo) / (hi - lo)))) : BINS;
    paths[bin].moveTo(px[a], py[a]);
    paths[bin].lineTo(px[b], py[b]);
  }
  ctx.lineWidth = 0.6;
  paths.forEach((path, bin) => {
    ctx.strokeStyle = bin === BINS ? "#999" : colour(lo + ((hi - lo) * bin) / (BINS - 1), range);
    ctx.stroke(path);
  });
  ctx.fillStyle = "#333";
  ctx.fillText(`H from ${lo.toPrecision(4)} (blue) to ${hi.toPrecision(4)} (red)`, 8, ht - 8);
}

function showSummary(extra = "") {
  const s = JSON.parse(surface.summary());
  const f = (r) => (r ? `[${r[0].toPrecision(6)}, ${r[1].toPrecision(6)}]` : "undefined");
  report(
    `${s.label}\n` +
      `samples ${s.samples}, length ${s.length.toPrecision(6)}, turning points ${s.branch_events}\n` +
      `x ${f(s.x)}\nz ${f(s.z)}\nH ${f(s.h)}\nK_G ${f(s.k_g)}` +
      extra,
  );
}

function load(make) {
  try {
    const next = make();
    surface?.free();
    surface = next;
    mesh = null;
    drawProfile();
    drawSurface();
    showSummary();
  } catch (e) {
    report(errorText(e), true);
  }
}

$("prescribe").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const f = new FormData(ev.target);
  const num = (k) => (f.get(k) === "" ? NaN : Number(f.get(k)));
  load(() =>
    Surface.prescribe(
      f.get("kind"), f.get("expr"), f.get("params"), num("constant") || 0,
      num("lo"), num("hi"), num("start"), Number(f.get("direction")), num("length"), SAMPLES,
    ),
  );
});

const entries = JSON.parse(catalog_entries());
const catalogForm = $("catalog");
const paramText = (e) => Object.entries(e.params).map(([k, v]) => `${k}=${v}`).join(", ");
for (const e of entries) catalogForm.elements.name.add(new Option(e.alias ? `${e.name} (${e.alias})` : e.name, e.name));
catalogForm.elements.name.addEventListener("change", () => {
  catalogForm.elements.params.value = paramText(entries.find((e) => e.name === catalogForm.elements.name.value));
});
catalogForm.elements.params.value = paramText(entries[0]);

catalogForm.addEventListener("submit", (ev) => {
  ev.preventDefault();
  load(() => Surface.catalog(catalogForm.elements.name.value, catalogForm.elements.params.value, SAMPLES));
});

$("revolve").addEventListener("submit", (ev) => {
  ev.preventDefault();
  if (!surface) return report("trace or load a profile first", true);
  try {
    buildMesh(Number(new FormData(ev.target).get("ntheta")));
    drawSurface();
    showSummary(`\nmesh: ${mesh.v.length / 3} vertices, ${mesh.triangles} triangles`);
  } catch (e) {
    report(errorText(e), true);
  }
});

let drag = null;
surfaceCanvas.addEventListener("pointerdown", (e) => {
  drag = { x: e.clientX, y: e.clientY, ...view };
  surfaceCanvas.setPointerCapture(e.pointerId);
});
surfaceCanvas.addEventListener("pointermove", (e) => {
  if (!drag) return;
  view.yaw = drag.yaw + 0.01 * (e.clientX - drag.x);
  view.pitch = Math.max(-1.5, Math.min(1.5, drag.pitch + 0.01 * (e.clientY - drag.y)));
  drawSurface();
});
surfaceCanvas.addEventListener("pointerup", () => (drag = null));
window.addEventListener("resize", () => {
  drawProfile();
  drawSurface();
});


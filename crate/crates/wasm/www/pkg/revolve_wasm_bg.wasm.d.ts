/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_surface_free: (a: number, b: number) => void;
export const catalog_entries: () => [number, number];
export const surface_catalog: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const surface_mean_curvature: (a: number) => [number, number];
export const surface_points: (a: number) => [number, number];
export const surface_prescribe: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number, l: number, m: number) => [number, number, number];
export const surface_revolve: (a: number, b: number) => [number, number, number];
export const surface_summary: (a: number) => [number, number];
export const surface_triangles: (a: number) => [number, number];
export const surface_vertex_mean_curvature: (a: number) => [number, number];
export const surface_vertices: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;

/* tslint:disable */
/* eslint-disable */

export class Surface {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    static catalog(name: string, params: string, samples: number): Surface;
    mean_curvature(): Float64Array;
    points(): Float64Array;
    /**
     * `start` and `length` may be NaN for their defaults; `direction` is +1
     * or -1.
     */
    static prescribe(kind: string, expr: string, params: string, constant: number, lo: number, hi: number, start: number, direction: number, length: number, samples: number): Surface;
    /**
     * Returns the number of vertices.
     */
    revolve(n_theta: number): number;
    summary(): string;
    triangles(): Uint32Array;
    vertex_mean_curvature(): Float64Array;
    vertices(): Float32Array;
}

/**
 * JSON array of `{name, params, momentum, ...}` with default parameters.
 */
export function catalog_entries(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_surface_free: (a: number, b: number) => void;
    readonly catalog_entries: () => [number, number];
    readonly surface_catalog: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly surface_mean_curvature: (a: number) => [number, number];
    readonly surface_points: (a: number) => [number, number];
    readonly surface_prescribe: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number, l: number, m: number) => [number, number, number];
    readonly surface_revolve: (a: number, b: number) => [number, number, number];
    readonly surface_summary: (a: number) => [number, number];
    readonly surface_triangles: (a: number) => [number, number];
    readonly surface_vertex_mean_curvature: (a: number) => [number, number];
    readonly surface_vertices: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;

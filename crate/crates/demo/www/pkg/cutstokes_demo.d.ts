/* tslint:disable */
/* eslint-disable */

export class MeshView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    area: number;
    boundary_length: number;
    /**
     * 0 interior, 1 cut, 2 exterior.
     */
    labels: Uint8Array;
    /**
     * Corner coordinates, six numbers per background triangle.
     */
    triangles: Float64Array;
}

export class SolveView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    div_max: number;
    e_p: number;
    e_u_h1: number;
    e_u_l2: number;
    /**
     * Extended pressure per sub-triangle.
     */
    pressure: Float64Array;
    residual: number;
    /**
     * Corner coordinates, six numbers per macro sub-triangle.
     */
    triangles: Float64Array;
    unknowns: number;
    /**
     * Velocity at sub-triangle centroids, two numbers each.
     */
    velocity: Float64Array;
}

export function classify(cx: number, cy: number, radius: number, n: number): MeshView;

/**
 * `[‖u_x‖, ‖u_y‖]` per angular velocity for the uniform boundary flow on
 * the centered disk of radius 0.5.
 */
export function coriolis_sweep(n: number, omegas: Float64Array): Float64Array;

/**
 * Manufactured flow on the given disk; `nitsche` selects the scalar
 * boundary formulation.
 */
export function solve(cx: number, cy: number, radius: number, n: number, nitsche: boolean): SolveView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_meshview_area: (a: number) => number;
    readonly __wbg_get_meshview_boundary_length: (a: number) => number;
    readonly __wbg_get_meshview_labels: (a: number) => [number, number];
    readonly __wbg_get_meshview_triangles: (a: number) => [number, number];
    readonly __wbg_get_solveview_div_max: (a: number) => number;
    readonly __wbg_get_solveview_e_p: (a: number) => number;
    readonly __wbg_get_solveview_e_u_h1: (a: number) => number;
    readonly __wbg_get_solveview_e_u_l2: (a: number) => number;
    readonly __wbg_get_solveview_pressure: (a: number) => [number, number];
    readonly __wbg_get_solveview_residual: (a: number) => number;
    readonly __wbg_get_solveview_triangles: (a: number) => [number, number];
    readonly __wbg_get_solveview_unknowns: (a: number) => number;
    readonly __wbg_get_solveview_velocity: (a: number) => [number, number];
    readonly __wbg_meshview_free: (a: number, b: number) => void;
    readonly __wbg_set_meshview_area: (a: number, b: number) => void;
    readonly __wbg_set_meshview_boundary_length: (a: number, b: number) => void;
    readonly __wbg_set_meshview_labels: (a: number, b: number, c: number) => void;
    readonly __wbg_set_meshview_triangles: (a: number, b: number, c: number) => void;
    readonly __wbg_set_solveview_div_max: (a: number, b: number) => void;
    readonly __wbg_set_solveview_e_p: (a: number, b: number) => void;
    readonly __wbg_set_solveview_e_u_h1: (a: number, b: number) => void;
    readonly __wbg_set_solveview_e_u_l2: (a: number, b: number) => void;
    readonly __wbg_set_solveview_pressure: (a: number, b: number, c: number) => void;
    readonly __wbg_set_solveview_residual: (a: number, b: number) => void;
    readonly __wbg_set_solveview_triangles: (a: number, b: number, c: number) => void;
    readonly __wbg_set_solveview_unknowns: (a: number, b: number) => void;
    readonly __wbg_set_solveview_velocity: (a: number, b: number, c: number) => void;
    readonly __wbg_solveview_free: (a: number, b: number) => void;
    readonly classify: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly coriolis_sweep: (a: number, b: number, c: number) => [number, number, number, number];
    readonly solve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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

/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_meshview_area: (a: number) => number;
export const __wbg_get_meshview_boundary_length: (a: number) => number;
export const __wbg_get_meshview_labels: (a: number) => [number, number];
export const __wbg_get_meshview_triangles: (a: number) => [number, number];
export const __wbg_get_solveview_div_max: (a: number) => number;
export const __wbg_get_solveview_e_p: (a: number) => number;
export const __wbg_get_solveview_e_u_h1: (a: number) => number;
export const __wbg_get_solveview_e_u_l2: (a: number) => number;
export const __wbg_get_solveview_pressure: (a: number) => [number, number];
export const __wbg_get_solveview_residual: (a: number) => number;
export const __wbg_get_solveview_triangles: (a: number) => [number, number];
export const __wbg_get_solveview_unknowns: (a: number) => number;
export const __wbg_get_solveview_velocity: (a: number) => [number, number];
export const __wbg_meshview_free: (a: number, b: number) => void;
export const __wbg_set_meshview_area: (a: number, b: number) => void;
export const __wbg_set_meshview_boundary_length: (a: number, b: number) => void;
export const __wbg_set_meshview_labels: (a: number, b: number, c: number) => void;
export const __wbg_set_meshview_triangles: (a: number, b: number, c: number) => void;
export const __wbg_set_solveview_div_max: (a: number, b: number) => void;
export const __wbg_set_solveview_e_p: (a: number, b: number) => void;
export const __wbg_set_solveview_e_u_h1: (a: number, b: number) => void;
export const __wbg_set_solveview_e_u_l2: (a: number, b: number) => void;
export const __wbg_set_solveview_pressure: (a: number, b: number, c: number) => void;
export const __wbg_set_solveview_residual: (a: number, b: number) => void;
export const __wbg_set_solveview_triangles: (a: number, b: number, c: number) => void;
export const __wbg_set_solveview_unknowns: (a: number, b: number) => void;
export const __wbg_set_solveview_velocity: (a: number, b: number, c: number) => void;
export const __wbg_solveview_free: (a: number, b: number) => void;
export const classify: (a: number, b: number, c: number, d: number) => [number, number, number];
export const coriolis_sweep: (a: number, b: number, c: number) => [number, number, number, number];
export const solve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;

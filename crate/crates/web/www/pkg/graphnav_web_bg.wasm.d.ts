/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_explorer_free: (a: number, b: number) => void;
export const explorer_advance: (a: number, b: number) => [number, number, number];
export const explorer_arrows: (a: number) => [number, number];
export const explorer_back_to_overview: (a: number) => [number, number, number, number];
export const explorer_camera: (a: number) => [number, number];
export const explorer_edge_count: (a: number) => number;
export const explorer_edges: (a: number) => [number, number];
export const explorer_fov_deg: (a: number) => number;
export const explorer_frame_count: (a: number) => number;
export const explorer_new: (a: number, b: number, c: number) => [number, number, number];
export const explorer_node_count: (a: number) => number;
export const explorer_nodes: (a: number) => [number, number];
export const explorer_overlay: (a: number) => [number, number];
export const explorer_point: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const explorer_set_dpad: (a: number, b: number, c: number) => [number, number];
export const explorer_set_modifier: (a: number, b: number) => [number, number];
export const explorer_trigger: (a: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

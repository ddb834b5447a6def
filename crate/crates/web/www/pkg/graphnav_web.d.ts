/* tslint:disable */
/* eslint-disable */

export class Explorer {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Advances time and rebuilds the instance buffers. Returns the number
     * of instanced batches.
     */
    advance(dt: number): number;
    /**
     * Arrow instances, 13 floats each.
     */
    arrows(): Float32Array;
    /**
     * Same as selecting the overview indicator in the detail view.
     */
    back_to_overview(): string;
    /**
     * Eye position and orientation (xyz, quaternion xyzw).
     */
    camera(): Float64Array;
    edge_count(): number;
    /**
     * Edge instances, 13 floats each.
     */
    edges(): Float32Array;
    fov_deg(): number;
    frame_count(): number;
    /**
     * Parses the graph JSON and lays it out.
     */
    constructor(graph_json: string, seed: number);
    node_count(): number;
    /**
     * Node instances, 8 floats each.
     */
    nodes(): Float32Array;
    /**
     * Label, time bar, perspective and props as JSON.
     */
    overlay(): string;
    /**
     * Points the controller ray; returns the hovered label, if any.
     */
    point(ox: number, oy: number, oz: number, dx: number, dy: number, dz: number): string | undefined;
    set_dpad(x: number, y: number): void;
    set_modifier(held: boolean): void;
    /**
     * Trigger on whatever is hovered. Returns a short description of the
     * effect.
     */
    trigger(): string;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_explorer_free: (a: number, b: number) => void;
    readonly explorer_advance: (a: number, b: number) => [number, number, number];
    readonly explorer_arrows: (a: number) => [number, number];
    readonly explorer_back_to_overview: (a: number) => [number, number, number, number];
    readonly explorer_camera: (a: number) => [number, number];
    readonly explorer_edge_count: (a: number) => number;
    readonly explorer_edges: (a: number) => [number, number];
    readonly explorer_fov_deg: (a: number) => number;
    readonly explorer_frame_count: (a: number) => number;
    readonly explorer_new: (a: number, b: number, c: number) => [number, number, number];
    readonly explorer_node_count: (a: number) => number;
    readonly explorer_nodes: (a: number) => [number, number];
    readonly explorer_overlay: (a: number) => [number, number];
    readonly explorer_point: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly explorer_set_dpad: (a: number, b: number, c: number) => [number, number];
    readonly explorer_set_modifier: (a: number, b: number) => [number, number];
    readonly explorer_trigger: (a: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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

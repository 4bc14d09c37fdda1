/* tslint:disable */
/* eslint-disable */

/**
 * The Fejes Tóth bound on `(π/3, 2π/3)` in degrees, with the tight cases.
 */
export function fejes_toth_curve(samples: number): string;

/**
 * LP bound on `A(dim, φ)` and samples of the certificate polynomial on `[-1, 1]`.
 */
export function lp_bound(dim: number, angle_deg: number, degree: number, samples: number): string;

/**
 * Best `N`-point configuration on the 2-sphere found from `restarts` runs.
 */
export function tammes(n: number, restarts: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly fejes_toth_curve: (a: number) => [number, number, number, number];
    readonly lp_bound: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly tammes: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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

/* tslint:disable */
/* eslint-disable */

/**
 * Per-`n` bases of the branch-and-bound growth bounds at `steps` points of
 * `j` in `(0, j_max]`. `exhaustive_base` reads the same axis as `c` and is
 * null where `c <= 1`.
 */
export function bound_curves(j_max: number, steps: number): string;

/**
 * `f_eps` sampled over `eps` in `[0, 1/2]` together with the grid check of
 * the interval table at the same `c`.
 */
export function feps_profile(c: number, steps: number): string;

/**
 * Samples `G(n, p)` and solves it with branch and bound under both tie
 * rules and, for small `n`, with exhaustive search.
 */
export function solve_sample(n: number, p: number, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bound_curves: (a: number, b: number) => [number, number];
    readonly feps_profile: (a: number, b: number) => [number, number];
    readonly solve_sample: (a: number, b: number, c: bigint) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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

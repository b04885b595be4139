/* tslint:disable */
/* eslint-disable */

/**
 * Parses a problem, computes the obstruction and torsor, and completes it
 * when possible. Returns the analysis or `{error, line, col}`.
 */
export function analyse(text: string): string;

/**
 * Problem text over `Z/4` with every corner `Z/2`. Bits 0 to 3 make the
 * top, left, right and bottom sequences nonsplit.
 */
export function grid_problem(bits: number): string;

/**
 * A seeded random problem over `Z/modulus` (0 for the integers) with corner
 * orders at most 8.
 */
export function random_problem_text(modulus: number, seed: number): string;

/**
 * Runs the independent checks on a certificate; returns the check list.
 */
export function verify(certificate: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyse: (a: number, b: number) => [number, number];
    readonly grid_problem: (a: number) => [number, number];
    readonly random_problem_text: (a: number, b: number) => [number, number];
    readonly verify: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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

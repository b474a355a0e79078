/* tslint:disable */
/* eslint-disable */

/**
 * Scans every bijection of every labeled poset up to `max_size` points.
 */
export function finite_scan(max_size: number): string;

/**
 * Runs a strategy, verifies the result, and returns the certificate, the
 * report and a drawing of the final map.
 */
export function run_and_verify(structure: string, strategy: string, steps: number): string;

/**
 * Structures with the strategies that run on them.
 */
export function structures(): string;

/**
 * Verifies certificate text, typically after hand edits.
 */
export function verify_text(text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly finite_scan: (a: number) => [number, number];
    readonly run_and_verify: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly structures: () => [number, number];
    readonly verify_text: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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

/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const finite_scan: (a: number) => [number, number];
export const run_and_verify: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const structures: () => [number, number];
export const verify_text: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const noise_sweep: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
export const sampling_comparison: (a: number, b: number, c: number, d: bigint, e: number, f: number, g: number) => [number, number, number, number];
export const spectrum: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;

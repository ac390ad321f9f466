/** Client-side color math mirroring the server: sRGB to CIELAB (D65) and
 * hue-term classification driven by the table published at /api/meta. */

import type { TermSpec, TermTable } from "./types.js";

const WHITE_X = 0.95047;
const WHITE_Y = 1.0;
const WHITE_Z = 1.08883;
const EPS = 216.0 / 24389.0;
const KAPPA = 24389.0 / 27.0;

export interface Lab {
  L: number;
  a: number;
  b: number;
}

export function parseHex(hex: string): [number, number, number] {
  const m = /^#([0-9a-fA-F]{6})$/.exec(hex.trim());
  if (!m) throw new Error(`not a #RRGGBB color: ${hex}`);
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

function srgbDecode(c: number): number {
  return c <= 0.04045 ? c / 12.92 : Math.pow((c + 0.055) / 1.055, 2.4);
}

export function srgbToLab(r8: number, g8: number, b8: number): Lab {
  const rl = srgbDecode(r8 / 255);
  const gl = srgbDecode(g8 / 255);
  const bl = srgbDecode(b8 / 255);
  const x = (0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl) / WHITE_X;
  const y = (0.2126729 * rl + 0.7151522 * gl + 0.072175 * bl) / WHITE_Y;
  const z = (0.0193339 * rl + 0.119192 * gl + 0.9503041 * bl) / WHITE_Z;
  const f = (t: number) => (t > EPS ? Math.cbrt(t) : (KAPPA * t + 16) / 116);
  const fx = f(x);
  const fy = f(y);
  const fz = f(z);
  const clamp = (v: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, v));
  // same bounds the service applies to every LAB coordinate it stores
  return {
    L: clamp(116 * fy - 16, 0, 100),
    a: clamp(500 * (fx - fy), -128, 128),
    b: clamp(200 * (fy - fz), -128, 128),
  };
}

export function hexToLab(hex: string): Lab {
  const [r, g, b] = parseHex(hex);
  return srgbToLab(r, g, b);
}

export function hueDeg(a: number, b: number): number {
  if (a === 0 && b === 0) return 0;
  let h = (Math.atan2(b, a) * 180) / Math.PI;
  if (h < 0) h += 360;
  return h;
}

export function chroma(a: number, b: number): number {
  return Math.hypot(a, b);
}

export function inHueHalfOpen(h: number, lo: number, hi: number): boolean {
  if (lo <= hi) return lo <= h && h < hi;
  return h >= lo || h < hi;
}

export function inInterval(
  v: number,
  lo: number,
  loOpen: boolean,
  hi: number,
  hiClosed: boolean,
): boolean {
  if (loOpen ? v <= lo : v < lo) return false;
  return hiClosed ? v <= hi : v < hi;
}

function matches(spec: TermSpec, L: number, C: number, h: number): boolean {
  if (spec.hue && !inHueHalfOpen(h, spec.hue[0], spec.hue[1])) return false;
  if (
    spec.lightness &&
    !inInterval(
      L,
      spec.lightness[0],
      spec.lightness_min_open ?? false,
      spec.lightness[1],
      spec.lightness_max_closed ?? false,
    )
  )
    return false;
  if (
    spec.chroma &&
    !inInterval(C, spec.chroma[0], false, spec.chroma[1], spec.chroma_max_closed ?? false)
  )
    return false;
  return true;
}

/**
 * Names a LAB color with the server's term table: first region whose gates
 * all pass wins; otherwise the first matching hue wedge alone; otherwise
 * the first achromatic (hue-less) term.
 */
export function classifyTerm(lab: Lab, table: TermTable): string {
  const C = chroma(lab.a, lab.b);
  const h = hueDeg(lab.a, lab.b);
  for (const name of table.order) {
    if (matches(table.terms[name], lab.L, C, h)) return name;
  }
  for (const name of table.order) {
    const spec = table.terms[name];
    if (spec.hue && inHueHalfOpen(h, spec.hue[0], spec.hue[1])) return name;
  }
  for (const name of table.order) {
    if (!table.terms[name].hue) return name;
  }
  return table.order[0];
}

/** Relative luminance heuristic: pick readable text color for a swatch. */
export function textColorFor(hex: string): string {
  return hexToLab(hex).L > 55 ? "#1a1a1a" : "#f5f5f5";
}

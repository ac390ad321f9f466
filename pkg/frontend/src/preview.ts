/** Client-side SVG preview with the same geometry as the server renderer:
 * background rect first, bounding-box scaling, y axis flipped, circles of
 * radius 3 for scatter points, stroke-width 2 polylines, bars at 0.8 of
 * their slot. */

import type { ChartDataset, PaletteDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const POINT_RADIUS = 3;
const STROKE_WIDTH = 2;
const BAR_REL_WIDTH = 0.8;

export function fmt(v: number): string {
  let s = v.toFixed(2);
  if (s.includes(".")) s = s.replace(/0+$/, "").replace(/\.$/, "");
  return s;
}

function scaleToCanvas(
  points: [number, number][],
  canvas: [number, number],
): [number, number][] {
  const out: [number, number][] = points.map((p) => [p[0], p[1]]);
  for (const axis of [0, 1] as const) {
    let lo = Infinity;
    let hi = -Infinity;
    for (const p of points) {
      lo = Math.min(lo, p[axis]);
      hi = Math.max(hi, p[axis]);
    }
    for (const q of out) {
      q[axis] = hi > lo ? ((q[axis] - lo) / (hi - lo)) * canvas[axis] : canvas[axis] / 2;
    }
  }
  return out;
}

function el(doc: Document, tag: string, attrs: Record<string, string>): Element {
  const node = doc.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function buildPreview(
  doc: Document,
  ds: ChartDataset,
  palette: PaletteDoc,
): SVGSVGElement {
  if (palette.colors.length !== ds.classes.length) {
    throw new Error(
      `palette has ${palette.colors.length} colors, dataset has ${ds.classes.length} classes`,
    );
  }
  const [w, h] = ds.canvas;
  const svg = el(doc, "svg", {
    width: fmt(w),
    height: fmt(h),
    viewBox: `0 0 ${fmt(w)} ${fmt(h)}`,
  }) as SVGSVGElement;
  svg.appendChild(
    el(doc, "rect", { x: "0", y: "0", width: fmt(w), height: fmt(h), fill: palette.background }),
  );
  const hexes = palette.colors.map((c) => c.hex);

  if (ds.kind === "scatter") {
    const scaled = scaleToCanvas(
      ds.points.map((p) => [p[0], p[1]]),
      ds.canvas,
    );
    ds.points.forEach((p, i) => {
      const [x, y] = scaled[i];
      svg.appendChild(
        el(doc, "circle", {
          cx: fmt(x),
          cy: fmt(h - y),
          r: fmt(POINT_RADIUS),
          fill: hexes[p[2]],
        }),
      );
    });
  } else if (ds.kind === "line") {
    const pooled: [number, number][] = ds.series.flat().map((v) => [v[0], v[1]]);
    const scaled = scaleToCanvas(pooled, ds.canvas);
    let start = 0;
    ds.series.forEach((s, cls) => {
      const pts = scaled.slice(start, start + s.length);
      start += s.length;
      svg.appendChild(
        el(doc, "polyline", {
          points: pts.map(([x, y]) => `${fmt(x)},${fmt(h - y)}`).join(" "),
          fill: "none",
          stroke: hexes[cls],
          "stroke-width": fmt(STROKE_WIDTH),
        }),
      );
    });
  } else {
    const m = ds.bars.length;
    const slot = w / m;
    const barW = slot * BAR_REL_WIDTH;
    const peak = Math.max(...ds.bars);
    ds.bars.forEach((v, i) => {
      const bh = peak > 0 ? (v / peak) * h : 0;
      svg.appendChild(
        el(doc, "rect", {
          x: fmt((i + 0.5) * slot - barW / 2),
          y: fmt(h - bh),
          width: fmt(barW),
          height: fmt(bh),
          fill: hexes[i],
        }),
      );
    });
  }
  return svg;
}

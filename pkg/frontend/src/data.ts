/** Built-in demo datasets and validation for uploaded dataset files. */

import type { BarDataset, ChartDataset, LineDataset, ScatterDataset } from "./types.js";

/** Small deterministic generator so demo data stays stable across sessions. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function gauss(rand: () => number): number {
  const u = Math.max(rand(), 1e-12);
  const v = rand();
  return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * v);
}

function demoScatter(): ScatterDataset {
  const rand = mulberry32(7);
  const centers: [number, number][] = [
    [25, 30],
    [60, 35],
    [40, 70],
    [80, 75],
    [15, 80],
  ];
  const points: [number, number, number][] = [];
  centers.forEach(([cx, cy], cls) => {
    for (let i = 0; i < 40; i++) {
      points.push([cx + gauss(rand) * 6, cy + gauss(rand) * 6, cls]);
    }
  });
  return {
    kind: "scatter",
    canvas: [420, 300],
    classes: centers.map((_, i) => `cluster ${i + 1}`),
    points,
  };
}

function demoLine(): LineDataset {
  const rand = mulberry32(11);
  const series: [number, number][][] = [];
  for (let s = 0; s < 4; s++) {
    let y = 20 + 15 * s;
    const pts: [number, number][] = [];
    for (let x = 0; x <= 24; x++) {
      y += gauss(rand) * 4 + Math.sin((x + s * 3) / 4) * 2;
      pts.push([x, y]);
    }
    series.push(pts);
  }
  return {
    kind: "line",
    canvas: [420, 300],
    classes: series.map((_, i) => `series ${i + 1}`),
    series,
  };
}

function demoBar(): BarDataset {
  return {
    kind: "bar",
    canvas: [420, 300],
    classes: ["north", "south", "east", "west", "central", "online"],
    bars: [42, 71, 28, 55, 63, 90],
  };
}

export interface DemoEntry {
  name: string;
  dataset: ChartDataset;
}

export function demoDatasets(): DemoEntry[] {
  return [
    { name: "demo: scatter (5 clusters)", dataset: demoScatter() },
    { name: "demo: line (4 series)", dataset: demoLine() },
    { name: "demo: bar (6 categories)", dataset: demoBar() },
  ];
}

function fail(reason: string): never {
  throw new Error(`invalid dataset: ${reason}`);
}

function checkCanvas(v: unknown): [number, number] {
  if (!Array.isArray(v) || v.length !== 2 || !v.every((x) => Number.isFinite(x) && x > 0)) {
    fail("canvas must be two positive numbers");
  }
  return [v[0], v[1]];
}

function checkClasses(v: unknown): string[] {
  if (!Array.isArray(v) || v.length === 0 || !v.every((x) => typeof x === "string")) {
    fail("classes must be a non-empty list of strings");
  }
  return v as string[];
}

function isPoint(p: unknown): p is number[] {
  return Array.isArray(p) && p.every((x) => Number.isFinite(x));
}

/** Parse and validate an uploaded dataset document. */
export function parseDataset(text: string): ChartDataset {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    fail("not valid JSON");
  }
  if (typeof raw !== "object" || raw === null) fail("expected a JSON object");
  const obj = raw as Record<string, unknown>;
  const canvas = checkCanvas(obj.canvas);
  const classes = checkClasses(obj.classes);
  const m = classes.length;

  if (obj.kind === "scatter") {
    const pts = obj.points;
    if (!Array.isArray(pts) || pts.length === 0) fail("points must be a non-empty list");
    for (const p of pts) {
      if (!isPoint(p) || p.length !== 3) fail("each point must be [x, y, class]");
      if (!Number.isInteger(p[2]) || p[2] < 0 || p[2] >= m) {
        fail(`point class ${p[2]} out of range 0..${m - 1}`);
      }
    }
    return { kind: "scatter", canvas, classes, points: pts as [number, number, number][] };
  }
  if (obj.kind === "line") {
    const series = obj.series;
    if (!Array.isArray(series) || series.length !== m) {
      fail("series count must equal the number of classes");
    }
    for (const s of series) {
      if (!Array.isArray(s) || s.length < 2) fail("each series needs at least two points");
      for (const p of s) {
        if (!isPoint(p) || p.length !== 2) fail("each series point must be [x, y]");
      }
      for (let i = 1; i < s.length; i++) {
        if (s[i][0] <= s[i - 1][0]) fail("series x values must be strictly increasing");
      }
    }
    return { kind: "line", canvas, classes, series: series as [number, number][][] };
  }
  if (obj.kind === "bar") {
    const bars = obj.bars;
    if (!Array.isArray(bars) || bars.length !== m || !bars.every((x) => Number.isFinite(x))) {
      fail("bars must be one number per class");
    }
    return { kind: "bar", canvas, classes, bars: bars as number[] };
  }
  fail("kind must be scatter, line, or bar");
}

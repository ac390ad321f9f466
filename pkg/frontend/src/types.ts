/** Wire types for the palette service and the chart datasets it accepts. */

export type Weights = [number, number, number];

export interface ScatterDataset {
  kind: "scatter";
  canvas: [number, number];
  classes: string[];
  points: [number, number, number][];
}

export interface LineDataset {
  kind: "line";
  canvas: [number, number];
  classes: string[];
  series: [number, number][][];
}

export interface BarDataset {
  kind: "bar";
  canvas: [number, number];
  classes: string[];
  bars: number[];
}

export type ChartDataset = ScatterDataset | LineDataset | BarDataset;

export interface PaletteColor {
  class: string;
  hex: string;
  lab: [number, number, number];
  locked: boolean;
}

export interface PaletteDoc {
  background: string;
  colors: PaletteColor[];
  energy: Record<string, number>;
}

export interface EnergyBreakdown {
  point_distinctness: number;
  name_difference: number;
  color_discrimination: number;
  pd_norm: number;
  total: number;
}

export interface FilterSpec {
  lightness?: [number, number];
  terms?: string[] | null;
  exclude_disliked?: boolean;
}

export interface GraphSpec {
  method?: "alpha" | "knn";
  alpha?: number | null;
  k?: number;
  spacing?: number;
}

export interface PaletteRequest {
  dataset: ChartDataset;
  weights: Weights;
  background: string;
  filter: FilterSpec;
  graph?: GraphSpec;
  seed: number;
  restarts?: number;
  palette?: PaletteDoc | null;
}

export interface PaletteResponse {
  palette: PaletteDoc;
  energy: EnergyBreakdown;
  trace: { iterations: number; wall_time: number; truncated: boolean };
  warnings: string[];
}

/** One hue-term region as published by GET /api/meta. */
export interface TermSpec {
  hue?: [number, number];
  lightness?: [number, number];
  lightness_min_open?: boolean;
  lightness_max_closed?: boolean;
  chroma?: [number, number];
  chroma_max_closed?: boolean;
}

export interface TermTable {
  order: string[];
  terms: Record<string, TermSpec>;
}

export interface Meta {
  version: string;
  tau: number;
  cooling: number;
  t_start: number;
  t_end: number;
  nd_factor: number;
  cd_factor: number;
  default_weights: number[];
  terms: TermTable;
  excluded_band: { hue: [number, number]; lightness: [number, number] };
  limits: { max_points: number; max_classes: number };
}

export interface ApiError {
  detail: { type: string; reason: string };
}

export interface HistoryEntry {
  id: number;
  timestamp: string;
  request: PaletteRequest;
  palette: PaletteDoc;
  energy: EnergyBreakdown;
}

/** Application state and the request-building rules the panels share. */

import { hexToLab } from "./color.js";
import type { ApiClient } from "./api.js";
import type {
  ChartDataset,
  HistoryEntry,
  Meta,
  EnergyBreakdown,
  PaletteDoc,
  PaletteRequest,
  Weights,
} from "./types.js";

export interface AppState {
  meta: Meta | null;
  dataset: ChartDataset | null;
  datasetName: string;
  weights: Weights;
  /** Hue terms ticked in the filter panel; empty set means unconstrained. */
  terms: Set<string>;
  background: string;
  palette: PaletteDoc | null;
  energy: EnergyBreakdown | null;
  history: HistoryEntry[];
  pending: boolean;
  error: string | null;
  warnings: string[];
}

export function initialState(): AppState {
  return {
    meta: null,
    dataset: null,
    datasetName: "",
    weights: [1, 1, 1],
    terms: new Set(),
    background: "#FFFFFF",
    palette: null,
    energy: null,
    history: [],
    pending: false,
    error: null,
    warnings: [],
  };
}

type Listener = (s: AppState) => void;

export class Store {
  private listeners = new Set<Listener>();

  constructor(public state: AppState = initialState()) {}

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  update(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }
}

/** Reason Generate is unavailable, or null when it can run. */
export function generateBlocked(s: AppState): string | null {
  if (!s.dataset) return "Load a dataset first.";
  if (s.weights.every((w) => w === 0))
    return "All three weights are zero — nothing to optimize. Raise at least one.";
  if (s.pending) return "A request is already running.";
  return null;
}

/**
 * Candidate lightness range for a given background, so palettes keep
 * contrast headroom: dark backgrounds lift the minimum lightness, light
 * backgrounds cap the maximum.
 */
export function lightnessRangeFor(backgroundHex: string): [number, number] {
  const L = hexToLab(backgroundHex).L;
  if (L < 50) return [Math.max(35, L + 25), 95];
  return [15, Math.min(75, L - 25)];
}

/**
 * Terms to send with a request: null (unconstrained) when nothing or
 * everything is ticked, otherwise the ticked subset in table order.
 */
export function effectiveTerms(s: AppState): string[] | null {
  const all = s.meta?.terms.order ?? [];
  if (s.terms.size === 0 || s.terms.size === all.length) return null;
  return all.filter((t) => s.terms.has(t));
}

/** Current palette with lock flags, for completion requests; null when no
 * color is locked (a fresh run needs no starting palette). */
export function lockedPayload(s: AppState): PaletteDoc | null {
  if (!s.palette || !s.palette.colors.some((c) => c.locked)) return null;
  return s.palette;
}

export function buildRequest(s: AppState, seed: number): PaletteRequest {
  if (!s.dataset) throw new Error("no dataset loaded");
  const req: PaletteRequest = {
    dataset: s.dataset,
    weights: [...s.weights] as Weights,
    background: s.background,
    filter: {
      lightness: lightnessRangeFor(s.background),
      terms: effectiveTerms(s),
      exclude_disliked: true,
    },
    seed,
  };
  const palette = lockedPayload(s);
  if (palette) req.palette = palette;
  return req;
}

export function randomSeed(): number {
  return Math.floor(Math.random() * 2 ** 31);
}

/** Drives requests: one in flight at a time, stale responses discarded. */
export class Dispatcher {
  private token = 0;
  private nextId = 1;

  constructor(
    private readonly store: Store,
    private readonly api: ApiClient,
  ) {}

  /** Fresh seed; current locks (if any) ride along. */
  generate(): Promise<void> {
    return this.send(buildRequest(this.store.state, randomSeed()));
  }

  /** Resubmit a history snapshot verbatim — same seed, same palette. */
  replay(entry: HistoryEntry): Promise<void> {
    return this.send(entry.request, { record: false });
  }

  async send(req: PaletteRequest, opts: { record?: boolean } = {}): Promise<void> {
    const token = ++this.token;
    this.store.update({ pending: true, error: null, warnings: [] });
    try {
      const res = await this.api.palette(req);
      if (token !== this.token) return; // superseded while in flight
      const patch: Partial<AppState> = {
        pending: false,
        palette: res.palette,
        energy: res.energy,
        warnings: res.warnings,
      };
      if (opts.record !== false) {
        const entry: HistoryEntry = {
          id: this.nextId++,
          timestamp: new Date().toISOString(),
          request: req,
          palette: res.palette,
          energy: res.energy,
        };
        patch.history = [entry, ...this.store.state.history];
      }
      this.store.update(patch);
    } catch (err) {
      if (token !== this.token) return;
      this.store.update({
        pending: false,
        error: err instanceof Error ? err.message : String(err),
      });
    }
  }
}

/** Toggle one swatch's lock flag; everything else is untouched. */
export function toggleLock(s: AppState, index: number): Partial<AppState> {
  if (!s.palette) return {};
  const colors = s.palette.colors.map((c, i) =>
    i === index ? { ...c, locked: !c.locked } : c,
  );
  return { palette: { ...s.palette, colors } };
}

export function setAllLocks(s: AppState, locked: boolean): Partial<AppState> {
  if (!s.palette) return {};
  const colors = s.palette.colors.map((c) => ({ ...c, locked }));
  return { palette: { ...s.palette, colors } };
}

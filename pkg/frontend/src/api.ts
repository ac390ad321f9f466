/** Thin typed client for the palette service's three endpoints. */

import type {
  ApiError,
  EnergyBreakdown,
  ChartDataset,
  GraphSpec,
  Meta,
  PaletteDoc,
  PaletteRequest,
  PaletteResponse,
  Weights,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly type: string,
    public readonly reason: string,
  ) {
    super(`${type}: ${reason}`);
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  if (res.ok) return (await res.json()) as T;
  let type = "HttpError";
  let reason = `${res.status} ${res.statusText}`;
  try {
    const body = (await res.json()) as ApiError;
    if (body?.detail?.type) {
      type = body.detail.type;
      reason = body.detail.reason;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ServiceError(res.status, type, reason);
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async meta(): Promise<Meta> {
    return unwrap<Meta>(await fetch(`${this.base}/api/meta`));
  }

  async palette(req: PaletteRequest): Promise<PaletteResponse> {
    return unwrap<PaletteResponse>(
      await fetch(`${this.base}/api/palette`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
      }),
    );
  }

  async score(
    dataset: ChartDataset,
    palette: PaletteDoc,
    weights: Weights,
    graph?: GraphSpec,
  ): Promise<EnergyBreakdown> {
    return unwrap<EnergyBreakdown>(
      await fetch(`${this.base}/api/score`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ dataset, palette, weights, ...(graph ? { graph } : {}) }),
      }),
    );
  }
}

import { describe, expect, it } from "vitest";
import { demoDatasets, parseDataset } from "../src/data.js";

describe("demoDatasets", () => {
  it("offers one demo per chart kind", () => {
    const kinds = demoDatasets().map((d) => d.dataset.kind);
    expect(kinds).toEqual(["scatter", "line", "bar"]);
  });

  it("is deterministic across calls", () => {
    expect(JSON.stringify(demoDatasets())).toBe(JSON.stringify(demoDatasets()));
  });

  it("keeps class labels consistent with the data", () => {
    for (const { dataset } of demoDatasets()) {
      const m = dataset.classes.length;
      if (dataset.kind === "scatter") {
        expect(dataset.points.every((p) => p[2] >= 0 && p[2] < m)).toBe(true);
      } else if (dataset.kind === "line") {
        expect(dataset.series).toHaveLength(m);
        for (const s of dataset.series) {
          for (let i = 1; i < s.length; i++) expect(s[i][0]).toBeGreaterThan(s[i - 1][0]);
        }
      } else {
        expect(dataset.bars).toHaveLength(m);
      }
    }
  });
});

describe("parseDataset", () => {
  it("round-trips the demo datasets", () => {
    for (const { dataset } of demoDatasets()) {
      expect(parseDataset(JSON.stringify(dataset))).toEqual(dataset);
    }
  });

  it("rejects non-JSON and non-objects", () => {
    expect(() => parseDataset("not json")).toThrow(/JSON/);
    expect(() => parseDataset("[1,2]")).toThrow();
    expect(() => parseDataset("null")).toThrow();
  });

  it("rejects unknown kinds and bad canvases", () => {
    expect(() =>
      parseDataset(JSON.stringify({ kind: "pie", canvas: [10, 10], classes: ["a"] })),
    ).toThrow(/kind/);
    expect(() =>
      parseDataset(JSON.stringify({ kind: "bar", canvas: [0, 10], classes: ["a"], bars: [1] })),
    ).toThrow(/canvas/);
  });

  it("rejects out-of-range point classes", () => {
    const bad = {
      kind: "scatter",
      canvas: [10, 10],
      classes: ["a"],
      points: [[1, 1, 1]],
    };
    expect(() => parseDataset(JSON.stringify(bad))).toThrow(/out of range/);
  });

  it("rejects series with non-increasing x", () => {
    const bad = {
      kind: "line",
      canvas: [10, 10],
      classes: ["a"],
      series: [
        [
          [0, 1],
          [0, 2],
        ],
      ],
    };
    expect(() => parseDataset(JSON.stringify(bad))).toThrow(/increasing/);
  });

  it("rejects a bar count that disagrees with the classes", () => {
    const bad = { kind: "bar", canvas: [10, 10], classes: ["a", "b"], bars: [1] };
    expect(() => parseDataset(JSON.stringify(bad))).toThrow(/bars/);
  });
});

import { describe, expect, it } from "vitest";
import { hexToLab } from "../src/color.js";
import { buildPreview, fmt } from "../src/preview.js";
import type {
  BarDataset,
  LineDataset,
  PaletteDoc,
  ScatterDataset,
} from "../src/types.js";

function paletteOf(hexes: string[], background = "#FFFFFF"): PaletteDoc {
  return {
    background,
    colors: hexes.map((hex, i) => {
      const lab = hexToLab(hex);
      return { class: `c${i}`, hex, lab: [lab.L, lab.a, lab.b], locked: false };
    }),
    energy: {},
  };
}

describe("fmt", () => {
  it("prints at most two decimals and strips trailing zeros", () => {
    expect(fmt(100)).toBe("100");
    expect(fmt(0)).toBe("0");
    expect(fmt(1.5)).toBe("1.5");
    expect(fmt(0.25)).toBe("0.25");
    expect(fmt(2.5)).toBe("2.5");
    expect(fmt(33.333)).toBe("33.33");
  });
});

describe("scatter preview", () => {
  const ds: ScatterDataset = {
    kind: "scatter",
    canvas: [100, 50],
    classes: ["a", "b"],
    points: [
      [0, 0, 0],
      [10, 20, 1],
    ],
  };

  it("puts the background rect first and sizes the svg", () => {
    const svg = buildPreview(document, ds, paletteOf(["#AA0000", "#00AA00"], "#123456"));
    expect(svg.getAttribute("width")).toBe("100");
    expect(svg.getAttribute("height")).toBe("50");
    expect(svg.getAttribute("viewBox")).toBe("0 0 100 50");
    const first = svg.children[0];
    expect(first.tagName.toLowerCase()).toBe("rect");
    expect(first.getAttribute("fill")).toBe("#123456");
    expect(first.getAttribute("width")).toBe("100");
  });

  it("scales to the bounding box and flips the y axis", () => {
    const svg = buildPreview(document, ds, paletteOf(["#AA0000", "#00AA00"]));
    const circles = Array.from(svg.querySelectorAll("circle"));
    expect(circles).toHaveLength(2);
    // (0,0) -> canvas (0,0) -> cy flipped to 50
    expect(circles[0].getAttribute("cx")).toBe("0");
    expect(circles[0].getAttribute("cy")).toBe("50");
    // (10,20) -> canvas (100,50) -> cy flipped to 0
    expect(circles[1].getAttribute("cx")).toBe("100");
    expect(circles[1].getAttribute("cy")).toBe("0");
    for (const c of circles) expect(c.getAttribute("r")).toBe("3");
  });

  it("fills each point with its class color", () => {
    const svg = buildPreview(document, ds, paletteOf(["#AA0000", "#00AA00"]));
    const circles = Array.from(svg.querySelectorAll("circle"));
    expect(circles[0].getAttribute("fill")).toBe("#AA0000");
    expect(circles[1].getAttribute("fill")).toBe("#00AA00");
  });

  it("centres a degenerate axis", () => {
    const flat: ScatterDataset = {
      kind: "scatter",
      canvas: [100, 50],
      classes: ["a"],
      points: [
        [5, 0, 0],
        [5, 10, 0],
      ],
    };
    const svg = buildPreview(document, flat, paletteOf(["#AA0000"]));
    const circles = Array.from(svg.querySelectorAll("circle"));
    expect(circles[0].getAttribute("cx")).toBe("50");
    expect(circles[1].getAttribute("cx")).toBe("50");
  });

  it("rejects a palette of the wrong size", () => {
    expect(() => buildPreview(document, ds, paletteOf(["#AA0000"]))).toThrow(/classes/);
  });
});

describe("line preview", () => {
  const ds: LineDataset = {
    kind: "line",
    canvas: [100, 100],
    classes: ["a", "b"],
    series: [
      [
        [0, 0],
        [1, 10],
      ],
      [
        [0, 10],
        [1, 20],
      ],
    ],
  };

  it("shares one bounding box across series", () => {
    const svg = buildPreview(document, ds, paletteOf(["#AA0000", "#00AA00"]));
    const lines = Array.from(svg.querySelectorAll("polyline"));
    expect(lines).toHaveLength(2);
    // pooled y range is [0, 20]: series a spans the lower half, b the upper
    expect(lines[0].getAttribute("points")).toBe("0,100 100,50");
    expect(lines[1].getAttribute("points")).toBe("0,50 100,0");
  });

  it("strokes with the class color and no fill", () => {
    const svg = buildPreview(document, ds, paletteOf(["#AA0000", "#00AA00"]));
    const lines = Array.from(svg.querySelectorAll("polyline"));
    expect(lines[0].getAttribute("stroke")).toBe("#AA0000");
    expect(lines[1].getAttribute("stroke")).toBe("#00AA00");
    for (const l of lines) {
      expect(l.getAttribute("fill")).toBe("none");
      expect(l.getAttribute("stroke-width")).toBe("2");
    }
  });
});

describe("bar preview", () => {
  const ds: BarDataset = {
    kind: "bar",
    canvas: [100, 80],
    classes: ["a", "b", "c", "d"],
    bars: [1, 2, 4, 0],
  };

  it("lays bars out in 0.8-wide slots scaled to the peak", () => {
    const svg = buildPreview(
      document,
      ds,
      paletteOf(["#111111", "#222222", "#333333", "#444444"]),
    );
    const rects = Array.from(svg.querySelectorAll("rect")).slice(1); // skip background
    expect(rects).toHaveLength(4);
    expect(rects.map((r) => r.getAttribute("x"))).toEqual(["2.5", "27.5", "52.5", "77.5"]);
    expect(rects.map((r) => r.getAttribute("width"))).toEqual(["20", "20", "20", "20"]);
    expect(rects.map((r) => r.getAttribute("height"))).toEqual(["20", "40", "80", "0"]);
    expect(rects.map((r) => r.getAttribute("y"))).toEqual(["60", "40", "0", "80"]);
    expect(rects.map((r) => r.getAttribute("fill"))).toEqual([
      "#111111",
      "#222222",
      "#333333",
      "#444444",
    ]);
  });

  it("draws zero-height bars when every value is zero", () => {
    const zeros: BarDataset = { ...ds, bars: [0, 0, 0, 0] };
    const svg = buildPreview(
      document,
      zeros,
      paletteOf(["#111111", "#222222", "#333333", "#444444"]),
    );
    const rects = Array.from(svg.querySelectorAll("rect")).slice(1);
    expect(rects.every((r) => r.getAttribute("height") === "0")).toBe(true);
  });
});

"""SVG previews of colored charts."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .charts import BarChartData, LineChartData, map_series_to_canvas
from .colors import Palette, lab_to_srgb
from .datasets import ChartDataset
from .errors import SizeMismatch
from .graphs import LabeledPointSet, scale_to_canvas

SVG_NS = "http://www.w3.org/2000/svg"

POINT_RADIUS = 3.0
STROKE_WIDTH = 2.0


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _flip_y(points: np.ndarray, height: float) -> np.ndarray:
    out = points.copy()
    out[:, 1] = height - out[:, 1]
    return out


def _scatter_elements(svg, ps: LabeledPointSet, hexes, canvas):
    pts = _flip_y(scale_to_canvas(ps.points, canvas), canvas[1])
    for (x, y), label in zip(pts, ps.labels):
        ET.SubElement(svg, "circle", cx=_fmt(x), cy=_fmt(y),
                      r=_fmt(POINT_RADIUS), fill=hexes[label])


def _line_elements(svg, lc: LineChartData, hexes, canvas):
    for cls, series in enumerate(map_series_to_canvas(lc.series, canvas)):
        pts = _flip_y(series, canvas[1])
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        ET.SubElement(svg, "polyline", points=coords, fill="none",
                      stroke=hexes[cls], attrib={
                          "stroke-width": _fmt(STROKE_WIDTH)})


def _bar_elements(svg, bc: BarChartData, hexes, canvas):
    width, height = canvas
    slot = width / bc.m
    bar_w = slot * bc.rel_width
    peak = bc.values.max()
    heights = bc.values / peak * height if peak > 0 else np.zeros(bc.m)
    for i, h in enumerate(heights):
        ET.SubElement(svg, "rect", x=_fmt((i + 0.5) * slot - bar_w / 2.0),
                      y=_fmt(height - h), width=_fmt(bar_w), height=_fmt(h),
                      fill=hexes[i])


def render_svg(ds: ChartDataset, p: Palette) -> str:
    """One SVG document: background rect plus one shape per datum.

    The y axis points up in chart coordinates and down in SVG, so all
    geometry is mirrored about the canvas midline.
    """
    if p.m != ds.m:
        raise SizeMismatch(f"palette has {p.m} colors, dataset has {ds.m} classes")
    w, h = ds.canvas
    svg = ET.Element("svg", xmlns=SVG_NS, width=_fmt(w), height=_fmt(h),
                     viewBox=f"0 0 {_fmt(w)} {_fmt(h)}")
    ET.SubElement(svg, "rect", x="0", y="0", width=_fmt(w), height=_fmt(h),
                  fill=lab_to_srgb(p.background)[0].hex)
    hexes = p.hexes()
    if ds.kind == "scatter":
        _scatter_elements(svg, ds.payload, hexes, ds.canvas)
    elif ds.kind == "line":
        _line_elements(svg, ds.payload, hexes, ds.canvas)
    else:
        _bar_elements(svg, ds.payload, hexes, ds.canvas)
    return ET.tostring(svg, encoding="unicode") + "\n"

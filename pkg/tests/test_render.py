import xml.etree.ElementTree as ET

import numpy as np
import pytest

from huefit.colors import LabColor, Palette, lab_to_srgb, srgb_to_lab, RgbColor
from huefit.datasets import dataset_from_config
from huefit.errors import SizeMismatch
from huefit.render import render_svg

NS = {"svg": "http://www.w3.org/2000/svg"}


def palette_for(m, background=None):
    background = background or srgb_to_lab(RgbColor(255, 255, 255))
    seeds = [LabColor(30.0 + 8.0 * i, 40.0 - 15.0 * i, -20.0 + 12.0 * i)
             for i in range(m)]
    return Palette(tuple(seeds), background)


def parse(svg_text):
    return ET.fromstring(svg_text)


class TestDocument:
    def test_root_and_dimensions(self):
        ds = dataset_from_config({"kind": "bar", "bars": [1, 2],
                                  "canvas": [320, 240]})
        root = parse(render_svg(ds, palette_for(2)))
        assert root.tag == "{http://www.w3.org/2000/svg}svg"
        assert root.get("width") == "320"
        assert root.get("height") == "240"
        assert root.get("viewBox") == "0 0 320 240"

    def test_background_rect_first(self):
        ds = dataset_from_config({"kind": "bar", "bars": [1, 2]})
        bg = srgb_to_lab(RgbColor(32, 32, 32))
        root = parse(render_svg(ds, palette_for(2, background=bg)))
        first = list(root)[0]
        assert first.tag.endswith("rect")
        assert first.get("fill") == lab_to_srgb(bg)[0].hex
        assert first.get("width") == "400"

    def test_size_mismatch(self):
        ds = dataset_from_config({"kind": "bar", "bars": [1, 2, 3]})
        with pytest.raises(SizeMismatch):
            render_svg(ds, palette_for(2))

    def test_ends_with_newline(self):
        ds = dataset_from_config({"kind": "bar", "bars": [1, 2]})
        assert render_svg(ds, palette_for(2)).endswith("\n")


class TestScatter:
    def test_one_circle_per_point(self):
        ds = dataset_from_config({
            "kind": "scatter", "classes": ["a"],
            "points": [[0.0, 0.0, 0], [5.0, 5.0, 0], [2.0, 9.0, 0]],
        })
        root = parse(render_svg(ds, palette_for(1)))
        circles = root.findall("svg:circle", NS)
        assert len(circles) == 3
        assert all(c.get("r") == "3" for c in circles)

    def test_fills_follow_class_colors(self):
        ds = dataset_from_config({
            "kind": "scatter", "classes": ["a", "b"],
            "points": [[0.0, 0.0, 0], [10.0, 10.0, 1]],
        })
        p = palette_for(2)
        root = parse(render_svg(ds, p))
        fills = [c.get("fill") for c in root.findall("svg:circle", NS)]
        assert fills == p.hexes()

    def test_y_axis_flipped(self):
        # data y grows upward; SVG y grows downward
        ds = dataset_from_config({
            "kind": "scatter", "classes": ["a"],
            "points": [[0.0, 0.0, 0], [10.0, 10.0, 0]],
        })
        root = parse(render_svg(ds, palette_for(1)))
        circles = root.findall("svg:circle", NS)
        low = next(c for c in circles if c.get("cx") == "0")
        high = next(c for c in circles if c.get("cx") == "400")
        assert low.get("cy") == "400"
        assert high.get("cy") == "0"


class TestLine:
    def test_one_polyline_per_series(self):
        ds = dataset_from_config({
            "kind": "line",
            "series": [[[0, 0], [1, 1]], [[0, 2], [1, 0]], [[0, 1], [1, 2]]],
        })
        p = palette_for(3)
        root = parse(render_svg(ds, p))
        polys = root.findall("svg:polyline", NS)
        assert len(polys) == 3
        assert [e.get("stroke") for e in polys] == p.hexes()
        assert all(e.get("fill") == "none" for e in polys)
        assert all(e.get("stroke-width") == "2" for e in polys)

    def test_vertex_count_preserved(self):
        ds = dataset_from_config({
            "kind": "line",
            "series": [[[0, 0], [1, 5], [2, 1], [3, 4]]],
        })
        root = parse(render_svg(ds, palette_for(1)))
        pts = root.find("svg:polyline", NS).get("points").split(" ")
        assert len(pts) == 4


class TestBar:
    def test_rect_geometry(self):
        ds = dataset_from_config({"kind": "bar", "bars": [10, 40, 20],
                                  "canvas": [120, 400]})
        p = palette_for(3)
        root = parse(render_svg(ds, p))
        rects = root.findall("svg:rect", NS)[1:]  # skip background
        assert len(rects) == 3
        # slot 40, default rel_width 0.8 gives bar width 32
        assert [r.get("x") for r in rects] == ["4", "44", "84"]
        assert [r.get("width") for r in rects] == ["32", "32", "32"]
        # tallest bar spans the canvas; tops measured from the SVG top edge
        assert [r.get("height") for r in rects] == ["100", "400", "200"]
        assert [r.get("y") for r in rects] == ["300", "0", "200"]
        assert [r.get("fill") for r in rects] == p.hexes()

    def test_zero_bars_render_flat(self):
        ds = dataset_from_config({"kind": "bar", "bars": [0, 0]})
        root = parse(render_svg(ds, palette_for(2)))
        rects = root.findall("svg:rect", NS)[1:]
        assert [r.get("height") for r in rects] == ["0", "0"]

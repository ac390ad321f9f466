"""Adapters that turn line and bar charts into labeled point sets."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .graphs import LabeledPointSet, NeighborGraph, scale_to_canvas


@dataclass
class LineChartData:
    """Per-series polylines in pixel space; one class per series."""

    series: list[np.ndarray]
    canvas: tuple[float, float] = (400.0, 400.0)

    def __post_init__(self):
        if not self.series:
            raise ValidationError("line chart needs at least one series")
        cleaned = []
        for i, s in enumerate(self.series):
            arr = np.ascontiguousarray(s, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[1] != 2 or len(arr) < 2:
                raise ValidationError(f"series {i} needs at least two (x,y) vertices")
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"series {i} has non-finite vertices")
            if np.any(np.diff(arr[:, 0]) <= 0):
                raise ValidationError(f"series {i} x values must strictly increase")
            cleaned.append(arr)
        self.series = cleaned

    @property
    def m(self) -> int:
        return len(self.series)


@dataclass
class BarChartData:
    """Bar heights plus layout; each bar becomes its own class."""

    values: np.ndarray
    canvas: tuple[float, float] = (400.0, 400.0)
    rel_width: float = field(default=0.8)

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or len(self.values) < 2:
            raise ValidationError("bar chart needs at least two bars")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValidationError("bar values must be finite and non-negative")
        if not 0.0 < self.rel_width <= 1.0:
            raise ValidationError("rel_width must be in (0, 1]")

    @property
    def m(self) -> int:
        return len(self.values)


def map_series_to_canvas(series: list[np.ndarray],
                         canvas: tuple[float, float]) -> list[np.ndarray]:
    """Scale all series with one shared data-to-pixel transform."""
    pooled = np.concatenate(series)
    scaled = scale_to_canvas(pooled, canvas)
    out = []
    start = 0
    for s in series:
        out.append(scaled[start:start + len(s)])
        start += len(s)
    return out


def _resample(polyline: np.ndarray, spacing: float) -> np.ndarray:
    seg = np.diff(polyline, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    total = cum[-1]
    steps = max(1, int(np.floor(total / spacing)))
    targets = np.linspace(0.0, total, steps + 1)
    x = np.interp(targets, cum, polyline[:, 0])
    y = np.interp(targets, cum, polyline[:, 1])
    return np.column_stack([x, y])


def discretize_lines(lc: LineChartData, spacing: float = 10.0) -> LabeledPointSet:
    """Sample each polyline at equidistant arc-length steps near `spacing`.

    The step count is floor(arc_length / spacing), stretched so both endpoints
    are always sample points; steeper series therefore yield more samples.
    """
    if not spacing > 0:
        raise ValidationError("spacing must be positive")
    points = []
    labels = []
    for cls, polyline in enumerate(lc.series):
        samples = _resample(polyline, spacing)
        points.append(samples)
        labels.append(np.full(len(samples), cls, dtype=np.int64))
    return LabeledPointSet(points=np.concatenate(points),
                           labels=np.concatenate(labels), m=lc.m)


def bars_to_graph(bc: BarChartData) -> tuple[LabeledPointSet, NeighborGraph]:
    """One point per bar center, chained left to right.

    Bars of similar height have nearer centers, so adjacent similar bars pull
    more strongly toward distinct colors.
    """
    m = bc.m
    width, height = bc.canvas
    slot = width / m
    centers_x = (np.arange(m) + 0.5) * slot
    peak = bc.values.max()
    heights = bc.values / peak * height if peak > 0 else np.zeros(m)
    centers = np.column_stack([centers_x, heights / 2.0])
    labels = np.arange(m, dtype=np.int64)
    ps = LabeledPointSet(points=centers, labels=labels, m=m)
    edges = np.column_stack([np.arange(m - 1), np.arange(1, m)]).astype(np.int64)
    delta = centers[edges[:, 0]] - centers[edges[:, 1]]
    dists = np.hypot(delta[:, 0], delta[:, 1])
    graph = NeighborGraph(n=m, edges=edges, distances=dists, kind="path",
                          parameter=0.0)
    return ps, graph

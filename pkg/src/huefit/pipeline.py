"""End-to-end runs: dataset to neighbor graph to optimized palette."""

from __future__ import annotations

from dataclasses import dataclass, field

from .annealing import AnnealConfig, AnnealResult, Observer, optimize
from .charts import bars_to_graph, discretize_lines, map_series_to_canvas
from .charts import LineChartData
from .colors import ColorFilter, Palette, RgbColor, srgb_to_lab
from .datasets import ChartDataset, palette_to_config
from .errors import InvalidConfig, SizeMismatch
from .graphs import (
    LabeledPointSet,
    NeighborGraph,
    alpha_shape_graph,
    default_alpha_radius,
    knn_graph,
    scale_to_canvas,
)
from .names import NameCountMatrix, default_name_matrix
from .scoring import (
    ClassPairWeights,
    ScoreWeights,
    energy_breakdown,
    precompute_pair_weights,
)

GRAPH_METHODS = ("alpha", "knn")


@dataclass(frozen=True)
class GraphConfig:
    """How chart data becomes a neighbor graph.

    alpha=None means the default radius derived from the data; spacing is the
    arc-length step for sampling line charts.  Bar charts ignore all of this
    and use the left-to-right chain of bar centers.
    """

    method: str = "alpha"
    alpha: float | None = None
    k: int = 2
    spacing: float = 10.0

    def __post_init__(self):
        if self.method not in GRAPH_METHODS:
            raise InvalidConfig(
                f"graph method must be one of {GRAPH_METHODS}, got {self.method!r}")
        if self.alpha is not None and not self.alpha > 0:
            raise InvalidConfig("alpha must be positive")
        if self.k < 1:
            raise InvalidConfig("k must be at least 1")
        if not self.spacing > 0:
            raise InvalidConfig("spacing must be positive")


@dataclass(frozen=True)
class RunConfig:
    """Everything one optimization run needs besides the dataset."""

    weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    background: str = "#FFFFFF"
    color_filter: ColorFilter = field(default_factory=ColorFilter)
    graph: GraphConfig = field(default_factory=GraphConfig)
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    initial: Palette | None = None
    restarts: int = 1

    def __post_init__(self):
        if len(self.weights) != 3:
            raise InvalidConfig("weights needs exactly three entries")
        if all(v == 0 for v in self.weights):
            raise InvalidConfig("at least one weight must be positive")
        object.__setattr__(self, "weights",
                           tuple(float(v) for v in self.weights))


def build_point_set(ds: ChartDataset,
                    gc: GraphConfig) -> tuple[LabeledPointSet, NeighborGraph | None]:
    """Chart payload to pixel-space points; bars also fix their graph."""
    if ds.kind == "scatter":
        ps = ds.payload
        scaled = scale_to_canvas(ps.points, ds.canvas)
        return LabeledPointSet(points=scaled, labels=ps.labels, m=ps.m), None
    if ds.kind == "line":
        mapped = map_series_to_canvas(ds.payload.series, ds.canvas)
        lc = LineChartData(series=mapped, canvas=ds.canvas)
        return discretize_lines(lc, gc.spacing), None
    return bars_to_graph(ds.payload)


def build_graph(ds: ChartDataset,
                gc: GraphConfig) -> tuple[LabeledPointSet, NeighborGraph]:
    ps, pre = build_point_set(ds, gc)
    if pre is not None:
        return ps, pre
    if gc.method == "knn":
        return ps, knn_graph(ps, gc.k)
    radius = gc.alpha if gc.alpha is not None else default_alpha_radius(ps)
    return ps, alpha_shape_graph(ps, radius)


@dataclass
class PipelineResult:
    result: AnnealResult
    point_set: LabeledPointSet
    graph: NeighborGraph
    weights: ClassPairWeights
    palette_doc: dict


def run_pipeline(ds: ChartDataset, rc: RunConfig,
                 matrix: NameCountMatrix | None = None,
                 observer: Observer | None = None,
                 time_budget: float | None = None) -> PipelineResult:
    """Optimize a palette for the dataset under the run configuration."""
    if rc.initial is not None and rc.initial.m != ds.m:
        raise SizeMismatch(
            f"initial palette has {rc.initial.m} colors, dataset has {ds.m}")
    matrix = matrix if matrix is not None else default_name_matrix()
    ps, graph = build_graph(ds, rc.graph)
    w = precompute_pair_weights(ps, graph)
    sw = ScoreWeights(omega=rc.weights)
    background = srgb_to_lab(RgbColor.from_hex(rc.background))
    result = optimize(w, matrix, sw, rc.anneal, rc.color_filter,
                      background=background, initial=rc.initial,
                      observer=observer, time_budget=time_budget,
                      restarts=rc.restarts)
    doc = palette_to_config(result.best_palette, ds.class_names,
                            energy=result.breakdown)
    return PipelineResult(result=result, point_set=ps, graph=graph, weights=w,
                          palette_doc=doc)


def score_palette(ds: ChartDataset, p: Palette,
                  weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
                  gc: GraphConfig = GraphConfig(),
                  matrix: NameCountMatrix | None = None) -> dict:
    """Evaluate a fixed palette against a dataset; pd stays unnormalized."""
    if p.m != ds.m:
        raise SizeMismatch(f"palette has {p.m} colors, dataset has {ds.m} classes")
    matrix = matrix if matrix is not None else default_name_matrix()
    ps, graph = build_graph(ds, gc)
    w = precompute_pair_weights(ps, graph)
    sw = ScoreWeights(omega=weights)
    return energy_breakdown(w, matrix, p, sw)

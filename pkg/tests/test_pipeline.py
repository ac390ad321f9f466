import json
from importlib import resources

import numpy as np
import pytest

from huefit.annealing import AnnealConfig
from huefit.colors import ColorFilter, LabColor, Palette, ciede2000
from huefit.datasets import dataset_from_config, dump_json
from huefit.errors import InvalidConfig, SizeMismatch
from huefit.pipeline import (
    GraphConfig,
    RunConfig,
    build_graph,
    build_point_set,
    run_pipeline,
    score_palette,
)
from huefit.scoring import ND_FACTOR, CD_FACTOR

FAST = AnnealConfig(t_start=10.0, t_end=0.01, cooling=0.9)


def bundled(name):
    raw = resources.files("huefit").joinpath("data", name).read_text()
    return dataset_from_config(json.loads(raw))


def min_pairwise(p: Palette) -> float:
    labs = list(p.class_colors) + [p.background]
    return min(ciede2000(labs[i], labs[j])
               for i in range(len(labs)) for j in range(i + 1, len(labs)))


class TestConfigs:
    def test_graph_method_validated(self):
        with pytest.raises(InvalidConfig):
            GraphConfig(method="gabriel")

    def test_graph_params_validated(self):
        with pytest.raises(InvalidConfig):
            GraphConfig(alpha=0.0)
        with pytest.raises(InvalidConfig):
            GraphConfig(k=0)
        with pytest.raises(InvalidConfig):
            GraphConfig(spacing=-1.0)

    def test_all_zero_weights_rejected(self):
        with pytest.raises(InvalidConfig, match="at least one weight"):
            RunConfig(weights=(0.0, 0.0, 0.0))

    def test_weight_count(self):
        with pytest.raises(InvalidConfig):
            RunConfig(weights=(1.0, 1.0))  # type: ignore[arg-type]

    def test_background_parsed_eagerly(self):
        RunConfig(background="#336699")


class TestPointSets:
    def test_scatter_scaled_to_canvas(self):
        ds = dataset_from_config({
            "kind": "scatter", "classes": ["a"],
            "points": [[5.0, 5.0, 0], [15.0, 25.0, 0]],
            "canvas": [400, 200],
        })
        ps, pre = build_point_set(ds, GraphConfig())
        assert pre is None
        assert ps.points[0].tolist() == [0.0, 0.0]
        assert ps.points[1].tolist() == [400.0, 200.0]

    def test_line_resampled_at_spacing(self):
        ds = dataset_from_config({
            "kind": "line",
            "series": [[[0.0, 0.0], [10.0, 0.0]]],
            "canvas": [100, 100],
        })
        ps, _ = build_point_set(ds, GraphConfig(spacing=10.0))
        # mapped onto 100 px of canvas: 11 samples
        assert ps.n == 11

    def test_bars_come_with_graph(self):
        ds = dataset_from_config({"kind": "bar", "bars": [3, 1, 4]})
        ps, pre = build_point_set(ds, GraphConfig())
        assert pre is not None
        assert pre.kind == "path"
        assert ps.n == 3

    def test_alpha_default_radius_applied(self):
        ds = bundled("example_scatter.json")
        _, graph = build_graph(ds, GraphConfig(method="alpha"))
        assert graph.kind == "alpha-shape"
        assert graph.parameter > 0

    def test_knn_graph_selected(self):
        ds = bundled("example_scatter.json")
        _, graph = build_graph(ds, GraphConfig(method="knn", k=3))
        assert graph.kind == "knn"
        assert graph.parameter == 3.0


class TestRunPipeline:
    def test_scatter_end_to_end(self):
        ds = bundled("example_scatter.json")
        out = run_pipeline(ds, RunConfig(anneal=FAST))
        p = out.result.best_palette
        assert p.m == ds.m == 4
        assert min_pairwise(p) >= 10.0
        doc = out.palette_doc
        assert [c["class"] for c in doc["colors"]] == list(ds.class_names)
        assert doc["background"] == "#FFFFFF"
        assert set(doc["energy"]) == {
            "point_distinctness", "name_difference", "color_discrimination",
            "pd_norm", "total"}

    def test_deterministic_documents(self):
        ds = bundled("example_scatter.json")
        rc = RunConfig(anneal=AnnealConfig(seed=9, t_start=10.0, t_end=0.01,
                                           cooling=0.9))
        a = dump_json(run_pipeline(ds, rc).palette_doc)
        b = dump_json(run_pipeline(ds, rc).palette_doc)
        assert a == b

    def test_line_and_bar_datasets(self):
        for name in ("example_line.json", "example_bar.json"):
            ds = bundled(name)
            out = run_pipeline(ds, RunConfig(anneal=FAST))
            assert out.result.best_palette.m == ds.m
            assert min_pairwise(out.result.best_palette) >= 10.0

    def test_custom_background(self):
        ds = bundled("example_bar.json")
        rc = RunConfig(background="#202020", anneal=FAST)
        out = run_pipeline(ds, rc)
        assert out.palette_doc["background"] == "#202020"
        assert min_pairwise(out.result.best_palette) >= 10.0

    def test_filter_applied(self):
        ds = bundled("example_bar.json")
        rc = RunConfig(color_filter=ColorFilter(lightness_range=(30.0, 60.0)),
                       anneal=FAST)
        out = run_pipeline(ds, rc)
        for c in out.result.best_palette.class_colors:
            assert 30.0 <= c.L <= 60.0

    def test_initial_palette_mismatch(self):
        ds = bundled("example_scatter.json")
        white = LabColor(100.0, 0.0, 0.0)
        two = Palette((LabColor(30, 40, 20), LabColor(70, -40, -30)), white)
        with pytest.raises(SizeMismatch):
            run_pipeline(ds, RunConfig(initial=two, anneal=FAST))

    def test_observer_and_budget_forwarded(self):
        ds = bundled("example_bar.json")
        steps = []
        out = run_pipeline(ds, RunConfig(anneal=FAST),
                           observer=lambda s, t, c, b: steps.append(s))
        assert len(steps) == out.result.iterations


class TestScorePalette:
    def test_matches_hand_composed_breakdown(self):
        ds = bundled("example_scatter.json")
        out = run_pipeline(ds, RunConfig(anneal=FAST))
        p = out.result.best_palette
        b = score_palette(ds, p)
        # scoring reports the raw pd term (no run normalization)
        assert b["pd_norm"] == 1.0
        assert b["total"] == pytest.approx(
            b["point_distinctness"] + ND_FACTOR * b["name_difference"]
            + CD_FACTOR * b["color_discrimination"], abs=1e-9)
        run_b = out.result.breakdown
        assert b["point_distinctness"] == pytest.approx(
            run_b["point_distinctness"] * run_b["pd_norm"], abs=1e-6)
        assert b["name_difference"] == pytest.approx(
            run_b["name_difference"], abs=1e-9)
        assert b["color_discrimination"] == pytest.approx(
            run_b["color_discrimination"], abs=1e-9)

    def test_weights_respected(self):
        ds = bundled("example_bar.json")
        out = run_pipeline(ds, RunConfig(anneal=FAST))
        p = out.result.best_palette
        b = score_palette(ds, p, weights=(0.0, 0.0, 1.0))
        assert b["total"] == pytest.approx(
            CD_FACTOR * b["color_discrimination"], abs=1e-12)

    def test_size_mismatch(self):
        ds = bundled("example_bar.json")
        white = LabColor(100.0, 0.0, 0.0)
        with pytest.raises(SizeMismatch):
            score_palette(ds, Palette((LabColor(50, 0, 0),), white))

    def test_graph_method_changes_pd(self):
        ds = bundled("example_scatter.json")
        out = run_pipeline(ds, RunConfig(anneal=FAST))
        p = out.result.best_palette
        b_alpha = score_palette(ds, p, gc=GraphConfig(method="alpha"))
        b_knn = score_palette(ds, p, gc=GraphConfig(method="knn", k=2))
        assert b_alpha["point_distinctness"] != pytest.approx(
            b_knn["point_distinctness"], abs=1e-9)

"""Stateless JSON API around the pipeline for interactive clients."""

from __future__ import annotations

import os
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .annealing import AnnealConfig
from .colors import ColorFilter, ExcludedBand, HueTermTable
from .datasets import dataset_from_config, palette_from_config, palette_to_config
from .errors import (
    AllLocked,
    FilterUnsatisfiable,
    HuefitError,
    RefinementFailed,
    ValidationError,
)
from .names import NameCountMatrix, default_name_matrix, load_name_matrix
from .pipeline import GraphConfig, RunConfig, run_pipeline, score_palette
from .scoring import CD_FACTOR, ND_FACTOR

DEFAULT_TIME_BUDGET = 30.0
MAX_POINTS = 100_000
MAX_CLASSES = 64

_INFEASIBLE = (RefinementFailed, FilterUnsatisfiable, AllLocked)


class FilterSpec(BaseModel):
    lightness: tuple[float, float] = (0.0, 100.0)
    terms: list[str] | None = None
    exclude_disliked: bool = True

    def build(self) -> ColorFilter:
        return ColorFilter(
            lightness_range=self.lightness,
            excluded_band=ExcludedBand() if self.exclude_disliked else None,
            allowed_hue_terms=frozenset(self.terms) if self.terms else None,
        )


class GraphSpec(BaseModel):
    method: Literal["alpha", "knn"] = "alpha"
    alpha: float | None = None
    k: int = 2
    spacing: float = 10.0

    def build(self) -> GraphConfig:
        return GraphConfig(method=self.method, alpha=self.alpha, k=self.k,
                           spacing=self.spacing)


class PaletteRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dataset: dict
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    background: str = "#FFFFFF"
    color_filter: FilterSpec = Field(default_factory=FilterSpec, alias="filter")
    graph: GraphSpec = Field(default_factory=GraphSpec)
    seed: int = 0
    restarts: int = 1
    palette: dict | None = None


class ScoreRequest(BaseModel):
    dataset: dict
    palette: dict
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    graph: GraphSpec = Field(default_factory=GraphSpec)


def _error_body(exc: Exception) -> dict:
    return {"detail": {"type": type(exc).__name__, "reason": str(exc)}}


def _check_limits(ds, max_points: int, max_classes: int) -> None:
    if ds.n_points > max_points:
        raise ValidationError(
            f"dataset has {ds.n_points} points, limit is {max_points}; "
            "pre-aggregate the data and retry")
    if ds.m > max_classes:
        raise ValidationError(
            f"dataset has {ds.m} classes, limit is {max_classes}")


def create_app(matrix: NameCountMatrix | None = None,
               matrix_path: str | None = None,
               time_budget: float | None = None,
               max_points: int = MAX_POINTS,
               max_classes: int = MAX_CLASSES) -> FastAPI:
    """Build the API; flags fall back to HUEFIT_NAME_MATRIX / HUEFIT_TIME_BUDGET."""
    if matrix is None:
        path = matrix_path or os.environ.get("HUEFIT_NAME_MATRIX")
        matrix = load_name_matrix(path) if path else default_name_matrix()
    if time_budget is None:
        time_budget = float(os.environ.get("HUEFIT_TIME_BUDGET",
                                           DEFAULT_TIME_BUDGET))

    app = FastAPI(title="huefit", version=__version__)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={
            "detail": {"type": "RequestValidationError",
                       "reason": str(exc.errors())}})

    @app.exception_handler(HuefitError)
    async def domain_error(request: Request, exc: HuefitError):
        status = 422 if isinstance(exc, _INFEASIBLE) else 400
        return JSONResponse(status_code=status, content=_error_body(exc))

    @app.post("/api/palette")
    def make_palette(req: PaletteRequest):
        ds = dataset_from_config(req.dataset)
        _check_limits(ds, max_points, max_classes)
        initial = None
        if req.palette is not None:
            initial, _, _ = palette_from_config(req.palette)
        rc = RunConfig(
            weights=req.weights,
            background=req.background,
            color_filter=req.color_filter.build(),
            graph=req.graph.build(),
            anneal=AnnealConfig(seed=req.seed),
            initial=initial,
            restarts=req.restarts,
        )
        out = run_pipeline(ds, rc, matrix=matrix, time_budget=time_budget)
        warnings = []
        if out.result.truncated:
            warnings.append("time budget exceeded; returning the best "
                            "palette found so far")
        return {
            "palette": out.palette_doc,
            "energy": out.result.breakdown,
            "trace": {"iterations": out.result.iterations,
                      "wall_time": out.result.wall_time,
                      "truncated": out.result.truncated},
            "warnings": warnings,
        }

    @app.post("/api/score")
    def score(req: ScoreRequest):
        ds = dataset_from_config(req.dataset)
        _check_limits(ds, max_points, max_classes)
        p, _, _ = palette_from_config(req.palette)
        return score_palette(ds, p, weights=req.weights, gc=req.graph.build(),
                             matrix=matrix)

    @app.get("/api/meta")
    def meta():
        table = HueTermTable()
        band = ExcludedBand()
        return {
            "version": __version__,
            "tau": AnnealConfig().tau,
            "cooling": AnnealConfig().cooling,
            "t_start": AnnealConfig().t_start,
            "t_end": AnnealConfig().t_end,
            "nd_factor": ND_FACTOR,
            "cd_factor": CD_FACTOR,
            "default_weights": [1.0, 1.0, 1.0],
            "terms": table.to_config(),
            "excluded_band": {"hue": [band.hue_lo, band.hue_hi],
                              "lightness": [band.lightness_lo,
                                            band.lightness_hi]},
            "limits": {"max_points": max_points, "max_classes": max_classes},
        }

    return app


app = create_app()

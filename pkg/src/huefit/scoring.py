"""Palette scoring: point distinctness, name difference, color discrimination."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .colors import Palette
from .errors import InvalidConfig, SizeMismatch
from .graphs import LabeledPointSet, NeighborGraph
from .names import NameCountMatrix, palette_name_difference

ND_FACTOR = 2.0
CD_FACTOR = 0.1


@dataclass
class ClassPairWeights:
    """Graph structure folded per class pair.

    w[j,k] sums 1/(|neighbors of i| * d(i,l)) over points i of class j and
    their neighbors l of class k, so point distinctness reduces to a weighted
    sum over the class-color distance matrix.
    """

    w: np.ndarray

    def __post_init__(self):
        self.w = np.ascontiguousarray(self.w, dtype=np.float64)
        if self.w.ndim != 2 or self.w.shape[0] != self.w.shape[1]:
            raise SizeMismatch("weights must be a square matrix")

    @property
    def m(self) -> int:
        return self.w.shape[0]


def precompute_pair_weights(ps: LabeledPointSet,
                            graph: NeighborGraph) -> ClassPairWeights:
    """Fold the neighbor graph into per-class-pair weights with g(d) = 1/d."""
    if graph.n != ps.n:
        raise SizeMismatch(f"graph covers {graph.n} points, set has {ps.n}")
    w = np.zeros((ps.m, ps.m))
    offsets, nbr, dist = graph.adjacency
    deg = np.diff(offsets)
    src_labels = np.repeat(ps.labels, deg)
    src_deg = np.repeat(deg, deg).astype(np.float64)
    np.add.at(w, (src_labels, ps.labels[nbr]), 1.0 / (src_deg * dist))
    return ClassPairWeights(w=w)


@dataclass(frozen=True)
class ScoreWeights:
    """Term weights and fixed balance factors for the total energy."""

    omega: tuple[float, float, float] = (1.0, 1.0, 1.0)
    nd_factor: float = ND_FACTOR
    cd_factor: float = CD_FACTOR
    pd_norm: float = 1.0

    def __post_init__(self):
        if len(self.omega) != 3:
            raise InvalidConfig("omega needs exactly three entries")
        if any(not 0.0 <= v <= 1.0 for v in self.omega):
            raise InvalidConfig(f"omega values must lie in [0,1]: {self.omega}")
        if self.nd_factor <= 0 or self.cd_factor <= 0:
            raise InvalidConfig("balance factors must be positive")
        if self.pd_norm <= 0:
            raise InvalidConfig("pd_norm must be positive")
        object.__setattr__(self, "omega", tuple(float(v) for v in self.omega))


def point_distinctness(weights: ClassPairWeights, p: Palette) -> float:
    """Sum of w[j,k] * ciede2000(c_j, c_k); same-class pairs contribute zero."""
    if p.m != weights.m:
        raise SizeMismatch(f"palette has {p.m} colors, weights expect {weights.m}")
    D = _kernels.ciede2000_matrix_nb(p.labs_array())
    return float(np.sum(weights.w * D))


def color_discrimination(p: Palette) -> float:
    """Smallest pairwise distance among class colors and the background."""
    labs = np.vstack([p.labs_array(), p.background.as_tuple()])
    D = _kernels.ciede2000_matrix_nb(labs)
    iu = np.triu_indices(len(labs), k=1)
    return float(D[iu].min())


def combine_energy(e_pd: float, e_nd: float, e_cd: float,
                   sw: ScoreWeights) -> float:
    """Weighted total; monotone non-decreasing in each term with positive omega."""
    return (sw.omega[0] * (e_pd / sw.pd_norm)
            + sw.omega[1] * sw.nd_factor * e_nd
            + sw.omega[2] * sw.cd_factor * e_cd)


def total_energy(weights: ClassPairWeights, matrix: NameCountMatrix,
                 p: Palette, sw: ScoreWeights) -> float:
    e_pd = point_distinctness(weights, p)
    e_nd = palette_name_difference(matrix, p) if p.m >= 2 else 0.0
    e_cd = color_discrimination(p)
    return combine_energy(e_pd, e_nd, e_cd, sw)


def energy_breakdown(weights: ClassPairWeights, matrix: NameCountMatrix,
                     p: Palette, sw: ScoreWeights) -> dict:
    """All terms plus the recombined total, as reported by the CLI and service.

    Point distinctness is reported divided by pd_norm so that
    total == omega0 * pd + omega1 * nd_factor * nd + omega2 * cd_factor * cd
    holds on the reported numbers.
    """
    e_pd = point_distinctness(weights, p)
    e_nd = palette_name_difference(matrix, p) if p.m >= 2 else 0.0
    e_cd = color_discrimination(p)
    return {
        "point_distinctness": e_pd / sw.pd_norm,
        "name_difference": e_nd,
        "color_discrimination": e_cd,
        "pd_norm": sw.pd_norm,
        "total": combine_energy(e_pd, e_nd, e_cd, sw),
    }

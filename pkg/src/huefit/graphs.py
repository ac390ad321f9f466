"""Spatial neighborhood graphs over labeled 2-D points."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from .errors import InvalidK, ValidationError

JITTER = 1e-6


@dataclass
class LabeledPointSet:
    """Chart points in pixel space with 0-based class labels."""

    points: np.ndarray
    labels: np.ndarray
    m: int

    def __post_init__(self):
        self.points = np.ascontiguousarray(self.points, dtype=np.float64)
        self.labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if self.points.ndim != 2 or self.points.shape[1] != 2 or len(self.points) == 0:
            raise ValidationError("points must be a non-empty (n,2) array")
        if not np.all(np.isfinite(self.points)):
            raise ValidationError("points must be finite")
        if self.labels.shape != (len(self.points),):
            raise ValidationError("labels must be one per point")
        if self.m < 1:
            raise ValidationError("class count must be at least 1")
        if np.any(self.labels < 0) or np.any(self.labels >= self.m):
            raise ValidationError(f"labels must fall in [0, {self.m})")
        counts = np.bincount(self.labels, minlength=self.m)
        if np.any(counts == 0):
            empty = np.flatnonzero(counts == 0).tolist()
            raise ValidationError(f"classes without points: {empty}")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.m)


@dataclass
class NeighborGraph:
    """Undirected graph over point indices with positive Euclidean edge lengths."""

    n: int
    edges: np.ndarray
    distances: np.ndarray
    kind: str
    parameter: float

    def __post_init__(self):
        self.edges = np.ascontiguousarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.distances = np.ascontiguousarray(self.distances, dtype=np.float64)
        if len(self.distances) != len(self.edges):
            raise ValidationError("one distance per edge required")
        if len(self.edges) and (np.any(self.edges < 0) or np.any(self.edges >= self.n)):
            raise ValidationError("edge endpoints out of range")
        if np.any(self.distances <= 0):
            raise ValidationError("edge distances must be positive")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR-style (offsets, neighbor indices, neighbor distances)."""
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        dist = np.concatenate([self.distances, self.distances])
        order = np.argsort(src, kind="stable")
        src, dst, dist = src[order], dst[order], dist[order]
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(offsets, src + 1, 1)
        np.cumsum(offsets, out=offsets)
        return offsets, dst, dist

    @property
    def degrees(self) -> np.ndarray:
        offsets, _, _ = self.adjacency
        return np.diff(offsets)


def _deduped_points(points: np.ndarray) -> np.ndarray:
    """Shift duplicate coordinates apart so edge lengths stay positive."""
    _, inverse, counts = np.unique(points, axis=0, return_inverse=True,
                                   return_counts=True)
    if counts.max() == 1:
        return points
    warnings.warn("duplicate point coordinates jittered by 1e-6 px",
                  stacklevel=3)
    out = points.copy()
    seen: dict[int, int] = {}
    for i, group in enumerate(inverse):
        k = seen.get(int(group), 0)
        seen[int(group)] = k + 1
        if k:
            out[i] = out[i] + k * JITTER
    return out


def _chain_edges(points: np.ndarray) -> np.ndarray:
    order = np.lexsort((points[:, 1], points[:, 0]))
    return np.sort(np.column_stack([order[:-1], order[1:]]), axis=1)


def delaunay(ps: LabeledPointSet) -> np.ndarray:
    """Delaunay edge set as a sorted (E,2) array of point indices.

    Degenerate inputs degrade: single point gives no edges, two points or a
    collinear set gives the chain along sorted position.
    """
    points = _deduped_points(ps.points)
    n = len(points)
    if n == 1:
        return np.empty((0, 2), dtype=np.int64)
    if n == 2:
        return np.array([[0, 1]], dtype=np.int64)
    try:
        tri = Delaunay(points)
    except QhullError:
        return _chain_edges(points)
    simplices = tri.simplices
    pairs = np.concatenate([simplices[:, [0, 1]], simplices[:, [1, 2]],
                            simplices[:, [0, 2]]])
    pairs = np.unique(np.sort(pairs, axis=1), axis=0)
    return pairs.astype(np.int64)


def _edge_lengths(points: np.ndarray, edges: np.ndarray) -> np.ndarray:
    delta = points[edges[:, 0]] - points[edges[:, 1]]
    return np.hypot(delta[:, 0], delta[:, 1])


def default_alpha_radius(ps: LabeledPointSet) -> float:
    """1.5 times the median Delaunay edge length."""
    edges = delaunay(ps)
    if len(edges) == 0:
        return 1.0
    return 1.5 * float(np.median(_edge_lengths(_deduped_points(ps.points), edges)))


def alpha_shape_graph(ps: LabeledPointSet, alpha_radius: float) -> NeighborGraph:
    """Delaunay edges no longer than twice the alpha radius."""
    if not (alpha_radius > 0):
        raise ValidationError(f"alpha radius must be positive, got {alpha_radius}")
    points = _deduped_points(ps.points)
    edges = delaunay(ps)
    dists = _edge_lengths(points, edges)
    if not math.isinf(alpha_radius):
        keep = dists <= 2.0 * alpha_radius
        edges, dists = edges[keep], dists[keep]
    return NeighborGraph(n=ps.n, edges=edges, distances=dists,
                         kind="alpha-shape", parameter=float(alpha_radius))


def knn_graph(ps: LabeledPointSet, k: int) -> NeighborGraph:
    """Symmetrized union of each point's k nearest neighbors."""
    n = ps.n
    if not 1 <= k <= n - 1:
        raise InvalidK(f"k={k} outside [1, {n - 1}]")
    points = _deduped_points(ps.points)
    tree = cKDTree(points)
    _, idx = tree.query(points, k=k + 1)
    src = np.repeat(np.arange(n, dtype=np.int64), k)
    dst = idx[:, 1:].reshape(-1).astype(np.int64)
    pairs = np.unique(np.sort(np.column_stack([src, dst]), axis=1), axis=0)
    dists = _edge_lengths(points, pairs)
    return NeighborGraph(n=n, edges=pairs, distances=dists, kind="knn",
                         parameter=float(k))


def scale_to_canvas(points: np.ndarray,
                    canvas: tuple[float, float] = (400.0, 400.0)) -> np.ndarray:
    """Map the bounding box of data coordinates onto [0,w] x [0,h]."""
    pts = np.asarray(points, dtype=np.float64)
    out = np.empty_like(pts)
    for axis in range(2):
        lo = pts[:, axis].min()
        hi = pts[:, axis].max()
        if hi > lo:
            out[:, axis] = (pts[:, axis] - lo) / (hi - lo) * canvas[axis]
        else:
            out[:, axis] = canvas[axis] / 2.0
    return out

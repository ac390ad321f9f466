"""Color-name count model: matrix IO, nearest-bin lookup, name difference."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import _kernels
from .colors import BASIC_TERMS, LabColor
from .errors import DegenerateVector, ParseError, TooFewColors, ValidationError

if TYPE_CHECKING:
    from .colors import Palette

_HEADER_RE = re.compile(r"^bins=(\d+),terms=(\d+),spacing=([0-9.]+)$")
_MAX_DENSE_CELLS = 4_000_000
_GRID_TOL = 1e-6


@dataclass
class NameCountMatrix:
    """Name counts over a regular LAB lattice.

    Rows are bin centers; row order defines the index used by the documented
    lowest-index tie break.  The lattice may have holes (for example when a
    survey-derived file only covers in-gamut bins).
    """

    bins: np.ndarray
    counts: np.ndarray
    terms: tuple[str, ...]
    spacing: float

    def __post_init__(self):
        self.bins = np.ascontiguousarray(self.bins, dtype=np.float64)
        self.counts = np.ascontiguousarray(self.counts, dtype=np.float64)
        self.terms = tuple(self.terms)
        self.spacing = float(self.spacing)
        if self.bins.ndim != 2 or self.bins.shape[1] != 3 or self.bins.shape[0] == 0:
            raise ValidationError("bins must be a non-empty (n,3) array")
        if self.counts.shape != (self.bins.shape[0], len(self.terms)):
            raise ValidationError("counts shape must be (n_bins, n_terms)")
        if not self.terms:
            raise ValidationError("at least one term required")
        if self.spacing <= 0.0:
            raise ValidationError("spacing must be positive")
        if np.any(self.counts < 0):
            raise ValidationError("counts must be non-negative")
        if np.any(self.counts.sum(axis=1) <= 0):
            raise ValidationError("every bin needs at least one positive count")
        for axis in range(3):
            rel = (self.bins[:, axis] - self.bins[:, axis].min()) / self.spacing
            if np.any(np.abs(rel - np.round(rel)) > _GRID_TOL):
                raise ValidationError(
                    f"bin coordinates on axis {axis} are not multiples of "
                    f"spacing={self.spacing}")

    @property
    def n_bins(self) -> int:
        return self.bins.shape[0]

    @cached_property
    def normalized(self) -> np.ndarray:
        """Rows scaled to unit L2 norm, for cosine similarity."""
        norms = np.linalg.norm(self.counts, axis=1, keepdims=True)
        return self.counts / norms

    @cached_property
    def grid(self) -> tuple[float, float, float, float, int, int, int]:
        """(origin L,a,b, spacing, cells per axis); cells=0 disables the fast path."""
        mins = self.bins.min(axis=0)
        maxs = self.bins.max(axis=0)
        dims = [int(round((maxs[i] - mins[i]) / self.spacing)) + 1 for i in range(3)]
        if dims[0] * dims[1] * dims[2] > _MAX_DENSE_CELLS:
            return (0.0, 0.0, 0.0, self.spacing, 0, 0, 0)
        return (float(mins[0]), float(mins[1]), float(mins[2]), self.spacing,
                dims[0], dims[1], dims[2])

    @cached_property
    def dense_index(self) -> np.ndarray:
        """Lattice cell -> bin row, -1 for holes."""
        g0, g1, g2, s, n0, n1, n2 = self.grid
        if n0 == 0:
            return np.full(1, -1, dtype=np.int64)
        dense = np.full(n0 * n1 * n2, -1, dtype=np.int64)
        i0 = np.round((self.bins[:, 0] - g0) / s).astype(np.int64)
        i1 = np.round((self.bins[:, 1] - g1) / s).astype(np.int64)
        i2 = np.round((self.bins[:, 2] - g2) / s).astype(np.int64)
        cells = (i0 * n1 + i1) * n2 + i2
        if len(np.unique(cells)) != len(cells):
            raise ValidationError("duplicate bin centers")
        dense[cells] = np.arange(self.n_bins, dtype=np.int64)
        return dense

    def nearest_bin_index(self, c: LabColor) -> int:
        """Exact nearest bin by Euclidean LAB distance; ties pick the lowest row."""
        g0, g1, g2, s, n0, n1, n2 = self.grid
        if n0 > 0:
            point = (c.L, c.a, c.b)
            origin = (g0, g1, g2)
            dims = (n0, n1, n2)
            idx = []
            tie = False
            for axis in range(3):
                q = (point[axis] - origin[axis]) / s
                if q - math.floor(q) == 0.5:
                    tie = True
                    break
                idx.append(min(dims[axis] - 1, max(0, int(math.ceil(q - 0.5)))))
            if not tie:
                row = self.dense_index[(idx[0] * n1 + idx[1]) * n2 + idx[2]]
                if row >= 0:
                    return int(row)
        d = self.bins - np.array([c.L, c.a, c.b])
        return int(np.argmin(np.einsum("ij,ij->i", d, d)))

    def name_vector(self, c: LabColor) -> np.ndarray:
        """Count vector of the nearest bin."""
        return self.counts[self.nearest_bin_index(c)].copy()


def name_difference(t1: Sequence[float] | np.ndarray,
                    t2: Sequence[float] | np.ndarray) -> float:
    """1 - cosine similarity; in [0,1] for count vectors."""
    v1 = np.asarray(t1, dtype=np.float64)
    v2 = np.asarray(t2, dtype=np.float64)
    n1 = np.linalg.norm(v1)
    n2 = np.linalg.norm(v2)
    if n1 == 0.0 or n2 == 0.0:
        raise DegenerateVector("cannot compare a zero name vector")
    v = 1.0 - float(np.dot(v1, v2) / (n1 * n2))
    return min(1.0, max(0.0, v))


def palette_name_difference(matrix: NameCountMatrix, p: "Palette") -> float:
    """Mean name difference over unordered class-color pairs; background excluded."""
    m = p.m
    if m < 2:
        raise TooFewColors("name difference needs at least two class colors")
    rows = np.array([matrix.nearest_bin_index(c) for c in p.class_colors])
    tn = matrix.normalized[rows]
    total = 0.0
    for i in range(m - 1):
        for j in range(i + 1, m):
            total += 1.0 - float(np.dot(tn[i], tn[j]))
    return total * 2.0 / (m * (m - 1))


# ---------------------------------------------------------------------------
# CSV format
#
#   bins=<n>,terms=<k>,spacing=<s>
#   term_1,term_2,...,term_k
#   L,a,b,count_1,...,count_k        (n rows, UTF-8, LF)
# ---------------------------------------------------------------------------

def load_name_matrix(path: str | Path) -> NameCountMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if len(lines) < 3:
        raise ParseError("matrix file needs a header, a term line, and bins")
    match = _HEADER_RE.match(lines[0].strip())
    if not match:
        raise ParseError(f"bad header line: {lines[0]!r}")
    n_bins, n_terms = int(match.group(1)), int(match.group(2))
    spacing = float(match.group(3))
    terms = tuple(t.strip() for t in lines[1].split(","))
    if len(terms) != n_terms or any(not t for t in terms):
        raise ValidationError(
            f"header promises {n_terms} terms, term line has {lines[1]!r}")
    rows = [ln for ln in lines[2:] if ln.strip()]
    if len(rows) != n_bins:
        raise ValidationError(f"header promises {n_bins} bins, found {len(rows)}")
    data = np.empty((n_bins, 3 + n_terms))
    for i, ln in enumerate(rows):
        parts = ln.split(",")
        if len(parts) != 3 + n_terms:
            raise ParseError(f"row {i + 3}: expected {3 + n_terms} fields, "
                             f"got {len(parts)}")
        try:
            data[i] = [float(x) for x in parts]
        except ValueError as exc:
            raise ParseError(f"row {i + 3}: non-numeric field") from exc
    return NameCountMatrix(bins=data[:, :3], counts=data[:, 3:], terms=terms,
                           spacing=spacing)


def write_name_matrix(matrix: NameCountMatrix, path: str | Path) -> None:
    out = [f"bins={matrix.n_bins},terms={len(matrix.terms)},"
           f"spacing={matrix.spacing:g}"]
    out.append(",".join(matrix.terms))
    for i in range(matrix.n_bins):
        coords = ",".join(f"{v:g}" for v in matrix.bins[i])
        counts = ",".join(f"{v:g}" for v in matrix.counts[i])
        out.append(f"{coords},{counts}")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8", newline="\n")


# ---------------------------------------------------------------------------
# synthetic default model
# ---------------------------------------------------------------------------

def _circular_dist(h: np.ndarray, center: float) -> np.ndarray:
    d = np.abs(np.mod(h - center, 360.0))
    return np.minimum(d, 360.0 - d)


@lru_cache(maxsize=4)
def default_name_matrix(spacing: float = 5.0) -> NameCountMatrix:
    """Deterministic synthetic counts over the full LAB lattice.

    Stand-in for a survey-derived matrix: nearby bins share names, hue wedges
    map to their basic terms, and achromatic bins favor black/white/grey.
    """
    Ls = np.arange(0.0, 100.0 + spacing / 2, spacing)
    ab = np.arange(-125.0, 125.0 + spacing / 2, spacing)
    grid = np.array(np.meshgrid(Ls, ab, ab, indexing="ij")).reshape(3, -1).T
    L, a, b = grid[:, 0], grid[:, 1], grid[:, 2]
    C = np.hypot(a, b)
    h = np.degrees(np.arctan2(b, a)) % 360.0

    chroma_conf = C * C / (C * C + 400.0)
    achroma = 1.0 - chroma_conf

    def l_window(center, width):
        return np.exp(-(((L - center) / width) ** 2))

    weights = {
        "grey": achroma * np.exp(-(((L - 56.0) / 36.0) ** 2)),
        "black": achroma * np.exp(-((L / 16.0) ** 2)),
        "white": achroma * np.exp(-(((100.0 - L) / 8.0) ** 2)),
        "brown": chroma_conf * np.exp(-((_circular_dist(h, 35.0) / 16.0) ** 2))
        * l_window(33.0, 14.0),
        "pink": chroma_conf * np.exp(-((_circular_dist(h, 342.0) / 14.0) ** 2))
        * l_window(80.0, 16.0),
        "red": chroma_conf * np.exp(-((_circular_dist(h, 7.0) / 14.0) ** 2))
        * l_window(47.0, 24.0),
        "orange": chroma_conf * np.exp(-((_circular_dist(h, 35.0) / 16.0) ** 2))
        * l_window(65.0, 20.0),
        "yellow": chroma_conf * np.exp(-((_circular_dist(h, 70.0) / 20.0) ** 2))
        * l_window(80.0, 22.0),
        "green": chroma_conf * np.exp(-((_circular_dist(h, 145.0) / 42.0) ** 2))
        * l_window(58.0, 34.0),
        "blue": chroma_conf * np.exp(-((_circular_dist(h, 240.0) / 34.0) ** 2))
        * l_window(50.0, 34.0),
        "purple": chroma_conf * np.exp(-((_circular_dist(h, 305.0) / 22.0) ** 2))
        * l_window(45.0, 30.0),
    }
    stack = np.stack([weights[t] for t in BASIC_TERMS], axis=1)
    stack = stack / stack.sum(axis=1, keepdims=True)
    counts = np.floor(stack * 180.0)
    top = np.argmax(stack, axis=1)
    counts[np.arange(len(top)), top] = np.maximum(
        counts[np.arange(len(top)), top], 1.0)
    return NameCountMatrix(bins=grid, counts=counts, terms=BASIC_TERMS,
                           spacing=spacing)


def kernel_args(matrix: NameCountMatrix):
    """Array bundle the jitted kernels consume for nearest-bin lookups."""
    g0, g1, g2, s, n0, n1, n2 = matrix.grid
    return (matrix.bins, matrix.dense_index, g0, g1, g2, s, n0, n1, n2,
            matrix.normalized)

"""Simulated annealing over palettes with a minimum-distance constraint."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import _kernels
from .colors import ColorFilter, LabColor, Palette, passes_filter, sample_candidate
from .errors import AllLocked, FilterUnsatisfiable, InvalidConfig, RefinementFailed
from .names import NameCountMatrix, kernel_args
from .scoring import ClassPairWeights, ScoreWeights

Observer = Callable[[int, float, float, float], None]


@dataclass(frozen=True)
class AnnealConfig:
    """Schedule and proposal parameters; defaults are the shipped operating point."""

    seed: int = 0
    t_start: float = 100000.0
    t_end: float = 0.001
    cooling: float = 0.99
    tau: float = 10.0
    proposals_per_temperature: int | None = None
    perturb_sigma: float = 5.0
    swap_probability: float = 0.3
    refine_max_attempts: int = 1000

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidConfig(f"seed must be a non-negative int, got {self.seed!r}")
        if not 0.0 < self.t_end < self.t_start:
            raise InvalidConfig("need 0 < t_end < t_start")
        if not 0.0 < self.cooling < 1.0:
            raise InvalidConfig("cooling must be in (0,1)")
        if self.tau < 0:
            raise InvalidConfig("tau must be non-negative")
        if self.proposals_per_temperature is not None and self.proposals_per_temperature < 1:
            raise InvalidConfig("proposals_per_temperature must be at least 1")
        if self.perturb_sigma <= 0:
            raise InvalidConfig("perturb_sigma must be positive")
        if not 0.0 <= self.swap_probability <= 1.0:
            raise InvalidConfig("swap_probability must be in [0,1]")
        if self.refine_max_attempts < 1:
            raise InvalidConfig("refine_max_attempts must be at least 1")


@dataclass
class AnnealResult:
    best_palette: Palette
    best_energy: float
    energy_trace: list[tuple[int, float, float]]
    iterations: int
    wall_time: float
    seed: int
    truncated: bool = False
    breakdown: dict = field(default_factory=dict)


def temperature_schedule(cfg: AnnealConfig) -> list[float]:
    out = []
    t = cfg.t_start
    while t > cfg.t_end:
        out.append(t)
        t *= cfg.cooling
    return out


def accept(e_new: float, e_old: float, temperature: float,
           rng: np.random.Generator) -> bool:
    """Metropolis rule for maximization."""
    if e_new >= e_old:
        return True
    return rng.random() < math.exp((e_new - e_old) / temperature)


def _unlocked_indices(p: Palette) -> list[int]:
    return [i for i, locked in enumerate(p.locked) if not locked]


def _redraw(c: LabColor, sigma: float, f: ColorFilter,
            rng: np.random.Generator, attempts: int = 10000) -> LabColor | None:
    for _ in range(attempts):
        offset = rng.uniform(-sigma, sigma, 3)
        cand = LabColor(c.L + offset[0], c.a + offset[1], c.b + offset[2])
        if (_kernels.in_srgb_gamut_nb(cand.L, cand.a, cand.b)
                and passes_filter(cand, f)):
            return cand
    return None


def propose(p: Palette, cfg: AnnealConfig, f: ColorFilter,
            rng: np.random.Generator) -> Palette:
    """One local move: perturb an unlocked color, or swap two unlocked colors."""
    unlocked = _unlocked_indices(p)
    if not unlocked:
        raise AllLocked("cannot propose on a fully locked palette")
    if rng.random() < cfg.swap_probability and len(unlocked) >= 2:
        i, j = rng.choice(unlocked, size=2, replace=False)
        colors = list(p.class_colors)
        colors[i], colors[j] = colors[j], colors[i]
        return Palette(tuple(colors), p.background, p.locked)
    i = unlocked[int(rng.integers(len(unlocked)))]
    cand = _redraw(p.class_colors[i], cfg.perturb_sigma, f, rng)
    if cand is None:
        raise FilterUnsatisfiable("no filter-passing perturbation found")
    return p.with_color(i, cand)


def _distance_matrix(p: Palette) -> np.ndarray:
    labs = np.vstack([p.labs_array(), p.background.as_tuple()])
    return _kernels.ciede2000_matrix_nb(labs)


def _locked_pairs_feasible(p: Palette, tau: float) -> bool:
    D = _distance_matrix(p)
    m = p.m
    locked = list(p.locked) + [True]  # background behaves as locked
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            if locked[i] and locked[j] and D[i, j] < tau:
                return False
    return True


def refine(p: Palette, cfg: AnnealConfig, f: ColorFilter,
           rng: np.random.Generator) -> Palette:
    """Perturb members of sub-tau pairs until every pair clears tau."""
    if not _locked_pairs_feasible(p, cfg.tau):
        raise RefinementFailed("locked colors (or background) closer than tau")
    current = p
    for _ in range(cfg.refine_max_attempts + 1):
        D = _distance_matrix(current)
        m = current.m
        violating: set[int] = set()
        satisfied = True
        for i in range(m + 1):
            for j in range(i + 1, m + 1):
                if D[i, j] < cfg.tau:
                    satisfied = False
                    if i < m and not current.locked[i]:
                        violating.add(i)
                    if j < m and not current.locked[j]:
                        violating.add(j)
        if satisfied:
            return current
        for i in sorted(violating):
            cand = _redraw(current.class_colors[i], cfg.perturb_sigma, f, rng,
                           attempts=100)
            if cand is not None:
                current = current.with_color(i, cand)
    raise RefinementFailed(
        f"could not reach tau={cfg.tau} in {cfg.refine_max_attempts} attempts")


def _palette_from_labs(labs: np.ndarray, template: Palette) -> Palette:
    colors = [template.class_colors[i] if template.locked[i]
              else LabColor(labs[i, 0], labs[i, 1], labs[i, 2])
              for i in range(template.m)]
    return Palette(tuple(colors), template.background, template.locked)


def _optimize_single(weights: ClassPairWeights, matrix: NameCountMatrix,
                     sw: ScoreWeights, cfg: AnnealConfig, f: ColorFilter,
                     background: LabColor, initial: Palette | None,
                     observer: Observer | None,
                     time_budget: float | None) -> AnnealResult:
    t0 = time.perf_counter()
    m = weights.m

    if initial is not None:
        if initial.m != m:
            raise InvalidConfig(f"initial palette has {initial.m} colors, "
                                f"weights expect {m}")
        start = initial
    else:
        rng = np.random.default_rng(cfg.seed)
        start = Palette(tuple(sample_candidate(f, rng) for _ in range(m)),
                        background)

    if not _locked_pairs_feasible(start, cfg.tau):
        raise RefinementFailed("locked colors (or background) closer than tau")

    bins, dense, g0, g1, g2, spacing, n0, n1, n2, tnorm = kernel_args(matrix)
    fp = f.as_params
    tbl = f.term_table.as_array
    allowed = f.allowed_mask
    bg = np.array(start.background.as_tuple())
    locked = np.array(start.locked, dtype=np.bool_)
    unlocked_idx = np.flatnonzero(~locked).astype(np.int64)

    labs = start.labs_array()
    nbin = np.zeros(m, dtype=np.int64)
    D = np.zeros((m + 1, m + 1))
    ND = np.zeros((m, m))
    _kernels.init_state_nb(labs, nbin, D, ND, bg, bins, dense,
                           g0, g1, g2, spacing, n0, n1, n2, tnorm)

    rng_state = np.zeros(2, dtype=np.uint64)
    _kernels.rng_seed(rng_state, cfg.seed)

    if len(unlocked_idx):
        status = _kernels.refine_nb(
            labs, nbin, D, ND, bg, locked, cfg.tau, cfg.refine_max_attempts,
            cfg.perturb_sigma, fp, tbl, allowed, bins, dense,
            g0, g1, g2, spacing, n0, n1, n2, tnorm, rng_state)
        if status != 0:
            raise RefinementFailed(
                f"initial palette could not reach tau={cfg.tau}")
    else:
        iu = np.triu_indices(m + 1, k=1)
        if D[iu].min() < cfg.tau:
            raise RefinementFailed("fully locked palette violates tau")

    # Acceptance and the trace run on raw totals (pd_norm = 1); the refined
    # start palette's E_PD becomes pd_norm for the reported breakdown only.
    e0, e_pd0, _, _ = _kernels.palette_energy_nb(
        D, ND, weights.w, *sw.omega, sw.nd_factor, sw.cd_factor, 1.0)
    pd_norm = e_pd0 if e_pd0 > 0 else 1.0
    run_sw = replace(sw, pd_norm=pd_norm)

    energies = np.array([e0, e0])
    best_labs = labs.copy()
    trace = [(0, e0, e0)]
    truncated = False
    iterations = 0

    if len(unlocked_idx):
        srow_lab = np.empty(3)
        srow_D = np.empty(m + 1)
        srow_ND = np.empty(m)
        n_proposals = cfg.proposals_per_temperature or m
        schedule = temperature_schedule(cfg)
        for step, temperature in enumerate(schedule, start=1):
            _kernels.anneal_step_nb(
                labs, nbin, D, ND, srow_lab, srow_D, srow_ND, best_labs,
                energies, bg, unlocked_idx, weights.w, tnorm, bins,
                dense, g0, g1, g2, spacing, n0, n1, n2, fp, tbl, allowed,
                cfg.tau, cfg.perturb_sigma, cfg.swap_probability,
                cfg.refine_max_attempts, *sw.omega, sw.nd_factor,
                sw.cd_factor, 1.0, temperature, n_proposals,
                rng_state)
            iterations = step
            trace.append((step, float(energies[0]), float(energies[1])))
            if observer is not None:
                observer(step, temperature, float(energies[0]),
                         float(energies[1]))
            if (time_budget is not None
                    and time.perf_counter() - t0 > time_budget):
                truncated = step < len(schedule)
                break

    best = _palette_from_labs(best_labs, start)
    D_best = np.zeros((m + 1, m + 1))
    ND_best = np.zeros((m, m))
    nbin_best = np.zeros(m, dtype=np.int64)
    _kernels.init_state_nb(best_labs, nbin_best, D_best, ND_best, bg, bins,
                           dense, g0, g1, g2, spacing, n0, n1, n2, tnorm)
    total, e_pd, e_nd, e_cd = _kernels.palette_energy_nb(
        D_best, ND_best, weights.w, *run_sw.omega, run_sw.nd_factor,
        run_sw.cd_factor, run_sw.pd_norm)
    breakdown = {
        "point_distinctness": float(e_pd / pd_norm),
        "name_difference": float(e_nd),
        "color_discrimination": float(e_cd),
        "pd_norm": float(pd_norm),
        "total": float(total),
    }
    return AnnealResult(
        best_palette=best,
        best_energy=float(energies[1]),
        energy_trace=trace,
        iterations=iterations,
        wall_time=time.perf_counter() - t0,
        seed=cfg.seed,
        truncated=truncated,
        breakdown=breakdown,
    )


def optimize(weights: ClassPairWeights, matrix: NameCountMatrix,
             sw: ScoreWeights, cfg: AnnealConfig, f: ColorFilter,
             background: LabColor | None = None,
             initial: Palette | None = None,
             observer: Observer | None = None,
             time_budget: float | None = None,
             restarts: int = 1) -> AnnealResult:
    """Anneal a palette under the minimum-distance constraint.

    Acceptance, the energy trace, and best_energy are raw totals.  The
    breakdown on the result reports point distinctness divided by the refined
    start palette's value, so runs of different sizes are comparable.

    With restarts > 1, runs are repeated at seeds seed, seed+1, ... and the
    highest-energy result wins (first winner on ties).
    """
    if background is None and initial is None:
        raise InvalidConfig("either a background color or an initial palette "
                            "is required")
    bg = initial.background if initial is not None else background
    if restarts < 1:
        raise InvalidConfig("restarts must be at least 1")
    best: AnnealResult | None = None
    for r in range(restarts):
        run_cfg = replace(cfg, seed=cfg.seed + r)
        result = _optimize_single(weights, matrix, sw, run_cfg, f, bg,
                                  initial, observer, time_budget)
        if best is None or result.best_energy > best.best_energy:
            best = result
    return best

"""Color types, sRGB/CIELAB conversion, CIEDE2000, and candidate filtering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import FilterUnsatisfiable, ParseError, ValidationError

BASIC_TERMS = ("grey", "black", "white", "brown", "pink", "red", "orange",
               "yellow", "green", "blue", "purple")


@dataclass(frozen=True)
class LabColor:
    """CIELAB coordinate, clamped to L in [0,100] and a,b in [-128,128]."""

    L: float
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "L", min(100.0, max(0.0, float(self.L))))
        object.__setattr__(self, "a", min(128.0, max(-128.0, float(self.a))))
        object.__setattr__(self, "b", min(128.0, max(-128.0, float(self.b))))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.L, self.a, self.b)


@dataclass(frozen=True)
class RgbColor:
    """8-bit sRGB color serialized as #RRGGBB."""

    r: int
    g: int
    b: int

    def __post_init__(self):
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) <= 255:
                raise ValidationError(f"channel {name}={v!r} outside 0..255")
            object.__setattr__(self, name, int(v))

    @property
    def hex(self) -> str:
        return f"#{self.r:02X}{self.g:02X}{self.b:02X}"

    @classmethod
    def from_hex(cls, text: str) -> "RgbColor":
        s = text.strip()
        if not s.startswith("#") or len(s) != 7:
            raise ParseError(f"expected #RRGGBB, got {text!r}")
        try:
            return cls(int(s[1:3], 16), int(s[3:5], 16), int(s[5:7], 16))
        except ValueError as exc:
            raise ParseError(f"expected #RRGGBB, got {text!r}") from exc


def srgb_to_lab(c: RgbColor) -> LabColor:
    L, a, b = _kernels.srgb01_to_lab_nb(c.r / 255.0, c.g / 255.0, c.b / 255.0)
    return LabColor(L, a, b)


def lab_to_srgb(c: LabColor) -> tuple[RgbColor, bool]:
    """Convert to sRGB, clamping out-of-gamut channels; the flag reports gamut membership."""
    in_gamut = bool(_kernels.in_srgb_gamut_nb(c.L, c.a, c.b))
    r, g, b = _kernels.lab_to_srgb01_nb(c.L, c.a, c.b)
    to8 = lambda v: int(round(min(1.0, max(0.0, v)) * 255.0))
    return RgbColor(to8(r), to8(g), to8(b)), in_gamut


def ciede2000(c1: LabColor, c2: LabColor) -> float:
    return float(_kernels.ciede2000_nb(c1.L, c1.a, c1.b, c2.L, c2.a, c2.b))


def lab_chroma(c: LabColor) -> float:
    return math.hypot(c.a, c.b)


def lab_hue_deg(c: LabColor) -> float:
    """Hue angle in degrees [0,360); 0 for achromatic colors."""
    if c.a == 0.0 and c.b == 0.0:
        return 0.0
    h = math.degrees(math.atan2(c.b, c.a))
    return h + 360.0 if h < 0.0 else h


# ---------------------------------------------------------------------------
# hue terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HueTerm:
    """One named region of LAB, given by hue/lightness/chroma intervals.

    Hue intervals are half-open [lo,hi) and may wrap past 360.  Lightness and
    chroma intervals are lo-inclusive and hi-exclusive unless the matching
    flag closes or opens an endpoint.
    """

    name: str
    hue: tuple[float, float] | None = None
    lightness: tuple[float, float] | None = None
    chroma: tuple[float, float] | None = None
    lightness_min_open: bool = False
    lightness_max_closed: bool = False
    chroma_max_closed: bool = False


DEFAULT_HUE_TERMS: tuple[HueTerm, ...] = (
    HueTerm("grey", lightness=(20.0, 92.0), lightness_max_closed=True,
            chroma=(0.0, 12.0)),
    HueTerm("black", lightness=(0.0, 20.0), chroma=(0.0, 12.0)),
    HueTerm("white", lightness=(92.0, 100.0), lightness_min_open=True,
            lightness_max_closed=True, chroma=(0.0, 10.0)),
    HueTerm("brown", hue=(20.0, 50.0), lightness=(20.0, 50.0)),
    HueTerm("pink", hue=(330.0, 355.0), lightness=(65.0, 100.0),
            lightness_max_closed=True),
    HueTerm("red", hue=(355.0, 20.0)),
    HueTerm("orange", hue=(20.0, 50.0)),
    HueTerm("yellow", hue=(50.0, 90.0)),
    HueTerm("green", hue=(90.0, 200.0)),
    HueTerm("blue", hue=(200.0, 280.0)),
    HueTerm("purple", hue=(280.0, 330.0)),
)


@dataclass(frozen=True)
class HueTermTable:
    """Ordered hue-term regions; classification returns the first match."""

    terms: tuple[HueTerm, ...] = DEFAULT_HUE_TERMS

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("term table is empty")
        names = [t.name for t in self.terms]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate term names in table")
        if not any(t.hue is None for t in self.terms):
            raise ValidationError("table needs at least one achromatic term")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.terms)

    @cached_property
    def as_array(self) -> np.ndarray:
        tbl = np.zeros((len(self.terms), 12))
        for i, t in enumerate(self.terms):
            if t.hue is not None:
                tbl[i, 0] = 1.0
                tbl[i, 1], tbl[i, 2] = t.hue
            if t.lightness is not None:
                tbl[i, 3] = 1.0
                tbl[i, 4], tbl[i, 6] = t.lightness
                tbl[i, 5] = 1.0 if t.lightness_min_open else 0.0
                tbl[i, 7] = 1.0 if t.lightness_max_closed else 0.0
            if t.chroma is not None:
                tbl[i, 8] = 1.0
                tbl[i, 9], tbl[i, 10] = t.chroma
                tbl[i, 11] = 1.0 if t.chroma_max_closed else 0.0
        return tbl

    def classify(self, c: LabColor) -> str:
        idx = _kernels.classify_nb(c.L, c.a, c.b, self.as_array)
        return self.terms[int(idx)].name

    def to_config(self) -> dict:
        out: dict = {"order": list(self.names), "terms": {}}
        for t in self.terms:
            entry: dict = {}
            if t.hue is not None:
                entry["hue"] = list(t.hue)
            if t.lightness is not None:
                entry["lightness"] = list(t.lightness)
                if t.lightness_min_open:
                    entry["lightness_min_open"] = True
                if t.lightness_max_closed:
                    entry["lightness_max_closed"] = True
            if t.chroma is not None:
                entry["chroma"] = list(t.chroma)
                if t.chroma_max_closed:
                    entry["chroma_max_closed"] = True
            out["terms"][t.name] = entry
        return out

    @classmethod
    def from_file(cls, path: str | Path) -> "HueTermTable":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read term table {path}: {exc}") from exc
        return cls.from_config(raw)

    @classmethod
    def from_config(cls, raw: dict) -> "HueTermTable":
        if not isinstance(raw, dict) or "order" not in raw or "terms" not in raw:
            raise ParseError("term table needs 'order' and 'terms' keys")
        terms = []
        for name in raw["order"]:
            if name not in raw["terms"]:
                raise ValidationError(f"term {name!r} listed in order but not defined")
            spec = raw["terms"][name]

            def pair(key):
                if key not in spec:
                    return None
                v = spec[key]
                if (not isinstance(v, (list, tuple)) or len(v) != 2
                        or not all(isinstance(x, (int, float)) for x in v)):
                    raise ValidationError(f"term {name!r}: {key} must be [lo, hi]")
                return (float(v[0]), float(v[1]))

            terms.append(HueTerm(
                name=name,
                hue=pair("hue"),
                lightness=pair("lightness"),
                chroma=pair("chroma"),
                lightness_min_open=bool(spec.get("lightness_min_open", False)),
                lightness_max_closed=bool(spec.get("lightness_max_closed", False)),
                chroma_max_closed=bool(spec.get("chroma_max_closed", False)),
            ))
        return cls(terms=tuple(terms))


# ---------------------------------------------------------------------------
# filtering and sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExcludedBand:
    """Hue band rejected when lightness also falls in the paired interval."""

    hue_lo: float = 85.0
    hue_hi: float = 114.0
    lightness_lo: float = 35.0
    lightness_hi: float = 75.0


@dataclass(frozen=True)
class ColorFilter:
    """Constraints a candidate palette color must satisfy."""

    lightness_range: tuple[float, float] = (0.0, 100.0)
    excluded_band: ExcludedBand | None = field(default_factory=ExcludedBand)
    allowed_hue_terms: frozenset[str] | None = None
    term_table: HueTermTable = field(default_factory=HueTermTable)

    def __post_init__(self):
        lo, hi = self.lightness_range
        if not (0.0 <= lo <= hi <= 100.0):
            raise ValidationError(f"lightness range {self.lightness_range} invalid")
        object.__setattr__(self, "lightness_range", (float(lo), float(hi)))
        if self.allowed_hue_terms is not None:
            terms = frozenset(self.allowed_hue_terms)
            if not terms:
                raise ValidationError("allowed_hue_terms must not be empty")
            unknown = terms - set(self.term_table.names)
            if unknown:
                raise ValidationError(f"unknown hue terms: {sorted(unknown)}")
            object.__setattr__(self, "allowed_hue_terms", terms)

    @cached_property
    def as_params(self) -> np.ndarray:
        fp = np.zeros(8)
        fp[0], fp[1] = self.lightness_range
        if self.excluded_band is not None:
            fp[2] = 1.0
            fp[3] = self.excluded_band.hue_lo
            fp[4] = self.excluded_band.hue_hi
            fp[5] = self.excluded_band.lightness_lo
            fp[6] = self.excluded_band.lightness_hi
        fp[7] = 1.0 if self.allowed_hue_terms is not None else 0.0
        return fp

    @cached_property
    def allowed_mask(self) -> np.ndarray:
        mask = np.ones(len(self.term_table.terms), dtype=np.bool_)
        if self.allowed_hue_terms is not None:
            for i, t in enumerate(self.term_table.terms):
                mask[i] = t.name in self.allowed_hue_terms
        return mask


def passes_filter(c: LabColor, f: ColorFilter) -> bool:
    return bool(_kernels.passes_filter_nb(
        c.L, c.a, c.b, f.as_params, f.term_table.as_array, f.allowed_mask))


def classify_hue_term(c: LabColor, table: HueTermTable | None = None) -> str:
    return (table or HueTermTable()).classify(c)


def _term_proposal(f: ColorFilter, rng: np.random.Generator) -> LabColor:
    # draw inside a randomly chosen allowed term's region so narrow term
    # selections still hit at a useful rate
    names = sorted(f.allowed_hue_terms)
    pick = names[int(rng.integers(len(names)))]
    term = next(t for t in f.term_table.terms if t.name == pick)
    lo, hi = f.lightness_range
    if term.lightness is not None:
        lo, hi = max(lo, term.lightness[0]), min(hi, term.lightness[1])
        if lo > hi:
            lo, hi = f.lightness_range
    L = rng.uniform(lo, hi)
    c_hi = term.chroma[1] if term.chroma is not None else 135.0
    C = rng.uniform(0.0, c_hi)
    if term.hue is not None:
        h_lo, h_hi = term.hue
        if h_hi < h_lo:
            h_hi += 360.0
        h = math.radians(rng.uniform(h_lo, h_hi) % 360.0)
    else:
        h = rng.uniform(0.0, 2.0 * math.pi)
    return LabColor(L, C * math.cos(h), C * math.sin(h))


def sample_candidate(f: ColorFilter, rng: np.random.Generator,
                     max_attempts: int = 10000) -> LabColor:
    """Rejection-sample an in-gamut color passing the filter."""
    lo, hi = f.lightness_range
    for _ in range(max_attempts):
        if f.allowed_hue_terms is not None:
            c = _term_proposal(f, rng)
        else:
            c = LabColor(rng.uniform(lo, hi), rng.uniform(-128.0, 128.0),
                         rng.uniform(-128.0, 128.0))
        if _kernels.in_srgb_gamut_nb(c.L, c.a, c.b) and passes_filter(c, f):
            return c
    raise FilterUnsatisfiable(f"no candidate passed the filter in {max_attempts} attempts")


# ---------------------------------------------------------------------------
# palettes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Palette:
    """Class colors plus the chart background; locked colors belong to the user."""

    class_colors: tuple[LabColor, ...]
    background: LabColor
    locked: tuple[bool, ...] = ()

    def __post_init__(self):
        colors = tuple(self.class_colors)
        if not colors:
            raise ValidationError("palette needs at least one class color")
        object.__setattr__(self, "class_colors", colors)
        locked = tuple(self.locked) if self.locked else (False,) * len(colors)
        if len(locked) != len(colors):
            raise ValidationError("locked flags must match class colors")
        object.__setattr__(self, "locked", tuple(bool(x) for x in locked))

    @property
    def m(self) -> int:
        return len(self.class_colors)

    def labs_array(self) -> np.ndarray:
        return np.array([c.as_tuple() for c in self.class_colors])

    def with_color(self, i: int, c: LabColor) -> "Palette":
        colors = list(self.class_colors)
        colors[i] = c
        return Palette(tuple(colors), self.background, self.locked)

    def hexes(self) -> list[str]:
        return [lab_to_srgb(c)[0].hex for c in self.class_colors]

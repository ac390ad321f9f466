"""Chart dataset, palette, and trace file formats (JSON / CSV)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .charts import BarChartData, LineChartData
from .colors import LabColor, Palette, RgbColor, lab_to_srgb, srgb_to_lab
from .errors import ParseError, ValidationError
from .graphs import LabeledPointSet

DEFAULT_CANVAS = (400.0, 400.0)

KINDS = ("scatter", "line", "bar")


@dataclass(frozen=True)
class ChartDataset:
    """A parsed chart with named classes and a pixel canvas."""

    kind: str
    payload: LabeledPointSet | LineChartData | BarChartData
    class_names: tuple[str, ...] = ()
    canvas: tuple[float, float] = DEFAULT_CANVAS

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"kind must be one of {KINDS}, got {self.kind!r}")
        expected = {"scatter": LabeledPointSet, "line": LineChartData,
                    "bar": BarChartData}[self.kind]
        if not isinstance(self.payload, expected):
            raise ValidationError(
                f"{self.kind} dataset needs a {expected.__name__} payload")
        names = tuple(self.class_names) or tuple(
            f"class {i}" for i in range(self.payload.m))
        if len(names) != self.payload.m:
            raise ValidationError(
                f"{len(names)} class names for {self.payload.m} classes")
        object.__setattr__(self, "class_names", names)
        w, h = self.canvas
        if not (w > 0 and h > 0):
            raise ValidationError(f"canvas must be positive, got {self.canvas}")
        object.__setattr__(self, "canvas", (float(w), float(h)))

    @property
    def m(self) -> int:
        return self.payload.m

    @property
    def n_points(self) -> int:
        if isinstance(self.payload, LabeledPointSet):
            return self.payload.n
        if isinstance(self.payload, LineChartData):
            return sum(len(s) for s in self.payload.series)
        return len(self.payload.values)


def _canvas_from(raw: dict) -> tuple[float, float]:
    canvas = raw.get("canvas", list(DEFAULT_CANVAS))
    if (not isinstance(canvas, (list, tuple)) or len(canvas) != 2
            or not all(isinstance(v, (int, float)) for v in canvas)):
        raise ValidationError(f"canvas must be [width, height], got {canvas!r}")
    return float(canvas[0]), float(canvas[1])


def _scatter_from(raw: dict, canvas) -> ChartDataset:
    classes = raw.get("classes")
    if not isinstance(classes, list) or not classes:
        raise ValidationError("scatter dataset needs a non-empty 'classes' list")
    points = raw.get("points")
    if not isinstance(points, list) or not points:
        raise ValidationError("scatter dataset needs a non-empty 'points' list")
    m = len(classes)
    xy = np.empty((len(points), 2))
    labels = np.empty(len(points), dtype=np.int64)
    for i, row in enumerate(points):
        if (not isinstance(row, list) or len(row) != 3
                or not all(isinstance(v, (int, float)) for v in row)):
            raise ValidationError(f"point {i}: expected [x, y, classIndex]")
        ci = row[2]
        if ci != int(ci) or not 0 <= int(ci) < m:
            raise ValidationError(
                f"point {i}: class index {ci} not declared (m={m})")
        xy[i] = (row[0], row[1])
        labels[i] = int(ci)
    ps = LabeledPointSet(points=xy, labels=labels, m=m)
    return ChartDataset("scatter", ps, tuple(str(c) for c in classes), canvas)


def _line_from(raw: dict, canvas) -> ChartDataset:
    series = raw.get("series")
    if not isinstance(series, list) or not series:
        raise ValidationError("line dataset needs a non-empty 'series' list")
    arrays = []
    for i, s in enumerate(series):
        if not isinstance(s, list):
            raise ValidationError(f"series {i}: expected a list of [x, y] pairs")
        for j, v in enumerate(s):
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(x, (int, float)) for x in v)):
                raise ValidationError(f"series {i}, vertex {j}: expected [x, y]")
        arrays.append(np.asarray(s, dtype=np.float64))
    lc = LineChartData(series=arrays, canvas=canvas)
    classes = raw.get("classes", [f"series {i}" for i in range(lc.m)])
    return ChartDataset("line", lc, tuple(str(c) for c in classes), canvas)


def _bar_from(raw: dict, canvas) -> ChartDataset:
    bars = raw.get("bars")
    if not isinstance(bars, list) or not bars:
        raise ValidationError("bar dataset needs a non-empty 'bars' list")
    if not all(isinstance(v, (int, float)) for v in bars):
        raise ValidationError("bar values must be numbers")
    bc = BarChartData(values=np.asarray(bars, dtype=np.float64), canvas=canvas)
    classes = raw.get("classes", [f"bar {i}" for i in range(bc.m)])
    return ChartDataset("bar", bc, tuple(str(c) for c in classes), canvas)


def dataset_from_config(raw: dict) -> ChartDataset:
    """Build a dataset from parsed JSON; also the inline format of the service."""
    if not isinstance(raw, dict):
        raise ValidationError("dataset must be a JSON object")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"dataset kind must be one of {KINDS}, got {kind!r}")
    canvas = _canvas_from(raw)
    builder = {"scatter": _scatter_from, "line": _line_from, "bar": _bar_from}
    return builder[kind](raw, canvas)


def load_dataset(path: str | Path) -> ChartDataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc
    return dataset_from_config(raw)


# ---------------------------------------------------------------------------
# palette files
# ---------------------------------------------------------------------------

def palette_to_config(p: Palette, class_names: tuple[str, ...] | None = None,
                      energy: dict | None = None) -> dict:
    """Serializable palette document; LAB values carry the exact colors."""
    names = class_names or tuple(f"class {i}" for i in range(p.m))
    if len(names) != p.m:
        raise ValidationError(f"{len(names)} class names for {p.m} colors")
    return {
        "background": lab_to_srgb(p.background)[0].hex,
        "colors": [
            {
                "class": names[i],
                "hex": lab_to_srgb(c)[0].hex,
                "lab": [c.L, c.a, c.b],
                "locked": p.locked[i],
            }
            for i, c in enumerate(p.class_colors)
        ],
        "energy": energy or {},
    }


def palette_from_config(raw: dict) -> tuple[Palette, tuple[str, ...], dict]:
    """Inverse of palette_to_config; returns (palette, class names, energy)."""
    if not isinstance(raw, dict):
        raise ValidationError("palette must be a JSON object")
    bg = raw.get("background")
    if not isinstance(bg, str):
        raise ValidationError("palette needs a 'background' hex string")
    background = srgb_to_lab(RgbColor.from_hex(bg))
    colors = raw.get("colors")
    if not isinstance(colors, list) or not colors:
        raise ValidationError("palette needs a non-empty 'colors' list")
    labs, names, locked = [], [], []
    for i, entry in enumerate(colors):
        if not isinstance(entry, dict):
            raise ValidationError(f"color {i}: expected an object")
        if "lab" in entry:
            lab = entry["lab"]
            if (not isinstance(lab, list) or len(lab) != 3
                    or not all(isinstance(v, (int, float)) for v in lab)):
                raise ValidationError(f"color {i}: lab must be [L, a, b]")
            labs.append(LabColor(*lab))
        elif "hex" in entry:
            labs.append(srgb_to_lab(RgbColor.from_hex(entry["hex"])))
        else:
            raise ValidationError(f"color {i}: needs 'lab' or 'hex'")
        names.append(str(entry.get("class", f"class {i}")))
        locked.append(bool(entry.get("locked", False)))
    p = Palette(tuple(labs), background, tuple(locked))
    energy = raw.get("energy", {})
    if not isinstance(energy, dict):
        raise ValidationError("palette 'energy' must be an object")
    return p, tuple(names), energy


def dump_json(obj: dict) -> str:
    """Canonical document text: sorted keys, stable float repr, newline end."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_palette(path: str | Path, p: Palette,
                  class_names: tuple[str, ...] | None = None,
                  energy: dict | None = None) -> None:
    Path(path).write_text(dump_json(palette_to_config(p, class_names, energy)),
                          encoding="utf-8")


def read_palette(path: str | Path) -> tuple[Palette, tuple[str, ...], dict]:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc
    return palette_from_config(raw)


# ---------------------------------------------------------------------------
# energy traces
# ---------------------------------------------------------------------------

def trace_to_csv(trace: list[tuple[int, float, float]]) -> str:
    lines = ["iteration,current_energy,best_energy"]
    lines += [f"{i},{cur!r},{best!r}" for i, cur, best in trace]
    return "\n".join(lines) + "\n"


def write_trace(path: str | Path,
                trace: list[tuple[int, float, float]]) -> None:
    Path(path).write_text(trace_to_csv(trace), encoding="utf-8")

"""Data-aware categorical color palettes for scatter, line, and bar charts."""

from .annealing import AnnealConfig, AnnealResult, optimize
from .colors import (
    BASIC_TERMS,
    ColorFilter,
    ExcludedBand,
    HueTerm,
    HueTermTable,
    LabColor,
    Palette,
    RgbColor,
    ciede2000,
    classify_hue_term,
    lab_to_srgb,
    passes_filter,
    sample_candidate,
    srgb_to_lab,
)
from .errors import (
    AllLocked,
    DegenerateVector,
    FilterUnsatisfiable,
    HuefitError,
    InvalidConfig,
    InvalidK,
    ParseError,
    RefinementFailed,
    SizeMismatch,
    TooFewColors,
    ValidationError,
)
from .graphs import (
    LabeledPointSet,
    NeighborGraph,
    alpha_shape_graph,
    default_alpha_radius,
    delaunay,
    knn_graph,
    scale_to_canvas,
)
from .names import (
    NameCountMatrix,
    default_name_matrix,
    load_name_matrix,
    name_difference,
    palette_name_difference,
)
from .scoring import (
    ClassPairWeights,
    ScoreWeights,
    color_discrimination,
    energy_breakdown,
    point_distinctness,
    precompute_pair_weights,
    total_energy,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig",
    "AnnealResult",
    "optimize",
    "BASIC_TERMS",
    "ColorFilter",
    "ExcludedBand",
    "HueTerm",
    "HueTermTable",
    "LabColor",
    "Palette",
    "RgbColor",
    "ciede2000",
    "classify_hue_term",
    "lab_to_srgb",
    "passes_filter",
    "sample_candidate",
    "srgb_to_lab",
    "AllLocked",
    "DegenerateVector",
    "FilterUnsatisfiable",
    "HuefitError",
    "InvalidConfig",
    "InvalidK",
    "ParseError",
    "RefinementFailed",
    "SizeMismatch",
    "TooFewColors",
    "ValidationError",
    "LabeledPointSet",
    "NeighborGraph",
    "alpha_shape_graph",
    "default_alpha_radius",
    "delaunay",
    "knn_graph",
    "scale_to_canvas",
    "NameCountMatrix",
    "default_name_matrix",
    "load_name_matrix",
    "name_difference",
    "palette_name_difference",
    "ClassPairWeights",
    "ScoreWeights",
    "color_discrimination",
    "energy_breakdown",
    "point_distinctness",
    "precompute_pair_weights",
    "total_energy",
    "__version__",
]

"""Munsell soil color estimation from device-captured colors and images.

Converts captured colors to CIELab under D65, matches them against a soil
chart chip database with perceptual color-difference formulas, and provides
the evaluation analyses (heatmaps, accuracy tables, scatter exports, device
offsets) plus scikit-learn compatible estimators and a CLI.
"""

from .chart import (
    EVALUATION_PAGES,
    Chip,
    ChipDatabase,
    MatchResult,
    MatchScore,
    build_chip_database,
    bundled_database,
    load_chip_database,
    match,
    score_match,
)
from .colorspace import CmykColor, LabColor, LchColor, SrgbColor, XyzColor
from .difference import (
    DeltaEMethod,
    DifferenceResult,
    delta_e_1976,
    delta_e_1994,
    delta_e_2000,
    delta_e_cmc,
)
from .errors import (
    DataLoadError,
    DomainError,
    EvaluationError,
    IlluminantMismatchError,
    MunsellParseError,
    SoilColorError,
)
from .illuminants import C, D50, D65, Illuminant, get_illuminant
from .munsell import MunsellCode, format_munsell, hue_degrees, parse_hue, parse_munsell

__version__ = "0.1.0"

__all__ = [
    "C",
    "D50",
    "D65",
    "Chip",
    "ChipDatabase",
    "CmykColor",
    "DataLoadError",
    "DeltaEMethod",
    "DifferenceResult",
    "DomainError",
    "EVALUATION_PAGES",
    "EvaluationError",
    "Illuminant",
    "IlluminantMismatchError",
    "LabColor",
    "LchColor",
    "MatchResult",
    "MatchScore",
    "MunsellCode",
    "MunsellParseError",
    "SoilColorError",
    "SrgbColor",
    "XyzColor",
    "build_chip_database",
    "bundled_database",
    "delta_e_1976",
    "delta_e_1994",
    "delta_e_2000",
    "delta_e_cmc",
    "format_munsell",
    "get_illuminant",
    "hue_degrees",
    "load_chip_database",
    "match",
    "parse_hue",
    "parse_munsell",
    "score_match",
]

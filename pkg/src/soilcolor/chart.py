"""The soil-chart chip database and nearest-chip matching.

The bundled database carries D65 Lab coordinates for the seven hue pages
most relevant to soil work (10R through 5Y), derived from a chart
colorimetry file expressed as xyY under illuminant C. Sensor-scan CSVs in
the documented schema can replace it entirely.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .colorspace import LabColor, adapt_white_point, xyz_to_lab
from .difference import DeltaEMethod
from .errors import DataLoadError, DomainError, IlluminantMismatchError
from .illuminants import C, D65, Illuminant
from .munsell import MunsellCode, parse_hue, parse_munsell

__all__ = [
    "EVALUATION_PAGES",
    "PAGE_LAYOUT",
    "Chip",
    "ChipDatabase",
    "MatchResult",
    "MatchScore",
    "build_chip_database",
    "load_chip_database",
    "bundled_database",
    "match",
    "score_match",
]

# Hue pages the evaluation workflows default to, in hue-circle order.
EVALUATION_PAGES = ("10R", "2.5YR", "5YR", "7.5YR", "10YR", "2.5Y", "5Y")

# Canonical (value, chroma) cells of one chart page: 34 chips per page.
PAGE_LAYOUT = tuple(
    (float(value), int(chroma))
    for value, chromas in [
        (2.5, (1,)),
        (3, (1, 2, 3, 4)),
        (4, (1, 2, 3, 4, 6)),
        (5, (1, 2, 3, 4, 6, 8)),
        (6, (1, 2, 3, 4, 6, 8)),
        (7, (1, 2, 3, 4, 6, 8)),
        (8, (1, 2, 3, 4, 6, 8)),
    ]
    for chroma in chromas
)

_DATA_RESOURCE = "mscc_chips_xyy_c.csv"
_SCAN_HEADER = ["hue", "value", "chroma", "L", "a", "b", "replicate"]


@dataclass(frozen=True)
class Chip:
    """One chart chip: Munsell identity plus reference Lab coordinates."""

    code: MunsellCode
    lab: LabColor
    source: str = "renotation-derived"
    replicates: tuple[LabColor, ...] = ()


class ChipDatabase:
    """Immutable set of chips keyed by Munsell code, indexed by hue page."""

    def __init__(self, chips):
        ordered = sorted(chips, key=lambda chip: chip.code.sort_key)
        seen: dict[str, Chip] = {}
        for chip in ordered:
            key = str(chip.code)
            if key in seen:
                raise DataLoadError(f"duplicate chip code {key}")
            seen[key] = chip
        self._chips: tuple[Chip, ...] = tuple(ordered)
        self._by_code = seen
        pages: dict[str, list[Chip]] = {}
        for chip in self._chips:
            pages.setdefault(chip.code.hue, []).append(chip)
        self._pages = {hue: tuple(page) for hue, page in pages.items()}
        self._lab = np.array([[c.lab.l, c.lab.a, c.lab.b] for c in self._chips]).reshape(-1, 3)

    def __len__(self) -> int:
        return len(self._chips)

    def __iter__(self):
        return iter(self._chips)

    @property
    def chips(self) -> tuple[Chip, ...]:
        return self._chips

    @property
    def pages(self) -> dict[str, tuple[Chip, ...]]:
        return dict(self._pages)

    def page(self, hue: str) -> tuple[Chip, ...]:
        hue = parse_hue(hue)
        try:
            return self._pages[hue]
        except KeyError:
            raise DomainError(f"hue page {hue!r} not in database; have {sorted(self._pages)}") from None

    def get(self, code: MunsellCode | str) -> Chip:
        key = str(code if isinstance(code, MunsellCode) else parse_munsell(code))
        try:
            return self._by_code[key]
        except KeyError:
            raise DomainError(f"chip {key!r} not in database") from None

    def __contains__(self, code) -> bool:
        key = str(code if isinstance(code, MunsellCode) else parse_munsell(str(code)))
        return key in self._by_code

    def lab_matrix(self) -> np.ndarray:
        """(n, 3) array of chip Lab coordinates in canonical chip order."""
        return self._lab.copy()

    def codes(self) -> tuple[MunsellCode, ...]:
        return tuple(chip.code for chip in self._chips)

    def filter_pages(self, pages) -> "ChipDatabase":
        """Database restricted to the given hue pages."""
        wanted = {parse_hue(p) for p in pages}
        return ChipDatabase([c for c in self._chips if c.code.hue in wanted])


def _xyy_to_xyz(x: float, y: float, big_y: float) -> tuple[float, float, float]:
    if y <= 0:
        raise DataLoadError(f"xyY row has non-positive y chromaticity {y}")
    return (x / y * big_y, big_y, (1 - x - y) / y * big_y)


def build_chip_database(
    renotation_source: str | Path | None = None,
    target: Illuminant = D65,
    require_pages=EVALUATION_PAGES,
) -> ChipDatabase:
    """Build the chip database from a chart colorimetry file.

    The file holds one row per chip as xyY under illuminant C
    (header ``hue,value,chroma,x,y,Y``). Each chip's coordinates run
    xyY (C) -> XYZ -> chromatic adaptation -> Lab under ``target``.
    Neutral gley rows are not representable and never enter the database.

    Raises :class:`DataLoadError` if any required page is missing chips of
    the canonical page layout.
    """
    if renotation_source is None:
        text = resources.files("soilcolor").joinpath("data", _DATA_RESOURCE).read_text()
        fh = io.StringIO(text)
        name = _DATA_RESOURCE
    else:
        fh = open(renotation_source, newline="")
        name = str(renotation_source)

    chips = []
    with fh:
        reader = csv.DictReader(fh)
        expected = ["hue", "value", "chroma", "x", "y", "Y"]
        if reader.fieldnames != expected:
            raise DataLoadError(f"{name}: expected header {expected}, got {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            hue = (row.get("hue") or "").strip().upper()
            if hue == "N" or (row.get("chroma") or "").strip() in ("0", "0.0"):
                continue  # neutral gley rows are outside the soil chart subset
            try:
                code = parse_munsell(f"{row['hue']} {row['value']}/{row['chroma']}")
                xyz_c = _xyy_to_xyz(float(row["x"]), float(row["y"]), float(row["Y"]))
            except (ValueError, KeyError) as exc:
                raise DataLoadError(f"{name} line {lineno}: {exc}") from exc
            xyz_t = adapt_white_point(xyz_c, C, target)
            lab = xyz_to_lab(xyz_t, target)
            chips.append(
                Chip(code=code, lab=LabColor(*(float(v) for v in lab), illuminant=target))
            )

    db = ChipDatabase(chips)
    missing = []
    for page in require_pages or ():
        page = parse_hue(page)
        have = {(c.code.value, c.code.chroma) for c in db.pages.get(page, ())}
        missing.extend(
            f"{page} {v:g}/{ch:g}" for v, ch in PAGE_LAYOUT if (v, ch) not in have
        )
    if missing:
        raise DataLoadError(f"{name}: missing chips: {', '.join(missing)}")
    return db


@lru_cache(maxsize=1)
def bundled_database() -> ChipDatabase:
    """The chip database shipped with the package (seven pages, 238 chips)."""
    return build_chip_database(None)


def load_chip_database(scan_file: str | Path, aggregate: str = "mean") -> ChipDatabase:
    """Load a sensor-scan CSV (``hue,value,chroma,L,a,b,replicate``).

    Replicate rows of one chip are aggregated to a single Lab coordinate
    (arithmetic mean by default, ``aggregate="median"`` as the robust
    option); the raw readings stay attached to the chip.
    """
    if aggregate not in ("mean", "median"):
        raise DataLoadError(f"unknown aggregate {aggregate!r}; use 'mean' or 'median'")
    path = Path(scan_file)
    groups: dict[str, list[tuple[float, float, float]]] = {}
    codes: dict[str, MunsellCode] = {}
    replicate_seen: dict[tuple[str, int], int] = {}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            warnings.warn(f"{path}: empty scan file, database has no chips", stacklevel=2)
            return ChipDatabase([])
        if reader.fieldnames != _SCAN_HEADER:
            raise DataLoadError(f"{path}: expected header {_SCAN_HEADER}, got {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            try:
                code = parse_munsell(f"{row['hue']} {row['value']}/{row['chroma']}")
                lab = (float(row["L"]), float(row["a"]), float(row["b"]))
                replicate = int(row["replicate"])
            except (ValueError, KeyError) as exc:
                raise DataLoadError(f"{path} line {lineno}: {exc}") from exc
            if not 0.0 <= lab[0] <= 100.0:
                raise DataLoadError(f"{path} line {lineno}: L* {lab[0]} outside [0, 100]")
            if replicate < 1:
                raise DataLoadError(f"{path} line {lineno}: replicate index must be >= 1")
            key = str(code)
            dup = replicate_seen.setdefault((key, replicate), lineno)
            if dup != lineno:
                raise DataLoadError(
                    f"{path} line {lineno}: duplicate replicate {replicate} for chip {key} "
                    f"(first seen on line {dup})"
                )
            codes[key] = code
            groups.setdefault(key, []).append(lab)

    if not groups:
        warnings.warn(f"{path}: empty scan file, database has no chips", stacklevel=2)
        return ChipDatabase([])

    reduce = np.mean if aggregate == "mean" else np.median
    chips = []
    for key, readings in groups.items():
        arr = np.asarray(readings)
        lab = reduce(arr, axis=0)
        chips.append(
            Chip(
                code=codes[key],
                lab=LabColor(*(float(v) for v in lab)),
                source="sensor-scan",
                replicates=tuple(LabColor(*r) for r in readings),
            )
        )
    return ChipDatabase(chips)


@dataclass(frozen=True)
class MatchResult:
    """Chips ranked by ascending difference from a query color."""

    query: LabColor
    ranked: tuple[tuple[MunsellCode, float], ...]
    method: DeltaEMethod

    @property
    def best(self) -> MunsellCode:
        return self.ranked[0][0]


@dataclass(frozen=True)
class MatchScore:
    hue_correct: bool
    hvc_correct: bool


def rank_against(queries: np.ndarray, db: ChipDatabase, method: DeltaEMethod) -> np.ndarray:
    """Difference matrix of shape (n_queries, n_chips), chips as reference.

    Chips appear in canonical database order; row-wise stable argsort over
    the matrix therefore breaks exact ties by chart order.
    """
    chips = db.lab_matrix()
    if chips.size == 0:
        raise DomainError("cannot match against an empty chip database")
    queries = np.asarray(queries, dtype=float).reshape(-1, 3)
    return method.compute(chips[None, :, :], queries[:, None, :])


def match(
    query: LabColor,
    db: ChipDatabase,
    method: DeltaEMethod | str = "de2000",
    pages=None,
    k: int | None = None,
) -> MatchResult:
    """Rank every chip by difference to ``query`` (chip = reference).

    ``pages`` optionally restricts candidates to the given hue pages; ties
    in the difference value fall back to canonical chart order.
    """
    if isinstance(method, str):
        method = DeltaEMethod.from_name(method)
    if query.illuminant.white_point != D65.white_point:
        raise IlluminantMismatchError(
            f"query must be D65 Lab, got illuminant {query.illuminant.name}; adapt it first"
        )
    if k is not None and k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    candidates = db.filter_pages(pages) if pages is not None else db
    values = rank_against([[query.l, query.a, query.b]], candidates, method)[0]
    order = np.argsort(values, kind="stable")
    if k is not None:
        order = order[:k]
    codes = candidates.codes()
    ranked = tuple((codes[i], float(values[i])) for i in order)
    return MatchResult(query=query, ranked=ranked, method=method)


def score_match(result: MatchResult, truth: MunsellCode | str) -> MatchScore:
    """Hue-page and exact-code correctness of the top-ranked chip."""
    if not result.ranked:
        raise DomainError("cannot score an empty match result")
    if isinstance(truth, str):
        truth = parse_munsell(truth)
    best = result.best
    return MatchScore(hue_correct=best.hue == truth.hue, hvc_correct=best == truth)

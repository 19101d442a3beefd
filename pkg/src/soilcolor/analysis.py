"""Evaluation analyses: cross-hue heatmaps, accuracy tables, scatter exports,
device offsets, and the hue-separation (clumping) index.

All analyses are pure over immutable inputs and their serialized forms use
fixed orderings and number formats, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .capture import CaptureSet
from .chart import EVALUATION_PAGES, Chip, ChipDatabase, rank_against
from .colorspace import lab_to_lch, lab_to_srgb, lab_to_xyz, srgb_to_cmyk
from .difference import DeltaEMethod
from .errors import DomainError, EvaluationError
from .munsell import MunsellCode, parse_hue

__all__ = [
    "HeatmapGrid",
    "CenterlineStats",
    "MatchRecord",
    "AccuracyReport",
    "DeviceOffsetReport",
    "ScatterTable",
    "heatmap",
    "centerline_stats",
    "evaluate",
    "scatter_export",
    "device_offsets",
    "clumping_index",
]

SCATTER_SPACES = ("rgb", "cmyk", "xyz", "lch", "lab")


def _page_chips(db: ChipDatabase, page: str) -> tuple[Chip, ...]:
    """Chips of one hue page in heatmap order: value descending, chroma ascending."""
    chips = db.page(page)
    return tuple(sorted(chips, key=lambda c: (-c.code.value, c.code.chroma)))


# ---------------------------------------------------------------------------
# Heatmaps


@dataclass(frozen=True)
class HeatmapGrid:
    """Cross-page difference matrix; row chips are the reference colors."""

    row_page: str
    col_page: str
    row_chips: tuple[Chip, ...]
    col_chips: tuple[Chip, ...]
    values: np.ndarray
    method: DeltaEMethod
    centerline: tuple[float, ...]

    def write_csv(self, dest: str | Path) -> Path:
        dest = Path(dest)
        with dest.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["reference\\sample"] + [str(c.code) for c in self.col_chips])
            for chip, row in zip(self.row_chips, self.values):
                writer.writerow([str(chip.code)] + [f"{v:.6f}" for v in row])
        return dest


def heatmap(
    db: ChipDatabase, page_a: str, page_b: str, method: DeltaEMethod | str = "de2000"
) -> HeatmapGrid:
    """Full cross difference matrix between two hue pages.

    The centerline collects the cells pairing chips with identical
    (value, chroma) across the two pages, in row order.
    """
    if isinstance(method, str):
        method = DeltaEMethod.from_name(method)
    rows = _page_chips(db, page_a)
    cols = _page_chips(db, page_b)
    ref = np.array([[c.lab.l, c.lab.a, c.lab.b] for c in rows])
    sam = np.array([[c.lab.l, c.lab.a, c.lab.b] for c in cols])
    values = method.compute(ref[:, None, :], sam[None, :, :])

    col_index = {(c.code.value, c.code.chroma): j for j, c in enumerate(cols)}
    centerline = tuple(
        float(values[i, col_index[(c.code.value, c.code.chroma)]])
        for i, c in enumerate(rows)
        if (c.code.value, c.code.chroma) in col_index
    )
    return HeatmapGrid(
        row_page=parse_hue(page_a),
        col_page=parse_hue(page_b),
        row_chips=rows,
        col_chips=cols,
        values=values,
        method=method,
        centerline=centerline,
    )


@dataclass(frozen=True)
class CenterlineStats:
    """Population statistics of the centerline differences."""

    mean: float
    stdev: float
    min: float
    max: float

    def to_dict(self) -> dict:
        return {"mean": self.mean, "stdev": self.stdev, "min": self.min, "max": self.max}


def centerline_stats(grid: HeatmapGrid) -> CenterlineStats:
    """Mean/stdev/min/max of the centerline (population standard deviation)."""
    if not grid.centerline:
        raise DomainError("heatmap has an empty centerline; pages share no (value, chroma) cells")
    arr = np.asarray(grid.centerline)
    return CenterlineStats(
        mean=float(arr.mean()),
        stdev=float(arr.std()),
        min=float(arr.min()),
        max=float(arr.max()),
    )


def write_heatmap_outputs(grid: HeatmapGrid, out_dir: str | Path) -> list[Path]:
    """Write the matrix CSV plus a JSON metadata sidecar; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"heatmap_{grid.row_page}_{grid.col_page}_{grid.method.kind}".replace(".", "_")
    csv_path = grid.write_csv(out_dir / f"{stem}.csv")
    stats = centerline_stats(grid)
    meta = {
        "method": grid.method.kind,
        "pages": [grid.row_page, grid.col_page],
        "rows": len(grid.row_chips),
        "cols": len(grid.col_chips),
        "centerline_cells": len(grid.centerline),
        "centerline": stats.to_dict(),
    }
    json_path = out_dir / f"{stem}.json"
    json_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return [csv_path, json_path]


# ---------------------------------------------------------------------------
# Accuracy evaluation


@dataclass(frozen=True)
class MatchRecord:
    """Top-1 match outcome for one observation under one method."""

    set_label: str
    method: str
    truth: MunsellCode
    predicted: MunsellCode
    delta_e: float
    hue_correct: bool
    hvc_correct: bool


@dataclass(frozen=True)
class AccuracyReport:
    """Hue and hue-value-chroma accuracy per (method, capture set)."""

    set_labels: tuple[str, ...]
    methods: tuple[str, ...]
    hue_accuracy: dict[tuple[str, str], float]
    hvc_accuracy: dict[tuple[str, str], float]
    records: tuple[MatchRecord, ...]

    def write_csv(self, out_dir: str | Path) -> list[Path]:
        """Accuracy tables (one per metric) plus the per-chip records."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for metric, table in (("hue", self.hue_accuracy), ("hvc", self.hvc_accuracy)):
            path = out_dir / f"accuracy_{metric}.csv"
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["method"] + list(self.set_labels))
                for method in self.methods:
                    writer.writerow(
                        [method] + [f"{table[(method, label)]:.2f}" for label in self.set_labels]
                    )
            paths.append(path)
        records_path = out_dir / "match_records.csv"
        with records_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["set", "method", "truth", "predicted", "delta_e", "hue_correct", "hvc_correct"]
            )
            for r in self.records:
                writer.writerow(
                    [
                        r.set_label,
                        r.method,
                        str(r.truth),
                        str(r.predicted),
                        f"{r.delta_e:.6f}",
                        int(r.hue_correct),
                        int(r.hvc_correct),
                    ]
                )
        paths.append(records_path)
        return paths


def evaluate(
    sets,
    db: ChipDatabase,
    methods=("de1976", "de1994", "de2000", "cmc"),
    pages=EVALUATION_PAGES,
) -> AccuracyReport:
    """Match every observation against the chart and score the accuracy.

    Matching is restricted to ``pages`` (the seven soil evaluation pages by
    default; pass ``None`` to use the whole database). Every truth code
    must exist among the candidate chips.
    """
    sets = list(sets)
    method_objs = [
        m if isinstance(m, DeltaEMethod) else DeltaEMethod.from_name(m) for m in methods
    ]
    method_kinds = tuple(m.kind for m in method_objs)
    if len(set(method_kinds)) != len(method_kinds):
        raise EvaluationError(f"duplicate methods in {method_kinds}")
    candidates = db.filter_pages(pages) if pages is not None else db
    if len(candidates) == 0:
        raise EvaluationError("no candidate chips on the requested pages")
    codes = candidates.codes()

    labels = []
    for cs in sets:
        if cs.label in labels:
            raise EvaluationError(f"duplicate capture set label {cs.label!r}")
        labels.append(cs.label)
        missing = [str(t) for t in cs.truth_codes() if t not in candidates]
        if missing:
            raise EvaluationError(
                f"capture set {cs.label!r} has truth codes not in the database: "
                + ", ".join(missing)
            )

    hue_acc: dict[tuple[str, str], float] = {}
    hvc_acc: dict[tuple[str, str], float] = {}
    records: list[MatchRecord] = []
    for cs in sets:
        queries = cs.lab_matrix()
        truths = cs.truth_codes()
        for method in method_objs:
            values = rank_against(queries, candidates, method)
            best = np.argmin(values, axis=1)
            hue_hits = 0
            hvc_hits = 0
            for i, (truth, j) in enumerate(zip(truths, best)):
                predicted = codes[j]
                hue_ok = predicted.hue == truth.hue
                hvc_ok = predicted == truth
                hue_hits += hue_ok
                hvc_hits += hvc_ok
                records.append(
                    MatchRecord(
                        set_label=cs.label,
                        method=method.kind,
                        truth=truth,
                        predicted=predicted,
                        delta_e=float(values[i, j]),
                        hue_correct=hue_ok,
                        hvc_correct=hvc_ok,
                    )
                )
            hue_acc[(method.kind, cs.label)] = 100.0 * hue_hits / len(truths)
            hvc_acc[(method.kind, cs.label)] = 100.0 * hvc_hits / len(truths)

    return AccuracyReport(
        set_labels=tuple(labels),
        methods=method_kinds,
        hue_accuracy=hue_acc,
        hvc_accuracy=hvc_acc,
        records=tuple(records),
    )


# ---------------------------------------------------------------------------
# Scatter exports and the clumping index


@dataclass(frozen=True)
class ScatterTable:
    """Per-chip coordinates in one export space, ready for 3D plotting."""

    space: str
    columns: tuple[str, ...]
    codes: tuple[MunsellCode, ...]
    pages: tuple[str, ...]
    coords: np.ndarray
    clipped: tuple[bool, ...] | None = None

    def write_csv(self, dest: str | Path) -> Path:
        dest = Path(dest)
        with dest.open("w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["code", "page"] + list(self.columns)
            if self.clipped is not None:
                header.append("gamut_clipped")
            writer.writerow(header)
            for i, code in enumerate(self.codes):
                row = [str(code), self.pages[i]] + [repr(float(v)) for v in self.coords[i]]
                if self.clipped is not None:
                    row.append(int(self.clipped[i]))
                writer.writerow(row)
        return dest


def scatter_export(db: ChipDatabase, space: str) -> ScatterTable:
    """Chip coordinates converted into one of RGB, CMYK, XYZ, LCH or LAB.

    RGB rows carry a gamut-clamp flag; CMYK components are reported as
    percentages.
    """
    key = space.strip().lower()
    if key not in SCATTER_SPACES:
        raise DomainError(f"unsupported export space {space!r}; use one of {SCATTER_SPACES}")
    labs = db.lab_matrix()
    codes = db.codes()
    pages = tuple(c.hue for c in codes)
    clipped = None
    if key == "lab":
        coords, columns = labs, ("L", "a", "b")
    elif key == "lch":
        coords, columns = lab_to_lch(labs), ("L", "C", "h")
    elif key == "xyz":
        coords, columns = lab_to_xyz(labs), ("X", "Y", "Z")
    elif key == "rgb":
        rgb, mask = lab_to_srgb(labs)
        coords, columns = rgb.astype(float), ("R", "G", "B")
        clipped = tuple(bool(v) for v in mask)
    else:
        rgb, mask = lab_to_srgb(labs)
        coords = srgb_to_cmyk(rgb / 255.0) * 100.0
        columns = ("C", "M", "Y", "K")
        clipped = tuple(bool(v) for v in mask)
    return ScatterTable(
        space=key, columns=tuple(columns), codes=codes, pages=pages, coords=coords, clipped=clipped
    )


def clumping_index(table: ScatterTable) -> dict[str, float]:
    """Hue-page separation in the exported space, one scalar per page.

    For each chip, take the distance to the nearest chip of a *different*
    hue page; a page's index is the mean of those distances over its chips,
    normalized by the largest single-coordinate extent of the export.
    Larger values mean the pages are better separated.
    """
    pages = sorted(set(table.pages))
    if len(pages) < 2:
        raise DomainError("clumping index needs chips from at least 2 hue pages")
    coords = np.asarray(table.coords, dtype=float)
    extent = float((coords.max(axis=0) - coords.min(axis=0)).max())
    if extent == 0.0:
        return {page: 0.0 for page in pages}
    page_arr = np.asarray(table.pages)
    dist = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=-1))
    other = page_arr[:, None] != page_arr[None, :]
    nearest_other = np.where(other, dist, np.inf).min(axis=1)
    return {
        page: float(nearest_other[page_arr == page].mean() / extent) for page in pages
    }


# ---------------------------------------------------------------------------
# Device offsets


@dataclass(frozen=True)
class DeviceOffsetReport:
    """Per-device, per-Lab-channel signed offsets against a reference."""

    reference: str
    devices: tuple[str, ...]
    channels: tuple[str, ...]
    mean: dict[tuple[str, str], float]
    stdev: dict[tuple[str, str], float]
    deltas: dict[str, dict[str, tuple[float, float, float]]]

    def write_csv(self, out_dir: str | Path) -> list[Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        summary = out_dir / "device_offsets.csv"
        with summary.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["device", "channel", "mean_offset", "stdev"])
            for device in self.devices:
                for channel in self.channels:
                    writer.writerow(
                        [
                            device,
                            channel,
                            f"{self.mean[(device, channel)]:.6f}",
                            f"{self.stdev[(device, channel)]:.6f}",
                        ]
                    )
        detail = out_dir / "device_offset_deltas.csv"
        with detail.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["device", "chip", "dL", "da", "db"])
            for device in self.devices:
                for code, (dl, da, db_) in self.deltas[device].items():
                    writer.writerow([device, code, f"{dl:.6f}", f"{da:.6f}", f"{db_:.6f}"])
        return [summary, detail]


def device_offsets(sets, reference: CaptureSet | ChipDatabase) -> DeviceOffsetReport:
    """Mean signed Lab offsets of each capture set against a reference.

    The reference is either another capture set or a chip database; every
    set must cover exactly the reference's truth-code inventory.
    """
    if isinstance(reference, ChipDatabase):
        ref_lab = {str(chip.code): np.array([chip.lab.l, chip.lab.a, chip.lab.b]) for chip in reference}
        ref_name = "chip-database"
    else:
        ref_lab = {
            str(obs.truth): obs.lab() for obs in reference.observations
        }
        ref_name = reference.label

    channels = ("L", "a", "b")
    devices: list[str] = []
    mean: dict[tuple[str, str], float] = {}
    stdev: dict[tuple[str, str], float] = {}
    deltas: dict[str, dict[str, tuple[float, float, float]]] = {}
    for cs in sets:
        name = cs.device or cs.label
        if name in devices:
            raise EvaluationError(f"duplicate device {name!r} in offset comparison")
        devices.append(name)
        have = {str(t) for t in cs.truth_codes()}
        missing = sorted(set(ref_lab) - have) + sorted(have - set(ref_lab))
        if missing:
            raise EvaluationError(
                f"capture set {cs.label!r} does not align with reference {ref_name!r}; "
                "mismatched codes: " + ", ".join(missing)
            )
        per_chip = {}
        diff_rows = []
        for obs in cs.observations:
            d = obs.lab() - ref_lab[str(obs.truth)]
            per_chip[str(obs.truth)] = (float(d[0]), float(d[1]), float(d[2]))
            diff_rows.append(d)
        diffs = np.vstack(diff_rows)
        for k, channel in enumerate(channels):
            mean[(name, channel)] = float(diffs[:, k].mean())
            stdev[(name, channel)] = float(diffs[:, k].std())
        deltas[name] = per_chip

    return DeviceOffsetReport(
        reference=ref_name,
        devices=tuple(devices),
        channels=channels,
        mean=mean,
        stdev=stdev,
        deltas=deltas,
    )

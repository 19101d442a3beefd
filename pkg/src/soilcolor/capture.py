"""Capture sets: per-chip observations from one device and session.

A capture set pairs ground-truth Munsell codes with observed colors, which
arrive either as chip photo crops, inline 8-bit RGB, or inline Lab. The
manifest CSV schema is ``truth,image_path,R,G,B,L,a,b`` with exactly one of
the three groups populated per row; optional ``#key=value`` lines before
the header carry the set label, device name, and time-of-day tag.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .chart import ChipDatabase
from .colorspace import LabColor, SrgbColor, srgb_to_lab
from .errors import DataLoadError, DomainError
from .illuminants import D65
from .munsell import MunsellCode, parse_munsell

__all__ = [
    "Observation",
    "CaptureSet",
    "ImagePatch",
    "central_region",
    "extract_patch_color",
    "read_image_patch",
    "load_capture_set",
    "save_capture_set",
    "synthesize_capture_set",
]

MANIFEST_HEADER = ["truth", "image_path", "R", "G", "B", "L", "a", "b"]


@dataclass(frozen=True)
class Observation:
    """One chip observation: the true code and the color a device saw."""

    truth: MunsellCode
    color: SrgbColor | LabColor

    def lab(self) -> np.ndarray:
        """Observed color as D65 Lab coordinates."""
        if isinstance(self.color, SrgbColor):
            return srgb_to_lab(self.color.normalized)
        lab = self.color
        if lab.illuminant.white_point != D65.white_point:
            lab = lab.to_xyz().adapt(D65).to_lab()
        return np.array([lab.l, lab.a, lab.b])


@dataclass(frozen=True)
class CaptureSet:
    """Labeled per-chip observations from one device and session."""

    label: str
    device: str
    observations: tuple[Observation, ...]
    time_of_day: str = ""

    def __post_init__(self):
        seen = {}
        for i, obs in enumerate(self.observations):
            key = str(obs.truth)
            if key in seen:
                raise DataLoadError(f"duplicate truth code {key} in capture set {self.label!r}")
            seen[key] = i

    def __len__(self) -> int:
        return len(self.observations)

    def truth_codes(self) -> tuple[MunsellCode, ...]:
        return tuple(obs.truth for obs in self.observations)

    def lab_matrix(self) -> np.ndarray:
        """(n, 3) observed colors as D65 Lab, in observation order."""
        if not self.observations:
            return np.zeros((0, 3))
        return np.vstack([obs.lab() for obs in self.observations])


@dataclass(frozen=True)
class ImagePatch:
    """A decoded 8-bit RGB raster plus a pixel region of interest."""

    raster: np.ndarray
    region: tuple[int, int, int, int]  # left, top, width, height

    def __post_init__(self):
        r = np.asarray(self.raster)
        if r.ndim != 3 or r.shape[2] != 3:
            raise DomainError(f"raster must be (height, width, 3), got shape {r.shape}")
        left, top, width, height = self.region
        if width <= 0 or height <= 0:
            raise DomainError(f"patch region {self.region} is empty")
        if left < 0 or top < 0 or left + width > r.shape[1] or top + height > r.shape[0]:
            raise DomainError(f"patch region {self.region} exceeds raster {r.shape[1]}x{r.shape[0]}")


def central_region(width: int, height: int, fraction: float = 0.5) -> tuple[int, int, int, int]:
    """The centered region covering ``fraction`` of each image dimension."""
    if not 0 < fraction <= 1:
        raise DomainError(f"fraction must be in (0, 1], got {fraction}")
    left = int(width * (1 - fraction) / 2)
    top = int(height * (1 - fraction) / 2)
    return (left, top, max(1, width - 2 * left), max(1, height - 2 * top))


def extract_patch_color(patch: ImagePatch, statistic: str = "mean") -> SrgbColor:
    """Per-channel mean over the region, rounded half-up to 8-bit.

    ``statistic="median"`` swaps in the channel-wise median for robustness
    against specks and glare.
    """
    if statistic not in ("mean", "median"):
        raise DomainError(f"unknown statistic {statistic!r}; use 'mean' or 'median'")
    left, top, width, height = patch.region
    window = np.asarray(patch.raster, dtype=float)[top : top + height, left : left + width]
    pixels = window.reshape(-1, 3)
    reduced = pixels.mean(axis=0) if statistic == "mean" else np.median(pixels, axis=0)
    r, g, b = (int(v) for v in np.floor(reduced + 0.5))
    return SrgbColor(r, g, b)


def read_image_patch(path: str | Path, region=None) -> ImagePatch:
    """Decode an image file; region defaults to the central 50 percent."""
    path = Path(path)
    if path.suffix.lower() in (".jpg", ".jpeg"):
        warnings.warn(
            f"{path.name}: JPEG decoding may shift channel values by about 1/255 "
            "between decoders; prefer PNG for reproducible extraction",
            stacklevel=2,
        )
    try:
        with Image.open(path) as img:
            raster = np.asarray(img.convert("RGB"))
    except (OSError, UnidentifiedImageError) as exc:
        raise DataLoadError(f"cannot read image {path}: {exc}") from exc
    if region is None:
        region = central_region(raster.shape[1], raster.shape[0])
    return ImagePatch(raster=raster, region=tuple(region))


def _row_color(row: dict, lineno: int, manifest: Path, image_dir: Path) -> SrgbColor | LabColor:
    has_image = bool(row.get("image_path", "").strip())
    rgb = [row.get(k, "").strip() for k in ("R", "G", "B")]
    lab = [row.get(k, "").strip() for k in ("L", "a", "b")]
    has_rgb = any(rgb)
    has_lab = any(lab)
    if sum([has_image, has_rgb, has_lab]) != 1:
        raise DataLoadError(
            f"{manifest} line {lineno}: exactly one of image_path, R/G/B, or L/a/b must be set"
        )
    if has_image:
        path = image_dir / row["image_path"].strip()
        if not path.exists():
            raise DataLoadError(f"{manifest} line {lineno}: image file {path} does not exist")
        return extract_patch_color(read_image_patch(path))
    if has_rgb:
        if not all(rgb):
            raise DataLoadError(f"{manifest} line {lineno}: R, G and B must all be present")
        try:
            return SrgbColor(*(int(v) for v in rgb))
        except ValueError as exc:
            raise DataLoadError(f"{manifest} line {lineno}: {exc}") from exc
    if not all(lab):
        raise DataLoadError(f"{manifest} line {lineno}: L, a and b must all be present")
    try:
        return LabColor(*(float(v) for v in lab))
    except ValueError as exc:
        raise DataLoadError(f"{manifest} line {lineno}: {exc}") from exc


def load_capture_set(
    manifest: str | Path,
    image_dir: str | Path | None = None,
    label: str | None = None,
    device: str | None = None,
) -> CaptureSet:
    """Load a capture set from a manifest CSV.

    Image rows are resolved relative to ``image_dir`` (default: the
    manifest's directory) and reduced with :func:`extract_patch_color`.
    ``label``/``device`` flags override the manifest's ``#`` metadata.
    """
    manifest = Path(manifest)
    image_dir = Path(image_dir) if image_dir is not None else manifest.parent

    meta = {"label": manifest.stem, "device": "", "time_of_day": ""}
    data_lines: list[str] = []
    offset = 0
    with manifest.open() as fh:
        for raw in fh:
            if raw.startswith("#") and not data_lines:
                key, _, value = raw[1:].strip().partition("=")
                if key in meta:
                    meta[key] = value
                offset += 1
            else:
                data_lines.append(raw)

    reader = csv.DictReader(data_lines)
    if reader.fieldnames is None:
        raise DataLoadError(f"{manifest}: empty capture set")
    if reader.fieldnames != MANIFEST_HEADER:
        raise DataLoadError(f"{manifest}: expected header {MANIFEST_HEADER}, got {reader.fieldnames}")

    observations = []
    seen: dict[str, int] = {}
    for lineno, row in enumerate(reader, start=offset + 2):
        try:
            truth = parse_munsell(row["truth"])
        except (KeyError, ValueError) as exc:
            raise DataLoadError(f"{manifest} line {lineno}: {exc}") from exc
        first = seen.setdefault(str(truth), lineno)
        if first != lineno:
            raise DataLoadError(
                f"{manifest} line {lineno}: duplicate truth code {truth} (first on line {first})"
            )
        observations.append(Observation(truth=truth, color=_row_color(row, lineno, manifest, image_dir)))
    if not observations:
        raise DataLoadError(f"{manifest}: empty capture set")

    return CaptureSet(
        label=label if label is not None else meta["label"],
        device=device if device is not None else meta["device"],
        observations=tuple(observations),
        time_of_day=meta["time_of_day"],
    )


def save_capture_set(capture_set: CaptureSet, dest: str | Path) -> Path:
    """Write a capture set back to manifest form (inline colors only).

    Round-trips exactly: Lab components are written with full precision.
    """
    dest = Path(dest)
    with dest.open("w", newline="") as fh:
        fh.write(f"#label={capture_set.label}\n")
        fh.write(f"#device={capture_set.device}\n")
        fh.write(f"#time_of_day={capture_set.time_of_day}\n")
        writer = csv.writer(fh)
        writer.writerow(MANIFEST_HEADER)
        for obs in capture_set.observations:
            if isinstance(obs.color, SrgbColor):
                writer.writerow([str(obs.truth), "", obs.color.r, obs.color.g, obs.color.b, "", "", ""])
            else:
                writer.writerow(
                    [str(obs.truth), "", "", "", "", repr(obs.color.l), repr(obs.color.a), repr(obs.color.b)]
                )
    return dest


def synthesize_capture_set(
    db: ChipDatabase,
    noise_sigma: float,
    offset: tuple[float, float, float] = (0.0, 0.0, 0.0),
    seed: int = 0,
    label: str | None = None,
    device: str = "synthetic",
) -> CaptureSet:
    """Simulated capture set: chip Lab plus an offset plus Gaussian noise.

    Observations follow canonical chip order and are deterministic for a
    given seed. ``offset`` models a systematic device bias per Lab channel;
    ``noise_sigma`` is the isotropic per-channel standard deviation.
    """
    if noise_sigma < 0:
        raise DomainError(f"noise_sigma must be non-negative, got {noise_sigma}")
    rng = np.random.default_rng(seed)
    labs = db.lab_matrix() + np.asarray(offset, dtype=float)
    if noise_sigma > 0:
        labs = labs + rng.normal(scale=noise_sigma, size=labs.shape)
    observations = tuple(
        Observation(truth=chip.code, color=LabColor(*row))
        for chip, row in zip(db.chips, labs)
    )
    if label is None:
        label = f"synthetic-sigma{noise_sigma:g}-seed{seed}"
    return CaptureSet(label=label, device=device, observations=observations)

"""The four color-difference formulas: CIEDE1976, CIEDE1994, CIEDE2000, CMC.

Argument order matters: the first color is always the reference (the
standard being compared against) and the second is the sample. CIEDE1994
and CMC anchor their chroma/hue weights on the reference, so swapping the
arguments changes the result; CIEDE1976 and CIEDE2000 are symmetric.

All kernels are vectorized over arrays whose trailing axis is (L, a, b)
and broadcast like numpy ufuncs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .colorspace import LabColor
from .errors import DomainError, IlluminantMismatchError

__all__ = [
    "METHOD_KINDS",
    "DeltaEMethod",
    "DifferenceResult",
    "cie76",
    "cie94",
    "ciede2000",
    "cmc",
    "delta_e_1976",
    "delta_e_1994",
    "delta_e_2000",
    "delta_e_cmc",
]

METHOD_KINDS = ("de1976", "de1994", "de2000", "cmc")

_POW7_25 = 25.0**7


def _split(values) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    arr = np.asarray(values, dtype=float)
    if arr.shape[-1:] != (3,):
        raise DomainError(f"expected Lab triples on the trailing axis, got shape {arr.shape}")
    return arr[..., 0], arr[..., 1], arr[..., 2]


def cie76(reference, sample) -> np.ndarray:
    """Euclidean distance in Lab space."""
    l1, a1, b1 = _split(reference)
    l2, a2, b2 = _split(sample)
    return np.sqrt((l1 - l2) ** 2 + (a1 - a2) ** 2 + (b1 - b2) ** 2)


def cie94(reference, sample, kl: float = 1.0, k1: float = 0.045, k2: float = 0.015) -> np.ndarray:
    """CIE94 difference with reference-anchored SC/SH weights.

    Defaults are the graphic-arts application constants.
    """
    l1, a1, b1 = _split(reference)
    l2, a2, b2 = _split(sample)
    c1 = np.hypot(a1, b1)
    c2 = np.hypot(a2, b2)
    dl = l1 - l2
    dc = c1 - c2
    dh2 = np.maximum((a1 - a2) ** 2 + (b1 - b2) ** 2 - dc**2, 0.0)
    sc = 1.0 + k1 * c1
    sh = 1.0 + k2 * c1
    return np.sqrt((dl / kl) ** 2 + (dc / sc) ** 2 + dh2 / sh**2)


def ciede2000(reference, sample, kl: float = 1.0, kc: float = 1.0, kh: float = 1.0) -> np.ndarray:
    """CIEDE2000 difference.

    Implements the full formula: the a-axis rescaling G, mean-hue handling
    across the 0/360 seam, the SL/SC/SH compensation terms, and the RT
    rotation that corrects hue angles near 275 degrees.
    """
    l1, a1, b1 = _split(reference)
    l2, a2, b2 = _split(sample)

    cbar = (np.hypot(a1, b1) + np.hypot(a2, b2)) / 2.0
    g = 0.5 * (1.0 - np.sqrt(cbar**7 / (cbar**7 + _POW7_25)))
    a1p = (1.0 + g) * a1
    a2p = (1.0 + g) * a2
    c1p = np.hypot(a1p, b1)
    c2p = np.hypot(a2p, b2)
    h1p = np.where(c1p == 0.0, 0.0, np.degrees(np.arctan2(b1, a1p)) % 360.0)
    h2p = np.where(c2p == 0.0, 0.0, np.degrees(np.arctan2(b2, a2p)) % 360.0)

    dlp = l2 - l1
    dcp = c2p - c1p
    hdiff = h2p - h1p
    either_gray = c1p * c2p == 0.0
    dhp = np.where(
        np.abs(hdiff) <= 180.0, hdiff, np.where(hdiff > 180.0, hdiff - 360.0, hdiff + 360.0)
    )
    dhp = np.where(either_gray, 0.0, dhp)
    dbig_hp = 2.0 * np.sqrt(c1p * c2p) * np.sin(np.radians(dhp) / 2.0)

    lbar = (l1 + l2) / 2.0
    cbarp = (c1p + c2p) / 2.0
    hsum = h1p + h2p
    hbar = np.where(
        np.abs(h1p - h2p) <= 180.0,
        hsum / 2.0,
        np.where(hsum < 360.0, (hsum + 360.0) / 2.0, (hsum - 360.0) / 2.0),
    )
    hbar = np.where(either_gray, hsum, hbar)

    t = (
        1.0
        - 0.17 * np.cos(np.radians(hbar - 30.0))
        + 0.24 * np.cos(np.radians(2.0 * hbar))
        + 0.32 * np.cos(np.radians(3.0 * hbar + 6.0))
        - 0.20 * np.cos(np.radians(4.0 * hbar - 63.0))
    )
    dtheta = 30.0 * np.exp(-(((hbar - 275.0) / 25.0) ** 2))
    rc = 2.0 * np.sqrt(cbarp**7 / (cbarp**7 + _POW7_25))
    sl = 1.0 + 0.015 * (lbar - 50.0) ** 2 / np.sqrt(20.0 + (lbar - 50.0) ** 2)
    sc = 1.0 + 0.045 * cbarp
    sh = 1.0 + 0.015 * cbarp * t
    rt = -np.sin(np.radians(2.0 * dtheta)) * rc

    tl = dlp / (kl * sl)
    tc = dcp / (kc * sc)
    th = dbig_hp / (kh * sh)
    return np.sqrt(tl**2 + tc**2 + th**2 + rt * tc * th)


def cmc(reference, sample, lightness: float = 2.0, chroma: float = 1.0) -> np.ndarray:
    """CMC(l:c) quasimetric anchored on the reference color.

    The default 2:1 ratio is the acceptability setting.
    """
    if lightness <= 0 or chroma <= 0:
        raise DomainError("CMC l and c ratio parameters must be positive")
    l1, a1, b1 = _split(reference)
    l2, a2, b2 = _split(sample)
    c1 = np.hypot(a1, b1)
    c2 = np.hypot(a2, b2)
    dl = l1 - l2
    dc = c1 - c2
    dh2 = np.maximum((a1 - a2) ** 2 + (b1 - b2) ** 2 - dc**2, 0.0)

    sl = np.where(l1 < 16.0, 0.511, 0.040975 * l1 / (1.0 + 0.01765 * l1))
    sc = 0.0638 * c1 / (1.0 + 0.0131 * c1) + 0.638
    h1 = np.degrees(np.arctan2(b1, a1)) % 360.0
    t = np.where(
        (h1 >= 164.0) & (h1 <= 345.0),
        0.56 + np.abs(0.2 * np.cos(np.radians(h1 + 168.0))),
        0.36 + np.abs(0.4 * np.cos(np.radians(h1 + 35.0))),
    )
    f = np.sqrt(c1**4 / (c1**4 + 1900.0))
    sh = sc * (f * t + 1.0 - f)
    return np.sqrt((dl / (lightness * sl)) ** 2 + (dc / (chroma * sc)) ** 2 + dh2 / sh**2)


@dataclass(frozen=True)
class DeltaEMethod:
    """A color-difference formula plus its weighting parameters.

    ``kl``/``kc``/``kh`` weight CIEDE2000 (``kl`` also CIE94); ``k1``/``k2``
    are the CIE94 application constants; ``lightness``/``chroma`` is the CMC
    l:c ratio.
    """

    kind: str = "de2000"
    kl: float = 1.0
    kc: float = 1.0
    kh: float = 1.0
    k1: float = 0.045
    k2: float = 0.015
    lightness: float = 2.0
    chroma: float = 1.0

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise DomainError(f"unknown method {self.kind!r}; expected one of {METHOD_KINDS}")
        for name in ("kl", "kc", "kh", "k1", "k2", "lightness", "chroma"):
            if getattr(self, name) <= 0:
                raise DomainError(f"method parameter {name} must be strictly positive")

    @classmethod
    def from_name(cls, name: str, **overrides) -> "DeltaEMethod":
        """Build a method from a CLI-style name like ``de2000`` or ``CIE1976``."""
        key = name.strip().lower()
        for prefix in ("ciede", "cie", "de"):
            if key.startswith(prefix):
                key = key[len(prefix) :]
                break
        kind = "cmc" if key == "cmc" else "de" + key
        return cls(kind=kind, **overrides)

    def with_params(self, **overrides) -> "DeltaEMethod":
        return replace(self, **overrides)

    def compute(self, reference, sample) -> np.ndarray:
        """Vectorized difference between reference and sample Lab arrays."""
        if self.kind == "de1976":
            return cie76(reference, sample)
        if self.kind == "de1994":
            return cie94(reference, sample, kl=self.kl, k1=self.k1, k2=self.k2)
        if self.kind == "de2000":
            return ciede2000(reference, sample, kl=self.kl, kc=self.kc, kh=self.kh)
        return cmc(reference, sample, lightness=self.lightness, chroma=self.chroma)


@dataclass(frozen=True)
class DifferenceResult:
    """A single scalar difference with its context."""

    value: float
    method: DeltaEMethod
    reference: LabColor
    sample: LabColor

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value >= 0):
            raise DomainError(f"delta E must be finite and non-negative, got {self.value}")


def _pair(reference: LabColor, sample: LabColor) -> tuple[tuple, tuple]:
    if reference.illuminant.white_point != sample.illuminant.white_point:
        raise IlluminantMismatchError(
            f"cannot compare colors under {reference.illuminant.name} and "
            f"{sample.illuminant.name}; adapt one of them first"
        )
    return (reference.l, reference.a, reference.b), (sample.l, sample.a, sample.b)


def delta_e_1976(reference: LabColor, sample: LabColor) -> DifferenceResult:
    """Euclidean Lab distance (symmetric)."""
    ref, sam = _pair(reference, sample)
    method = DeltaEMethod(kind="de1976")
    return DifferenceResult(float(cie76(ref, sam)), method, reference, sample)


def delta_e_1994(
    reference: LabColor, sample: LabColor, method: DeltaEMethod | None = None
) -> DifferenceResult:
    """CIE94 difference; asymmetric because weights come from the reference."""
    ref, sam = _pair(reference, sample)
    method = method or DeltaEMethod(kind="de1994")
    value = float(cie94(ref, sam, kl=method.kl, k1=method.k1, k2=method.k2))
    return DifferenceResult(value, method, reference, sample)


def delta_e_2000(
    reference: LabColor, sample: LabColor, method: DeltaEMethod | None = None
) -> DifferenceResult:
    """CIEDE2000 difference with kl = kc = kh = 1 defaults."""
    ref, sam = _pair(reference, sample)
    method = method or DeltaEMethod(kind="de2000")
    value = float(ciede2000(ref, sam, kl=method.kl, kc=method.kc, kh=method.kh))
    return DifferenceResult(value, method, reference, sample)


def delta_e_cmc(
    reference: LabColor, sample: LabColor, lightness: float = 2.0, chroma: float = 1.0
) -> DifferenceResult:
    """CMC(l:c) difference; asymmetric, default acceptability ratio 2:1."""
    ref, sam = _pair(reference, sample)
    method = DeltaEMethod(kind="cmc", lightness=lightness, chroma=chroma)
    value = float(cmc(ref, sam, lightness=lightness, chroma=chroma))
    return DifferenceResult(value, method, reference, sample)

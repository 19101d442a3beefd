"""Color types and conversions: sRGB, linear RGB, CIEXYZ, CIELab, CIELCh, CMYK.

All math is done in double precision on arrays whose trailing axis holds the
color channels; 8-bit quantization happens only at the typed boundaries.
Conversions assume the IEC 61966-2-1 sRGB encoding with a D65 white and the
CIE 1931 2-degree observer. Chromatic adaptation uses the Bradford transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .illuminants import D65, Illuminant

__all__ = [
    "SrgbColor",
    "XyzColor",
    "LabColor",
    "LchColor",
    "CmykColor",
    "srgb_to_linear",
    "linear_to_srgb",
    "linear_to_xyz",
    "xyz_to_linear",
    "xyz_to_lab",
    "lab_to_xyz",
    "lab_to_lch",
    "lch_to_lab",
    "srgb_to_cmyk",
    "adapt_white_point",
    "adaptation_matrix",
    "srgb_to_lab",
    "lab_to_srgb",
]

# sRGB primaries and D65 white (xy chromaticities, 2-degree observer).
_PRIMARIES = ((0.64, 0.33), (0.30, 0.60), (0.15, 0.06))
_WHITE_XY = (0.3127, 0.3290)


def _rgb_to_xyz_matrix() -> np.ndarray:
    r, g, b = _PRIMARIES
    m = np.array(
        [
            [r[0], g[0], b[0]],
            [r[1], g[1], b[1]],
            [1 - r[0] - r[1], 1 - g[0] - g[1], 1 - b[0] - b[1]],
        ]
    )
    w = np.array([_WHITE_XY[0], _WHITE_XY[1], 1 - _WHITE_XY[0] - _WHITE_XY[1]])
    w = w / _WHITE_XY[1]
    return m * np.linalg.solve(m, w)


_M_RGB_TO_XYZ = _rgb_to_xyz_matrix()
_M_XYZ_TO_RGB = np.linalg.inv(_M_RGB_TO_XYZ)

# Bradford sharpened cone response matrix.
_BRADFORD = np.array(
    [
        [0.8951, 0.2664, -0.1614],
        [-0.7502, 1.7135, 0.0367],
        [0.0389, -0.0685, 1.0296],
    ]
)
_BRADFORD_INV = np.linalg.inv(_BRADFORD)

# CIELab segment boundary: delta = 6/29.
_LAB_DELTA = 6.0 / 29.0
_LAB_DELTA3 = _LAB_DELTA**3


def _channels(values, n: int = 3) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape[-1:] != (n,):
        raise DomainError(f"expected trailing axis of size {n}, got shape {arr.shape}")
    return arr


def _check_finite(name: str, *components: float) -> None:
    if not all(math.isfinite(v) for v in components):
        raise DomainError(f"{name} components must be finite, got {components}")


def _coerce_floats(obj, *names: str) -> None:
    for name in names:
        object.__setattr__(obj, name, float(getattr(obj, name)))


# ---------------------------------------------------------------------------
# Typed single colors


@dataclass(frozen=True)
class SrgbColor:
    """An 8-bit encoded sRGB color."""

    r: int
    g: int
    b: int

    def __post_init__(self):
        for name, v in (("r", self.r), ("g", self.g), ("b", self.b)):
            if not isinstance(v, (int, np.integer)) or not 0 <= v <= 255:
                raise DomainError(f"sRGB channel {name} must be an integer in [0, 255], got {v!r}")

    @property
    def normalized(self) -> tuple[float, float, float]:
        """Channels scaled to [0, 1], exactly channel/255."""
        return (self.r / 255.0, self.g / 255.0, self.b / 255.0)

    def to_linear(self) -> tuple[float, float, float]:
        return tuple(srgb_to_linear(self.normalized))

    def to_xyz(self, illuminant: Illuminant = D65) -> "XyzColor":
        xyz = linear_to_xyz(srgb_to_linear(self.normalized), illuminant)
        return XyzColor(*xyz, illuminant=illuminant)

    def to_lab(self, illuminant: Illuminant = D65) -> "LabColor":
        return self.to_xyz(illuminant).to_lab()

    def to_cmyk(self) -> "CmykColor":
        return CmykColor(*srgb_to_cmyk(self.normalized))


@dataclass(frozen=True)
class XyzColor:
    """CIEXYZ tristimulus values scaled so the reference white has y = 1.0."""

    x: float
    y: float
    z: float
    illuminant: Illuminant = D65

    def __post_init__(self):
        _check_finite("XYZ", self.x, self.y, self.z)
        _coerce_floats(self, "x", "y", "z")
        if self.y < 0:
            raise DomainError(f"XYZ y component must be non-negative, got {self.y}")

    def to_lab(self) -> "LabColor":
        lab = xyz_to_lab((self.x, self.y, self.z), self.illuminant)
        return LabColor(*lab, illuminant=self.illuminant)

    def adapt(self, target: Illuminant) -> "XyzColor":
        xyz = adapt_white_point((self.x, self.y, self.z), self.illuminant, target)
        return XyzColor(*xyz, illuminant=target)

    def to_srgb(self) -> tuple[SrgbColor, bool]:
        xyz = self if self.illuminant is D65 else self.adapt(D65)
        encoded, clipped = linear_to_srgb(xyz_to_linear((xyz.x, xyz.y, xyz.z)))
        r, g, b = _quantize_8bit(encoded)
        return SrgbColor(int(r), int(g), int(b)), bool(clipped.any())


@dataclass(frozen=True)
class LabColor:
    """CIE L*a*b* coordinates under a tagged illuminant."""

    l: float
    a: float
    b: float
    illuminant: Illuminant = D65

    def __post_init__(self):
        _check_finite("Lab", self.l, self.a, self.b)
        _coerce_floats(self, "l", "a", "b")

    def to_lch(self) -> "LchColor":
        return LchColor(*lab_to_lch((self.l, self.a, self.b)))

    def to_xyz(self) -> XyzColor:
        xyz = lab_to_xyz((self.l, self.a, self.b), self.illuminant)
        return XyzColor(*xyz, illuminant=self.illuminant)

    def to_srgb(self) -> tuple[SrgbColor, bool]:
        return self.to_xyz().to_srgb()


@dataclass(frozen=True)
class LchColor:
    """Cylindrical CIELCh form of CIELab; hue angle in degrees [0, 360)."""

    l: float
    c: float
    h: float

    def __post_init__(self):
        _check_finite("LCh", self.l, self.c, self.h)
        _coerce_floats(self, "l", "c")
        if self.c < 0:
            raise DomainError(f"chroma must be non-negative, got {self.c}")
        object.__setattr__(self, "h", float(self.h % 360.0))

    def to_lab(self, illuminant: Illuminant = D65) -> LabColor:
        return LabColor(*lch_to_lab((self.l, self.c, self.h)), illuminant=illuminant)


@dataclass(frozen=True)
class CmykColor:
    """CMYK components in [0, 1]; exports report them as percentages."""

    c: float
    m: float
    y: float
    k: float

    def __post_init__(self):
        for name, v in (("c", self.c), ("m", self.m), ("y", self.y), ("k", self.k)):
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise DomainError(f"CMYK component {name} must be in [0, 1], got {v!r}")
        _coerce_floats(self, "c", "m", "y", "k")


# ---------------------------------------------------------------------------
# Array conversions (trailing axis = channels)


def srgb_to_linear(values) -> np.ndarray:
    """Decode sRGB-encoded values in [0, 1] to linear RGB (piecewise EOTF)."""
    v = _channels(values)
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def linear_to_srgb(values) -> tuple[np.ndarray, np.ndarray]:
    """Encode linear RGB to sRGB in [0, 1], clamping out-of-gamut channels.

    Returns (encoded, clipped) where clipped marks colors whose channels
    were truncated into [0, 1] by more than rounding noise.
    """
    v = _channels(values)
    clipped = np.any((v < -1e-9) | (v > 1 + 1e-9), axis=-1)
    v = np.clip(v, 0.0, 1.0)
    encoded = np.where(v <= 0.0031308, v * 12.92, 1.055 * v ** (1 / 2.4) - 0.055)
    return encoded, clipped


def linear_to_xyz(values, illuminant: Illuminant = D65) -> np.ndarray:
    """Linear RGB in [0, 1] to XYZ under the given illuminant."""
    rgb = _channels(values)
    xyz = rgb @ _M_RGB_TO_XYZ.T
    if illuminant is not D65 and illuminant.white_point != D65.white_point:
        xyz = adapt_white_point(xyz, D65, illuminant)
    return xyz


def xyz_to_linear(values, illuminant: Illuminant = D65) -> np.ndarray:
    """XYZ to linear RGB; out-of-gamut colors yield channels outside [0, 1]."""
    xyz = _channels(values)
    if illuminant is not D65 and illuminant.white_point != D65.white_point:
        xyz = adapt_white_point(xyz, illuminant, D65)
    return xyz @ _M_XYZ_TO_RGB.T


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _LAB_DELTA3, np.cbrt(t), t / (3 * _LAB_DELTA**2) + 4.0 / 29.0)


def _lab_f_inv(u: np.ndarray) -> np.ndarray:
    return np.where(u > _LAB_DELTA, u**3, 3 * _LAB_DELTA**2 * (u - 4.0 / 29.0))


def xyz_to_lab(values, illuminant: Illuminant = D65) -> np.ndarray:
    """XYZ to CIE L*a*b* relative to the illuminant white point."""
    xyz = _channels(values)
    if np.any(xyz < -1e-12):
        raise DomainError("negative tristimulus values cannot be converted to Lab")
    xyz = np.maximum(xyz, 0.0)
    f = _lab_f(xyz / np.asarray(illuminant.white_point))
    l = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([l, a, b], axis=-1)


def lab_to_xyz(values, illuminant: Illuminant = D65) -> np.ndarray:
    """Inverse of :func:`xyz_to_lab`."""
    lab = _channels(values)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    return _lab_f_inv(f) * np.asarray(illuminant.white_point)


def lab_to_lch(values) -> np.ndarray:
    """Lab to cylindrical LCh; neutral colors (a = b = 0) get hue 0."""
    lab = _channels(values)
    c = np.hypot(lab[..., 1], lab[..., 2])
    # explicit zero at c == 0: atan2 on signed zeros would yield 180
    h = np.where(c == 0.0, 0.0, np.degrees(np.arctan2(lab[..., 2], lab[..., 1])) % 360.0)
    return np.stack([lab[..., 0], c, h], axis=-1)


def lch_to_lab(values) -> np.ndarray:
    """Cylindrical LCh back to Lab."""
    lch = _channels(values)
    hr = np.radians(lch[..., 2])
    return np.stack(
        [lch[..., 0], lch[..., 1] * np.cos(hr), lch[..., 1] * np.sin(hr)], axis=-1
    )


def srgb_to_cmyk(values) -> np.ndarray:
    """Naive CMYK from normalized sRGB; pure black maps to (0, 0, 0, 1)."""
    rgb = _channels(values)
    k = 1.0 - rgb.max(axis=-1)
    denom = np.where(k < 1.0, 1.0 - k, 1.0)
    cmy = (1.0 - rgb - k[..., None]) / denom[..., None]
    cmy = np.where(k[..., None] < 1.0, cmy, 0.0)
    return np.concatenate([cmy, k[..., None]], axis=-1)


def adaptation_matrix(source: Illuminant, target: Illuminant) -> np.ndarray:
    """Bradford (linear von Kries) matrix mapping XYZ between white points."""
    src = _BRADFORD @ np.asarray(source.white_point)
    dst = _BRADFORD @ np.asarray(target.white_point)
    return _BRADFORD_INV @ np.diag(dst / src) @ _BRADFORD


def adapt_white_point(values, source: Illuminant, target: Illuminant) -> np.ndarray:
    """Chromatically adapt XYZ from one illuminant to another."""
    xyz = _channels(values)
    if source is target or source.white_point == target.white_point:
        return np.array(xyz, copy=True)
    return xyz @ adaptation_matrix(source, target).T


# ---------------------------------------------------------------------------
# Convenience chains


def _quantize_8bit(values01: np.ndarray) -> np.ndarray:
    # round half up, deterministic across platforms
    return np.floor(np.clip(values01, 0.0, 1.0) * 255.0 + 0.5).astype(np.int64)


def srgb_to_lab(values, illuminant: Illuminant = D65) -> np.ndarray:
    """Encoded sRGB values in [0, 1] straight to Lab under the illuminant."""
    return xyz_to_lab(linear_to_xyz(srgb_to_linear(values), illuminant), illuminant)


def lab_to_srgb(values, illuminant: Illuminant = D65) -> tuple[np.ndarray, np.ndarray]:
    """Lab to 8-bit sRGB. Returns (rgb, clipped) with gamut-clamp flags."""
    encoded, clipped = linear_to_srgb(xyz_to_linear(lab_to_xyz(values, illuminant), illuminant))
    return _quantize_8bit(encoded), clipped

"""Standard illuminant white points (CIE 1931 2-degree observer).

White points are derived from xy chromaticity coordinates and normalized
so that the Y component is exactly 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Illuminant:
    """A reference white: name plus XYZ white point with y = 1.0."""

    name: str
    white_point: tuple[float, float, float]

    def __post_init__(self):
        if self.white_point[1] != 1.0:
            raise DomainError(
                f"white point of {self.name} must have y = 1.0, got {self.white_point[1]!r}"
            )


def _from_xy(name: str, x: float, y: float) -> Illuminant:
    return Illuminant(name, (x / y, 1.0, (1.0 - x - y) / y))


D65 = _from_xy("D65", 0.31270, 0.32900)
C = _from_xy("C", 0.31006, 0.31616)
D50 = _from_xy("D50", 0.34570, 0.35850)

_REGISTRY = {ill.name: ill for ill in (D65, C, D50)}


def get_illuminant(name: str) -> Illuminant:
    """Look up a supported illuminant by name (case-insensitive)."""
    try:
        return _REGISTRY[name.upper()]
    except KeyError:
        raise DomainError(
            f"unsupported illuminant {name!r}; supported: {sorted(_REGISTRY)}"
        ) from None

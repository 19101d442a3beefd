"""Munsell notation: parsing, formatting, and hue-circle arithmetic.

Chart chips are identified by hue step + family, value, and chroma, e.g.
``5YR 5/6``. Neutral (gley) codes like ``N 5/`` are not part of the chart
subset handled here and do not parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import MunsellParseError

__all__ = [
    "HUE_FAMILIES",
    "HUE_STEPS",
    "CHART_VALUES",
    "CHART_CHROMAS",
    "MunsellCode",
    "parse_munsell",
    "format_munsell",
    "parse_hue",
    "hue_degrees",
]

HUE_FAMILIES = ("R", "YR", "Y", "GY", "G", "BG", "B", "PB", "P", "RP")
HUE_STEPS = (2.5, 5.0, 7.5, 10.0)
CHART_VALUES = (2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0)
CHART_CHROMAS = (1, 2, 3, 4, 6, 8)

_CODE_RE = re.compile(
    r"^\s*(?P<step>\d+(?:\.\d+)?)\s*(?P<family>[A-Za-z]{1,2})"
    r"[\s-]+(?P<value>\d+(?:\.\d+)?)\s*[/-]\s*(?P<chroma>\d+(?:\.\d+)?)\s*$"
)
_HUE_RE = re.compile(r"^\s*(?P<step>\d+(?:\.\d+)?)\s*(?P<family>[A-Za-z]{1,2})\s*$")


def _fmt_level(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class MunsellCode:
    """One chart chip identity: hue step, hue family, value, chroma."""

    hue_step: float
    hue_family: str
    value: float
    chroma: int

    def __post_init__(self):
        if self.hue_family not in HUE_FAMILIES:
            raise MunsellParseError(f"unknown hue family {self.hue_family!r}")
        if float(self.hue_step) not in HUE_STEPS:
            raise MunsellParseError(
                f"invalid hue step {_fmt_level(self.hue_step)!r}; chart steps are {HUE_STEPS}"
            )
        if float(self.value) not in CHART_VALUES:
            raise MunsellParseError(
                f"invalid value {_fmt_level(self.value)!r}; chart values are {CHART_VALUES}"
            )
        if self.chroma not in CHART_CHROMAS:
            raise MunsellParseError(
                f"invalid chroma {self.chroma!r}; chart chromas are {CHART_CHROMAS}"
            )
        object.__setattr__(self, "hue_step", float(self.hue_step))
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "chroma", int(self.chroma))

    @property
    def hue(self) -> str:
        """The hue page designation, e.g. ``2.5YR``."""
        return f"{_fmt_level(self.hue_step)}{self.hue_family}"

    def __str__(self) -> str:
        return f"{self.hue} {_fmt_level(self.value)}/{_fmt_level(self.chroma)}"

    @property
    def sort_key(self) -> tuple[float, float, int]:
        """Canonical chart ordering: hue circle position, value, chroma."""
        return (hue_degrees(self), self.value, self.chroma)


def parse_munsell(text: str) -> MunsellCode:
    """Parse notations like ``5YR 5/6``, ``2.5YR-8-1`` or ``10R 4/8``."""
    m = _CODE_RE.match(text)
    if not m:
        raise MunsellParseError(f"cannot parse Munsell code {text!r}")
    step = float(m.group("step"))
    family = m.group("family").upper()
    value = float(m.group("value"))
    chroma_raw = float(m.group("chroma"))
    if chroma_raw != int(chroma_raw):
        raise MunsellParseError(f"invalid chroma {m.group('chroma')!r} in {text!r}")
    return MunsellCode(step, family, value, int(chroma_raw))


def format_munsell(code: MunsellCode) -> str:
    """Canonical ``5YR 5/6`` form; inverse of :func:`parse_munsell`."""
    return str(code)


def parse_hue(text: str) -> str:
    """Canonicalize a hue page designation like ``2.5yr`` to ``2.5YR``."""
    m = _HUE_RE.match(text)
    if not m:
        raise MunsellParseError(f"cannot parse hue designation {text!r}")
    step = float(m.group("step"))
    family = m.group("family").upper()
    if family not in HUE_FAMILIES:
        raise MunsellParseError(f"unknown hue family {m.group('family')!r}")
    if step not in HUE_STEPS:
        raise MunsellParseError(f"invalid hue step {_fmt_level(step)!r}; chart steps are {HUE_STEPS}")
    return f"{_fmt_level(step)}{family}"


def hue_degrees(code: MunsellCode | str) -> float:
    """Position on the 100-step Munsell hue circle (R family starts at 0)."""
    if isinstance(code, MunsellCode):
        step, family = code.hue_step, code.hue_family
    else:
        hue = parse_hue(code)
        m = _HUE_RE.match(hue)
        step, family = float(m.group("step")), m.group("family")
    return (HUE_FAMILIES.index(family) * 10.0 + step) % 100.0

#!/usr/bin/env python3
"""Regenerate the bundled soil-chart chip colorimetry file.

Writes one row of xyY chromaticity (illuminant C, 2-degree observer) per
chip in the canonical seven-page soil chart layout. Chip colors come from
an analytic model of the Munsell system's geometry in CIELab:

  * luminance from the standard Munsell value polynomial
    Y% = 1.1914 V - 0.22533 V^2 + 0.23352 V^3 - 0.020484 V^4 + 0.00081939 V^5
  * hue angle mapped linearly around the 100-step hue circle,
    anchored at 5R -> 25 degrees (3.6 degrees of Lab hue per Munsell step)
  * CIELab chroma at 5.5 units per Munsell chroma step

The model is an approximation standing in for measured chart colorimetry;
files with the same schema built from measured data drop straight in.

Usage: python tools/make_chip_data.py [dest.csv]
"""

import csv
import sys
from pathlib import Path

import numpy as np

PAGES = ["10R", "2.5YR", "5YR", "7.5YR", "10YR", "2.5Y", "5Y"]

# (value, chromas) rows of one chart page; darker rows carry fewer chromas.
PAGE_LAYOUT = [
    (2.5, [1]),
    (3, [1, 2, 3, 4]),
    (4, [1, 2, 3, 4, 6]),
    (5, [1, 2, 3, 4, 6, 8]),
    (6, [1, 2, 3, 4, 6, 8]),
    (7, [1, 2, 3, 4, 6, 8]),
    (8, [1, 2, 3, 4, 6, 8]),
]

HUE_FAMILIES = ["R", "YR", "Y", "GY", "G", "BG", "B", "PB", "P", "RP"]

# Illuminant C white point from xy (0.31006, 0.31616), y normalized to 1.
WHITE_C = np.array([0.31006 / 0.31616, 1.0, (1 - 0.31006 - 0.31616) / 0.31616])

CHROMA_SCALE = 5.5
HUE_ANCHOR_DEG = 25.0  # Lab hue angle of Munsell 5R
DEG_PER_STEP = 3.6


def munsell_value_to_luminance(v: float) -> float:
    """Luminance factor in [0, 1] for a Munsell value (white V=10 -> 1.0)."""
    y = 1.1914 * v - 0.22533 * v**2 + 0.23352 * v**3 - 0.020484 * v**4 + 0.00081939 * v**5
    return y / 100.0


def hue_circle_position(hue: str) -> float:
    for fam in sorted(HUE_FAMILIES, key=len, reverse=True):
        if hue.endswith(fam):
            return (HUE_FAMILIES.index(fam) * 10.0 + float(hue[: -len(fam)])) % 100.0
    raise ValueError(hue)


def lab_to_xyy(l: float, a: float, b: float) -> tuple[float, float, float]:
    fy = (l + 16.0) / 116.0
    f = np.array([fy + a / 500.0, fy, fy - b / 200.0])
    delta = 6.0 / 29.0
    t = np.where(f > delta, f**3, 3 * delta**2 * (f - 4.0 / 29.0))
    xyz = t * WHITE_C
    total = xyz.sum()
    return xyz[0] / total, xyz[1] / total, xyz[1]


def chip_rows():
    for page in PAGES:
        h_ab = HUE_ANCHOR_DEG + DEG_PER_STEP * (hue_circle_position(page) - 5.0)
        for value, chromas in PAGE_LAYOUT:
            l_star = 116.0 * np.cbrt(munsell_value_to_luminance(value)) - 16.0
            for chroma in chromas:
                c_ab = CHROMA_SCALE * chroma
                a = c_ab * np.cos(np.radians(h_ab))
                b = c_ab * np.sin(np.radians(h_ab))
                x, y, big_y = lab_to_xyy(l_star, a, b)
                yield page, value, chroma, x, y, big_y


def main() -> int:
    dest = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "src/soilcolor/data/mscc_chips_xyy_c.csv"
    )
    rows = list(chip_rows())
    with dest.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["hue", "value", "chroma", "x", "y", "Y"])
        for page, value, chroma, x, y, big_y in rows:
            w.writerow([page, f"{value:g}", chroma, f"{x:.10f}", f"{y:.10f}", f"{big_y:.10f}"])
    print(f"wrote {len(rows)} chips to {dest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

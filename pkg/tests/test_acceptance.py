"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary adds
one PASS/FAIL line per criterion.
"""

import csv
import hashlib
import time
from pathlib import Path

import numpy as np

from soilcolor import match
from soilcolor.analysis import (
    centerline_stats,
    clumping_index,
    device_offsets,
    evaluate,
    heatmap,
    scatter_export,
)
from soilcolor.capture import synthesize_capture_set
from soilcolor.cli import main
from soilcolor.colorspace import lab_to_srgb, srgb_to_lab, xyz_to_lab
from soilcolor.difference import ciede2000
from soilcolor.illuminants import D65

DATA = Path(__file__).parent / "data"
METHODS = ("de1976", "de1994", "de2000", "cmc")


def test_c1_ciede2000_reference_pairs():
    """All 34 published reference pairs within 1e-4, in under a second."""
    with (DATA / "ciede2000_pairs.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 34
    started = time.perf_counter()
    for row in rows:
        got = float(
            ciede2000(
                (float(row["l1"]), float(row["a1"]), float(row["b1"])),
                (float(row["l2"]), float(row["a2"]), float(row["b2"])),
            )
        )
        assert abs(got - float(row["de2000"])) < 1e-4
    assert time.perf_counter() - started < 1.0


def test_c2_conversion_round_trip():
    """16x16x16 sRGB lattice round trips within 1 per channel; white is exact."""
    lattice = np.stack(
        np.meshgrid(*([np.arange(0, 256, 17)] * 3), indexing="ij"), axis=-1
    ).reshape(-1, 3)
    assert len(lattice) == 16**3
    rgb, _ = lab_to_srgb(srgb_to_lab(lattice / 255.0))
    assert np.abs(rgb - lattice).max() <= 1

    white = xyz_to_lab(np.array(D65.white_point))
    assert np.abs(white - np.array([100.0, 0.0, 0.0])).max() < 1e-9


def test_c3_self_match_all_methods(bundled_db):
    """Every bundled chip ranks itself first with zero difference, < 5 s."""
    assert len(bundled_db) >= 238
    started = time.perf_counter()
    for method in METHODS:
        for chip in bundled_db:
            result = match(chip.lab, bundled_db, method, k=1)
            assert result.best == chip.code, (method, str(chip.code))
            assert result.ranked[0][1] == 0.0
    assert time.perf_counter() - started < 5.0


def test_c4_zero_noise_evaluation(bundled_db):
    """A noiseless synthetic capture set scores 100.00 on both metrics."""
    cs = synthesize_capture_set(bundled_db, 0.0, seed=0)
    report = evaluate([cs], bundled_db, methods=METHODS)
    for method in METHODS:
        assert report.hue_accuracy[(method, cs.label)] == 100.0
        assert report.hvc_accuracy[(method, cs.label)] == 100.0


def test_c5_centerline_geometry(bundled_db):
    """2.5YR/5YR centerline mean strictly below the off-diagonal mean."""
    grid = heatmap(bundled_db, "2.5YR", "5YR", "de2000")
    stats = centerline_stats(grid)
    col_of = {(c.code.value, c.code.chroma): j for j, c in enumerate(grid.col_chips)}
    off_diagonal = np.ones_like(grid.values, dtype=bool)
    for i, chip in enumerate(grid.row_chips):
        off_diagonal[i, col_of[(chip.code.value, chip.code.chroma)]] = False
    assert stats.mean < grid.values[off_diagonal].mean()


def test_c6_frozen_synthetic_fixture_and_monotonicity(bundled_db, tmp_path):
    """sigma=2/seed=42 report matches the committed bytes; accuracy does not
    improve when the noise grows from sigma=1 to sigma=4 (20 seeds)."""
    assert main(["eval", "--synthetic", "2", "--seed", "42", "--out", str(tmp_path)]) == 0
    for name in ("accuracy_hue.csv", "accuracy_hvc.csv"):
        expected = (DATA / "expected_eval_sigma2_seed42" / name).read_bytes()
        assert (tmp_path / name).read_bytes() == expected, name

    seeds = range(20)
    mean_hue = {}
    for sigma in (1.0, 4.0):
        totals = {m: 0.0 for m in METHODS}
        for seed in seeds:
            cs = synthesize_capture_set(bundled_db, sigma, seed=seed)
            report = evaluate([cs], bundled_db, methods=METHODS)
            for m in METHODS:
                totals[m] += report.hue_accuracy[(m, cs.label)]
        mean_hue[sigma] = {m: totals[m] / len(list(seeds)) for m in METHODS}
    for m in METHODS:
        assert mean_hue[1.0][m] >= mean_hue[4.0][m], m


def test_c7_device_offset_reproduction(bundled_db):
    """A synthetic +7.4 L* device reports a 7.400 offset; self-compare is 0."""
    shifted = synthesize_capture_set(
        bundled_db, 0.0, offset=(7.4, 0.0, 0.0), seed=0, device="bright-phone"
    )
    report = device_offsets([shifted], bundled_db)
    assert abs(report.mean[("bright-phone", "L")] - 7.4) < 1e-6
    assert abs(report.mean[("bright-phone", "a")]) < 1e-6
    assert abs(report.mean[("bright-phone", "b")]) < 1e-6

    reference = synthesize_capture_set(bundled_db, 0.0, seed=0, label="ref", device="ref")
    self_report = device_offsets([reference], reference)
    assert all(v == 0.0 for v in self_report.mean.values())


def test_c8_clumping_direction(bundled_db):
    """CIELab separates the hue pages better than XYZ does."""
    lab_index = clumping_index(scatter_export(bundled_db, "lab"))
    xyz_index = clumping_index(scatter_export(bundled_db, "xyz"))
    assert np.mean(list(lab_index.values())) > np.mean(list(xyz_index.values()))
    for page in lab_index:
        assert lab_index[page] > xyz_index[page], page


def test_c9_cli_determinism(tmp_path):
    """Identical seeded CLI runs write byte-identical files."""
    digests = []
    for sub in ("first", "second"):
        out = tmp_path / sub
        assert main(["eval", "--synthetic", "2", "--seed", "42", "--out", str(out)]) == 0
        assert main(["heatmap", "--pages", "2.5YR,5YR", "--out", str(out)]) == 0
        assert main(["scatter", "--space", "lab", "--out", str(out)]) == 0
        digest = hashlib.sha256()
        for path in sorted(out.iterdir()):
            digest.update(path.name.encode())
            digest.update(path.read_bytes())
        digests.append(digest.hexdigest())
    assert digests[0] == digests[1]

"""Command-line interface wiring the library into the estimation workflows.

Subcommands: convert, match, heatmap, eval, scatter, device-compare.
Exit codes: 0 success, 1 runtime or data error, 2 usage error.
The default output directory comes from ``$SOILCOLOR_OUT``; zero-config
defaults follow the recommended pipeline (CIEDE2000 under D65).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, capture
from .chart import ChipDatabase, bundled_database, load_chip_database, match as match_color
from .colorspace import LabColor, SrgbColor
from .errors import SoilColorError
from .estimators import ColorConverter
from .illuminants import get_illuminant

CONFIG_KEYS = ("database", "illuminant", "method", "out", "seed")


def _int_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _float_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None


def _pages_list(text: str) -> list[str]:
    return [p for p in (s.strip() for s in text.split(",")) if p]


def read_config(path: str | Path) -> dict[str, str]:
    """Parse the optional ``key = value`` config file."""
    config: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise SoilColorError(
                f"{path} line {lineno}: expected 'key = value' with key in {CONFIG_KEYS}"
            )
        config[key] = value.strip()
    return config


def _load_database(source: str) -> ChipDatabase:
    if source == "bundled":
        return bundled_database()
    return load_chip_database(source)


def _out_dir(args) -> Path:
    return Path(args.out)


def _query_lab(args, illuminant) -> LabColor:
    if args.lab is not None:
        return LabColor(*args.lab)
    if args.rgb is not None:
        return SrgbColor(*args.rgb).to_lab(illuminant)
    patch = capture.read_image_patch(args.image)
    return capture.extract_patch_color(patch).to_lab(illuminant)


def cmd_convert(args) -> int:
    if args.rgb is not None:
        row, source = list(args.rgb), "srgb"
    else:
        row, source = list(args.lab), "lab"
    converter = ColorConverter(source=source, target=args.to, illuminant=args.illuminant)
    values = converter.fit([row]).transform([row])[0]
    if args.to == "srgb":
        print(" ".join(str(int(v)) for v in values))
    else:
        print(" ".join(f"{v:.4f}" for v in values))
    return 0


def cmd_match(args) -> int:
    db = _load_database(args.database)
    query = _query_lab(args, get_illuminant(args.illuminant))
    result = match_color(query, db, method=args.method, pages=args.pages, k=args.k)
    print(f"# query lab: {query.l:.4f} {query.a:.4f} {query.b:.4f} ({result.method.kind})")
    for rank, (code, value) in enumerate(result.ranked, start=1):
        print(f"{rank}\t{code}\t{value:.4f}")
    return 0


def cmd_heatmap(args) -> int:
    db = _load_database(args.database)
    if len(args.pages) != 2:
        raise SoilColorError(f"heatmap needs exactly two pages, got {args.pages}")
    grid = analysis.heatmap(db, args.pages[0], args.pages[1], args.method)
    paths = analysis.write_heatmap_outputs(grid, _out_dir(args))
    stats = analysis.centerline_stats(grid)
    print(
        f"centerline mean={stats.mean:.4f} stdev={stats.stdev:.4f} "
        f"min={stats.min:.4f} max={stats.max:.4f}"
    )
    for path in paths:
        print(f"wrote {path}")
    return 0


def cmd_eval(args) -> int:
    db = _load_database(args.database)
    if bool(args.sets) == (args.synthetic is not None):
        raise SoilColorError("eval needs either --sets or --synthetic (not both)")
    if args.sets:
        sets = [capture.load_capture_set(path) for path in args.sets]
    else:
        sets = [
            capture.synthesize_capture_set(
                db, args.synthetic, offset=args.offset, seed=args.seed
            )
        ]
    report = analysis.evaluate(
        sets, db, methods=args.methods, pages=args.pages or analysis.EVALUATION_PAGES
    )
    paths = report.write_csv(_out_dir(args))
    for method in report.methods:
        for label in report.set_labels:
            print(
                f"{method} {label}: hue {report.hue_accuracy[(method, label)]:.2f} "
                f"hvc {report.hvc_accuracy[(method, label)]:.2f}"
            )
    for path in paths:
        print(f"wrote {path}")
    return 0


def cmd_scatter(args) -> int:
    db = _load_database(args.database)
    table = analysis.scatter_export(db, args.space)
    out = _out_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    path = table.write_csv(out / f"scatter_{table.space}.csv")
    print(f"wrote {path}")
    return 0


def cmd_device_compare(args) -> int:
    db = _load_database(args.database)
    sets = [capture.load_capture_set(path) for path in args.sets]
    reference = db if args.reference == "bundled" else capture.load_capture_set(args.reference)
    report = analysis.device_offsets(sets, reference)
    paths = report.write_csv(_out_dir(args))
    for device in report.devices:
        offsets = " ".join(
            f"{ch}{report.mean[(device, ch)]:+.3f}" for ch in report.channels
        )
        print(f"{device}: {offsets}")
    for path in paths:
        print(f"wrote {path}")
    return 0


def build_parser(defaults: dict[str, str] | None = None) -> argparse.ArgumentParser:
    cfg = {
        "database": "bundled",
        "illuminant": "D65",
        "method": "de2000",
        "out": os.environ.get("SOILCOLOR_OUT", "soilcolor-out"),
        "seed": "0",
    }
    cfg.update(defaults or {})

    parser = argparse.ArgumentParser(
        prog="soilcolor",
        description="Estimate Munsell soil colors from device-captured colors and images.",
    )
    parser.add_argument("--config", help="optional key = value config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, database=True, out=False, method=False):
        if database:
            p.add_argument(
                "--database",
                default=cfg["database"],
                help="chip database: 'bundled' or a sensor-scan CSV path",
            )
        if out:
            p.add_argument("--out", default=cfg["out"], help="output directory")
        if method:
            p.add_argument(
                "--method",
                default=cfg["method"],
                help="color difference method: de1976, de1994, de2000 or cmc",
            )

    p = sub.add_parser("convert", help="convert a single color between spaces")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rgb", type=_int_triple, help="8-bit sRGB channels, e.g. 255,128,0")
    group.add_argument("--lab", type=_float_triple, help="Lab components, e.g. 50,3,4")
    p.add_argument(
        "--to",
        required=True,
        choices=["srgb", "linear", "xyz", "lab", "lch", "cmyk"],
        help="target color space",
    )
    p.add_argument("--illuminant", default=cfg["illuminant"], help="illuminant name (D65, C, D50)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("match", help="rank the closest chart chips for a color or image")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rgb", type=_int_triple, help="8-bit sRGB channels")
    group.add_argument("--lab", type=_float_triple, help="D65 Lab components")
    group.add_argument("--image", help="chip photo; mean color of the central patch is matched")
    p.add_argument("--k", type=int, default=5, help="number of ranked chips to print")
    p.add_argument("--pages", type=_pages_list, default=None, help="restrict to hue pages, e.g. 5YR,7.5YR")
    p.add_argument("--illuminant", default=cfg["illuminant"], help="illuminant for RGB/image queries")
    add_common(p, method=True)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("heatmap", help="cross-page difference matrix and centerline stats")
    p.add_argument("--pages", type=_pages_list, required=True, help="two hue pages, e.g. 2.5YR,5YR")
    add_common(p, out=True, method=True)
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("eval", help="hue / hue-value-chroma accuracy of capture sets")
    p.add_argument("--sets", nargs="*", default=[], help="capture set manifest CSVs")
    p.add_argument(
        "--synthetic",
        type=float,
        default=None,
        metavar="SIGMA",
        help="evaluate one synthesized capture set with this Lab noise sigma",
    )
    p.add_argument(
        "--offset",
        type=_float_triple,
        default=(0.0, 0.0, 0.0),
        help="Lab offset for --synthetic, e.g. 7.4,0,0",
    )
    p.add_argument("--seed", type=int, default=int(cfg["seed"]), help="seed for --synthetic")
    p.add_argument(
        "--methods",
        type=_pages_list,
        default=["de1976", "de1994", "de2000", "cmc"],
        help="comma-separated method list",
    )
    p.add_argument("--pages", type=_pages_list, default=None, help="candidate hue pages")
    add_common(p, out=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scatter", help="per-chip coordinates in a chosen space, for 3D plots")
    p.add_argument(
        "--space", required=True, choices=list(analysis.SCATTER_SPACES), help="export space"
    )
    add_common(p, out=True)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("device-compare", help="per-device Lab offsets against a reference")
    p.add_argument("--sets", nargs="+", required=True, help="capture set manifest CSVs")
    p.add_argument(
        "--reference",
        default="bundled",
        help="'bundled' for the chip database or a reference manifest CSV",
    )
    add_common(p, out=True)
    p.set_defaults(func=cmd_device_compare)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)

    # --config affects defaults, so peel it off before the real parse
    defaults = None
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            cfg_path = argv[idx + 1]
        except IndexError:
            print("error: --config needs a file path", file=sys.stderr)
            return 2
        try:
            defaults = read_config(cfg_path)
        except (OSError, SoilColorError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SoilColorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""`plot` command: sweep CSVs in, a figure and its series sidecar out."""

from __future__ import annotations

import argparse
import sys

from .figure import DataError, FigureSpec, SchemaError, render, resolve_group, resolve_y


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="plot",
        description="Draw metric-vs-sweep line figures from sweep CSV files.",
    )
    p.add_argument("--csv", action="append", required=True, metavar="PATH",
                   help="input CSV; repeat the flag to overlay several files")
    p.add_argument("--y", required=True, choices=("rtb", "jds", "frac"),
                   help="which mean column to plot")
    p.add_argument("--group", required=True, metavar="COL",
                   help="series grouping: dist, rho, fatigue, q, or an output column name")
    p.add_argument("--out", required=True, metavar="PATH", help="output image path")
    p.add_argument("--title", default=None, help="figure title (optional)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        spec = FigureSpec(
            csv_paths=tuple(args.csv),
            y_column=resolve_y(args.y),
            group_column=resolve_group(args.group),
            out_path=args.out,
            title=args.title,
        )
        result = render(spec)
    except (SchemaError, DataError, OSError, ValueError) as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"plot: unexpected failure: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.image_path} and {result.sidecar_path} "
          f"({result.lines_drawn} series, {result.omitted_rows} rows omitted)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""CLI: plots --in sweep.csv --out fig.svg [--log-x] [--title STR]"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import PlotSpec, SchemaMismatchError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots", description="Render a nexpansion sweep CSV to a static figure."
    )
    parser.add_argument("--in", dest="input_csv", required=True, type=Path)
    parser.add_argument("--out", dest="output_image", required=True, type=Path)
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--title", default="")
    parser.add_argument("--x-label", default="parameter")
    parser.add_argument("--y-label", default="dimension")
    args = parser.parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input_csv,
        output_image=args.output_image,
        title=args.title,
        x_label=args.x_label,
        y_label=args.y_label,
        log_x=args.log_x,
    )
    try:
        render(spec)
    except SchemaMismatchError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 6
    return 0


if __name__ == "__main__":
    sys.exit(main())

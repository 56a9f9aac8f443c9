"""``render_figures``: turn ``skr figure`` CSV exports into images."""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .curves import (
    FIGURE_CURVE_COUNTS,
    MalformedCurveError,
    MissingCurvesError,
)
from .render import render_figure

_CURVE_FILE_RE = re.compile(r"^(fig\d+)_curve\d+\.csv$")


def discover_ids(input_dir: Path) -> list[str]:
    """Figure ids that have at least one curve file present, in id order."""
    found = set()
    for path in input_dir.iterdir():
        match = _CURVE_FILE_RE.match(path.name)
        if match and match.group(1) in FIGURE_CURVE_COUNTS:
            found.add(match.group(1))
    return sorted(found, key=lambda s: int(s[3:]))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render figure families from skr sweep CSV exports.",
    )
    parser.add_argument("--in", dest="input_dir", required=True, metavar="DIR",
                        help="directory holding ID_curveN.csv files")
    parser.add_argument("--out", dest="output_dir", required=True,
                        metavar="DIR", help="directory for the images")
    parser.add_argument("--ids", metavar="ID[,ID...]",
                        help="figure ids to render "
                             "(default: every id with files present)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    input_dir = Path(args.input_dir)
    if not input_dir.is_dir():
        print(f"error: {input_dir} is not a directory", file=sys.stderr)
        return 2

    if args.ids:
        ids = [token.strip() for token in args.ids.split(",") if token.strip()]
        unknown = [i for i in ids if i not in FIGURE_CURVE_COUNTS]
        if unknown:
            print("error: unknown figure id(s): " + ", ".join(unknown)
                  + "; known: " + " ".join(sorted(FIGURE_CURVE_COUNTS)),
                  file=sys.stderr)
            return 2
    else:
        ids = discover_ids(input_dir)
        if not ids:
            print(f"error: no curve files found in {input_dir}",
                  file=sys.stderr)
            return 2

    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    failed = False
    for figure_id in ids:
        target = output_dir / f"{figure_id}.png"
        try:
            render_figure(figure_id, input_dir, target)
        except (MissingCurvesError, MalformedCurveError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            failed = True
            continue
        print(f"wrote {target}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

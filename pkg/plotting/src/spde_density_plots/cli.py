"""plot-figures: render figure specs against spde-density CSV output."""

import argparse
import sys

from .figspec import SpecError, parse_figure_spec
from .render import MissingSeries, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot-figures",
        description="Render multi-panel density figures from spde-density CSVs.",
    )
    parser.add_argument("--spec", required=True, help="figure spec file")
    args = parser.parse_args(argv)
    try:
        spec = parse_figure_spec(args.spec)
        path = render(spec)
    except SpecError as exc:
        print(f"SpecError: {exc}", file=sys.stderr)
        return 1
    except MissingSeries as exc:
        print(f"MissingSeries: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Entry point: plotgen <recipe.json>."""

from __future__ import annotations

import argparse
import sys

from .recipe import RecipeError, load_recipe
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotgen",
        description="Render a risk-curve figure from a JSON recipe",
    )
    parser.add_argument("recipe", help="path to a recipe JSON file")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        out = render(load_recipe(args.recipe))
    except RecipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

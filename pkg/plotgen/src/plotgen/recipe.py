"""Recipe loading and CSV-contract validation.

The renderer is deliberately decoupled from whatever produced the tables: the
only contract is the recipe JSON schema and the fixed 15-column CSV header.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

CSV_COLUMNS = [
    "mode",
    "grid",
    "gamma0",
    "gamma1",
    "delta2",
    "lambda",
    "pi0",
    "n0",
    "n1",
    "p",
    "reps",
    "theory_risk",
    "mc_mean",
    "mc_std",
    "flag",
]

NEAR_INTERPOLATION_FLAG = "near_interpolation"


class RecipeError(Exception):
    """Invalid recipe or CSV input; the message names the offending file."""


@dataclass(frozen=True)
class Series:
    csv_path: str
    label: str
    role: str  # "theory-line" or "mc-scatter"


@dataclass(frozen=True)
class FigureRecipe:
    x: str  # "gamma" or "ratio"
    output: str
    format: str  # "svg" or "png"
    series: tuple[Series, ...]
    title: str | None = None


@dataclass(frozen=True)
class CurvePoints:
    """Columns of one CSV relevant to plotting, rows in file order."""

    x: list[float]
    theory: list[float | None]
    mc_mean: list[float]
    mc_std: list[float]
    flagged: list[bool]


def _schema() -> dict:
    text = resources.files("plotgen").joinpath("schema/recipe.schema.json").read_text()
    return json.loads(text)


def load_recipe(path: str) -> FigureRecipe:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise RecipeError(f"{path}: not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(raw, _schema())
    except jsonschema.ValidationError as exc:
        raise RecipeError(f"{path}: {exc.message}") from exc
    return FigureRecipe(
        x=raw["x"],
        output=raw["output"],
        format=raw["format"],
        title=raw.get("title"),
        series=tuple(
            Series(csv_path=s["csv"], label=s["label"], role=s["role"])
            for s in raw["series"]
        ),
    )


def read_curve_csv(path: str) -> CurvePoints:
    """Parse one table, enforcing the exact header and per-row float syntax.

    Raises RecipeError naming the path and 1-based row number on any defect.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RecipeError(f"{path}: row 1: missing header") from None
        if header != CSV_COLUMNS:
            raise RecipeError(f"{path}: row 1: header does not match the curve schema")
        xs, theory, mc_mean, mc_std, flagged = [], [], [], [], []
        for i, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise RecipeError(f"{path}: row {i}: expected {len(CSV_COLUMNS)} cells")
            rec = dict(zip(CSV_COLUMNS, row))
            try:
                xs.append(float(rec["grid"]))
                theory.append(float(rec["theory_risk"]) if rec["theory_risk"] else None)
                mc_mean.append(float(rec["mc_mean"]))
                mc_std.append(float(rec["mc_std"]))
            except ValueError as exc:
                raise RecipeError(f"{path}: row {i}: {exc}") from exc
            flagged.append(rec["flag"] == NEAR_INTERPOLATION_FLAG)
    return CurvePoints(x=xs, theory=theory, mc_mean=mc_mean, mc_std=mc_std, flagged=flagged)

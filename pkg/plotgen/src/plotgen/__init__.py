"""Batch renderer for risk-curve CSV tables."""

from .recipe import (
    CSV_COLUMNS,
    CurvePoints,
    FigureRecipe,
    RecipeError,
    Series,
    load_recipe,
    read_curve_csv,
)
from .render import render

__version__ = "0.1.0"

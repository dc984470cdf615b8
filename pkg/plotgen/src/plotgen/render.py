"""Figure rendering: theory lines plus Monte Carlo scatter with error bars."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .recipe import CurvePoints, FigureRecipe, read_curve_csv

Y_LIMITS = (0.0, 0.55)
X_LABELS = {"gamma": "gamma", "ratio": "n1 / n0"}
SKIP_NOTE = "near-interpolation points omitted"

# Fixed salt keeps element ids stable so SVG output is byte-reproducible.
matplotlib.rcParams["svg.hashsalt"] = "plotgen"


def _draw_series(ax, points: CurvePoints, label: str, role: str) -> bool:
    """Returns True when flagged scatter points were skipped."""
    if role == "theory-line":
        xs = [x for x, t in zip(points.x, points.theory) if t is not None]
        ys = [t for t in points.theory if t is not None]
        if xs:
            ax.plot(xs, ys, label=label, linewidth=1.5)
        return False
    keep = [i for i, f in enumerate(points.flagged) if not f]
    if keep:
        ax.errorbar(
            [points.x[i] for i in keep],
            [points.mc_mean[i] for i in keep],
            yerr=[points.mc_std[i] for i in keep],
            fmt="o",
            markersize=3.5,
            capsize=2,
            linestyle="none",
            label=label,
        )
    return len(keep) < len(points.x)


def render(recipe: FigureRecipe) -> str:
    """Write the figure described by the recipe; returns the output path."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        any_points = False
        any_skipped = False
        for series in recipe.series:
            points = read_curve_csv(series.csv_path)
            any_points = any_points or bool(points.x)
            any_skipped = _draw_series(ax, points, series.label, series.role) or any_skipped
        ax.set_xlabel(X_LABELS[recipe.x])
        ax.set_ylabel("misclassification risk")
        ax.set_ylim(*Y_LIMITS)
        if recipe.title:
            ax.set_title(recipe.title)
        if not any_points:
            ax.annotate(
                "no data",
                xy=(0.5, 0.5),
                xycoords="axes fraction",
                ha="center",
                va="center",
                fontsize=14,
                color="gray",
            )
        else:
            if any_skipped:
                ax.plot([], [], " ", label=SKIP_NOTE)
            ax.legend(loc="best", fontsize=8)
        fig.savefig(
            recipe.output,
            format=recipe.format,
            metadata={"Date": None} if recipe.format == "svg" else None,
        )
    finally:
        plt.close(fig)
    return recipe.output

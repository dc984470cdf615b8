import json
from pathlib import Path

import pytest

from plotgen import CSV_COLUMNS, RecipeError, load_recipe, read_curve_csv, render
from plotgen.cli import main

GOLDEN = Path(__file__).parent / "golden"


def gamma_sweep_recipe(tmp_path, fmt="svg", out_name="out.svg"):
    series = []
    for d in (9, 16, 25):
        csv = str(GOLDEN / f"gamma_delta2_{d}.csv")
        series.append({"csv": csv, "label": f"snr {d} theory", "role": "theory-line"})
        series.append({"csv": csv, "label": f"snr {d} mc", "role": "mc-scatter"})
    recipe = {
        "x": "gamma",
        "output": str(tmp_path / out_name),
        "format": fmt,
        "title": "risk vs gamma",
        "series": series,
    }
    path = tmp_path / "recipe.json"
    path.write_text(json.dumps(recipe))
    return path


class TestRecipeLoading:
    def test_golden_recipe_validates(self, tmp_path):
        recipe = load_recipe(str(gamma_sweep_recipe(tmp_path)))
        assert recipe.x == "gamma"
        assert len(recipe.series) == 6

    def test_unknown_role_rejected(self, tmp_path):
        path = tmp_path / "r.json"
        path.write_text(
            json.dumps(
                {
                    "x": "gamma",
                    "output": "o.svg",
                    "format": "svg",
                    "series": [{"csv": "a.csv", "label": "a", "role": "sparkline"}],
                }
            )
        )
        with pytest.raises(RecipeError):
            load_recipe(str(path))

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "r.json"
        path.write_text("{not json")
        with pytest.raises(RecipeError):
            load_recipe(str(path))


class TestCsvContract:
    def test_golden_csv_parses(self):
        points = read_curve_csv(str(GOLDEN / "gamma_delta2_9.csv"))
        assert len(points.x) == 16
        assert points.x[0] == 0.25
        assert all(0.0 <= m <= 1.0 for m in points.mc_mean)

    def test_header_only_is_empty(self):
        points = read_curve_csv(str(GOLDEN / "empty.csv"))
        assert points.x == []

    def test_mismatched_header_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(RecipeError, match="row 1"):
            read_curve_csv(str(bad))

    def test_bad_cell_names_row(self, tmp_path):
        bad = tmp_path / "bad.csv"
        rows = [",".join(CSV_COLUMNS), "gamma,oops," + ",".join(["0"] * 13)]
        bad.write_text("\n".join(rows) + "\n")
        with pytest.raises(RecipeError, match="row 2"):
            read_curve_csv(str(bad))

    def test_flag_column(self):
        points = read_curve_csv(str(GOLDEN / "gamma_delta2_9.csv"))
        assert any(points.flagged)  # grid spans the interpolation band
        assert not all(points.flagged)


class TestRendering:
    def test_golden_gamma_sweep(self, tmp_path):
        out = render(load_recipe(str(gamma_sweep_recipe(tmp_path))))
        data = Path(out).read_bytes()
        assert data.startswith(b"<?xml")
        assert b"near-interpolation points omitted" in data

    def test_png_output(self, tmp_path):
        path = gamma_sweep_recipe(tmp_path, fmt="png", out_name="out.png")
        out = render(load_recipe(str(path)))
        assert Path(out).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_svg_render_deterministic(self, tmp_path):
        a = render(load_recipe(str(gamma_sweep_recipe(tmp_path, out_name="a.svg"))))
        b = render(load_recipe(str(gamma_sweep_recipe(tmp_path, out_name="b.svg"))))
        assert Path(a).read_bytes() == Path(b).read_bytes()

    def test_empty_csv_annotates_no_data(self, tmp_path):
        recipe = tmp_path / "r.json"
        recipe.write_text(
            json.dumps(
                {
                    "x": "ratio",
                    "output": str(tmp_path / "empty.svg"),
                    "format": "svg",
                    "series": [
                        {
                            "csv": str(GOLDEN / "empty.csv"),
                            "label": "none",
                            "role": "mc-scatter",
                        }
                    ],
                }
            )
        )
        assert main([str(recipe)]) == 0
        assert b"no data" in (tmp_path / "empty.svg").read_bytes()

    def test_inputs_unmodified(self, tmp_path):
        before = (GOLDEN / "gamma_delta2_9.csv").read_bytes()
        render(load_recipe(str(gamma_sweep_recipe(tmp_path))))
        assert (GOLDEN / "gamma_delta2_9.csv").read_bytes() == before


class TestCli:
    def test_success_exit_zero(self, tmp_path, capsys):
        assert main([str(gamma_sweep_recipe(tmp_path))]) == 0
        assert "out.svg" in capsys.readouterr().out

    def test_schema_violation_nonzero(self, tmp_path, capsys):
        bad_csv = tmp_path / "bad.csv"
        bad_csv.write_text("wrong,header\n")
        recipe = tmp_path / "r.json"
        recipe.write_text(
            json.dumps(
                {
                    "x": "gamma",
                    "output": str(tmp_path / "x.svg"),
                    "format": "svg",
                    "series": [
                        {"csv": str(bad_csv), "label": "bad", "role": "theory-line"}
                    ],
                }
            )
        )
        assert main([str(recipe)]) == 1
        err = capsys.readouterr().err
        assert "bad.csv" in err and "row 1" in err

    def test_missing_recipe_nonzero(self, tmp_path, capsys):
        assert main([str(tmp_path / "nope.json")]) == 1

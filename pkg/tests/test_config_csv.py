"""Config parsing, CSV emission, and the preset curve families."""
import math

import numpy as np
import pytest

from satskr.config import ConfigError, parse_config, serialize_sweep
from satskr.csvio import HEADER, format_value, parse_csv, render_csv
from satskr.presets import FIGURE_IDS, figure_curves, figure_preset
from satskr.sweeps import ResultTable, SweepRow

RATE_TEXT = """\
mode=rate
geometry=exclusion_zone
r_a_m=0.05
r_b_m=0.05
r_ex_m=0.05
L_km=100
lambda_nm=1550
beta=1.0
mu=1000
"""


def test_parse_rate_config():
    cfg = parse_config(RATE_TEXT)
    assert cfg.mode == "rate"
    assert cfg.fixed.geometry == "exclusion_zone"
    assert cfg.fixed.mu == 1000.0
    assert cfg.fixed.beta == 1.0
    assert cfg.fixed.temperature_k == 3.0  # default
    assert cfg.sweep is None


def test_comments_and_blank_lines_ignored():
    cfg = parse_config("# leading comment\n\nmode=rate  # trailing\n"
                       "geometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\n"
                       "r_ex_m=0.05\nL_km=100\nlambda_nm=1550\nmu=10\n")
    assert cfg.fixed.mu == 10.0


def test_missing_mode():
    with pytest.raises(ConfigError, match="mode"):
        parse_config("geometry=exclusion_zone")


def test_unknown_and_duplicate_keys():
    with pytest.raises(ConfigError, match="unknown key 'warp_factor'"):
        parse_config("mode=rate\nwarp_factor=9")
    with pytest.raises(ConfigError, match="duplicate key 'mu'"):
        parse_config(RATE_TEXT + "mu=5\n")


def test_non_numeric_value():
    with pytest.raises(ConfigError, match="mu: must be a number"):
        parse_config(RATE_TEXT.replace("mu=1000", "mu=lots"))


def test_sweep_key_rejected_in_rate_mode():
    with pytest.raises(ConfigError, match="variable"):
        parse_config(RATE_TEXT + "variable=mu\n")


def test_multiple_problems_reported_together():
    try:
        parse_config("mode=sweep\ngeometry=exclusion_zone\nvariable=mu\n"
                     "grid=1,2\nr_a_m=0.05\nr_b_m=0.05\nr_ex_m=0.04\n"
                     "L_km=100\nlambda_nm=1550\nfrequency_hz=2e14\n")
    except ConfigError as err:
        assert len(err.problems) >= 2
    else:
        pytest.fail("expected ConfigError")


def test_grid_descriptor_and_explicit_conflict():
    with pytest.raises(ConfigError, match="descriptor"):
        parse_config("mode=sweep\nvariable=mu\ngrid=1,2\ngrid_points=5\n"
                     "geometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\n"
                     "r_ex_m=0.05\nL_km=100\nlambda_nm=1550\n")


def test_sweep_config_builds_grid_from_descriptor():
    cfg = parse_config("mode=sweep\nvariable=mu\ngrid_start=0.1\n"
                       "grid_stop=1000\ngrid_points=5\ngrid_scale=log\n"
                       "geometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\n"
                       "r_ex_m=0.05\nL_km=100\nlambda_nm=1550\n")
    np.testing.assert_allclose(cfg.sweep.grid, (0.1, 1.0, 10.0, 100.0, 1000.0),
                               rtol=1e-12)
    assert cfg.sweep.schemes == ("best",)


def test_figure_mode_config():
    cfg = parse_config("mode=figure\nfigure_id=fig10\noutput_path=/tmp/out\n")
    assert cfg.figure_id == "fig10"
    with pytest.raises(ConfigError, match="figure_id"):
        parse_config("mode=figure\n")
    with pytest.raises(ConfigError):
        parse_config("mode=figure\nfigure_id=fig10\nmu=3\n")


def test_optimize_mode_scheme():
    base = ("mode=optimize\ngeometry=exclusion_zone\nr_a_m=0.05\nr_b_m=0.05\n"
            "r_ex_m=0.05\nL_km=100\nlambda_nm=1550\n")
    assert parse_config(base).scheme == "best"
    assert parse_config(base + "schemes=direct\n").scheme == "direct"
    with pytest.raises(ConfigError, match="schemes"):
        parse_config(base + "schemes=upper\n")


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
def test_presets_round_trip_through_config(figure_id):
    for spec in figure_preset(figure_id):
        assert parse_config(serialize_sweep(spec)).sweep == spec


EXPECTED_CURVES = {
    "fig2": 4, "fig3": 4, "fig4": 3, "fig5": 4, "fig10": 4,
    "fig11": 4, "fig12": 4, "fig13": 6, "fig14": 4, "fig15": 4,
}


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
def test_preset_shapes(figure_id):
    curves = figure_curves(figure_id)
    assert len(curves) == EXPECTED_CURVES[figure_id]
    labels = [label for label, _ in curves]
    assert len(set(labels)) == len(labels)


def test_preset_parameters():
    assert all(s.fixed.L_km == 10.0 for s in figure_preset("fig10"))
    assert all(s.fixed.L_km == 30.0 for s in figure_preset("fig11"))
    assert all(s.fixed.beta == 0.95 for s in figure_preset("fig3"))
    assert all(s.fixed.beta == 0.85 for s in figure_preset("fig12"))
    assert all(s.optimize_mu for s in figure_preset("fig13"))
    assert sum(s.fixed.unrestricted_eve for s in figure_preset("fig13")) == 2
    with pytest.raises(ValueError, match="fig99"):
        figure_curves("fig99")


# --- CSV ---

def _sample_table():
    return ResultTable(rows=(
        SweepRow(1.0, 0.5, 1.0, 0.0, -1.5, 0.25, 0.25, 2.0, 1.0),
        SweepRow(2.0, 0.5, 0.0, 0.0, 3.0, 0.5, 3.0, math.inf, math.inf,
                 flags=("unbounded",)),
    ))


def test_csv_bytes_are_pinned():
    expected = (HEADER + "\n"
                "1,0.5,1,0,-1.5,0.25,0.25,2,1,\n"
                "2,0.5,0,0,3,0.5,3,inf,inf,unbounded\n")
    assert render_csv(_sample_table()) == expected


def test_csv_formats_twelve_significant_digits():
    assert format_value(0.0025675349638629957) == "0.00256753496386"
    assert format_value(5e15) == "5e+15"
    assert format_value(math.nan) == "nan"
    assert format_value(-math.inf) == "-inf"


def test_csv_round_trips():
    table = _sample_table()
    assert parse_csv(render_csv(table)) == table


def test_csv_parses_nan_and_comments():
    text = ("# produced by a sweep\n" + HEADER + "\n"
            "5e+15,nan,nan,nan,nan,nan,nan,nan,nan,farfield_violation\n")
    table = parse_csv(text)
    assert len(table.rows) == 1
    assert math.isnan(table.rows[0].eta)
    assert table.rows[0].flags == ("farfield_violation",)
    assert table.has_errors


def test_csv_rejects_malformed_input():
    with pytest.raises(ValueError):
        parse_csv("not,a,header\n1,2\n")
    with pytest.raises(ValueError):
        parse_csv(HEADER + "\n1,2,3\n")
    with pytest.raises(ValueError):
        parse_csv("")

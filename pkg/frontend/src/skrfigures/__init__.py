"""Figure rendering for ``skr`` sweep CSV exports."""
from .curves import (
    FIGURE_CURVE_COUNTS,
    CurveFile,
    MalformedCurveError,
    MissingCurvesError,
    expected_filenames,
    load_figure,
    parse_curve_file,
)
from .render import FigureData, PlottedSeries, render_figure

__all__ = [
    "FIGURE_CURVE_COUNTS",
    "CurveFile",
    "FigureData",
    "MalformedCurveError",
    "MissingCurvesError",
    "PlottedSeries",
    "expected_filenames",
    "load_figure",
    "parse_curve_file",
    "render_figure",
]

__version__ = "0.1.0"

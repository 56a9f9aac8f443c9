"""Render one curve family into a styled figure.

Styling conventions: direct-reconciliation lower bounds are dashed,
reverse (and clamped-best) lower bounds solid, upper bounds dotted.
Curves whose legend labels share a qualifier (the part after the first
comma, e.g. "r_ex=0.05 m") share a color, so a dashed/solid pair at the
same geometry reads as one scenario.  The rate axis is logarithmic above
1e-6 bits per mode with a linear cutoff below, so clamped-to-zero rates
terminate at the threshold instead of vanishing.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .curves import CurveFile, load_figure

RATE_FLOOR = 1e-6

#: rate column and line style per declared scheme
SCHEME_STYLE = {
    "direct": ("lb_direct", "--"),
    "reverse": ("lb_reverse", "-"),
    "best": ("lb_best", "-"),
    "upper": ("ub", ":"),
}

#: axis label and default scale per sweep variable
VARIABLE_AXIS = {
    "mu": ("mean input photon number", "log"),
    "distance": ("distance (km)", "linear"),
    "frequency": ("frequency (Hz)", "log"),
    "exclusion_radius": ("exclusion-zone radius (m)", "linear"),
}


@dataclass(frozen=True)
class PlottedSeries:
    """Exactly one drawn line: verbatim cell values plus its styling.

    ``y`` is the untouched rate column (``inf`` included); the drawing
    layer lets non-finite points break the line and marks diverging
    upper-bound points separately via ``diverged_x``.
    """

    label: str
    scheme: str
    linestyle: str
    color: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    diverged_x: tuple[float, ...]


@dataclass(frozen=True)
class FigureData:
    """Test hook: everything :func:`render_figure` put on the canvas."""

    figure_id: str
    xlabel: str
    xscale: str
    series: tuple[PlottedSeries, ...]
    output_path: Path


def _color_key(label: str) -> str:
    _, _, qualifier = label.partition(", ")
    return qualifier or label


def _series_of(curve: CurveFile, color: str) -> list[PlottedSeries]:
    multi = len(curve.schemes) > 1
    out = []
    for scheme in curve.schemes:
        column, style = SCHEME_STYLE[scheme]
        y = curve.columns[column]
        diverged = tuple(
            x for x, ub in zip(curve.columns["var"], curve.columns["ub"])
            if scheme == "upper" and ub == float("inf")
        )
        out.append(
            PlottedSeries(
                label=f"{curve.label} ({scheme})" if multi else curve.label,
                scheme=scheme,
                linestyle=style,
                color=color,
                x=curve.columns["var"],
                y=y,
                diverged_x=diverged,
            )
        )
    return out


def render_figure(figure_id: str, input_dir, output_image_path) -> FigureData:
    """Draw every curve of one family and save the image.

    Returns the plotted data so callers (and tests) can verify that each
    displayed value exists verbatim in a CSV cell; this function never
    computes rates.
    """
    curves = load_figure(figure_id, Path(input_dir))
    output_image_path = Path(output_image_path)

    cycle = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    colors: dict[str, str] = {}
    series: list[PlottedSeries] = []
    for curve in curves:
        key = _color_key(curve.label)
        if key not in colors:
            colors[key] = cycle[len(colors) % len(cycle)]
        series.extend(_series_of(curve, colors[key]))

    variable = curves[0].variable
    xlabel, default_scale = VARIABLE_AXIS.get(variable, (variable, "linear"))
    xscale = curves[0].meta.get("grid_scale", default_scale)

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for item in series:
        ax.plot(item.x, item.y, item.linestyle, color=item.color,
                label=item.label, linewidth=1.4)
        if item.diverged_x:
            # upper bound is infinite there: off-scale marker on the top edge
            ax.plot(item.diverged_x, [1.0] * len(item.diverged_x), "^",
                    color=item.color, transform=ax.get_xaxis_transform(),
                    clip_on=False, markersize=5)
    if any(item.diverged_x for item in series):
        ax.annotate("▲ upper bound diverges", xy=(0.99, 1.02),
                    xycoords="axes fraction", ha="right", fontsize=8)

    ax.set_xscale(xscale)
    ax.set_yscale("symlog", linthresh=RATE_FLOOR)
    ax.set_ylim(bottom=RATE_FLOOR)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("secret key rate (bits per mode)")
    ax.set_title(figure_id)
    ax.grid(True, which="both", alpha=0.25)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(output_image_path, dpi=150)
    plt.close(fig)

    return FigureData(
        figure_id=figure_id,
        xlabel=xlabel,
        xscale=xscale,
        series=tuple(series),
        output_path=output_image_path,
    )

"""Canned sweep families.

Each preset id names a family of curves that belong on one plot: the same
channel geometry evaluated across one swept variable for a handful of
scheme / exclusion-radius combinations.  ``figure_curves`` returns
``(label, spec)`` pairs in plot order; the label is what a legend should
show and travels with the CSV as a comment line.

Grid endpoints follow the visible axis ranges of the plots of record;
were they swept further the engine would happily oblige, so the numbers
here are presentation choices, not physics.
"""
from __future__ import annotations

from .sweeps import FixedParams, GridSpec, SweepSpec

FIGURE_IDS = (
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig10",
    "fig11",
    "fig12",
    "fig13",
    "fig14",
    "fig15",
)

_MU_GRID = GridSpec(start=0.1, stop=1e6, points=50, scale="log")
_REX_GRID = GridSpec(start=0.05, stop=0.5, points=50, scale="linear")
_FREQ_GRID = GridSpec(start=1e13, stop=1e15, points=50, scale="log")
_DIST_GRID = GridSpec(start=1.0, stop=100.0, points=50, scale="linear")


def _farfield(**overrides) -> FixedParams:
    base = dict(
        geometry="exclusion_zone",
        r_a_m=0.05,
        r_b_m=0.05,
        L_km=100.0,
        lambda_nm=1550.0,
        beta=1.0,
    )
    base.update(overrides)
    return FixedParams(**base)


def _beam(**overrides) -> FixedParams:
    base = dict(
        geometry="beam",
        w0_m=0.05,
        r_a_m=0.05,
        r_b_m=0.05,
        r_e_m=0.05,
        lambda_nm=1550.0,
        beta=1.0,
    )
    base.update(overrides)
    return FixedParams(**base)


def _mu_family(fixed_for, radii) -> list[tuple[str, SweepSpec]]:
    """Direct+reverse μ-sweeps for each exclusion radius, plot order."""
    curves = []
    for r_ex in radii:
        for scheme in ("direct", "reverse"):
            label = f"{scheme}, r_ex={r_ex:g} m"
            spec = SweepSpec(
                variable="mu",
                fixed=fixed_for(r_ex_m=r_ex),
                schemes=(scheme,),
                grid_spec=_MU_GRID,
            )
            curves.append((label, spec))
    return curves


def _fig2_like(beta: float) -> list[tuple[str, SweepSpec]]:
    return _mu_family(lambda **kw: _farfield(beta=beta, **kw), (0.05, 0.10))


def _fig4() -> list[tuple[str, SweepSpec]]:
    fixed = _farfield(r_ex_m=None)
    curves = []
    for scheme, label in (
        ("direct", "direct"),
        ("reverse", "reverse"),
        ("upper", "upper bound"),
    ):
        spec = SweepSpec(
            variable="exclusion_radius",
            fixed=fixed,
            schemes=(scheme,),
            optimize_mu=True,
            grid_spec=_REX_GRID,
        )
        curves.append((label, spec))
    return curves


def _fig5() -> list[tuple[str, SweepSpec]]:
    curves = []
    for L_km in (100.0, 150.0):
        for r_ex in (0.05, 0.15):
            label = f"best, L={L_km:g} km, r_ex={r_ex:g} m"
            fixed = _farfield(L_km=L_km, r_ex_m=r_ex, lambda_nm=None)
            spec = SweepSpec(
                variable="frequency",
                fixed=fixed,
                schemes=("best",),
                optimize_mu=True,
                grid_spec=_FREQ_GRID,
            )
            curves.append((label, spec))
    return curves


def _beam_mu(L_km: float, beta: float) -> list[tuple[str, SweepSpec]]:
    return _mu_family(
        lambda **kw: _beam(L_km=L_km, beta=beta, **kw), (0.05, 0.5)
    )


def _fig13() -> list[tuple[str, SweepSpec]]:
    curves = []
    for r_ex in (0.05, 0.5):
        for scheme in ("direct", "reverse"):
            label = f"{scheme}, r_ex={r_ex:g} m"
            spec = SweepSpec(
                variable="distance",
                fixed=_beam(r_ex_m=r_ex),
                schemes=(scheme,),
                optimize_mu=True,
                grid_spec=_DIST_GRID,
            )
            curves.append((label, spec))
    for scheme in ("direct", "reverse"):
        label = f"{scheme}, unrestricted Eve"
        spec = SweepSpec(
            variable="distance",
            fixed=_beam(r_ex_m=0.05, unrestricted_eve=True),
            schemes=(scheme,),
            optimize_mu=True,
            grid_spec=_DIST_GRID,
        )
        curves.append((label, spec))
    return curves


def _bounds_family(variable, grid, **fixed_overrides):
    curves = []
    for r_ex in (0.05, 0.5):
        for scheme, prefix in (("best", "lower"), ("upper", "upper")):
            label = f"{prefix} bound, r_ex={r_ex:g} m"
            spec = SweepSpec(
                variable=variable,
                fixed=_beam(r_ex_m=r_ex, **fixed_overrides),
                schemes=(scheme,),
                optimize_mu=True,
                grid_spec=grid,
            )
            curves.append((label, spec))
    return curves


_BUILDERS = {
    "fig2": lambda: _fig2_like(beta=1.0),
    "fig3": lambda: _fig2_like(beta=0.95),
    "fig4": _fig4,
    "fig5": _fig5,
    "fig10": lambda: _beam_mu(L_km=10.0, beta=1.0),
    "fig11": lambda: _beam_mu(L_km=30.0, beta=1.0),
    "fig12": lambda: _beam_mu(L_km=30.0, beta=0.85),
    "fig13": _fig13,
    "fig14": lambda: _bounds_family("distance", _DIST_GRID),
    "fig15": lambda: _bounds_family("frequency", _FREQ_GRID, L_km=30.0, lambda_nm=None),
}


def figure_curves(figure_id: str) -> list[tuple[str, SweepSpec]]:
    """(label, spec) pairs for one preset family, in plot order."""
    if figure_id not in _BUILDERS:
        raise ValueError(
            f"unknown figure id {figure_id!r}; known ids: {', '.join(FIGURE_IDS)}"
        )
    return _BUILDERS[figure_id]()


def figure_preset(figure_id: str) -> list[SweepSpec]:
    """The sweep specs of one preset family, in plot order."""
    return [spec for _, spec in figure_curves(figure_id)]

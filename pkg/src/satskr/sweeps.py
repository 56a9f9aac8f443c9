"""Input-power optimization and declarative one-dimensional sweeps.

The sweep engine turns a flat parameter record plus a grid into a table of
rate rows, one row per grid value.  Sweeps never abort on a bad operating
point: rows whose channel cannot be built carry an error flag instead of
numbers, and downstream tooling decides what that means (the CLI turns
error flags into a nonzero exit status).

Input power may be optimized per point.  At perfect reconciliation the
lower bounds are typically nondecreasing in the mean photon number, so the
optimum sits at infinity; the optimizer detects that regime from the slope
at the scan edge and reports the large-power asymptote instead of a huge
finite number.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import (
    SPEED_OF_LIGHT,
    BeamGeometry,
    ChannelPoint,
    DegenerateChannelError,
    ExclusionZoneGeometry,
    FarFieldViolationError,
    QuadratureError,
    beam_channel,
    blackbody_ne,
    farfield_channel,
)
from .rates import (
    EVE_NOISE_MODELS,
    RateParams,
    lb_asymptotic,
    lb_direct,
    lb_reverse,
    rate_point,
    upper_bound,
)

SWEEP_VARIABLES = ("mu", "distance", "frequency", "exclusion_radius")
SCHEMES = ("direct", "reverse", "best", "upper")
GEOMETRIES = ("exclusion_zone", "beam")
GRID_SCALES = ("linear", "log")

#: flags that mark a row as failed; anything else (e.g. "unbounded") is
#: informational
ERROR_FLAGS = frozenset(
    {
        "farfield_violation",
        "degenerate_channel",
        "quadrature_error",
        "invalid_geometry",
    }
)

# power scan for the optimizer; wide enough for every preset regime
MU_SCAN_LOW = 1e-4
MU_SCAN_HIGH = 1e7
_POINTS_PER_DECADE = 10
_GOLDEN_TOL = math.log10(1.0 + 1e-6)  # relative tolerance 1e-6 in mu
_EDGE_SLACK = 1e-9
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FixedParams:
    """Flat record of everything a sweep holds constant.

    Fields the chosen geometry does not use -- or that the swept variable
    supplies -- stay ``None``; :func:`fixed_problems` knows which
    combinations are complete.  Lengths are meters except ``L_km``;
    ``lambda_nm`` is nanometers.  ``unrestricted_eve`` forces kappa to 1
    (Eve collects all lost light), giving reference curves for the
    no-restriction scenario with otherwise identical geometry.
    """

    geometry: str
    r_a_m: float | None = None
    r_b_m: float | None = None
    r_ex_m: float | None = None
    w0_m: float | None = None
    r_e_m: float | None = None
    eve_offset_m: float | None = None
    L_km: float | None = None
    lambda_nm: float | None = None
    frequency_hz: float | None = None
    temperature_k: float = 3.0
    beta: float = 1.0
    eve_noise_model: str = "consistent"
    unrestricted_eve: bool = False
    mu: float | None = None


def make_grid(
    start: float, stop: float, points: int, scale: str = "linear"
) -> tuple[float, ...]:
    """Deterministic sweep grid.

    Every grid in the package is produced here, so a grid serialized as
    (start, stop, points, scale) regenerates bit-identically.
    """
    if scale not in GRID_SCALES:
        raise ValueError(f"scale must be one of {GRID_SCALES}, got {scale!r}")
    if points < 2:
        raise ValueError(f"a grid needs at least 2 points, got {points}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ValueError("grid endpoints must be finite")
    if stop <= start:
        raise ValueError(f"grid needs stop > start, got [{start}, {stop}]")
    if scale == "log":
        if start <= 0:
            raise ValueError("log grids need a positive start")
        values = np.logspace(math.log10(start), math.log10(stop), points)
    else:
        values = np.linspace(start, stop, points)
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class GridSpec:
    """Compact grid descriptor, the serialized form of :func:`make_grid`."""

    start: float
    stop: float
    points: int
    scale: str = "linear"

    def values(self) -> tuple[float, ...]:
        return make_grid(self.start, self.stop, self.points, self.scale)


@dataclass(frozen=True)
class SweepSpec:
    """One declarative sweep: a variable, its grid, and fixed parameters.

    ``grid`` may be given explicitly or generated from ``grid_spec``;
    keeping the descriptor around lets configs stay readable while still
    round-tripping exactly.  ``schemes`` names the curves this sweep is
    meant to produce; every row always carries all rate columns, but the
    optimizer targets the named scheme when there is exactly one of
    "direct"/"reverse" and the clamped best otherwise.
    """

    variable: str
    fixed: FixedParams
    schemes: tuple[str, ...] = ("best",)
    optimize_mu: bool = False
    grid: tuple[float, ...] | None = None
    grid_spec: GridSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if self.grid is None and self.grid_spec is not None:
            object.__setattr__(self, "grid", self.grid_spec.values())
        elif self.grid is not None:
            object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))


class SweepValidationError(ValueError):
    """Invalid sweep request; ``problems`` holds one message per field."""

    def __init__(self, problems):
        self.problems = tuple(problems)
        super().__init__("invalid sweep spec: " + "; ".join(self.problems))


def fixed_problems(
    fixed: FixedParams, swept: str | None = None, optimizing: bool = False
) -> list[str]:
    """Validate a fixed-parameter record; returns messages, empty if fine.

    ``swept`` names the sweep variable whose value arrives per grid point;
    the corresponding fixed field must then be left out.
    """
    problems = []
    if fixed.geometry not in GEOMETRIES:
        problems.append(
            f"geometry: must be one of {GEOMETRIES}, got {fixed.geometry!r}"
        )
        return problems  # cannot tell which other fields apply

    if fixed.geometry == "exclusion_zone":
        required = ["r_a_m", "r_b_m", "r_ex_m"]
        forbidden = ["w0_m", "r_e_m", "eve_offset_m"]
    else:
        required = ["w0_m", "r_a_m", "r_b_m", "r_e_m", "r_ex_m"]
        forbidden = []
    if swept == "exclusion_radius":
        required.remove("r_ex_m")
        forbidden.append("r_ex_m")
    for name in required:
        value = getattr(fixed, name)
        if value is None:
            problems.append(f"{name}: required for {fixed.geometry} geometry")
        elif value <= 0:
            problems.append(f"{name}: must be positive, got {value}")
    for name in forbidden:
        if getattr(fixed, name) is not None:
            if name == "r_ex_m":
                problems.append(f"{name}: supplied by the swept variable")
            else:
                problems.append(
                    f"{name}: not a parameter of {fixed.geometry} geometry"
                )

    if fixed.r_ex_m is not None and fixed.r_b_m is not None:
        if fixed.r_ex_m < fixed.r_b_m:
            problems.append(
                "r_ex_m: exclusion zone must cover Bob's aperture "
                "(r_ex_m >= r_b_m)"
            )
    if (
        fixed.geometry == "beam"
        and fixed.eve_offset_m is not None
        and fixed.r_ex_m is not None
        and fixed.r_e_m is not None
        and fixed.eve_offset_m < fixed.r_ex_m + fixed.r_e_m - 1e-12
    ):
        problems.append(
            "eve_offset_m: Eve's aperture must stay outside the exclusion "
            "zone (eve_offset_m >= r_ex_m + r_e_m)"
        )

    if swept == "distance":
        if fixed.L_km is not None:
            problems.append("L_km: supplied by the swept variable")
    elif fixed.L_km is None:
        problems.append("L_km: required")
    elif fixed.L_km <= 0:
        problems.append(f"L_km: must be positive, got {fixed.L_km}")

    if swept == "frequency":
        if fixed.lambda_nm is not None or fixed.frequency_hz is not None:
            problems.append(
                "lambda_nm/frequency_hz: supplied by the swept variable"
            )
    else:
        given = [
            name
            for name in ("lambda_nm", "frequency_hz")
            if getattr(fixed, name) is not None
        ]
        if len(given) != 1:
            problems.append("lambda_nm/frequency_hz: exactly one required")
        elif getattr(fixed, given[0]) <= 0:
            problems.append(
                f"{given[0]}: must be positive, got {getattr(fixed, given[0])}"
            )

    if fixed.temperature_k <= 0:
        problems.append(
            f"temperature_k: must be positive, got {fixed.temperature_k}"
        )
    if not 0.0 < fixed.beta <= 1.0:
        problems.append(f"beta: must be in (0, 1], got {fixed.beta}")
    if fixed.eve_noise_model not in EVE_NOISE_MODELS:
        problems.append(
            f"eve_noise_model: must be one of {EVE_NOISE_MODELS}, "
            f"got {fixed.eve_noise_model!r}"
        )

    if swept == "mu":
        if fixed.mu is not None:
            problems.append("mu: supplied by the swept variable")
    elif optimizing:
        if fixed.mu is not None:
            problems.append("mu: superfluous when input power is optimized")
    elif fixed.mu is None:
        problems.append("mu: required unless swept or optimized")
    elif fixed.mu < 0:
        problems.append(f"mu: must be >= 0, got {fixed.mu}")
    return problems


def spec_problems(spec: SweepSpec) -> list[str]:
    """All validation problems of a sweep spec (empty when valid)."""
    problems = []
    variable_ok = spec.variable in SWEEP_VARIABLES
    if not variable_ok:
        problems.append(
            f"variable: must be one of {SWEEP_VARIABLES}, got {spec.variable!r}"
        )

    grid = spec.grid
    if grid is None:
        problems.append("grid: required (explicit values or a descriptor)")
    else:
        if len(grid) < 2:
            problems.append("grid: needs at least 2 values")
        if any(not math.isfinite(v) for v in grid):
            problems.append("grid: all values must be finite")
        elif any(b <= a for a, b in zip(grid, grid[1:])):
            problems.append("grid: values must be strictly increasing")
        if variable_ok and grid:
            if spec.variable == "mu":
                if grid[0] < 0:
                    problems.append("grid: mu values must be >= 0")
            elif grid[0] <= 0:
                problems.append(f"grid: {spec.variable} values must be positive")
        if spec.grid_spec is not None and grid != spec.grid_spec.values():
            problems.append(
                "grid: explicit values disagree with the grid descriptor"
            )

    if not spec.schemes:
        problems.append("schemes: at least one required")
    else:
        unknown = [s for s in spec.schemes if s not in SCHEMES]
        if unknown:
            problems.append(f"schemes: unknown {unknown}, pick from {SCHEMES}")
        if len(set(spec.schemes)) != len(spec.schemes):
            problems.append("schemes: duplicate entries")

    if spec.variable == "mu" and spec.optimize_mu:
        problems.append("optimize_mu: cannot optimize the swept variable")

    if variable_ok:
        problems += fixed_problems(spec.fixed, spec.variable, spec.optimize_mu)
        if (
            spec.variable == "exclusion_radius"
            and grid
            and spec.fixed.r_b_m is not None
            and grid[0] < spec.fixed.r_b_m
        ):
            problems.append(
                "grid: exclusion radii must cover Bob's aperture (>= r_b_m)"
            )
    return problems


def ensure_valid(spec: SweepSpec) -> None:
    problems = spec_problems(spec)
    if problems:
        raise SweepValidationError(problems)


def _photon(fixed: FixedParams, variable, value) -> tuple[float, float]:
    """(frequency in Hz, wavelength in m) at one grid point."""
    if variable == "frequency":
        f = float(value)
        return f, SPEED_OF_LIGHT / f
    if fixed.frequency_hz is not None:
        return fixed.frequency_hz, SPEED_OF_LIGHT / fixed.frequency_hz
    wavelength = fixed.lambda_nm * 1e-9
    return SPEED_OF_LIGHT / wavelength, wavelength


def channel_at(
    fixed: FixedParams, variable: str | None = None, value: float | None = None
) -> ChannelPoint:
    """Channel triple at one operating point, thermal occupation included.

    With ``variable``/``value`` given, that sweep variable is taken from
    ``value`` instead of the fixed record.
    """
    f, wavelength = _photon(fixed, variable, value)
    L = (value if variable == "distance" else fixed.L_km) * 1e3
    r_ex = value if variable == "exclusion_radius" else fixed.r_ex_m
    if fixed.geometry == "exclusion_zone":
        geom = ExclusionZoneGeometry(
            r_a=fixed.r_a_m, r_b=fixed.r_b_m, r_ex=r_ex, L=L
        )
        point = farfield_channel(geom, 2.0 * math.pi * f)
    else:
        geom = BeamGeometry(
            w0=fixed.w0_m,
            r_a=fixed.r_a_m,
            r_b=fixed.r_b_m,
            r_e=fixed.r_e_m,
            r_ex=r_ex,
            L=L,
            eve_offset=fixed.eve_offset_m,
        )
        point = beam_channel(geom, wavelength)
    kappa = 1.0 if fixed.unrestricted_eve else point.kappa
    return ChannelPoint(
        eta=point.eta, kappa=kappa, n_e=blackbody_ne(f, fixed.temperature_k)
    )


@dataclass(frozen=True)
class OptimumReport:
    """Outcome of one input-power optimization.

    ``unbounded`` means the rate keeps growing with power; ``mu_star`` is
    then infinite and ``rate_at_star`` holds the large-power asymptote.
    A channel with no positive rate anywhere reports ``mu_star = 0`` and
    rate 0.
    """

    mu_star: float
    rate_at_star: float
    unbounded: bool


def _scan_mus() -> np.ndarray:
    decades = math.log10(MU_SCAN_HIGH / MU_SCAN_LOW)
    count = int(round(decades * _POINTS_PER_DECADE)) + 1
    return np.logspace(math.log10(MU_SCAN_LOW), math.log10(MU_SCAN_HIGH), count)


def _rate_fn(channel, scheme, beta, eve_noise_model):
    if scheme == "direct":
        pick = lb_direct
    elif scheme == "reverse":
        pick = lb_reverse
    else:  # best: clamped maximum, without touching the upper bound

        def pick(params):
            return max(0.0, lb_direct(params), lb_reverse(params))

    def rate(mu: float) -> float:
        return pick(
            RateParams(
                mu=mu, channel=channel, beta=beta, eve_noise_model=eve_noise_model
            )
        )

    return rate


def _asymptote(channel: ChannelPoint, scheme: str) -> float:
    if scheme == "best":
        return max(
            lb_asymptotic(channel, "direct"), lb_asymptotic(channel, "reverse")
        )
    return lb_asymptotic(channel, scheme)


def _golden_max(f, lo: float, hi: float, tol: float = _GOLDEN_TOL):
    """Golden-section maximization of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    h = b - a
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def optimize_mu_for_channel(
    channel: ChannelPoint,
    scheme: str = "best",
    beta: float = 1.0,
    eve_noise_model: str = "consistent",
) -> OptimumReport:
    """Maximize one lower bound over the mean input photon number.

    Coarse log scan over [MU_SCAN_LOW, MU_SCAN_HIGH] (10 points/decade) to
    bracket a maximum, then golden-section refinement in log(mu).  A
    maximum at the scan's upper edge with positive slope over the last
    decade and a finite asymptote at least as high (within 1e-9) is
    declared unbounded.  Refinement assumes unimodality inside the
    bracket; the scanned maximum wins whenever it is higher, so the
    reported rate is never below any scanned value.
    """
    if scheme not in ("direct", "reverse", "best"):
        raise ValueError(
            f"scheme must be direct, reverse or best, got {scheme!r}"
        )
    rate = _rate_fn(channel, scheme, beta, eve_noise_model)
    mus = _scan_mus()
    values = [rate(float(m)) for m in mus]
    best = int(np.argmax(values))
    if values[best] <= 0.0:
        return OptimumReport(mu_star=0.0, rate_at_star=0.0, unbounded=False)

    if best == len(mus) - 1:
        if values[-1] > values[-1 - _POINTS_PER_DECADE]:
            try:
                asym = _asymptote(channel, scheme)
            except ValueError:
                asym = math.nan  # e.g. kappa = 0: no finite asymptote
            if math.isfinite(asym) and asym > values[-1] - _EDGE_SLACK:
                return OptimumReport(
                    mu_star=math.inf, rate_at_star=asym, unbounded=True
                )
        return OptimumReport(
            mu_star=float(mus[-1]), rate_at_star=values[-1], unbounded=False
        )

    lo = mus[best - 1] if best > 0 else mus[0]
    hi = mus[best + 1]
    t_star, refined = _golden_max(
        lambda t: rate(10.0**t), math.log10(lo), math.log10(hi)
    )
    if refined >= values[best]:
        return OptimumReport(
            mu_star=10.0**t_star, rate_at_star=refined, unbounded=False
        )
    return OptimumReport(
        mu_star=float(mus[best]), rate_at_star=values[best], unbounded=False
    )


def optimize_mu(fixed: FixedParams, scheme: str = "best") -> OptimumReport:
    """Optimize input power for a complete fixed-parameter record."""
    problems = fixed_problems(fixed, swept=None, optimizing=True)
    if problems:
        raise SweepValidationError(problems)
    return optimize_mu_for_channel(
        channel_at(fixed),
        scheme=scheme,
        beta=fixed.beta,
        eve_noise_model=fixed.eve_noise_model,
    )


@dataclass(frozen=True)
class SweepRow:
    """One table row.

    ``var`` is the grid value in its natural unit (km for distance, Hz
    for frequency, m for radii, dimensionless for mu).  Failed rows carry
    NaN in every numeric column and an error flag; unbounded-optimum rows
    hold the asymptotes with ``mu_used`` infinite.
    """

    var: float
    eta: float
    kappa: float
    n_e: float
    lb_direct: float
    lb_reverse: float
    lb_best: float
    ub: float
    mu_used: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[SweepRow, ...]

    @property
    def has_errors(self) -> bool:
        return any(set(row.flags) & ERROR_FLAGS for row in self.rows)


def _objective(schemes: tuple[str, ...]) -> str:
    if schemes in (("direct",), ("reverse",)):
        return schemes[0]
    return "best"


def _failed_row(value: float, flag: str) -> SweepRow:
    nan = math.nan
    return SweepRow(
        var=value,
        eta=nan,
        kappa=nan,
        n_e=nan,
        lb_direct=nan,
        lb_reverse=nan,
        lb_best=nan,
        ub=nan,
        mu_used=nan,
        flags=(flag,),
    )


def _evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    fixed = spec.fixed
    try:
        channel = channel_at(fixed, spec.variable, value)
    except FarFieldViolationError:
        return _failed_row(value, "farfield_violation")
    except DegenerateChannelError:
        return _failed_row(value, "degenerate_channel")
    except QuadratureError:
        return _failed_row(value, "quadrature_error")
    except ValueError:
        return _failed_row(value, "invalid_geometry")

    if spec.variable == "mu":
        mu_used = value
    elif spec.optimize_mu:
        report = optimize_mu_for_channel(
            channel,
            scheme=_objective(spec.schemes),
            beta=fixed.beta,
            eve_noise_model=fixed.eve_noise_model,
        )
        if report.unbounded:
            direct = lb_asymptotic(channel, "direct")
            reverse = lb_asymptotic(channel, "reverse")
            return SweepRow(
                var=value,
                eta=channel.eta,
                kappa=channel.kappa,
                n_e=channel.n_e,
                lb_direct=direct,
                lb_reverse=reverse,
                lb_best=max(0.0, direct, reverse),
                ub=upper_bound(channel),
                mu_used=math.inf,
                flags=("unbounded",),
            )
        mu_used = report.mu_star
    else:
        mu_used = fixed.mu

    result = rate_point(
        RateParams(
            mu=mu_used,
            channel=channel,
            beta=fixed.beta,
            eve_noise_model=fixed.eve_noise_model,
        )
    )
    return SweepRow(
        var=value,
        eta=channel.eta,
        kappa=channel.kappa,
        n_e=channel.n_e,
        lb_direct=result.lb_direct,
        lb_reverse=result.lb_reverse,
        lb_best=result.lb_best,
        ub=result.ub,
        mu_used=mu_used,
        flags=(),
    )


def thread_count(requested: int | None = None) -> int:
    """Worker count: explicit argument, else SKR_THREADS, else one per CPU."""
    if requested is None:
        raw = os.environ.get("SKR_THREADS", "").strip()
        if raw:
            try:
                requested = int(raw)
            except ValueError:
                raise ValueError(
                    f"SKR_THREADS must be an integer, got {raw!r}"
                ) from None
        else:
            requested = 0
    if requested < 0:
        raise ValueError(f"thread count must be >= 0, got {requested}")
    return requested if requested > 0 else (os.cpu_count() or 1)


def run_sweep(spec: SweepSpec, threads: int | None = None) -> ResultTable:
    """Evaluate a sweep grid point by point, in grid order.

    Rows are independent, so they may be computed on a thread pool; the
    rate functions are pure and the pool map preserves submission order,
    making the result identical for any worker count.
    """
    ensure_valid(spec)
    workers = thread_count(threads)
    if workers > 1 and len(spec.grid) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _evaluate_point(spec, v), spec.grid))
    else:
        rows = [_evaluate_point(spec, v) for v in spec.grid]
    return ResultTable(rows=tuple(rows))

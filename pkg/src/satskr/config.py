"""Flat ``key=value`` run configuration: parsing, validation, serialization.

The format is deliberately primitive -- one key per line, ``#`` starts a
comment -- so that any tool (or person) can write and diff it.  Parsing is
strict: unknown keys, duplicate keys, missing required keys and malformed
values are all reported by name, and every problem found is reported in
one go rather than one per run.

``serialize_sweep`` is the exact inverse of parsing a sweep config: specs
round-trip bit-identically because floats are written with ``repr`` (the
shortest exact form) and grids travel as their generating descriptor.
"""
from __future__ import annotations

from dataclasses import dataclass

from .sweeps import (
    FixedParams,
    GridSpec,
    SweepSpec,
    fixed_problems,
    make_grid,
    spec_problems,
)

MODES = ("rate", "sweep", "optimize", "figure")

# keys shared by every mode that evaluates a channel
_FIXED_FLOAT_KEYS = (
    "r_a_m",
    "r_b_m",
    "r_ex_m",
    "w0_m",
    "r_e_m",
    "eve_offset_m",
    "L_km",
    "lambda_nm",
    "frequency_hz",
    "temperature_k",
    "beta",
    "mu",
)
_FIXED_KEYS = _FIXED_FLOAT_KEYS + (
    "geometry",
    "eve_noise_model",
    "unrestricted_eve",
)
_SWEEP_KEYS = (
    "variable",
    "grid",
    "grid_start",
    "grid_stop",
    "grid_points",
    "grid_scale",
    "schemes",
    "optimize_mu",
)
KNOWN_KEYS = frozenset(
    ("mode", "output_path", "figure_id") + _FIXED_KEYS + _SWEEP_KEYS
)

_ALLOWED_BY_MODE = {
    "rate": frozenset(("mode", "output_path") + _FIXED_KEYS),
    "sweep": frozenset(("mode", "output_path") + _FIXED_KEYS + _SWEEP_KEYS),
    "optimize": frozenset(("mode", "output_path", "schemes") + _FIXED_KEYS),
    "figure": frozenset(("mode", "output_path", "figure_id")),
}


class ConfigError(ValueError):
    """Malformed or inconsistent configuration; ``problems`` lists each one."""

    def __init__(self, problems):
        self.problems = tuple(problems)
        super().__init__("invalid config: " + "; ".join(self.problems))


@dataclass(frozen=True)
class RunConfig:
    """One parsed CLI invocation."""

    mode: str
    fixed: FixedParams | None = None
    sweep: SweepSpec | None = None
    scheme: str = "best"
    output_path: str | None = None
    figure_id: str | None = None


def _parse_lines(text: str, problems: list[str]) -> dict[str, str]:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected key=value, got {line!r}")
            continue
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key in raw:
            problems.append(f"duplicate key '{key}'")
            continue
        raw[key] = value
    return raw


def _float_of(raw, key, problems):
    if key not in raw:
        return None
    try:
        return float(raw[key])
    except ValueError:
        problems.append(f"{key}: must be a number, got {raw[key]!r}")
        return None


def _bool_of(raw, key, problems, default=False):
    if key not in raw:
        return default
    value = raw[key].lower()
    if value in ("true", "false"):
        return value == "true"
    problems.append(f"{key}: must be true or false, got {raw[key]!r}")
    return default


def _build_fixed(raw, problems) -> FixedParams:
    values = {key: _float_of(raw, key, problems) for key in _FIXED_FLOAT_KEYS}
    # defaulted scalars keep their dataclass defaults when absent
    if values["temperature_k"] is None:
        values.pop("temperature_k")
    if values["beta"] is None:
        values.pop("beta")
    kwargs = dict(
        geometry=raw.get("geometry", ""),
        eve_noise_model=raw.get("eve_noise_model", "consistent"),
        unrestricted_eve=_bool_of(raw, "unrestricted_eve", problems),
        **values,
    )
    if not kwargs["geometry"]:
        problems.append("missing required key 'geometry'")
    return FixedParams(**kwargs)


def _build_grid(raw, problems):
    """Returns (grid, grid_spec); at most one is non-None."""
    explicit = "grid" in raw
    described = [k for k in ("grid_start", "grid_stop", "grid_points") if k in raw]
    if explicit and (described or "grid_scale" in raw):
        problems.append("grid: give either explicit values or a descriptor, not both")
        return None, None
    if explicit:
        try:
            return tuple(float(v) for v in raw["grid"].split(",")), None
        except ValueError:
            problems.append(f"grid: must be comma-separated numbers, got {raw['grid']!r}")
            return None, None
    if not described and "grid_scale" not in raw:
        problems.append("missing required key 'grid' (or grid_start/grid_stop/grid_points)")
        return None, None
    for key in ("grid_start", "grid_stop", "grid_points"):
        if key not in raw:
            problems.append(f"missing required key '{key}'")
    if len(described) < 3:
        return None, None
    start = _float_of(raw, "grid_start", problems)
    stop = _float_of(raw, "grid_stop", problems)
    try:
        points = int(raw["grid_points"])
    except ValueError:
        problems.append(f"grid_points: must be an integer, got {raw['grid_points']!r}")
        return None, None
    scale = raw.get("grid_scale", "linear")
    if None in (start, stop):
        return None, None
    try:
        make_grid(start, stop, points, scale)
    except ValueError as exc:
        problems.append(f"grid: {exc}")
        return None, None
    return None, GridSpec(start=start, stop=stop, points=points, scale=scale)


def _parse_schemes(raw, problems):
    if "schemes" not in raw:
        return ("best",)
    parts = tuple(s.strip() for s in raw["schemes"].split(",") if s.strip())
    if not parts:
        problems.append("schemes: at least one required")
    return parts


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration; raises :class:`ConfigError`
    listing every problem found."""
    problems: list[str] = []
    raw = _parse_lines(text, problems)

    for key in raw:
        if key not in KNOWN_KEYS:
            problems.append(f"unknown key '{key}'")
    if problems:
        raise ConfigError(problems)

    mode = raw.get("mode")
    if mode is None:
        raise ConfigError(["missing required key 'mode'"])
    if mode not in MODES:
        raise ConfigError([f"mode: must be one of {MODES}, got {mode!r}"])

    allowed = _ALLOWED_BY_MODE[mode]
    for key in raw:
        if key not in allowed:
            problems.append(f"'{key}' is not used in mode '{mode}'")
    output_path = raw.get("output_path")

    if mode == "figure":
        figure_id = raw.get("figure_id")
        if figure_id is None:
            problems.append("missing required key 'figure_id'")
        if problems:
            raise ConfigError(problems)
        return RunConfig(mode=mode, output_path=output_path, figure_id=figure_id)

    fixed = _build_fixed(raw, problems)

    if mode == "sweep":
        variable = raw.get("variable")
        if variable is None:
            problems.append("missing required key 'variable'")
        grid, grid_spec = _build_grid(raw, problems)
        schemes = _parse_schemes(raw, problems)
        optimize = _bool_of(raw, "optimize_mu", problems)
        if problems:
            raise ConfigError(problems)
        spec = SweepSpec(
            variable=variable,
            fixed=fixed,
            schemes=schemes,
            optimize_mu=optimize,
            grid=grid,
            grid_spec=grid_spec,
        )
        problems += spec_problems(spec)
        if problems:
            raise ConfigError(problems)
        return RunConfig(mode=mode, fixed=fixed, sweep=spec, output_path=output_path)

    if mode == "optimize":
        schemes = _parse_schemes(raw, problems)
        if len(schemes) != 1 or schemes[0] not in ("direct", "reverse", "best"):
            problems.append(
                "schemes: optimize mode needs exactly one of direct/reverse/best"
            )
        problems += fixed_problems(fixed, swept=None, optimizing=True)
        if problems:
            raise ConfigError(problems)
        return RunConfig(
            mode=mode, fixed=fixed, scheme=schemes[0], output_path=output_path
        )

    # rate
    problems += fixed_problems(fixed, swept=None, optimizing=False)
    if problems:
        raise ConfigError(problems)
    return RunConfig(mode=mode, fixed=fixed, output_path=output_path)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_sweep(spec: SweepSpec) -> str:
    """Config text that parses back to exactly this sweep spec."""
    lines = ["mode=sweep", f"variable={spec.variable}"]
    if spec.grid_spec is not None:
        gs = spec.grid_spec
        lines += [
            f"grid_start={_format_value(gs.start)}",
            f"grid_stop={_format_value(gs.stop)}",
            f"grid_points={gs.points}",
            f"grid_scale={gs.scale}",
        ]
    else:
        lines.append("grid=" + ",".join(repr(v) for v in spec.grid))
    lines.append("schemes=" + ",".join(spec.schemes))
    lines.append(f"optimize_mu={_format_value(spec.optimize_mu)}")

    fixed = spec.fixed
    lines.append(f"geometry={fixed.geometry}")
    for key in _FIXED_FLOAT_KEYS:
        value = getattr(fixed, key)
        if value is not None:
            lines.append(f"{key}={_format_value(value)}")
    lines.append(f"eve_noise_model={fixed.eve_noise_model}")
    if fixed.unrestricted_eve:
        lines.append("unrestricted_eve=true")
    return "\n".join(lines) + "\n"

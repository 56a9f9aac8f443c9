"""Parsing of the per-curve CSV files written by ``skr figure``.

Each file starts with a comment block::

    # fig10 curve 1 of 4
    # label: direct, r_ex=0.05 m
    # mode=sweep
    # variable=mu
    ...

followed by the fixed ten-column header and the data rows.  This module
reads that format back into :class:`CurveFile` records and knows how many
curve files each preset family is supposed to contain.  It never computes
anything: every number it exposes is a verbatim cell from the file.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

#: bit-exact column contract of the sweep CSV files
HEADER = "var,eta,kappa,n_e,lb_direct,lb_reverse,lb_best,ub,mu_used,flags"
COLUMNS = tuple(HEADER.split(","))

#: number of curve files per preset family, as published by ``skr figure``
FIGURE_CURVE_COUNTS = {
    "fig2": 4,
    "fig3": 4,
    "fig4": 3,
    "fig5": 4,
    "fig10": 4,
    "fig11": 4,
    "fig12": 4,
    "fig13": 6,
    "fig14": 4,
    "fig15": 4,
}

_TITLE_RE = re.compile(r"^# (\S+) curve (\d+) of (\d+)$")


class MalformedCurveError(ValueError):
    """A curve file is present but violates the CSV contract."""


class MissingCurvesError(FileNotFoundError):
    """Expected curve files are absent from the input directory."""


@dataclass(frozen=True)
class CurveFile:
    """One parsed curve: identity, legend label, sweep metadata, columns.

    ``columns`` maps each numeric column name to a tuple of floats in row
    order; ``flags`` holds the last column verbatim.  ``meta`` is the
    embedded sweep declaration (``variable``, ``schemes``, ``grid_scale``,
    geometry fields, ...) as written.
    """

    path: Path
    figure_id: str
    index: int
    total: int
    label: str
    meta: dict[str, str]
    columns: dict[str, tuple[float, ...]]
    flags: tuple[str, ...]

    @property
    def schemes(self) -> tuple[str, ...]:
        return tuple(self.meta.get("schemes", "best").split(","))

    @property
    def variable(self) -> str:
        return self.meta.get("variable", "var")


def curve_filename(figure_id: str, index: int) -> str:
    return f"{figure_id}_curve{index}.csv"


def expected_filenames(figure_id: str) -> list[str]:
    try:
        total = FIGURE_CURVE_COUNTS[figure_id]
    except KeyError:
        raise KeyError(
            f"unknown figure id {figure_id!r}; known: "
            + " ".join(sorted(FIGURE_CURVE_COUNTS))
        ) from None
    return [curve_filename(figure_id, i) for i in range(1, total + 1)]


def parse_curve_file(path: Path) -> CurveFile:
    """Read one curve CSV, raising :class:`MalformedCurveError` on any
    deviation from the contract (the message always names the file)."""

    def bad(reason: str) -> MalformedCurveError:
        return MalformedCurveError(f"{path}: {reason}")

    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise MissingCurvesError(f"{path}: {exc.strerror}") from exc

    if not lines:
        raise bad("file is empty")
    title = _TITLE_RE.match(lines[0])
    if title is None:
        raise bad("first line is not '# ID curve N of M'")
    figure_id, index, total = title.group(1), int(title.group(2)), int(title.group(3))

    if len(lines) < 2 or not lines[1].startswith("# label: "):
        raise bad("second line is not '# label: ...'")
    label = lines[1][len("# label: "):]

    meta: dict[str, str] = {}
    cursor = 2
    while cursor < len(lines) and lines[cursor].startswith("#"):
        body = lines[cursor][1:].strip()
        if "=" in body:
            key, _, value = body.partition("=")
            meta[key.strip()] = value.strip()
        cursor += 1

    if cursor >= len(lines) or lines[cursor] != HEADER:
        raise bad(f"missing header line {HEADER!r}")
    cursor += 1

    values: list[list[float]] = [[] for _ in COLUMNS[:-1]]
    flags: list[str] = []
    for line in lines[cursor:]:
        if not line:
            continue
        cells = line.split(",", maxsplit=len(COLUMNS) - 1)
        if len(cells) != len(COLUMNS):
            raise bad(f"row {line!r} does not have {len(COLUMNS)} columns")
        try:
            for store, cell in zip(values, cells):
                store.append(float(cell))
        except ValueError:
            raise bad(f"non-numeric cell in row {line!r}") from None
        flags.append(cells[-1])

    if len(flags) < 2:
        raise bad(f"expected at least 2 data rows, found {len(flags)}")

    return CurveFile(
        path=path,
        figure_id=figure_id,
        index=index,
        total=total,
        label=label,
        meta=meta,
        columns={
            name: tuple(column) for name, column in zip(COLUMNS, values)
        },
        flags=tuple(flags),
    )


def load_figure(figure_id: str, input_dir: Path) -> list[CurveFile]:
    """All curve files of one family, in curve order.

    Raises :class:`MissingCurvesError` listing every absent filename, so
    an empty directory reports the full expected set at once.
    """
    input_dir = Path(input_dir)
    names = expected_filenames(figure_id)
    missing = [n for n in names if not (input_dir / n).is_file()]
    if missing:
        raise MissingCurvesError(
            f"{input_dir}: missing curve files for {figure_id}: "
            + ", ".join(missing)
        )
    curves = [parse_curve_file(input_dir / n) for n in names]
    for position, curve in enumerate(curves, start=1):
        if curve.figure_id != figure_id or curve.index != position:
            raise MalformedCurveError(
                f"{curve.path}: header says {curve.figure_id} curve "
                f"{curve.index}, expected {figure_id} curve {position}"
            )
        if curve.total != len(names):
            raise MalformedCurveError(
                f"{curve.path}: header says {curve.total} curves, "
                f"expected {len(names)}"
            )
    return curves

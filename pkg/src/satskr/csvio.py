"""Bit-stable CSV output for sweep tables.

Every number is written as ``%.12g`` so that re-running a sweep with
identical inputs reproduces the file byte for byte (12 significant digits
is enough to keep distinct doubles distinct at the precision the engine
guarantees, while keeping files diff-friendly).  Infinities and NaNs are
written as ``inf``/``-inf``/``nan`` -- the Python float constructor reads
them back directly.
"""
from __future__ import annotations

import os

from .sweeps import ResultTable, SweepRow

HEADER = "var,eta,kappa,n_e,lb_direct,lb_reverse,lb_best,ub,mu_used,flags"


def format_value(x: float) -> str:
    return f"{x:.12g}"


def render_row(row: SweepRow) -> str:
    fields = [
        format_value(row.var),
        format_value(row.eta),
        format_value(row.kappa),
        format_value(row.n_e),
        format_value(row.lb_direct),
        format_value(row.lb_reverse),
        format_value(row.lb_best),
        format_value(row.ub),
        format_value(row.mu_used),
        ";".join(row.flags),
    ]
    return ",".join(fields)


def render_csv(table: ResultTable) -> str:
    """Header plus one line per row, LF line endings, trailing newline."""
    lines = [HEADER]
    lines.extend(render_row(row) for row in table.rows)
    return "\n".join(lines) + "\n"


def emit_csv(table: ResultTable, path: str | os.PathLike) -> None:
    with open(path, "w", newline="\n") as handle:
        handle.write(render_csv(table))


def parse_csv(text: str) -> ResultTable:
    """Inverse of :func:`render_csv`; comment lines (``#``) are skipped."""
    rows = []
    seen_header = False
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != HEADER:
                raise ValueError(f"unexpected CSV header: {line!r}")
            seen_header = True
            continue
        parts = line.split(",")
        if len(parts) != 10:
            raise ValueError(f"expected 10 columns, got {len(parts)}: {line!r}")
        flags = tuple(f for f in parts[9].split(";") if f)
        rows.append(SweepRow(*[float(p) for p in parts[:9]], flags=flags))
    if not seen_header:
        raise ValueError("no CSV header found")
    return ResultTable(rows=tuple(rows))

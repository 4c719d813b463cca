"""Text formats.

``.qnd`` / ``.grp``: optional ``#`` comment lines, then ``n``, then ``n`` rows of
``n`` integers (row index is the left argument).  Group tables must have the
identity at index 0.  ``.qpres``: see :func:`quandlekit.terms.parse_presentation`.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .certificates import Certificate, certificate_from_json, certificate_to_json
from .groups import FiniteGroup, group_from_table
from .quandles import FiniteQuandle, validate_quandle
from .terms import QuandlePresentation, parse_presentation


class FormatError(ValueError):
    pass


def parse_table(text: str) -> tuple[np.ndarray, str]:
    """Return the table and the first comment line (used as a name)."""
    name = ""
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            name = name or line[1:].strip()
            continue
        rows.append(line.split())
    if not rows or len(rows[0]) != 1:
        raise FormatError("expected the table size on the first line")
    try:
        n = int(rows[0][0])
        body = [[int(v) for v in r] for r in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer entry: {exc}") from None
    if n < 1 or len(body) != n or any(len(r) != n for r in body):
        raise FormatError(f"expected {n} rows of {n} integers")
    return np.array(body, dtype=np.int64), name


def format_table(table, name: str = "") -> str:
    T = np.asarray(table)
    width = len(str(T.shape[0] - 1))
    lines = [f"# {name}"] if name else []
    lines.append(str(T.shape[0]))
    lines += [" ".join(f"{v:>{width}d}" for v in row) for row in T.tolist()]
    return "\n".join(lines) + "\n"


def read_quandle(path) -> FiniteQuandle:
    T, name = parse_table(Path(path).read_text())
    return validate_quandle(T, name or Path(path).stem)


def write_quandle(path, Q: FiniteQuandle) -> None:
    Path(path).write_text(format_table(Q.table, Q.name))


def read_group(path) -> FiniteGroup:
    T, name = parse_table(Path(path).read_text())
    return group_from_table(T, name or Path(path).stem)


def write_group(path, G: FiniteGroup) -> None:
    Path(path).write_text(format_table(G.cayley, G.name))


def read_presentation(path) -> QuandlePresentation:
    return parse_presentation(Path(path).read_text())


def write_presentation(path, P: QuandlePresentation) -> None:
    Path(path).write_text(P.to_text())


def read_certificate(path) -> Certificate:
    return certificate_from_json(Path(path).read_text())


def write_certificate(path, c: Certificate) -> None:
    Path(path).write_text(certificate_to_json(c) + "\n")

"""CSV reading and writing with round-trip-exact float formatting."""

from __future__ import annotations

import csv

import numpy as np

from .exceptions import InvalidInput


def fmt(x):
    """17 significant digits: enough to round-trip any float64."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header, rows, comment=None):
    """Write a UTF-8, LF-terminated CSV; ``comment`` lines are prefixed with ``#``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(x) for x in row) + "\n")


def read_matrix(path):
    """Read a numeric CSV; an optional first non-comment row is taken as the header.

    Returns ``(header or None, float64 array of shape (n, ncols))``.
    """
    header = None
    rows = []
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            lines = (ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#"))
            for lineno, rec in enumerate(csv.reader(lines), start=1):
                try:
                    rows.append([float(c) for c in rec])
                except ValueError:
                    if lineno == 1:
                        header = [c.strip() for c in rec]
                        continue
                    raise InvalidInput(f"{path}: non-numeric value in data row {lineno}") from None
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    if not rows:
        return header, np.empty((0, len(header) if header else 0))
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise InvalidInput(f"{path}: rows have differing numbers of columns")
    return header, np.array(rows, dtype=np.float64)

"""Input validation helpers shared by the estimators and pipelines."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InvalidInput


def check_data_matrix(x, min_rows=1):
    """Return ``x`` as a finite float64 array of shape (n, 2), ``n >= min_rows``."""
    try:
        x = check_array(x, dtype=np.float64, ensure_all_finite=True, ensure_min_samples=1)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    if x.shape[1] != 2:
        raise InvalidInput(f"expected 2 columns, got {x.shape[1]}")
    if x.shape[0] < min_rows:
        raise InvalidInput(f"need at least {min_rows} rows, got {x.shape[0]}")
    return x


def check_unit_square(u, min_rows=1):
    """Like :func:`check_data_matrix`, and every entry strictly inside (0, 1)."""
    u = check_data_matrix(u, min_rows=min_rows)
    if not np.all((u > 0.0) & (u < 1.0)):
        raise InvalidInput("copula-scale data must lie strictly inside (0, 1)")
    return u

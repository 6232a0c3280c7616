"""Marshall-Olkin sampling of the bivariate Clayton copula.

For a frailty ``V ~ Gamma(1/theta, 1)`` and independent standard exponentials
``E1, E2``, the pair ``(psi(E1/V), psi(E2/V))`` with
``psi(t) = (1 + t)**(-1/theta)`` is Clayton distributed.

Draw order within a call of :func:`sample` on ``n`` rows is fixed: all ``n``
values of ``E1``, then all ``n`` values of ``E2``, then the ``n`` frailties.
"""

from __future__ import annotations

import os
import numpy as np

from ._pool import get_pool
from .copula import ClaytonCopula
from .exceptions import InvalidParameter
from .rng import stream

#: rows per chunk in :func:`sample_parallel`; part of the output format
CHUNK_SIZE = 4096

_TINY = np.finfo(np.float64).tiny
_ONE_MINUS = np.nextafter(1.0, 0.0)


def _check_count(n, name):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def _psi_open(theta, ratio):
    """``psi(ratio)`` clamped to [tiny, 1 - 2**-53]; returns (values, n_clamped)."""
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        out = np.exp(-np.log1p(ratio) / theta)
    bad = (out < _TINY) | (out > _ONE_MINUS)
    n_bad = int(np.count_nonzero(bad))
    if n_bad:
        out = np.clip(out, _TINY, _ONE_MINUS)
    return out, n_bad


def sample(c, n, r, return_clamped=False):
    """Draw ``n`` rows from the Clayton copula ``c`` using stream ``r``.

    Parameters
    ----------
    c : ClaytonCopula
    n : int
        Number of rows, at least 1.
    r : RngStream
        Advanced in place.
    return_clamped : bool, default False
        Also return how many entries had to be clamped into the open unit
        interval (``psi`` underflowing to 0 or rounding to 1).

    Returns
    -------
    ndarray of shape (n, 2), entries strictly inside (0, 1)
    """
    if not isinstance(c, ClaytonCopula):
        c = ClaytonCopula(c)
    n = _check_count(n, "n")
    e1 = r.exponential(n)
    e2 = r.exponential(n)
    v = r.gamma(1.0 / c.theta, n)
    with np.errstate(divide="ignore", over="ignore"):
        ratio = np.stack((e1 / v, e2 / v), axis=1)
    u, n_clamped = _psi_open(c.theta, ratio)
    return (u, n_clamped) if return_clamped else u


def _chunk(args):
    theta, n, seed, k = args
    return sample(ClaytonCopula(theta), n, stream(seed, k), return_clamped=True)


def chunk_plan(n):
    """Row counts of the fixed chunk schedule for ``n`` rows."""
    full, rest = divmod(n, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def sample_parallel(c, n, seed, workers=1, return_clamped=False):
    """Draw ``n`` rows with a fixed chunk schedule spread over ``workers`` processes.

    Rows are cut into chunks of :data:`CHUNK_SIZE`; chunk ``k`` is drawn from
    ``stream(seed, k)``. The result depends on ``(theta, n, seed)`` only, never
    on ``workers``.
    """
    if not isinstance(c, ClaytonCopula):
        c = ClaytonCopula(c)
    n = _check_count(n, "n")
    workers = _check_count(workers, "workers")
    tasks = [(c.theta, m, seed, k) for k, m in enumerate(chunk_plan(n))]
    if workers == 1 or len(tasks) == 1:
        parts = [_chunk(t) for t in tasks]
    else:
        parts = list(get_pool(workers).map(_chunk, tasks))
    u = np.concatenate([p[0] for p in parts])
    if return_clamped:
        return u, sum(p[1] for p in parts)
    return u


def default_workers():
    """Worker count from ``CLAYTONMC_WORKERS``, falling back to 1."""
    raw = os.environ.get("CLAYTONMC_WORKERS", "")
    try:
        w = int(raw)
    except ValueError:
        return 1
    return w if w >= 1 else 1

"""Parameter-recovery study and worker-scaling benchmark."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from ._pool import get_pool, shutdown_pools
from .copula import ClaytonCopula
from .estimation import FitOptions, fit_mle
from .exceptions import CopulaError, InvalidParameter
from .rng import stream
from .sampling import sample


@dataclass(frozen=True)
class RecoveryRecord:
    theta_true: float
    theta_hat: float
    n: int
    seed: int
    converged: bool


@dataclass(frozen=True)
class ScalingRecord:
    workers: int
    wall_time_seconds: float
    repetitions: int


def linear_grid(lo, hi, k):
    """``k`` equally spaced values from ``lo`` to ``hi``, both endpoints exact."""
    lo, hi = float(lo), float(hi)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 2 or not lo < hi:
        raise InvalidParameter(f"linear_grid needs lo < hi and k >= 2, got ({lo}, {hi}, {k!r})")
    grid = np.linspace(lo, hi, int(k))
    grid[-1] = hi
    return grid.tolist()


def _recover_one(args):
    k, theta, n, seed, opts = args
    u = sample(ClaytonCopula(theta), n, stream(seed, k))
    try:
        fit = fit_mle(u, opts)
        return RecoveryRecord(theta, fit.theta_hat, n, seed, fit.converged)
    except CopulaError as exc:
        return RecoveryRecord(theta, getattr(exc, "theta", None) or float("nan"), n, seed, False)


def run_recovery(grid, n=1000, seed=0, workers=1, opts=None):
    """Sample and refit once per grid value.

    Grid value ``k`` is sampled from ``stream(seed, k)`` and fitted directly on
    the copula scale. Records come back in grid order and do not depend on
    ``workers``. A failed fit is recorded with ``converged=False``.
    """
    grid = [float(t) for t in grid]
    if not grid or any(not t > 0.0 for t in grid):
        raise InvalidParameter("grid values must all be > 0")
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    if workers < 1:
        raise InvalidParameter(f"workers must be >= 1, got {workers}")
    opts = FitOptions() if opts is None else opts
    tasks = [(k, t, int(n), seed, opts) for k, t in enumerate(grid)]
    if workers == 1:
        return [_recover_one(t) for t in tasks]
    return list(get_pool(workers).map(_recover_one, tasks))


def run_scaling_bench(worker_counts, grid=None, n=1000, seed=0, reps=3):
    """Median wall time of :func:`run_recovery` for each worker count.

    Raises ``RuntimeError`` if the recovered estimates differ between worker
    counts.
    """
    worker_counts = list(worker_counts)
    if not worker_counts or any(w < 1 for w in worker_counts):
        raise InvalidParameter("worker_counts must be a non-empty list of counts >= 1")
    if reps < 1:
        raise InvalidParameter(f"reps must be >= 1, got {reps}")
    grid = linear_grid(0.1, 3.0, 20) if grid is None else grid

    records = []
    reference = None
    for w in worker_counts:
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            out = run_recovery(grid, n, seed, w)
            times.append(time.perf_counter() - t0)
        if reference is None:
            reference = out
        elif out != reference:
            raise RuntimeError(f"recovery results changed with workers={w}")
        records.append(ScalingRecord(w, statistics.median(times), reps))
        shutdown_pools()
    return records


def recovery_summary(records):
    """Pearson correlation and mean relative error of the converged records."""
    ok = [r for r in records if r.converged]
    t = np.array([r.theta_true for r in ok])
    h = np.array([r.theta_hat for r in ok])
    corr = float(np.corrcoef(t, h)[0, 1]) if len(ok) >= 2 else float("nan")
    mre = float(np.mean(np.abs(h - t) / t)) if ok else float("nan")
    return {"correlation": corr, "mean_relative_error": mre, "converged": len(ok), "total": len(records)}

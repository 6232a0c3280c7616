"""Monte Carlo Value-at-Risk and expected shortfall under a fitted Clayton copula.

Pipeline: rank the data and fit theta, simulate ``N`` copula rows, map each
coordinate back through the empirical quantile of its data column, average
the two coordinates, and read VaR / ES off the order statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_data_matrix
from .copula import ClaytonCopula
from .estimation import FitOptions, fit_mle, pseudo_observations
from .exceptions import CopulaError, DomainError, EmptyTail, InvalidParameter, PipelineError
from .sampling import sample_parallel


def order_index(p, n):
    """1-based index ``ceil(p * n)`` with ``p`` read as its shortest decimal form.

    ``0.07 * 100`` is 7.000000000000001 in binary floating point; the decimal
    reading gives the intended 7.
    """
    return max(1, math.ceil(Decimal(repr(float(p))) * n))


def _check_level(p, name):
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {p}")
    return p


def empirical_quantile(col, p):
    """``col[ceil(p n)]`` (1-based) of an ascending-sorted column."""
    p = _check_level(p, "p")
    col = np.asarray(col, dtype=float)
    if col.ndim != 1 or col.size == 0:
        raise DomainError("empirical_quantile needs a non-empty 1-d column")
    return col[order_index(p, col.size) - 1]


def _quantiles(sorted_col, p):
    # vectorised empirical_quantile; p already lies in (0, 1)
    n = sorted_col.size
    pn = p * n
    k = np.ceil(pn).astype(np.int64)
    # only p*n within a few ulps of an integer can round the wrong way
    near = np.abs(pn - np.rint(pn)) <= 4 * np.spacing(np.maximum(pn, 1.0))
    for i in np.flatnonzero(near):
        k[i] = order_index(p[i], n)
    return sorted_col[np.maximum(k, 1) - 1]


def _exact_mean(x):
    """Correctly rounded mean of finite floats (one rounding, order independent)."""
    mant, expo = np.frexp(x)
    ints = (mant * 2.0**53).astype(np.int64)
    expo = expo.astype(np.int64) - 53
    base = int(expo.min())
    total = 0
    for i, e in zip(ints.tolist(), (expo - base).tolist()):
        total += i << e
    return float(Fraction(total, x.size) * Fraction(2) ** base)


@dataclass
class AggregateSample:
    values: np.ndarray
    sorted: bool = False

    def sort(self):
        if not self.sorted:
            self.values = np.sort(self.values, kind="stable")
            self.sorted = True
        return self

    def __len__(self):
        return self.values.size


def aggregate(v, x):
    """Equal-weight aggregate ``(F1^-1(v_i1) + F2^-1(v_i2)) / 2`` for each row of ``v``."""
    v = np.atleast_2d(np.asarray(v, dtype=float))
    if v.shape[1] != 2 or not np.all((v > 0.0) & (v < 1.0)):
        raise DomainError("copula sample must have 2 columns with entries in (0, 1)")
    x = check_data_matrix(x, min_rows=1)
    d = 2
    total = np.zeros(v.shape[0])
    for j in range(d):
        total += _quantiles(np.sort(x[:, j]), v[:, j])
    return AggregateSample(total / d)


def _as_aggregate(a):
    if not isinstance(a, AggregateSample):
        a = AggregateSample(np.asarray(a, dtype=float).ravel())
    if len(a) == 0:
        raise DomainError("aggregate sample is empty")
    return a.sort()


def value_at_risk(a, alpha):
    """The ``ceil(alpha N)``-th order statistic of the aggregate."""
    alpha = _check_level(alpha, "alpha")
    a = _as_aggregate(a)
    return float(a.values[order_index(alpha, len(a)) - 1])


def expected_shortfall(a, alpha):
    """Mean of aggregate values strictly above VaR; returns ``(es, exceedances)``.

    The mean is computed exactly in rational arithmetic and rounded once.
    """
    a = _as_aggregate(a)
    var = value_at_risk(a, alpha)
    tail = a.values[a.values > var]
    if tail.size == 0:
        raise EmptyTail(
            f"no simulated value exceeds VaR={var!r} at alpha={alpha}; "
            "the upper tail is degenerate (increase N or lower alpha)"
        )
    return _exact_mean(tail), int(tail.size)


@dataclass(frozen=True)
class RiskReport:
    alpha: float
    big_n: int
    theta_hat: float
    var: float
    es: float
    exceedances: int
    n: int = 0
    log_likelihood: float = float("nan")
    fit_evaluations: int = 0
    clamped: int = 0


class ClaytonRiskEstimator(BaseEstimator):
    """Fit a Clayton copula to 2-column data and simulate VaR / ES of the mean.

    Parameters
    ----------
    alpha : float, default=0.95
    big_n : int, default=100000
        Number of simulated scenarios.
    seed : int, default=0
    workers : int, default=1
        Processes used for simulation; never changes the result.
    bracket : tuple, default=(1e-3, 50.0)

    Attributes
    ----------
    report_ : RiskReport
    var_, es_, theta_ : float
    """

    def __init__(self, alpha=0.95, big_n=100_000, seed=0, workers=1, bracket=(1e-3, 50.0)):
        self.alpha = alpha
        self.big_n = big_n
        self.seed = seed
        self.workers = workers
        self.bracket = bracket

    def fit(self, X, y=None):
        alpha = _check_level(self.alpha, "alpha")
        if isinstance(self.big_n, bool) or int(self.big_n) != self.big_n or self.big_n < 1:
            raise InvalidParameter(f"big_n must be a positive integer, got {self.big_n!r}")
        big_n = int(self.big_n)
        X = check_data_matrix(X, min_rows=2)

        try:
            fit = fit_mle(pseudo_observations(X), FitOptions(*map(float, self.bracket)))
        except CopulaError as exc:
            raise PipelineError("fit", exc) from exc
        try:
            v, clamped = sample_parallel(
                ClaytonCopula(fit.theta_hat), big_n, self.seed, self.workers, return_clamped=True
            )
        except CopulaError as exc:
            raise PipelineError("simulate", exc) from exc
        try:
            agg = aggregate(v, X)
        except CopulaError as exc:
            raise PipelineError("aggregate", exc) from exc
        try:
            var = value_at_risk(agg, alpha)
            es, exceedances = expected_shortfall(agg, alpha)
        except CopulaError as exc:
            raise PipelineError("tail", exc) from exc

        self.aggregate_ = agg
        self.report_ = RiskReport(
            alpha=alpha,
            big_n=big_n,
            theta_hat=fit.theta_hat,
            var=var,
            es=es,
            exceedances=exceedances,
            n=X.shape[0],
            log_likelihood=fit.log_likelihood,
            fit_evaluations=fit.evaluations,
            clamped=clamped,
        )
        self.theta_ = fit.theta_hat
        self.var_ = var
        self.es_ = es
        return self

    def get_report(self):
        check_is_fitted(self, "report_")
        return self.report_


def run_risk_pipeline(x, alpha=0.95, big_n=100_000, seed=0, workers=1):
    """Fit, simulate, aggregate and return the :class:`RiskReport`."""
    est = ClaytonRiskEstimator(alpha=alpha, big_n=big_n, seed=seed, workers=workers)
    return est.fit(x).report_

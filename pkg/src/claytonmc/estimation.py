"""Pseudo-observations and pseudo maximum-likelihood fitting of the Clayton parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_data_matrix, check_unit_square
from .copula import ClaytonCopula, log_density
from .exceptions import InvalidParameter, NoInteriorMaximum, NonFiniteObjective
from .optimize import brent_minimize

# boundary detection: a maximiser this close (in log theta) to an edge is not interior
_EDGE_FACTOR = 3.0


def pseudo_observations(x):
    """Column-wise ranks scaled by ``1 / (n + 1)``; ties get midranks."""
    x = check_data_matrix(x, min_rows=2)
    n = x.shape[0]
    return rankdata(x, method="average", axis=0) / (n + 1.0)


def log_likelihood(theta, p):
    """Clayton log-likelihood ``sum_i log c_theta(u_i1, u_i2)``.

    The sum is taken with :func:`math.fsum`, so it is correctly rounded and
    independent of summation order.
    """
    try:
        theta = float(theta)
    except (TypeError, ValueError):
        raise InvalidParameter(f"theta must be a real number, got {theta!r}") from None
    if not math.isfinite(theta) or theta <= 0.0:
        raise InvalidParameter(f"theta must be finite and > 0, got {theta!r}")
    p = check_unit_square(p)
    return _loglik(theta, p)


def _loglik(theta, p):
    with np.errstate(all="ignore"):
        terms = log_density(theta, p[:, 0], p[:, 1])
    return math.fsum(terms.tolist())


@dataclass(frozen=True)
class FitOptions:
    """Search settings for :func:`fit_mle`.

    ``tol`` is an absolute tolerance on ``log(theta)``.
    """

    bracket_lo: float = 1e-3
    bracket_hi: float = 50.0
    tol: float = 1e-6
    max_evaluations: int = 500

    def __post_init__(self):
        lo, hi = self.bracket_lo, self.bracket_hi
        if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo < hi):
            raise InvalidParameter(f"bracket must satisfy 0 < lo < hi, got ({lo}, {hi})")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise InvalidParameter(f"tol must be > 0, got {self.tol}")
        if int(self.max_evaluations) < 3:
            raise InvalidParameter("max_evaluations must be at least 3")


@dataclass(frozen=True)
class FitResult:
    theta_hat: float
    log_likelihood: float
    evaluations: int
    converged: bool
    bracket: tuple


def fit_mle(p, opts=None):
    """Maximise the Clayton log-likelihood of pseudo-observations ``p``.

    The search runs on ``t = log(theta)`` over ``[log lo, log hi]``.

    Raises
    ------
    NoInteriorMaximum
        The maximiser lies within a few tolerances of either end of the
        bracket; the exception carries the boundary estimate as ``theta``.
    NonFiniteObjective
        The log-likelihood was non-finite at every probed point.
    """
    opts = FitOptions() if opts is None else opts
    p = check_unit_square(p, min_rows=2)
    a, b = math.log(opts.bracket_lo), math.log(opts.bracket_hi)

    def neg(t):
        return -_loglik(math.exp(t), p)

    res = brent_minimize(neg, a, b, xtol=opts.tol, max_evaluations=int(opts.max_evaluations))
    if not math.isfinite(res.fun):
        raise NonFiniteObjective(
            f"log-likelihood non-finite at all {res.nfev} probed values of theta"
        )
    theta_hat = math.exp(res.x)
    edge = _EDGE_FACTOR * opts.tol
    if res.x - a <= edge or b - res.x <= edge:
        side = "lower" if res.x - a <= edge else "upper"
        raise NoInteriorMaximum(
            f"likelihood maximiser theta={theta_hat:.6g} sits at the {side} end of the "
            f"bracket [{opts.bracket_lo}, {opts.bracket_hi}]",
            theta=theta_hat,
            side=side,
        )
    return FitResult(
        theta_hat=theta_hat,
        log_likelihood=_loglik(theta_hat, p),
        evaluations=res.nfev,
        converged=res.converged,
        bracket=(opts.bracket_lo, opts.bracket_hi),
    )


class RankTransformer(TransformerMixin, BaseEstimator):
    """Map each column to its pseudo-observations ``rank / (n + 1)``.

    Stateless: ranks are always taken within the array being transformed.
    Chain with :class:`ClaytonMLE` to fit raw data::

        make_pipeline(RankTransformer(), ClaytonMLE())
    """

    def fit(self, X, y=None):
        X = check_data_matrix(X, min_rows=2)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        return pseudo_observations(X)

    def __sklearn_is_fitted__(self):
        return hasattr(self, "n_features_in_")


class ClaytonMLE(BaseEstimator):
    """Pseudo maximum-likelihood estimator for the Clayton parameter.

    Fits data already on the copula scale (entries in the open unit square).

    Parameters
    ----------
    bracket : tuple of float, default=(1e-3, 50.0)
        Search interval for theta.
    tol : float, default=1e-6
        Absolute tolerance on log(theta).
    max_evaluations : int, default=500

    Attributes
    ----------
    theta_ : float
    log_likelihood_ : float
    result_ : FitResult
    copula_ : ClaytonCopula
    """

    def __init__(self, bracket=(1e-3, 50.0), tol=1e-6, max_evaluations=500):
        self.bracket = bracket
        self.tol = tol
        self.max_evaluations = max_evaluations

    def _options(self):
        lo, hi = self.bracket
        return FitOptions(float(lo), float(hi), float(self.tol), int(self.max_evaluations))

    def fit(self, X, y=None):
        X = check_unit_square(X, min_rows=2)
        self.result_ = fit_mle(X, self._options())
        self.theta_ = self.result_.theta_hat
        self.log_likelihood_ = self.result_.log_likelihood
        self.copula_ = ClaytonCopula(self.theta_)
        self.n_features_in_ = 2
        return self

    def score_samples(self, X):
        """Per-row log-density under the fitted copula."""
        check_is_fitted(self, "theta_")
        X = check_unit_square(X)
        return log_density(self.theta_, X[:, 0], X[:, 1])

    def score(self, X, y=None):
        """Mean log-density per row."""
        return float(np.mean(self.score_samples(X)))

    def sample(self, n_samples=1, seed=0, workers=1):
        """Draw from the fitted copula with the chunked, seeded sampler."""
        from .sampling import sample_parallel

        check_is_fitted(self, "theta_")
        return sample_parallel(self.copula_, n_samples, seed, workers)

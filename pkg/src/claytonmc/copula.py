"""Bivariate Clayton copula restricted to positive dependence (theta > 0).

All evaluations are vectorised over ``u`` and ``v`` and broadcast like numpy
ufuncs; scalar inputs give scalar (0-d) results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DensityOverflow, DomainError, InvalidParameter

# log(DBL_MAX); u**-theta overflows once -theta*log(u) exceeds it
_LOG_MAX = math.log(np.finfo(np.float64).max)


def _check_theta(theta):
    try:
        theta = float(theta)
    except (TypeError, ValueError):
        raise InvalidParameter(f"theta must be a real number, got {theta!r}") from None
    if not math.isfinite(theta) or theta <= 0.0:
        raise InvalidParameter(f"theta must be finite and > 0, got {theta!r}")
    return theta


def log_sum_term(theta, log_u, log_v):
    """Return ``log(u**-theta + v**-theta - 1)`` from the logs of ``u`` and ``v``.

    Never forms ``u**-theta`` itself, so it stays finite when the power would
    overflow, and keeps full relative precision as ``theta -> 0``.
    """
    a = -theta * np.asarray(log_u, dtype=float)
    b = -theta * np.asarray(log_v, dtype=float)
    hi = np.maximum(a, b)
    lo = np.minimum(a, b)
    with np.errstate(over="ignore", invalid="ignore"):
        small = np.log1p(np.expm1(a) + np.expm1(b))
        large = hi + np.log1p(np.exp(lo - hi) - np.exp(-hi))
    return np.where(hi < 1.0, small, large)


def log_density(theta, u, v):
    """Unchecked Clayton log-density; the likelihood kernel.

    Inputs must already lie in the open unit square. Works entirely in the
    log domain.
    """
    log_u = np.log(u)
    log_v = np.log(v)
    return (
        math.log1p(theta)
        - (theta + 1.0) * (log_u + log_v)
        - (2.0 + 1.0 / theta) * log_sum_term(theta, log_u, log_v)
    )


def _as_closed(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not (np.all((u >= 0.0) & (u <= 1.0)) and np.all((v >= 0.0) & (v <= 1.0))):
        raise DomainError("cdf arguments must lie in the closed unit square [0, 1]^2")
    return u, v


def _as_open(u, v, what):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not (np.all((u > 0.0) & (u < 1.0)) and np.all((v > 0.0) & (v < 1.0))):
        raise DomainError(
            f"{what} is only defined on the open unit square (0, 1)^2; "
            "boundary points are singular"
        )
    return u, v


def _scalarize(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


@dataclass(frozen=True)
class ClaytonCopula:
    """Bivariate Clayton copula with dependence parameter ``theta > 0``.

    ``C(u, v) = (u**-theta + v**-theta - 1) ** (-1/theta)``.

    Instances are immutable; use :func:`make_copula` or the constructor, both
    of which validate ``theta``.
    """

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _check_theta(self.theta))

    def cdf(self, u, v):
        """Copula distribution function on the closed unit square.

        Boundary values are exact: ``C(u, 0) = C(0, v) = 0``, ``C(u, 1) = u``
        and ``C(1, v) = v``.
        """
        u, v = _as_closed(u, v)
        theta = self.theta
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s = log_sum_term(theta, np.log(u), np.log(v))
            out = np.exp(-s / theta)
        out = np.where(v == 1.0, u, out)
        out = np.where(u == 1.0, v, out)
        out = np.where((u == 0.0) | (v == 0.0), 0.0, out)
        return _scalarize(np.clip(out, 0.0, 1.0))

    def log_pdf(self, u, v):
        """Log-density on the open unit square.

        Raises
        ------
        DomainError
            If any point touches the boundary of the unit square.
        DensityOverflow
            If ``u**-theta`` or ``v**-theta`` exceeds the float64 range.
        """
        u, v = _as_open(u, v, "log_pdf")
        theta = self.theta
        if -theta * math.log(min(u.min(), v.min())) > _LOG_MAX:
            raise DensityOverflow(
                f"u**-theta overflows float64 for theta={theta} "
                f"at min(u, v)={min(u.min(), v.min())!r}"
            )
        return _scalarize(log_density(theta, u, v))

    def pdf(self, u, v):
        """Density ``(1+theta)(uv)**(-theta-1)(u**-theta+v**-theta-1)**(-1/theta-2)``."""
        return _scalarize(np.exp(self.log_pdf(u, v)))

    def generator(self, t):
        """Archimedean generator ``psi(t) = (1 + t) ** (-1/theta)`` for ``t >= 0``."""
        t = np.asarray(t, dtype=float)
        if not np.all(np.isfinite(t)) or np.any(t < 0.0):
            raise DomainError("generator argument must be finite and >= 0")
        return _scalarize(np.exp(-np.log1p(t) / self.theta))

    def generator_inverse(self, x):
        """Inverse generator ``x**-theta - 1`` for ``x`` in (0, 1]."""
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0.0) or np.any(x > 1.0):
            raise DomainError("generator inverse is defined on (0, 1]")
        return _scalarize(np.expm1(-self.theta * np.log(x)))


def make_copula(theta):
    """Validate ``theta`` and return a :class:`ClaytonCopula`."""
    return ClaytonCopula(theta)


def cdf(c, u, v):
    return c.cdf(u, v)


def pdf(c, u, v):
    return c.pdf(u, v)


def log_pdf(c, u, v):
    return c.log_pdf(u, v)


def generator(c, t):
    return c.generator(t)

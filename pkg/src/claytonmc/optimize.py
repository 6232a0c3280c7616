"""Bounded one-dimensional minimisation (Brent's golden-section/parabolic method)."""

from __future__ import annotations

import math
from dataclasses import dataclass

_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))
_SQRT_EPS = math.sqrt(2.220446049250313e-16)


@dataclass
class BrentResult:
    x: float
    fun: float
    nfev: int
    converged: bool


def brent_minimize(f, a, b, xtol=1e-6, max_evaluations=500):
    """Minimise ``f`` on ``[a, b]`` without evaluating the endpoints.

    Stops once the bracket around the current best point is narrower than
    roughly ``2 * xtol`` (plus a relative term of order ``sqrt(eps) * |x|``),
    or after ``max_evaluations`` calls of ``f``. Non-finite values of ``f``
    are treated as ``+inf``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")

    nfev = 0

    def fe(x):
        nonlocal nfev
        nfev += 1
        y = f(x)
        return y if math.isfinite(y) else math.inf

    x = w = v = a + _GOLDEN * (b - a)
    fx = fw = fv = fe(x)
    d = e = 0.0

    while True:
        xm = 0.5 * (a + b)
        tol1 = _SQRT_EPS * abs(x) + xtol / 3.0
        tol2 = 2.0 * tol1
        if abs(x - xm) <= tol2 - 0.5 * (b - a):
            return BrentResult(x, fx, nfev, True)
        if nfev >= max_evaluations:
            return BrentResult(x, fx, nfev, False)

        golden = True
        if abs(e) > tol1 and math.isfinite(fx) and math.isfinite(fw) and math.isfinite(fv):
            # parabola through (v, fv), (w, fw), (x, fx)
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            r, e = e, d
            if abs(p) < abs(0.5 * q * r) and q * (a - x) < p < q * (b - x):
                d = p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if xm >= x else -tol1
                golden = False
        if golden:
            e = (b - x) if x < xm else (a - x)
            d = _GOLDEN * e

        u = x + (d if abs(d) >= tol1 else math.copysign(tol1, d))
        fu = fe(u)

        if fu <= fx:
            if u < x:
                b = x
            else:
                a = x
            v, fv = w, fw
            w, fw = x, fx
            x, fx = u, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, fv = w, fw
                w, fw = u, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu

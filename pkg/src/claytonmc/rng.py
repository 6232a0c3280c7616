"""Seeded, splittable random streams and the scalar samplers built on them.

A stream is identified by ``(seed, index)``. The bit source is numpy's
``PCG64`` keyed by ``SeedSequence(entropy=seed, spawn_key=(index,))``; both
are covered by numpy's stream-compatibility guarantee, so a given pair yields
the same bits on every release and platform. Every variate below is derived
from those raw 64-bit words by code in this module, not by numpy's
distribution methods, which are free to change between numpy versions.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import InvalidParameter

GENERATOR_ID = "numpy.random.PCG64/SeedSequence(entropy=seed, spawn_key=(index,))"

#: hard cap on rejection rounds for one gamma request
MAX_GAMMA_ROUNDS = 10_000

_U64 = 2**64
_INV_2_53 = 2.0**-53


def _as_u64(x, name):
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InvalidParameter(f"{name} must be an integer, got {x!r}")
    x = int(x)
    if not 0 <= x < _U64:
        raise InvalidParameter(f"{name} must fit in an unsigned 64-bit integer, got {x}")
    return x


class RngStream:
    """One independent substream of a seeded family.

    ``RngStream(s, i)`` depends only on ``(s, i)``: creating or consuming
    other streams never changes its output. A stream must be used by a single
    worker at a time.

    Attributes
    ----------
    draws : int
        Number of raw 64-bit words consumed so far.
    max_gamma_rounds : int
        Largest number of rejection rounds any gamma request has needed.
    """

    def __init__(self, seed=0, index=0):
        self.seed = _as_u64(seed, "seed")
        self.index = _as_u64(index, "index")
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.index,))
        self._bits = np.random.PCG64(ss)
        self.draws = 0
        self.max_gamma_rounds = 0

    def __repr__(self):
        return f"RngStream(seed={self.seed}, index={self.index}, draws={self.draws})"

    # -- uniforms ---------------------------------------------------------

    def uniform(self, size=None):
        """Uniforms on the open interval (0, 1).

        Each value is ``(k + 1/2) / 2**53`` for the top 53 bits ``k`` of one
        raw word, so 0 and 1 cannot occur.
        """
        m = 1 if size is None else int(np.prod(size))
        raw = self._bits.random_raw(m)
        self.draws += m
        out = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53
        return float(out[0]) if size is None else out.reshape(size)

    def next_uniform(self):
        return self.uniform()

    # -- exponential ------------------------------------------------------

    def exponential(self, size=None):
        """Standard exponential variates ``-log(U)``, always > 0."""
        u = self.uniform(size)
        return -math.log(u) if size is None else -np.log(u)

    def next_exponential(self):
        return self.exponential()

    # -- normal (helper for the gamma sampler) ------------------------------

    def normal(self, size):
        """Standard normals by the Box-Muller transform, ``size`` values."""
        k = (size + 1) // 2
        u = self.uniform((2, k))
        r = np.sqrt(-2.0 * np.log(u[0]))
        phi = 2.0 * np.pi * u[1]
        return np.concatenate((r * np.cos(phi), r * np.sin(phi)))[:size]

    # -- gamma ------------------------------------------------------------

    def gamma(self, shape, size=None):
        """Gamma(shape, scale=1) variates.

        Uses the Marsaglia-Tsang squeeze/rejection method for ``shape >= 1``.
        For ``shape < 1`` a Gamma(shape + 1) draw ``G`` and a uniform ``U`` are
        combined as ``G * U**(1/shape)``; very small shapes may underflow to 0.
        """
        try:
            shape = float(shape)
        except (TypeError, ValueError):
            raise InvalidParameter(f"gamma shape must be a real number, got {shape!r}") from None
        if not math.isfinite(shape) or shape <= 0.0:
            raise InvalidParameter(f"gamma shape must be finite and > 0, got {shape!r}")
        m = 1 if size is None else int(np.prod(size))
        if shape < 1.0:
            g = self._gamma_ge1(shape + 1.0, m)
            u = self.uniform(m)
            with np.errstate(under="ignore"):
                out = g * np.exp(np.log(u) / shape)
        else:
            out = self._gamma_ge1(shape, m)
        return float(out[0]) if size is None else out.reshape(size)

    def next_gamma(self, shape):
        return self.gamma(shape)

    def _gamma_ge1(self, shape, m):
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        out = np.empty(m)
        filled = 0
        rounds = 0
        while filled < m:
            rounds += 1
            if rounds > MAX_GAMMA_ROUNDS:
                raise RuntimeError(
                    f"gamma sampler exceeded {MAX_GAMMA_ROUNDS} rejection rounds (shape={shape})"
                )
            need = m - filled
            x = self.normal(need)
            u = self.uniform(need)
            v = (1.0 + c * x) ** 3
            ok = v > 0.0
            with np.errstate(invalid="ignore", divide="ignore"):
                x2 = x * x
                accept = ok & (
                    (u < 1.0 - 0.0331 * x2 * x2)
                    | (np.log(u) < 0.5 * x2 + d * (1.0 - v + np.log(v)))
                )
            got = d * v[accept]
            out[filled:filled + got.size] = got
            filled += got.size
        self.max_gamma_rounds = max(self.max_gamma_rounds, rounds)
        return out


def stream(seed, index=0):
    """Return the independent substream ``index`` of the family keyed by ``seed``."""
    return RngStream(seed, index)


def next_uniform(r):
    return r.next_uniform()


def next_exponential(r):
    return r.next_exponential()


def next_gamma(r, shape):
    return r.next_gamma(shape)

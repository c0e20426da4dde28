"""Compact-interval arithmetic: the scalar type of every objective value.

Intervals are closed bounded subsets ``[lo, hi]`` of the real line with finite
endpoints. The module provides the Minkowski-style arithmetic (``+``, ``-``,
scalar ``*``), the generalized Hukuhara difference, the max-endpoint norm, and
the componentwise dominance order used to compare objective values.

All values are immutable and every operation is pure, so intervals can be
shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Interval",
    "ENDPOINT_SWAP_TOL",
    "add",
    "sub",
    "scalar_mul",
    "gh_diff",
    "norm",
    "dominates",
    "strictly_dominates",
]

# Endpoint inversions up to this size are treated as floating-point jitter
# (e.g. from min/max formulas) and silently swapped; anything larger is a bug
# in the caller and raises.
ENDPOINT_SWAP_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``lo <= hi`` and finite endpoints."""

    lo: float
    hi: float

    def __init__(self, lo: float, hi: float | None = None) -> None:
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            if lo - hi > ENDPOINT_SWAP_TOL:
                raise ValueError(f"inverted interval endpoints: lo={lo!r} > hi={hi!r}")
            lo, hi = hi, lo
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- arithmetic (Minkowski sum/difference, scalar scaling) --------------

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: Interval) -> Interval:
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, scalar: float) -> Interval:
        scalar = float(scalar)
        if scalar >= 0.0:
            return Interval(scalar * self.lo, scalar * self.hi)
        return Interval(scalar * self.hi, scalar * self.lo)

    __rmul__ = __mul__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def gh_diff(self, other: Interval) -> Interval:
        """Generalized Hukuhara difference ``[min(dlo, dhi), max(dlo, dhi)]``.

        The result R satisfies ``other + R == self`` or ``other == self - R``,
        whichever of the two decompositions exists.
        """
        dlo = self.lo - other.lo
        dhi = self.hi - other.hi
        return Interval(min(dlo, dhi), max(dlo, dhi))

    def norm(self) -> float:
        """Max-endpoint-magnitude norm ``max(|lo|, |hi|)``."""
        return max(abs(self.lo), abs(self.hi))

    # -- dominance order -----------------------------------------------------
    # self >= other  <=>  both endpoints of self are >= those of other, i.e.
    # other is at least as good everywhere (for minimization).

    def __ge__(self, other: Interval) -> bool:
        return self.lo >= other.lo and self.hi >= other.hi

    def __le__(self, other: Interval) -> bool:
        return other.__ge__(self)

    def __gt__(self, other: Interval) -> bool:
        return (self.lo > other.lo and self.hi >= other.hi) or (
            self.lo >= other.lo and self.hi > other.hi
        )

    def __lt__(self, other: Interval) -> bool:
        return other.__gt__(self)

    # -- misc ---------------------------------------------------------------

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def approx_eq(self, other: Interval, tol: float = 1e-12) -> bool:
        """Endpointwise comparison with explicit absolute tolerance.

        ``==`` stays exact; use this in tests and diagnostics.
        """
        return abs(self.lo - other.lo) <= tol and abs(self.hi - other.hi) <= tol

    def __str__(self) -> str:
        # 17 significant digits: round-trips float64 in CSV logs.
        return f"[{self.lo:.17g}, {self.hi:.17g}]"


def add(p: Interval, q: Interval) -> Interval:
    return p + q


def sub(p: Interval, q: Interval) -> Interval:
    return p - q


def scalar_mul(lam: float, p: Interval) -> Interval:
    return p * lam


def gh_diff(p: Interval, q: Interval) -> Interval:
    return p.gh_diff(q)


def norm(p: Interval) -> float:
    return p.norm()


def dominates(p: Interval, q: Interval) -> bool:
    """True iff ``q`` dominates ``p``: every endpoint of p is >= that of q."""
    return p >= q


def strictly_dominates(p: Interval, q: Interval) -> bool:
    """True iff ``q`` strictly dominates ``p`` (dominance with one strict endpoint)."""
    return p > q

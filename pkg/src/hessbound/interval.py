"""Closed-interval arithmetic and the spectral interval operators.

Intervals are closed, bounded subsets [lo, hi] of the reals.  All
operations return the exact image interval in round-to-nearest double
precision; no directed rounding is performed.  On top of the elementary
rules this module provides the four operators used by the bound engine:

* ``lambda_s`` -- encloses the spectrum of rank-1 matrices a a^T,
* ``lambda_t`` -- encloses the spectrum of symmetric terms a b^T + b a^T,
* ``lambda_r`` -- the interval hull,
* ``lambda_star`` -- tight bounds for 2x2 symmetric interval matrices.

Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import (
    DomainViolation,
    EmptySlice,
    InvalidInterval,
    LengthMismatch,
)

__all__ = [
    "Interval",
    "Box",
    "ZERO",
    "ONE",
    "point",
    "hull",
    "zero_widen",
    "lambda_s",
    "lambda_t",
    "lambda_r",
    "lambda_star",
]


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with finite endpoints, lo <= hi."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidInterval(f"non-finite endpoints [{lo}, {hi}]")
        if lo > hi:
            raise InvalidInterval(f"lo > hi in [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- elementary arithmetic -------------------------------------------

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        p = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(p), max(p))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def recip(self) -> "Interval":
        if self.lo <= 0.0 <= self.hi:
            raise DomainViolation("recip", self)
        return Interval(1.0 / self.hi, 1.0 / self.lo)

    def pow(self, m: int) -> "Interval":
        if m < 0 or m != int(m):
            raise ValueError(f"exponent must be a natural number, got {m}")
        if m == 0:
            return ONE
        if m == 1:
            return self
        lo_m, hi_m = self.lo**m, self.hi**m
        if self.lo > 0 or m % 2 == 1:
            return Interval(lo_m, hi_m)
        if self.hi < 0:  # m even
            return Interval(hi_m, lo_m)
        return Interval(0.0, max(lo_m, hi_m))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise DomainViolation("sqrt", self)
        return Interval(math.sqrt(self.lo), math.sqrt(self.hi))

    def exp(self) -> "Interval":
        try:
            return Interval(math.exp(self.lo), math.exp(self.hi))
        except OverflowError:
            raise InvalidInterval(f"exp overflow on {self}") from None

    def ln(self) -> "Interval":
        if self.lo <= 0.0:
            raise DomainViolation("ln", self)
        return Interval(math.log(self.lo), math.log(self.hi))

    def add_const(self, c: float) -> "Interval":
        return Interval(self.lo + c, self.hi + c)

    def scale(self, c: float) -> "Interval":
        if c >= 0:
            return Interval(c * self.lo, c * self.hi)
        return Interval(c * self.hi, c * self.lo)

    # -- predicates and helpers ------------------------------------------

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def encloses(self, other: "Interval", slack: float = 0.0) -> bool:
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mag(self) -> float:
        """Largest absolute value over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def __repr__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def point(x: float) -> Interval:
    return Interval(x, x)


def iv_binary(kind: str, a: Interval, b: Interval) -> Interval:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown binary operation {kind!r}")


def iv_unary(kind: str, a: Interval, c: float | None = None, m: int | None = None) -> Interval:
    if kind == "recip":
        return a.recip()
    if kind == "pow":
        return a.pow(m)
    if kind == "sqrt":
        return a.sqrt()
    if kind == "exp":
        return a.exp()
    if kind == "ln":
        return a.ln()
    if kind == "addConst":
        return a.add_const(c)
    if kind == "scale":
        return a.scale(c)
    raise ValueError(f"unknown unary operation {kind!r}")


class Box:
    """Axis-aligned hyperrectangle: an ordered tuple of intervals."""

    __slots__ = ("dims",)

    def __init__(self, dims: Iterable[Interval]):
        self.dims: Tuple[Interval, ...] = tuple(dims)
        if not self.dims:
            raise EmptySlice("a box must have at least one component")

    @classmethod
    def from_bounds(cls, bounds: Sequence[Tuple[float, float]]) -> "Box":
        return cls(Interval(lo, hi) for lo, hi in bounds)

    def __len__(self) -> int:
        return len(self.dims)

    def __getitem__(self, i: int) -> Interval:
        return self.dims[i]

    def __iter__(self):
        return iter(self.dims)

    def __eq__(self, other) -> bool:
        return isinstance(other, Box) and self.dims == other.dims

    def __repr__(self) -> str:
        return "Box(" + " x ".join(repr(d) for d in self.dims) + ")"

    def contains_point(self, x: Sequence[float], slack: float = 0.0) -> bool:
        if len(x) != len(self.dims):
            raise LengthMismatch(f"point of length {len(x)} vs box of length {len(self)}")
        return all(d.contains(v, slack) for d, v in zip(self.dims, x))

    def midpoint(self) -> Tuple[float, ...]:
        return tuple(0.5 * (d.lo + d.hi) for d in self.dims)

    def vertices(self):
        """All 2^n corner points, in lexicographic lo/hi order."""
        corners = [()]
        for d in self.dims:
            corners = [c + (e,) for c in corners for e in (d.lo, d.hi)]
        return corners


def _sum_sq_mag(a: Box) -> float:
    return sum(max(d.lo * d.lo, d.hi * d.hi) for d in a)


def lambda_s(a: Box) -> Interval:
    """Spectral enclosure for rank-1 matrices v v^T with v in the box ``a``.

    For a single component this is the exact square; otherwise the spectrum
    is {0 (multiple), |v|^2}, bounded by [0, sum of squared magnitudes].
    """
    if len(a) == 1:
        return a[0].pow(2)
    return Interval(0.0, _sum_sq_mag(a))


def lambda_t(a: Box, b: Box) -> Interval:
    """Spectral enclosure for symmetric terms u v^T + v u^T, u in a, v in b."""
    if len(a) != len(b):
        raise LengthMismatch(f"boxes of length {len(a)} and {len(b)}")
    if len(a) == 1:
        return (a[0] * b[0]).scale(2.0)
    beta = math.sqrt(_sum_sq_mag(a) * _sum_sq_mag(b))
    acc = Interval(-beta, beta)
    for ai, bi in zip(a, b):
        acc = acc + ai * bi
    return acc


def lambda_r(a: Interval, b: Interval) -> Interval:
    """Interval hull of two intervals."""
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


hull = lambda_r


def lambda_star(a: Interval, b: Interval, c: Interval) -> Interval:
    """Tight eigenvalue bounds for 2x2 symmetric matrices with diagonal
    entries in [a], [b] and off-diagonal entry in [c]."""
    d = 4.0 * max(c.lo * c.lo, c.hi * c.hi)
    lo = 0.5 * (a.lo + b.lo - math.sqrt((a.lo - b.lo) ** 2 + d))
    hi = 0.5 * (a.hi + b.hi + math.sqrt((a.hi - b.hi) ** 2 + d))
    return Interval(lo, hi)


def zero_widen(a: Interval) -> Interval:
    """Smallest interval containing both [a] and 0."""
    return Interval(min(a.lo, 0.0), max(a.hi, 0.0))

"""Rational intervals and outward-rounded natural logarithms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Tuple

_GUARD_BITS = 96


def _down(q: Fraction, bits: int = _GUARD_BITS) -> Fraction:
    return Fraction(floor(q * (1 << bits)), 1 << bits)


def _up(q: Fraction, bits: int = _GUARD_BITS) -> Fraction:
    return Fraction(ceil(q * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> "RationalInterval":
        return cls(Fraction(q), Fraction(q))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def inflate(self, eps) -> "RationalInterval":
        eps = Fraction(eps)
        return RationalInterval(self.lo - eps, self.hi + eps)

    def __add__(self, other):
        other = _coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval contains zero")
        return self * RationalInterval(1 / other.hi, 1 / other.lo)

    def max(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if self.lo >= 0:
            return RationalInterval(self.lo**n, self.hi**n)
        result = RationalInterval.point(1)
        for _ in range(n):
            result = result * self
        return result

    def to_float(self) -> Tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _coerce(x) -> RationalInterval:
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.point(Fraction(x))


def _atanh_bounds(t: Fraction, tol: Fraction) -> Tuple[Fraction, Fraction]:
    """Bounds on atanh(t) for 0 <= t <= 1/2 from the odd power series."""
    if t == 0:
        return Fraction(0), Fraction(0)
    t2 = t * t
    total = Fraction(0)
    term = t
    k = 0
    while True:
        total = _down(total + term / (2 * k + 1))
        term = _up(term * t2)
        k += 1
        tail = term / (2 * k + 1) / (1 - t2)
        if tail < tol:
            # outward rounding of terms and partial sums costs at most (k+1)^2 ulps
            slack = Fraction((k + 1) ** 2, 1 << _GUARD_BITS)
            return total - slack, _up(total + tail + slack)


@lru_cache(maxsize=None)
def _log2_bounds(tol: Fraction) -> Tuple[Fraction, Fraction]:
    lo, hi = _atanh_bounds(Fraction(1, 3), tol / 4)
    return 2 * lo, 2 * hi


def log_bounds(q, tol=Fraction(1, 10**15)) -> Tuple[Fraction, Fraction]:
    """Rational (lo, hi) with lo <= ln q <= hi and hi - lo small relative to ``tol``."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    if q == 1:
        return Fraction(0), Fraction(0)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    y = q / Fraction(2) ** k
    while y >= Fraction(4, 3):
        y /= 2
        k += 1
    while y < Fraction(2, 3):
        y *= 2
        k -= 1
    t = (y - 1) / (y + 1)
    tol = Fraction(tol)
    scale = abs(k) + 1
    a_lo, a_hi = _atanh_bounds(_down(abs(t)), tol / (4 * scale))
    b_lo, b_hi = _atanh_bounds(_up(abs(t)), tol / (4 * scale))
    if t >= 0:
        ly_lo, ly_hi = 2 * a_lo, 2 * b_hi
    else:
        ly_lo, ly_hi = -2 * b_hi, -2 * a_lo
    l2_lo, l2_hi = _log2_bounds(tol / (4 * scale))
    if k >= 0:
        return k * l2_lo + ly_lo, k * l2_hi + ly_hi
    return k * l2_hi + ly_lo, k * l2_lo + ly_hi


def log_interval(x: RationalInterval, tol=Fraction(1, 10**15)) -> RationalInterval:
    """Certified enclosure of ln over a positive interval."""
    lo, _ = log_bounds(x.lo, tol)
    _, hi = log_bounds(x.hi, tol)
    return RationalInterval(lo, hi)


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)

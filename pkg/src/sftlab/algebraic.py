"""Exact arithmetic in Q(lambda) = Q[x]/(m) for a real root lambda of an irreducible m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

from .errors import SignUndecided
from .intervals import RationalInterval
from .polynomials import (
    count_roots,
    interval_eval,
    pdivmod,
    peval,
    pmod,
    pmul,
    psub,
    refine_root,
    sturm_sequence,
    trim,
)

SIGN_REFINEMENT_CAP = Fraction(1, 2**256)


@dataclass(frozen=True)
class NumberField:
    """Q(lambda) with lambda isolated in ``root`` as a root of the monic ``modulus``."""

    modulus: Tuple[int, ...]
    root: RationalInterval

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in trim(self.modulus)))
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        lo, hi = self.root.lo, self.root.hi
        if lo == hi:
            if peval(self.modulus, lo) != 0:
                raise ValueError("point selector is not a root of the modulus")
        elif count_roots(sturm_sequence(self.modulus), lo, hi) != 1 or peval(self.modulus, hi) == 0:
            raise ValueError("selector does not isolate exactly one root")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def reduce(self, coeffs) -> Tuple[Fraction, ...]:
        r = pmod(tuple(Fraction(c) for c in coeffs), self.modulus)
        r = tuple(r) + (Fraction(0),) * (self.degree - len(r))
        return r

    def element(self, coeffs) -> "AlgebraicNumber":
        return AlgebraicNumber(self, self.reduce(coeffs))

    def rational(self, q) -> "AlgebraicNumber":
        return self.element((Fraction(q),))

    @property
    def generator(self) -> "AlgebraicNumber":
        return self.element((0, 1))

    def refined(self, width: Fraction) -> "NumberField":
        lo, hi = refine_root(self.modulus, self.root.lo, self.root.hi, width)
        return NumberField(self.modulus, RationalInterval(lo, hi))

    def same_field(self, other: "NumberField") -> bool:
        return self.modulus == other.modulus and self.root.overlaps(other.root)


@dataclass(frozen=True)
class AlgebraicNumber:
    """Element of Q(lambda) in the power basis 1, lambda, ..., lambda^(d-1)."""

    field: NumberField
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != self.field.degree:
            raise ValueError("representative has the wrong length")

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field.modulus != self.field.modulus:
                raise ValueError("elements of different fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        other = self._lift(other)
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return self.field.element(pmul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*a + t*m = 1
        r0, r1 = tuple(Fraction(c) for c in self.field.modulus), trim(self.coeffs)
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, psub(s0, pmul(q, s1))
        c = r1[0]
        return self.field.element(tuple(x / c for x in s1))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.field.modulus == other.field.modulus and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- integrality -----------------------------------------------------

    def is_integral(self) -> bool:
        """Integer coordinates in the power basis, i.e. membership in Z[lambda]."""
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coords(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("element is not in Z[lambda]")
        return tuple(int(c) for c in self.coeffs)

    # -- real embedding --------------------------------------------------

    def enclosure(self, width=None) -> RationalInterval:
        field = self.field if width is None else self.field.refined(width)
        lo, hi = interval_eval(self.coeffs, field.root.lo, field.root.hi)
        return RationalInterval(lo, hi)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        field = self.field
        while True:
            lo, hi = interval_eval(self.coeffs, field.root.lo, field.root.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            w = field.root.width
            if w <= SIGN_REFINEMENT_CAP:
                raise SignUndecided(f"sign of {self} undecided at width {w}")
            field = field.refined(w / 1024)

    def __float__(self):
        enc = self.enclosure(Fraction(1, 2**64))
        return float(enc.mid)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if k == 0 else ("*L" if k == 1 else f"*L^{k}")))
        return "(" + (" + ".join(terms) if terms else "0") + ")"


def common_denominator(values: Iterable[AlgebraicNumber]) -> int:
    den = 1
    for v in values:
        for c in v.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
    return den


def content(values: Sequence[AlgebraicNumber]) -> int:
    g = 0
    for v in values:
        for c in v.coeffs:
            g = gcd(g, int(c))
    return g

"""Ideals of Z[lambda, 1/lambda] generated by Perron eigenvector entries, and their classes.

A module M = R * gens over R = Z[lambda, 1/lambda] is stored through its
saturated lattice M & Z[lambda], which is a canonical full-rank sublattice
of Z^d in power-basis coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, gcd
from typing import List, Optional, Sequence, Tuple, Union

from .algebraic import AlgebraicNumber, NumberField
from .errors import RingMismatch
from .intervals import RationalInterval
from .lattices import hnf, inverse, lattice_intersection, matmul
from .polynomials import IntPolynomial
from .shifts import Sft
from .spectral import perron_data

DEFAULT_SEARCH_HEIGHT = 50
DEFAULT_SEARCH_BUDGET = 4000
MAX_CF_STEPS = 10_000


@dataclass(frozen=True)
class RingSpec:
    """Z[lambda, 1/lambda] for the real root of ``min_poly`` isolated in ``root``."""

    min_poly: IntPolynomial
    root: RationalInterval
    inverted: bool = True

    def __post_init__(self):
        if not self.min_poly.is_monic():
            raise ValueError("min_poly must be monic")
        if self.min_poly.coefficients[0] == 0:
            raise ValueError("lambda must be nonzero")

    @property
    def field(self) -> NumberField:
        return NumberField(self.min_poly.coefficients, self.root)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def lam_is_unit(self) -> bool:
        return abs(self.min_poly.coefficients[0]) == 1

    def same_ring(self, other: "RingSpec") -> bool:
        return self.min_poly == other.min_poly and self.root.overlaps(other.root)

    @classmethod
    def of_field(cls, field: NumberField) -> "RingSpec":
        return cls(IntPolynomial(field.modulus), field.root)


@dataclass(frozen=True)
class IdealRep:
    ring: RingSpec
    generators: Tuple[AlgebraicNumber, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens or all(g.is_zero() for g in gens):
            raise ValueError("an ideal needs a nonzero generator")
        for g in gens:
            if not g.is_integral():
                raise ValueError("generators must lie in Z[lambda]")
            if g.field.modulus != self.ring.min_poly.coefficients:
                raise RingMismatch("generator from a different field")
        object.__setattr__(self, "generators", gens)

    def scale(self, s: AlgebraicNumber) -> "IdealRep":
        return IdealRep(self.ring, tuple(s * g for g in self.generators))


def make_ideal(ring: RingSpec, generators: Sequence) -> IdealRep:
    field = ring.field
    gens = tuple(g if isinstance(g, AlgebraicNumber) else field.element(tuple(g)) for g in generators)
    return IdealRep(ring, gens)


def unit_ideal(ring: RingSpec) -> IdealRep:
    return IdealRep(ring, (ring.field.rational(1),))


def left_ideal(X: Sft) -> IdealRep:
    """Ideal of Z[lambda, 1/lambda] generated by the normalized left Perron eigenvector."""
    pd = perron_data(X)
    return IdealRep(RingSpec.of_field(pd.field), pd.left_eigenvector)


# -- saturated lattices ------------------------------------------------------

def _mult_matrix(ring: RingSpec) -> List[List[int]]:
    """Row i holds the coordinates of lambda * lambda^i."""
    field = ring.field
    d = ring.degree
    rows = []
    for i in range(d):
        e = field.element(tuple([0] * (i + 1) + [1]))
        rows.append([int(c) for c in e.coeffs])
    return rows


def saturated_lattice(I: IdealRep) -> Tuple[Tuple[int, ...], ...]:
    """HNF basis of R*I intersected with Z[lambda].

    Start from the Z[lambda]-span and repeatedly adjoin every v with
    lambda*v already inside; the chain is ascending in Z^d, hence stops.
    """
    ring = I.ring
    d = ring.degree
    field = ring.field
    lam = field.generator
    vecs = []
    for g in I.generators:
        e = g
        for _ in range(d):
            vecs.append(e.integer_coords())
            e = e * lam
    L = hnf(vecs, d)
    T = _mult_matrix(ring)
    Tinv = inverse(T)
    while True:
        meet = lattice_intersection(L, T, d)
        pulled = matmul([list(r) for r in meet], Tinv)
        assert all(Fraction(a).denominator == 1 for row in pulled for a in row)
        nxt = hnf([[int(a) for a in row] for row in pulled] + [list(r) for r in L], d)
        if nxt == L:
            return L
        L = nxt


def _check_ring(I: IdealRep, J: IdealRep) -> None:
    if not I.ring.same_ring(J.ring):
        raise RingMismatch("ideals live in different rings")


def module_equal(I: IdealRep, J: IdealRep) -> bool:
    _check_ring(I, J)
    return saturated_lattice(I) == saturated_lattice(J)


# -- verdicts -------------------------------------------------------------------

@dataclass(frozen=True)
class EqualClass:
    s: AlgebraicNumber
    t: AlgebraicNumber
    method: str = ""
    kind: str = "EqualClass"


@dataclass(frozen=True)
class DifferentClass:
    invariant: str
    kind: str = "DifferentClass"


@dataclass(frozen=True)
class Unknown:
    search_bound: int
    kind: str = "Unknown"


ClassVerdict = Union[EqualClass, DifferentClass, Unknown]


def verify_equal_class(I: IdealRep, J: IdealRep, s: AlgebraicNumber, t: AlgebraicNumber) -> bool:
    """Re-check s*I = t*J."""
    if s.is_zero() or t.is_zero():
        return False
    return module_equal(I.scale(s), J.scale(t))


def _integral_pair(alpha: AlgebraicNumber) -> Tuple[AlgebraicNumber, AlgebraicNumber]:
    """(s, t) in Z[lambda] with s / t = alpha and t a positive integer."""
    den = 1
    for c in alpha.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return alpha * den, alpha.field.rational(den)


# continued fractions of real quadratic irrationals

def _floor(x: AlgebraicNumber) -> int:
    guess = floor(float(x))
    while (x - guess).sign() < 0:
        guess -= 1
    while (x - (guess + 1)).sign() >= 0:
        guess += 1
    return guess


def _cf_orbit(tau: AlgebraicNumber):
    """Complete quotients tau_0, tau_1, ... until the first repetition.

    Returns (quotients, start of the period, partial quotients).
    """
    seen = {}
    quotients = []
    partials = []
    x = tau
    for _ in range(MAX_CF_STEPS):
        if x in seen:
            return quotients, seen[x], partials
        seen[x] = len(quotients)
        quotients.append(x)
        a = _floor(x)
        partials.append(a)
        x = (x - a).inverse()
    raise RuntimeError("continued fraction did not become periodic")


def _basis_elements(I: IdealRep) -> Tuple[AlgebraicNumber, AlgebraicNumber]:
    field = I.ring.field
    L = saturated_lattice(I)
    return field.element(L[0]), field.element(L[1])


def _quadratic_class(I: IdealRep, J: IdealRep) -> Optional[ClassVerdict]:
    (w1a, w2a), (w1b, w2b) = _basis_elements(I), _basis_elements(J)
    qa, start_a, pa = _cf_orbit(w2a / w1a)
    qb, start_b, pb = _cf_orbit(w2b / w1b)
    index_a = {x: k for k, x in enumerate(qa)}
    for j in range(start_b, len(qb)):
        i = index_a.get(qb[j])
        if i is None:
            continue
        # Z + Z tau_k = (tau_1 ... tau_k) (Z + Z tau_0), and Lambda = w1 (Z + Z tau_0)
        Pa = I.ring.field.rational(1)
        for x in qa[1 : i + 1]:
            Pa = Pa * x
        Pb = I.ring.field.rational(1)
        for x in qb[1 : j + 1]:
            Pb = Pb * x
        alpha = (Pa * w1b) / (Pb * w1a)
        s, t = _integral_pair(alpha)
        return EqualClass(s, t, "continued-fraction cycle")
    if I.ring.lam_is_unit:
        period_a = pa[start_a:]
        period_b = pb[start_b:]
        return DifferentClass(
            "reduced continued-fraction cycles of the lattice bases differ: "
            f"period {period_a} versus {period_b}"
        )
    return None


def _lattice_points(L, d: int, height: int):
    """Elements of the lattice with basis coordinates of max-norm exactly ``height``."""
    rng = range(-height, height + 1)
    for coeffs in product(rng, repeat=len(L)):
        if max(abs(c) for c in coeffs) != height:
            continue
        yield tuple(sum(c * row[k] for c, row in zip(coeffs, L)) for k in range(d))


def class_equivalent(
    I: IdealRep,
    J: IdealRep,
    height: int = DEFAULT_SEARCH_HEIGHT,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> ClassVerdict:
    """Decide whether s*I = t*J for some nonzero s, t in the ring.

    Exact for degree one (a principal ideal domain) and for degree two when
    lambda is a unit; otherwise EqualClass comes with a verified certificate
    and failure to find one yields Unknown.
    """
    _check_ring(I, J)
    ring = I.ring
    field = ring.field
    one = field.rational(1)
    if module_equal(I, J):
        return EqualClass(one, one, "equal modules")
    d = ring.degree
    if d == 1:
        gi = _content(I)
        gj = _content(J)
        s, t = field.rational(gj), field.rational(gi)
        if not verify_equal_class(I, J, s, t):
            raise AssertionError("principal ideal certificate failed")
        return EqualClass(s, t, "principal ideal domain")
    if d == 2:
        verdict = _quadratic_class(I, J)
        if isinstance(verdict, EqualClass):
            if not verify_equal_class(I, J, verdict.s, verdict.t):
                raise AssertionError("continued-fraction certificate failed")
            return verdict
        if verdict is not None:
            return verdict
    # J = alpha I forces alpha = h / a with h a generator of J and a in I
    tried = 0
    for g in I.generators:
        for h in J.generators:
            if g.is_zero() or h.is_zero():
                continue
            tried += 1
            if verify_equal_class(I, J, h, g):
                return EqualClass(h, g, "generator ratio")
    h = next(x for x in J.generators if not x.is_zero())
    L = saturated_lattice(I)
    for r in range(1, height + 1):
        for coords in _lattice_points(L, d, r):
            a = field.element(coords)
            if a.is_zero():
                continue
            tried += 1
            if tried > budget:
                return Unknown(r - 1)
            if verify_equal_class(I, J, h, a):
                return EqualClass(h, a, "bounded search")
    return Unknown(height)


def _content(I: IdealRep) -> int:
    g = 0
    for x in I.generators:
        g = gcd(g, int(x.coeffs[0]))
    return g

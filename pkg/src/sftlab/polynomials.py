"""Dense univariate polynomials over Z and Q, Sturm sequences, root isolation.

Coefficient sequences are stored constant term first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Coeffs = Tuple  # tuple of int or Fraction


def trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def padd(p, q) -> tuple:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def pneg(p) -> tuple:
    return tuple(-c for c in p)


def psub(p, q) -> tuple:
    return padd(p, pneg(q))


def pscale(p, c) -> tuple:
    return trim(c * a for a in p)


def pmul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def pdivmod(p, q) -> Tuple[tuple, tuple]:
    """Division over Q."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    lead = Fraction(q[-1])
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return (), trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quot), trim(r[:dq])


def pmod(p, q) -> tuple:
    return pdivmod(p, q)[1]


def monic(p) -> tuple:
    p = trim(p)
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def pgcd(p, q) -> tuple:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pmod(a, b)
    return monic(a) if a else ()


def pderiv(p) -> tuple:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_part(p) -> Tuple[int, ...]:
    """Integer polynomial with coprime coefficients and positive leading term."""
    from math import gcd

    p = trim(p)
    if not p:
        return ()
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def squarefree_part(p) -> Tuple[int, ...]:
    g = pgcd(p, pderiv(p))
    if len(g) <= 1:
        return primitive_part(p)
    q, r = pdivmod(p, g)
    assert not r
    return primitive_part(q)


def interval_eval(p, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Enclosure of p over [lo, hi] by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a = min(prods) + c
        b = max(prods) + c
    return a, b


# -- Sturm sequences and real roots ----------------------------------------

def sturm_sequence(p) -> List[tuple]:
    seq = [tuple(Fraction(c) for c in trim(p))]
    d = pderiv(seq[0])
    if not d:
        return seq
    seq.append(d)
    while True:
        r = pmod(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append(pneg(r))


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: List[tuple], lo, hi) -> int:
    """Distinct real roots in (lo, hi] of the squarefree head of ``seq``."""
    return _sign_changes([peval(p, lo) for p in seq]) - _sign_changes([peval(p, hi) for p in seq])


def count_roots_above(seq: List[tuple], lo) -> int:
    """Distinct real roots in (lo, +inf)."""
    at_inf = [p[-1] for p in seq]
    return _sign_changes([peval(p, lo) for p in seq]) - _sign_changes(at_inf)


def root_bound(p) -> Fraction:
    """Cauchy bound: every root has absolute value below the result."""
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) / lead for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_largest_root(p) -> Optional[Tuple[Fraction, Fraction]]:
    """Interval (lo, hi] holding exactly the largest real root of squarefree ``p``.

    Returns ``(r, r)`` for an exact rational root found along the way.
    None if ``p`` has no real roots.
    """
    seq = sturm_sequence(p)
    hi = root_bound(p)
    lo = -hi
    if count_roots(seq, lo, hi) == 0:
        return None
    # shrink from below until exactly one root remains in (lo, hi]
    while True:
        n = count_roots(seq, lo, hi)
        if n == 1:
            break
        mid = (lo + hi) / 2
        if count_roots(seq, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    while peval(p, lo) == 0 and peval(p, hi) != 0:
        # lo sits on a smaller root; move it inside (lo, hi]
        mid = (lo + hi) / 2
        if count_roots(seq, mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    if peval(p, hi) == 0:
        return hi, hi
    return lo, hi


def refine_root(p, lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a simple root of ``p`` down to ``width``."""
    if lo == hi:
        return lo, hi
    slo = peval(p, lo)
    if slo == 0:
        return lo, lo
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = peval(p, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == (slo > 0):
            lo, slo = mid, v
        else:
            hi = mid
    return lo, hi


def factor_integer(p) -> List[Tuple[Tuple[int, ...], int]]:
    """Irreducible factorization over Z (monic integer input), via sympy."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in p])), x, domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        coeffs = tuple(int(c) for c in reversed(f.all_coeffs()))
        if coeffs[-1] < 0:
            coeffs = tuple(-c for c in coeffs)
        out.append((coeffs, mult))
    out.sort()
    return out


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in trim(self.coefficients)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return peval(self.coefficients, x)

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __str__(self):
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

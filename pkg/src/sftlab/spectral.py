"""Characteristic polynomials, Perron data, entropy enclosures and word-count growth."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Callable, List, Optional, Sequence, Tuple

from .algebraic import AlgebraicNumber, NumberField, common_denominator, content
from .errors import CertificateFailure, NotMixing
from .intervals import RationalInterval, log_bounds, log_interval
from .polynomials import (
    IntPolynomial,
    count_roots,
    factor_integer,
    isolate_largest_root,
    peval,
    squarefree_part,
    sturm_sequence,
)
from .shifts import Sft, is_mixing, reverse, word_count

ROOT_WIDTH = Fraction(1, 10**12)
ENTROPY_WIDTH = Fraction(1, 10**9)


def char_poly(X: Sft) -> IntPolynomial:
    """det(xI - A) by the Faddeev-LeVerrier recursion; every division is exact."""
    A = X.matrix if isinstance(X, Sft) else X
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n) if A[i][t]) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        trace = sum(sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n))
        assert trace % k == 0
        coeffs[n - k] = -trace // k
    return IntPolynomial(tuple(coeffs))


@lru_cache(maxsize=256)
def _largest_root_field(matrix: Tuple[Tuple[int, ...], ...]) -> Tuple[IntPolynomial, NumberField]:
    cp = char_poly(matrix)
    sq = squarefree_part(cp.coefficients)
    lo, hi = isolate_largest_root(sq)
    for f, _ in factor_integer(cp.coefficients):
        if lo == hi:
            if peval(f, lo) == 0:
                return cp, NumberField(f, RationalInterval(lo, hi))
        elif count_roots(sturm_sequence(f), lo, hi) == 1 and peval(f, hi) != 0:
            field = NumberField(f, RationalInterval(lo, hi)).refined(ROOT_WIDTH)
            if field.root.lo == field.root.hi:
                # bisection landed on a rational root
                pass
            return cp, field
    raise CertificateFailure("no irreducible factor carries the largest real root")


def spectral_radius(X: Sft) -> NumberField:
    """Q(lambda) for the largest real eigenvalue lambda (the spectral radius for 0/1 matrices)."""
    return _largest_root_field(X.matrix)[1]


@dataclass(frozen=True)
class PerronData:
    char_poly: IntPolynomial
    min_poly: IntPolynomial
    lam: AlgebraicNumber
    left_eigenvector: Tuple[AlgebraicNumber, ...]
    min_poly_certified: bool = True

    @property
    def field(self) -> NumberField:
        return self.lam.field


def _nullspace_vector(rows: List[List[AlgebraicNumber]]) -> List[AlgebraicNumber]:
    """A nonzero kernel vector of a square matrix of corank one."""
    rows = [list(r) for r in rows]
    n = len(rows)
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise CertificateFailure(f"Perron eigenspace has dimension {len(free)}")
    f = free[0]
    field = rows[0][0].field
    vec = [field.rational(0)] * ncols
    vec[f] = field.rational(1)
    for i, c in enumerate(pivots):
        vec[c] = -rows[i][f]
    return vec


def _eigenvector(matrix, field: NumberField, left: bool = True) -> Tuple[AlgebraicNumber, ...]:
    """Positive eigenvector for the root of ``field``, integral with content one."""
    n = len(matrix)
    lam = field.generator
    get = (lambda i, j: matrix[j][i]) if left else (lambda i, j: matrix[i][j])
    rows = [
        [field.rational(get(i, j)) - (lam if i == j else 0) for j in range(n)] for i in range(n)
    ]
    vec = _nullspace_vector(rows)
    den = common_denominator(vec)
    vec = [v * den for v in vec]
    g = content(vec)
    vec = [v * Fraction(1, g) for v in vec]
    signs = {v.sign() for v in vec}
    if signs == {-1}:
        vec = [-v for v in vec]
    elif signs != {1}:
        raise CertificateFailure("Perron eigenvector has entries of mixed sign")
    return tuple(vec)


@lru_cache(maxsize=256)
def _perron_data(X: Sft) -> PerronData:
    if not is_mixing(X):
        raise NotMixing("Perron data requires a primitive matrix")
    cp, field = _largest_root_field(X.matrix)
    vec = _eigenvector(X.matrix, field, left=True)
    lam = field.generator
    n = len(X)
    for j in range(n):
        lhs = sum((vec[i] * X.matrix[i][j] for i in range(n)), field.rational(0))
        if lhs != lam * vec[j]:
            raise CertificateFailure("left eigen-identity fails")
    return PerronData(cp, IntPolynomial(field.modulus), lam, vec)


def perron_data(X: Sft) -> PerronData:
    return _perron_data(X)


def right_eigenvector(X: Sft) -> Tuple[AlgebraicNumber, ...]:
    return perron_data(reverse(X)).left_eigenvector


def _entropy_of_field(field: NumberField, width: Fraction) -> RationalInterval:
    lo = field.root.lo
    if lo == field.root.hi:
        lb, hb = log_bounds(lo, width / 8)
        return RationalInterval(lb, hb)
    field = field.refined(min(field.root.width, width * lo / 4))
    return log_interval(field.root, width / 8)


def entropy_enclosure(X: Sft, width: Fraction = ENTROPY_WIDTH) -> RationalInterval:
    """Enclosure of log(spectral radius) for any valid Sft, mixing or not."""
    return _entropy_of_field(spectral_radius(X), Fraction(width))


def entropy(X: Sft, width: Fraction = ENTROPY_WIDTH) -> RationalInterval:
    """Certified enclosure of h(X) = log lambda_A in nats."""
    if not is_mixing(X):
        raise NotMixing("entropy() requires a mixing shift")
    return entropy_enclosure(X, width)


@dataclass(frozen=True)
class WordCountEntry:
    n: int
    count: int
    rate: RationalInterval  # (1/n) log count


def wordcount_entropy_sequence(count_fn: Callable[[int], int], n_max: int) -> List[WordCountEntry]:
    out = []
    for n in range(1, n_max + 1):
        c = count_fn(n)
        if c <= 0:
            raise ValueError(f"count for n={n} must be positive")
        lo, hi = log_bounds(c)
        out.append(WordCountEntry(n, c, RationalInterval(lo / n, hi / n)))
    return out


@dataclass(frozen=True)
class GrowthCertificate:
    constant: Fraction
    lam: RationalInterval
    checked_up_to: int


def _round_up(q: Fraction, den: int = 10**6) -> Fraction:
    return Fraction(ceil(q * den), den)


def growth_constant(X: Sft, check_up_to: int = 30) -> GrowthCertificate:
    """C with |W_n(X)| <= C * lambda^n for all n >= 1.

    With a positive right eigenvector r, 1^T A^(n-1) 1 <= lambda^(n-1) sum(r) / min(r),
    so C = sum(r) / (lambda * min(r)) works.
    """
    pd = perron_data(reverse(X))
    lam = pd.lam.enclosure()
    encs = [v.enclosure(ROOT_WIDTH) for v in pd.left_eigenvector]
    bound = sum(e.hi for e in encs) / (min(e.lo for e in encs) * lam.lo)
    C = _round_up(bound)
    for n in range(1, check_up_to + 1):
        if word_count(X, n) > C * lam.hi**n:
            raise CertificateFailure(f"growth bound fails at n={n}")
    return GrowthCertificate(C, lam, check_up_to)


# -- polynomial growth bound for arbitrary 0/1 graphs ----------------------

def strongly_connected_components(succ: Sequence[Sequence[int]]) -> List[List[int]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    n = len(succ)
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for k in range(i, len(succ[v])):
                w = succ[v][k]
                if index[w] is None:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


@dataclass(frozen=True)
class PolynomialBound:
    """p(n) = constant * n^degree with (#paths on n vertices) <= p(n) * beta^n."""

    constant: Fraction
    degree: int

    def __call__(self, n: int) -> Fraction:
        return self.constant * n**self.degree


def polynomial_growth_bound(matrix: Sequence[Sequence[int]], beta_hi: Fraction) -> PolynomialBound:
    """Certified p(n) for a 0/1 matrix containing a cycle; ``beta_hi`` bounds its spectral radius.

    Within an irreducible block of size s, Perron vector ratios are at most beta^(s-1).
    A path visits at most m blocks in topological order, giving the n^(m-1) factor.
    """
    n = len(matrix)
    succ = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    comps = strongly_connected_components(succ)
    beta_hi = max(Fraction(beta_hi), Fraction(1))
    sizes = []
    for comp in comps:
        nontrivial = len(comp) > 1 or matrix[comp[0]][comp[0]]
        sizes.append(len(comp) if nontrivial else 1)
    rho = beta_hi ** (max(sizes) - 1)
    m = len(comps)
    if m == 1:
        return PolynomialBound(n * rho, 0)
    return PolynomialBound(2**m * (n * rho) ** m, m - 1)

"""Entropy-conjugacies from a common extension Z with two almost invertible left-closing codes.

Given pi1 : Z -> X and pi2 : Z -> Y, the map pi2 o pi1^-1 is evaluated on
eventually periodic points of X' (points whose lifts see the magic
patterns of both codes infinitely often to the right), with certificates
for the entropy gap of the excluded set and for the finite window that
determines each coordinate of the lift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .closing import fiber_of_point, is_left_closing
from .codes import (
    OneBlockCode,
    Recoding,
    _step,
    apply_code,
    degree_star,
    is_factor_onto,
    recode_to_magic_symbol,
)
from .errors import (
    CertificateFailure,
    EmptyShift,
    GapNotCertified,
    InvalidInput,
    NotAlmostInvertible,
    NotFactor,
    NotInXPrime,
    NotLeftClosing,
    NotMagic,
    NotMixing,
    UniquenessViolated,
)
from .intervals import RationalInterval
from .shifts import (
    EventuallyPeriodicPoint,
    Sft,
    Word,
    check_point,
    comparison_radius,
    forbid_symbol,
    is_mixing,
    make_point,
)
from .spectral import (
    _largest_root_field,
    entropy,
    entropy_enclosure,
    growth_constant,
    polynomial_growth_bound,
)


@dataclass(frozen=True)
class MagicData:
    """A magic pattern of one code and the presentation in which it is a symbol.

    Coordinate n of pi(z) starts an occurrence when pi(z)[n - index, n - index + len(word) - 1]
    equals ``word``; every lift then has ``z_symbol`` at n (in the original Z).
    ``symbol`` and ``z_symbol_recoded`` are the corresponding symbols of the
    recoded codomain and domain, which coincide with ``word[0]`` and
    ``z_symbol`` when the word has length one.
    """

    word: Word
    index: int
    z_symbol: str
    symbol: str
    z_symbol_recoded: str
    recoding: Recoding

    @property
    def presentation(self) -> Sft:
        return self.recoding.code.domain


@dataclass(frozen=True)
class ConjugacySetup:
    Z: Sft
    pi1: OneBlockCode
    pi2: OneBlockCode
    magic_a: MagicData
    magic_b: MagicData
    K1: int
    K2: int

    @property
    def X(self) -> Sft:
        return self.pi1.codomain

    @property
    def Y(self) -> Sft:
        return self.pi2.codomain

    def swapped(self) -> "ConjugacySetup":
        return ConjugacySetup(self.Z, self.pi2, self.pi1, self.magic_b, self.magic_a, self.K2, self.K1)


def _magic(code: OneBlockCode, requested: Optional[str]) -> MagicData:
    report = degree_star(code)
    if report.d_star != 1:
        raise NotAlmostInvertible(report.d_star)
    Y = code.codomain
    if requested is not None:
        b = Y.index(requested)
        pre = code.preimage(b)
        if len(pre) != 1:
            raise NotMagic(f"{requested!r} has {len(pre)} preimage symbols")
        word, index = (requested,), 0
    else:
        word, index = None, 0
        for b, name in enumerate(Y.alphabet):
            if len(code.preimage(b)) == 1:
                word = (name,)
                break
        if word is None:
            word, index = report.witness_word, report.witness_index
    rec = recode_to_magic_symbol(code, word, index)
    new = rec.code
    pre = new.preimage(new.codomain.index(rec.magic_symbol))
    if len(pre) != 1:
        raise CertificateFailure("recoded magic symbol has several preimages")
    z_new = new.domain.alphabet[next(iter(pre))]
    z_old = rec.domain_conjugacy.image(z_new)
    return MagicData(tuple(word), index, z_old, rec.magic_symbol, z_new, rec)


def validate_setup(
    pi1: OneBlockCode,
    pi2: OneBlockCode,
    magic_a: Optional[str] = None,
    magic_b: Optional[str] = None,
) -> ConjugacySetup:
    """Run every hypothesis check and locate magic patterns for both codes."""
    if pi1.domain != pi2.domain:
        raise InvalidInput("the two codes must share their domain")
    Z = pi1.domain
    for name, S in (("Z", Z), ("X", pi1.codomain), ("Y", pi2.codomain)):
        if not is_mixing(S):
            raise NotMixing(f"{name} is not mixing")
    delays = []
    for label, code in (("pi1", pi1), ("pi2", pi2)):
        check = is_factor_onto(code)
        if not check:
            raise NotFactor(
                f"{label} misses the codomain word {' '.join(check.certificate)}", check.certificate
            )
        rep = is_left_closing(code)
        if not rep.closing:
            raise NotLeftClosing(f"{label} is not left-closing", rep.counterexample)
        delays.append(rep.delay)
    ma = _magic(pi1, magic_a)
    mb = _magic(pi2, magic_b)
    return ConjugacySetup(Z, pi1, pi2, ma, mb, delays[0], delays[1])


# -- occurrences of magic patterns -------------------------------------------

def occurs_at(y: EventuallyPeriodicPoint, magic: MagicData, n: int) -> bool:
    m = len(magic.word)
    return y.window(n - magic.index, n - magic.index + m - 1) == magic.word


def occurs_in_right_tail(y: EventuallyPeriodicPoint, magic: MagicData) -> bool:
    """Does the magic pattern occur infinitely often to the right?"""
    R = y.right_cycle
    reps = len(magic.word) // len(R) + 2
    text = R * reps
    m = len(magic.word)
    return any(text[k : k + m] == magic.word for k in range(len(R)))


def magic_positions(y: EventuallyPeriodicPoint, magic: MagicData, lo: int, hi: int) -> List[int]:
    return [n for n in range(lo, hi + 1) if occurs_at(y, magic, n)]


# -- entropy gap ---------------------------------------------------------------

@dataclass(frozen=True)
class GapCertificate:
    h_Z: RationalInterval
    h_Za: RationalInterval
    h_Zb: RationalInterval
    gap: RationalInterval


def _forbidden_entropy(Z: Sft, symbol: str, width: Fraction) -> RationalInterval:
    try:
        Za = forbid_symbol(Z, symbol)
    except EmptyShift:
        return RationalInterval(0, 0)
    return entropy_enclosure(Za, width)


def symbol_gap(Z: Sft, a: str, b: Optional[str] = None) -> GapCertificate:
    """Certified h(Z) - max(h(Z(a)), h(Z(b))) for symbols of a mixing Z; empty shifts count as 0."""
    b = a if b is None else b
    widths = [Fraction(1, 10**9), Fraction(1, 10**15), Fraction(1, 10**30)]
    for width in widths:
        hz = entropy(Z, width)
        ha = _forbidden_entropy(Z, a, width)
        hb = ha if b == a else _forbidden_entropy(Z, b, width)
        gap = hz - ha.max(hb)
        if gap.lo > 0:
            return GapCertificate(hz, ha, hb, gap)
    raise GapNotCertified(f"could not separate h(Z) from h(Z({a})), h(Z({b}))")


def gap_certificate(setup: ConjugacySetup) -> GapCertificate:
    """Gap for the excluded set, computed in the presentations where the magic patterns are symbols."""
    Za = setup.magic_a.presentation
    Zb = setup.magic_b.presentation
    if Za == Zb:
        return symbol_gap(Za, setup.magic_a.z_symbol_recoded, setup.magic_b.z_symbol_recoded)
    ga = symbol_gap(Za, setup.magic_a.z_symbol_recoded)
    gb = symbol_gap(Zb, setup.magic_b.z_symbol_recoded)
    hz = RationalInterval(max(ga.h_Z.lo, gb.h_Z.lo), min(ga.h_Z.hi, gb.h_Z.hi))
    gap = hz - ga.h_Za.max(gb.h_Za)
    if gap.lo <= 0:
        raise GapNotCertified("gap not certified across presentations")
    return GapCertificate(hz, ga.h_Za, gb.h_Za, gap)


# -- word counts of the excluded set ------------------------------------------

@dataclass(frozen=True)
class ExcludedRow:
    n: int
    count: int
    bound: Fraction


@dataclass(frozen=True)
class ExcludedReport:
    symbol: str
    n0: int
    growth_constant: Fraction
    beta_hi: Fraction
    lam_hi: Fraction
    rows: Tuple[ExcludedRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.count <= r.bound for r in self.rows)


def _forward_viable(Z: Sft, a: int) -> List[int]:
    alive = set(range(len(Z))) - {a}
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if not any(u in alive for u in Z.successors(v)):
                alive.discard(v)
                changed = True
    return sorted(alive)


def excluded_word_count(Z: Sft, a: str, n0: int, n: int) -> int:
    """Number of words z[0, n-1] of points z of Z with z_k != a for every k >= n0."""
    ai = Z.index(a)
    R = set(_forward_viable(Z, ai))
    N = len(Z)
    # admissible first symbols
    start = set(range(N))
    if n0 <= 0:
        ok = set(R)
        for _ in range(-n0):
            ok = {v for v in R if any(u in ok for u in Z.predecessors(v))}
        start = ok
    counts = [1 if v in start and (0 < n0 or v in R) else 0 for v in range(N)]
    for p in range(1, n):
        nxt = [0] * N
        for v in range(N):
            if counts[v]:
                for u in Z.successors(v):
                    if p >= n0 and u not in R:
                        continue
                    nxt[u] += counts[v]
        counts = nxt
    if n0 > n - 1:
        # the last symbol must reach R in exactly n0 - (n - 1) steps
        target = set(R)
        for _ in range(n0 - (n - 1)):
            target = {v for v in range(N) if any(u in target for u in Z.successors(v))}
        return sum(c for v, c in enumerate(counts) if v in target)
    return sum(counts)


def excluded_wordcount_check(
    setup_or_Z, n0: int, n_max: int, side: str = "a", symbol: Optional[str] = None
) -> ExcludedReport:
    """Verify |W_n(E_a(n0))| <= C * lambda^max(0, n0) * p(n) * beta^n for n = 1..n_max.

    C is the growth constant of Z, beta the spectral radius of the graph of
    symbols with an infinite a-free future, p a certified polynomial factor.
    """
    if isinstance(setup_or_Z, ConjugacySetup):
        magic = setup_or_Z.magic_a if side == "a" else setup_or_Z.magic_b
        Z, a = magic.presentation, magic.z_symbol_recoded
    else:
        Z, a = setup_or_Z, symbol
    growth = growth_constant(Z)
    C, lam_hi = growth.constant, growth.lam.hi
    R = _forward_viable(Z, Z.index(a))
    if R:
        sub = tuple(tuple(Z.matrix[i][j] for j in R) for i in R)
        field = _largest_root_field(sub)[1]
        beta_hi = max(field.root.hi, Fraction(1))
        poly = polynomial_growth_bound(sub, beta_hi)
    else:
        beta_hi = Fraction(0)
        poly = None
    rows = []
    for n in range(1, n_max + 1):
        count = excluded_word_count(Z, a, n0, n)
        if poly is None:
            bound = C * lam_hi ** max(0, n0) if n0 >= n else Fraction(0)
        else:
            bound = (C * lam_hi**n0 if n0 > 0 else 1) * poly(n) * beta_hi**n
        rows.append(ExcludedRow(n, count, bound))
    report = ExcludedReport(a, n0, C, beta_hi, lam_hi, tuple(rows))
    if not report.passed:
        bad = next(r for r in rows if r.count > r.bound)
        raise CertificateFailure(f"excluded-set bound fails at n={bad.n}: {bad.count} > {bad.bound}")
    return report


# -- X' membership and the inverse of pi1 ------------------------------------

@dataclass(frozen=True)
class Membership:
    member: bool
    explanation: str = ""

    def __bool__(self):
        return self.member


def in_X_prime(setup: ConjugacySetup, x: EventuallyPeriodicPoint) -> Membership:
    check_point(setup.X, x)
    for z in fiber_of_point(setup.pi1, x):
        if not occurs_in_right_tail(apply_code(setup.pi1, z), setup.magic_a):
            return Membership(False, f"lift {z!r} sees the pi1 magic pattern only finitely often on the right")
        if not occurs_in_right_tail(apply_code(setup.pi2, z), setup.magic_b):
            return Membership(False, f"lift {z!r} sees the pi2 magic pattern only finitely often on the right")
    return Membership(True, "every lift sees both magic patterns infinitely often on the right")


def _symbols_at(code: OneBlockCode, labels: Sequence[str], pos: int) -> frozenset:
    """Domain symbols at ``pos`` over all domain words labelled ``labels``."""
    Y = code.codomain
    idx = [Y.index(s) for s in labels]
    F = code.preimage(idx[0])
    for c in idx[1 : pos + 1]:
        F = _step(code, F, c, False)
    B = code.preimage(idx[-1])
    for c in reversed(idx[pos:-1]):
        B = _step(code, B, c, True)
    return F & B


def reconstruct_lift(setup: ConjugacySetup, x: EventuallyPeriodicPoint, lo: int, hi: int) -> Word:
    """Lift of x on [lo, hi] from magic occurrences and the closing delay alone."""
    code, magic, K = setup.pi1, setup.magic_a, setup.K1
    Z, Y = code.domain, code.codomain
    zi = Z.index(magic.z_symbol)
    tail_start = len(x.center) - x.phase + len(magic.word)

    def next_occurrence(n):
        # past the center, an occurrence recurs within one period of the right cycle
        limit = max(n, tail_start) + len(x.right_cycle) + len(magic.word)
        while not occurs_at(x, magic, n):
            n += 1
            if n > limit:
                raise NotInXPrime("no magic occurrence to the right", None)
        return n

    first = next_occurrence(lo)
    z = {first: zi}
    p = first
    while p < hi:
        q = next_occurrence(p + 1)
        # the lift is pinned at p and q; left-closing rules out two paths between them
        fwd = [frozenset([zi])]
        for k in range(p + 1, q + 1):
            fwd.append(_step(code, fwd[-1], Y.index(x[k]), False))
        bwd = [frozenset([zi])]
        for k in range(q - 1, p - 1, -1):
            bwd.append(_step(code, bwd[-1], Y.index(x[k]), True))
        bwd.reverse()
        for j in range(p + 1, q):
            S = fwd[j - p] & bwd[j - p]
            if len(S) != 1:
                raise UniquenessViolated(f"{len(S)} symbols between magic occurrences at {j}")
            z[j] = next(iter(S))
        z[q] = zi
        p = q
    for j in range(first - 1, lo - 1, -1):
        # symbols at j over words labelled x[j+1-K, j] that continue into the known z_{j+1}
        labels = [x[k] for k in range(j + 1 - K, j + 1)] if K else [x[j]]
        F = code.preimage(Y.index(labels[0]))
        for s in labels[1:]:
            F = _step(code, F, Y.index(s), False)
        S = frozenset(s for s in F if z[j + 1] in Z.successors(s))
        if len(S) != 1:
            raise UniquenessViolated(f"delay window leaves {len(S)} candidates at {j}")
        z[j] = next(iter(S))
    return tuple(Z.alphabet[z[j]] for j in range(lo, hi + 1))


def invert_pi1(setup: ConjugacySetup, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """The unique lift of x in X', cross-checked against the magic/delay reconstruction."""
    member = in_X_prime(setup, x)
    if not member:
        raise NotInXPrime(member.explanation, member.explanation)
    fib = fiber_of_point(setup.pi1, x)
    if len(fib) != 1:
        raise UniquenessViolated(f"{len(fib)} lifts of a point of X'")
    z = fib[0]
    r = comparison_radius(x, z) + setup.K1 + len(setup.magic_a.word)
    if reconstruct_lift(setup, x, -r, r) != z.window(-r, r):
        raise UniquenessViolated("fiber lift and magic/delay reconstruction disagree")
    return z


def conjugacy_map(setup: ConjugacySetup, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    z = invert_pi1(setup, x)
    y = apply_code(setup.pi2, z).canonical()
    if not in_X_prime(setup.swapped(), y):
        raise CertificateFailure("image left Y'")
    return y


# -- window certificates -------------------------------------------------------

@dataclass(frozen=True)
class WindowCertificate:
    point: EventuallyPeriodicPoint
    N: int
    magic_positions: Tuple[int, int]
    window: Word
    value: str


def verify_window(setup: ConjugacySetup, window: Sequence[str], N: int) -> Optional[str]:
    """The symbol every Z-word labelled by the bare window x[-N, N] carries at 0, if unique."""
    if len(window) != 2 * N + 1:
        raise ValueError("window must have length 2N + 1")
    S = _symbols_at(setup.pi1, list(window), N)
    if len(S) != 1:
        return None
    return setup.Z.alphabet[next(iter(S))]


def window_determination(setup: ConjugacySetup, x: EventuallyPeriodicPoint) -> WindowCertificate:
    member = in_X_prime(setup, x)
    if not member:
        raise NotInXPrime(member.explanation, member.explanation)
    magic, K = setup.magic_a, setup.K1
    m = len(magic.word)
    limit = abs(x.phase) + len(x.center) + 2 * (len(x.right_cycle) + m) + K + 1
    n1 = next(n for n in range(0, limit) if occurs_at(x, magic, n))
    nk = next(n for n in range(n1 + K, n1 + K + limit) if occurs_at(x, magic, n))
    N = max(K, nk + m - 1 - magic.index, magic.index - n1)
    window = x.window(-N, N)
    value = verify_window(setup, window, N)
    z0 = invert_pi1(setup, x)[0]
    if value != z0:
        raise CertificateFailure(f"window of radius {N} does not determine the lift at 0")
    return WindowCertificate(x, N, (n1, nk), window, value)


# -- sampling and round trips --------------------------------------------------

def _random_cycle(X: Sft, rng: random.Random, start: int, max_len: int) -> Optional[List[int]]:
    length = rng.randint(1, max_len)
    path = [start]
    for _ in range(length - 1):
        path.append(rng.choice(X.successors(path[-1])))
    if start in X.successors(path[-1]):
        return path
    return None


def random_point(
    X: Sft, rng: random.Random, max_cycle: int = 8, max_center: int = 6, max_phase: int = 5
) -> EventuallyPeriodicPoint:
    """Eventually periodic point of X by rejection sampling of cycles and connecting walks."""
    while True:
        left = _random_cycle(X, rng, rng.randrange(len(X)), max_cycle)
        if left is None:
            continue
        center = []
        v = left[-1]
        for _ in range(rng.randint(0, max_center)):
            v = rng.choice(X.successors(v))
            center.append(v)
        start = rng.choice(X.successors(v))
        right = _random_cycle(X, rng, start, max_cycle)
        if right is None:
            continue
        name = X.alphabet
        return make_point(
            [name[i] for i in left],
            [name[i] for i in center],
            [name[i] for i in right],
            rng.randint(-max_phase, max_phase),
        )


def sample_X_prime(setup: ConjugacySetup, count: int, seed: int, max_tries: int = 100_000):
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise CertificateFailure("could not sample enough points of X'")
        x = random_point(setup.X, rng)
        if in_X_prime(setup, x):
            out.append(x)
    return out


@dataclass(frozen=True)
class RoundtripReport:
    samples: int
    passed: int
    failures: Tuple[EventuallyPeriodicPoint, ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


def roundtrip_check(
    setup_xy: ConjugacySetup, setup_yx: ConjugacySetup, samples: int = 100, seed: int = 0
) -> RoundtripReport:
    failures = []
    points = sample_X_prime(setup_xy, samples, seed)
    for x in points:
        try:
            back = conjugacy_map(setup_yx, conjugacy_map(setup_xy, x))
        except (NotInXPrime, UniquenessViolated, CertificateFailure):
            failures.append(x)
            continue
        if back != x:
            failures.append(x)
    return RoundtripReport(len(points), len(points) - len(failures), tuple(failures))

"""Vertex shifts of finite type, their words, and eventually periodic points."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .config import DEFAULT_MAX_WORDS
from .errors import (
    DuplicateSymbol,
    EmptyShift,
    InvalidInput,
    InvalidPoint,
    InvalidWord,
    NonBinaryEntry,
    NotIrreducible,
    NotSquare,
    ResourceLimit,
    ZeroRowOrColumn,
)

Word = Tuple[str, ...]


def block_name(word: Sequence[str]) -> str:
    """Name of a block symbol; plain concatenation when every part is one character."""
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return "[" + ",".join(word) + "]"


@dataclass(frozen=True)
class Sft:
    """The vertex shift X_A on a named alphabet.

    Build instances through :func:`make_sft`, which coerces and validates.
    """

    alphabet: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _succ: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False, hash=False)
    _pred: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.alphabet)
        if n == 0:
            raise InvalidInput("alphabet is empty")
        index = {}
        for i, s in enumerate(self.alphabet):
            if s in index:
                raise DuplicateSymbol(s)
            index[s] = i
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise NotSquare(f"matrix must be {n}x{n}")
        for row in self.matrix:
            for entry in row:
                if entry not in (0, 1) or isinstance(entry, bool):
                    raise NonBinaryEntry(f"entry {entry!r} is not 0 or 1")
        for i in range(n):
            if not any(self.matrix[i]):
                raise ZeroRowOrColumn(self.alphabet[i], "row")
        for j in range(n):
            if not any(self.matrix[i][j] for i in range(n)):
                raise ZeroRowOrColumn(self.alphabet[j], "column")
        succ = tuple(tuple(j for j in range(n) if self.matrix[i][j]) for i in range(n))
        pred = tuple(tuple(i for i in range(n) if self.matrix[i][j]) for j in range(n))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    def __len__(self):
        return len(self.alphabet)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InvalidWord(f"symbol {symbol!r} not in alphabet") from None

    def allowed(self, a: str, b: str) -> bool:
        return self.matrix[self.index(a)][self.index(b)] == 1

    def successors(self, i: int) -> Tuple[int, ...]:
        return self._succ[i]

    def predecessors(self, i: int) -> Tuple[int, ...]:
        return self._pred[i]

    def is_word(self, word: Sequence[str]) -> bool:
        if len(word) == 0:
            return False
        try:
            idx = [self.index(s) for s in word]
        except InvalidWord:
            return False
        return all(self.matrix[a][b] for a, b in zip(idx, idx[1:]))

    def check_word(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        if not self.is_word(word):
            raise InvalidWord(f"{word!r} is not an admissible word")
        return word


def make_sft(alphabet: Sequence, matrix: Sequence[Sequence[int]]) -> Sft:
    alphabet = tuple(str(s) for s in alphabet)
    rows = []
    for row in matrix:
        coerced = []
        for entry in row:
            if isinstance(entry, bool) or entry not in (0, 1):
                raise NonBinaryEntry(f"entry {entry!r} is not 0 or 1")
            coerced.append(int(entry))
        rows.append(tuple(coerced))
    return Sft(alphabet, tuple(rows))


def _int_matmul(a, b):
    n = len(a)
    m = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)) if a[i][k]) for j in range(m)] for i in range(n)]


def matrix_power(matrix, n: int):
    """Exact integer power; ``matrix_power(A, 0)`` is the identity."""
    size = len(matrix)
    result = [[int(i == j) for j in range(size)] for i in range(size)]
    base = [list(r) for r in matrix]
    while n:
        if n & 1:
            result = _int_matmul(result, base)
        n >>= 1
        if n:
            base = _int_matmul(base, base)
    return result


def word_count(X: Sft, n: int) -> int:
    """|W_n(X)| as the entry sum of A^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(map(sum, matrix_power(X.matrix, n - 1)))


def iter_words(X: Sft, n: int) -> Iterator[Word]:
    """Admissible n-blocks in lexicographic order of alphabet indices."""
    if n < 1:
        raise ValueError("n must be positive")
    stack: List[Tuple[int, ...]] = [(i,) for i in reversed(range(len(X)))]
    while stack:
        path = stack.pop()
        if len(path) == n:
            yield tuple(X.alphabet[i] for i in path)
            continue
        for j in reversed(X.successors(path[-1])):
            stack.append(path + (j,))


def words(X: Sft, n: int, cap: int = DEFAULT_MAX_WORDS) -> List[Word]:
    count = word_count(X, n)
    if count > cap:
        raise ResourceLimit(f"{count} words of length {n} exceed the cap {cap}", count=count)
    return list(iter_words(X, n))


# -- graph structure --------------------------------------------------------

def _reach(adj, start) -> set:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_irreducible(X: Sft) -> bool:
    n = len(X)
    return len(_reach(X._succ, 0)) == n and len(_reach(X._pred, 0)) == n


def period(X: Sft) -> int:
    """gcd of cycle lengths of an irreducible shift (BFS level differences)."""
    if not is_irreducible(X):
        raise NotIrreducible("matrix graph is not strongly connected")
    level = {0: 0}
    queue = [0]
    for v in queue:
        for w in X.successors(v):
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
    g = 0
    for v in range(len(X)):
        for w in X.successors(v):
            g = gcd(g, level[v] + 1 - level[w])
    return g


@dataclass(frozen=True)
class MixingReport:
    mixing: bool
    primitivity_index: Optional[int]
    zero_entries: Tuple[Tuple[str, str], ...] = ()

    def __bool__(self):
        return self.mixing


def wielandt_bound(n: int) -> int:
    return (n - 1) ** 2 + 1


def is_mixing(X: Sft) -> MixingReport:
    """Primitivity test by boolean powers up to the Wielandt bound."""
    n = len(X)
    bound = wielandt_bound(n)
    current = [set(X.successors(i)) for i in range(n)]
    for k in range(1, bound + 1):
        if all(len(row) == n for row in current):
            return MixingReport(True, k)
        if k < bound:
            current = [set().union(*(X._succ[j] for j in row)) if row else set() for row in current]
    zeros = tuple(
        (X.alphabet[i], X.alphabet[j]) for i in range(n) for j in range(n) if j not in current[i]
    )
    return MixingReport(False, None, zeros)


# -- constructions ----------------------------------------------------------

def forbid_symbol(X: Sft, a: str) -> Sft:
    """Z(a): delete ``a``, then prune symbols left without successors or predecessors."""
    X.index(a)
    alive = set(range(len(X))) - {X.index(a)}
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if not any(w in alive for w in X.successors(v)) or not any(
                u in alive for u in X.predecessors(v)
            ):
                alive.discard(v)
                changed = True
    if not alive:
        raise EmptyShift(f"forbidding {a!r} leaves no bi-infinite points")
    keep = sorted(alive)
    return make_sft(
        [X.alphabet[i] for i in keep], [[X.matrix[i][j] for j in keep] for i in keep]
    )


def higher_block(X: Sft, m: int, cap: int = DEFAULT_MAX_WORDS):
    """m-block presentation X^[m] with the conjugacy reading the first coordinate."""
    from .codes import OneBlockCode

    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return X, OneBlockCode(X, X, {s: s for s in X.alphabet})
    blocks = words(X, m, cap)
    names = [block_name(w) for w in blocks]
    by_prefix: Dict[Word, List[int]] = {}
    for j, w in enumerate(blocks):
        by_prefix.setdefault(w[:-1], []).append(j)
    matrix = [[0] * len(blocks) for _ in blocks]
    for i, w in enumerate(blocks):
        for j in by_prefix.get(w[1:], ()):
            matrix[i][j] = 1
    Xm = make_sft(names, matrix)
    return Xm, OneBlockCode(Xm, X, {name: w[0] for name, w in zip(names, blocks)})


def power_shift(X: Sft, m: int, cap: int = DEFAULT_MAX_WORDS) -> Sft:
    """Presentation of (X, sigma^m) on the alphabet W_m(X)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return X
    blocks = words(X, m, cap)
    matrix = [[int(X.allowed(u[-1], v[0])) for v in blocks] for u in blocks]
    return make_sft([block_name(w) for w in blocks], matrix)


def reverse(X: Sft) -> Sft:
    n = len(X)
    return Sft(X.alphabet, tuple(tuple(X.matrix[j][i] for j in range(n)) for i in range(n)))


# -- eventually periodic points --------------------------------------------

def _primitive_root(cycle: Word) -> Word:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True, eq=False)
class EventuallyPeriodicPoint:
    """The point ... L L L C R R R ... read with an offset.

    Let ``seq`` be the bi-infinite sequence whose index 0 is the first symbol
    after the left periodic region (``center[0]``, or ``right_cycle[0]`` when
    the center is empty). Coordinate n of the point is ``seq[n + phase]``.
    """

    left_cycle: Word
    center: Word
    right_cycle: Word
    phase: int = 0

    def __post_init__(self):
        for name in ("left_cycle", "center", "right_cycle"):
            object.__setattr__(self, name, tuple(str(s) for s in getattr(self, name)))
        if not self.left_cycle or not self.right_cycle:
            raise InvalidPoint("cycles must be nonempty")
        object.__setattr__(self, "phase", int(self.phase))

    def seq(self, idx: int) -> str:
        if idx < 0:
            return self.left_cycle[idx % len(self.left_cycle)]
        if idx < len(self.center):
            return self.center[idx]
        return self.right_cycle[(idx - len(self.center)) % len(self.right_cycle)]

    def __getitem__(self, n: int) -> str:
        return self.seq(n + self.phase)

    def window(self, i: int, j: int) -> Word:
        """x[i, j], both ends inclusive."""
        return tuple(self[n] for n in range(i, j + 1))

    def map(self, fn) -> "EventuallyPeriodicPoint":
        return EventuallyPeriodicPoint(
            tuple(map(fn, self.left_cycle)),
            tuple(map(fn, self.center)),
            tuple(map(fn, self.right_cycle)),
            self.phase,
        )

    def canonical(self) -> "EventuallyPeriodicPoint":
        """Unique presentation: primitive cycles, maximal periodic regions."""
        L = list(_primitive_root(self.left_cycle))
        R = list(_primitive_root(self.right_cycle))
        C = list(self.center)
        phase = self.phase
        while True:
            if not C and L == R:
                p = len(L)
                shift = phase % p
                L = L[shift:] + L[:shift]
                return EventuallyPeriodicPoint(tuple(L), (), tuple(L), 0)
            nxt = C[0] if C else R[0]
            if nxt != L[0]:
                break
            if C:
                C.pop(0)
            else:
                R = R[1:] + R[:1]
            L = L[1:] + L[:1]
            phase -= 1
        while C and C[-1] == R[-1]:
            C.pop()
            R = R[-1:] + R[:-1]
        return EventuallyPeriodicPoint(tuple(L), tuple(C), tuple(R), phase)

    def _key(self):
        c = self.canonical()
        return (c.left_cycle, c.center, c.right_cycle, c.phase)

    def __eq__(self, other):
        if not isinstance(other, EventuallyPeriodicPoint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def is_periodic(self) -> bool:
        c = self.canonical()
        return not c.center and c.left_cycle == c.right_cycle

    def __repr__(self):
        return (
            f"EventuallyPeriodicPoint(({' '.join(self.left_cycle)})^inf "
            f"[{' '.join(self.center)}] ({' '.join(self.right_cycle)})^inf, phase={self.phase})"
        )


def make_point(left_cycle, center, right_cycle, phase=0) -> EventuallyPeriodicPoint:
    return EventuallyPeriodicPoint(tuple(left_cycle), tuple(center), tuple(right_cycle), phase)


def periodic_point(cycle, phase=0) -> EventuallyPeriodicPoint:
    return EventuallyPeriodicPoint(tuple(cycle), (), tuple(cycle), phase)


def check_point(X: Sft, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """Raise InvalidPoint unless every transition of ``x`` is allowed in X."""
    body = x.left_cycle + x.center + x.right_cycle
    try:
        for s in body:
            X.index(s)
    except InvalidWord as exc:
        raise InvalidPoint(str(exc)) from None
    pairs = list(zip(x.left_cycle, x.left_cycle[1:] + x.left_cycle[:1]))
    pairs += list(zip(x.right_cycle, x.right_cycle[1:] + x.right_cycle[:1]))
    middle = (x.left_cycle[-1],) + x.center + (x.right_cycle[0],)
    pairs += list(zip(middle, middle[1:]))
    for a, b in pairs:
        if not X.allowed(a, b):
            raise InvalidPoint(f"transition {a!r}->{b!r} not allowed")
    return x


def contains(X: Sft, x: EventuallyPeriodicPoint) -> bool:
    try:
        check_point(X, x)
    except InvalidPoint:
        return False
    return True


def point_shift(x: EventuallyPeriodicPoint, k: int) -> EventuallyPeriodicPoint:
    """sigma^k: shift(x, k)_n = x_{n+k}."""
    return EventuallyPeriodicPoint(x.left_cycle, x.center, x.right_cycle, x.phase + k)


def reverse_point(x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """The point y with y_n = x_{-n}; a point of reverse(X) when x is in X."""
    return EventuallyPeriodicPoint(
        x.right_cycle[::-1], x.center[::-1], x.left_cycle[::-1], len(x.center) - 1 - x.phase
    )


def comparison_radius(*points: EventuallyPeriodicPoint) -> int:
    """Half-width of a window on which agreement of the points implies equality."""
    from math import lcm

    lefts = lcm(*(len(p.left_cycle) for p in points))
    rights = lcm(*(len(p.right_cycle) for p in points))
    centers = sum(len(p.center) for p in points)
    offsets = max(abs(p.phase) for p in points)
    return 2 * lefts + centers + 2 * rights + offsets + 1


def agree_on_window(x: EventuallyPeriodicPoint, y: EventuallyPeriodicPoint) -> bool:
    r = comparison_radius(x, y)
    return x.window(-r, r) == y.window(-r, r)


def block_encode(x: EventuallyPeriodicPoint, m: int, offset: int = 0) -> EventuallyPeriodicPoint:
    """Point whose coordinate k is the block name of x[k-offset, k-offset+m-1]."""
    if m == 1 and offset == 0:
        return x
    c = x.canonical()
    pl, pr = len(c.left_cycle), len(c.right_cycle)
    lo = -c.phase - m - pl
    hi = -c.phase + len(c.center) + m + pr
    left = tuple(block_name(c.window(k - offset, k - offset + m - 1)) for k in range(lo - pl, lo))
    center = tuple(block_name(c.window(k - offset, k - offset + m - 1)) for k in range(lo, hi))
    right = tuple(block_name(c.window(k - offset, k - offset + m - 1)) for k in range(hi, hi + pr))
    return EventuallyPeriodicPoint(left, center, right, -lo)


def tabulate_point(fn, points: Sequence[EventuallyPeriodicPoint], margin: int = 0) -> EventuallyPeriodicPoint:
    """Point with coordinate k equal to fn(k), where fn depends on ``points`` near k.

    ``margin`` bounds how far from k the function looks into the reference points.
    """
    from math import lcm

    canon = [p.canonical() for p in points]
    L = lcm(*(len(p.left_cycle) for p in canon))
    R = lcm(*(len(p.right_cycle) for p in canon))
    lo = min(-p.phase for p in canon) - margin
    hi = max(-p.phase + len(p.center) for p in canon) + margin
    left = tuple(fn(k) for k in range(lo - L, lo))
    center = tuple(fn(k) for k in range(lo, hi))
    right = tuple(fn(k) for k in range(hi, hi + R))
    return EventuallyPeriodicPoint(left, center, right, -lo).canonical()

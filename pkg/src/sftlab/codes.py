"""One-block codes: validation, surjectivity, the degree d*, magic symbols and recoding."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .config import DEFAULT_MAX_WORDS
from .errors import (
    DuplicateSymbol,
    EmptyShift,
    InvalidPoint,
    InvalidWord,
    NotFactor,
    NotMixing,
    ResourceLimit,
    TransitionNotRespected,
)
from .shifts import (
    EventuallyPeriodicPoint,
    Sft,
    Word,
    block_encode,
    block_name,
    check_point,
    is_mixing,
    make_sft,
    tabulate_point,
    words,
)


@dataclass(frozen=True)
class OneBlockCode:
    """The factor code pi(x)_n = phi(x_n) from ``domain`` into ``codomain``."""

    domain: Sft
    codomain: Sft
    phi: Tuple[Tuple[str, str], ...]
    _img: Tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        mapping = dict(self.phi.items() if isinstance(self.phi, Mapping) else self.phi)
        mapping = {str(k): str(v) for k, v in mapping.items()}
        for s in mapping:
            if s not in self.domain._index:
                raise InvalidWord(f"phi is defined on {s!r}, which is not a domain symbol")
        missing = [s for s in self.domain.alphabet if s not in mapping]
        if missing:
            raise InvalidWord(f"phi is not defined on {missing[0]!r}")
        img = tuple(self.codomain.index(mapping[s]) for s in self.domain.alphabet)
        for i in range(len(self.domain)):
            for j in self.domain.successors(i):
                if not self.codomain.matrix[img[i]][img[j]]:
                    raise TransitionNotRespected(self.domain.alphabet[i], self.domain.alphabet[j])
        object.__setattr__(self, "phi", tuple((s, mapping[s]) for s in self.domain.alphabet))
        object.__setattr__(self, "_img", img)

    @property
    def phi_map(self) -> Dict[str, str]:
        return dict(self.phi)

    def image(self, symbol: str) -> str:
        return self.codomain.alphabet[self._img[self.domain.index(symbol)]]

    def image_index(self, i: int) -> int:
        return self._img[i]

    def preimage(self, b: int) -> FrozenSet[int]:
        """Domain indices over codomain index ``b``."""
        return frozenset(i for i, c in enumerate(self._img) if c == b)

    def apply_word(self, word: Sequence[str]) -> Word:
        return tuple(self.image(s) for s in word)


def make_code(X: Sft, Y: Sft, phi: Mapping[str, str]) -> OneBlockCode:
    return OneBlockCode(X, Y, phi)


def identity_code(X: Sft) -> OneBlockCode:
    return OneBlockCode(X, X, {s: s for s in X.alphabet})


def apply_code(code: OneBlockCode, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    return x.map(code.image)


def compose(first: OneBlockCode, second: OneBlockCode) -> OneBlockCode:
    """second after first."""
    if first.codomain != second.domain:
        raise ValueError("codomain of the first code must be the domain of the second")
    return OneBlockCode(
        first.domain, second.codomain, {s: second.image(first.image(s)) for s in first.domain.alphabet}
    )


# -- subset automata ---------------------------------------------------------

def _step(code: OneBlockCode, S: FrozenSet[int], c: int, backward: bool) -> FrozenSet[int]:
    X = code.domain
    nbrs = X.predecessors if backward else X.successors
    return frozenset(u for v in S for u in nbrs(v) if code.image_index(u) == c)


def _subset_states(code: OneBlockCode, backward: bool = False):
    """Reachable label-determined subsets with a shortest word reaching each.

    Forward: S_w = {v : some path labelled w ends at v}. Backward: the set of
    starting vertices of paths labelled w, explored right to left; the
    stored word is in left-to-right order. Empty subsets are recorded as
    certificates of words outside the image.
    """
    Y = code.codomain
    ynbrs = Y.predecessors if backward else Y.successors
    seen: Dict[Tuple[int, FrozenSet[int]], Word] = {}
    queue = deque()
    for b in range(len(Y)):
        key = (b, code.preimage(b))
        if key not in seen:
            seen[key] = (Y.alphabet[b],)
            queue.append(key)
    while queue:
        b, S = queue.popleft()
        if not S:
            continue
        w = seen[(b, S)]
        for c in ynbrs(b):
            key = (c, _step(code, S, c, backward))
            if key not in seen:
                seen[key] = ((Y.alphabet[c],) + w) if backward else (w + (Y.alphabet[c],))
                queue.append(key)
    return seen


@dataclass(frozen=True)
class FactorCheck:
    onto: bool
    certificate: Optional[Word] = None

    def __bool__(self):
        return self.onto


def is_factor_onto(code: OneBlockCode) -> FactorCheck:
    """Does the image of the code fill the codomain? Certificate: a missed codomain word."""
    missed = [w for (b, S), w in _subset_states(code).items() if not S]
    if not missed:
        return FactorCheck(True)
    return FactorCheck(False, min(missed, key=lambda w: (len(w), w)))


def require_factor(code: OneBlockCode) -> None:
    check = is_factor_onto(code)
    if not check:
        raise NotFactor(
            f"codomain word {' '.join(check.certificate)} has no preimage", check.certificate
        )


def _require_mixing(code: OneBlockCode) -> None:
    if not is_mixing(code.domain):
        raise NotMixing("domain is not mixing")
    if not is_mixing(code.codomain):
        raise NotMixing("codomain is not mixing")


# -- the degree d* -------------------------------------------------------------

def dstar_profile(code: OneBlockCode, w: Sequence[str]) -> Tuple[int, ...]:
    """(d*(w, i))_i: the number of distinct domain symbols at position i over preimages of w."""
    Y = code.codomain
    w = Y.check_word(w)
    idx = [Y.index(s) for s in w]
    fwd = [code.preimage(idx[0])]
    for c in idx[1:]:
        fwd.append(_step(code, fwd[-1], c, False))
    bwd = [code.preimage(idx[-1])]
    for c in reversed(idx[:-1]):
        bwd.append(_step(code, bwd[-1], c, True))
    bwd.reverse()
    return tuple(len(F & B) for F, B in zip(fwd, bwd))


@dataclass(frozen=True)
class DegreeReport:
    d_star: int
    witness_word: Word
    witness_index: int
    per_position_counts: Tuple[int, ...]


def degree_star(code: OneBlockCode) -> DegreeReport:
    """Exact min of d*(w, i) over all codomain words and positions.

    A forward state (b, F) reached by a prefix ending in b and a backward
    state (b, B) reached by a suffix starting with b glue into one codomain
    word, so the minimum over glued pairs of |F & B| is the global minimum.
    """
    _require_mixing(code)
    require_factor(code)
    fwd = _subset_states(code, backward=False)
    bwd = _subset_states(code, backward=True)
    by_label: Dict[int, List[Tuple[FrozenSet[int], Word]]] = {}
    for (b, B), w in bwd.items():
        if B:
            by_label.setdefault(b, []).append((B, w))
    best = None
    for (b, F), prefix in fwd.items():
        if not F:
            continue
        for B, suffix in by_label.get(b, ()):
            word = prefix + suffix[1:]
            key = (len(F & B), len(word), word, len(prefix) - 1)
            if best is None or key < best:
                best = key
    d, _, word, i = best
    profile = dstar_profile(code, word)
    assert profile[i] == d
    return DegreeReport(d, word, i, profile)


def find_magic_symbol(code: OneBlockCode, report: Optional[DegreeReport] = None) -> Optional[str]:
    """First codomain symbol b with |phi^-1(b)| = d*, if any."""
    report = report or degree_star(code)
    for b, name in enumerate(code.codomain.alphabet):
        if len(code.preimage(b)) == report.d_star:
            return name
    return None


def is_almost_invertible(code: OneBlockCode) -> bool:
    return degree_star(code).d_star == 1


# -- recoding a magic word into a magic symbol -------------------------------

def _prune(symbols: List, edges: Dict) -> List:
    alive = set(range(len(symbols)))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            succ = [u for u in edges[v] if u in alive]
            pred_ok = any(v in edges[u] for u in alive)
            if not succ or not pred_ok:
                alive.discard(v)
                changed = True
    return sorted(alive)


@dataclass(frozen=True)
class Recoding:
    """A recoded code together with the conjugacies back to the original shifts.

    ``domain_conjugacy`` maps the new domain onto the old one and
    ``codomain_conjugacy`` the new codomain onto the old one; both are
    one-block and commute with the codes.
    """

    code: OneBlockCode
    domain_conjugacy: OneBlockCode
    codomain_conjugacy: OneBlockCode
    magic_symbol: str
    block_length: int
    index: int

    def encode_domain(self, x: EventuallyPeriodicPoint, original: OneBlockCode) -> EventuallyPeriodicPoint:
        if self.block_length == 1:
            return x
        y = block_encode(x.map(original.image), self.block_length, self.index)
        return tabulate_point(lambda k: _pair_name(x[k], y[k]), [x, y])

    def encode_codomain(self, y: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
        if self.block_length == 1:
            return y
        return block_encode(y, self.block_length, self.index)

    def decode_domain(self, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
        return x.map(self.domain_conjugacy.image)

    def decode_codomain(self, y: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
        return y.map(self.codomain_conjugacy.image)


def _pair_name(a: str, beta_name: str) -> str:
    return f"{a}/{beta_name}"


def recode_to_magic_symbol(
    code: OneBlockCode, w: Sequence[str], i: int, cap: int = DEFAULT_MAX_WORDS
) -> Recoding:
    """Recode so that the magic word ``w`` (attaining d* at position ``i``) becomes a symbol.

    New codomain: the |w|-block presentation of the codomain, read back at
    coordinate i. New domain: symbols (a, beta) with beta an image block and
    a = x_n where phi(x)[n-i, n-i+m-1] = beta; it is conjugate to the old
    domain by (a, beta) -> a. The preimage of the block symbol w is then
    exactly the set of symbols seen at position i over preimages of w.
    """
    X, Y = code.domain, code.codomain
    w = Y.check_word(w)
    m = len(w)
    if not 0 <= i < m:
        raise ValueError("index outside the word")
    if m == 1:
        ident_x, ident_y = identity_code(X), identity_code(Y)
        return Recoding(code, ident_x, ident_y, w[0], 1, 0)
    blocks = words(Y, m, cap)
    names = [block_name(b) for b in blocks]
    by_prefix: Dict[Word, List[int]] = {}
    for j, b in enumerate(blocks):
        by_prefix.setdefault(b[:-1], []).append(j)
    ym_matrix = [[0] * len(blocks) for _ in blocks]
    for j, b in enumerate(blocks):
        for k in by_prefix.get(b[1:], ()):
            ym_matrix[j][k] = 1
    Ym = make_sft(names, ym_matrix)
    ycode = OneBlockCode(Ym, Y, {name: b[i] for name, b in zip(names, blocks)})

    symbols = [
        (a, j) for j, b in enumerate(blocks) for a in X.alphabet if code.image(a) == b[i]
    ]
    if len(symbols) > cap:
        raise ResourceLimit("recoded alphabet too large", len(symbols))
    edges: Dict[int, set] = {}
    for s, (a, j) in enumerate(symbols):
        nxt = set()
        for t, (a2, k) in enumerate(symbols):
            if X.allowed(a, a2) and ym_matrix[j][k]:
                nxt.add(t)
        edges[s] = nxt
    keep = _prune(symbols, edges)
    if not keep:
        raise EmptyShift("recoded domain is empty")
    new_names = [_pair_name(symbols[s][0], names[symbols[s][1]]) for s in keep]
    if len(set(new_names)) != len(new_names):
        raise DuplicateSymbol("recoded symbol names collide")
    pos = {s: n for n, s in enumerate(keep)}
    matrix = [[0] * len(keep) for _ in keep]
    for s in keep:
        for t in edges[s]:
            if t in pos:
                matrix[pos[s]][pos[t]] = 1
    Xm = make_sft(new_names, matrix)
    xcode = OneBlockCode(Xm, X, {n: symbols[s][0] for n, s in zip(new_names, keep)})
    new_code = OneBlockCode(Xm, Ym, {n: names[symbols[s][1]] for n, s in zip(new_names, keep)})
    return Recoding(new_code, xcode, ycode, block_name(w), m, i)

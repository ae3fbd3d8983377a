"""Left/right closing with minimal delay, and complete fibers over eventually periodic points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .codes import OneBlockCode
from .errors import NotClosing, ResourceLimit
from .shifts import EventuallyPeriodicPoint, check_point, reverse, reverse_point
from .spectral import strongly_connected_components

Pair = Tuple[int, int]


@dataclass(frozen=True)
class ClosingReport:
    """Verdict of a closing test. ``side`` is "left" or "right".

    When closing, ``delay`` is the least K such that two points with equal
    images on [-K, K] and equal symbols on [0, K] also agree at -1 (mirrored
    for the right side); K = 0 means no two distinct symbols with the same
    image can ever be followed by equal futures. Otherwise ``counterexample``
    holds two distinct points with equal images that agree from some
    coordinate on (toward the closing side).
    """

    closing: bool
    side: str = "left"
    delay: Optional[int] = None
    counterexample: Optional[Tuple[EventuallyPeriodicPoint, EventuallyPeriodicPoint]] = None

    def __bool__(self):
        return self.closing

    @property
    def is_left_closing(self) -> bool:
        return self.closing and self.side == "left"

    @property
    def window(self) -> int:
        """Length 2K+1 of the determining window."""
        return 2 * self.delay + 1


@dataclass
class PairGraph:
    pairs: List[Pair]
    succ: Dict[Pair, List[Pair]]
    pred: Dict[Pair, List[Pair]]


def pair_graph(code: OneBlockCode) -> PairGraph:
    """Ordered pairs of domain symbols with equal images, moving in lockstep."""
    X = code.domain
    n = len(X)
    pairs = [(u, v) for u in range(n) for v in range(n) if code.image_index(u) == code.image_index(v)]
    succ: Dict[Pair, List[Pair]] = {p: [] for p in pairs}
    pred: Dict[Pair, List[Pair]] = {p: [] for p in pairs}
    for u, v in pairs:
        for u2 in X.successors(u):
            for v2 in X.successors(v):
                if code.image_index(u2) == code.image_index(v2):
                    succ[(u, v)].append((u2, v2))
                    pred[(u2, v2)].append((u, v))
    return PairGraph(pairs, succ, pred)


def _backward_infinite(g: PairGraph) -> Set[Pair]:
    alive = set(g.pairs)
    changed = True
    while changed:
        changed = False
        for p in sorted(alive):
            if not any(q in alive for q in g.pred[p]):
                alive.discard(p)
                changed = True
    return alive


def is_left_closing(code: OneBlockCode) -> ClosingReport:
    """Decide left-closing via the pair graph.

    The code fails to be left-closing exactly when an off-diagonal pair with
    an infinite past in the pair graph has a diagonal successor. Otherwise
    every off-diagonal pair that can merge has a finite past, these pasts
    form a DAG, and the delay is one more than its longest path.
    """
    g = pair_graph(code)
    alive = _backward_infinite(g)
    merging = [p for p in g.pairs if p[0] != p[1] and any(q[0] == q[1] for q in g.succ[p])]
    bad = [p for p in merging if p in alive]
    if bad:
        return ClosingReport(False, "left", counterexample=_counterexample(code, g, alive, bad[0]))
    if not merging:
        return ClosingReport(True, "left", delay=0)
    depth: Dict[Pair, int] = {}

    def walk(p: Pair) -> int:
        # pairs outside ``alive`` have acyclic, all off-diagonal pasts
        if p not in depth:
            depth[p] = 1 + max((walk(q) for q in g.pred[p]), default=0)
        return depth[p]

    longest = max(walk(p) for p in merging)
    return ClosingReport(True, "left", delay=longest + 1)


def _counterexample(code: OneBlockCode, g: PairGraph, alive: Set[Pair], p: Pair):
    X = code.domain
    back = [p]
    seen = {p: 0}
    while True:
        q = min(r for r in g.pred[back[-1]] if r in alive)
        if q in seen:
            j = seen[q]
            break
        seen[q] = len(back)
        back.append(q)
    # back[j] -> back[-1] -> back[-2] -> ... -> back[j] is the cycle
    cycle = [back[t] for t in range(len(back) - 1, j - 1, -1)]
    stem = [back[t] for t in range(j - 1, -1, -1)]
    d = min(q[0] for q in g.succ[p] if q[0] == q[1])
    fwd = [d]
    fseen = {d: 0}
    while True:
        v = X.successors(fwd[-1])[0]
        if v in fseen:
            r = fseen[v]
            break
        fseen[v] = len(fwd)
        fwd.append(v)
    name = X.alphabet
    pts = []
    for side in (0, 1):
        left = tuple(name[q[side]] for q in cycle)
        center = tuple(name[q[side]] for q in stem) + tuple(name[v] for v in fwd[:r])
        right = tuple(name[v] for v in fwd[r:])
        pts.append(check_point(X, EventuallyPeriodicPoint(left, center, right, 0)))
    return tuple(pts)


def reverse_code(code: OneBlockCode) -> OneBlockCode:
    return OneBlockCode(reverse(code.domain), reverse(code.codomain), code.phi)


def is_right_closing(code: OneBlockCode) -> ClosingReport:
    rep = is_left_closing(reverse_code(code))
    if rep.closing:
        return ClosingReport(True, "right", delay=rep.delay)
    x, y = rep.counterexample
    return ClosingReport(False, "right", counterexample=(reverse_point(x), reverse_point(y)))


# -- fibers --------------------------------------------------------------------

DEFAULT_FIBER_CAP = 10_000


def fiber_of_point(
    code: OneBlockCode, y: EventuallyPeriodicPoint, cap: int = DEFAULT_FIBER_CAP
) -> List[EventuallyPeriodicPoint]:
    """All preimages of ``y``, sorted by their canonical form.

    Preimages are bi-infinite paths in a trellis whose states are
    (region, residue, domain symbol). The fiber is finite and consists of
    eventually periodic points exactly when every recurrent class met by a
    complete path is a single cycle and no two recurrent classes on the same
    side are linked; otherwise NotClosing is raised.
    """
    X = code.domain
    Y = code.codomain
    check_point(Y, y)
    y = y.canonical()
    L, C, R = y.left_cycle, y.center, y.right_cycle
    p, c, q = len(L), len(C), len(R)
    over = {b: sorted(code.preimage(Y.index(b))) for b in set(L + C + R)}

    states: List[tuple] = []
    for j in range(p):
        states += [("L", j, v) for v in over[L[j]]]
    for t in range(c):
        states += [("C", t, v) for v in over[C[t]]]
    for j in range(q):
        states += [("R", j, v) for v in over[R[j]]]
    index = {s: k for k, s in enumerate(states)}

    def next_slot(region, j):
        if region == "L":
            if j < p - 1:
                return ("L", j + 1)
            return ("C", 0) if c else ("R", 0)
        if region == "C":
            return ("C", j + 1) if j < c - 1 else ("R", 0)
        return ("R", (j + 1) % q)

    succ: List[List[int]] = [[] for _ in states]
    for k, (region, j, v) in enumerate(states):
        region2, j2 = next_slot(region, j)
        for u in X.successors(v):
            s = (region2, j2, u)
            if s in index:
                succ[k].append(index[s])
    if p > 0:
        # the left cycle also wraps around to itself
        for k, (region, j, v) in enumerate(states):
            if region == "L" and j == p - 1:
                for u in X.successors(v):
                    s = ("L", 0, u)
                    if s in index:
                        succ[k].append(index[s])

    n = len(states)
    comps = strongly_connected_components(succ)
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for k in comp:
            comp_of[k] = ci
    nontrivial = [len(comp) > 1 or comp[0] in succ[comp[0]] for comp in comps]

    def closure(starts, edges):
        seen = set(starts)
        stack = list(starts)
        while stack:
            k = stack.pop()
            for m in edges[k]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return seen

    pred: List[List[int]] = [[] for _ in states]
    for k in range(n):
        for m in succ[k]:
            pred[m].append(k)
    rec = [k for k in range(n) if nontrivial[comp_of[k]]]
    left_rec = [k for k in rec if states[k][0] == "L"]
    right_rec = [k for k in rec if states[k][0] == "R"]
    useful = closure(left_rec, succ) & closure(right_rec, pred)

    for ci, comp in enumerate(comps):
        if not nontrivial[ci] or comp[0] not in useful:
            continue
        inner = sum(1 for k in comp for m in succ[k] if comp_of[m] == ci)
        if inner != len(comp):
            raise NotClosing("fiber contains a recurrent class that is not a single cycle")
        side = states[comp[0]][0]
        reach = closure([m for k in comp for m in succ[k] if comp_of[m] != ci], succ) & useful
        for m in reach:
            if nontrivial[comp_of[m]] and states[m][0] == side and comp_of[m] != ci:
                raise NotClosing("fiber contains two linked recurrent classes on one side")

    def in_rec(k):
        return nontrivial[comp_of[k]]

    def cycle_succ(k):
        return next(m for m in succ[k] if comp_of[m] == comp_of[k])

    def cycle_pred(k):
        return next(m for m in pred[k] if comp_of[m] == comp_of[k])

    def backward_paths(k):
        # paths ending at k whose first state is recurrent, listed forward
        if in_rec(k):
            return [[k]]
        out = []
        for m in pred[k]:
            if m in useful and states[m][0] == "L":
                out += [path + [k] for path in backward_paths(m)]
        return out

    def forward_paths(k):
        if in_rec(k):
            return [[k]]
        out = []
        for m in succ[k]:
            if m in useful:
                out += [[k] + path for path in forward_paths(m)]
        return out

    # position -1 holds an L state with residue p - 1; position 0 the next slot
    last_left = [k for k in useful if states[k][0] == "L" and states[k][1] == p - 1]
    results = []
    for k in sorted(last_left):
        first_right = [m for m in succ[k] if m in useful and states[m][0] != "L"]
        befores = backward_paths(k)
        for m in sorted(first_right):
            afters = forward_paths(m)
            for before in befores:
                for after in afters:
                    results.append(_assemble(X, states, before, after, cycle_succ, cycle_pred, y.phase))
                    if len(results) > cap:
                        raise ResourceLimit("fiber larger than the cap", len(results))
    for x in results:
        check_point(X, x)
    return sorted(set(results), key=lambda x: _sort_key(x))


def _assemble(X, states, before, after, cycle_succ, cycle_pred, y_phase):
    name = X.alphabet
    k0 = before[0]
    lcyc = []
    s = k0
    while True:
        s = cycle_pred(s)
        lcyc.append(s)
        if s == k0:
            break
    lcyc.reverse()
    f0 = after[-1]
    rcyc = [f0]
    s = cycle_succ(f0)
    while s != f0:
        rcyc.append(s)
        s = cycle_succ(s)
    center = before + after[:-1]
    # before[0] sits at position -len(before) of y's sequence
    return EventuallyPeriodicPoint(
        tuple(name[states[s][2]] for s in lcyc),
        tuple(name[states[s][2]] for s in center),
        tuple(name[states[s][2]] for s in rcyc),
        len(before) + y_phase,
    ).canonical()


def _sort_key(x: EventuallyPeriodicPoint):
    c = x.canonical()
    return (c.left_cycle, c.center, c.right_cycle, c.phase)

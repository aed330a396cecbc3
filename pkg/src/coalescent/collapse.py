"""Free faces, elementary collapses and collapse search."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from .complex import SimplicialComplex, boundary_faces, simplex_order
from .errors import NotAFreeFace


@dataclass(frozen=True, order=True)
class CollapsePair:
    free_face: tuple
    coface: tuple

    def __post_init__(self):
        if len(self.coface) != len(self.free_face) + 1 or not set(self.free_face) < set(self.coface):
            raise NotAFreeFace(f"{self.free_face} is not a codimension-1 face of {self.coface}")

    @property
    def apex(self) -> int:
        """The vertex of the coface opposite the free face."""
        (a,) = set(self.coface) - set(self.free_face)
        return a


@dataclass(frozen=True)
class CollapseSequence:
    pairs: tuple
    terminal: SimplicialComplex


class Status(enum.Enum):
    COLLAPSIBLE = "collapsible"
    STUCK = "stuck-no-free-faces"
    NOT_COLLAPSIBLE = "not-collapsible"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class CollapseOutcome:
    status: Status
    sequence: CollapseSequence | None = None
    remaining: SimplicialComplex | None = None
    nodes: int = 0
    enumerated: int = 0  # nodes whose free pairs were listed in full

    @property
    def collapsible(self) -> bool:
        return self.status is Status.COLLAPSIBLE

    @property
    def definitive(self) -> bool:
        return self.status is not Status.BUDGET_EXHAUSTED


def _pair_key(p: CollapsePair):
    return (-len(p.free_face), p.free_face, p.coface)


class _State:
    """Mutable simplex set with coface sets, for fast repeated collapses."""

    def __init__(self, simplices):
        self.simplices = set(simplices)
        self.cofaces = {s: set() for s in self.simplices}
        for s in self.simplices:
            for f in boundary_faces(s):
                self.cofaces[f].add(s)

    def is_free(self, sigma) -> bool:
        cof = self.cofaces.get(sigma)
        if cof is None or len(cof) != 1:
            return False
        (tau,) = cof
        return not self.cofaces[tau]

    def free_pairs(self) -> list:
        pairs = []
        for s in self.simplices:
            if self.is_free(s):
                (tau,) = self.cofaces[s]
                pairs.append(CollapsePair(s, tau))
        pairs.sort(key=_pair_key)
        return pairs

    def remove(self, pair: CollapsePair):
        for s in (pair.coface, pair.free_face):
            for f in boundary_faces(s):
                self.cofaces[f].discard(s)
            del self.cofaces[s]
            self.simplices.discard(s)


def free_faces(c: SimplicialComplex) -> list:
    """Free pairs (sigma, tau), ordered lexicographically by sigma then tau."""
    index = c.coface_index
    pairs = []
    for s in c.sorted_simplices():
        cof = index[s]
        if len(cof) == 1:
            (tau,) = cof
            if not index[tau]:
                pairs.append(CollapsePair(s, tau))
    pairs.sort()
    return pairs


def elementary_collapse(c: SimplicialComplex, p: CollapsePair) -> SimplicialComplex:
    if p.free_face not in c or c.cofaces(p.free_face) != {p.coface} or c.cofaces(p.coface):
        raise NotAFreeFace(f"{c.format_simplex(p.free_face)} is not free in "
                           f"{c.format_simplex(p.coface)}")
    return c.without((p.free_face, p.coface))


def _is_point(simplices) -> bool:
    return len(simplices) == 1 and len(next(iter(simplices))) == 1


def greedy_collapse(c: SimplicialComplex, strategy: str = "lex", seed: int = 0) -> CollapseOutcome:
    """Collapse greedily, always taking a free pair of highest dimension.

    ``"lex"`` takes the first such pair; ``"random"`` picks uniformly with a
    seeded generator.
    """
    if strategy not in ("lex", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    state = _State(c.simplices)
    pairs = []
    nodes = 0
    while not _is_point(state.simplices):
        nodes += 1
        free = state.free_pairs()
        if not free:
            remaining = SimplicialComplex(state.simplices, c.labels, c.name)
            return CollapseOutcome(Status.STUCK, CollapseSequence(tuple(pairs), remaining),
                                   remaining, nodes, nodes)
        top = len(free[0].free_face)
        candidates = [p for p in free if len(p.free_face) == top]
        p = candidates[0] if strategy == "lex" else rng.choice(candidates)
        state.remove(p)
        pairs.append(p)
    terminal = SimplicialComplex(state.simplices, c.labels, c.name)
    return CollapseOutcome(Status.COLLAPSIBLE, CollapseSequence(tuple(pairs), terminal),
                           terminal, nodes + 1, nodes)


def exhaustive_collapse(c: SimplicialComplex, node_budget: int = 100_000) -> CollapseOutcome:
    """Depth-first search over collapse choices, memoised on the remaining set.

    The budget counts distinct states visited. A ``NOT_COLLAPSIBLE`` answer
    means every reachable state was expanded and none reached a point.
    """
    if node_budget < 1:
        raise ValueError("node_budget must be >= 1")
    root = frozenset(c.simplices)
    if _is_point(root):
        return CollapseOutcome(Status.COLLAPSIBLE, CollapseSequence((), c), c, 1, 0)
    visited = {root}
    enumerated = 0
    # stack entries: (state, pending pairs)
    stack = [(root, None)]
    path = []
    while stack:
        state, pending = stack[-1]
        if pending is None:
            enumerated += 1
            pending = _State(state).free_pairs()
            pending.reverse()
            stack[-1] = (state, pending)
        advanced = False
        while pending:
            p = pending.pop()
            nxt = state - {p.free_face, p.coface}
            if nxt in visited:
                continue
            if len(visited) >= node_budget:
                return CollapseOutcome(Status.BUDGET_EXHAUSTED, None, None, len(visited), enumerated)
            visited.add(nxt)
            path.append(p)
            if _is_point(nxt):
                terminal = SimplicialComplex(nxt, c.labels, c.name)
                return CollapseOutcome(Status.COLLAPSIBLE,
                                       CollapseSequence(tuple(path), terminal),
                                       terminal, len(visited), enumerated)
            stack.append((nxt, None))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if path:
                path.pop()
    return CollapseOutcome(Status.NOT_COLLAPSIBLE, None, c, len(visited), enumerated)


def validate_sequence(c: SimplicialComplex, s: CollapseSequence) -> bool:
    state = _State(c.simplices)
    for p in s.pairs:
        if p.free_face not in state.simplices or p.coface not in state.cofaces.get(p.free_face, ()):
            return False
        if not state.is_free(p.free_face):
            return False
        state.remove(p)
    return frozenset(state.simplices) == s.terminal.simplices


def replay(c: SimplicialComplex, pairs) -> list:
    """Complexes K_0 = c, K_1, ..., one per collapse."""
    out = [c]
    for p in pairs:
        out.append(elementary_collapse(out[-1], p))
    return out

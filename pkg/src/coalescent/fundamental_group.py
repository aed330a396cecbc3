"""Edge-path presentations of pi_1 and Tietze simplification.

Words are tuples of nonzero ints: ``k`` is the k-th generator (1-based),
``-k`` its inverse.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .complex import SimplicialComplex, connected_components
from .errors import NotConnected, SimplexNotInComplex
from .homology import IntegerMatrix, smith_normal_form


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError(f"relator {r} uses an unknown generator")

    def spell(self, word) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in word)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(self.spell(r) for r in self.relators)
        return f"< {gens} | {rels} >"


class Pi1Verdict(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL_BY_ABELIANIZATION = "nontrivial-by-abelianization"
    UNKNOWN = "unknown"


def pi1_presentation(c: SimplicialComplex, basepoint: int | None = None) -> Presentation:
    """Generators are non-tree edges of a BFS spanning tree; relators are triangles."""
    if not c.vertices:
        raise NotConnected("the empty complex has no basepoint")
    if basepoint is None:
        basepoint = c.vertices[0]
    if (basepoint,) not in c:
        raise SimplexNotInComplex(f"basepoint {basepoint} is not a vertex")
    if len(connected_components(c)) != 1:
        raise NotConnected("pi_1 presentation needs a connected complex")
    adj = {v: [] for v in c.vertices}
    for a, b in c.simplices_of_dim(1):
        adj[a].append(b)
        adj[b].append(a)
    tree = set()
    seen = {basepoint}
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    gen_of = {}
    names = []
    for e in c.simplices_of_dim(1):
        if e not in tree:
            gen_of[e] = len(names) + 1
            names.append(f"{c.label(e[0])}-{c.label(e[1])}")

    def letter(u, w):
        if u < w:
            g = gen_of.get((u, w))
            return [g] if g else []
        g = gen_of.get((w, u))
        return [-g] if g else []

    relators = []
    for a, b, cc in c.simplices_of_dim(2):
        relators.append(tuple(letter(a, b) + letter(b, cc) + letter(cc, a)))
    return Presentation(tuple(names), tuple(relators))


def free_reduce(word) -> tuple:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def invert(word) -> tuple:
    return tuple(-x for x in reversed(word))


def abelianization_is_nontrivial(p: Presentation) -> bool:
    n = len(p.generators)
    if n == 0:
        return False
    entries = {}
    for i, r in enumerate(p.relators):
        for x in r:
            key = (i, abs(x) - 1)
            entries[key] = entries.get(key, 0) + (1 if x > 0 else -1)
    divisors, rank = smith_normal_form(IntegerMatrix(len(p.relators), n, entries))
    return rank < n or any(d > 1 for d in divisors)


def simplify_presentation(p: Presentation, step_budget: int = 10_000) -> tuple:
    """Tietze moves until the presentation is empty or no move applies.

    Moves: free and cyclic reduction, dropping empty relators, killing a
    generator with a length-1 relator, and eliminating a generator that occurs
    exactly once in some relator. Never claims nontriviality without an
    abelianization witness.
    """
    if step_budget < 1:
        raise ValueError("step_budget must be >= 1")
    alive = set(range(1, len(p.generators) + 1))
    rels = [cyclic_reduce(r) for r in p.relators]
    rels = [r for r in rels if r]
    steps = 0
    while alive and steps < step_budget:
        choice = _pick_elimination(rels)
        if choice is None:
            break
        ri, pos = choice
        r = rels[ri]
        g = abs(r[pos])
        rotated = r[pos + 1:] + r[:pos]
        # r[pos]^e * rotated = 1  =>  g = rotated^-1 (e=1) or rotated (e=-1)
        value = invert(rotated) if r[pos] > 0 else rotated
        value_inv = invert(value)
        new = []
        for k, other in enumerate(rels):
            if k == ri:
                continue
            if g in other or -g in other:
                sub = []
                for x in other:
                    if x == g:
                        sub.extend(value)
                    elif x == -g:
                        sub.extend(value_inv)
                    else:
                        sub.append(x)
                other = cyclic_reduce(sub)
            if other:
                new.append(other)
        rels = new
        alive.discard(g)
        steps += 1

    # renumber survivors
    order = sorted(alive)
    renum = {g: i + 1 for i, g in enumerate(order)}
    out = Presentation(
        tuple(p.generators[g - 1] for g in order),
        tuple(tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels))
    if not order:
        return out, Pi1Verdict.TRIVIAL
    if abelianization_is_nontrivial(out):
        return out, Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION
    return out, Pi1Verdict.UNKNOWN


def _pick_elimination(rels):
    """Shortest relator with a generator occurring once in it; the generator
    chosen is the one with the fewest occurrences elsewhere."""
    counts = {}
    for r in rels:
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
    best = None
    for ri, r in enumerate(rels):
        if best is not None and len(r) >= best[0]:
            continue
        local = {}
        for x in r:
            local[abs(x)] = local.get(abs(x), 0) + 1
        once = [(counts[abs(x)], pos) for pos, x in enumerate(r) if local[abs(x)] == 1]
        if once:
            best = (len(r), ri, min(once)[1])
    return None if best is None else (best[1], best[2])

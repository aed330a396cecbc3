"""Finite abstract simplicial complexes.

A simplex is a strictly increasing tuple of non-negative integer vertex ids.
Complexes are immutable: every operation returns a new complex.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    DimensionTooHigh,
    DuplicateVertexInFacet,
    NonSimplicialQuotient,
    SimplexNotInComplex,
)

Simplex = tuple


def canonical(vertices: Iterable[int]) -> tuple:
    """Sorted vertex tuple; raises on repeated vertices."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise DuplicateVertexInFacet(f"repeated vertex in {vs}")
    return vs


def simplex_order(s: tuple):
    return (len(s), s)


def faces(s: tuple) -> list:
    """All nonempty faces of ``s`` including ``s`` itself."""
    return [f for k in range(1, len(s) + 1) for f in combinations(s, k)]


def boundary_faces(s: tuple) -> list:
    """Codimension-1 faces."""
    if len(s) <= 1:
        return []
    return list(combinations(s, len(s) - 1))


class SimplicialComplex:
    """A closed set of simplices with a lazily built coface index.

    Parameters
    ----------
    simplices : iterable of vertex tuples
        Must already be closed under faces (use :func:`from_maximal` otherwise).
    labels : mapping vertex id -> display string, optional
    name : str, optional
    """

    __slots__ = ("simplices", "labels", "name", "_cofaces", "_sorted")

    def __init__(self, simplices: Iterable[tuple], labels: Mapping[int, str] | None = None,
                 name: str = ""):
        self.simplices = frozenset(simplices)
        verts = {s[0] for s in self.simplices if len(s) == 1}
        labels = dict(labels or {})
        self.labels = {v: labels.get(v, str(v)) for v in sorted(verts)}
        self.name = name
        self._cofaces = None
        self._sorted = None

    # -- container protocol -------------------------------------------------
    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.sorted_simplices())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<SimplicialComplex{name} f={self.f_vector}>"

    # -- basic queries --------------------------------------------------------
    def sorted_simplices(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self.simplices, key=simplex_order)
        return self._sorted

    @property
    def vertices(self) -> list:
        return list(self.labels)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @property
    def f_vector(self) -> tuple:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    def simplices_of_dim(self, d: int) -> list:
        return [s for s in self.sorted_simplices() if len(s) == d + 1]

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def format_simplex(self, s: tuple) -> str:
        return "{" + ",".join(self.label(v) for v in s) + "}"

    def vertex_by_label(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise SimplexNotInComplex(f"no vertex labelled {label!r}")

    @property
    def coface_index(self) -> dict:
        """Map simplex -> frozenset of cofaces of one dimension higher."""
        if self._cofaces is None:
            index = defaultdict(set)
            for s in self.simplices:
                index[s]
                for f in boundary_faces(s):
                    index[f].add(s)
            self._cofaces = {s: frozenset(cs) for s, cs in index.items()}
        return self._cofaces

    def cofaces(self, s) -> frozenset:
        s = tuple(s)
        if s not in self.simplices:
            raise SimplexNotInComplex(f"{s} is not in the complex")
        return self.coface_index[s]

    def star(self, v: int) -> set:
        """All simplices containing vertex ``v``."""
        if (v,) not in self.simplices:
            raise SimplexNotInComplex(f"vertex {v} is not in the complex")
        return {s for s in self.simplices if v in s}

    def facets(self) -> list:
        """Maximal simplices, sorted canonically."""
        index = self.coface_index
        return [s for s in self.sorted_simplices() if not index[s]]

    def is_closed(self) -> bool:
        return all(f in self.simplices for s in self.simplices for f in boundary_faces(s))

    def relabel(self, labels: Mapping[int, str], name: str | None = None) -> "SimplicialComplex":
        merged = dict(self.labels)
        merged.update(labels)
        return SimplicialComplex(self.simplices, merged, self.name if name is None else name)

    def without(self, removed: Iterable[tuple]) -> "SimplicialComplex":
        return SimplicialComplex(self.simplices - set(removed), self.labels, self.name)


def from_maximal(facets: Iterable[Iterable[int]], labels: Mapping[int, str] | None = None,
                 name: str = "") -> SimplicialComplex:
    """Closure of the given facets."""
    simplices = set()
    for facet in facets:
        s = canonical(facet)
        if not s:
            continue
        if s in simplices:
            continue
        simplices.update(faces(s))
    return SimplicialComplex(simplices, labels, name)


def link_graph(c: SimplicialComplex, v: int):
    """Graph link of ``v``: neighbours of v, joined when they span a triangle with v."""
    from .stardisk import LinkGraph

    nodes, edges = set(), set()
    for s in c.star(v):
        if len(s) > 3:
            raise DimensionTooHigh(f"simplex {s} through vertex {v} has dimension > 2")
        rest = tuple(w for w in s if w != v)
        if len(rest) == 1:
            nodes.add(rest[0])
        elif len(rest) == 2:
            edges.add(rest)
    return LinkGraph(frozenset(nodes), frozenset(edges))


@dataclass(frozen=True)
class Census:
    f_vector: tuple
    euler_characteristic: int
    dim: int
    connected: bool


def connected_components(c: SimplicialComplex) -> list:
    parent = {v: v for v in c.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in c.simplices_of_dim(1):
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for v in c.vertices:
        groups[find(v)].append(v)
    return sorted(groups.values())


def census(c: SimplicialComplex) -> Census:
    f = c.f_vector
    chi = sum((-1) ** d * n for d, n in enumerate(f))
    return Census(f, chi, c.dim, len(connected_components(c)) == 1)


def quotient(c: SimplicialComplex, classes: Iterable[Iterable[int]],
             names: Mapping[int, str] | None = None,
             glued: Iterable[tuple] | None = None) -> SimplicialComplex:
    """Identify vertices class by class.

    ``classes`` must cover every vertex. Each class becomes the vertex named by
    its smallest member, so the trivial partition is the identity; ``names``
    maps a class index to a label. The result is rejected if any simplex loses
    a vertex, or if two distinct simplices of positive dimension land on the
    same vertex set, unless both lie in ``glued`` (the subcomplex that the
    identification is meant to fold onto itself, e.g. the sides of a polygon).
    """
    classes = {i: sorted(set(k)) for i, k in enumerate(classes)}
    classes = {i: k for i, k in classes.items() if k}
    image_of = {}
    for k in classes.values():
        for v in k:
            if v in image_of:
                raise NonSimplicialQuotient(f"vertex {v} listed in two classes")
            image_of[v] = k[0]
    missing = [v for v in c.vertices if v not in image_of]
    if missing:
        raise NonSimplicialQuotient(f"partition misses vertices {missing}")

    glued = set(glued or ())
    seen = {}
    for s in c.sorted_simplices():
        img = tuple(sorted({image_of[v] for v in s}))
        if len(img) != len(s):
            raise NonSimplicialQuotient(
                f"simplex {c.format_simplex(s)} collapses under the identification", (s,))
        prev = seen.get(img)
        if prev is None:
            seen[img] = s
        elif len(s) > 1 and not (prev in glued and s in glued):
            raise NonSimplicialQuotient(
                f"simplices {c.format_simplex(prev)} and {c.format_simplex(s)} "
                "have the same image", (prev, s))

    labels = {}
    for i, k in classes.items():
        labels[k[0]] = names[i] if names and i in names else c.label(k[0])
    return SimplicialComplex(seen.keys(), labels, c.name)


def renumber(c: SimplicialComplex) -> SimplicialComplex:
    """Same complex with vertex ids made dense, keeping their order and labels."""
    new = {v: i for i, v in enumerate(c.vertices)}
    return SimplicialComplex((tuple(new[v] for v in s) for s in c.simplices),
                             {new[v]: c.label(v) for v in c.vertices}, c.name)


def subdivision_map(c: SimplicialComplex) -> tuple:
    """First barycentric subdivision plus the map old simplex -> new vertex id."""
    ordered = c.sorted_simplices()
    vertex_of = {s: i for i, s in enumerate(ordered)}
    facets = []
    for top in c.facets():
        for perm in _maximal_chains(top):
            facets.append([vertex_of[f] for f in perm])
    labels = {}
    for s, i in vertex_of.items():
        labels[i] = c.label(s[0]) if len(s) == 1 else "b(" + ",".join(c.label(v) for v in s) + ")"
    sub = from_maximal(facets, labels, c.name)
    # isolated vertices are facets of dimension 0 and are handled above
    return sub, vertex_of


def _maximal_chains(top: tuple) -> list:
    chains = []

    def grow(current, chain):
        chain = chain + [current]
        if len(current) == 1:
            chains.append(chain)
            return
        for f in boundary_faces(current):
            grow(f, chain)

    grow(top, [])
    return chains


def barycentric_subdivision(c: SimplicialComplex) -> SimplicialComplex:
    return subdivision_map(c)[0]

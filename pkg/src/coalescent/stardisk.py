"""Star-disk certification for 2-complexes.

A point ``c`` has the star-disk property when every simplex of its star lies in
an embedded disc, built from simplices of the star, having ``c`` as a manifold
interior point. Stars are constant along open simplices, so only vertices and
open edges need checking; open triangles always pass.

At a vertex ``v`` every such disc is a cone from ``v`` over a simple cycle of the
link graph, which gives the criterion used by :func:`vertex_star_disk`:

* a triangle through ``v`` qualifies iff its link edge is not a bridge;
* an edge ``{v, w}`` qualifies iff ``w`` touches a non-bridge link edge;
* ``{v}`` qualifies iff the link has any cycle.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complex import SimplicialComplex, canonical, link_graph, simplex_order
from .errors import (
    DimensionTooHigh,
    InvalidParameter,
    NotSimplicial,
    SimplexNotInComplex,
    StarTooLarge,
)

ORACLE_MAX_TRIANGLES = 12


@dataclass(frozen=True)
class LinkGraph:
    nodes: frozenset
    edges: frozenset

    def adjacency(self) -> dict:
        adj = {n: [] for n in sorted(self.nodes)}
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_cycle(self) -> bool:
        """True when the graph is a single simple cycle."""
        if len(self.nodes) < 3 or len(self.edges) != len(self.nodes):
            return False
        adj = self.adjacency()
        if any(len(ns) != 2 for ns in adj.values()):
            return False
        start = min(self.nodes)
        seen, stack = {start}, [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)


def bridges(graph: LinkGraph) -> set:
    """Bridges of a simple graph by an iterative lowpoint traversal."""
    adj = graph.adjacency()
    order, low = {}, {}
    found = set()
    counter = 0
    for root in adj:
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            node, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in order:
                    low[node] = min(low[node], order[w])
                else:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, node, iter(adj[w])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[node])
                if low[node] > order[parent]:
                    found.add((min(parent, node), max(parent, node)))
    return found


@dataclass(frozen=True)
class StarDiskResult:
    point: tuple  # (v,) for a vertex, (u, w) for an open edge
    holds: bool
    failing_simplices: tuple = ()


@dataclass(frozen=True)
class StarDiskReport:
    per_vertex: tuple
    per_edge: tuple
    all_hold: bool = field(init=False)

    def __post_init__(self):
        ok = all(r.holds for r in self.per_vertex) and all(r.holds for r in self.per_edge)
        object.__setattr__(self, "all_hold", ok)

    def failures(self) -> list:
        return [r for r in self.per_vertex + self.per_edge if not r.holds]

    def failing_points(self) -> list:
        return [r.point for r in self.failures()]


def _require_dim2(c: SimplicialComplex):
    if c.dim > 2:
        raise DimensionTooHigh(f"star-disk checks need dim <= 2, got {c.dim}")


def vertex_star_disk(c: SimplicialComplex, v: int) -> StarDiskResult:
    _require_dim2(c)
    graph = link_graph(c, v)
    cut = bridges(graph)
    on_cycle = set()
    for e in graph.edges:
        if e not in cut:
            on_cycle.update(e)
    failing = []
    for s in c.star(v):
        rest = tuple(w for w in s if w != v)
        if len(rest) == 0:
            ok = bool(on_cycle)
        elif len(rest) == 1:
            ok = rest[0] in on_cycle
        else:
            ok = rest not in cut
        if not ok:
            failing.append(s)
    failing.sort(key=simplex_order)
    return StarDiskResult((v,), not failing, tuple(failing))


def edge_star_disk(c: SimplicialComplex, e: tuple) -> StarDiskResult:
    e = tuple(sorted(e))
    if len(e) != 2 or e not in c:
        raise SimplexNotInComplex(f"{e} is not an edge of the complex")
    triangles = sorted(c.cofaces(e))
    if len(triangles) >= 2:
        return StarDiskResult(e, True, ())
    return StarDiskResult(e, False, tuple([e] + triangles))


def star_disk_report(c: SimplicialComplex) -> StarDiskReport:
    _require_dim2(c)
    per_vertex = tuple(vertex_star_disk(c, v) for v in c.vertices)
    per_edge = tuple(edge_star_disk(c, e) for e in c.simplices_of_dim(1))
    return StarDiskReport(per_vertex, per_edge)


def is_disc(triangles) -> tuple:
    """Check whether the closure of a set of triangles is a 2-disc.

    Returns ``(is_disc, boundary_vertices)``. Tests: connected, each edge in at
    most two triangles, every vertex link a path or a cycle, Euler
    characteristic 1, and boundary edges forming one simple cycle.
    """
    triangles = list(triangles)
    if not triangles:
        return False, set()
    edge_count = defaultdict(int)
    verts = set()
    for t in triangles:
        verts.update(t)
        for e in combinations(t, 2):
            edge_count[e] += 1
    if any(n > 2 for n in edge_count.values()):
        return False, set()
    if len(verts) - len(edge_count) + len(triangles) != 1:
        return False, set()

    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edge_count:
        parent[find(a)] = find(b)
    if len({find(v) for v in verts}) != 1:
        return False, set()

    for v in verts:
        local = LinkGraph(
            frozenset(w for e in edge_count if v in e for w in e if w != v),
            frozenset(tuple(w for w in t if w != v) for t in triangles if v in t))
        if not (local.is_cycle() or _is_path(local)):
            return False, set()

    boundary = LinkGraph(
        frozenset(v for e, n in edge_count.items() if n == 1 for v in e),
        frozenset(e for e, n in edge_count.items() if n == 1))
    if not boundary.is_cycle():
        return False, set()
    return True, set(boundary.nodes)


def _is_path(g: LinkGraph) -> bool:
    if not g.nodes or len(g.edges) != len(g.nodes) - 1:
        return False
    adj = g.adjacency()
    if any(len(ns) > 2 for ns in adj.values()):
        return False
    start = min(g.nodes)
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.nodes)


def brute_force_disk_oracle(c: SimplicialComplex, v: int,
                            max_triangles: int = ORACLE_MAX_TRIANGLES) -> StarDiskResult:
    """Decide the star-disk property at ``v`` by enumerating triangle subsets."""
    _require_dim2(c)
    star = c.star(v)
    tris = sorted(s for s in star if len(s) == 3)
    if len(tris) > max_triangles:
        raise StarTooLarge(f"star of {c.label(v)} has {len(tris)} triangles (> {max_triangles})")
    discs = []
    for mask in range(1, 1 << len(tris)):
        subset = [t for i, t in enumerate(tris) if mask >> i & 1]
        ok, rim = is_disc(subset)
        if ok and v not in rim:
            covered = set()
            for t in subset:
                covered.update(f for k in (1, 2, 3) for f in combinations(t, k))
            discs.append(covered)
    failing = sorted((s for s in star if not any(s in d for d in discs)), key=simplex_order)
    return StarDiskResult((v,), not failing, tuple(failing))


def fan_disk_oracle(c: SimplicialComplex, v: int) -> StarDiskResult:
    """Decide the star-disk property at ``v`` by enumerating closed fans.

    A disc made of triangles through ``v`` with ``v`` interior is a closed fan
    around ``v``. Fans are found by walking simple cycles in the link by
    backtracking; every candidate is still checked with :func:`is_disc`.
    Suited to stars too large for subset enumeration.
    """
    _require_dim2(c)
    star = c.star(v)
    adj = link_graph(c, v).adjacency()
    discs = []
    for start in sorted(adj):
        # cycles whose smallest node is ``start``, each found once per direction
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for w in sorted(adj[node]):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    tris = [canonical((v, a, b)) for a, b in zip(path, path[1:] + [start])]
                    ok, rim = is_disc(tris)
                    if ok and v not in rim:
                        covered = set()
                        for t in tris:
                            covered.update(f for k in (1, 2, 3) for f in combinations(t, k))
                        discs.append(covered)
                elif w > start and w not in path:
                    stack.append((w, path + [w]))
    failing = sorted((s for s in star if not any(s in d for d in discs)), key=simplex_order)
    return StarDiskResult((v,), not failing, tuple(failing))


# -- circle maps ---------------------------------------------------------------

@dataclass(frozen=True)
class CycleMap:
    """Self-map of the k-cycle given on vertex positions 0..k-1.

    Each edge [i, i+1] is sent to the shorter arc between the images of its
    endpoints, so the map is defined whenever no edge is sent to an antipodal
    pair. It is simplicial when adjacent images are equal or adjacent.
    """

    cycle_length: int
    vertex_images: tuple

    def __post_init__(self):
        k = self.cycle_length
        if k < 3:
            raise InvalidParameter("cycle length must be at least 3")
        if len(self.vertex_images) != k or any(not 0 <= x < k for x in self.vertex_images):
            raise InvalidParameter(f"need {k} images in range 0..{k - 1}")
        object.__setattr__(self, "vertex_images", tuple(self.vertex_images))

    def steps(self) -> list:
        """Signed shortest step from image(i) to image(i+1)."""
        k = self.cycle_length
        imgs = self.vertex_images
        out = []
        for i in range(k):
            d = (imgs[(i + 1) % k] - imgs[i]) % k
            if 2 * d == k:
                raise NotSimplicial(f"edge {i} is sent to an antipodal pair")
            out.append(d if 2 * d < k else d - k)
        return out

    @property
    def is_simplicial(self) -> bool:
        k = self.cycle_length
        imgs = self.vertex_images
        return all((imgs[(i + 1) % k] - imgs[i]) % k in (0, 1, k - 1) for i in range(k))


def circle_degree(m: CycleMap, strict: bool = False) -> int:
    """Winding degree: total signed step divided by the cycle length."""
    if strict and not m.is_simplicial:
        raise NotSimplicial("adjacent positions must map to equal or adjacent positions")
    total = sum(m.steps())
    assert total % m.cycle_length == 0
    return total // m.cycle_length


def _circular_distance(x: Fraction, k: int) -> Fraction:
    x = x % k
    return min(x, k - x)


def max_displacement(m: CycleMap) -> Fraction:
    """Largest circular distance between a point of the cycle and its image.

    Taken over every point of the piecewise-linear map, not only vertices: an
    edge whose displacement sweeps past k/2 contains a point sent to its
    antipode.
    """
    k = m.cycle_length
    best = Fraction(0)
    for i, step in enumerate(m.steps()):
        start = Fraction(m.vertex_images[i] - i)
        end = start + step - 1
        lo, hi = min(start, end), max(start, end)
        # does [lo, hi] contain a point congruent to k/2 mod k?
        half = Fraction(k, 2)
        j = (hi - half) // k
        if half + j * k >= lo:
            return half
        best = max(best, _circular_distance(start, k), _circular_distance(end, k))
    return best

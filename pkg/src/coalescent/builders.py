"""Named and stock complexes: simplices, spheres, fans, cones, the dunce hat,
Bing's house with two rooms, and the dunce hat with a flap attached."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complex import (
    SimplicialComplex,
    from_maximal,
    quotient,
    renumber,
    subdivision_map,
)
from .errors import ApexCollision, DimensionTooHigh, InvalidParameter, NonSimplicialQuotient


@dataclass(frozen=True)
class NamedComplex:
    complex: SimplicialComplex
    name: str
    marked: dict = field(default_factory=dict)

    def __post_init__(self):
        for role, item in self.marked.items():
            items = item if isinstance(item, list) else [item]
            for x in items:
                s = (x,) if isinstance(x, int) else tuple(x)
                if s not in self.complex:
                    raise InvalidParameter(f"marked {role!r} item {s} is not in the complex")


def full_simplex(n: int) -> NamedComplex:
    if not 0 <= n <= 6:
        raise DimensionTooHigh(f"full_simplex supports 0 <= n <= 6, got {n}")
    return NamedComplex(from_maximal([range(n + 1)], name=f"simplex{n}"), f"simplex{n}")


def boundary_sphere(n: int) -> NamedComplex:
    if not 1 <= n <= 3:
        raise DimensionTooHigh(f"boundary_sphere supports 1 <= n <= 3, got {n}")
    facets = combinations(range(n + 2), n + 1)
    return NamedComplex(from_maximal(facets, name=f"sphere{n}"), f"sphere{n}")


def disc_fan(k: int) -> NamedComplex:
    """Cone from apex 0 over the cycle 1..k."""
    if k < 3:
        raise InvalidParameter(f"disc_fan needs k >= 3, got {k}")
    facets = [(0, i, i % k + 1) for i in range(1, k + 1)]
    c = from_maximal(facets, {0: "O"}, name=f"disc{k}")
    return NamedComplex(c, f"disc{k}", {"apex": 0})


def cone(c: SimplicialComplex, apex: int | None = None) -> NamedComplex:
    if apex is None:
        apex = max(c.vertices, default=-1) + 1
    if (apex,) in c:
        raise ApexCollision(f"apex {apex} is already a vertex")
    simplices = set(c.simplices)
    simplices.update(s + (apex,) if s[-1] < apex else tuple(sorted(s + (apex,)))
                     for s in c.simplices)
    simplices.add((apex,))
    labels = dict(c.labels)
    labels[apex] = "apex"
    name = f"cone({c.name})" if c.name else "cone"
    return NamedComplex(SimplicialComplex(simplices, labels, name), name, {"apex": apex})


def random_2complex(rng: random.Random, n_vertices: int = 7, n_triangles: int = 5,
                   n_edges: int = 2) -> SimplicialComplex:
    """Closure of random triangles and edges on ``n_vertices`` vertices."""
    verts = range(n_vertices)
    all_tris = list(combinations(verts, 3))
    all_edges = list(combinations(verts, 2))
    facets = rng.sample(all_tris, min(n_triangles, len(all_tris)))
    facets += rng.sample(all_edges, min(n_edges, len(all_edges)))
    return from_maximal(facets, name="random")


def random_graph(rng: random.Random, n_vertices: int = 6, n_edges: int = 7) -> SimplicialComplex:
    edges = rng.sample(list(combinations(range(n_vertices), 2)),
                       min(n_edges, n_vertices * (n_vertices - 1) // 2))
    return from_maximal(edges + [(v,) for v in range(n_vertices)], name="graph")


# -- dunce hat -----------------------------------------------------------------

def _edgewise_triangle(n: int) -> tuple:
    """n-fold edgewise subdivision of a triangle.

    Returns the complex and each vertex's barycentric position with respect to
    the corners (A, B, C).
    """
    ids = {}
    pos = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            ids[i, j] = len(ids)
            # i steps towards B, j steps towards C
            pos[ids[i, j]] = (Fraction(n - i - j, n), Fraction(i, n), Fraction(j, n))
    facets = []
    for i in range(n):
        for j in range(n - i):
            facets.append((ids[i, j], ids[i + 1, j], ids[i, j + 1]))
            if i + j + 1 < n:
                facets.append((ids[i + 1, j], ids[i, j + 1], ids[i + 1, j + 1]))
    return from_maximal(facets), pos


def _subdivide_positions(c: SimplicialComplex, pos: dict) -> tuple:
    sub, vertex_of = subdivision_map(c)
    new_pos = {}
    for s, v in vertex_of.items():
        k = len(s)
        new_pos[v] = tuple(sum(pos[w][i] for w in s) / k for i in range(3))
    return sub, new_pos


def _dunce_hat_identification(c: SimplicialComplex, pos: dict) -> tuple:
    """Classes, class names and glued subcomplex for the a.a.a^-1 side pattern.

    Sides AB, BC and AC are all read as the same oriented edge, running
    A->B, B->C and A->C; corners A and C are the cone points where both
    sides start, respectively both end.
    """
    def side_param(p):
        a, b, cc = p
        if a == 0:
            return cc  # on BC, from B towards C
        if b == 0:
            return cc  # on AC, from A towards C
        if cc == 0:
            return b  # on AB, from A towards B
        return None

    classes = {}
    for v in c.vertices:
        t = side_param(pos[v])
        key = ("seam", t) if t is not None else ("interior", v)
        if t is not None and t in (0, 1):
            key = ("V",)
        classes.setdefault(key, []).append(v)
    on_boundary = {v for v in c.vertices if side_param(pos[v]) is not None}
    glued = []
    for s in c.simplices:
        if all(v in on_boundary for v in s):
            # a simplex lies in a side iff its vertices share a zero coordinate
            if any(all(pos[v][i] == 0 for v in s) for i in range(3)):
                glued.append(s)
    keys = sorted(classes, key=lambda k: min(classes[k]))
    class_list = [classes[k] for k in keys]
    names = {i: "V" for i, k in enumerate(keys) if k == ("V",)}
    return class_list, names, glued


DUNCE_HAT_MINIMAL8 = (
    (0, 1, 3), (0, 1, 4), (0, 1, 7), (0, 2, 4), (0, 2, 5), (0, 2, 6),
    (0, 3, 7), (0, 5, 6), (1, 2, 3), (1, 2, 5), (1, 2, 6), (1, 4, 5),
    (1, 6, 7), (2, 3, 4), (3, 4, 5), (3, 5, 6), (3, 6, 7),
)


def dunce_hat_quotient_recipe(folds: int = 3, barycentric_rounds: int = 1) -> tuple:
    """Subdivide the triangle and return it with its side identification."""
    c, pos = _edgewise_triangle(folds)
    for _ in range(barycentric_rounds):
        c, pos = _subdivide_positions(c, pos)
    return c, pos, _dunce_hat_identification(c, pos)


def dunce_hat(scheme: str = "quotient") -> NamedComplex:
    """Triangulated dunce hat with its vertex marked ``"V"``.

    ``"quotient"`` subdivides a triangle (3-fold edgewise, then barycentric
    rounds until the side identification is simplicial) and takes the quotient.
    ``"minimal8"`` is a stored 8-vertex, 17-triangle triangulation.
    """
    if scheme == "quotient":
        last_error = None
        for rounds in (1, 2, 3):
            c, pos, (classes, names, glued) = dunce_hat_quotient_recipe(3, rounds)
            try:
                d = quotient(c, classes, names, glued)
            except NonSimplicialQuotient as err:
                last_error = err
                continue
            d = renumber(d).relabel({}, name="dunce-hat")
            return NamedComplex(d, "dunce-hat", {"V": d.vertex_by_label("V")})
        raise last_error
    if scheme == "minimal8":
        labels = {0: "V", 1: "x", 2: "y"}
        d = from_maximal(DUNCE_HAT_MINIMAL8, labels, name="dunce-hat-minimal8")
        return NamedComplex(d, "dunce-hat-minimal8", {"V": 0})
    raise InvalidParameter(f"unknown dunce hat scheme {scheme!r}")


# -- Bing's house --------------------------------------------------------------

def _rect(axis: str, level: int, lo1: int, hi1: int, lo2: int, hi2: int) -> set:
    """Unit squares of an axis-aligned rectangle at ``axis = level``."""
    squares = set()
    for a in range(lo1, hi1):
        for b in range(lo2, hi2):
            squares.add((axis, level, a, b))
    return squares


def _square_corners(sq) -> list:
    axis, level, a, b = sq
    pts = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
    out = []
    for p, q in pts:
        if axis == "x":
            out.append((level, p, q))
        elif axis == "y":
            out.append((p, level, q))
        else:
            out.append((p, q, level))
    return out


def bings_house() -> NamedComplex:
    """Bing's house with two rooms on an integer grid, unit squares halved.

    Box [0,10]x[0,6]x[0,4] with a slab at z=2. Chimney A spans [2,4]x[2,4]
    over z in [2,4] (roof and slab opened); chimney B spans [6,8]x[2,4] over
    z in [0,2] (floor and slab opened). Wall A sits in the upper room at y=3,
    x in [0,2]; wall B in the lower room at y=3, x in [8,10].
    """
    sq = set()
    sq |= _rect("z", 0, 0, 10, 0, 6) - _rect("z", 0, 6, 8, 2, 4)   # floor, chimney B open
    sq |= _rect("z", 4, 0, 10, 0, 6) - _rect("z", 4, 2, 4, 2, 4)   # roof, chimney A open
    sq |= _rect("z", 2, 0, 10, 0, 6) - _rect("z", 2, 2, 4, 2, 4) - _rect("z", 2, 6, 8, 2, 4)
    sq |= _rect("x", 0, 0, 6, 0, 4) | _rect("x", 10, 0, 6, 0, 4)
    sq |= _rect("y", 0, 0, 10, 0, 4) | _rect("y", 6, 0, 10, 0, 4)
    # chimney A walls
    sq |= _rect("x", 2, 2, 4, 2, 4) | _rect("x", 4, 2, 4, 2, 4)
    sq |= _rect("y", 2, 2, 4, 2, 4) | _rect("y", 4, 2, 4, 2, 4)
    # chimney B walls
    sq |= _rect("x", 6, 2, 4, 0, 2) | _rect("x", 8, 2, 4, 0, 2)
    sq |= _rect("y", 2, 6, 8, 0, 2) | _rect("y", 4, 6, 8, 0, 2)
    # the two inner walls
    sq |= _rect("y", 3, 0, 2, 2, 4) | _rect("y", 3, 8, 10, 0, 2)

    ids = {}
    facets = []
    for s in sorted(sq):
        p0, p1, p2, p3 = _square_corners(s)
        for p in (p0, p1, p2, p3):
            ids.setdefault(p, None)
        facets.append((p0, p1, p2))
        facets.append((p0, p2, p3))
    for i, p in enumerate(sorted(ids)):
        ids[p] = i
    labels = {i: "({},{},{})".format(*p) for p, i in ids.items()}
    c = from_maximal([[ids[p] for p in f] for f in facets], labels, name="bings-house")
    return NamedComplex(c, "bings-house")


# -- dunce hat with a flap -----------------------------------------------------

def dunce_hat_with_flap() -> NamedComplex:
    """Dunce hat with a disc glued along an arc through its vertex.

    The arc is e1 - m1 - V - m2 - e2 with m1, m2 in the two cone sheets at V
    (the two cycles of V's link), e1, e2 manifold points one step further out.
    The disc is the cone from a new vertex w over that arc, so its free arc
    is e1 - w - e2.
    """
    from .stardisk import bridges

    base = dunce_hat("quotient")
    d = base.complex
    v = base.marked["V"]
    seam = _seam_vertices(d)
    graph = _link(d, v)
    cut = bridges(graph)
    cyclic = [e for e in graph.edges if e not in cut]
    components = _components(cyclic)
    if len(components) != 2:
        raise InvalidParameter("expected two cone sheets at the dunce hat vertex")

    neighbours = {u: set() for u in d.vertices}
    for a, b in d.simplices_of_dim(1):
        neighbours[a].add(b)
        neighbours[b].add(a)
    arc_ends = []
    for comp in components:
        m = min(u for u in comp if u not in seam)
        e = min(u for u in neighbours[m]
                if u != v and u not in neighbours[v] and u not in seam)
        arc_ends.append((m, e))
    (m1, e1), (m2, e2) = arc_ends
    w = max(d.vertices) + 1
    flap = [(e1, m1, w), (m1, v, w), (v, m2, w), (m2, e2, w)]
    labels = dict(d.labels)
    labels[w] = "w"
    f = from_maximal(d.facets() + flap, labels, name="dunce-hat-flap")
    arc = [tuple(sorted(p)) for p in ((e1, m1), (m1, v), (v, m2), (m2, e2))]
    free_arc = [tuple(sorted(p)) for p in ((e1, w), (w, e2))]
    return NamedComplex(f, "dunce-hat-flap",
                        {"V": v, "L": arc, "free-arc": free_arc, "flap-vertex": w,
                         "E": [tuple(sorted(t)) for t in flap]})


def _seam_vertices(d: SimplicialComplex) -> set:
    """Vertices on edges lying in three or more triangles."""
    seam = set()
    for e in d.simplices_of_dim(1):
        if len(d.cofaces(e)) >= 3:
            seam.update(e)
    return seam


def _link(d, v):
    from .complex import link_graph
    return link_graph(d, v)


def _components(edges) -> list:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups = {}
    for x in list(parent):
        groups.setdefault(find(x), set()).add(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


BUILDERS = {
    "dunce-hat": lambda: dunce_hat("quotient"),
    "dunce-hat-minimal8": lambda: dunce_hat("minimal8"),
    "bings-house": bings_house,
    "dunce-hat-flap": dunce_hat_with_flap,
}

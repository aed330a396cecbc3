"""Coalescent contractions built from collapse sequences.

Each elementary collapse (sigma, tau) with tau = a * sigma becomes a strong
deformation retraction of the closed simplex tau onto a * boundary(sigma).
Points of tau are written in cone coordinates p = (1 - u) q + u a with q in
sigma; in the cylinder sigma x [0, 1] they move along rays from the centre
P0 = (barycenter(sigma), -1) until the ray leaves through the top (u = 1) or a
side (some coordinate of q hits 0). Inside stage i of m, occupying
[i/m, (i+1)/m], the ray parameter moves linearly from 1 to its exit value, so
all positions at rational times are rational.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .collapse import CollapsePair, CollapseSequence, replay, validate_sequence
from .complex import SimplicialComplex
from .errors import (
    InvalidParameter,
    InvalidSequence,
    PointNotInComplex,
    StageOutOfRange,
    TerminalNotAPoint,
    UnsortedTimes,
)


@dataclass(frozen=True)
class PLPoint:
    """A point given by barycentric coordinates; zero coordinates are dropped."""

    coords: tuple  # ((vertex, Fraction), ...) sorted by vertex

    def __post_init__(self):
        clean = tuple(sorted((int(v), Fraction(x)) for v, x in self.coords if x != 0))
        if not clean:
            raise InvalidParameter("a point needs at least one nonzero coordinate")
        if any(x < 0 for _, x in clean):
            raise InvalidParameter("barycentric coordinates must be >= 0")
        if sum(x for _, x in clean) != 1:
            raise InvalidParameter("barycentric coordinates must sum to 1")
        if len({v for v, _ in clean}) != len(clean):
            raise InvalidParameter("repeated vertex in point coordinates")
        object.__setattr__(self, "coords", clean)

    @classmethod
    def of(cls, mapping: Mapping[int, object]) -> "PLPoint":
        return cls(tuple((v, Fraction(x)) for v, x in mapping.items()))

    @classmethod
    def vertex(cls, v: int) -> "PLPoint":
        return cls(((v, Fraction(1)),))

    @classmethod
    def barycenter(cls, s: Iterable[int]) -> "PLPoint":
        s = tuple(s)
        return cls(tuple((v, Fraction(1, len(s))) for v in s))

    @property
    def carrier(self) -> tuple:
        return tuple(v for v, _ in self.coords)

    def as_dict(self) -> dict:
        return dict(self.coords)

    def __getitem__(self, v) -> Fraction:
        return self.as_dict().get(v, Fraction(0))


def pl_distance(p: PLPoint, q: PLPoint) -> Fraction:
    """L1 distance between barycentric coordinate vectors."""
    a, b = p.as_dict(), q.as_dict()
    return sum((abs(a.get(v, 0) - b.get(v, 0)) for v in set(a) | set(b)), Fraction(0))


@dataclass(frozen=True)
class RetractionStage:
    pair: CollapsePair

    @property
    def sigma(self) -> tuple:
        return self.pair.free_face

    @property
    def tau(self) -> tuple:
        return self.pair.coface

    @property
    def apex(self) -> int:
        return self.pair.apex

    def cylinder(self, p: PLPoint):
        """(q, u) cylinder coordinates of p, or None when p is not moved.

        Points outside the closed coface and the apex itself are fixed.
        """
        if not set(p.carrier) <= set(self.tau):
            return None
        d = p.as_dict()
        u = d.get(self.apex, Fraction(0))
        if u == 1:
            return None
        q = {v: d.get(v, Fraction(0)) / (1 - u) for v in self.sigma}
        return q, u

    def ray_bounds(self, q: dict, u: Fraction) -> tuple:
        """Entry and exit ray parameters, relative to the point at parameter 1."""
        b = Fraction(1, len(self.sigma))
        exit_ = 2 / (u + 1)
        for qi in q.values():
            if qi < b:
                exit_ = min(exit_, b / (b - qi))
        entry = 1 / (u + 1)
        return entry, exit_

    def moves(self, p: PLPoint) -> bool:
        cyl = self.cylinder(p)
        if cyl is None:
            return False
        return self.ray_bounds(*cyl)[1] > 1

    def apply(self, p: PLPoint, progress) -> PLPoint:
        """Position after running this stage for a fraction ``progress`` of its time."""
        progress = Fraction(progress)
        cyl = self.cylinder(p)
        if cyl is None or progress == 0:
            return p
        q, u = cyl
        _, exit_ = self.ray_bounds(q, u)
        if exit_ == 1:
            return p
        return self.point_at(q, u, 1 + progress * (exit_ - 1))

    def point_at(self, q: dict, u: Fraction, s: Fraction) -> PLPoint:
        """Point at ray parameter ``s`` on the ray through cylinder point (q, u)."""
        b = Fraction(1, len(self.sigma))
        u_new = -1 + s * (u + 1)
        coords = {v: (1 - u_new) * (b + s * (qi - b)) for v, qi in q.items()}
        coords[self.apex] = u_new
        return PLPoint.of(coords)


@dataclass(frozen=True)
class PLContraction:
    start: SimplicialComplex
    stages: tuple
    complexes: tuple  # K_0 = start, ..., K_m

    @property
    def m(self) -> int:
        return len(self.stages)

    @property
    def terminal(self) -> int:
        (s,) = self.complexes[-1].simplices
        return s[0]

    def stage_window(self, t) -> tuple:
        """(stage index, progress in [0, 1)) for time t; index m means done."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise InvalidParameter(f"time {t} outside [0, 1]")
        if self.m == 0:
            return 0, Fraction(0)
        scaled = t * self.m
        i = int(scaled)  # floor for t >= 0
        return i, scaled - i


def witness_from_collapse(c: SimplicialComplex, s: CollapseSequence) -> PLContraction:
    if not validate_sequence(c, s):
        raise InvalidSequence("collapse sequence does not replay on this complex")
    if len(s.terminal) != 1:
        raise TerminalNotAPoint("collapse sequence does not end at a single vertex")
    complexes = tuple(replay(c, s.pairs))
    return PLContraction(c, tuple(RetractionStage(p) for p in s.pairs), complexes)


def _check_point(h: PLContraction, p: PLPoint):
    if p.carrier not in h.start:
        raise PointNotInComplex(f"carrier {p.carrier} is not a simplex of the complex")


def evaluate(h: PLContraction, p: PLPoint, t) -> PLPoint:
    _check_point(h, p)
    i, progress = h.stage_window(t)
    for stage in h.stages[:i]:
        p = stage.apply(p, 1)
    if i < h.m and progress:
        p = h.stages[i].apply(p, progress)
    return p


def track(h: PLContraction, p: PLPoint, times) -> list:
    times = [Fraction(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise UnsortedTimes("track times must be non-decreasing")
    _check_point(h, p)
    out = []
    pos, done = p, 0
    for t in times:
        i, progress = h.stage_window(t)
        while done < i:
            pos = h.stages[done].apply(pos, 1)
            done += 1
        out.append(h.stages[i].apply(pos, progress) if i < h.m and progress else pos)
    return out


@dataclass(frozen=True)
class ImageSlice:
    """Bounds on the image H_t(K): ``lower`` <= image <= ``upper``."""

    time: Fraction
    upper: SimplicialComplex
    lower: SimplicialComplex
    exact: bool
    surjective: bool


def image_complex(h: PLContraction, t) -> ImageSlice:
    t = Fraction(t)
    i, progress = h.stage_window(t)
    if h.m == 0:
        return ImageSlice(t, h.start, h.start, True, True)
    upper = h.complexes[i]
    if progress == 0:
        return ImageSlice(t, upper, upper, True, i == 0)
    return ImageSlice(t, upper, h.complexes[i + 1], False, False)


def in_image(h: PLContraction, y: PLPoint, t) -> bool:
    """Exact test of y in H_t(K)."""
    i, progress = h.stage_window(t)
    if h.m == 0:
        return y.carrier in h.start
    if y.carrier not in h.complexes[i]:
        return False
    if progress == 0 or i >= h.m:
        return True
    stage = h.stages[i]
    cyl = stage.cylinder(y)
    if cyl is None:
        return True
    entry, exit_ = stage.ray_bounds(*cyl)
    if exit_ == 1:
        return True
    # ray segment [entry, exit] is mapped onto [(1-l) entry + l exit, exit]
    return 1 >= (1 - progress) * entry + progress * exit_


def missing_point(h: PLContraction, t) -> PLPoint | None:
    """A point of K not in H_t(K), or None when the slice is surjective."""
    if h.m == 0 or Fraction(t) == 0:
        return None
    y = PLPoint.barycenter(h.stages[0].sigma)
    return None if in_image(h, y, t) else y


def opening_time(h: PLContraction) -> Fraction:
    """sup of times up to which every slice is onto: 0 with stages, else 1."""
    return Fraction(0) if h.m else Fraction(1)


def restart_at(h: PLContraction, j: int) -> PLContraction:
    """The contraction of K_j given by stages j..m-1, rescaled onto [0, 1]."""
    if not 0 <= j <= h.m:
        raise StageOutOfRange(f"stage {j} outside 0..{h.m}")
    if j == 0:
        return h
    return PLContraction(h.complexes[j], h.stages[j:], h.complexes[j:])


# -- coalescence audit ---------------------------------------------------------

@dataclass(frozen=True)
class TrackTable:
    points: tuple
    times: tuple
    positions: tuple  # positions[i][k] = H(points[i], times[k])
    pairs: tuple | None = None  # index pairs to audit; all pairs when None

    def __post_init__(self):
        if len(self.positions) != len(self.points) or any(
                len(row) != len(self.times) for row in self.positions):
            raise InvalidParameter("track table grid does not match its samples")
        times = [Fraction(t) for t in self.times]
        if any(b < a for a, b in zip(times, times[1:])):
            raise UnsortedTimes("track table times must be non-decreasing")


@dataclass(frozen=True)
class CoalescenceReport:
    passed: bool
    pairs_checked: int
    violation: tuple | None = None  # (i, j, t_merge, t_split)
    merged_pairs: int = 0


def build_table(h: PLContraction, points, times, pairs=None) -> TrackTable:
    times = tuple(Fraction(t) for t in times)
    positions = tuple(tuple(track(h, p, times)) for p in points)
    return TrackTable(tuple(points), times, positions, None if pairs is None else tuple(pairs))


def audit_table(table: TrackTable) -> CoalescenceReport:
    n = len(table.points)
    pairs = table.pairs if table.pairs is not None else [
        (i, j) for i in range(n) for j in range(i + 1, n)]
    worst = None
    merged = 0
    for idx, (i, j) in enumerate(pairs):
        a, b = table.positions[i], table.positions[j]
        met = None
        for k in range(len(table.times)):
            same = a[k] == b[k]
            if met is None and same:
                met = k
            elif met is not None and not same:
                key = (table.times[k], idx)
                if worst is None or key < worst[0]:
                    worst = (key, (i, j, table.times[met], table.times[k]))
                break
        if met is not None:
            merged += 1
    if worst is None:
        return CoalescenceReport(True, len(pairs), None, merged)
    return CoalescenceReport(False, len(pairs), worst[1], merged)


def random_point(rng: random.Random, c: SimplicialComplex, max_weight: int = 9) -> PLPoint:
    s = rng.choice(c.sorted_simplices())
    weights = [rng.randint(1, max_weight) for _ in s]
    total = sum(weights)
    return PLPoint(tuple((v, Fraction(w, total)) for v, w in zip(s, weights)))


def ray_mates(rng: random.Random, h: PLContraction) -> tuple:
    """Two distinct points on one ray of a random stage; they merge at its end."""
    j = rng.randrange(h.m)
    stage = h.stages[j]
    for _ in range(100):
        p = random_point(rng, SimplicialComplex(
            [f for f in h.complexes[j].simplices if set(f) <= set(stage.tau)]))
        cyl = stage.cylinder(p)
        if cyl is None:
            continue
        entry, exit_ = stage.ray_bounds(*cyl)
        if exit_ == 1 or entry >= exit_:
            continue
        r = entry + (exit_ - entry) * Fraction(rng.randint(1, 9), 10)
        other = stage.point_at(*cyl, r)
        if other != p and other.carrier in h.start:
            return p, other
    return random_point(rng, h.start), random_point(rng, h.start)


def sample_times(rng: random.Random, h: PLContraction, n: int) -> tuple:
    """``n`` sorted rational times: 0, 1, stage boundaries, then random fill."""
    bounds = sorted({Fraction(0), Fraction(1)} | {Fraction(i, h.m) for i in range(1, h.m)})
    if len(bounds) >= n:
        return tuple(bounds[:max(n - 1, 1)] + [Fraction(1)])
    times = set(bounds)
    while len(times) < n:
        den = rng.randint(2, 60)
        times.add(Fraction(rng.randint(1, den - 1), den))
    return tuple(sorted(times))


def check_coalescent(source, pairs: int = 100, times: int = 20, seed: int = 0) -> CoalescenceReport:
    """Exact audit: once two tracks meet they never separate.

    ``source`` is a :class:`TrackTable` (audited as given) or a
    :class:`PLContraction`, sampled with ``pairs`` point pairs (half random,
    half sharing a ray so that they do merge) and ``times`` rational times.
    """
    if isinstance(source, TrackTable):
        return audit_table(source)
    h = source
    rng = random.Random(seed)
    points, index_pairs = [], []
    for k in range(pairs):
        if h.m and k % 2:
            a, b = ray_mates(rng, h)
        else:
            a, b = random_point(rng, h.start), random_point(rng, h.start)
        index_pairs.append((len(points), len(points) + 1))
        points += [a, b]
    table = build_table(h, points, sample_times(rng, h, times), index_pairs)
    return audit_table(table)

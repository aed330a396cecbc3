import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coalescent import (
    CollapsePair,
    CollapseSequence,
    PLPoint,
    check_coalescent,
    cone,
    disc_fan,
    evaluate,
    from_maximal,
    full_simplex,
    greedy_collapse,
    image_complex,
    opening_time,
    restart_at,
    track,
    witness_from_collapse,
)
from coalescent.builders import random_graph
from coalescent.coalesce import (
    PLContraction,
    RetractionStage,
    TrackTable,
    build_table,
    in_image,
    missing_point,
    pl_distance,
    random_point,
    ray_mates,
)
from coalescent.errors import (
    InvalidParameter,
    InvalidSequence,
    PointNotInComplex,
    StageOutOfRange,
    TerminalNotAPoint,
    UnsortedTimes,
)


def contraction(c, strategy="lex", seed=0):
    return witness_from_collapse(c, greedy_collapse(c, strategy, seed).sequence)


def witness_corpus():
    rng = random.Random(21)
    items = [full_simplex(n).complex for n in (1, 2, 3)] + [disc_fan(k).complex for k in (3, 5, 8)]
    items += [cone(random_graph(rng, 5, 7)).complex for _ in range(3)]
    return [contraction(c, "random", i) for i, c in enumerate(items)]


def sub_in(h, i):
    """Closed coface of stage i as a complex, for sampling points inside it."""
    tau = h.stages[i].tau
    return from_maximal([tau])


def test_point_canonical_form():
    p = PLPoint.of({0: Fraction(1, 2), 1: Fraction(1, 2), 2: 0})
    assert p.carrier == (0, 1) and p == PLPoint.barycenter((0, 1))
    with pytest.raises(InvalidParameter):
        PLPoint.of({0: Fraction(1, 2)})
    with pytest.raises(InvalidParameter):
        PLPoint.of({0: Fraction(3, 2), 1: Fraction(-1, 2)})
    assert pl_distance(PLPoint.vertex(0), PLPoint.vertex(1)) == 2


def test_witness_examples(dunce):
    h = contraction(full_simplex(2).complex)
    assert h.m == 3 and [len(k) for k in h.complexes] == [7, 5, 3, 1]
    fan = disc_fan(4).complex
    assert contraction(fan).m == (len(fan) - 1) // 2
    d = dunce.complex
    tri = d.simplices_of_dim(2)[0]
    fake = CollapseSequence((CollapsePair(tri[:2], tri),), d)
    with pytest.raises(InvalidSequence):
        witness_from_collapse(d, fake)
    c = full_simplex(2).complex
    partial = greedy_collapse(c).sequence
    first = CollapsePair(partial.pairs[0].free_face, partial.pairs[0].coface)
    from coalescent.collapse import replay
    with pytest.raises(TerminalNotAPoint):
        witness_from_collapse(c, CollapseSequence((first,), replay(c, (first,))[-1]))


def test_evaluate_examples():
    h = contraction(full_simplex(2).complex)
    rng = random.Random(1)
    for _ in range(50):
        p = random_point(rng, h.start)
        assert evaluate(h, p, 0) == p
        assert evaluate(h, p, 1) == PLPoint.vertex(h.terminal)
    # points of the retained boundary of the first coface do not move in stage 0
    stage = h.stages[0]
    kept = [f for f in from_maximal([stage.tau]).simplices
            if f != stage.tau and f != stage.sigma and not set(stage.sigma) <= set(f)]
    for f in kept:
        p = PLPoint.barycenter(f)
        for t in (Fraction(1, 7), Fraction(1, 5), Fraction(1, 3)):
            assert evaluate(h, p, t) == p
    with pytest.raises(PointNotInComplex):
        evaluate(h, PLPoint.vertex(9), Fraction(1, 2))
    with pytest.raises(InvalidParameter):
        evaluate(h, PLPoint.vertex(0), Fraction(3, 2))


def test_track_examples():
    h = contraction(disc_fan(5).complex)
    times = [Fraction(i, 10) for i in range(11)]
    assert track(h, PLPoint.vertex(h.terminal), times) == [PLPoint.vertex(h.terminal)] * 11
    p = PLPoint.barycenter((0, 1, 2))
    assert track(h, p, [0, 1]) == [p, PLPoint.vertex(h.terminal)]
    assert track(h, p, times) == [evaluate(h, p, t) for t in times]
    with pytest.raises(UnsortedTimes):
        track(h, p, [Fraction(1, 2), Fraction(1, 3)])


def test_image_slices():
    h = contraction(full_simplex(2).complex)
    first = image_complex(h, 0)
    assert first.surjective and first.exact and first.upper == h.start
    for t in (Fraction(1, 100), Fraction(1, 3), Fraction(1, 2), Fraction(99, 100)):
        assert not image_complex(h, t).surjective
    last = image_complex(h, 1)
    assert len(last.upper) == 1 and last.exact


def test_missing_point_is_missing_on_its_ray():
    h = contraction(full_simplex(2).complex)
    stage = h.stages[0]
    y = missing_point(h, Fraction(1, 6))
    assert y == PLPoint.barycenter(stage.sigma)
    q, u = stage.cylinder(y)
    entry, exit_ = stage.ray_bounds(q, u)
    progress = Fraction(1, 2)  # t = 1/6 is halfway through stage 0
    for j in range(41):
        s = entry + (exit_ - entry) * Fraction(j, 40)
        z = stage.point_at(q, u, s)
        assert stage.apply(z, progress) != y
    assert not in_image(h, y, Fraction(1, 6))
    assert in_image(h, y, 0)


def test_opening_times():
    h = contraction(full_simplex(2).complex)
    assert opening_time(h) == 0
    point = PLContraction(from_maximal([[0]]), (), (from_maximal([[0]]),))
    assert opening_time(point) == 1
    for j in range(h.m):
        assert opening_time(restart_at(h, j)) == 0
    end = restart_at(h, h.m)
    assert end.m == 0 and opening_time(end) == 1 and len(end.start) == 1
    assert restart_at(h, 0) is h
    with pytest.raises(StageOutOfRange):
        restart_at(h, h.m + 1)


def test_restart_runs_the_tail():
    h = contraction(disc_fan(4).complex)
    j = 3
    r = restart_at(h, j)
    rng = random.Random(3)
    for _ in range(20):
        p = random_point(rng, h.complexes[j])
        for k in range(0, 11):
            t = Fraction(k, 10)
            # restarted time t corresponds to original time (j + t (m - j)) / m
            original = (j + t * (h.m - j)) / h.m
            assert evaluate(r, p, t) == evaluate(h, p, original)


def test_coalescence_examples():
    h = contraction(full_simplex(2).complex)
    report = check_coalescent(h, pairs=100, times=20, seed=0)
    assert report.passed and report.pairs_checked == 100 and report.merged_pairs > 0

    a, b, c = (PLPoint.vertex(v) for v in (0, 1, 2))
    times = (0, Fraction(1, 3), Fraction(2, 3), 1)
    bad = TrackTable(("a", "b"), times, ((a, a, a, a), (b, a, b, b)))
    out = check_coalescent(bad)
    assert not out.passed and out.violation == (0, 1, Fraction(1, 3), Fraction(2, 3))
    good = TrackTable(("a", "b", "c"), times, ((a, a, a, a), (b, a, a, a), (c, c, c, a)))
    assert check_coalescent(good).passed
    with pytest.raises(InvalidParameter):
        TrackTable(("a",), times, ((a, a),))
    with pytest.raises(UnsortedTimes):
        TrackTable(("a",), (1, 0), ((a, a),))


def test_merged_at_boundary_stay_merged():
    for h in witness_corpus():
        rng = random.Random(h.m)
        for _ in range(20):
            p, q = ray_mates(rng, h)
            times = [Fraction(i, 4 * h.m) for i in range(4 * h.m + 1)]
            tp, tq = track(h, p, times), track(h, q, times)
            met = [k for k in range(len(times)) if tp[k] == tq[k]]
            assert met, "ray mates must meet"
            assert all(tp[k] == tq[k] for k in range(met[0], len(times)))
            # they meet exactly at a stage boundary
            assert (times[met[0]] * h.m).denominator == 1


@pytest.mark.parametrize("h", witness_corpus(), ids=lambda h: f"m{h.m}")
def test_stage_properties(h):
    rng = random.Random(h.m * 7)
    for i, stage in enumerate(h.stages):
        inside = sub_in(h, i)
        nxt = h.complexes[i + 1]
        for _ in range(40):
            p = random_point(rng, inside)
            end = stage.apply(p, 1)
            assert end.carrier in nxt  # the stage retracts onto the next complex
            assert stage.apply(end, Fraction(1, 2)) == end
        # idempotence: points already in K_{i+1} are fixed throughout stage i
        for _ in range(20):
            p = random_point(rng, nxt)
            for lam in (Fraction(1, 3), Fraction(1, 2), 1):
                assert stage.apply(p, lam) == p
        # injectivity strictly inside the stage
        for _ in range(60):
            p, q = random_point(rng, inside), random_point(rng, inside)
            if p == q:
                continue
            for lam in (Fraction(1, 9), Fraction(1, 2), Fraction(8, 9)):
                assert stage.apply(p, lam) != stage.apply(q, lam)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_coalescent_on_random_cones(seed):
    rng = random.Random(seed)
    c = cone(random_graph(rng, rng.randint(2, 6), rng.randint(1, 8))).complex
    h = contraction(c, "random", seed)
    assert check_coalescent(h, pairs=20, times=12, seed=seed).passed
    p = random_point(rng, c)
    assert evaluate(h, p, 0) == p and evaluate(h, p, 1) == PLPoint.vertex(h.terminal)


# -- continuity probe ------------------------------------------------------------

def local_bound(stage, p, q):
    """Empirical stretch bound for one stage: 4 |tau| / (1 - u), u the larger apex weight."""
    u = max(p[stage.apex], q[stage.apex])
    return Fraction(4 * len(stage.tau)) / (1 - u)


def nudge(rng, p):
    d = p.as_dict()
    a, b = rng.sample(sorted(d), 2)
    delta = min(Fraction(1, rng.choice([10, 100, 1000])), d[a])
    d[a] -= delta
    d[b] += delta
    return PLPoint.of(d)


@pytest.mark.parametrize("h", witness_corpus(), ids=lambda h: f"m{h.m}")
def test_continuity_probe(h):
    rng = random.Random(5)
    checked = 0
    for i, stage in enumerate(h.stages):
        inside = sub_in(h, i)
        for _ in range(150):
            p = random_point(rng, inside, 60)
            if len(p.carrier) < 2 or p[stage.apex] == 1:
                continue
            q = nudge(rng, p)
            if q == p or q[stage.apex] == 1:
                continue
            lam = Fraction(rng.randint(0, 12), 12)
            stretch = pl_distance(stage.apply(p, lam), stage.apply(q, lam))
            assert stretch <= local_bound(stage, p, q) * pl_distance(p, q)
            checked += 1
    assert checked > 0 or h.m == 1


def test_stretch_blows_up_near_the_apex():
    # on a retained side face next to the apex the retraction is continuous but
    # not Lipschitz: the stretch grows like 1 / (distance to the apex)
    stage = RetractionStage(CollapsePair((1, 2), (0, 1, 2)))
    ratios = []
    for k in (10, 100, 1000):
        d = Fraction(1, k)
        p = PLPoint.of({0: 1 - d, 2: d})
        q = PLPoint.of({0: 1 - d, 1: d * d / 4, 2: d - d * d / 4})
        ratios.append(pl_distance(stage.apply(p, 1), stage.apply(q, 1)) / pl_distance(p, q))
    assert ratios == [40, 400, 4000]

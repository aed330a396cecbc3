import random

import pytest

from coalescent import (
    bings_house,
    boundary_sphere,
    census,
    cone,
    disc_fan,
    free_faces,
    from_maximal,
    full_simplex,
    homology,
    link_graph,
    star_disk_report,
)
from coalescent.builders import BUILDERS, NamedComplex, random_2complex
from coalescent.errors import ApexCollision, DimensionTooHigh, InvalidParameter


def test_full_simplex_examples():
    assert full_simplex(0).complex.simplices == {(0,)}
    assert len(full_simplex(2).complex) == 7
    s3 = full_simplex(3).complex
    assert len(s3) == 15 and census(s3).euler_characteristic == 1
    with pytest.raises(DimensionTooHigh):
        full_simplex(-1)


def test_boundary_sphere_examples():
    circle = boundary_sphere(1).complex
    assert circle.f_vector == (3, 3) and census(circle).euler_characteristic == 0
    s2 = boundary_sphere(2).complex
    assert s2.f_vector[2] == 4 and census(s2).euler_characteristic == 2
    assert homology(s2, reduced=False).as_groups() == ["Z", "0", "Z"]
    with pytest.raises(DimensionTooHigh):
        boundary_sphere(0)


def test_disc_fan_and_cone():
    d3 = disc_fan(3).complex
    assert d3.f_vector[2] == 3 and census(d3).euler_characteristic == 1
    two_points = from_maximal([[0], [1]])
    c = cone(two_points).complex
    assert c.f_vector == (3, 2) and census(c).connected
    with pytest.raises(ApexCollision):
        cone(two_points, apex=1)
    with pytest.raises(InvalidParameter):
        disc_fan(2)


def test_named_complex_rejects_foreign_marks():
    with pytest.raises(InvalidParameter):
        NamedComplex(full_simplex(1).complex, "edge", {"V": 9})


@pytest.mark.parametrize("key", sorted(BUILDERS))
def test_builder_outputs_are_closed(key):
    nc = BUILDERS[key]()
    c = nc.complex
    assert c.is_closed() and c.dim == 2
    assert c.vertices == list(range(len(c.vertices)))
    assert census(c).connected


def test_dunce_hat_schemes_agree(dunce, dunce8):
    for nc in (dunce, dunce8):
        c = nc.complex
        assert homology(c).betti == (0, 0, 0)
        assert free_faces(c) == []
        v = nc.marked["V"]
        report = star_disk_report(c)
        assert report.failing_points() == [(v,)]
        # only simplices of St(V) are flagged
        assert set(report.failures()[0].failing_simplices) <= c.star(v)
    # golden counts of the stored and constructed triangulations
    assert dunce8.complex.f_vector == (8, 24, 17)
    assert dunce.complex.f_vector == (157, 480, 324)


def test_bings_house_geometry(bing):
    c = bing.complex
    assert c.f_vector == (309, 972, 664)
    assert all(len(c.cofaces(e)) >= 2 for e in c.simplices_of_dim(1))
    singular = [v for v in c.vertices if not link_graph(c, v).is_cycle()]
    assert len(singular) >= 8
    assert census(c).euler_characteristic == 1


def test_flap_contains_dunce_hat(flap, dunce):
    f, d = flap.complex, dunce.complex
    assert {frozenset(d.label(v) for v in s) for s in d.simplices} <= {
        frozenset(f.label(v) for v in s) for s in f.simplices}
    v = flap.marked["V"]
    assert f.label(v) == "V"
    arc = flap.marked["L"]
    assert len(arc) == 4 and all(e in f for e in arc)
    assert all(e in f.star(v) or v not in e for e in arc)
    # the flap is a disc attached along L, so chi and homology are unchanged
    assert census(f).euler_characteristic == 1 and homology(f).is_trivial()
    assert free_faces(f)


def test_random_2complex_is_reproducible():
    a = random_2complex(random.Random(9))
    b = random_2complex(random.Random(9))
    assert a == b and a.dim <= 2

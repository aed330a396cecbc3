import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from coalescent import (
    Budgets,
    Conclusion,
    boundary_sphere,
    census,
    coalescence_verdict,
    disc_fan,
    from_maximal,
    full_simplex,
    homology,
    pi1_presentation,
    simplify_presentation,
    smith_normal_form,
)
from coalescent.builders import random_2complex
from coalescent.errors import DimensionTooHigh, NotConnected
from coalescent.fundamental_group import (
    Pi1Verdict,
    Presentation,
    abelianization_is_nontrivial,
    cyclic_reduce,
    free_reduce,
)
from coalescent.homology import IntegerMatrix, boundary_matrix
from coalescent.verdict import Evidence, contractibility_evidence


def random_matrix(rng, rows, cols, lo=-4, hi=4):
    return IntegerMatrix.from_dense([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def sympy_factors(m):
    if m.rows == 0 or m.cols == 0:
        return ()
    dense = sympy.Matrix(m.to_dense())
    return tuple(abs(int(x)) for x in invariant_factors(dense, domain=ZZ) if x != 0)


def test_snf_examples():
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 4], [6, 8]])) == ((2, 4), 2)
    eye = IntegerMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert smith_normal_form(eye) == ((1, 1, 1), 3)
    assert smith_normal_form(IntegerMatrix(3, 2, {})) == ((), 0)


def test_snf_matches_sympy():
    rng = random.Random(12)
    for _ in range(150):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        divisors, rank = smith_normal_form(m)
        assert divisors == sympy_factors(m)
        assert rank == len(divisors)
        assert all(b % a == 0 for a, b in zip(divisors, divisors[1:]))


def random_unimodular(rng, n):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            u[i] = [-x for x in u[i]]
            continue
        k = rng.randint(-2, 2)
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
    return IntegerMatrix.from_dense(u)


def test_snf_invariant_under_unimodular_change():
    rng = random.Random(13)
    for _ in range(100):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, r, c)
        moved = random_unimodular(rng, r) @ m @ random_unimodular(rng, c)
        assert smith_normal_form(moved) == smith_normal_form(m)


small_complexes = st.builds(
    lambda seed, nv, nt, ne: random_2complex(random.Random(seed), nv, nt, ne),
    st.integers(0, 10**6), st.integers(3, 9), st.integers(1, 9), st.integers(0, 4))


@given(small_complexes)
@settings(max_examples=80, deadline=None)
def test_boundary_of_boundary_is_zero(c):
    for d in range(1, c.dim + 1):
        assert (boundary_matrix(c, d - 1) @ boundary_matrix(c, d)).is_zero()


@given(small_complexes)
@settings(max_examples=80, deadline=None)
def test_euler_poincare_and_rational_ranks(c):
    h = homology(c)
    chi = census(c).euler_characteristic
    assert chi == 1 + sum((-1) ** d * b for d, b in enumerate(h.betti))
    # Betti numbers from ranks over the rationals, computed by sympy
    ranks = {}
    for d in range(c.dim + 2):
        m = boundary_matrix(c, d) if d <= c.dim else None
        ranks[d] = sympy.Matrix(m.to_dense()).rank() if m is not None and m.rows and m.cols else 0
    for d, b in enumerate(h.betti):
        assert b == len(c.simplices_of_dim(d)) - ranks[d] - ranks[d + 1]


def test_boundary_matrices_on_builders(dunce, bing):
    for c in (dunce.complex, bing.complex, full_simplex(3).complex):
        for d in range(1, c.dim + 1):
            assert (boundary_matrix(c, d - 1) @ boundary_matrix(c, d)).is_zero()


def test_homology_examples(dunce, bing):
    h = homology(boundary_sphere(2).complex)
    assert h.betti == (0, 0, 1) and not any(h.torsion)
    assert homology(dunce.complex).is_trivial()
    assert homology(bing.complex).is_trivial()
    assert homology(boundary_sphere(1).complex).as_groups() == ["0", "Z"]


def test_torsion_of_projective_plane():
    # 6-vertex real projective plane
    rp2 = from_maximal([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])
    h = homology(rp2)
    assert h.betti == (0, 0, 0) and h.torsion == ((), (2,), ())
    assert h.as_groups() == ["0", "Z/2", "0"]


def test_pi1_examples(dunce):
    circle = pi1_presentation(boundary_sphere(1).complex)
    assert len(circle.generators) == 1 and circle.relators == ()
    assert simplify_presentation(circle)[1] is Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION
    for c in (full_simplex(2).complex, disc_fan(5).complex, dunce.complex):
        assert simplify_presentation(pi1_presentation(c), 10_000)[1] is Pi1Verdict.TRIVIAL
    with pytest.raises(NotConnected):
        pi1_presentation(from_maximal([[0, 1], [2, 3]]))
    with pytest.raises(NotConnected):
        pi1_presentation(from_maximal([]))


def test_simplify_examples():
    dunce_word = Presentation(("a",), ((1, 1, -1),))
    out, verdict = simplify_presentation(dunce_word)
    assert verdict is Pi1Verdict.TRIVIAL and out.generators == ()
    assert simplify_presentation(Presentation(("a",), ()))[1] is Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION
    # <a, b | a b a^-1 b^-1> is Z^2
    torus = Presentation(("a", "b"), ((1, 2, -1, -2),))
    assert simplify_presentation(torus)[1] is Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION
    # <a | a^2> is Z/2
    assert simplify_presentation(Presentation(("a",), ((1, 1),)))[1] is \
        Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION


def test_word_reduction():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert str(Presentation(("a", "b"), ((1, -2),))) == "< a, b | a b^-1 >"


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=6)


@given(st.lists(words, max_size=4))
@settings(max_examples=200, deadline=None)
def test_simplify_never_overclaims(relators):
    p = Presentation(("a", "b", "c"), tuple(tuple(r) for r in relators))
    out, verdict = simplify_presentation(p)
    if abelianization_is_nontrivial(p):
        assert verdict is not Pi1Verdict.TRIVIAL
    if verdict is Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION:
        assert abelianization_is_nontrivial(p)


def test_evidence_examples(dunce):
    assert contractibility_evidence(full_simplex(2).complex).evidence is Evidence.COLLAPSIBLE
    ev = contractibility_evidence(dunce.complex)
    assert ev.evidence is Evidence.HOMOTOPY_TRIVIAL and ev.collapse == "no"
    circle = contractibility_evidence(boundary_sphere(1).complex)
    assert circle.evidence is Evidence.INCONCLUSIVE
    assert circle.pi1 is Pi1Verdict.NONTRIVIAL_BY_ABELIANIZATION


def test_verdict_examples(dunce, bing):
    assert coalescence_verdict(bing.complex).conclusion is Conclusion.NO_COALESCENT_CONTRACTION
    s2 = coalescence_verdict(full_simplex(2).complex)
    assert s2.conclusion is Conclusion.COALESCENT_CONTRACTION_EXISTS and s2.witness is not None
    d = coalescence_verdict(dunce.complex)
    assert d.conclusion is Conclusion.INCONCLUSIVE
    assert any("V" in n for n in d.notes)
    with pytest.raises(DimensionTooHigh):
        coalescence_verdict(full_simplex(3).complex)
    split = coalescence_verdict(from_maximal([[0, 1, 2], [3, 4]]))
    assert split.conclusion is Conclusion.INCONCLUSIVE and split.pi1 is None


@given(small_complexes)
@settings(max_examples=60, deadline=None)
def test_verdict_invariants(c):
    v = coalescence_verdict(c, Budgets(collapse_nodes=2000, random_restarts=1))
    if v.conclusion is Conclusion.NO_COALESCENT_CONTRACTION:
        assert v.star_disk_all and v.contractible_evidence is not Evidence.INCONCLUSIVE
    if v.conclusion is Conclusion.COALESCENT_CONTRACTION_EXISTS:
        assert v.collapsible == "yes" and v.witness is not None
    assert v.collapsible in ("yes", "no", "unknown")

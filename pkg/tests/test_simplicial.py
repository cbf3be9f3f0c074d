from fractions import Fraction

import pytest

from hereditary.groupoid import SquareWithWitness, homotopy_cardinality, homotopy_fibre, is_pullback_square
from hereditary.simplicial import (
    SEGAL_BASE,
    build_H,
    build_M,
    build_NSur,
    build_S,
    check_culf,
    check_decomposition,
    check_equivalence_NSur_S,
    check_finiteness,
    check_pseudo_identity,
    check_segal,
    check_simplicial_identities,
    decomposition_squares,
    fibres_map,
    forgetful_M_culf,
    pseudo_identity_witness,
)
from hereditary.species import GRAPHS, SETS, HStructure

SET = lambda n: ((n,), (), None)
CHAIN_3_2 = ((3, 2), ((0, 0, 1),), None)


@pytest.fixture(scope="module")
def S3():
    return build_S(3, 3)


@pytest.fixture(scope="module")
def H3(S3):
    return build_H(GRAPHS, 3, 3, base=S3)


def test_level_sizes(S3):
    assert [len(S3[n].reps()) for n in range(4)] == [4, 7, 11, 16]
    assert homotopy_cardinality(S3[0]) == Fraction(8, 3)


def test_nsur_level_zero():
    C = build_NSur(2, 2)
    assert homotopy_cardinality(C[0]) == Fraction(5, 2)
    over_two = [c for c in C[1].objects if c[0][0] == 2]
    assert sorted(c[0] for c in over_two) == [(2, 1), (2, 2)]


def test_graph_levels():
    H = build_H(GRAPHS, 2, 2)
    assert len(H[1].reps()) == 5
    assert () in H[1].objects
    M = build_M(GRAPHS, 2, 2)
    assert [c[2] for c in M[0].reps()] == [HStructure(0), HStructure(1), HStructure(2), HStructure(2, ((0, 1),))]


def test_faces_of_a_surjection(S3):
    x = (CHAIN_3_2,)
    assert S3.top(2)(x) == (SET(2), SET(1))
    assert S3.bottom(2)(x) == (SET(2),)
    assert S3.face(2, 1)(x) == (SET(3),)


def test_bottom_face_contracts(H3):
    y = (((2, 1), ((0, 0),), HStructure(2, ((0, 1),))),)
    assert H3.bottom(2)(y) == (((1,), (), HStructure(1)),)
    assert H3.top(2)(y) == (((2,), (), HStructure(2, ((0, 1),))),)


def test_top_after_top_degeneracy_is_identity(S3):
    for n in range(S3.N):
        for x in S3[n].objects:
            assert S3.top(n + 1)(S3.degeneracy(n, n)(x)) == x


def test_inner_face_fibre_is_discrete(S3):
    fib = homotopy_fibre(S3.face(2, 1), (SET(2),))
    assert len(fib.reps()) == 2
    assert homotopy_cardinality(fib) == 2


@pytest.mark.parametrize("builder", [lambda: build_S(3, 3), lambda: build_NSur(3, 3),
                                     lambda: build_H(GRAPHS, 3, 3), lambda: build_M(GRAPHS, 2, 3)],
                         ids=["S", "NSur", "H", "M"])
def test_simplicial_identities(builder):
    assert check_simplicial_identities(builder()).passed


def test_decomposition(S3, H3):
    assert len(decomposition_squares(S3)) == 8
    assert check_decomposition(S3).passed
    assert check_decomposition(H3).passed
    assert check_decomposition(build_NSur(3, 3)).passed


def test_segal_dichotomy(S3, H3):
    assert check_segal(S3).passed
    assert check_segal(build_H(SETS, 3, 3)).passed
    rep = check_segal(H3, expected="fail")
    assert rep.status == "fail" and rep.ok
    counts = rep.details["fibre_counts"]
    assert counts["base"] == (CHAIN_3_2,) == SEGAL_BASE
    assert (counts["simplices_over_base"], counts["pullback_over_base"]) == ("8", "4")


def test_culf_against_outer_face_fails(H3):
    # the forgetful map is cartesian on active maps only
    U, S = H3.projections, H3.base
    sq = SquareWithWitness(U[2], H3.face(2, 0), S.face(2, 0), U[1], name="d0")
    ok, cert = is_pullback_square(sq)
    assert not ok and cert["kind"] == "not full"


def test_culf_maps(H3, S3):
    assert check_culf(H3.projections, H3, S3).passed
    C = build_NSur(3, 3)
    assert check_culf([fibres_map(C[n], S3[n]) for n in range(4)], C, S3).passed


def test_forgetful_M_is_culf():
    assert forgetful_M_culf(GRAPHS, 3).passed


def test_finiteness(S3, H3):
    for X in (S3, H3, build_NSur(3, 3)):
        assert check_finiteness(X).passed


def test_nsur_equivalence():
    rep = check_equivalence_NSur_S(3, 2)
    assert rep.passed
    assert any(p["check"] == "empty surjection goes to the empty list" for p in rep.details["parts"])


def test_pseudo_identity():
    x = (((3, 2, 1), ((0, 0, 1), (0, 0)), None),)
    perm, lhs, rhs, _, _ = pseudo_identity_witness(x)
    assert sorted(lhs) == sorted(rhs)
    assert [lhs[p] for p in range(len(perm))] == [rhs[q] for q in perm]
    rep = check_pseudo_identity(4)
    assert rep.passed
    # on a labelled chain whose last map is not monotone the witness reorders members
    y = (((3, 3, 2), ((0, 1, 2), (0, 1, 0)), None),)
    perm, lhs, rhs, _, _ = pseudo_identity_witness(y)
    assert perm != tuple(range(len(perm)))
    assert [lhs[p] for p in range(len(perm))] == [rhs[q] for q in perm]


def test_truncation_bounds(S3):
    with pytest.raises(IndexError):
        S3.face(4, 0)
    with pytest.raises(IndexError):
        S3.degeneracy(3, 0)


def test_nonsimple_species_rejected():
    from hereditary.species import HereditarySpecies

    class TwoColours(HereditarySpecies):
        name = "two-colour"

        def structures(self, n):
            return [HStructure(n, 0), HStructure(n, 1)] if n else [HStructure(0, 0)]

    with pytest.raises(ValueError, match="not simple"):
        build_H(TwoColours(), 2, 2)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hereditary.bialgebra import (
    UNIT,
    check_bialgebra,
    check_coassociativity,
    check_counit,
    check_schmitt_coincide,
    comultiply,
    counit,
    enumerate_families,
    family,
    groupoid_comultiply,
    multiply,
)
from hereditary.linear import LinComb
from hereditary.species import BROKEN_GRAPHS, GRAPHS, SETS, HStructure

DOT = HStructure(1)
K2 = HStructure(2, ((0, 1),))
E2 = HStructure(2, ())


def fam(*xs):
    return family(GRAPHS, xs)


def test_delta_dot():
    assert comultiply(GRAPHS, fam(DOT)) == LinComb.basis((fam(DOT), fam(DOT)))


def test_delta_k2():
    expected = LinComb.basis((fam(DOT, DOT), fam(K2))) + LinComb.basis((fam(K2), fam(DOT)))
    assert comultiply(GRAPHS, fam(K2)) == expected


def test_delta_unit():
    assert comultiply(GRAPHS, UNIT) == LinComb.basis((UNIT, UNIT))


def test_counit():
    assert counit(fam(DOT, DOT)) == 1
    assert counit(fam(K2)) == 0
    assert counit(UNIT) == 1


def test_empty_member_rejected():
    with pytest.raises(ValueError):
        family(GRAPHS, [HStructure(0)])


def test_family_canonicalises():
    assert family(GRAPHS, [HStructure(3, ((1, 2),)), DOT]) == family(GRAPHS, [DOT, HStructure(3, ((0, 1),))])


def test_path_coefficients():
    path = HStructure(3, ((0, 1), (1, 2)))
    d = comultiply(GRAPHS, fam(path))
    # partitions {1,2}{3} and {2,3}{1} give the same term
    assert d.coefficient((fam(DOT, K2), fam(K2))) == 2
    assert sum(d.coefficient(k) for k in d.keys()) == 5


def test_groupoid_comultiply_examples():
    for G in (DOT, K2, E2):
        assert groupoid_comultiply(GRAPHS, G) == comultiply(GRAPHS, fam(G))
    assert groupoid_comultiply(GRAPHS, E2) == LinComb.basis((fam(DOT, DOT), fam(E2))) + \
        LinComb.basis((fam(E2), fam(DOT)))


@pytest.mark.parametrize("H", [SETS, GRAPHS], ids=lambda H: H.name)
def test_bialgebra_laws(H):
    assert check_bialgebra(H, 4).passed


def test_schmitt_coincide():
    assert check_schmitt_coincide(GRAPHS, 3).passed
    assert check_schmitt_coincide(SETS, 3).passed


def test_broken_quotient_breaks_coassociativity():
    rep = check_coassociativity(BROKEN_GRAPHS, 4)
    assert not rep.passed
    assert rep.witness["law"] == "(Δ⊗id)Δ = (id⊗Δ)Δ"
    assert check_counit(BROKEN_GRAPHS, 4).passed


def test_family_enumeration():
    fams = enumerate_families(GRAPHS, 3)
    assert fams[0] == UNIT
    # partitions of integers <= 3 with parts weighted by graph classes: 1 + 1 + 3 + 7
    assert len(fams) == 12


FAMS = enumerate_families(GRAPHS, 4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMS), st.sampled_from(FAMS))
def test_multiplicativity_property(F, G):
    from hereditary.bialgebra import multiply_tensors
    assert comultiply(GRAPHS, multiply(F, G)) == multiply_tensors(comultiply(GRAPHS, F), comultiply(GRAPHS, G))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FAMS))
def test_total_weight_is_bell_product(F):
    # the coefficients of a single structure sum to the Bell number of its size
    bell = [1, 1, 2, 5, 15]
    total = sum(c for _, c in comultiply(GRAPHS, F).items())
    expected = 1
    for m in F:
        expected *= bell[m.n]
    assert total == Fraction(expected)

import pytest

from hereditary.bialgebra import UNIT, family
from hereditary.comodule import (
    a_family,
    check_A_bialgebra,
    check_comodule,
    check_comodule_bialgebra,
    coact,
    coact_free,
    coact_unquotiented,
    comultiply_A,
    comultiply_A_structure,
    counit_A,
    omega,
)
from hereditary.linear import LinComb
from hereditary.species import GRAPHS, SETS, HStructure

EMPTY = HStructure(0)
DOT = HStructure(1)
K2 = HStructure(2, ((0, 1),))


def B(*xs):
    return family(GRAPHS, xs)


def A(*xs):
    return a_family(GRAPHS, xs)


def basis(*key, c=1):
    return LinComb.basis(tuple(key), c)


def test_delta_a_examples():
    assert comultiply_A_structure(GRAPHS, EMPTY) == basis(A(EMPTY), A(EMPTY))
    assert comultiply_A_structure(GRAPHS, DOT) == basis(A(EMPTY), A(DOT)) + basis(A(DOT), A(EMPTY))
    expected = basis(A(EMPTY), A(K2)) + basis(A(DOT), A(DOT), c=2) + basis(A(K2), A(EMPTY))
    assert comultiply_A_structure(GRAPHS, K2) == expected


def test_counit_a():
    assert counit_A(A(EMPTY)) == 1
    assert counit_A(A(DOT)) == 0
    assert counit_A(A(EMPTY, EMPTY)) == 1


def test_coact_examples():
    assert coact(GRAPHS, EMPTY) == basis(UNIT, A(EMPTY))
    assert coact(GRAPHS, DOT) == basis(B(DOT), A(DOT))
    assert coact(GRAPHS, K2) == basis(B(DOT, DOT), A(K2)) + basis(B(K2), A(DOT))


def test_coact_free_examples():
    assert coact_free(GRAPHS, UNIT) == basis(UNIT, UNIT)
    assert coact_free(GRAPHS, A(DOT, DOT)) == basis(B(DOT, DOT), A(DOT, DOT))
    expected = basis(B(DOT, DOT), A(K2, EMPTY)) + basis(B(K2), A(DOT, EMPTY))
    assert coact_free(GRAPHS, A(K2, EMPTY)) == expected


def test_dot_coassociativity_by_hand():
    from hereditary.bialgebra import comultiply
    from hereditary.linear import on_factor
    g = coact_free(GRAPHS, A(DOT))
    lhs = on_factor(g, 0, lambda F: comultiply(GRAPHS, F))
    rhs = on_factor(g, 1, lambda F: coact_free(GRAPHS, F))
    assert lhs == rhs == basis(B(DOT), B(DOT), A(DOT))


def test_dot_comodule_map_by_hand():
    # both paths give (•) ⊗ (∅ ⊗ • + • ⊗ ∅)
    gamma = lambda F: coact_free(GRAPHS, F)
    left = comultiply_A(GRAPHS, A(DOT)).map_linear(lambda k: gamma(k[0]).tensor(gamma(k[1]))).map_keys(omega)
    expected = basis(B(DOT), A(EMPTY), A(DOT)) + basis(B(DOT), A(DOT), A(EMPTY))
    assert left == expected


@pytest.mark.parametrize("H", [SETS, GRAPHS], ids=lambda H: H.name)
def test_laws(H):
    assert check_A_bialgebra(H, 3).passed
    assert check_comodule(H, 3).passed
    assert check_comodule_bialgebra(H, 3).passed


def test_coaction_without_quotients_is_caught():
    rep = check_comodule(GRAPHS, 3, coaction=coact_unquotiented)
    assert not rep.passed
    assert rep.witness["argument"]
    rep2 = check_comodule_bialgebra(GRAPHS, 3, coaction=coact_unquotiented)
    assert not rep2.passed

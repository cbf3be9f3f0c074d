from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyclic, cyclic_hom
from hereditary.groupoid import (
    Arrow,
    ExplicitGroupoid,
    GroupoidMap,
    IsoComma,
    ProductGroupoid,
    SquareWithWitness,
    SymmetricGroupoid,
    check_functor,
    groupoid_from_json,
    groupoid_to_json,
    homotopy_cardinality,
    homotopy_fibre,
    homotopy_pullback,
    is_equivalence,
    is_pullback_fibrewise,
    is_pullback_square,
    map_cardinality,
    TERMINAL,
    terminal_groupoid,
)


ONE = TERMINAL


def to_point(X):
    one = ONE
    return GroupoidMap(X, one, lambda o: "*", lambda a: one.identity("*"), name="!")


def point_into(S, s):
    return GroupoidMap.name_of(S, s)


# -- cardinality ----------------------------------------------------------------


def test_bz2_cardinality(bz2):
    assert homotopy_cardinality(bz2) == Fraction(1, 2)
    assert bz2.check_axioms() == []


@pytest.mark.parametrize("n", range(6))
def test_symmetric_groupoid_cardinality(n):
    from math import factorial
    assert homotopy_cardinality(SymmetricGroupoid([n])) == Fraction(1, factorial(n))


def test_sets_up_to_two():
    assert homotopy_cardinality(SymmetricGroupoid([0, 1, 2])) == Fraction(5, 2)


def test_explicit_copy_keeps_cardinality():
    B = SymmetricGroupoid([2, 3])
    E = ExplicitGroupoid.from_groupoid(B)
    assert E.check_axioms() == []
    assert homotopy_cardinality(E) == homotopy_cardinality(B) == Fraction(2, 3)


def test_codiscrete_is_contractible():
    C = ExplicitGroupoid.codiscrete("abc")
    assert C.check_axioms() == []
    assert homotopy_cardinality(C) == 1
    assert len(C.reps()) == 1


# -- fibres and pullbacks ---------------------------------------------------------


def test_fibre_of_identity_is_contractible(bz2):
    F = homotopy_fibre(GroupoidMap.identity(bz2), "*")
    assert len(F.objects) == 2
    assert len(F.reps()) == 1
    assert homotopy_cardinality(F) == 1


def test_fibre_over_terminal_is_source():
    B2 = SymmetricGroupoid([2])
    F = homotopy_fibre(to_point(B2), "*")
    assert homotopy_cardinality(F) == Fraction(1, 2)
    ok, _ = is_equivalence(F.projections()[0])
    assert ok


def test_loop_space_of_bz2(bz2):
    # the point into B(Z/2), pulled back against itself, is Z/2 as a discrete groupoid
    pt = point_into(bz2, "*")
    P, p1, p2, w = homotopy_pullback(pt, pt)
    assert len(P.objects) == 2
    assert len(P.reps()) == 2
    assert homotopy_cardinality(P) == 2
    assert {w(o).data for o in P.objects} == {0, 1}


def test_pullback_of_point_maps(bz2):
    P, *_ = homotopy_pullback(to_point(bz2), to_point(bz2))
    assert homotopy_cardinality(P) == Fraction(1, 4)


def test_disjoint_points_have_empty_pullback():
    D = ExplicitGroupoid.discrete(["a", "b"])
    P, *_ = homotopy_pullback(point_into(D, "a"), point_into(D, "b"))
    assert P.objects == ()
    assert homotopy_cardinality(P) == 0


def test_pullback_along_identity_is_source():
    B = SymmetricGroupoid([1, 2, 3])
    f = to_point(B)
    one = f.target
    P, p1, _, _ = homotopy_pullback(f, GroupoidMap.identity(one))
    ok, cert = is_equivalence(p1)
    assert ok, cert


# -- equivalences -------------------------------------------------------------------


def test_identity_is_equivalence(bz2):
    assert is_equivalence(GroupoidMap.identity(bz2)) == (True, None)


def test_inclusion_into_connected():
    C = ExplicitGroupoid.codiscrete(["a", "b"])
    inc = GroupoidMap(terminal_groupoid(), C, lambda o: "a", lambda u: C.identity("a"))
    assert is_equivalence(inc)[0]


def test_collapse_discrete_is_not_equivalence():
    D = ExplicitGroupoid.discrete(["a", "b"])
    ok, cert = is_equivalence(to_point(D))
    assert not ok
    assert cert["kind"] == "not full"
    assert (cert["source_hom"], cert["target_hom"]) == (0, 1)


def test_not_essentially_surjective():
    D = ExplicitGroupoid.discrete(["a", "b"])
    ok, cert = is_equivalence(point_into(D, "a"))
    assert not ok and cert["kind"] == "not essentially surjective"


def test_not_faithful(bz2):
    ok, cert = is_equivalence(to_point(bz2))
    assert not ok and cert["kind"] == "not faithful"


# -- squares ----------------------------------------------------------------------


def test_tautological_square(bz2):
    f, g = to_point(bz2), to_point(SymmetricGroupoid([3]))
    P, p1, p2, w = homotopy_pullback(f, g)
    sq = SquareWithWitness(p2, p1, g, f, witness=w)
    assert sq.check_witness() == []
    assert is_pullback_square(sq)[0]
    assert is_pullback_fibrewise(sq)[0]


def test_witness_with_wrong_endpoints_is_rejected():
    D = ExplicitGroupoid.discrete(["a", "b"])
    pt = point_into(D, "a")
    ident = GroupoidMap.identity(pt.source)
    sq = SquareWithWitness(ident, ident, pt, pt, witness=lambda o: D.identity("b"))
    with pytest.raises(ValueError, match="endpoints"):
        is_pullback_square(sq)


def test_non_natural_witness_is_rejected():
    Z4 = cyclic(4)
    ident = GroupoidMap.identity(Z4)
    sq = SquareWithWitness(ident, ident, ident, cyclic_hom(Z4, Z4, 3))
    with pytest.raises(ValueError, match="natural"):
        is_pullback_square(sq)


def test_strict_square_that_is_not_a_pullback(bz2):
    one = ONE
    pt = point_into(bz2, "*")
    ident = GroupoidMap.identity(one)
    sq = SquareWithWitness(ident, ident, pt, pt)
    ok, cert = is_pullback_square(sq)
    assert not ok
    assert cert["corner_cardinality"] == "1" and cert["pullback_cardinality"] == "2"
    assert not is_pullback_fibrewise(sq)[0]


def test_prism_pasting():
    # pullback of a pullback is the pullback of the outer rectangle
    X, Y, S, Z = cyclic(4, "X"), cyclic(2, "Y"), cyclic(2, "S"), cyclic(8, "Z")
    f, g = cyclic_hom(X, S, 1), cyclic_hom(Y, S, 1)
    P, p1, p2, w = homotopy_pullback(f, g)
    h = cyclic_hom(Z, X, 1)
    Q, q1, q2, w2 = homotopy_pullback(h, p1)
    inner = SquareWithWitness(q2, q1, p1, h, witness=w2)
    assert is_pullback_square(inner)[0]
    fh = h.then(f)
    top = q2.then(p2)

    def outer_witness(o):
        z, p, beta = o
        return S.compose(w(p), f.mor(beta))

    outer = SquareWithWitness(top, q1, g, fh, witness=outer_witness, name="outer")
    assert outer.check_witness() == []
    assert is_pullback_square(outer)[0]


# -- map cardinality ------------------------------------------------------------------


def test_map_cardinality_identity(bz2):
    # |fibre| = 1 divided by |Aut| = 2
    assert map_cardinality(GroupoidMap.identity(bz2)) == {"*": Fraction(1, 2)}


def test_map_cardinality_counts_discrete_points():
    D = ExplicitGroupoid.discrete(["a", "b", "c"])
    assert map_cardinality(to_point(D)) == {"*": Fraction(3)}


def test_map_cardinality_sums_to_source_cardinality():
    B = SymmetricGroupoid([0, 1, 2, 3])
    coeffs = map_cardinality(to_point(B))
    assert coeffs == {"*": homotopy_cardinality(B)}


# -- functors and serialisation ------------------------------------------------------


def test_check_functor(bz2):
    assert check_functor(cyclic_hom(cyclic(4), bz2, 1), exhaustive=True) == []
    bad = GroupoidMap(bz2, bz2, lambda o: "*", lambda u: Arrow("*", "*", 1))
    assert check_functor(bad, exhaustive=True)


def test_json_round_trip():
    E = ExplicitGroupoid.from_groupoid(SymmetricGroupoid([1, 2]))
    back = groupoid_from_json(groupoid_to_json(E))
    assert back.check_axioms() == []
    assert homotopy_cardinality(back) == homotopy_cardinality(E)


def test_product_cardinality(bz2):
    P = ProductGroupoid(bz2, SymmetricGroupoid([3]))
    assert homotopy_cardinality(P) == Fraction(1, 12)


# -- properties ----------------------------------------------------------------------

cyclic_orders = st.sampled_from([1, 2, 3, 4, 6])


@st.composite
def cospans(draw):
    n = draw(cyclic_orders)
    m, p = draw(cyclic_orders), draw(cyclic_orders)
    a = draw(st.sampled_from([x for x in range(n) if (x * m) % n == 0]))
    b = draw(st.sampled_from([x for x in range(n) if (x * p) % n == 0]))
    S, X, Y = cyclic(n, "S"), cyclic(m, "X"), cyclic(p, "Y")
    return cyclic_hom(X, S, a), cyclic_hom(Y, S, b)


@settings(max_examples=40, deadline=None)
@given(cospans())
def test_pullback_cardinality_formula(cospan):
    # over a connected base: |X x_S Y| = |X| |Y| / |S|
    f, g = cospan
    P, *_ = homotopy_pullback(f, g)
    expected = homotopy_cardinality(f.source) * homotopy_cardinality(g.source) / homotopy_cardinality(f.target)
    assert homotopy_cardinality(P) == expected


@settings(max_examples=40, deadline=None)
@given(cospans())
def test_fibrewise_and_comparison_tests_agree(cospan):
    f, g = cospan
    # a strictly commuting square with the point in the corner
    sq = SquareWithWitness(point_into(g.source, "*"), point_into(f.source, "*"), g, f)
    assert is_pullback_square(sq)[0] == is_pullback_fibrewise(sq)[0]
    P, p1, p2, w = homotopy_pullback(f, g)
    taut = SquareWithWitness(p2, p1, g, f, witness=w)
    assert is_pullback_square(taut)[0] and is_pullback_fibrewise(taut)[0]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_cardinality_is_equivalence_invariant(sizes):
    B = SymmetricGroupoid(sorted(set(sizes)))
    E = ExplicitGroupoid.from_groupoid(B)
    assert homotopy_cardinality(E) == homotopy_cardinality(B)
    # fattening each object by a contractible factor gives an equivalent groupoid
    fat = ProductGroupoid(B, ExplicitGroupoid.codiscrete(range(len(sizes))))
    proj = GroupoidMap(fat, B, lambda o: o[0], lambda a: a.data[0])
    assert is_equivalence(proj)[0]
    assert homotopy_cardinality(fat) == homotopy_cardinality(B)

import pytest
from hypothesis import given, settings, strategies as st

from hereditary.bialgebra import comultiply, enumerate_families
from hereditary.comodule import coact_free, comultiply_A
from hereditary.formats import (
    family_from_json,
    lincomb_from_json,
    lincomb_from_text,
    lincomb_to_json,
    lincomb_to_text,
    structure_from_json,
)
from hereditary.linear import LinComb
from hereditary.species import GRAPHS, SETS, HStructure

B_FAMS = enumerate_families(GRAPHS, 4)
A_FAMS = enumerate_families(GRAPHS, 3, min_size=0, max_empty=2)


def test_k2_text():
    text = lincomb_to_text(GRAPHS, comultiply(GRAPHS, (HStructure(2, ((0, 1),)),)), "BB")
    assert text == "1/1 B[1:; 1:] ⊗ B[2:1-2] + 1/1 B[2:1-2] ⊗ B[1:]"


def test_json_shape():
    data = lincomb_to_json(GRAPHS, coact_free(GRAPHS, (HStructure(1),)), "BA")
    assert data == [{"coefficient": "1/1", "factors": [
        {"side": "B", "family": [{"species": "graphs", "n": 1, "edges": []}]},
        {"side": "A", "family": [{"species": "graphs", "n": 1, "edges": []}]}]}]


def test_zero_and_empty_family():
    assert lincomb_to_text(GRAPHS, LinComb(), "BB") == "0"
    assert lincomb_from_text(GRAPHS, "0") == (LinComb(), ())
    unit = LinComb.basis(((), ()))
    assert lincomb_from_text(GRAPHS, lincomb_to_text(GRAPHS, unit, "BB"))[0] == unit


def test_structure_input():
    assert structure_from_json(GRAPHS, {"species": "graphs", "n": 3, "edges": [[1, 2], [2, 3]]}) == \
        HStructure(3, ((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        structure_from_json(GRAPHS, {"species": "sets", "n": 2})
    with pytest.raises(ValueError):
        structure_from_json(GRAPHS, [1, 2])
    assert len(family_from_json(SETS, [{"n": 1}, {"n": 0}])) == 2


def test_malformed_text():
    with pytest.raises(ValueError):
        lincomb_from_text(GRAPHS, "1/1 B[1:] x B[1:]")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(B_FAMS))
def test_delta_round_trips(F):
    d = comultiply(GRAPHS, F)
    assert lincomb_from_text(GRAPHS, lincomb_to_text(GRAPHS, d, "BB")) == (d, ("B", "B"))
    assert lincomb_from_json(GRAPHS, lincomb_to_json(GRAPHS, d, "BB")) == (d, ("B", "B"))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(A_FAMS))
def test_text_and_json_agree(F):
    for lc, sides in ((coact_free(GRAPHS, F), "BA"), (comultiply_A(GRAPHS, F), "AA")):
        from_text = lincomb_from_text(GRAPHS, lincomb_to_text(GRAPHS, lc, sides))
        from_json = lincomb_from_json(GRAPHS, lincomb_to_json(GRAPHS, lc, sides))
        assert from_text == from_json == (lc, tuple(sides))

import pytest

from hereditary.canon import canon, canonical_form, canonical_relabelling, isomorphic
from hereditary.partitions import Injection, Partition, Surjection, induced_partition
from hereditary.species import (
    BROKEN_GRAPHS,
    GRAPHS,
    SETS,
    HStructure,
    PartialSurjection,
    act,
    check_beck_chevalley,
    check_functoriality,
    check_schmitt_identities,
    compose_partial_surjections,
    enumerate_partial_surjections,
    get_species,
    quotient,
    restrict,
    restrict_blocks,
)

PATH = HStructure(3, ((0, 1), (1, 2)))
TRIANGLE = HStructure(3, ((0, 1), (0, 2), (1, 2)))


def test_structure_counts():
    assert [len(GRAPHS.structures(n)) for n in range(5)] == [1, 1, 2, 8, 64]
    assert [len(SETS.structures(n)) for n in range(5)] == [1] * 5


def test_graph_isomorphism_classes():
    assert [len({canon(GRAPHS, x) for x in GRAPHS.structures(n)}) for n in range(5)] == [1, 1, 2, 4, 11]


def test_restrict_examples():
    assert restrict(GRAPHS, TRIANGLE, [0, 1]) == HStructure(2, ((0, 1),))
    assert restrict(GRAPHS, PATH, [0, 1, 2]) == PATH
    assert restrict(SETS, HStructure(3), [1]) == HStructure(1)


def test_quotient_examples():
    assert quotient(GRAPHS, PATH, Partition(3, ((0, 1), (2,)))) == HStructure(2, ((0, 1),))
    assert quotient(GRAPHS, PATH, Partition.discrete(3)) == PATH
    edgeless = HStructure(4, ())
    for pi in (Partition(4, ((0, 2), (1, 3))), Partition.indiscrete(4)):
        assert quotient(GRAPHS, edgeless, pi) == HStructure(len(pi), ())


def test_act_examples():
    assert act(GRAPHS, PartialSurjection.identity(3), PATH) == PATH
    a = PartialSurjection(3, (0, 2), Surjection.identity(2))
    assert act(GRAPHS, a, PATH) == HStructure(2, ())
    b = PartialSurjection.of_surjection(Surjection((0, 0, 1), 2))
    assert act(GRAPHS, b, PATH) == HStructure(2, ((0, 1),))


def test_compose_partial_surjections():
    ident = PartialSurjection.identity(3)
    assert compose_partial_surjections(ident, ident) == ident
    a = PartialSurjection.of_surjection(Surjection((0, 0, 1), 2))
    b = PartialSurjection(2, (0,), Surjection.identity(1))
    assert compose_partial_surjections(a, b) == PartialSurjection(3, (0, 1), Surjection((0, 0), 1))
    empty = PartialSurjection(3, (), Surjection((), 0))
    for c in enumerate_partial_surjections(0):
        assert compose_partial_surjections(empty, c).subset == ()


def test_span_canonical_form():
    a = PartialSurjection.from_span(Injection((2, 0), 3), Surjection((1, 0), 2))
    assert a == PartialSurjection(3, (0, 2), Surjection((0, 1), 2))


def test_composition_is_associative_on_small_spans():
    spans = list(enumerate_partial_surjections(2))
    for a in spans:
        for b in enumerate_partial_surjections(a.target):
            for c in enumerate_partial_surjections(b.target):
                assert compose_partial_surjections(compose_partial_surjections(a, b), c) == \
                    compose_partial_surjections(a, compose_partial_surjections(b, c))


def test_canonical_forms():
    assert canonical_form(GRAPHS, HStructure(3, ())).aut == 6
    relabelled = HStructure(3, ((0, 2), (1, 2)))
    form = canonical_form(GRAPHS, relabelled)
    assert form.aut == 2
    assert isomorphic(GRAPHS, relabelled, PATH)
    assert canonical_form(GRAPHS, HStructure(1)).aut == 1
    p = canonical_relabelling(GRAPHS, relabelled)
    assert GRAPHS.quotient(relabelled, Surjection(p, 3)) == form.rep


def test_validation_and_registry():
    with pytest.raises(ValueError):
        GRAPHS.from_json({"n": 2, "edges": [[1, 3]]})
    with pytest.raises(ValueError):
        GRAPHS.from_json({"n": 2, "edges": [[1, 1]]})
    with pytest.raises(KeyError):
        get_species("trees")
    assert get_species("graphs") is GRAPHS
    assert GRAPHS.is_simple() and GRAPHS.point() == HStructure(1, ())


def test_json_and_text_round_trip():
    for x in GRAPHS.structures(3):
        assert GRAPHS.from_json(GRAPHS.to_json(x)) == x
        assert GRAPHS.from_text(GRAPHS.to_text(x)) == x
    assert GRAPHS.to_json(PATH) == {"species": "graphs", "n": 3, "edges": [[1, 2], [2, 3]]}


@pytest.mark.parametrize("H", [SETS, GRAPHS], ids=lambda H: H.name)
def test_laws_small(H):
    assert check_functoriality(H, 3).passed
    assert check_beck_chevalley(H, 3).passed
    assert check_schmitt_identities(H, 3).passed


def test_schmitt_identities_on_path():
    # tau discrete, sigma = {{1,2},{3}}
    sigma, tau = Partition(3, ((0, 1), (2,))), Partition.discrete(3)
    blocks = restrict_blocks(GRAPHS, PATH, sigma)
    assert blocks == [HStructure(2, ((0, 1),)), HStructure(1)]
    # (G/tau)/(sigma/tau) = G/sigma
    st = induced_partition(sigma, tau)
    assert quotient(GRAPHS, quotient(GRAPHS, PATH, tau), st) == quotient(GRAPHS, PATH, sigma)
    # (G/tau)|(sigma/tau) = (G|sigma)/tau
    assert restrict_blocks(GRAPHS, quotient(GRAPHS, PATH, tau), st) == blocks


def test_edge_dropping_quotient_breaks_beck_chevalley():
    rep = check_beck_chevalley(BROKEN_GRAPHS, 4)
    assert not rep.passed
    w = rep.witness
    assert w["restrict_then_quotient"] != w["quotient_then_restrict"]

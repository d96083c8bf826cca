from itertools import permutations

import pytest

from toricliaison.corpus import CORPUS, complete_bipartite, corpus_graph, cycle_graph, zigzag_path
from toricliaison.graph import Graph, delete_edge, parse_graph
from toricliaison.groebner import height
from toricliaison.poly import LexOrder, Monomial
from toricliaison.pom import (
    EMPTY_POM,
    ConditionA,
    ConditionB,
    NoFreeVariable,
    NotAMatching,
    build_I,
    compute_M,
    extend_pom,
    find_free_variable,
    is_maximal,
    is_pom,
    iter_poms,
    single_insertions,
    validate_pom,
)
from toricliaison.toric import toric_ideal

from oracles import cofactor_generators, is_pom_by_orientations, longest_pom_length, minimalize

C4 = corpus_graph("C4")
ZIGZAG = zigzag_path()
ZIGZAG_POM = (1, 2, 3, 4, 5)


def test_zigzag_pom_identity_labelling():
    pom = validate_pom(ZIGZAG, ZIGZAG_POM)
    assert pom.r == 5
    assert pom.labeling == {v: v for v in range(1, 11)}


def test_extra_backward_edge_breaks_condition_b():
    g = Graph.from_edges(list(ZIGZAG.edges[k][1] for k in range(ZIGZAG.q)) + [(2, 6)])
    with pytest.raises(ConditionB) as info:
        validate_pom(g, ZIGZAG_POM)
    assert (info.value.i, info.value.j) == (2, 1)


@pytest.mark.parametrize("edges", [(1, 3), (3, 1)])
def test_c4_two_matching_fails_condition_b(edges):
    with pytest.raises(ConditionB):
        validate_pom(C4, edges)


def test_condition_a_and_matching_errors():
    with pytest.raises(ConditionA):
        validate_pom(cycle_graph(6), (1, 4))
    with pytest.raises(NotAMatching):
        validate_pom(cycle_graph(6), (1, 2))


def test_empty_and_single_edge_poms():
    assert validate_pom(C4, ()) == EMPTY_POM
    assert is_pom(C4, (2,))


@pytest.mark.parametrize("name", list(CORPUS))
def test_iter_poms_agrees_with_orientation_oracle(name):
    g = corpus_graph(name)
    ours = {p.edges for p in iter_poms(g)}
    longest = longest_pom_length(g, cap=4)
    assert max(map(len, ours)) == longest
    brute = {
        seq
        for k in range(1, longest + 1)
        for seq in permutations(g.edge_ids, k)
        if is_pom_by_orientations(g, seq)
    }
    assert ours == brute


def test_validate_agrees_with_oracle_on_zigzag_sequences():
    for seq in permutations(ZIGZAG.edge_ids, 3):
        assert is_pom(ZIGZAG, seq) == is_pom_by_orientations(ZIGZAG, seq), seq


def test_longest_pom_lengths_frozen_from_oracle():
    # complete bipartite graphs: {upper_2, lower_1} is always an edge
    for name in ("K23", "K24", "K33"):
        assert max(p.r for p in iter_poms(corpus_graph(name))) == 1
    assert max(p.r for p in iter_poms(corpus_graph("C8"))) == 3
    assert max(p.r for p in iter_poms(corpus_graph("grid2x3"))) == 2
    assert max(p.r for p in iter_poms(ZIGZAG)) == 5


def test_maximality_examples():
    assert extend_pom(C4, validate_pom(C4, (1,))).edges == (1,)
    assert is_maximal(C4, validate_pom(C4, (1,)))
    full = validate_pom(ZIGZAG, ZIGZAG_POM)
    assert extend_pom(ZIGZAG, full) == full
    assert not is_maximal(ZIGZAG, validate_pom(ZIGZAG, (1, 2, 3, 4)))
    # every single edge of K_{2,3} is already maximal
    k23 = complete_bipartite(2, 3)
    assert all(is_maximal(k23, validate_pom(k23, (e,))) for e in k23.edge_ids)


def test_extend_from_empty_on_k23_gives_length_one():
    k23 = complete_bipartite(2, 3)
    grown = extend_pom(k23, EMPTY_POM)
    assert grown.r == 1 and is_maximal(k23, grown)


@pytest.mark.parametrize("name", ["C6", "C8", "grid2x3", "C4+pendant"])
def test_extend_reaches_maximal(name):
    g = corpus_graph(name)
    start = validate_pom(g, (min(g.edge_ids),))
    grown = extend_pom(g, start)
    assert is_maximal(g, grown)
    assert start.edge_set <= grown.edge_set


def test_single_insertions_are_valid():
    g = corpus_graph("C8")
    pom = validate_pom(g, (1,))
    for eid, pos, cand in single_insertions(g, pom):
        assert cand.edges[pos] == eid and is_pom_by_orientations(g, cand.edges)


def test_compute_m_examples():
    assert compute_M(C4, validate_pom(C4, (1,))).monomials() == [Monomial.var(3)]
    forest = parse_graph("1 2\n2 3\n3 4")
    assert len(compute_M(forest, validate_pom(forest, (1,)))) == 0


def test_k23_maximal_pom_has_a_variable_in_m():
    k23 = complete_bipartite(2, 3)
    for pom in iter_poms(k23):
        if is_maximal(k23, pom):
            assert compute_M(k23, pom).variables()


POM_CASES = [
    ("C4", (1,)),
    ("C8", (5, 3, 1)),
    ("grid2x3", None),
    ("K33", (1,)),
    ("K24", (3,)),
    ("zigzag", ZIGZAG_POM),
    ("zigzag", (2, 3)),
]


def _case(name, edges):
    g = ZIGZAG if name == "zigzag" else corpus_graph(name)
    if edges is None:
        edges = next(p for p in iter_poms(g) if p.r == 2).edges
    return g, validate_pom(g, edges)


@pytest.mark.parametrize("name,edges", POM_CASES)
def test_compute_m_matches_all_subsets_oracle(name, edges):
    g, pom = _case(name, edges)
    ours = minimalize(m.support for m in compute_M(g, pom).monomials())
    assert ours == minimalize(cofactor_generators(g, pom.edges))


def test_build_i_examples():
    order = LexOrder([1, 2, 3, 4])
    I = build_I(C4, validate_pom(C4, (1,)), order)
    assert I.gb_strings() == ["e3"]
    for name in ("C6", "K23", "grid2x3"):
        g = corpus_graph(name)
        order = LexOrder.default(g.edge_ids)
        assert build_I(g, EMPTY_POM, order).reduced_gb == toric_ideal(g, order).reduced_gb


def test_k23_maximal_pom_ideal_keeps_height():
    k23 = complete_bipartite(2, 3)
    pom = extend_pom(k23, EMPTY_POM)
    order = LexOrder(list(pom.edges) + [e for e in k23.edge_ids if e not in pom.edge_set])
    assert height(build_I(k23, pom, order)) == 2 == height(toric_ideal(k23, order))


def test_free_variable_examples():
    assert find_free_variable(C4, validate_pom(C4, (1,))) == 3
    k33 = complete_bipartite(3, 3)
    for pom in iter_poms(k33):
        x = find_free_variable(k33, pom)
        assert k33.has_edge(x) and x not in pom.edge_set
        assert is_pom(delete_edge(k33, x), pom.edges)
    with pytest.raises(NoFreeVariable):
        find_free_variable(parse_graph("1 2\n2 3"), EMPTY_POM)
    c8 = corpus_graph("C8")
    with pytest.raises(NoFreeVariable, match="not maximal"):
        find_free_variable(c8, validate_pom(c8, (1,)))

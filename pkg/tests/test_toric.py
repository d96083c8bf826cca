import pytest

from toricliaison.corpus import CORPUS, complete_bipartite, corpus_graph
from toricliaison.graph import GraphError, OddCycleFound, enumerate_cycles, parse_graph
from toricliaison.poly import ZERO, Bino, LexOrder, Mono, Monomial, parse_monomial
from toricliaison.toric import alternating_sides, incidence_vector, kernel_member, toric_binomial, toric_ideal

from oracles import cycle_sides, incidence

C4 = corpus_graph("C4")


def m(text):
    return parse_monomial(text)


def test_c4_binomial():
    (cyc,) = enumerate_cycles(C4)
    b = toric_binomial(cyc, LexOrder([1, 2, 3, 4])).poly
    assert b == Bino(m("e1*e3"), m("e2*e4"))
    assert kernel_member(b, C4)


def test_k23_cycle_binomials_are_minors():
    g = complete_bipartite(2, 3)
    order = LexOrder.default(g.edge_ids)
    for cyc in enumerate_cycles(g):
        b = toric_binomial(cyc, order).poly
        assert b.lead.degree == b.trail.degree == 2
        assert b.lead.is_squarefree() and b.trail.is_squarefree()
        assert kernel_member(b, g)


def test_k33_six_cycles_give_cubics():
    g = complete_bipartite(3, 3)
    order = LexOrder.default(g.edge_ids)
    sixes = [c for c in enumerate_cycles(g) if len(c) == 6]
    assert len(sixes) == 6
    for cyc in sixes:
        b = toric_binomial(cyc, order).poly
        assert b.lead.degree == 3 and b.lead.is_squarefree() and kernel_member(b, g)


def test_toric_ideal_examples():
    forest = parse_graph("1 2\n2 3\n3 4")
    assert toric_ideal(forest, LexOrder.default(forest.edge_ids)).generators == ()
    assert toric_ideal(C4, LexOrder.default(C4.edge_ids)).strings() == ["e1*e3 - e2*e4"]
    k23 = complete_bipartite(2, 3)
    assert len(toric_ideal(k23, LexOrder.default(k23.edge_ids)).generators) == 3
    with pytest.raises(OddCycleFound):
        toric_ideal(parse_graph("1 2\n2 3\n3 1"), LexOrder([1, 2, 3]))


def test_kernel_member_examples():
    assert kernel_member(Bino(m("e1*e3"), m("e2*e4")), C4)
    # e1={1,3}, e2={3,2} versus e3={2,4}, e4={4,1}: vertex 3 is hit twice on one side only
    assert not kernel_member(Bino(m("e1*e2"), m("e3*e4")), C4)
    assert kernel_member(ZERO, C4)
    assert not kernel_member(Mono(1, m("e1")), C4)


def test_incidence_vector_agrees_with_oracle():
    mono = m("e1^2*e3")
    assert incidence_vector(mono, C4) == incidence(mono.items, C4)


def test_odd_length_sides_rejected():
    with pytest.raises(GraphError):
        alternating_sides((1, 2, 3))


@pytest.mark.parametrize("name", list(CORPUS))
def test_sides_agree_with_walk_oracle(name):
    g = corpus_graph(name)
    for cyc in enumerate_cycles(g):
        a, b = alternating_sides(cyc)
        assert {a.support, b.support} == set(cycle_sides(g, cyc))


@pytest.mark.parametrize("name", list(CORPUS))
def test_every_gb_element_in_kernel(name):
    g = corpus_graph(name)
    P = toric_ideal(g, LexOrder.default(g.edge_ids))
    assert all(kernel_member(f, g) for f in P.reduced_gb)
    assert all(isinstance(f, Bino) for f in P.reduced_gb)
    assert Monomial() not in P.initial.gens

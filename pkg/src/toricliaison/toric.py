"""Cycle binomials, toric ideals of bipartite graphs, and the incidence-map oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph import Graph, GraphError, bipartition, edge_name, enumerate_cycles
from .groebner import IdealPresentation
from .poly import LexOrder, Mono, Monomial, TwoTermPoly, Zero, orient


@dataclass(frozen=True)
class CycleBinomial:
    cycle: tuple[int, ...]
    poly: TwoTermPoly

    @property
    def sides(self) -> tuple[Monomial, Monomial]:
        return alternating_sides(self.cycle)


def alternating_sides(cycle: tuple[int, ...]) -> tuple[Monomial, Monomial]:
    """Products over the even and the odd positions of the cycle."""
    if len(cycle) % 2:
        raise GraphError(f"odd cycle of length {len(cycle)}")
    return Monomial.squarefree(cycle[0::2]), Monomial.squarefree(cycle[1::2])


def toric_binomial(cycle: tuple[int, ...], order: LexOrder) -> CycleBinomial:
    a, b = alternating_sides(cycle)
    return CycleBinomial(cycle, orient(a, b, order))


def toric_ideal(
    g: Graph, order: LexOrder, max_cycles: int | None = None
) -> IdealPresentation:
    """P(G), generated by the binomials of the simple cycles of ``g``."""
    bipartition(g)
    cycles = enumerate_cycles(g, max_cycles=max_cycles)
    return IdealPresentation(tuple(toric_binomial(c, order).poly for c in cycles), order)


def incidence_vector(m: Monomial, g: Graph) -> Counter:
    """Image of ``m`` under e = {i, j} -> x_i x_j, as vertex exponents."""
    vec: Counter = Counter()
    for eid, e in m.items:
        if not g.has_edge(eid):
            raise GraphError(f"{edge_name(eid)} is not an edge of the graph")
        u, v = g.endpoints(eid)
        vec[u] += e
        vec[v] += e
    return vec


def kernel_member(p: TwoTermPoly, g: Graph) -> bool:
    """Membership in the kernel of the incidence map, by direct evaluation."""
    if isinstance(p, Zero):
        return True
    if isinstance(p, Mono):
        incidence_vector(p.m, g)
        return False
    return incidence_vector(p.lead, g) == incidence_vector(p.trail, g)

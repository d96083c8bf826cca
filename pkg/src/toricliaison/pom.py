"""Path ordered matchings, their cofactor sets M, and the ideals I_e^G.

A matching e_1, ..., e_r is path ordered when its vertices can be labelled
so that e_i = {i, i+r}, each f_i = {i, i+1+r} (i < r) is an edge, and no
edge {i, j+r} has j < i. We call vertex i the *upper* end of e_i and
i + r its *lower* end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import Graph, delete_edge, delete_edges, edge_name, enumerate_cycles
from .groebner import IdealPresentation, MonomialIdeal
from .poly import LexOrder, Mono, Monomial
from .toric import alternating_sides, toric_binomial


class PomError(ValueError):
    pass


class NotAMatching(PomError):
    pass


class ConditionA(PomError):
    def __init__(self, index: int, upper: int, edge: int, endpoints: tuple[int, int]):
        super().__init__(
            f"condition (a) fails at f_{index}: vertex {upper} (upper end of e_{index}) "
            f"is adjacent to neither end of {edge_name(edge)}={set(endpoints)}"
        )
        self.index = index
        self.edge = edge


class ConditionB(PomError):
    def __init__(self, edge: int, i: int, j: int):
        super().__init__(
            f"condition (b) fails: {edge_name(edge)} joins label {i} to label {j}+r with {j} < {i}"
        )
        self.edge = edge
        self.i = i
        self.j = j


class NoFreeVariable(PomError):
    pass


@dataclass(frozen=True)
class PathOrderedMatching:
    edges: tuple[int, ...]
    upper: tuple[int, ...]
    lower: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def labeling(self) -> dict[int, int]:
        """old vertex -> new label"""
        r = self.r
        lab = {u: i for i, u in enumerate(self.upper, start=1)}
        lab.update({w: i + r for i, w in enumerate(self.lower, start=1)})
        return lab

    def prefix(self, s: int) -> "PathOrderedMatching":
        return PathOrderedMatching(self.edges[:s], self.upper[:s], self.lower[:s])

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def to_json_obj(self) -> dict:
        return {
            "edges": [edge_name(e) for e in self.edges],
            "labeling": [[old, new] for old, new in sorted(self.labeling.items())],
        }

    def __str__(self) -> str:
        return "[" + ", ".join(edge_name(e) for e in self.edges) + "]"


EMPTY_POM = PathOrderedMatching((), (), ())


def _chain(g: Graph, edges: Sequence[int], first_upper: int) -> tuple[list[int], list[int]]:
    a, b = g.endpoints(edges[0])
    upper = [first_upper]
    lower = [b if first_upper == a else a]
    adj = g.adjacency
    for i in range(1, len(edges)):
        c, d = g.endpoints(edges[i])
        u = upper[-1]
        if c in adj[u]:
            lower.append(c)
            upper.append(d)
        elif d in adj[u]:
            lower.append(d)
            upper.append(c)
        else:
            raise ConditionA(i, u, edges[i], (c, d))
    return upper, lower


def _check_b(g: Graph, upper: Sequence[int], lower: Sequence[int]) -> None:
    up_index = {u: i for i, u in enumerate(upper, start=1)}
    low_index = {w: j for j, w in enumerate(lower, start=1)}
    for eid, (x, y) in sorted(g.edges):
        for u, w in ((x, y), (y, x)):
            i, j = up_index.get(u), low_index.get(w)
            if i is not None and j is not None and j < i:
                raise ConditionB(eid, i, j)


def validate_pom(g: Graph, edges: Iterable[int]) -> PathOrderedMatching:
    """Construct the relabelling that witnesses a path ordered matching.

    Chaining through condition (a) fixes every orientation once e_1 is
    oriented, so only the two orientations of e_1 are tried (lower vertex
    id as upper end first). When both fail, a condition (b) failure is
    reported in preference to a condition (a) one.
    """
    edges = tuple(edges)
    if len(set(edges)) != len(edges):
        raise PomError("repeated edge in matching")
    seen: dict[int, int] = {}
    for eid in edges:
        for v in g.endpoints(eid):
            if v in seen:
                raise NotAMatching(f"{edge_name(seen[v])} and {edge_name(eid)} share vertex {v}")
            seen[v] = eid
    if not edges:
        return EMPTY_POM
    failures: list[PomError] = []
    for first_upper in g.endpoints(edges[0]):
        try:
            upper, lower = _chain(g, edges, first_upper)
            _check_b(g, upper, lower)
        except (ConditionA, ConditionB) as exc:
            failures.append(exc)
            continue
        return PathOrderedMatching(edges, tuple(upper), tuple(lower))
    for exc in failures:
        if isinstance(exc, ConditionB):
            raise exc
    raise failures[0]


def is_pom(g: Graph, edges: Iterable[int]) -> bool:
    try:
        validate_pom(g, edges)
    except PomError:
        return False
    return True


def iter_poms(g: Graph) -> Iterator[PathOrderedMatching]:
    """Every path ordered matching (as an ordered, labelled sequence).

    Prefixes of path ordered matchings are path ordered, so the search grows
    sequences one edge at a time and checks (a) and (b) incrementally.
    Length-one matchings appear once per orientation.
    """
    adj = g.adjacency
    eids = g.edge_ids

    def grow(edges, upper, lower, used):
        yield PathOrderedMatching(tuple(edges), tuple(upper), tuple(lower))
        last_upper = upper[-1]
        for eid in eids:
            a, b = g.endpoints(eid)
            if a in used or b in used:
                continue
            for lo, up in ((a, b), (b, a)):
                if lo not in adj[last_upper]:
                    continue
                if any(w in adj[up] for w in lower):
                    continue
                yield from grow(edges + [eid], upper + [up], lower + [lo], used | {a, b})

    for eid in eids:
        a, b = g.endpoints(eid)
        for up, lo in ((a, b), (b, a)):
            yield from grow([eid], [up], [lo], {a, b})


def _superset_pom(g: Graph, pom: PathOrderedMatching) -> PathOrderedMatching | None:
    """A path ordered matching strictly containing ``pom``; keeps its order if possible."""
    base = pom.edge_set
    fallback = None
    for cand in iter_poms(g):
        if len(cand.edges) > len(base) and base < cand.edge_set:
            kept = [e for e in cand.edges if e in base]
            if tuple(kept) == pom.edges:
                return cand
            if fallback is None:
                fallback = cand
    return fallback


def is_maximal(g: Graph, pom: PathOrderedMatching) -> bool:
    """Subset-maximality, decided by exhaustive search over all path ordered matchings."""
    for cand in iter_poms(g):
        if len(cand.edges) > pom.r and pom.edge_set < cand.edge_set:
            return False
    return True


def single_insertions(g: Graph, pom: PathOrderedMatching) -> Iterator[tuple[int, int, PathOrderedMatching]]:
    """(edge, position, result) for every valid one-edge insertion, smallest edge first."""
    for eid in g.edge_ids:
        if eid in pom.edge_set:
            continue
        for pos in range(pom.r + 1):
            cand = pom.edges[:pos] + (eid,) + pom.edges[pos:]
            try:
                yield eid, pos, validate_pom(g, cand)
            except PomError:
                continue


def extend_pom(g: Graph, pom: PathOrderedMatching) -> PathOrderedMatching:
    """Grow ``pom`` to a maximal path ordered matching.

    Greedy single-edge insertion (smallest edge id, leftmost position) until
    none validates; if the result is still not maximal, a strictly larger
    matching from the exhaustive search is adopted and growth resumes.
    """
    cur = pom
    while True:
        step = next(single_insertions(g, cur), None)
        if step is not None:
            cur = step[2]
            continue
        bigger = _superset_pom(g, cur)
        if bigger is None:
            return cur
        cur = bigger


# the cofactor set M and the ideal I_e^G ----------------------------------------


@dataclass(frozen=True)
class MEntry:
    monomial: Monomial
    cycle: tuple[int, ...]
    indices: tuple[int, ...]  # 1-based positions in the matching


@dataclass(frozen=True)
class MSet:
    entries: tuple[MEntry, ...]

    def monomials(self) -> list[Monomial]:
        return [e.monomial for e in self.entries]

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal.of(self.monomials())

    def variables(self) -> list[int]:
        """Members of degree one, as edge ids."""
        return sorted(next(iter(m.support)) for m in self.monomials() if m.degree == 1)

    def __len__(self) -> int:
        return len(self.entries)


def _side_split(side: Monomial, pom: PathOrderedMatching) -> tuple[Monomial, tuple[int, ...]]:
    pos = {e: i for i, e in enumerate(pom.edges, start=1)}
    hit = sorted(pos[v] for v in side.support if v in pos)
    rest = Monomial.squarefree(v for v in side.support if v not in pos)
    return rest, tuple(hit)


def compute_M(g: Graph, pom: PathOrderedMatching, *, one_sided_only: bool = False,
              cycles: Sequence[tuple[int, ...]] | None = None) -> MSet:
    """Cofactors ``m`` with ``m * prod(e_i, i in I) - n`` a cycle binomial.

    Each side of each cycle binomial meeting the matching contributes the
    side with all its matching variables divided out (the smallest cofactor
    that side allows). ``one_sided_only`` keeps only cycles whose matching
    variables all sit on one side.
    """
    if cycles is None:
        cycles = enumerate_cycles(g)
    entries: dict[Monomial, MEntry] = {}
    for cyc in cycles:
        split = [_side_split(side, pom) for side in alternating_sides(cyc)]
        if one_sided_only and all(idx for _, idx in split):
            continue
        for m, idx in split:
            if idx and m not in entries:
                entries[m] = MEntry(m, cyc, idx)
    return MSet(tuple(entries.values()))


def build_I(g: Graph, pom: PathOrderedMatching, order: LexOrder, *,
            one_sided_only: bool = False) -> IdealPresentation:
    """I_e^G = P(G minus e) + (M): cycle binomials of G minus e, then the cofactors."""
    cycles = enumerate_cycles(g)
    rest = pom.edge_set
    binomials = [toric_binomial(c, order).poly for c in cycles if not rest.intersection(c)]
    mset = compute_M(g, pom, one_sided_only=one_sided_only, cycles=cycles)
    monos = [Mono(1, m) for m in mset.monomials()]
    return IdealPresentation(tuple(binomials) + tuple(monos), order)


def find_free_variable(g: Graph, pom: PathOrderedMatching) -> int:
    """An indeterminate in M for a leafless graph and a maximal matching.

    The smallest such edge id is returned after checking that ``pom`` is
    still path ordered once that edge is deleted.
    """
    if g.leaves():
        raise NoFreeVariable(f"graph has leaves {g.leaves()}")
    if not is_maximal(g, pom):
        raise NoFreeVariable(f"{pom} is not maximal")
    candidates = compute_M(g, pom).variables()
    if not candidates:
        raise NoFreeVariable(f"M contains no indeterminate for {pom}")
    x = candidates[0]
    validate_pom(delete_edge(g, x), pom.edges)
    return x


def graph_minus_pom(g: Graph, pom: PathOrderedMatching) -> Graph:
    return delete_edges(g, pom.edges)

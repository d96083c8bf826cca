"""Simple bipartite graphs with stable edge identifiers.

Edges carry integer ids that never change once assigned; they are the
variables of the polynomial ring attached to the graph and are rendered
as ``e1``, ``e2``, ... everywhere outside this module.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Malformed or inconsistent graph input."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateEdge(ParseError):
    pass


class LoopEdge(ParseError):
    pass


class UnknownEdge(GraphError, KeyError):
    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown edge"


class OddCycleFound(GraphError):
    """Raised by :func:`bipartition`; ``witness`` is a closed vertex sequence."""

    def __init__(self, witness: tuple[int, ...]):
        super().__init__(
            "graph is not bipartite; odd cycle " + "-".join(map(str, witness))
        )
        self.witness = witness


class TooManyCycles(GraphError):
    pass


def edge_name(eid: int) -> str:
    return f"e{eid}"


def parse_edge_name(token) -> int:
    """Accept ``3``, ``"3"`` or ``"e3"``."""
    if isinstance(token, int) and not isinstance(token, bool):
        return token
    text = str(token).strip()
    if text[:1] in ("e", "E"):
        text = text[1:]
    if not text.isdigit() or int(text) <= 0:
        raise GraphError(f"bad edge id {token!r}")
    return int(text)


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: tuple[tuple[int, tuple[int, int]], ...]
    _endpoints: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen_ids = set()
        seen_pairs = set()
        endpoints = {}
        for eid, (u, v) in self.edges:
            if eid in seen_ids:
                raise GraphError(f"edge id {edge_name(eid)} used twice")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {edge_name(eid)} has an endpoint outside the vertex set")
            pair = (min(u, v), max(u, v))
            if pair in seen_pairs:
                raise GraphError(f"repeated edge {pair}")
            seen_ids.add(eid)
            seen_pairs.add(pair)
            endpoints[eid] = pair
        object.__setattr__(self, "_endpoints", endpoints)

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        """Number the pairs ``e1, e2, ...`` in the given order."""
        pairs = [(int(u), int(v)) for u, v in pairs]
        verts = set(vertices)
        for u, v in pairs:
            verts.update((u, v))
        edges = tuple((i, (min(u, v), max(u, v))) for i, (u, v) in enumerate(pairs, start=1))
        return cls(frozenset(verts), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def q(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._endpoints))

    def endpoints(self, eid: int) -> tuple[int, int]:
        try:
            return self._endpoints[eid]
        except KeyError:
            raise UnknownEdge(f"unknown edge {edge_name(eid)}") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._endpoints

    @cached_property
    def adjacency(self) -> dict[int, dict[int, int]]:
        """vertex -> {neighbour: edge id}."""
        adj: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        for eid, (u, v) in self.edges:
            adj[u][v] = eid
            adj[v][u] = eid
        return adj

    def edge_between(self, u: int, v: int) -> int | None:
        return self.adjacency.get(u, {}).get(v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def non_isolated(self) -> frozenset[int]:
        return frozenset(v for v, nb in self.adjacency.items() if nb)

    def leaves(self) -> list[int]:
        return sorted(v for v, nb in self.adjacency.items() if len(nb) == 1)

    def components(self) -> list[frozenset[int]]:
        """Connected components of the non-isolated part."""
        seen: set[int] = set()
        comps = []
        for start in sorted(self.non_isolated):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # serialisation -----------------------------------------------------

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for _, (u, v) in sorted(self.edges))

    def to_json_obj(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [[edge_name(eid), u, v] for eid, (u, v) in sorted(self.edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":")) + "\n"

    def __str__(self) -> str:
        body = ", ".join(f"{edge_name(e)}={{{u},{v}}}" for e, (u, v) in sorted(self.edges))
        return f"Graph(n={self.n}, q={self.q}: {body})"


def parse_graph(text: str) -> Graph:
    """Parse the edge-list text format or the JSON form.

    Text lines are ``u v`` with distinct positive integers; blank lines and
    ``#`` comments are skipped. Edge ids follow input order.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    pairs = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, f"expected 'u v', got {raw.strip()!r}")
        u, v = int(parts[0]), int(parts[1])
        if u <= 0 or v <= 0:
            raise ParseError(lineno, "vertex ids must be positive")
        if u == v:
            raise LoopEdge(lineno, f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(lineno, f"edge {{{u},{v}}} repeats line {seen[key]}")
        seen[key] = lineno
        pairs.append((u, v))
    return Graph.from_edges(pairs)


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(obj, dict) or "edges" not in obj:
        raise ParseError(1, "JSON graph needs an 'edges' list")
    edges = []
    pairs = {}
    for k, item in enumerate(obj["edges"], start=1):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(1, f"edge entry {k} must be [id, u, v]")
        eid = parse_edge_name(item[0])
        u, v = int(item[1]), int(item[2])
        if u <= 0 or v <= 0:
            raise ParseError(1, f"edge entry {k}: vertex ids must be positive")
        if u == v:
            raise LoopEdge(1, f"edge entry {k}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in pairs:
            raise DuplicateEdge(1, f"edge entry {k} repeats entry {pairs[key]}")
        pairs[key] = k
        edges.append((eid, key))
    verts = {int(v) for v in obj.get("vertices", [])}
    for _, (u, v) in edges:
        verts.update((u, v))
    try:
        return Graph(frozenset(verts), tuple(sorted(edges)))
    except GraphError as exc:
        raise ParseError(1, str(exc)) from None


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Breadth-first 2-colouring; the least vertex of each component goes to part 1.

    Isolated vertices are left out of both parts.
    """
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    for start in sorted(g.non_isolated):
        if start in colour:
            continue
        colour[start], parent[start], depth[start] = 0, None, 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    raise OddCycleFound(_odd_witness(u, w, parent, depth))
    part1 = frozenset(v for v, c in colour.items() if c == 0)
    part2 = frozenset(v for v, c in colour.items() if c == 1)
    return part1, part2


def _odd_witness(u, w, parent, depth) -> tuple[int, ...]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; walk back down the right branch
    return tuple(left + right[-2::-1] + [u])


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except OddCycleFound:
        return False
    return True


def delete_edges(g: Graph, eids: Iterable[int]) -> Graph:
    eids = set(eids)
    for eid in sorted(eids):
        g.endpoints(eid)
    return Graph(g.vertices, tuple(e for e in g.edges if e[0] not in eids))


def delete_edge(g: Graph, eid: int) -> Graph:
    return delete_edges(g, (eid,))


def strip_leaves(g: Graph) -> Graph:
    """Remove leaves and their edges, round by round, until none are left."""
    while True:
        leaves = set(g.leaves())
        if not leaves:
            return g
        edges = tuple(e for e in g.edges if not (set(e[1]) & leaves))
        g = Graph(g.vertices - leaves, edges)


# cycles -----------------------------------------------------------------


def canonical_cycle(eids: Iterable[int]) -> tuple[int, ...]:
    """Rotate to the least edge id and orient so the second id beats the last."""
    seq = list(eids)
    k = seq.index(min(seq))
    seq = seq[k:] + seq[:k]
    if len(seq) > 2 and seq[1] > seq[-1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


def cycle_vertices(g: Graph, cycle: tuple[int, ...]) -> list[int]:
    """Vertex sequence v0, v1, ... with cycle[k] = {v_k, v_{k+1}}."""
    if len(cycle) < 2:
        raise GraphError("a cycle needs at least two edges")
    a, b = g.endpoints(cycle[0])
    nxt = set(g.endpoints(cycle[1]))
    start = a if b in nxt else b
    verts = [start]
    cur = start
    for eid in cycle:
        u, v = g.endpoints(eid)
        if cur not in (u, v):
            raise GraphError(f"edge {edge_name(eid)} does not continue the walk")
        cur = v if cur == u else u
        verts.append(cur)
    if verts[-1] != verts[0]:
        raise GraphError("edge sequence is not closed")
    return verts[:-1]


def is_cycle(g: Graph, cycle: tuple[int, ...]) -> bool:
    try:
        verts = cycle_vertices(g, cycle)
    except GraphError:
        return False
    return len(set(verts)) == len(verts) == len(cycle) >= 3


def enumerate_cycles(g: Graph, max_cycles: int | None = None) -> list[tuple[int, ...]]:
    """All simple cycles as canonical edge-id tuples, sorted.

    Depth-first search from each vertex ``s`` through larger vertices only,
    so every cycle is met exactly twice (once per direction). The count is
    exponential in general; ``max_cycles`` bounds it.
    """
    adj = g.adjacency
    found: set[tuple[int, ...]] = set()
    for s in sorted(g.non_isolated):
        path = [s]
        on_path = {s}
        edge_path: list[int] = []
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            advanced = False
            for w in stack[-1]:
                u = path[-1]
                if w in on_path:
                    continue
                edge_path.append(adj[u][w])
                path.append(w)
                on_path.add(w)
                closing = adj[w].get(s)
                if closing is not None and len(path) >= 3:
                    found.add(canonical_cycle(edge_path + [closing]))
                    if max_cycles is not None and len(found) > max_cycles:
                        raise TooManyCycles(f"more than {max_cycles} cycles")
                stack.append(iter(sorted(x for x in adj[w] if x > s)))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if len(path) > 1:
                    on_path.discard(path.pop())
                    edge_path.pop()
    return sorted(found)

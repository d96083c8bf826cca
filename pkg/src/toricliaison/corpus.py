"""Named test graphs used by the acceptance suite and ``toricliaison corpus``."""

from __future__ import annotations

from itertools import product

from .graph import Graph


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges((i, i % k + 1) for i in range(1, k + 1))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges((i, a + j) for i, j in product(range(1, a + 1), range(1, b + 1)))


def grid(rows: int, cols: int) -> Graph:
    """Grid graph on rows x cols vertices, numbered row by row."""
    def vid(r, c):
        return r * cols + c + 1

    pairs = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                pairs.append((vid(r, c), vid(r + 1, c)))
    return Graph.from_edges(pairs)


def disjoint_c4s() -> Graph:
    return Graph.from_edges([(1, 3), (3, 2), (2, 4), (4, 1), (5, 7), (7, 6), (6, 8), (8, 5)])


def c4() -> Graph:
    return Graph.from_edges([(1, 3), (3, 2), (2, 4), (4, 1)])


def c4_pendant() -> Graph:
    return Graph.from_edges([(1, 3), (3, 2), (2, 4), (4, 1), (4, 5)])


def zigzag_path(r: int = 5) -> Graph:
    """Matching {i, i+r} joined by connectors {i, i+r+1}: a path ordered matching of length r."""
    return Graph.from_edges([(i, i + r) for i in range(1, r + 1)] + [(i, i + r + 1) for i in range(1, r)])


CORPUS = {
    "C4": c4,
    "C6": lambda: cycle_graph(6),
    "C8": lambda: cycle_graph(8),
    "K23": lambda: complete_bipartite(2, 3),
    "K24": lambda: complete_bipartite(2, 4),
    "K33": lambda: complete_bipartite(3, 3),
    "grid2x3": lambda: grid(2, 3),
    "2C4": disjoint_c4s,
    "C4+pendant": c4_pendant,
}

CONNECTED = ("C4", "C6", "C8", "K23", "K24", "K33", "grid2x3", "C4+pendant")


def corpus_graph(name: str) -> Graph:
    try:
        return CORPUS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus graph {name!r}; known: {', '.join(CORPUS)}") from None

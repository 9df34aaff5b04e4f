"""Small named graphs: standard families and the worked examples.

Edge orders matter: line-graph vertices follow the edge order of the
pre-line graph, so eigenvectors of the examples come out in the familiar
coordinates.
"""

from __future__ import annotations

from .graph import Graph


def path(n: int) -> Graph:
    """``P_n`` on vertices ``1..n``."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph.from_edges([(str(i), str(i + 1)) for i in range(1, n)], vertices=[str(i) for i in range(1, n + 1)])


def cycle(n: int) -> Graph:
    """``C_n`` on vertices ``1..n``; edge ``k`` joins ``k`` and ``k+1``."""
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph.from_edges([(str(i), str(i % n + 1)) for i in range(1, n + 1)])


def star(k: int) -> Graph:
    """Star with center ``c`` and ``k`` leaves."""
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges([("c", f"l{i}") for i in range(1, k + 1)])


def complete(n: int) -> Graph:
    labels = [str(i) for i in range(1, n + 1)]
    return Graph.from_edges([(a, b) for i, a in enumerate(labels) for b in labels[i + 1 :]], vertices=labels)


def disjoint_edges(k: int = 2) -> Graph:
    return Graph.from_edges([(f"a{i}", f"b{i}") for i in range(1, k + 1)])


def two_triangles() -> Graph:
    """Two triangles joined by a bridge ``c1 - c2``."""
    return Graph.from_edges(
        [("L1", "L2"), ("L1", "c1"), ("L2", "c1"), ("c1", "c2"), ("c2", "R1"), ("c2", "R2"), ("R1", "R2")]
    )


def c4_pendant() -> Graph:
    """``C_4`` on ``x, a, c, b`` with a pendant edge at ``c``."""
    return Graph.from_edges([("x", "a"), ("x", "b"), ("a", "c"), ("b", "c"), ("c", "p")])


def figure_eight() -> Graph:
    """Two ``C_4`` sharing the vertex ``c``."""
    return Graph.from_edges(
        [
            ("x", "a"), ("x", "b"), ("a", "c"), ("b", "c"),
            ("c", "d"), ("c", "e"), ("d", "y"), ("e", "y"),
        ]
    )


def c4_c3() -> Graph:
    """``C_4`` and a triangle sharing the vertex ``c``."""
    return Graph.from_edges(
        [("x", "a"), ("x", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("c", "e"), ("d", "e")]
    )


def diamond() -> Graph:
    """``K_4`` minus the edge ``b - d``."""
    return Graph.from_edges([("a", "c"), ("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


def paw() -> Graph:
    """Triangle ``a, b, c`` with a pendant edge at ``c``."""
    return Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])


NAMED = {
    "two_triangles": two_triangles,
    "c4_pendant": c4_pendant,
    "figure_eight": figure_eight,
    "c4_c3": c4_c3,
    "diamond": diamond,
    "paw": paw,
}

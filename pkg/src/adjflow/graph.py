"""Finite simple graphs, line graphs and incidence matrices.

Vertices are string labels kept in first-appearance order; every matrix in
the package is indexed by that order. Edges are stored with their endpoints
sorted lexicographically, which also fixes the orientation used by the
oriented incidence matrix (the smaller label is the initial endpoint).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import EdgeListError, GraphError
from .spectral import SymMatrix

Edge = tuple[str, str]

#: Separator between the two endpoint labels in a line-graph vertex label.
LINE_LABEL_SEP = "–"


def edge_key(u: str, v: str) -> Edge:
    """Canonical (sorted) form of the unordered pair ``{u, v}``."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with positive edge weights (default 1).

    Build instances with :meth:`from_edges` or :func:`from_edge_list`; the
    constructor validates but does not normalise its arguments.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    weights: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", (1.0,) * len(self.edges))
        if len(self.weights) != len(self.edges):
            raise GraphError("one weight per edge required")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex label")
        known = set(self.vertices)
        seen = set()
        for (u, v), c in zip(self.edges, self.weights):
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            if (u, v) != edge_key(u, v):
                raise GraphError(f"edge ({u!r}, {v!r}) is not in canonical order")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {u!r} {v!r}")
            if u not in known or v not in known:
                raise GraphError(f"edge ({u!r}, {v!r}) has an undeclared endpoint")
            if not (math.isfinite(c) and c > 0):
                raise GraphError(f"edge ({u!r}, {v!r}) has non-positive weight {c}")
            seen.add((u, v))

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Sequence],
        vertices: Iterable[str] | None = None,
        weights: Mapping[Edge, float] | None = None,
    ) -> "Graph":
        """Build a graph from ``(u, v)`` or ``(u, v, weight)`` items.

        Extra isolated vertices may be declared through ``vertices``; they
        come first in the vertex order.
        """
        order: dict[str, None] = {}
        if vertices is not None:
            for v in vertices:
                order.setdefault(str(v), None)
        out_edges, out_w = [], []
        seen = set()
        for item in edges:
            u, v = str(item[0]), str(item[1])
            c = float(item[2]) if len(item) > 2 else 1.0
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            key = edge_key(u, v)
            if key in seen:
                raise GraphError(f"duplicate edge {u!r} {v!r}")
            seen.add(key)
            order.setdefault(u, None)
            order.setdefault(v, None)
            if weights is not None and key in weights:
                c = float(weights[key])
            out_edges.append(key)
            out_w.append(c)
        return cls(tuple(order), tuple(out_edges), tuple(out_w))

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _adj(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def _weight_of(self) -> dict[Edge, float]:
        return dict(zip(self.edges, self.weights))

    def neighbors(self, v: str) -> list[str]:
        self._check_vertex(v)
        return list(self._adj[v])

    def degree(self, v: str) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(self._adj[v]) for v in self.vertices], dtype=int)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self._weight_of

    def weight(self, u: str, v: str) -> float:
        return self._weight_of[edge_key(u, v)]

    @property
    def is_weighted(self) -> bool:
        return any(c != 1.0 for c in self.weights)

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool(d.size) and bool(np.all(d == d[0]))

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_subgraph_of(self, other: "Graph") -> bool:
        """Edge-set inclusion on a shared vertex set."""
        if set(self.vertices) != set(other.vertices):
            return False
        return all(other.has_edge(u, v) for u, v in self.edges)

    def with_vertex_order(self, order: Sequence[str]) -> "Graph":
        if sorted(order) != sorted(self.vertices):
            raise GraphError("new order must be a permutation of the vertices")
        return Graph(tuple(order), self.edges, self.weights)

    def _check_vertex(self, v):
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}")


# -- edge-list documents ---------------------------------------------------


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def from_edge_list(text: str) -> Graph:
    """Parse ``<u> <v> [weight]`` lines; ``#`` comments and blank lines are skipped."""
    order: dict[str, None] = {}
    edges, weights = [], []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(f"expected '<u> <v> [weight]', got {raw.strip()!r}", lineno)
        u, v = parts[0], parts[1]
        if u == v:
            raise EdgeListError(f"self-loop at {u!r}", lineno)
        c = 1.0
        if len(parts) == 3:
            try:
                c = float(parts[2])
            except ValueError:
                raise EdgeListError(f"weight {parts[2]!r} is not a number", lineno) from None
            if not (math.isfinite(c) and c > 0):
                raise EdgeListError(f"weight must be positive, got {parts[2]}", lineno)
        key = edge_key(u, v)
        if key in seen:
            raise EdgeListError(f"duplicate edge {u} {v} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        order.setdefault(u, None)
        order.setdefault(v, None)
        edges.append(key)
        weights.append(c)
    return Graph(tuple(order), tuple(edges), tuple(weights))


def to_edge_list(G: Graph) -> str:
    lines = []
    for (u, v), c in zip(G.edges, G.weights):
        lines.append(f"{u} {v}" if c == 1.0 else f"{u} {v} {c!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_vertex_map(text: str, value_type=float) -> dict[str, float]:
    """Parse ``<vertex> <value>`` lines (vertex-weight and petal files)."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected '<vertex> <value>', got {raw.strip()!r}", lineno)
        try:
            value = value_type(parts[1])
        except ValueError:
            raise EdgeListError(f"bad value {parts[1]!r}", lineno) from None
        if parts[0] in out:
            raise EdgeListError(f"vertex {parts[0]!r} listed twice", lineno)
        out[parts[0]] = value
    return out


# -- line graphs -------------------------------------------------------------


def line_label(e: Edge) -> str:
    return f"{e[0]}{LINE_LABEL_SEP}{e[1]}"


@dataclass(frozen=True)
class LineGraphMap:
    """A line graph ``line`` of ``pre_line``; line vertex i is pre-line edge i."""

    pre_line: Graph
    line: Graph
    vertex_of_edge: Mapping[Edge, str]

    @cached_property
    def edge_of_vertex(self) -> dict[str, Edge]:
        return {v: e for e, v in self.vertex_of_edge.items()}


def line_graph(H: Graph) -> LineGraphMap:
    """Line graph of ``H``; its vertex order follows the edge order of ``H``."""
    if H.m == 0:
        raise GraphError("line graph of an edgeless graph is empty")
    labels = [line_label(e) for e in H.edges]
    if len(set(labels)) != len(labels):
        raise GraphError(f"vertex labels of H contain {LINE_LABEL_SEP!r}; line labels collide")
    incident: dict[str, list[int]] = {v: [] for v in H.vertices}
    for k, (u, v) in enumerate(H.edges):
        incident[u].append(k)
        incident[v].append(k)
    pairs = set()
    for inc in incident.values():
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                i, j = sorted((inc[a], inc[b]))
                pairs.add((i, j))
    # simple H: two distinct edges share at most one endpoint, so no duplicates
    edges = tuple(edge_key(labels[i], labels[j]) for i, j in sorted(pairs))
    G = Graph(tuple(labels), edges)
    return LineGraphMap(H, G, dict(zip(H.edges, labels)))


def degree_of_line_vertex(M: LineGraphMap, v: str) -> int:
    """Degree of a line vertex, cross-checked against ``deg v' + deg w' - 2``."""
    if v not in M.line.index:
        raise GraphError(f"unknown line vertex {v!r}")
    d = M.line.degree(v)
    a, b = M.edge_of_vertex[v]
    expected = M.pre_line.degree(a) + M.pre_line.degree(b) - 2
    if d != expected:
        raise AssertionError(f"degree relation violated at {v!r}: {d} != {expected}")
    return d


class Bipartition(NamedTuple):
    is_bipartite: bool
    coloring: dict[str, int] | None
    beta: int


def is_bipartite(G: Graph) -> Bipartition:
    """BFS two-colouring, one component at a time."""
    color: dict[str, int] = {}
    for s in G.vertices:
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G._adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return Bipartition(False, None, 0)
    return Bipartition(True, color, 1)


def minus_two_multiplicity_formula(H: Graph) -> int:
    """Predicted multiplicity of -2 in A(L(H)): ``max(0, |E'| - |V'| + beta)``."""
    if not H.is_connected():
        raise GraphError("pre-line graph must be connected")
    return max(0, H.m - H.n + is_bipartite(H).beta)


def line_graph_edge_count(H: Graph) -> int:
    """``sum_v C(deg v, 2)``, equivalently ``(1/2) sum deg^2 - |E'|``."""
    return int(sum(d * (d - 1) // 2 for d in H.degrees()))


def degree_variation(G: Graph) -> int:
    """``max_v max_{w ~ v} |deg v - deg w|`` (informational)."""
    deg = {v: len(G._adj[v]) for v in G.vertices}
    return max((abs(deg[u] - deg[v]) for u, v in G.edges), default=0)


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class IncidenceMatrix:
    matrix: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[Edge, ...]
    kind: str


def incidence(H: Graph, kind: str = "signless") -> IncidenceMatrix:
    """Vertex-by-edge incidence matrix, ``"signless"`` (J) or ``"oriented"`` (I)."""
    if kind not in ("signless", "oriented"):
        raise ValueError(f"kind must be 'signless' or 'oriented', got {kind!r}")
    M = np.zeros((H.n, H.m), dtype=np.int64)
    for k, (u, v) in enumerate(H.edges):
        # u < v lexicographically, so u is the initial endpoint
        M[H.index[u], k] = -1 if kind == "oriented" else 1
        M[H.index[v], k] = 1
    return IncidenceMatrix(M, H.vertices, H.edges, kind)


def adjacency_matrix(G: Graph) -> SymMatrix:
    """Dense adjacency matrix; entries are the edge weights."""
    return SymMatrix(_weighted_entries(G), G.vertices)


def adjacency_int(G: Graph) -> np.ndarray:
    """Unweighted 0/1 adjacency in integer arithmetic."""
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u, v in G.edges:
        i, j = G.index[u], G.index[v]
        A[i, j] = A[j, i] = 1
    return A


def _weighted_entries(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for (u, v), c in zip(G.edges, G.weights):
        i, j = G.index[u], G.index[v]
        A[i, j] = A[j, i] = c
    return A


def degree_matrix(G: Graph) -> np.ndarray:
    return np.diag(G.degrees().astype(float))


def laplacian(G: Graph) -> SymMatrix:
    """``L = D - A`` (unweighted)."""
    return SymMatrix(degree_matrix(G) - adjacency_int(G), G.vertices)


def signless_laplacian(G: Graph) -> SymMatrix:
    """``Q = D + A`` (unweighted)."""
    return SymMatrix(degree_matrix(G) + adjacency_int(G), G.vertices)

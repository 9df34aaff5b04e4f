"""Weighted adjacency operators.

Two flavours: an arbitrary positive edge weighting of any graph, and the
line-graph operator induced by vertex weights ``c`` on the pre-line graph,
i.e. the matrix of the form ``sum_v' c(v') |Ju(v')|^2 - sum_v gamma(v) |u(v)|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionError, GraphError
from .graph import Graph, LineGraphMap, adjacency_matrix, incidence, line_graph
from .spectral import SymMatrix


def weighted_adjacency_general(G: Graph) -> SymMatrix:
    """Adjacency matrix whose nonzero entries are the edge weights of ``G``."""
    return adjacency_matrix(G)


def weighted_degrees(G: Graph) -> np.ndarray:
    """Sum of incident edge weights at each vertex."""
    return adjacency_matrix(G).entries.sum(axis=1)


def max_weighted_degree(G: Graph) -> float:
    return float(weighted_degrees(G).max())


@dataclass(frozen=True)
class WeightedLineSystem:
    """Pre-line graph ``H`` with vertex weights ``c`` and its derived line quantities.

    ``gamma[v] = c(a) + c(b)`` and ``degC[v] = c(a)(deg a - 1) + c(b)(deg b - 1)``
    for the line vertex ``v`` of the edge ``(a, b)``.
    """

    H: Graph
    c: Mapping[str, float]
    M: LineGraphMap
    gamma: Mapping[str, float]
    degC: Mapping[str, float]

    @property
    def c_min(self) -> float:
        return min(self.c.values())

    @property
    def c_max(self) -> float:
        return max(self.c.values())

    def c_vector(self) -> np.ndarray:
        return np.array([self.c[v] for v in self.H.vertices])

    def gamma_vector(self) -> np.ndarray:
        return np.array([self.gamma[v] for v in self.M.line.vertices])

    def degC_vector(self) -> np.ndarray:
        return np.array([self.degC[v] for v in self.M.line.vertices])

    def sup_degC(self) -> float:
        """Finite stand-in for the weighted uniform-local-finiteness bound."""
        return float(self.degC_vector().max())


def weighted_line_system(H: Graph, c: Mapping[str, float] | None = None) -> WeightedLineSystem:
    """Bundle ``H`` with vertex weights (missing vertices default to 1)."""
    if not H.is_connected():
        raise GraphError("pre-line graph must be connected")
    c = dict(c or {})
    unknown = set(c) - set(H.vertices)
    if unknown:
        raise GraphError(f"weights given for unknown vertices {sorted(unknown)}")
    weights = {v: float(c.get(v, 1.0)) for v in H.vertices}
    for v, cv in weights.items():
        if not (math.isfinite(cv) and cv > 0):
            raise GraphError(f"vertex weight of {v!r} must be positive, got {cv}")
    M = line_graph(H)
    gamma, degC = {}, {}
    for (a, b), label in M.vertex_of_edge.items():
        gamma[label] = weights[a] + weights[b]
        degC[label] = weights[a] * (H.degree(a) - 1) + weights[b] * (H.degree(b) - 1)
    return WeightedLineSystem(H, weights, M, gamma, degC)


def line_weighted_adjacency(S: WeightedLineSystem) -> SymMatrix:
    """Entry ``c(v')`` between line vertices whose edges meet at ``v'``."""
    G = S.M.line
    A = np.zeros((G.n, G.n))
    edge_of = S.M.edge_of_vertex
    for x, y in G.edges:
        common = set(edge_of[x]) & set(edge_of[y])
        (vp,) = common
        i, j = G.index[x], G.index[y]
        A[i, j] = A[j, i] = S.c[vp]
    return SymMatrix(A, G.vertices)


def weighted_degree(S: WeightedLineSystem, v: str) -> float:
    if v not in S.degC:
        raise GraphError(f"unknown line vertex {v!r}")
    return S.degC[v]


def quadratic_form(S: WeightedLineSystem, u) -> float:
    """``sum_v' c(v') (Ju)(v')^2 - sum_v gamma(v) u(v)^2``."""
    u = np.asarray(u, dtype=float)
    if u.shape != (S.M.line.n,):
        raise DimensionError("vector length must equal the number of line vertices")
    Ju = incidence(S.H).matrix @ u
    return float(S.c_vector() @ Ju**2 - S.gamma_vector() @ u**2)

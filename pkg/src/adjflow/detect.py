"""Cycle structure of a pre-line graph read off the -2 eigenspace of its line graph.

For connected ``H``, ``-2`` is an eigenvalue of ``A(L(H))`` exactly when
``H`` has an even cycle or two odd cycles; its eigenvectors are the
vectors annihilated by the signless incidence matrix ``J`` of ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GraphError
from .graph import (
    Graph,
    adjacency_matrix,
    edge_key,
    incidence,
    line_graph,
    minus_two_multiplicity_formula,
)
from .spectral import EigenDecomposition, SymMatrix, eigenprojector, expm_from_eigen, sym_eigen

TREE_OR_ODD_UNICYCLIC = "tree_or_unicyclic_odd"
EVEN_OR_TWO_ODD = "has_even_cycle_or_two_odd_cycles"

#: Entries of a projector below this are treated as structural zeros.
SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class CycleReport:
    multiplicity_formula: int
    multiplicity_spectral: int
    classification: str
    eigenbasis: tuple[np.ndarray, ...]
    projector: SymMatrix

    def to_dict(self) -> dict:
        return {
            "multiplicity": self.multiplicity_formula,
            "multiplicity_formula": self.multiplicity_formula,
            "multiplicity_spectral": self.multiplicity_spectral,
            "classification": self.classification,
            "labels": list(self.projector.labels),
            "eigenbasis": [v.tolist() for v in self.eigenbasis],
            "projector": self.projector.to_rows(),
        }


def _line_decomposition(H: Graph):
    M = line_graph(H)
    D = sym_eigen(adjacency_matrix(M.line))
    return M, D


def _minus_two_basis(D: EigenDecomposition) -> np.ndarray:
    return D.vectors[:, D.select(-2.0)]


def detect_cycle_structure(H: Graph) -> CycleReport:
    """Classify ``H`` by the multiplicity of -2 in its line graph, computed two ways."""
    if H.m < 2:
        raise GraphError("pre-line graph needs at least two edges")
    formula = minus_two_multiplicity_formula(H)  # raises on disconnected H
    M, D = _line_decomposition(H)
    W = _minus_two_basis(D)
    spectral = W.shape[1]
    if spectral != formula:
        raise AssertionError(f"multiplicity formula {formula} disagrees with spectrum {spectral}")
    _check_kernel_of_J(H, W)
    return CycleReport(
        multiplicity_formula=formula,
        multiplicity_spectral=spectral,
        classification=EVEN_OR_TWO_ODD if formula > 0 else TREE_OR_ODD_UNICYCLIC,
        eigenbasis=tuple(W[:, k].copy() for k in range(spectral)),
        projector=eigenprojector(D, -2.0),
    )


def _check_kernel_of_J(H: Graph, W: np.ndarray, tol: float = 1e-8):
    if W.size and np.abs(incidence(H).matrix @ W).max() > tol:
        raise AssertionError("a -2 eigenvector is not annihilated by J")


def minus_two_eigenspace(G: Graph, H: Graph) -> np.ndarray:
    """Orthonormal basis (columns) of the -2 eigenspace of ``A(G)``, ``G = L(H)``."""
    M = line_graph(H)
    same_edges = {edge_key(*e) for e in G.edges} == set(M.line.edges)
    if set(G.vertices) != set(M.line.vertices) or not same_edges:
        raise GraphError("G is not the line graph of H")
    G = G.with_vertex_order(M.line.vertices)
    D = sym_eigen(adjacency_matrix(G))
    W = _minus_two_basis(D)
    _check_kernel_of_J(H, W)
    if H.is_connected() and W.shape[1] != minus_two_multiplicity_formula(H):
        raise AssertionError("dimension of the -2 eigenspace disagrees with the formula")
    return W


def incidence_kernel(H: Graph) -> np.ndarray:
    """Orthonormal basis of ``ker J`` from exact rational elimination.

    Independent of the eigensolver; used to cross-check the -2 eigenspace.
    """
    J = incidence(H).matrix
    rows, cols = J.shape
    R = [[Fraction(int(x)) for x in row] for row in J]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * cols
        x[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -R[i][fcol]
        basis.append([float(v) for v in x])
    if not basis:
        return np.zeros((cols, 0))
    Q, _ = np.linalg.qr(np.array(basis).T)
    return Q


def even_cycle_eigenvector(H: Graph, cycle) -> np.ndarray:
    """Alternating ±1 vector on the line vertices of an induced even cycle of ``H``.

    ``cycle`` lists the cycle's vertices in order (without repeating the
    first). The edge ``(cycle[0], cycle[1])`` gets ``+1``.
    """
    cycle = [str(v) for v in cycle]
    k = len(cycle)
    if k < 4 or k % 2:
        raise GraphError(f"need an even cycle of length >= 4, got length {k}")
    if len(set(cycle)) != k:
        raise GraphError("cycle vertices must be distinct")
    for v in cycle:
        H._check_vertex(v)
    ring = [edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    for u, v in ring:
        if not H.has_edge(u, v):
            raise GraphError(f"{u}-{v} is not an edge of H")
    on_cycle = set(ring)
    members = set(cycle)
    for u, v in H.edges:
        if u in members and v in members and (u, v) not in on_cycle:
            raise GraphError(f"cycle has the chord {u}-{v}; it must be induced")
    M = line_graph(H)
    u = np.zeros(M.line.n)
    for i, e in enumerate(ring):
        u[M.line.index[M.vertex_of_edge[e]]] = 1.0 if i % 2 == 0 else -1.0
    A = adjacency_matrix(M.line).entries
    if np.abs(A @ u + 2 * u).max() > 1e-10:
        raise AssertionError("alternating cycle vector is not a -2 eigenvector")
    return u


def projector_irreducible(P, tol: float = SUPPORT_TOL) -> bool:
    """Whether the support graph ``{(i, j): |P_ij| > tol}`` is connected."""
    P = np.asarray(P)
    n = P.shape[0]
    support = np.abs(P) > tol
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(support[i]):
            if j not in seen:
                seen.add(int(j))
                stack.append(int(j))
    return len(seen) == n


@dataclass(frozen=True)
class HamiltonianReport:
    minus_two_present: bool
    projector_irreducible: bool
    condition_holds: bool


def hamiltonian_necessary(H: Graph) -> HamiltonianReport:
    """Spectral condition on ``L(H)``; a pass does not certify a Hamiltonian cycle."""
    if H.n % 2:
        raise GraphError("the condition applies to graphs with an even number of vertices")
    if not H.is_connected():
        raise GraphError("pre-line graph must be connected")
    _, D = _line_decomposition(H)
    present = D.multiplicity(-2.0) > 0
    irreducible = present and projector_irreducible(eigenprojector(D, -2.0).entries)
    return HamiltonianReport(present, irreducible, present and irreducible)


def minus_two_flow(G: Graph, t: float, decomposition: EigenDecomposition | None = None) -> np.ndarray:
    """``exp(-2t) exp(-tA)`` for ``t >= 0``; tends to the -2 projector."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    D = decomposition or sym_eigen(adjacency_matrix(G))
    return expm_from_eigen(D, -t, rate=-2.0)

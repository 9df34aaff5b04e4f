"""Generalisations of the line-graph adjacency operator.

* a non-symmetric perturbation ``u -> J^T c J u + B J u + p u``;
* the quasilinear operator ``A_p u = J^T(|Ju|^(p-2) Ju) - 2^(p-1) u``,
  gradient of ``F_p(u) = ||Ju||_p^p / p - 2^(p-1) ||u||^2 / 2``;
* generalised line graphs, built from ``H`` plus petals through the Gram
  rule ``A = J~^T J~ - 2 Id``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionError, GraphError
from .graph import Graph, LineGraphMap, incidence, is_bipartite, line_label
from .spectral import CLUSTER_TOL, SymMatrix, sym_eigen
from .weighted import WeightedLineSystem


def nonsym_apply(S: WeightedLineSystem, B, p, u) -> np.ndarray:
    """``J^T c J u + B J u + p u``; ``B`` maps ``V'`` to ``V``, ``p`` is a vertex potential."""
    J = incidence(S.H).matrix.astype(float)
    u = np.asarray(u, dtype=float)
    B = np.asarray(B, dtype=float)
    p = np.asarray(p, dtype=float)
    nv, ne = J.shape
    if u.shape != (ne,) or p.shape != (ne,) or B.shape != (ne, nv):
        raise DimensionError(
            f"expected u, p of length {ne} and B of shape ({ne}, {nv}); "
            f"got {u.shape}, {p.shape}, {B.shape}"
        )
    Ju = J @ u
    return J.T @ (S.c_vector() * Ju) + B @ Ju + p * u


def nonsym_form(S: WeightedLineSystem, B, p, u, v) -> float:
    """``(cJu|Jv) + (BJu|v) + (pu|v)``."""
    J = incidence(S.H).matrix.astype(float)
    u, v = np.asarray(u, float), np.asarray(v, float)
    Ju, Jv = J @ u, J @ v
    return float(S.c_vector() @ (Ju * Jv) + (np.asarray(B) @ Ju) @ v + (np.asarray(p) * u) @ v)


def _signed_power(x: np.ndarray, p: float) -> np.ndarray:
    """``|x|^(p-2) x``, taken as 0 where ``x == 0`` (also for ``p < 2``)."""
    out = np.zeros_like(x)
    nz = x != 0
    out[nz] = np.abs(x[nz]) ** (p - 2) * x[nz]
    return out


def _check_p(p: float):
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")


def p_apply(M: LineGraphMap, p: float, u) -> np.ndarray:
    _check_p(p)
    J = incidence(M.pre_line).matrix.astype(float)
    u = np.asarray(u, dtype=float)
    if u.shape != (J.shape[1],):
        raise DimensionError("vector length must equal the number of line vertices")
    return J.T @ _signed_power(J @ u, p) - 2 ** (p - 1) * u


def p_energy(M: LineGraphMap, p: float, u) -> float:
    _check_p(p)
    J = incidence(M.pre_line).matrix.astype(float)
    u = np.asarray(u, dtype=float)
    if u.shape != (J.shape[1],):
        raise DimensionError("vector length must equal the number of line vertices")
    return float(np.sum(np.abs(J @ u) ** p) / p - 2 ** (p - 1) * (u @ u) / 2)


def p_energy_gradient_fd(M: LineGraphMap, p: float, u, h: float | None = None) -> np.ndarray:
    """Central-difference gradient of :func:`p_energy`."""
    u = np.asarray(u, dtype=float)
    if h is None:
        h = 1e-5 * (1 + np.abs(u).max())
    g = np.empty_like(u)
    for i in range(u.size):
        e = np.zeros_like(u)
        e[i] = h
        g[i] = (p_energy(M, p, u + e) - p_energy(M, p, u - e)) / (2 * h)
    return g


# -- generalised line graphs ----------------------------------------------------


@dataclass(frozen=True)
class GeneralizedLineSystem:
    """Root data ``(H, petals)``, the signed incidence ``Jtilde`` and the graph ``G``.

    Columns of ``Jtilde`` are the edges of ``H`` followed by two columns per
    petal; ``G`` has one vertex per column.
    """

    H: Graph
    petals: Mapping[str, int]
    Jtilde: np.ndarray
    row_labels: tuple[str, ...]
    G: Graph

    @property
    def total_petals(self) -> int:
        return sum(self.petals.values())


def generalized_line_graph(H: Graph, petals: Mapping[str, int] | None = None) -> GeneralizedLineSystem:
    """Generalised line graph of ``H`` with ``petals[v]`` petals at vertex ``v``.

    A petal at ``v`` is a new vertex ``x`` joined to ``v`` by two parallel
    edges; in ``Jtilde`` the two columns carry ``+1`` and ``-1`` in row ``x``
    (the ``+1`` on the first), so the two petal edges are not adjacent in ``G``.
    """
    petals = {str(k): int(v) for k, v in (petals or {}).items()}
    unknown = set(petals) - set(H.vertices)
    if unknown:
        raise GraphError(f"petals given for unknown vertices {sorted(unknown)}")
    if any(n < 0 for n in petals.values()):
        raise GraphError("petal counts must be nonnegative")
    petals = {v: petals.get(v, 0) for v in H.vertices}
    base = incidence(H).matrix
    rows = list(H.vertices)
    labels = [line_label(e) for e in H.edges]
    extra_cols = []
    for v in H.vertices:
        for k in range(1, petals[v] + 1):
            x = f"{v}~{k}"
            rows.append(x)
            for sign, tag in ((1, "+"), (-1, "-")):
                extra_cols.append((v, x, sign))
                labels.append(f"{v}~{k}{tag}")
    Jt = np.zeros((len(rows), H.m + len(extra_cols)), dtype=np.int64)
    Jt[: H.n, : H.m] = base
    row_of = {r: i for i, r in enumerate(rows)}
    for j, (v, x, sign) in enumerate(extra_cols, start=H.m):
        Jt[row_of[v], j] = 1
        Jt[row_of[x], j] = sign
    gram = Jt.T @ Jt - 2 * np.eye(Jt.shape[1], dtype=np.int64)
    if np.any((gram != 0) & (gram != 1)):
        raise AssertionError("Gram rule produced an entry outside {0, 1}")
    edges = [
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
        if gram[i, j] == 1
    ]
    G = Graph.from_edges(edges, vertices=labels)
    return GeneralizedLineSystem(H, petals, Jt, tuple(rows), G)


def generalized_adjacency(S: GeneralizedLineSystem) -> SymMatrix:
    """``Jtilde^T Jtilde - 2 Id`` labelled by the vertices of ``S.G``."""
    Jt = S.Jtilde
    return SymMatrix(Jt.T @ Jt - 2 * np.eye(Jt.shape[1]), S.G.vertices)


def generalized_multiplicity(S: GeneralizedLineSystem) -> int:
    """``max(0, |E'| - |V'| + sum n_v)``, the petal-count multiplicity formula for -2."""
    if not S.H.is_connected():
        raise GraphError("root graph must be connected")
    return max(0, S.H.m - S.H.n + S.total_petals)


@dataclass(frozen=True)
class MultiplicityComparison:
    petal_formula: int
    bipartite_corrected: int
    spectral: int

    @property
    def matching(self) -> list[str]:
        out = []
        if self.petal_formula == self.spectral:
            out.append("petal_formula")
        if self.bipartite_corrected == self.spectral:
            out.append("bipartite_corrected")
        return out


def compare_multiplicities(S: GeneralizedLineSystem, tol: float = CLUSTER_TOL) -> MultiplicityComparison:
    """Petal formula, the same formula plus the bipartite term when there are no petals,
    and the spectral multiplicity of -2."""
    plain = generalized_multiplicity(S)
    beta = is_bipartite(S.H).beta if S.total_petals == 0 else 0
    corrected = max(0, S.H.m - S.H.n + S.total_petals + beta)
    if S.G.n == 0:
        spectral = 0
    else:
        spectral = sym_eigen(generalized_adjacency(S), cluster_tol=tol).multiplicity(-2.0)
    return MultiplicityComparison(plain, corrected, spectral)

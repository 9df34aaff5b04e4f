"""Forward and backward flows ``du/dt = ±Au`` on finite graphs.

Long-time limits are computed spectrally: the rescaled propagator
``exp(-t*rate) exp(±tA)`` is assembled from shifted exponents, so large
times never overflow and limits are exact eigenprojectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, GraphError
from .graph import Graph, adjacency_matrix, laplacian, signless_laplacian
from .spectral import (
    EigenDecomposition,
    SymMatrix,
    eigenprojector,
    expm_from_eigen,
    expm_sym,
    operator_norm,
    sym_eigen,
)

FORWARD, BACKWARD = "forward", "backward"


def _direction(direction: str) -> str:
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return direction


def evolve(G: Graph, u0: Sequence[float], t: float, decomposition: EigenDecomposition | None = None):
    """Solution ``exp(tA) u0`` at signed time ``t``."""
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (G.n,):
        raise DimensionError(f"initial value has length {u0.size}, graph has {G.n} vertices")
    if t == 0:
        return u0.copy()
    D = decomposition or sym_eigen(adjacency_matrix(G))
    return np.asarray(expm_sym(D, t)) @ u0


@dataclass(frozen=True)
class EvolutionReport:
    """Rescaled propagator and its spectral limit at one time.

    ``rescaled`` is ``exp(-t * rate) * exp(±tA)`` where ``rate`` is the
    extreme eigenvalue of ``±A``; ``matrix`` is the unrescaled propagator,
    or ``None`` when it would overflow. ``residual`` is the spectral norm of
    ``rescaled - limit`` and ``envelope`` is ``exp(-t * gap)``.
    """

    direction: str
    t: float
    matrix: SymMatrix | None
    rescaled: SymMatrix
    rescale_rate: float
    limit: SymMatrix
    residual: float
    gap: float
    limit_rank: int
    envelope_checked: bool

    @property
    def envelope(self) -> float:
        return math.exp(-self.t * self.gap)

    @property
    def within_envelope(self) -> bool | None:
        if not self.envelope_checked:
            return None
        return self.residual <= self.envelope * (1 + 1e-6)


def rescaled_limit(
    G: Graph,
    direction: str = FORWARD,
    t: float | None = None,
    decomposition: EigenDecomposition | None = None,
) -> EvolutionReport:
    """Long-time limit of the rescaled forward or backward flow.

    Forward: ``exp(-t*lambda_max) exp(tA) -> P_max``. Backward:
    ``exp(t*lambda_min) exp(-tA) -> P_min``. ``rescale_rate`` is reported
    as the eigenvalue of ``A`` (``lambda_max`` or ``lambda_min``). The gap
    is measured between eigenvalue clusters, so a repeated extreme
    eigenvalue still has a positive gap; only a one-cluster spectrum gives
    gap 0, in which case the envelope check is skipped. ``t`` defaults to
    ``5 / gap``.
    """
    _direction(direction)
    if not G.is_connected():
        raise GraphError("rescaled_limit requires a connected graph")
    A = adjacency_matrix(G)
    D = decomposition or sym_eigen(A)
    end = "max" if direction == FORWARD else "min"
    lam = D.lambda_max if direction == FORWARD else D.lambda_min
    gap = D.extreme_gap(end)
    if t is None:
        t = 5.0 / gap if gap > 0 else 1.0
    if t < 0:
        raise ValueError("t must be nonnegative")
    limit = eigenprojector(D, lam, D.cluster_tol)
    sign = 1.0 if direction == FORWARD else -1.0
    # exp(-t*sign*lam) exp(sign*t*A) = V diag(exp(sign*t*(mu - lam))) V^T
    rescaled = SymMatrix(expm_from_eigen(D, sign * t, rate=lam), G.vertices)
    try:
        matrix = expm_sym(D, sign * t)
        matrix = SymMatrix(matrix.entries, G.vertices)
    except ArithmeticError:
        matrix = None
    diff = rescaled.entries - limit.entries
    residual = operator_norm(diff, 2) if diff.any() else 0.0
    return EvolutionReport(
        direction=direction,
        t=float(t),
        matrix=matrix,
        rescaled=rescaled,
        rescale_rate=lam,
        limit=limit,
        residual=residual,
        gap=gap,
        limit_rank=D.extreme_multiplicity(end),
        envelope_checked=gap > 0,
    )


def regular_forward_limit(G: Graph) -> np.ndarray:
    """All-ones matrix over ``|V|``, the forward limit for connected regular graphs."""
    if not (G.is_regular() and G.is_connected()):
        raise GraphError("graph must be connected and regular")
    return np.full((G.n, G.n), 1.0 / G.n)


@dataclass(frozen=True)
class PositivityReport:
    forward_nonnegative: bool
    forward_strictly_positive: bool
    backward_has_negative_entry: bool
    forward_min_entry: float
    backward_min_entry: float


def positivity_report(G: Graph, t: float) -> PositivityReport:
    """Sign structure of ``exp(tA)`` and ``exp(-tA)`` at ``t > 0``."""
    if not t > 0:
        raise ValueError("t must be positive")
    D = sym_eigen(adjacency_matrix(G))
    fwd = expm_from_eigen(D, t)
    bwd = expm_from_eigen(D, -t)
    # connectivity decides strict positivity; rounding can hide tiny entries
    strictly = G.is_connected() and bool(np.all(fwd > 0))
    rep = PositivityReport(
        forward_nonnegative=bool(fwd.min() >= -1e-12),
        forward_strictly_positive=strictly,
        backward_has_negative_entry=bool(bwd.min() < 0),
        forward_min_entry=float(fwd.min()),
        backward_min_entry=float(bwd.min()),
    )
    if G.n >= 2 and G.m >= 1 and not rep.backward_has_negative_entry:
        raise AssertionError("backward propagator has no negative entry")
    return rep


def domination_check(G: Graph, G_sub: Graph, t_samples: Iterable[float], tol: float = 1e-10) -> bool:
    """True iff ``exp(tA(G_sub)) <= exp(tA(G))`` entrywise at every sample time."""
    if set(G.vertices) != set(G_sub.vertices):
        raise GraphError("graphs must share the same vertex set")
    G_sub = G_sub.with_vertex_order(G.vertices)
    D = sym_eigen(adjacency_matrix(G))
    Ds = sym_eigen(adjacency_matrix(G_sub))
    for t in t_samples:
        if not t > 0:
            raise ValueError("sample times must be positive")
        big = expm_from_eigen(D, t)
        small = expm_from_eigen(Ds, t)
        if np.any(small > big + tol):
            return False
    return True


def is_doubly_stochastic(O: np.ndarray, tol: float = 1e-10) -> bool:
    O = np.asarray(O, dtype=float)
    return bool(
        O.ndim == 2
        and O.shape[0] == O.shape[1]
        and np.all(O >= -tol)
        and np.allclose(O.sum(axis=0), 1.0, rtol=0, atol=tol)
        and np.allclose(O.sum(axis=1), 1.0, rtol=0, atol=tol)
    )


def automorphism_commutes(G: Graph, O) -> bool:
    """Whether a doubly stochastic ``O`` commutes with ``A``; if so, also with ``exp(±A)``."""
    O = np.asarray(O, dtype=float)
    if O.shape != (G.n, G.n):
        raise DimensionError(f"O must be {G.n}x{G.n}")
    if not is_doubly_stochastic(O):
        raise ValueError("O is not doubly stochastic")
    A = adjacency_matrix(G).entries
    if operator_norm(O @ A - A @ O, "inf") > 1e-10:
        return False
    D = sym_eigen(A)
    for t in (1.0, -1.0):
        E = expm_from_eigen(D, t)
        if operator_norm(O @ E - E @ O, "inf") > 1e-8:
            raise AssertionError(f"O commutes with A but not with exp({t:+g}A)")
    return True


def perron_vector(G: Graph, decomposition: EigenDecomposition | None = None) -> np.ndarray:
    """Unit Perron-Frobenius eigenvector (strictly positive for connected graphs)."""
    if not G.is_connected():
        raise GraphError("Perron vector requires a connected graph")
    D = decomposition or sym_eigen(adjacency_matrix(G))
    phi = D.vectors[:, -1].copy()
    if phi.sum() < 0:
        phi = -phi
    return phi


def kernel_limit_gap(G: Graph, t: float | None = None) -> tuple[float, float]:
    """``max |exp(-t*lambda_max) exp(tA)_vw - phi(v)phi(w)|`` and the time used.

    ``t`` defaults to ``40 / gap`` where gap is ``lambda_max`` minus the
    next eigenvalue.
    """
    D = sym_eigen(adjacency_matrix(G))
    phi = perron_vector(G, D)
    if t is None:
        gap = D.extreme_gap("max")
        t = 40.0 / gap
    K = expm_from_eigen(D, t, rate=D.lambda_max)
    return float(np.abs(K - np.outer(phi, phi)).max()), t


# -- comparison properties ------------------------------------------------


def _leq(a: np.ndarray, b: np.ndarray, tol: float) -> float:
    """Worst violation of ``a <= b`` relative to the magnitude of the column of ``b``."""
    scale = np.maximum(1.0, np.abs(b).max(axis=0, keepdims=True))
    return float(np.max((a - b) / scale - tol, initial=-np.inf))


def ordering_chain_violation(G: Graph, t: float, tol: float = 1e-10) -> float:
    """Largest violation of the chain
    ``0 <= e^{-td} e^{tA} <= e^{-tL} <= e^{tA} <= e^{tQ} <= e^{td} e^{tA}``
    over all standard basis vectors (one column each); ``<= 0`` means it holds.
    """
    d = G.max_degree()
    EA = np.asarray(expm_sym(adjacency_matrix(G), t))
    EL = np.asarray(expm_sym(SymMatrix(-laplacian(G).entries), t))
    EQ = np.asarray(expm_sym(signless_laplacian(G), t))
    chain = [np.zeros_like(EA), math.exp(-t * d) * EA, EL, EA, EQ, math.exp(t * d) * EA]
    return max(_leq(chain[k], chain[k + 1], tol) for k in range(len(chain) - 1))


def modulus_violation(G: Graph, f: np.ndarray, t: float, tol: float = 1e-10) -> float:
    """Worst violation of ``|e^{-tA} f| <= e^{tA} |f|``."""
    D = sym_eigen(adjacency_matrix(G))
    lhs = np.abs(expm_from_eigen(D, -t) @ f)
    rhs = expm_from_eigen(D, t) @ np.abs(f)
    scale = max(1.0, float(np.abs(rhs).max()))
    return float(np.max((lhs - rhs) / scale) - tol)


def laplacian_distance(G: Graph, t: float) -> tuple[float, float]:
    """``||e^{tA} - e^{-tL}||_2`` and the bound ``e^{td} - 1``."""
    EA = np.asarray(expm_sym(adjacency_matrix(G), t))
    EL = np.asarray(expm_sym(SymMatrix(-laplacian(G).entries), t))
    return operator_norm(EA - EL, 2), math.expm1(t * G.max_degree())


def lp_norms(G: Graph, s: float) -> dict:
    """Norms of ``e^{sA}`` and ``e^{-sA}`` on l^1, l^2, l^inf with their bounds.

    Backward bounds ``exp(s(4/p + (p-2)/p d))`` presume a line graph (spectrum >= -2).
    """
    d = G.max_degree()
    D = sym_eigen(adjacency_matrix(G))
    fwd = expm_from_eigen(D, s)
    bwd = expm_from_eigen(D, -s)
    out = {}
    for p, key in ((1, "1"), (2, "2"), (math.inf, "inf")):
        out[("forward", key)] = (operator_norm(fwd, key), math.exp(s * d))
        if p >= 2:
            expo = 4 / p + (p - 2) / p * d if p != math.inf else d
            out[("backward", key)] = (operator_norm(bwd, key), math.exp(s * expo))
    return out


def substochastic_violation(G: Graph, f: np.ndarray, t: float) -> float:
    """``sum(e^{tA} f) - e^{td} sum(f)`` relative to the right side (``<= 0`` holds)."""
    total = float(evolve(G, f, t).sum())
    bound = math.exp(t * G.max_degree()) * float(np.sum(f))
    return (total - bound) / max(1.0, abs(bound))


def power_exponential_distance(G: Graph, n_max: int = 64, sign: float = 1.0) -> np.ndarray:
    """``d_n = ||(C/||C||)^n - exp(nC/||C||)/e^n||_2`` for ``n = 1..n_max``, ``C = ±A``.

    Evaluated per eigenvalue ``x = lambda/||C||`` as ``max |x^n - exp(n(x-1))|``.
    """
    D = sym_eigen(adjacency_matrix(G))
    x = sign * D.eigenvalues / max(abs(D.lambda_min), abs(D.lambda_max))
    ns = np.arange(1, n_max + 1)[:, None]
    return np.abs(x[None, :] ** ns - np.exp(ns * (x[None, :] - 1.0))).max(axis=1)


def power_exponential_distance_dense(G: Graph, n: int) -> float:
    """Single ``d_n`` computed from dense matrix powers and :func:`expm_sym`."""
    A = adjacency_matrix(G).entries
    norm = operator_norm(A, 2)
    C = A / norm
    P = np.linalg.matrix_power(C, n)
    E = np.asarray(expm_sym(C, float(n))) / math.e**n
    return operator_norm(P - E, 2)


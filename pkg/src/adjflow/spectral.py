"""Dense symmetric eigensolver, spectral exponentials, projectors and norms.

The eigensolver is a cyclic Jacobi method: slow compared to LAPACK but
simple, deterministic and accurate to a few ulps on the small, integer
structured matrices this package deals with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, OverflowGuardError

#: Default absolute tolerance for grouping eigenvalues into clusters.
CLUSTER_TOL = 1e-8

#: Largest exponent accepted before ``exp`` would overflow a double.
EXP_GUARD = 700.0

_SWEEP_LIMIT = 50
_OFF_TOL = 1e-12


@dataclass(frozen=True)
class SymMatrix:
    """Real symmetric matrix with a vertex label per row/column.

    The entries are symmetrised on construction, so ``entries`` is exactly
    equal to its transpose afterwards.
    """

    entries: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"square matrix required, got shape {a.shape}")
        scale = 1.0 + (np.abs(a).max() if a.size else 0.0)
        asym = np.abs(a - a.T).max() if a.size else 0.0
        if asym > 1e-9 * scale:
            raise DimensionError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        labels = tuple(self.labels) or tuple(str(i) for i in range(a.shape[0]))
        if len(labels) != a.shape[0]:
            raise DimensionError("one label per row required")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def to_rows(self) -> list[list[float]]:
        return self.entries.tolist()


def _as_array(M) -> np.ndarray:
    return M.entries if isinstance(M, SymMatrix) else np.asarray(M, dtype=float)


def _labels(M) -> tuple[str, ...]:
    return M.labels if isinstance(M, SymMatrix) else ()


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    cluster_tol: float = CLUSTER_TOL
    labels: tuple[str, ...] = ()
    sweeps: int = field(default=0, compare=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def clusters(self) -> list[np.ndarray]:
        """Index groups of consecutive eigenvalues closer than ``cluster_tol``."""
        lam = self.eigenvalues
        groups, start = [], 0
        for i in range(1, lam.size):
            if lam[i] - lam[i - 1] > self.cluster_tol:
                groups.append(np.arange(start, i))
                start = i
        groups.append(np.arange(start, lam.size))
        return groups

    def select(self, target: float, tol: float | None = None) -> np.ndarray:
        tol = self.cluster_tol if tol is None else tol
        return np.flatnonzero(np.abs(self.eigenvalues - target) <= tol)

    def multiplicity(self, target: float, tol: float | None = None) -> int:
        return int(self.select(target, tol).size)

    def extreme_gap(self, end: str) -> float:
        """Distance from the top (``"max"``) or bottom (``"min"``) cluster to the next one.

        Returns 0 when the whole spectrum is a single cluster.
        """
        groups = self.clusters()
        if len(groups) < 2:
            return 0.0
        lam = self.eigenvalues
        if end == "max":
            return float(lam[-1] - lam[groups[-2][-1]])
        if end == "min":
            return float(lam[groups[1][0]] - lam[0])
        raise ValueError(f"end must be 'max' or 'min', got {end!r}")

    def extreme_multiplicity(self, end: str) -> int:
        groups = self.clusters()
        return int((groups[-1] if end == "max" else groups[0]).size)


def sym_eigen(M, cluster_tol: float = CLUSTER_TOL) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``1e-12 * ||M||_F`` (at most 50 sweeps). Eigenvectors are normalised so
    that their first non-negligible component is positive.
    """
    A = np.array(_as_array(M), dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionError(f"non-empty square matrix required, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    target = _OFF_TOL * np.linalg.norm(A)
    sweeps = 0
    for sweeps in range(1, _SWEEP_LIMIT + 1):
        off = float(np.linalg.norm(A[~np.eye(n, dtype=bool)]))
        if off <= target:
            sweeps -= 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                h = A[q, q] - A[p, p]
                if abs(apq) < 1e-150 * abs(h):
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = A[p, p], A[q, q]
                rp = A[p].copy()
                rq = A[q].copy()
                new_p = c * rp - s * rq
                new_q = s * rp + c * rq
                new_p[p] = app - t * apq
                new_q[q] = aqq + t * apq
                new_p[q] = new_q[p] = 0.0
                A[p] = new_p
                A[q] = new_q
                A[:, p] = new_p
                A[:, q] = new_q
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
    lam = np.diag(A).copy()
    order = np.argsort(lam, kind="stable")
    lam, V = lam[order], V[:, order]
    for k in range(n):
        col = V[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-10)
        if nz.size and col[nz[0]] < 0:
            V[:, k] = -col
    lam.setflags(write=False)
    V.setflags(write=False)
    return EigenDecomposition(lam, V, cluster_tol, _labels(M), sweeps)


def _decomp(M) -> EigenDecomposition:
    return M if isinstance(M, EigenDecomposition) else sym_eigen(M)


def expm_from_eigen(D: EigenDecomposition, t: float, rate: float = 0.0) -> np.ndarray:
    """``exp(-t*rate) * exp(t*M)`` assembled from a decomposition of ``M``."""
    expo = t * (D.eigenvalues - rate)
    worst = float(expo.max())
    if worst > EXP_GUARD:
        raise OverflowGuardError(
            f"exponent t*(lambda - rate) reaches {worst:.6g} > {EXP_GUARD:g}; "
            f"safe range for this matrix is t*(lambda - rate) <= {EXP_GUARD:g}"
        )
    V = D.vectors
    E = (V * np.exp(expo)) @ V.T
    return 0.5 * (E + E.T)


def expm_sym(M, t: float) -> SymMatrix:
    """``exp(tM)`` for symmetric ``M`` (a matrix or a precomputed decomposition)."""
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    D = _decomp(M)
    labels = D.labels if isinstance(M, EigenDecomposition) else _labels(M)
    if t == 0:
        return SymMatrix(np.eye(D.n), labels)
    return SymMatrix(expm_from_eigen(D, t), labels)


def eigenprojector(D: EigenDecomposition, target: float, tol: float = CLUSTER_TOL) -> SymMatrix:
    """Orthogonal projector onto the eigenvectors with ``|lambda - target| <= tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    idx = D.select(target, tol)
    W = D.vectors[:, idx]
    return SymMatrix(W @ W.T, D.labels)


def operator_norm(M, p) -> float:
    """Induced matrix norm for p in {1, 2, inf}."""
    key = str(p).lower()
    A = _as_array(M)
    if key in ("1", "1.0", "one"):
        return float(np.abs(A).sum(axis=0).max())
    if key in ("inf", "infinity", "∞"):
        return float(np.abs(A).sum(axis=1).max())
    if key in ("2", "2.0", "two"):
        D = _decomp(M if not isinstance(M, np.ndarray) else SymMatrix(A))
        return float(max(abs(D.lambda_min), abs(D.lambda_max)))
    raise ValueError(f"p must be one of 1, 2, inf; got {p!r}")


def max_abs(M) -> float:
    A = _as_array(M)
    return float(np.abs(A).max()) if A.size else 0.0


def spectral_norm_sym(A: np.ndarray) -> float:
    """2-norm of a symmetric array via :func:`sym_eigen`."""
    D = sym_eigen(A)
    return float(max(abs(D.lambda_min), abs(D.lambda_max)))

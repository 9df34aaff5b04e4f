"""Heat kernels of the integer lattices and their finite sections.

On ``Z`` the forward kernel is ``exp(tA)_{vw} = I_{|v-w|}(2t)``; on ``Z^n``
it is the product of one-dimensional kernels. Finite sections
``{-R..R}^n`` approximate these from below, since every walk counted by the
section propagator is also a walk in the lattice.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, GraphError, OverflowGuardError
from .graph import Graph

#: ``I_k(x) <= e^x``, so larger arguments could overflow a double.
BESSEL_GUARD = 700.0


def bessel_i(order: int, x: float) -> float:
    """Modified Bessel function ``I_k(x)`` for integer ``k`` by its power series.

    ``sum_m (x/2)^(2m+k) / (m! (m+k)!)``, summed until the next term drops
    below ``1e-17`` of the partial sum. Negative orders use ``I_{-k} = I_k``.
    """
    k = abs(int(order))
    if order != int(order):
        raise ValueError("order must be an integer")
    if x < 0 or not math.isfinite(x):
        raise ValueError("x must be a finite nonnegative number")
    if x > BESSEL_GUARD:
        raise OverflowGuardError(f"bessel_i argument {x} exceeds the safe range x <= {BESSEL_GUARD:g}")
    if x == 0:
        return 1.0 if k == 0 else 0.0
    half = 0.5 * x
    q = half * half
    log_first = k * math.log(half) - math.lgamma(k + 1)
    if log_first < -745:
        return 0.0
    term = math.exp(log_first)
    total = term
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + k))
        total += term
        # terms grow until m ~ x/2, stop only on the decreasing tail
        if m * (m + k) > q and term < 1e-17 * total:
            return total


def z_kernel(v: int, w: int, t: float) -> float:
    """``exp(tA(Z))_{vw} = I_{|v-w|}(2t)`` for ``t >= 0``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return bessel_i(abs(int(v) - int(w)), 2.0 * t)


def zn_kernel(v: Sequence[int], w: Sequence[int], t: float, n: int | None = None) -> float:
    """Product of one-dimensional kernels over the coordinates of ``v`` and ``w``."""
    v, w = tuple(v), tuple(w)
    if len(v) != len(w) or (n is not None and len(v) != n):
        raise DimensionError("points must both have the lattice dimension")
    out = 1.0
    for a, b in zip(v, w):
        out *= z_kernel(a, b, t)
    return out


@dataclass(frozen=True)
class LatticeSpec:
    """The box ``{-R..R}^dim`` of ``Z^dim`` with induced edges."""

    dim: int
    truncation_radius: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.truncation_radius < 1:
            raise ValueError("truncation radius must be at least 1")

    @property
    def side(self) -> int:
        return 2 * self.truncation_radius + 1

    def points(self) -> list[tuple[int, ...]]:
        """Box points in lexicographic order; this is the section's vertex order."""
        R = self.truncation_radius
        return list(itertools.product(range(-R, R + 1), repeat=self.dim))

    def index(self, p: Sequence[int]) -> int:
        R, s = self.truncation_radius, self.side
        if len(p) != self.dim:
            raise DimensionError(f"point {tuple(p)} does not have dimension {self.dim}")
        idx = 0
        for x in p:
            if not -R <= x <= R:
                raise GraphError(f"point {tuple(p)} lies outside the section of radius {R}")
            idx = idx * s + (x + R)
        return idx


def point_label(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p)


def section_graph(spec: LatticeSpec) -> Graph:
    """Finite section as a :class:`Graph` (labels like ``"-1,2"``)."""
    pts = spec.points()
    labels = [point_label(p) for p in pts]
    edges = [(labels[i], labels[j]) for i, j in _section_edges(spec)]
    return Graph.from_edges(edges, vertices=labels)


def _section_edges(spec: LatticeSpec) -> np.ndarray:
    s, d = spec.side, spec.dim
    grid = np.arange(s**d).reshape((s,) * d)
    pairs = []
    for axis in range(d):
        lo = np.take(grid, range(s - 1), axis=axis).ravel()
        hi = np.take(grid, range(1, s), axis=axis).ravel()
        pairs.append(np.stack([lo, hi], axis=1))
    return np.concatenate(pairs)


def section_columns(spec: LatticeSpec, sources: Sequence[int], t: float) -> np.ndarray:
    """Columns ``exp(tA_section) e_w`` for the given source indices.

    Taylor series of the matrix action; every term is entrywise nonnegative,
    so the sum has no cancellation.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    N = spec.side**spec.dim
    E = _section_edges(spec)
    lo, hi = E[:, 0], E[:, 1]
    X = np.zeros((N, len(sources)))
    X[list(sources), range(len(sources))] = 1.0
    if t == 0:
        return X
    total = X.copy()
    term = X
    k = 0
    while True:
        k += 1
        nxt = np.zeros_like(term)
        np.add.at(nxt, lo, term[hi])
        np.add.at(nxt, hi, term[lo])
        term = nxt * (t / k)
        total += term
        if k > 2 * spec.dim * t and term.max() < 1e-17 * total.max():
            return total


@dataclass(frozen=True)
class TruncationRow:
    v: tuple[int, ...]
    w: tuple[int, ...]
    t: float
    closed_form: float
    section: float
    abs_gap: float


@dataclass(frozen=True)
class TruncationReport:
    spec: LatticeSpec
    rows: tuple[TruncationRow, ...]
    radii: tuple[int, ...]
    monotone: bool

    @property
    def max_gap(self) -> float:
        return max((r.abs_gap for r in self.rows), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["v", "w", "t", "closed_form", "section", "abs_gap"])
        for r in self.rows:
            writer.writerow(
                [point_label(r.v), point_label(r.w), _g(r.t), _g(r.closed_form), _g(r.section), _g(r.abs_gap)]
            )
        return buf.getvalue()


def _g(x: float) -> str:
    return format(x, ".17g")


def _as_point(p, dim: int) -> tuple[int, ...]:
    if isinstance(p, (int, np.integer)):
        p = (int(p),)
    p = tuple(int(x) for x in p)
    if len(p) != dim:
        raise DimensionError(f"point {p} does not have dimension {dim}")
    return p


def _section_entries(spec: LatticeSpec, pairs, t: float) -> list[float]:
    sources = sorted({spec.index(w) for _, w in pairs})
    cols = section_columns(spec, sources, t)
    where = {s: k for k, s in enumerate(sources)}
    return [float(cols[spec.index(v), where[spec.index(w)]]) for v, w in pairs]


def truncation_compare(spec: LatticeSpec, pairs: Iterable, t: float) -> TruncationReport:
    """Gap between section propagator entries and the closed-form lattice kernel.

    Section entries are also recomputed on smaller boxes (the smallest box
    holding every pair, and a midpoint radius) to test that they do not
    decrease as the box grows.
    """
    pairs = [(_as_point(v, spec.dim), _as_point(w, spec.dim)) for v, w in pairs]
    for v, w in pairs:
        spec.index(v)
        spec.index(w)
    R = spec.truncation_radius
    r_need = max([1] + [abs(x) for v, w in pairs for x in v + w])
    radii = tuple(sorted({r_need, (r_need + R) // 2, R}))
    ladder = [_section_entries(LatticeSpec(spec.dim, r), pairs, t) for r in radii]
    monotone = all(
        b >= a * (1 - 1e-14) for lower, upper in zip(ladder, ladder[1:]) for a, b in zip(lower, upper)
    )
    rows = []
    for (v, w), sec in zip(pairs, ladder[-1]):
        exact = zn_kernel(v, w, t)
        rows.append(TruncationRow(v, w, float(t), exact, sec, abs(sec - exact)))
    return TruncationReport(spec, tuple(rows), radii, monotone)

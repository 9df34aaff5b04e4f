"""Invariant suite behind the ``check`` command.

Each check walks a slice of the seeded corpus (or a fixed family) and
returns a :class:`CheckResult`; ``worst`` is the largest observed
violation or error, in the units of the check's tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dynamics, extensions, lattice
from .corpus import CORPUS_SEED, corpus
from .detect import incidence_kernel, minus_two_flow
from .graph import (
    Graph,
    adjacency_int,
    adjacency_matrix,
    degree_of_line_vertex,
    incidence,
    is_bipartite,
    line_graph,
    line_graph_edge_count,
    minus_two_multiplicity_formula,
)
from .named import cycle
from .spectral import eigenprojector, expm_from_eigen, expm_sym, operator_norm, sym_eigen
from .weighted import line_weighted_adjacency, weighted_line_system


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    cases: int
    worst: float

    def to_dict(self) -> dict:
        return {"module": self.module, "name": self.name, "passed": self.passed, "cases": self.cases, "worst": self.worst}


@dataclass
class _Ctx:
    graphs: list[Graph]
    rng: np.random.Generator


_CHECKS: list[tuple[str, str, Callable]] = []


def _check(module: str):
    def deco(fn):
        _CHECKS.append((module, fn.__name__.lstrip("_"), fn))
        return fn

    return deco


def _line_graphs(ctx):
    return [(H, line_graph(H)) for H in ctx.graphs if H.m >= 2]


# -- graph-core -------------------------------------------------------------


@_check("graph-core")
def _gram_identity(ctx):
    worst = 0
    for H, M in _line_graphs(ctx):
        J = incidence(H).matrix
        worst = max(worst, int(np.abs(adjacency_int(M.line) - (J.T @ J - 2 * np.eye(H.m, dtype=np.int64))).max()))
    return worst == 0, worst


@_check("graph-core")
def _line_degree_and_edge_count(ctx):
    bad = 0
    for H, M in _line_graphs(ctx):
        for v in M.line.vertices:
            bad += degree_of_line_vertex(M, v) != len(M.line.neighbors(v))
        bad += line_graph_edge_count(H) != M.line.m
    return bad == 0, bad


@_check("graph-core")
def _cycle_bipartiteness(ctx):
    bad = sum(
        (not is_bipartite(cycle(2 * k)).is_bipartite) + is_bipartite(cycle(2 * k + 1)).is_bipartite
        for k in range(2, 7)
    ) + (not is_bipartite(cycle(4)).is_bipartite) + is_bipartite(cycle(3)).is_bipartite
    return bad == 0, bad


@_check("graph-core")
def _multiplicity_formula(ctx):
    bad = 0
    for H, M in _line_graphs(ctx):
        D = sym_eigen(adjacency_matrix(M.line))
        bad += D.multiplicity(-2.0) != minus_two_multiplicity_formula(H)
    return bad == 0, bad


# -- dense-spectral ---------------------------------------------------------


@_check("dense-spectral")
def _decomposition_quality(ctx):
    worst = 0.0
    for G in ctx.graphs:
        A = adjacency_matrix(G).entries
        D = sym_eigen(A)
        V, lam = D.vectors, D.eigenvalues
        worst = max(
            worst,
            np.abs(V.T @ V - np.eye(G.n)).max() / 1e-10,
            np.abs(A @ V - V * lam).max() / (1e-9 * (1 + operator_norm(A, "inf"))),
        )
    return worst <= 1, worst


@_check("dense-spectral")
def _trace_and_determinant(ctx):
    worst = 0.0
    for G in ctx.graphs:
        lam = sym_eigen(adjacency_matrix(G)).eigenvalues
        worst = max(worst, abs(lam.sum()) / 1e-9)
        for t in (1.0, -1.0, 2.0, -2.0):
            worst = max(worst, abs(math.prod(math.exp(t * x) for x in lam) - 1) / 1e-8)
    return worst <= 1, worst


@_check("dense-spectral")
def _line_graph_floor(ctx):
    worst = -math.inf
    for _, M in _line_graphs(ctx):
        worst = max(worst, -2 - sym_eigen(adjacency_matrix(M.line)).lambda_min)
    return worst <= 1e-9, worst


@_check("dense-spectral")
def _spectral_radius_sandwich(ctx):
    bad = 0
    for G in ctx.graphs:
        lam = sym_eigen(adjacency_matrix(G)).lambda_max
        d = G.max_degree()
        if G.is_regular():
            bad += abs(lam - d) > 1e-9
            continue
        lower = max(2 * G.m / G.n, math.sqrt(d), 2 * math.cos(math.pi / (G.n + 1)))
        bad += not (lower - 1e-9 <= lam < d)
    return bad == 0, bad


@_check("dense-spectral")
def _group_law(ctx):
    worst = 0.0
    for G in ctx.graphs:
        D = sym_eigen(adjacency_matrix(G))
        s, t = ctx.rng.uniform(-1, 1, size=2)
        lhs = expm_from_eigen(D, s) @ expm_from_eigen(D, t)
        worst = max(worst, np.abs(lhs - expm_from_eigen(D, s + t)).max() / 1e-9)
    return worst <= 1, worst


# -- semigroup-dynamics -----------------------------------------------------


@_check("semigroup-dynamics")
def _ordering_chain(ctx):
    worst = max(dynamics.ordering_chain_violation(G, t) for G in ctx.graphs for t in (0.25, 1.0))
    return worst <= 0, worst


@_check("semigroup-dynamics")
def _modulus_domination(ctx):
    worst = -math.inf
    for G in ctx.graphs:
        f = ctx.rng.standard_normal(G.n)
        for t in (0.5, 1.0):
            worst = max(worst, dynamics.modulus_violation(G, f, t))
    return worst <= 0, worst


@_check("semigroup-dynamics")
def _laplacian_distance(ctx):
    worst = -math.inf
    for G in ctx.graphs:
        for t in (0.1, 0.5, 1.0):
            dist, bound = dynamics.laplacian_distance(G, t)
            worst = max(worst, dist - bound * (1 + 1e-9))
    return worst <= 0, worst


@_check("semigroup-dynamics")
def _lp_bounds(ctx):
    worst = 0.0
    line_sets = [M.line for _, M in _line_graphs(ctx)]
    for G, backward in [(G, False) for G in ctx.graphs] + [(G, True) for G in line_sets]:
        for s in (0.5, 1.0, 2.0):
            for (direction, _), (norm, bound) in dynamics.lp_norms(G, s).items():
                if direction == "backward" and not backward:
                    continue
                worst = max(worst, norm / (bound * (1 + 1e-9)))
    return worst <= 1, worst


@_check("semigroup-dynamics")
def _substochastic(ctx):
    worst = -math.inf
    for G in ctx.graphs:
        f = ctx.rng.random(G.n)
        worst = max(worst, max(dynamics.substochastic_violation(G, f, t) for t in (0.5, 1.0)))
    # equality holds on regular graphs, so allow rounding
    return worst <= 1e-12, worst


@_check("semigroup-dynamics")
def _perron_kernel_limit(ctx):
    worst = max(dynamics.kernel_limit_gap(G)[0] for G in ctx.graphs)
    return worst <= 1e-6, worst


@_check("semigroup-dynamics")
def _rescaled_envelopes(ctx):
    worst = 0.0
    for G in ctx.graphs:
        D = sym_eigen(adjacency_matrix(G))
        for direction, end in ((dynamics.FORWARD, "max"), (dynamics.BACKWARD, "min")):
            if D.extreme_multiplicity(end) != 1:
                continue
            gap = D.extreme_gap(end)
            for k in (5.0, 10.0):
                rep = dynamics.rescaled_limit(G, direction, t=k / gap, decomposition=D)
                worst = max(worst, rep.residual / (rep.envelope * (1 + 1e-6)))
    return worst <= 1, worst


# -- weighted-ops -----------------------------------------------------------


def _random_weights(ctx, H):
    return {v: float(ctx.rng.uniform(0.5, 3.0)) for v in H.vertices}


@_check("weighted-ops")
def _weighted_norm_sandwich(ctx):
    # the (max weighted degree)^(1/p) lower bound is not scale invariant and
    # needs weights >= 1; below 1 the column-norm bound sqrt(max sum c^2) is used
    worst = 0.0
    for G in ctx.graphs:
        for lo_w, hi_w in ((1.0, 3.0), (0.2, 2.0)):
            W = Graph(G.vertices, G.edges, tuple(ctx.rng.uniform(lo_w, hi_w, size=G.m)))
            A = adjacency_matrix(W)
            dmax = float(A.entries.sum(axis=1).max())
            col = math.sqrt(float((A.entries**2).sum(axis=0).max()))
            for p in (1, 2, math.inf):
                norm = operator_norm(A, p)
                lo = (dmax ** (1 / p) if lo_w >= 1 else col) if p == 2 else dmax
                worst = max(worst, (lo - norm) / 1e-9, (norm - dmax) / 1e-9)
    return worst <= 1, worst


@_check("weighted-ops")
def _weighted_spectral_floor(ctx):
    worst = -math.inf
    for H, _ in _line_graphs(ctx):
        S = weighted_line_system(H, _random_weights(ctx, H))
        D = sym_eigen(line_weighted_adjacency(S))
        worst = max(worst, D.lambda_max - S.sup_degC(), -S.gamma_vector().max() - D.lambda_min)
    return worst <= 1e-9, worst


@_check("weighted-ops")
def _unit_weights_reduce(ctx):
    worst = max(
        float(np.abs(line_weighted_adjacency(weighted_line_system(H)).entries - adjacency_matrix(M.line).entries).max())
        for H, M in _line_graphs(ctx)
    )
    return worst == 0, worst


# -- infinite-lattice -------------------------------------------------------


@_check("infinite-lattice")
def _kernel_symmetry_positivity(ctx):
    bad = 0
    for t in (0.1, 0.5, 1.0):
        for d in range(-20, 21):
            bad += lattice.z_kernel(0, d, t) != lattice.z_kernel(d, 0, t)
            bad += not lattice.z_kernel(0, d, t) > 0
    return bad == 0, bad


@_check("infinite-lattice")
def _chapman_kolmogorov(ctx):
    worst = 0.0
    for v, w in ((0, 0), (0, 3), (-2, 5)):
        total = sum(lattice.z_kernel(v, u, 0.5) * lattice.z_kernel(u, w, 0.5) for u in range(-60, 61))
        worst = max(worst, abs(total - lattice.z_kernel(v, w, 1.0)))
    return worst <= 1e-8, worst


@_check("infinite-lattice")
def _growth_rate(ctx):
    vals = [math.exp(-2 * t) * lattice.z_kernel(0, 0, t) for t in (1.0, 5.0, 10.0, 20.0)]
    ok = all(b < a for a, b in zip(vals, vals[1:])) and vals[-1] < 0.1
    return ok, vals[-1]


@_check("infinite-lattice")
def _perturbed_section(ctx):
    spec = lattice.LatticeSpec(1, 10)
    G = lattice.section_graph(spec)
    P = Graph.from_edges(list(G.edges) + [(G.vertices[0], G.vertices[-1])], vertices=G.vertices)
    top = sym_eigen(adjacency_matrix(P)).lambda_max
    gersh = float(adjacency_matrix(P).entries.sum(axis=1).max())
    changed = np.abs(np.asarray(expm_sym(adjacency_matrix(P), 1.0)) - np.asarray(expm_sym(adjacency_matrix(G), 1.0))).max()
    return bool(top <= gersh + 1e-9 and changed > 0), top - gersh


# -- structure-detect -------------------------------------------------------


@_check("structure-detect")
def _kernel_characterisation(ctx):
    worst = 0.0
    for H, M in _line_graphs(ctx):
        D = sym_eigen(adjacency_matrix(M.line))
        W = D.vectors[:, D.select(-2.0)]
        K = incidence_kernel(H)
        if W.shape[1] != K.shape[1]:
            return False, math.inf
        if W.size:
            P = W @ W.T
            worst = max(worst, float(np.abs(incidence(H).matrix @ W).max()), float(np.abs(K - P @ K).max()))
    return worst <= 1e-8, worst


@_check("structure-detect")
def _backward_flow_projector(ctx):
    # residuals decay like exp(-t * gap); t = 14 / gap puts the envelope below 1e-6
    worst = 0.0
    for _, M in _line_graphs(ctx):
        D = sym_eigen(adjacency_matrix(M.line))
        gap = D.extreme_gap("min") if D.multiplicity(-2.0) else D.lambda_min + 2
        F = minus_two_flow(M.line, 14.0 / gap, D)
        worst = max(worst, float(np.abs(F - eigenprojector(D, -2.0).entries).max()))
    return worst <= 1e-6, worst


# -- extensions -------------------------------------------------------------


@_check("extensions")
def _gram_floor(ctx):
    worst = -math.inf
    for H in ctx.graphs:
        petals = {v: int(ctx.rng.integers(0, 2)) for v in H.vertices}
        S = extensions.generalized_line_graph(H, petals)
        worst = max(worst, -2 - sym_eigen(extensions.generalized_adjacency(S)).lambda_min)
    return worst <= 1e-9, worst


@_check("extensions")
def _gradient_duality(ctx):
    worst = 0.0
    for H, M in _line_graphs(ctx)[:10]:
        u = ctx.rng.standard_normal(M.line.n)
        for p in (1.5, 2.0, 3.0, 4.0):
            g = extensions.p_energy_gradient_fd(M, p, u)
            worst = max(worst, float(np.abs(g - extensions.p_apply(M, p, u)).max()))
    return worst <= 1e-6, worst


@_check("extensions")
def _energy_descent(ctx):
    worst = -math.inf
    for _, M in _line_graphs(ctx):
        u = ctx.rng.standard_normal(M.line.n)
        for p in (1.5, 2.0, 3.0, 4.0):
            step = u - 1e-3 * extensions.p_apply(M, p, u)
            worst = max(worst, extensions.p_energy(M, p, step) - extensions.p_energy(M, p, u))
    return worst <= 0, worst


def run_checks(seed: int = CORPUS_SEED, count: int = 30) -> list[CheckResult]:
    """Run every registered check on ``count`` corpus graphs drawn with ``seed``."""
    results = []
    for module, name, fn in _CHECKS:
        ctx = _Ctx(corpus(count, seed), np.random.default_rng(seed + 1))
        try:
            passed, worst = fn(ctx)
        except AssertionError:
            passed, worst = False, math.inf
        results.append(CheckResult(module, name, bool(passed), len(ctx.graphs), float(worst)))
    return results

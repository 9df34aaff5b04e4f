import math

import numpy as np
import pytest

from adjflow.errors import DimensionError, GraphError
from adjflow.graph import Graph, adjacency_matrix, from_edge_list, incidence, line_graph
from adjflow.named import cycle, path, star
from adjflow.spectral import operator_norm, sym_eigen
from adjflow.weighted import (
    line_weighted_adjacency,
    max_weighted_degree,
    quadratic_form,
    weighted_adjacency_general,
    weighted_degree,
    weighted_line_system,
)


def random_system(rng, H, lo=0.5, hi=3.0):
    return weighted_line_system(H, {v: float(rng.uniform(lo, hi)) for v in H.vertices})


class TestGeneral:
    def test_unit_weights(self):
        G = cycle(5)
        assert np.array_equal(weighted_adjacency_general(G).entries, adjacency_matrix(G).entries)

    def test_single_edge(self):
        G = from_edge_list("a b 0.5")
        assert weighted_adjacency_general(G).entries.tolist() == [[0, 0.5], [0.5, 0]]

    def test_star_norm(self):
        G = Graph.from_edges([("c", "x", 1), ("c", "y", 2), ("c", "z", 3)])
        A = weighted_adjacency_general(G)
        assert operator_norm(A, "inf") == 6 == max_weighted_degree(G)
        assert operator_norm(A, 1) == 6

    def test_norm_sandwich_weights_at_least_one(self, graphs):
        rng = np.random.default_rng(21)
        for G in graphs[:60]:
            W = Graph(G.vertices, G.edges, tuple(rng.uniform(1.0, 3.0, G.m)))
            A = weighted_adjacency_general(W)
            dmax = max_weighted_degree(W)
            for p in (1, 2, math.inf):
                norm = operator_norm(A, p)
                lower = dmax ** (1 / p) if p != math.inf else dmax
                assert lower - 1e-9 <= norm <= dmax + 1e-9
                if p != 2:
                    assert norm == pytest.approx(dmax, abs=1e-9)

    def test_lower_bound_fails_below_unit_weights(self):
        # (max weighted degree)^(1/2) <= ||A||_2 is not scale invariant
        G = from_edge_list("a b 0.25")
        A = weighted_adjacency_general(G)
        assert operator_norm(A, 2) == pytest.approx(0.25)
        assert math.sqrt(max_weighted_degree(G)) == pytest.approx(0.5)

    def test_column_norm_lower_bound_any_weights(self, graphs):
        rng = np.random.default_rng(22)
        for G in graphs[:60]:
            W = Graph(G.vertices, G.edges, tuple(rng.uniform(0.05, 2.0, G.m)))
            A = weighted_adjacency_general(W).entries
            col = math.sqrt((A**2).sum(axis=0).max())
            assert col - 1e-9 <= operator_norm(A, 2) <= max_weighted_degree(W) + 1e-9


class TestLineSystem:
    def test_unit_weights_reduce(self, line_pairs):
        for H, M in line_pairs:
            A = line_weighted_adjacency(weighted_line_system(H)).entries
            J = incidence(H).matrix
            assert np.array_equal(A, adjacency_matrix(M.line).entries)
            assert np.array_equal(A, J.T @ J - 2 * np.eye(H.m))

    def test_p3_example(self):
        S = weighted_line_system(path(3).with_vertex_order(("1", "2", "3")), {"1": 1, "2": 2, "3": 3})
        assert line_weighted_adjacency(S).entries.tolist() == [[0, 2], [2, 0]]

    def test_quadratic_form(self, line_pairs):
        rng = np.random.default_rng(23)
        for H, _ in line_pairs[:50]:
            S = random_system(rng, H)
            A = line_weighted_adjacency(S).entries
            J = incidence(H).matrix
            c = S.c_vector()
            for _ in range(1):
                u = rng.standard_normal(S.M.line.n)
                form = sum(c[i] * (J @ u)[i] ** 2 for i in range(H.n)) - sum(S.gamma_vector() * u**2)
                assert u @ A @ u == pytest.approx(form, abs=1e-10)
                assert quadratic_form(S, u) == pytest.approx(form, abs=1e-10)

    def test_fifty_vectors_one_system(self):
        rng = np.random.default_rng(24)
        H = cycle(6)
        S = random_system(rng, H)
        A = line_weighted_adjacency(S).entries
        J = incidence(H).matrix.astype(float)
        for _ in range(50):
            u = rng.standard_normal(6)
            rhs = S.c_vector() @ (J @ u) ** 2 - S.gamma_vector() @ u**2
            assert abs(u @ A @ u - rhs) <= 1e-10

    def test_degrees(self):
        S = weighted_line_system(cycle(4))
        assert {weighted_degree(S, v) for v in S.M.line.vertices} == {2.0}
        S = weighted_line_system(star(3), {"c": 2.0})
        assert {weighted_degree(S, v) for v in S.M.line.vertices} == {4.0}
        with pytest.raises(GraphError):
            weighted_degree(S, "nope")

    def test_unit_degc_is_degree(self, line_pairs):
        for H, M in line_pairs[:50]:
            S = weighted_line_system(H)
            for v in M.line.vertices:
                assert weighted_degree(S, v) == M.line.degree(v)

    def test_spectral_bounds(self, line_pairs):
        rng = np.random.default_rng(25)
        for H, _ in line_pairs[:80]:
            S = random_system(rng, H)
            A = line_weighted_adjacency(S)
            D = sym_eigen(A)
            assert D.lambda_min >= -S.gamma_vector().max() - 1e-9
            assert D.lambda_max <= S.sup_degC() + 1e-9
            assert operator_norm(A, 2) <= S.sup_degC() + 1e-9

    def test_invariants_gamma_degc(self):
        H = from_edge_list("a b\nb c\nc a\nc d")
        S = weighted_line_system(H, {"a": 1, "b": 2, "c": 3, "d": 4})
        v = S.M.vertex_of_edge[("c", "d")]
        assert S.gamma[v] == 7
        assert S.degC[v] == 3 * 2 + 4 * 0
        assert (S.c_min, S.c_max) == (1, 4)

    def test_errors(self):
        with pytest.raises(GraphError):
            weighted_line_system(Graph.from_edges([("a", "b"), ("c", "d")]))
        with pytest.raises(GraphError):
            weighted_line_system(path(3), {"1": -1.0})
        with pytest.raises(GraphError):
            weighted_line_system(path(3), {"zz": 1.0})
        with pytest.raises(DimensionError):
            quadratic_form(weighted_line_system(path(3)), [1, 2, 3])

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adjflow.errors import DimensionError, GraphError
from adjflow.extensions import (
    compare_multiplicities,
    generalized_adjacency,
    generalized_line_graph,
    generalized_multiplicity,
    nonsym_apply,
    nonsym_form,
    p_apply,
    p_energy,
    p_energy_gradient_fd,
)
from adjflow.graph import Graph, adjacency_matrix, incidence, is_bipartite, line_graph
from adjflow.named import cycle, path
from adjflow.spectral import sym_eigen
from adjflow.weighted import line_weighted_adjacency, weighted_line_system


def alternating(n):
    return np.array([(-1.0) ** k for k in range(n)])


class TestNonsym:
    def setup_method(self):
        rng = np.random.default_rng(31)
        self.rng = rng
        H = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e")])
        self.S = weighted_line_system(H, {v: float(rng.uniform(0.5, 2)) for v in H.vertices})

    def test_reduces_to_weighted_adjacency(self):
        S = self.S
        ne, nv = S.M.line.n, S.H.n
        u = self.rng.standard_normal(ne)
        out = nonsym_apply(S, np.zeros((ne, nv)), -S.gamma_vector(), u)
        assert np.abs(out - line_weighted_adjacency(S).entries @ u).max() <= 1e-12

    def test_zero(self):
        S = self.S
        ne, nv = S.M.line.n, S.H.n
        B = self.rng.standard_normal((ne, nv))
        assert not nonsym_apply(S, B, self.rng.standard_normal(ne), np.zeros(ne)).any()

    def test_form_identity(self):
        S = self.S
        ne, nv = S.M.line.n, S.H.n
        J = incidence(S.H).matrix.astype(float)
        for _ in range(10):
            B = self.rng.standard_normal((ne, nv))
            p = self.rng.standard_normal(ne)
            u, v = self.rng.standard_normal((2, ne))
            lhs = nonsym_apply(S, B, p, u) @ v
            rhs = S.c_vector() @ ((J @ u) * (J @ v)) + (B @ J @ u) @ v + (p * u) @ v
            assert lhs == pytest.approx(rhs, abs=1e-10)
            assert nonsym_form(S, B, p, u, v) == pytest.approx(rhs, abs=1e-10)

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            nonsym_apply(self.S, np.zeros((2, 2)), np.zeros(5), np.zeros(5))


class TestQuasilinear:
    @pytest.mark.parametrize("n", [6, 8])
    @pytest.mark.parametrize("p", [1.5, 3.0, 4.0])
    def test_cycle_eigenpairs(self, n, p):
        M = line_graph(cycle(n))
        one = np.ones(n)
        alt = alternating(n)
        assert np.abs(p_apply(M, p, one) - 2 ** (p - 1) * one).max() <= 1e-10
        assert np.abs(p_apply(M, p, alt) + 2 ** (p - 1) * alt).max() <= 1e-10

    def test_c6_p3(self):
        M = line_graph(cycle(6))
        assert np.allclose(p_apply(M, 3, np.ones(6)), 4 * np.ones(6))
        assert np.allclose(p_apply(M, 3, alternating(6)), -4 * alternating(6))

    def test_p2_is_linear(self, line_pairs):
        rng = np.random.default_rng(32)
        for _, M in line_pairs[:30]:
            u = rng.standard_normal(M.line.n)
            A = adjacency_matrix(M.line).entries
            assert np.abs(p_apply(M, 2.0, u) - A @ u).max() <= 1e-12
            assert p_energy(M, 2.0, u) == pytest.approx(0.5 * u @ A @ u, abs=1e-12)

    def test_energy_zero(self):
        M = line_graph(cycle(5))
        assert p_energy(M, 3.0, np.zeros(5)) == 0.0

    def test_gradient(self, line_pairs):
        rng = np.random.default_rng(33)
        for _, M in line_pairs[:20]:
            u = rng.standard_normal(M.line.n)
            for p in (1.5, 2.0, 3.0, 4.0):
                assert np.abs(p_energy_gradient_fd(M, p, u) - p_apply(M, p, u)).max() <= 1e-6

    def test_energy_descent(self, line_pairs):
        rng = np.random.default_rng(34)
        for _, M in line_pairs[:40]:
            u = rng.standard_normal(M.line.n)
            for p in (1.5, 2.0, 3.0, 4.0):
                step = u - 1e-3 * p_apply(M, p, u)
                assert p_energy(M, p, step) <= p_energy(M, p, u)

    def test_kink_selection(self):
        # Ju = 0 everywhere on the alternating C4 vector; p < 2 must not divide by zero
        M = line_graph(cycle(4))
        u = alternating(4)
        assert np.allclose(p_apply(M, 1.5, u), -(2**0.5) * u)

    def test_p_must_exceed_one(self):
        M = line_graph(cycle(4))
        with pytest.raises(ValueError):
            p_apply(M, 1.0, np.ones(4))
        with pytest.raises(DimensionError):
            p_energy(M, 3.0, np.ones(3))


class TestGeneralized:
    def test_no_petals_is_line_graph(self, line_pairs):
        for H, M in line_pairs[:50]:
            S = generalized_line_graph(H, {})
            assert np.array_equal(generalized_adjacency(S).entries, adjacency_matrix(M.line).entries)
            assert S.G.vertices == M.line.vertices and set(S.G.edges) == set(M.line.edges)

    def test_single_vertex_petal(self):
        S = generalized_line_graph(Graph(("a",), ()), {"a": 1})
        assert S.Jtilde.tolist() == [[1, 1], [1, -1]]
        assert S.G.n == 2 and S.G.m == 0
        assert not generalized_adjacency(S).entries.any()
        assert generalized_multiplicity(S) == 0
        assert compare_multiplicities(S).spectral == 0

    def test_triangle_with_petal(self):
        S = generalized_line_graph(cycle(3), {"1": 1})
        Jt = S.Jtilde
        A = generalized_adjacency(S).entries
        assert np.array_equal(A, Jt.T @ Jt - 2 * np.eye(5))
        plus, minus = S.G.vertices[3], S.G.vertices[4]
        assert not S.G.has_edge(plus, minus)
        assert S.G.degree(plus) == 2

    def test_c4_with_petal(self):
        S = generalized_line_graph(cycle(4), {"1": 1})
        assert generalized_multiplicity(S) == 1
        assert compare_multiplicities(S).spectral == 1

    def test_petal_free_bipartite_needs_beta(self):
        cmp = compare_multiplicities(generalized_line_graph(cycle(4), {}))
        assert (cmp.petal_formula, cmp.bipartite_corrected, cmp.spectral) == (0, 1, 1)
        assert cmp.matching == ["bipartite_corrected"]

    def test_corpus_multiplicities(self, graphs):
        rng = np.random.default_rng(35)
        for H in graphs[:80]:
            petals = {v: int(rng.integers(0, 3)) for v in H.vertices if rng.random() < 0.3}
            S = generalized_line_graph(H, petals)
            A = generalized_adjacency(S).entries
            assert np.array_equal(A, S.Jtilde.T @ S.Jtilde - 2 * np.eye(A.shape[0]))
            assert sym_eigen(A).lambda_min >= -2 - 1e-9
            cmp = compare_multiplicities(S)
            assert cmp.bipartite_corrected == cmp.spectral
            if S.total_petals or not is_bipartite(H).is_bipartite:
                assert cmp.petal_formula == cmp.spectral

    def test_errors(self):
        with pytest.raises(GraphError):
            generalized_line_graph(path(3), {"zz": 1})
        with pytest.raises(GraphError):
            generalized_line_graph(path(3), {"1": -1})
        with pytest.raises(GraphError):
            generalized_multiplicity(generalized_line_graph(Graph.from_edges([("a", "b"), ("c", "d")])))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 7), st.floats(1.2, 5.0), st.data())
def test_gradient_property(n, p, data):
    M = line_graph(cycle(n))
    u = np.array(data.draw(st.lists(st.floats(-2, 2), min_size=n, max_size=n)))
    g = p_energy_gradient_fd(M, p, u)
    # finite differences lose accuracy next to the kink |Ju| = 0 when p < 2
    Ju = incidence(M.pre_line).matrix @ u
    if p < 2 and np.abs(Ju).min() < 1e-2:
        return
    assert np.abs(g - p_apply(M, p, u)).max() <= 1e-6

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from adjflow.errors import DimensionError, OverflowGuardError
from adjflow.graph import adjacency_matrix, is_bipartite, line_graph
from adjflow.named import cycle, path, star, two_triangles
from adjflow.spectral import (
    EigenDecomposition,
    SymMatrix,
    eigenprojector,
    expm_from_eigen,
    expm_sym,
    operator_norm,
    sym_eigen,
)
from adjflow.dynamics import power_exponential_distance, power_exponential_distance_dense

from oracles import expm_p2, expm_taylor, printed_projectors


def random_sym(rng, n, scale=1.0):
    X = rng.standard_normal((n, n)) * scale
    return (X + X.T) / 2


def assert_decomposition(A, D: EigenDecomposition):
    V, lam = D.vectors, D.eigenvalues
    assert np.all(np.diff(lam) >= 0)
    assert np.abs(V.T @ V - np.eye(len(lam))).max() <= 1e-10
    assert np.abs(A @ V - V * lam).max() <= 1e-9 * (1 + np.abs(A).sum(axis=1).max())


class TestSymMatrix:
    def test_symmetrised_and_read_only(self):
        M = SymMatrix([[0, 1], [1 + 1e-12, 0]])
        assert M.entries[0, 1] == M.entries[1, 0]
        assert M.labels == ("0", "1")
        with pytest.raises(ValueError):
            M.entries[0, 0] = 1

    def test_rejects_asymmetric_and_non_square(self):
        with pytest.raises(ValueError):
            SymMatrix([[0, 1], [0, 0]])
        with pytest.raises(ValueError):
            SymMatrix([[0, 1, 2]])


class TestEigen:
    def test_p2(self):
        D = sym_eigen(adjacency_matrix(path(2)))
        assert np.allclose(D.eigenvalues, [-1, 1], atol=1e-14)

    def test_p3(self):
        D = sym_eigen(adjacency_matrix(path(3)))
        assert np.allclose(D.eigenvalues, [-math.sqrt(2), 0, math.sqrt(2)], atol=1e-13)

    def test_star4(self):
        D = sym_eigen(adjacency_matrix(star(4)))
        assert np.allclose(D.eigenvalues, [-2, 0, 0, 0, 2], atol=1e-13)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            sym_eigen(np.array([[np.nan]]))
        with pytest.raises(DimensionError):
            sym_eigen(np.zeros((0, 0)))

    def test_one_by_one(self):
        D = sym_eigen([[3.0]])
        assert D.eigenvalues.tolist() == [3.0] and D.vectors.tolist() == [[1.0]]

    def test_sign_convention_and_determinism(self):
        A = adjacency_matrix(cycle(6))
        D1, D2 = sym_eigen(A), sym_eigen(A)
        assert np.array_equal(D1.vectors, D2.vectors)
        for k in range(6):
            col = D1.vectors[:, k]
            assert col[np.flatnonzero(np.abs(col) > 1e-10)[0]] > 0

    def test_random_matrices(self):
        rng = np.random.default_rng(7)
        for n in (2, 5, 12, 30):
            A = random_sym(rng, n)
            D = sym_eigen(A)
            assert_decomposition(A, D)
            assert D.sweeps < 50

    def test_corpus(self, graphs):
        for G in graphs:
            A = adjacency_matrix(G).entries
            assert_decomposition(A, sym_eigen(A))

    def test_clusters(self):
        D = sym_eigen(adjacency_matrix(cycle(4)))
        assert [c.size for c in D.clusters()] == [1, 2, 1]
        assert D.extreme_gap("max") == pytest.approx(2.0)
        assert D.extreme_multiplicity("min") == 1
        assert sym_eigen(np.eye(3)).extreme_gap("max") == 0.0


class TestExpm:
    def test_p2_closed_form(self):
        assert np.abs(expm_sym(adjacency_matrix(path(2)), 1.0).entries - expm_p2(1.0)).max() < 1e-14

    def test_zero_time_identity(self):
        assert np.array_equal(expm_sym(adjacency_matrix(cycle(5)), 0.0).entries, np.eye(5))

    def test_taylor_oracle_random(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            A = random_sym(rng, 6)
            assert np.abs(expm_sym(A, 0.3).entries - expm_taylor(A, 0.3)).max() <= 1e-10

    def test_taylor_oracle_corpus(self, graphs):
        for G in graphs[:40]:
            A = adjacency_matrix(G).entries
            for t in (-1.0, 0.7):
                E = expm_sym(A, t).entries
                assert np.abs(E - expm_taylor(A, t)).max() <= 1e-9 * np.abs(E).max()

    def test_overflow_guard(self):
        with pytest.raises(OverflowGuardError, match="700"):
            expm_sym(adjacency_matrix(path(2)), 701.0)
        expm_sym(adjacency_matrix(path(2)), 699.0)
        with pytest.raises(ValueError):
            expm_sym(adjacency_matrix(path(2)), math.inf)

    def test_exact_symmetry(self):
        E = expm_sym(adjacency_matrix(two_triangles()), 0.9).entries
        assert np.array_equal(E, E.T)

    def test_group_law(self, graphs):
        rng = np.random.default_rng(3)
        for G in graphs[:50]:
            D = sym_eigen(adjacency_matrix(G))
            s, t = rng.uniform(-1, 1, 2)
            assert np.abs(expm_from_eigen(D, s) @ expm_from_eigen(D, t) - expm_from_eigen(D, s + t)).max() <= 1e-9

    def test_rescaled_exponent(self):
        D = sym_eigen(adjacency_matrix(path(2)))
        assert np.allclose(expm_from_eigen(D, 1000.0, rate=1.0), 0.5 * np.ones((2, 2)), atol=1e-15)


class TestProjectorAndNorms:
    def test_two_triangles_projector(self):
        G = line_graph(two_triangles()).line
        P = eigenprojector(sym_eigen(adjacency_matrix(G)), -2.0, 1e-8)
        assert np.abs(P.entries - printed_projectors()["two_triangles"]).max() < 1e-9

    def test_p2_projectors(self):
        D = sym_eigen(adjacency_matrix(path(2)))
        assert np.allclose(eigenprojector(D, 1.0, 1e-8).entries, 0.5 * np.ones((2, 2)), atol=1e-15)
        assert not eigenprojector(D, 5.0, 1e-8).entries.any()
        with pytest.raises(ValueError):
            eigenprojector(D, 1.0, 0.0)

    def test_projector_idempotent(self, graphs):
        for G in graphs[:60]:
            D = sym_eigen(adjacency_matrix(G))
            for c in D.clusters():
                P = eigenprojector(D, D.eigenvalues[c[0]], 1e-8).entries
                assert np.abs(P @ P - P).max() <= 1e-9
                assert round(np.trace(P)) == c.size

    def test_norms(self):
        assert operator_norm(adjacency_matrix(cycle(4)), "inf") == 2
        assert operator_norm(adjacency_matrix(path(3)), 2) == pytest.approx(math.sqrt(2), abs=1e-13)
        assert operator_norm(adjacency_matrix(star(3)), "two") == pytest.approx(math.sqrt(3), abs=1e-13)
        assert operator_norm(adjacency_matrix(star(3)), 1) == 3
        with pytest.raises(ValueError):
            operator_norm(np.eye(2), 3)


class TestSpectralProperties:
    def test_trace_zero_and_determinant(self, graphs):
        for G in graphs:
            lam = sym_eigen(adjacency_matrix(G)).eigenvalues
            assert abs(lam.sum()) <= 1e-9
            for t in (1, -1, 2, -2):
                assert 1 - 1e-8 <= math.prod(math.exp(t * x) for x in lam) <= 1 + 1e-8

    def test_line_graph_floor(self, line_pairs):
        for _, M in line_pairs:
            assert sym_eigen(adjacency_matrix(M.line)).lambda_min >= -2 - 1e-9

    def test_spectral_radius_sandwich(self, graphs):
        for G in graphs:
            lam = sym_eigen(adjacency_matrix(G)).lambda_max
            d = G.max_degree()
            if G.is_regular():
                assert abs(lam - d) <= 1e-9
            else:
                lower = max(2 * G.m / G.n, math.sqrt(d), 2 * math.cos(math.pi / (G.n + 1)))
                assert lower - 1e-9 <= lam < d


class TestPowerVsExponential:
    def test_spectral_matches_dense(self, graphs):
        for G in graphs[:5]:
            d = power_exponential_distance(G, 12)
            for n in (1, 5, 12):
                assert d[n - 1] == pytest.approx(power_exponential_distance_dense(G, n), abs=1e-10)

    def test_bounded_over_range(self, graphs):
        scaled = [power_exponential_distance(G, 64) * np.arange(1, 65) ** (1 / 3) for G in graphs[:20]]
        # recorded constant: d_n <= 1 (up to e^{-2n}), so 64^(1/3) = 4 bounds the range
        assert max(s.max() for s in scaled) <= 4.0 * (1 + 1e-12)
        non_bip = [s for G, s in zip(graphs[:20], scaled) if not is_bipartite(G).is_bipartite]
        assert max(s.max() for s in non_bip) <= 1.0

    def test_decays_without_minus_one(self):
        # non-bipartite: no eigenvalue at -||A||, so d_n -> 0
        d = power_exponential_distance(cycle(5), 400)
        assert d[-1] < 0.05 * d[:5].max()

    def test_bipartite_does_not_decay(self):
        # x = -1 is an eigenvalue, so d_n -> |(-1)^n - e^{-2n}| -> 1
        d = power_exponential_distance(cycle(6), 200)
        assert d[-1] > 0.99


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (5, 5), elements=st.floats(-3, 3, allow_nan=False)))
def test_eigen_property(X):
    A = (X + X.T) / 2
    D = sym_eigen(A)
    assert_decomposition(A, D)
    assert np.isclose(D.eigenvalues.sum(), np.trace(A), atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-2, 2, allow_nan=False)), st.floats(-1, 1))
def test_expm_property(X, t):
    A = (X + X.T) / 2
    E = expm_sym(A, t).entries
    assert np.abs(E - expm_taylor(A, t)).max() <= 1e-10 * max(1.0, np.abs(E).max())

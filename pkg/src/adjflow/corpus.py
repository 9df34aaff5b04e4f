"""Seeded random corpus of small connected graphs."""

from __future__ import annotations

import numpy as np

from .graph import Graph

CORPUS_SEED = 0x5EED


def random_connected_graph(rng: np.random.Generator, n_min: int = 3, n_max: int = 10, p_edge=None) -> Graph:
    """Erdős–Rényi ``G(n, p)`` redrawn until connected.

    ``n`` is uniform on ``[n_min, n_max]`` and ``p`` uniform on ``[0.25, 0.75]``
    unless given.
    """
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.25, 0.75)) if p_edge is None else p_edge
    labels = [f"v{i}" for i in range(n)]
    iu, ju = np.triu_indices(n, 1)
    while True:
        keep = rng.random(iu.size) < p
        G = Graph.from_edges(
            [(labels[i], labels[j]) for i, j in zip(iu[keep], ju[keep])], vertices=labels
        )
        if G.is_connected():
            return G


def corpus(count: int = 200, seed: int = CORPUS_SEED, n_min: int = 3, n_max: int = 10) -> list[Graph]:
    """``count`` connected graphs with ``n_min..n_max`` vertices; deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    return [random_connected_graph(rng, n_min, n_max) for _ in range(count)]

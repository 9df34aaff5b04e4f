import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from adjflow.corpus import corpus  # noqa: E402


@pytest.fixture(scope="session")
def graphs():
    """The seeded 200-graph corpus."""
    return corpus(200)


@pytest.fixture(scope="session")
def line_pairs(graphs):
    from adjflow.graph import line_graph

    return [(H, line_graph(H)) for H in graphs if H.m >= 2]

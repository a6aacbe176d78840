import random
from pathlib import Path

import pytest

from cliquecomm.graph import build_graph

DATA_DIR = Path(__file__).parent / "data"


def gnp(n, p, seed):
    """Seeded Erdos-Renyi graph over zero-padded string ids, nodes kept even
    when isolated so indices stay predictable."""
    rng = random.Random(seed)
    ids = [f"n{i:03d}" for i in range(n)]
    edges = [
        (ids[i], ids[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_graph(edges, extra_nodes=ids)


def complete_graph(n, prefix="k"):
    ids = [f"{prefix}{i:02d}" for i in range(n)]
    return build_graph(
        (ids[i], ids[j]) for i in range(n) for j in range(i + 1, n)
    )


def two_k5():
    """Two disjoint K5 components; the classic EQ = 0.5 fixture."""
    edges = []
    for base in ("a", "b"):
        ids = [f"{base}{i}" for i in range(5)]
        edges.extend((ids[i], ids[j]) for i in range(5) for j in range(i + 1, 5))
    return build_graph(edges)


@pytest.fixture
def data_dir():
    return DATA_DIR

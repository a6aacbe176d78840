"""Comparison detectors: asynchronous label propagation and clique percolation."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations

from .cliques import enumerate_maximal_cliques
from .errors import DeadlineExceededError, ResourceLimitError
from .graph import Graph, sort_cover

DEFAULT_KCLIQUE_CAP = 10_000_000


@dataclass(frozen=True)
class LpParams:
    rng_seed: int = 0
    max_iterations: int = 100

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass(frozen=True)
class CpmParams:
    k: int = 3
    max_kcliques: int = DEFAULT_KCLIQUE_CAP

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be >= 3")


def label_propagation(g: Graph, p: LpParams = LpParams()):
    """Asynchronous label propagation with seeded visit order and tie-breaks.

    Each node starts with its own label and repeatedly adopts the majority
    label of its neighborhood (ties broken uniformly at random). Stops when a
    full sweep changes nothing, i.e. every label is already a neighborhood
    majority, or after max_iterations sweeps. The result is a partition.
    """
    rng = random.Random(p.rng_seed)
    labels = list(range(g.n))
    order = list(range(g.n))
    for _ in range(p.max_iterations):
        rng.shuffle(order)
        changed = False
        for v in order:
            nbrs = g.adjacency[v]
            if not nbrs:
                continue
            counts = {}
            for w in nbrs:
                lw = labels[w]
                counts[lw] = counts.get(lw, 0) + 1
            best = max(counts.values())
            majority = sorted(l for l, c in counts.items() if c == best)
            if labels[v] in majority:
                continue
            labels[v] = rng.choice(majority)
            changed = True
        if not changed:
            break
    groups = {}
    for v, l in enumerate(labels):
        groups.setdefault(l, set()).add(v)
    return sort_cover(g, (frozenset(members) for members in groups.values()))


def clique_percolation(
    g: Graph,
    p: CpmParams,
    deadline: float | None = None,
):
    """Clique percolation: communities are unions of k-cliques chained by
    (k-1)-node overlaps.

    k-cliques come from downsizing the maximal cliques of size >= k; two
    k-cliques land in the same community iff connected through a chain of
    pairs sharing k-1 nodes.
    """
    maximal = enumerate_maximal_cliques(g, p.k, deadline=deadline)
    kcliques = set()
    for i, c in enumerate(maximal.cliques):
        if deadline is not None and i % 64 == 0 and time.monotonic() > deadline:
            raise DeadlineExceededError("k-clique expansion timed out")
        for combo in combinations(sorted(c), p.k):
            kcliques.add(combo)
            if len(kcliques) > p.max_kcliques:
                raise ResourceLimitError(
                    f"k-clique count exceeded cap {p.max_kcliques}"
                )
    kcliques = sorted(kcliques)

    # Union-find over k-cliques; sharing k-1 nodes == sharing a (k-1)-subset.
    parent = list(range(len(kcliques)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    by_subset = {}
    for idx, kc in enumerate(kcliques):
        for sub in combinations(kc, p.k - 1):
            first = by_subset.setdefault(sub, idx)
            if first != idx:
                union(first, idx)

    components = {}
    for idx, kc in enumerate(kcliques):
        components.setdefault(find(idx), set()).update(kc)
    return sort_cover(g, (frozenset(nodes) for nodes in components.values()))

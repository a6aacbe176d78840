"""Maximal clique enumeration and the overlap-threshold seed filter."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import DeadlineExceededError, ResourceLimitError
from .graph import Graph

DEFAULT_CLIQUE_CAP = 10_000_000


@dataclass(frozen=True)
class CliqueSet:
    """Cliques sorted descending by size, ties lexicographic by member ids."""

    cliques: list  # list[frozenset[int]]
    min_size: int


def threshold_fraction(t) -> Fraction:
    """Exact rational form of a user-supplied threshold.

    Floats are interpreted through their shortest decimal repr (0.7 means
    7/10, not the nearest binary double), so worked ratios like 0.7 * 10
    compare exactly.
    """
    if isinstance(t, Fraction):
        return t
    if isinstance(t, float):
        return Fraction(repr(t))
    return Fraction(t)


def sort_cliques(g: Graph, cliques) -> list:
    return sorted(
        cliques, key=lambda c: (-len(c), tuple(sorted(g.ids[v] for v in c)))
    )


def degeneracy_order(g: Graph) -> list:
    """Vertex order by repeated minimum-degree removal (bucket queue)."""
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    max_deg = max(deg, default=0)
    buckets = [set() for _ in range(max_deg + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    order = []
    d = 0
    for _ in range(n):
        while d <= max_deg and not buckets[d]:
            d += 1
        v = buckets[d].pop()
        removed[v] = True
        order.append(v)
        for w in g.adjacency[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
        d = max(d - 1, 0)
    return order


def enumerate_maximal_cliques(
    g: Graph,
    min_size: int = 1,
    max_cliques: int = DEFAULT_CLIQUE_CAP,
    deadline: float | None = None,
) -> CliqueSet:
    """All maximal cliques of g with at least min_size members.

    Bron-Kerbosch with pivoting, outer loop in degeneracy order. Raises
    ResourceLimitError past max_cliques and DeadlineExceededError past the
    wall-clock deadline (time.monotonic() value).
    """
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    adj = g.adjacency
    out = []

    def expand(r, p, x):
        if not p and not x:
            if len(r) >= min_size:
                out.append(frozenset(r))
                if len(out) > max_cliques:
                    raise ResourceLimitError(
                        f"maximal clique count exceeded cap {max_cliques}"
                    )
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    order = degeneracy_order(g)
    rank = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        if deadline is not None and i % 1024 == 0 and time.monotonic() > deadline:
            raise DeadlineExceededError("clique enumeration timed out")
        later = {w for w in adj[v] if rank[w] > i}
        earlier = {w for w in adj[v] if rank[w] < i}
        expand({v}, later, earlier)

    return CliqueSet(cliques=sort_cliques(g, out), min_size=min_size)


def filter_overlapping(cs: CliqueSet, overlapping_threshold) -> CliqueSet:
    """Greedy overlap filter over the size-sorted clique list.

    Walking the cliques largest-first, a candidate c is discarded iff some
    already-kept clique k shares strictly more than
    overlapping_threshold * min(|c|, |k|) nodes with it; exact ties keep
    the candidate. Threshold 0 yields a pairwise-disjoint kept set.
    """
    t = threshold_fraction(overlapping_threshold)
    if not 0 <= t <= 1:
        raise ValueError(f"overlapping threshold must be in [0, 1], got {t}")
    num, den = t.numerator, t.denominator

    kept = []
    by_node = {}  # node -> indices into kept, to skip disjoint comparisons
    for c in cs.cliques:
        near = set()
        for v in c:
            near.update(by_node.get(v, ()))
        discard = False
        for ki in near:
            k = kept[ki]
            overlap = len(c & k)
            if overlap * den > num * min(len(c), len(k)):
                discard = True
                break
        if discard:
            continue
        idx = len(kept)
        kept.append(c)
        for v in c:
            by_node.setdefault(v, []).append(idx)
    return CliqueSet(cliques=kept, min_size=cs.min_size)


def is_clique(g: Graph, members) -> bool:
    members = list(members)
    return all(
        g.has_edge(members[i], members[j])
        for i in range(len(members))
        for j in range(i + 1, len(members))
    )


def is_maximal_clique(g: Graph, members) -> bool:
    ms = set(members)
    if not is_clique(g, ms):
        return False
    candidates = set(range(g.n)) - ms
    return not any(ms <= g.adjacency[v] for v in candidates)

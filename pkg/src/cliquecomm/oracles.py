"""Brute-force oracles for validating the production algorithms.

Each oracle is exact by construction and deliberately shares no code with the
implementation it checks; size caps keep exhaustive search under a second.
"""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, sort_cover

MAX_CLIQUE_ORACLE_N = 12
MAX_CPM_ORACLE_N = 10
MAX_MODULARITY_ORACLE_N = 30


def oracle_maximal_cliques(g: Graph):
    """Every vertex subset tested for clique-ness and maximality. n <= 12."""
    if g.n > MAX_CLIQUE_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_CLIQUE_ORACLE_N}")
    nodes = list(range(g.n))
    cliques = []
    for size in range(1, g.n + 1):
        for subset in combinations(nodes, size):
            if not all(g.has_edge(a, b) for a, b in combinations(subset, 2)):
                continue
            ss = set(subset)
            maximal = not any(
                ss <= g.adjacency[v] for v in nodes if v not in ss
            )
            if maximal:
                cliques.append(frozenset(subset))
    return cliques


def oracle_modularity(g: Graph, partition) -> float:
    """Classical modularity via the literal double loop over node pairs."""
    if g.n > MAX_MODULARITY_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_MODULARITY_ORACLE_N}")
    label = {}
    for ci, c in enumerate(partition):
        for v in c:
            label[v] = ci
    m = g.m
    q = 0.0
    for v in range(g.n):
        for w in range(g.n):
            if label.get(v) is None or label.get(v) != label.get(w):
                continue
            a_vw = 1.0 if g.has_edge(v, w) else 0.0
            q += a_vw - g.degree(v) * g.degree(w) / (2.0 * m)
    return q / (2.0 * m)


def oracle_cpm_k3(g: Graph):
    """CPM at k=3 from an explicit triangle list and its adjacency graph. n <= 10."""
    if g.n > MAX_CPM_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_CPM_ORACLE_N}")
    triangles = [
        t
        for t in combinations(range(g.n), 3)
        if g.has_edge(t[0], t[1]) and g.has_edge(t[0], t[2]) and g.has_edge(t[1], t[2])
    ]
    # Connected components of the triangle graph (adjacent = share 2 nodes).
    unvisited = set(range(len(triangles)))
    covers = []
    while unvisited:
        stack = [unvisited.pop()]
        component = set(stack)
        while stack:
            i = stack.pop()
            for j in list(unvisited):
                if len(set(triangles[i]) & set(triangles[j])) == 2:
                    unvisited.remove(j)
                    component.add(j)
                    stack.append(j)
        nodes = set()
        for i in component:
            nodes.update(triangles[i])
        covers.append(frozenset(nodes))
    return sort_cover(g, covers)

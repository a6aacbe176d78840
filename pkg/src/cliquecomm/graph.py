"""Graph representation, mutualization, file I/O, and synthetic generation.

External node ids are opaque strings; every algorithm in the package works on
dense integer indices [0, n) and output is translated back to external ids at
the file boundary.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EdgeListParseError

logger = logging.getLogger(__name__)

Community = frozenset  # frozenset[int], node indices of one community
Cover = list  # list[Community], possibly overlapping


@dataclass(frozen=True)
class DirectedEdgeList:
    """Raw directed edges over external string ids, duplicates allowed."""

    edges: list


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph with dense node indices.

    ids[i] is the external id of node i; adjacency[i] is the set of
    neighbor indices. Symmetric and irreflexive by construction.
    """

    ids: list
    adjacency: list
    _index: dict = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_index", {ext: i for i, ext in enumerate(self.ids)})

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def index_of(self, external_id: str) -> int:
        return self._index[external_id]

    def edges(self):
        """Yield each undirected edge once as (i, j) with i < j."""
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield i, j

    def external_edge(self, i: int, j: int):
        return self.ids[i], self.ids[j]


def build_graph(edge_pairs: Iterable, extra_nodes: Iterable = ()) -> Graph:
    """Build a Graph from (source_id, target_id) pairs over external ids.

    Symmetrizes, drops duplicate edges and self-loops (counted in the log),
    and assigns dense indices in lexicographic id order. Nodes listed in
    extra_nodes are kept even when isolated.
    """
    nodes = set(extra_nodes)
    edges = set()
    self_loops = 0
    duplicates = 0
    for a, b in edge_pairs:
        nodes.add(a)
        nodes.add(b)
        if a == b:
            self_loops += 1
            continue
        key = (a, b) if a <= b else (b, a)
        if key in edges:
            duplicates += 1
        else:
            edges.add(key)
    ids = sorted(nodes)
    index = {ext: i for i, ext in enumerate(ids)}
    adjacency = [set() for _ in ids]
    for a, b in edges:
        ia, ib = index[a], index[b]
        adjacency[ia].add(ib)
        adjacency[ib].add(ia)
    if self_loops or duplicates:
        logger.info(
            "build_graph: dropped %d self-loops and %d duplicate edges",
            self_loops,
            duplicates,
        )
    return Graph(ids=ids, adjacency=adjacency)


def mutualize(d: DirectedEdgeList) -> Graph:
    """Keep only reciprocated directed edges; drop nodes left isolated.

    The undirected edge {a, b} survives iff both (a, b) and (b, a) appear
    in the input. Self-loops never survive.
    """
    directed = set()
    for a, b in d.edges:
        if a != b:
            directed.add((a, b))
    mutual = [(a, b) for (a, b) in directed if a < b and (b, a) in directed]
    return build_graph(mutual)


def load_edge_list(path, directed: bool = False):
    """Read a tab-separated edge-list file.

    Lines starting with '#' are comments. With directed=True the raw
    DirectedEdgeList is returned; otherwise an undirected Graph is built
    directly (symmetrized, deduplicated, self-loops dropped).
    """
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise EdgeListParseError(
                    path, lineno, f"expected 2 tab-separated fields, got {len(parts)}"
                )
            a, b = parts
            if not a or not b:
                raise EdgeListParseError(path, lineno, "empty node id")
            edges.append((a, b))
    if directed:
        return DirectedEdgeList(edges=edges)
    return build_graph(edges)


def save_edge_list(g: Graph, path) -> None:
    """Write an undirected graph as a deterministic tab-separated edge list."""
    lines = sorted(g.external_edge(i, j) for i, j in g.edges())
    with open(path, "w", encoding="utf-8") as fh:
        for a, b in lines:
            fh.write(f"{a}\t{b}\n")


def induced_subgraph(g: Graph, c: Community) -> Graph:
    """Subgraph over c's members with exactly the internal edges of g.

    External ids are preserved so downstream reports stay readable.
    """
    members = sorted(c)
    for v in members:
        if not 0 <= v < g.n:
            raise IndexError(f"community member {v} out of range for graph of size {g.n}")
    member_set = set(members)
    remap = {v: i for i, v in enumerate(members)}
    ids = [g.ids[v] for v in members]
    adjacency = [
        {remap[w] for w in g.adjacency[v] if w in member_set} for v in members
    ]
    return Graph(ids=ids, adjacency=adjacency)


# ---------------------------------------------------------------------------
# Cover file I/O: one community per line, space-separated external ids.

def sort_cover(g: Graph, cover: Iterable, dedup: bool = False) -> Cover:
    """Canonical cover order: descending size, then lexicographic member ids."""
    seen = set()
    out = []
    for c in cover:
        c = frozenset(c)
        if dedup:
            if c in seen:
                continue
            seen.add(c)
        out.append(c)
    out.sort(key=lambda c: (-len(c), tuple(sorted(g.ids[v] for v in c))))
    return out


def save_cover(g: Graph, cover: Sequence, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for c in cover:
            fh.write(" ".join(sorted(g.ids[v] for v in c)) + "\n")


def load_cover(g: Graph, path) -> Cover:
    """Read a cover file, mapping external ids back to g's indices."""
    cover = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            members = set()
            for token in line.split():
                try:
                    members.add(g.index_of(token))
                except KeyError:
                    raise EdgeListParseError(
                        path, lineno, f"unknown node id {token!r}"
                    ) from None
            if members:
                cover.append(frozenset(members))
    return cover


# ---------------------------------------------------------------------------
# Planted-partition generator.

def planted_partition(
    k_blocks: int,
    block_size: int,
    p_in: float,
    p_out: float,
    rng_seed: int,
) -> Graph:
    """Random graph with k_blocks dense blocks of block_size nodes each.

    Intra-block pairs are joined with probability p_in, inter-block pairs
    with p_out. Isolated nodes are retained. Node ids encode the block as
    "<block>-<offset>" so planted membership stays recoverable.
    """
    if not (0.0 <= p_out <= p_in <= 1.0):
        raise ValueError(f"need 0 <= p_out <= p_in <= 1, got p_in={p_in}, p_out={p_out}")
    if k_blocks < 1 or block_size < 1:
        raise ValueError("k_blocks and block_size must be >= 1")

    n = k_blocks * block_size
    rng = np.random.default_rng(rng_seed)
    ids = [f"{v // block_size}-{v % block_size}" for v in range(n)]
    adjacency = [set() for _ in range(n)]

    def add_edge(i, j):
        adjacency[i].add(j)
        adjacency[j].add(i)

    # Intra-block edges: skip-sample the C(b,2) local pairs of each block.
    local_pairs = block_size * (block_size - 1) // 2
    for b in range(k_blocks):
        base = b * block_size
        for idx in _sample_indices(local_pairs, p_in, rng):
            i, j = _index_to_pair(idx, block_size)
            add_edge(base + i, base + j)

    # Inter-block edges: skip-sample all C(n,2) pairs at p_out and discard
    # intra-block hits, which keeps intra-block pairs at exactly p_in.
    if p_out > 0.0 and k_blocks > 1:
        total_pairs = n * (n - 1) // 2
        for idx in _sample_indices(total_pairs, p_out, rng):
            i, j = _index_to_pair(idx, n)
            if i // block_size != j // block_size:
                add_edge(i, j)

    return Graph(ids=ids, adjacency=adjacency)


def planted_block(external_id: str) -> int:
    """Recover the planted block index from a planted_partition node id."""
    return int(external_id.split("-", 1)[0])


def _sample_indices(total: int, p: float, rng) -> Iterable:
    """Indices of a Bernoulli(p) subset of range(total), via geometric gaps."""
    if total <= 0 or p <= 0.0:
        return
    if p >= 1.0:
        yield from range(total)
        return
    pos = -1
    chunk = max(256, min(1 << 18, int(total * p) + 16))
    while True:
        gaps = rng.geometric(p, size=chunk)
        for gap in gaps:
            pos += int(gap)
            if pos >= total:
                return
            yield pos


def _index_to_pair(idx: int, n: int):
    """Invert the row-major linearization of pairs (i, j), i < j, over n nodes."""
    # Pairs with first element < i occupy i*n - i*(i+1)/2 slots.
    i = int(n - 0.5 - math.sqrt((n - 0.5) ** 2 - 2 * idx))
    # Float sqrt can land one row off near boundaries; correct exactly.
    while i * n - i * (i + 1) // 2 > idx:
        i -= 1
    while (i + 1) * n - (i + 1) * (i + 2) // 2 <= idx:
        i += 1
    j = idx - (i * n - i * (i + 1) // 2) + i + 1
    return i, j

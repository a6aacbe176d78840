"""Clique augmentation: grow filtered seed cliques into overlapping communities."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cliques import (
    DEFAULT_CLIQUE_CAP,
    enumerate_maximal_cliques,
    filter_overlapping,
    is_clique,
    threshold_fraction,
)
from .errors import DeadlineExceededError
from .graph import Graph, sort_cover

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CaaParams:
    min_clique_size: int = 3
    overlapping_threshold: float = 0.0
    growing_threshold: float = 0.7
    max_rounds: int | None = None  # None = run to fixpoint
    max_cliques: int = DEFAULT_CLIQUE_CAP

    def __post_init__(self):
        if self.min_clique_size < 3:
            raise ValueError("min_clique_size must be >= 3")
        if not 0 <= threshold_fraction(self.overlapping_threshold) <= 1:
            raise ValueError("overlapping_threshold must be in [0, 1]")
        if not 0 < threshold_fraction(self.growing_threshold) <= 1:
            raise ValueError("growing_threshold must be in (0, 1]")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


@dataclass
class CaaRunSummary:
    seed_count: int = 0
    community_count: int = 0
    rounds_histogram: dict = field(default_factory=dict)
    wall_seconds: float = 0.0


def grow_community(
    g: Graph,
    seed,
    growing_threshold,
    max_rounds: int | None = None,
) -> frozenset:
    community, _ = grow_community_with_rounds(g, seed, growing_threshold, max_rounds)
    return community


def grow_community_with_rounds(
    g: Graph,
    seed,
    growing_threshold,
    max_rounds: int | None = None,
):
    """Grow a seed clique to fixpoint under the admission ratio rule.

    Each round admits, simultaneously, every non-member neighbor whose edge
    count into the round-start snapshot is at least
    growing_threshold * |snapshot|. Returns (community, rounds_executed).
    """
    seed = frozenset(seed)
    if not is_clique(g, seed):
        raise ValueError("seed is not a clique in the graph")
    t = threshold_fraction(growing_threshold)
    if not 0 < t <= 1:
        raise ValueError(f"growing threshold must be in (0, 1], got {t}")
    num, den = t.numerator, t.denominator

    community = set(seed)
    # counts[v] = edges from frontier candidate v into the community
    counts = {}
    for u in community:
        for w in g.adjacency[u]:
            if w not in community:
                counts[w] = counts.get(w, 0) + 1

    rounds = 0
    while counts:
        if max_rounds is not None and rounds >= max_rounds:
            break
        size = len(community)
        admitted = [v for v, c in counts.items() if c * den >= num * size]
        if not admitted:
            break
        rounds += 1
        for v in admitted:
            del counts[v]
        community.update(admitted)
        for v in admitted:
            for w in g.adjacency[v]:
                if w not in community:
                    counts[w] = counts.get(w, 0) + 1
    return frozenset(community), rounds


def run_caa(
    g: Graph,
    params: CaaParams = CaaParams(),
    threads: int = 1,
    deadline: float | None = None,
    summary: CaaRunSummary | None = None,
):
    """Full pipeline: enumerate cliques, filter seeds, grow, dedup, sort."""
    start = time.monotonic()
    cliques = enumerate_maximal_cliques(
        g, params.min_clique_size, params.max_cliques, deadline
    )
    seeds = filter_overlapping(cliques, params.overlapping_threshold)

    def grow(seed):
        return grow_community_with_rounds(
            g, seed, params.growing_threshold, params.max_rounds
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            grown = list(pool.map(grow, seeds.cliques))
    else:
        grown = []
        for i, seed in enumerate(seeds.cliques):
            if deadline is not None and i % 256 == 0 and time.monotonic() > deadline:
                raise DeadlineExceededError("community growth timed out")
            grown.append(grow(seed))

    cover = sort_cover(g, (c for c, _ in grown), dedup=True)
    if summary is not None:
        summary.seed_count = len(seeds.cliques)
        summary.community_count = len(cover)
        hist = {}
        for _, rounds in grown:
            hist[rounds] = hist.get(rounds, 0) + 1
        summary.rounds_histogram = dict(sorted(hist.items()))
        summary.wall_seconds = time.monotonic() - start
    logger.info(
        "caa: %d seeds -> %d communities in %.2fs",
        len(seeds.cliques),
        len(cover),
        time.monotonic() - start,
    )
    return cover

"""Evaluation suite over (graph, cover): sizes, coverage, extended modularity, TPR."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, induced_subgraph

# Half-open at infinity only; each band is (lo, hi) inclusive, hi=None for open.
DEFAULT_BANDS = ((1, 3), (4, 9), (10, 150), (151, None))


def validate_bands(bands) -> tuple:
    bands = tuple((int(lo), None if hi is None else int(hi)) for lo, hi in bands)
    if not bands or bands[0][0] != 1 or bands[-1][1] is not None:
        raise ValueError("bands must start at 1 and end with an open range")
    for (lo, hi), (nlo, _) in zip(bands, bands[1:]):
        if hi is None or nlo != hi + 1:
            raise ValueError(f"bands must be contiguous, got gap after [{lo},{hi}]")
    return bands


def band_label(band) -> str:
    lo, hi = band
    return f"{lo}+" if hi is None else f"{lo}-{hi}"


def band_of(size: int, bands) -> tuple:
    for lo, hi in bands:
        if size >= lo and (hi is None or size <= hi):
            return (lo, hi)
    raise ValueError(f"no band for size {size}")


def size_histogram(cover, bands=DEFAULT_BANDS):
    """Community counts per size band, plus the percentage form."""
    bands = validate_bands(bands)
    counts = {band_label(b): 0 for b in bands}
    for c in cover:
        counts[band_label(band_of(len(c), bands))] += 1
    total = len(cover)
    pct = {
        label: (100.0 * cnt / total if total else 0.0)
        for label, cnt in counts.items()
    }
    return counts, pct


def desirable_coverage(g: Graph, cover, lo: int = 4, hi: int = 150) -> float:
    """Fraction of all graph nodes in at least one community of size [lo, hi]."""
    if lo > hi:
        raise ValueError(f"lo must be <= hi, got [{lo}, {hi}]")
    covered = set()
    for c in cover:
        if lo <= len(c) <= hi:
            covered.update(c)
    return len(covered) / g.n if g.n else 0.0


def community_memberships(g: Graph, cover):
    """memberships[v] = number of cover communities containing v."""
    memberships = [0] * g.n
    for c in cover:
        for v in c:
            memberships[v] += 1
    return memberships


def extended_modularity(g: Graph, cover, bands=DEFAULT_BANDS):
    """Overlap-aware modularity with per-community and per-band contributions.

    For each community the contribution sums, over ordered member pairs
    (v, w), (A_vw - k_v*k_w/2m) / (O_v*O_w), divided by 2m; O_v counts the
    communities of v across the whole cover, degrees and m come from the
    whole graph. With a disjoint cover this reduces to classical modularity.
    """
    bands = validate_bands(bands)
    m = g.m
    if m == 0:
        raise ValueError("extended modularity is undefined on an edgeless graph")
    two_m = 2.0 * m
    memberships = community_memberships(g, cover)

    per_community = []
    eq_by_band = {band_label(b): 0.0 for b in bands}
    for c in cover:
        adj_term = 0.0
        deg_term = 0.0  # sum of k_v / O_v over members; squared gives pair sum
        for v in c:
            ov = memberships[v]
            deg_term += g.degree(v) / ov
            inv_ov = 1.0 / ov
            for w in g.adjacency[v]:
                if w in c:
                    adj_term += inv_ov / memberships[w]
        contribution = (adj_term - deg_term * deg_term / two_m) / two_m
        per_community.append(contribution)
        eq_by_band[band_label(band_of(len(c), bands))] += contribution
    eq_total = sum(per_community)
    return eq_total, eq_by_band, per_community


def triangle_participants(g: Graph, c) -> set:
    """Members of c lying in at least one triangle internal to c."""
    sub = induced_subgraph(g, c)
    members = sorted(c)
    in_triangle = set()
    for i in range(sub.n):
        if i in in_triangle:
            continue
        nbrs = sub.adjacency[i]
        for j in nbrs:
            common = nbrs & sub.adjacency[j]
            if common:
                in_triangle.add(i)
                in_triangle.add(j)
                in_triangle.update(common)
                break
    return {members[i] for i in in_triangle}


def triangle_participation_ratio(g: Graph, c) -> float:
    """Fraction of c's members in at least one triangle inside the community."""
    if not c:
        return 0.0
    return len(triangle_participants(g, c)) / len(c)


@dataclass
class MetricsReport:
    community_count: int
    largest_community_size: int
    histogram: dict
    histogram_pct: dict
    coverage: float
    eq_total: float
    eq_by_band: dict
    tpr_mean_by_band: dict
    tpr_micro_by_band: dict
    per_community: list = field(default_factory=list)  # (size, tpr, eq_contribution)

    def to_dict(self) -> dict:
        return {
            "community_count": self.community_count,
            "largest_community_size": self.largest_community_size,
            "histogram": self.histogram,
            "histogram_pct": self.histogram_pct,
            "coverage": self.coverage,
            "eq_total": self.eq_total,
            "eq_by_band": self.eq_by_band,
            "tpr_mean_by_band": self.tpr_mean_by_band,
            "tpr_micro_by_band": self.tpr_micro_by_band,
            "per_community": [list(row) for row in self.per_community],
        }


def evaluate(
    g: Graph,
    cover,
    bands=DEFAULT_BANDS,
    coverage_lo: int = 4,
    coverage_hi: int = 150,
) -> MetricsReport:
    """Assemble the full per-cover report."""
    bands = validate_bands(bands)
    counts, pct = size_histogram(cover, bands)
    if cover:
        eq_total, eq_by_band, contributions = extended_modularity(g, cover, bands)
    else:
        eq_total = 0.0
        eq_by_band = {band_label(b): 0.0 for b in bands}
        contributions = []

    per_community = []
    tpr_sums = {band_label(b): 0.0 for b in bands}
    tpr_nodes = {band_label(b): 0 for b in bands}
    tpr_participants = {band_label(b): 0 for b in bands}
    for c, eq_c in zip(cover, contributions):
        label = band_label(band_of(len(c), bands))
        participants = triangle_participants(g, c)
        tpr = len(participants) / len(c)
        per_community.append((len(c), tpr, eq_c))
        tpr_sums[label] += tpr
        tpr_nodes[label] += len(c)
        tpr_participants[label] += len(participants)

    tpr_mean = {
        label: (tpr_sums[label] / counts[label] if counts[label] else None)
        for label in tpr_sums
    }
    tpr_micro = {
        label: (tpr_participants[label] / tpr_nodes[label] if tpr_nodes[label] else None)
        for label in tpr_nodes
    }
    return MetricsReport(
        community_count=len(cover),
        largest_community_size=max((len(c) for c in cover), default=0),
        histogram=counts,
        histogram_pct=pct,
        coverage=desirable_coverage(g, cover, coverage_lo, coverage_hi),
        eq_total=eq_total,
        eq_by_band=eq_by_band,
        tpr_mean_by_band=tpr_mean,
        tpr_micro_by_band=tpr_micro,
        per_community=per_community,
    )

"""Range star listing with polylogarithmic delay.

A star with centre ``u`` has *rank* ``r`` when exactly ``r - 1`` of its
leaves rank below ``u``.  For fixed ``(u, r)`` the stars inside ``G_q`` exist
iff ``lo <= s1`` and ``s2 <= hi``, where ``s1`` is the ``(r-1)``-th closest
lower neighbour and ``s2`` the ``(l-r+1)``-th closest upper neighbour (the
centre itself stands in for an empty side).  One 2D dominance report per
rank finds the centres; the stars at a centre are then expanded from its
in-range neighbour lists.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .enumeration import DelayMeter, log_cost
from .geometry import INF, RangeReportKD, report_delay_bound
from .graph import AttributedGraph, Occurrence, PatternGraph


def star_sentinels(G: AttributedGraph, u: int, leaves: int, r: int) -> tuple[int, int] | None:
    """``(s1, s2)`` for centre ``u`` at rank ``r``, or ``None`` if no such star exists."""
    nb = G.adj[u]
    split = bisect_left(nb, u)
    below, above = nb[:split], nb[split:]
    need_lo, need_hi = r - 1, leaves - r + 1
    if len(below) < need_lo or len(above) < need_hi:
        return None
    s1 = below[-need_lo] if need_lo else u
    s2 = above[need_hi - 1] if need_hi else u
    return s1, s2


def _ranks(leaves: int) -> range:
    # a single-leaf star is an edge; keep only the copy centred at its lower end
    return range(1, 2) if leaves == 1 else range(1, leaves + 2)


@dataclass
class StarSentinelIndex:
    G: AttributedGraph
    leaves: int
    by_rank: dict[int, RangeReportKD]

    @property
    def point_count(self) -> int:
        return sum(ix.size for ix in self.by_rank.values())

    @property
    def stored_entries(self) -> int:
        return self.point_count + 2 * self.G.m

    def delay_bound(self, c: float) -> float:
        """``c * (1 + log2 n)^2``."""
        return c * log_cost(max(2, self.G.n)) ** 2


def build_star_index(G: AttributedGraph, leaves: int) -> StarSentinelIndex:
    if leaves < 1:
        raise ValueError("a star needs at least one leaf")
    by_rank = {}
    for r in _ranks(leaves):
        pts, pay = [], []
        for u in range(G.n):
            s = star_sentinels(G, u, leaves, r)
            if s is not None:
                pts.append(s)
                pay.append(u)
        by_rank[r] = RangeReportKD(pts, pay, dims=2)
    return StarSentinelIndex(G, leaves, by_rank)


def query_stars(idx: StarSentinelIndex, q, meter: DelayMeter | None = None) -> Iterator[Occurrence]:
    """Every ``l``-star inside ``G_q`` exactly once."""
    G, leaves = idx.G, idx.leaves
    lo, hi = G.rank_range(q)
    if lo > hi:
        return
    Q = PatternGraph.star(leaves)
    box = ((lo, INF), (-INF, hi))
    for r, part in idx.by_rank.items():
        need_lo = r - 1
        for u in part.report(box, meter):
            nb = G.adj[u]
            a, split, b = bisect_left(nb, lo), bisect_left(nb, u), bisect_right(nb, hi)
            if meter is not None:
                meter.tick(3 * log_cost(len(nb)))
            below, above = nb[a:split], nb[split:b]
            for low in combinations(below, need_lo):
                for high in combinations(above, leaves - need_lo):
                    if meter is not None:
                        meter.tick(leaves)
                    yield Occurrence.from_mapping(Q, (u, *low, *high))


def star_exists(G: AttributedGraph, u: int, leaves: int, r: int, q) -> bool:
    """Brute force: is there a rank-``r`` star centred at ``u`` inside ``G_q``?"""
    lo, hi = G.rank_range(q)
    if not lo <= u <= hi:
        return False
    below = sum(1 for v in G.adj[u] if lo <= v < u)
    above = sum(1 for v in G.adj[u] if u < v <= hi)
    return below >= r - 1 and above >= leaves - r + 1


def star_report_bound(idx: StarSentinelIndex) -> float:
    """Work between two reported centres of one rank."""
    return report_delay_bound(max(2, idx.G.n), 2)

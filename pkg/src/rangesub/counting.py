"""Range subgraph counting for arbitrary patterns.

Every occurrence is registered at the pair (smallest-attribute vertex,
largest-attribute vertex).  An occurrence lies in G_q exactly when its
registration pair does, so a query is one dominance range sum over the
registration points.
"""

from __future__ import annotations

from collections import Counter

from .enumeration import DelayMeter
from .geometry import INF, RangeSum2D
from .graph import AttributedGraph, PatternGraph, all_occurrences


class CountIndex:
    """Registration points ``(u, v, c_uv)`` for a fixed pattern, in rank space."""

    def __init__(self, G: AttributedGraph, Q: PatternGraph, table: Counter):
        self.G = G
        self.Q = Q
        self.table = dict(table)
        self.index = RangeSum2D([(u, v, c) for (u, v), c in sorted(self.table.items()) if c > 0])

    @property
    def point_count(self) -> int:
        return self.index.size

    @property
    def stored_entries(self) -> int:
        return self.index.stored_entries

    @property
    def total(self) -> int:
        return self.index.total

    def query(self, q, meter: DelayMeter | None = None) -> int:
        lo, hi = self.G.rank_range(q)
        if lo > hi:
            return 0
        # occurrence inside V_q  <=>  min vertex >= lo and max vertex <= hi
        return self.index.query(lo, INF, -INF, hi, meter)


def registration_table(G: AttributedGraph, Q: PatternGraph) -> Counter:
    table: Counter = Counter()
    for occ in all_occurrences(G, Q):
        table[occ.vertices[0], occ.vertices[-1]] += 1
    return table


def build_generic_count(G: AttributedGraph, Q: PatternGraph) -> CountIndex:
    return CountIndex(G, Q, registration_table(G, Q))


def build_clique_count(G: AttributedGraph, size: int) -> CountIndex:
    """Clique counting; each registration pair is an edge, so at most m points."""
    if not 2 <= size <= 8:
        raise ValueError("clique size must lie in [2, 8]")
    idx = build_generic_count(G, PatternGraph.clique(size))
    for u, v in idx.table:
        assert G.has_edge(u, v), "clique registered at a non-edge"
    return idx


def query_count(idx: CountIndex, q, meter: DelayMeter | None = None) -> int:
    return idx.query(q, meter)

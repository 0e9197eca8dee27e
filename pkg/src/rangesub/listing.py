"""Range subgraph listing for arbitrary patterns through a range join.

Each pattern edge ``{a, b}`` becomes a binary relation over ``(X_a, X_b)``
holding both orientations of every graph edge.  A join tuple is an
edge-preserving map from the pattern into G; tuples that repeat a vertex
are degenerate and dropped.  Every occurrence surfaces once per
automorphism of the pattern, which is the duplicate bound handed to the
dedup buffer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .enumeration import DelayMeter, dedup_enumerate
from .graph import AttributedGraph, Occurrence, PatternGraph
from .join import Box, JoinInstance, RangeJoinIndex, Relation, build_range_join


def encode_pattern_join(G: AttributedGraph, Q: PatternGraph) -> JoinInstance:
    """One relation per pattern edge; values are vertex ranks shifted to 1..n."""
    both = []
    for u, v in G.edges():
        both.append((u + 1, v + 1))
        both.append((v + 1, u + 1))
    rels = [Relation(f"R{a}_{b}", (f"X{a}", f"X{b}"), tuple(both)) for a, b in sorted(Q.edges)]
    return JoinInstance(rels, [f"X{i}" for i in range(Q.k)], ranked=True, domain=max(1, G.n))


def tuple_occurrence(G: AttributedGraph, Q: PatternGraph, row) -> Occurrence | None:
    """The occurrence a join tuple names, or ``None`` for a degenerate tuple."""
    mapping = tuple(v - 1 for v in row)
    if len(set(mapping)) != Q.k:
        return None
    if not all(G.has_edge(mapping[a], mapping[b]) for a, b in Q.edges):
        return None
    return Occurrence.from_mapping(Q, mapping)


@dataclass
class ListIndex:
    G: AttributedGraph
    Q: PatternGraph
    join: RangeJoinIndex
    alpha: int
    pruned_boxes: int = 0

    @property
    def stored_boxes(self) -> int:
        return self.join.stored_boxes

    def occurrences_of(self, box: Box) -> set[Occurrence]:
        out = set()
        for row in self.join.inst.generic_join(box):
            occ = tuple_occurrence(self.G, self.Q, row)
            if occ is not None:
                out.add(occ)
        return out

    def source(self, lo: int, hi: int, meter: DelayMeter | None = None) -> Iterator[Occurrence]:
        """Valid occurrences from the range join, with repeats (at most ``alpha`` each)."""
        G, Q = self.G, self.Q
        for row in self.join.query(lo + 1, hi + 1, meter):
            if meter is not None:
                meter.tick(Q.k + len(Q.edges))
            occ = tuple_occurrence(G, Q, row)
            if occ is not None:
                yield occ


def build_generic_list(G: AttributedGraph, Q: PatternGraph, delta) -> ListIndex:
    """Range-join index whose covers keep only boxes that add a new occurrence."""
    join = build_range_join(encode_pattern_join(G, Q), delta)
    idx = ListIndex(G, Q, join, Q.automorphism_count())
    memo: dict[Box, frozenset] = {}
    for combo, cover in join.heavy.items():
        kept, covered = [], set()
        for box in cover:
            occs = memo.get(box)
            if occs is None:
                occs = memo[box] = frozenset(idx.occurrences_of(box))
            if occs - covered:
                kept.append(box)
                covered |= occs
            else:
                idx.pruned_boxes += 1
        join.heavy[combo] = kept
    return idx


def query_generic_list(idx: ListIndex, q, meter: DelayMeter | None = None
                       ) -> Iterator[Occurrence]:
    """Occurrences inside G_q, each exactly once."""
    meter = meter if meter is not None else DelayMeter()
    lo, hi = idx.G.rank_range(q)
    if lo > hi:
        return iter(())
    return dedup_enumerate(idx.source(lo, hi, meter), idx.alpha, None, meter)

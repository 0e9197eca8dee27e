"""Range listing of even cycles ``C_{2l}`` through anchor-pair path catalogs.

The smallest vertex of a ``2l``-cycle (its anchor ``u``) and the vertex
opposite it (``v``) split the cycle into two ``l``-paths from ``u`` to ``v``
whose interiors are disjoint.  Every ``l``-path starting at its own minimum
is catalogued under its endpoint pair; a path's point is its sorted
interior ranks followed by the path maximum.  Interior-disjoint partners of
a path are exactly the catalogued paths whose interior ranks avoid the
path's, which is a union of ``l^(l-1)`` boxes in point space.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .enumeration import DelayMeter, dedup_enumerate, log_cost
from .geometry import INF, RangeReportKD
from .graph import AttributedGraph, Occurrence, PatternGraph

Path = tuple[int, ...]  # (u, w_1, ..., w_{l-1}, v)

MAX_HALF_LENGTH = 4


def anchor_paths(G: AttributedGraph, ell: int) -> Iterator[Path]:
    """Simple ``ell``-edge paths whose first vertex is their strict minimum."""
    adj = G.adj
    for u in range(G.n):
        path = [u]
        on_path = {u}

        def grow():
            if len(path) == ell + 1:
                yield tuple(path)
                return
            for y in adj[path[-1]]:
                if y > u and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    yield from grow()
                    on_path.discard(y)
                    path.pop()

        yield from grow()


def path_point(p: Path) -> tuple[int, ...]:
    return (*sorted(p[1:-1]), max(p))


def avoiding_boxes(interior: tuple[int, ...], hi: float = INF) -> list[tuple[tuple[float, float], ...]]:
    """Boxes whose union is every point with no interior coordinate in ``interior``.

    Each coordinate picks one of the open gaps around the sorted ``interior``
    values; the last side bounds the path maximum by ``hi``.
    """
    cuts = sorted(interior)
    gaps = []
    prev = -INF
    for c in cuts:
        gaps.append((prev + 1, c - 1))
        prev = c
    gaps.append((prev + 1, INF))
    gaps = [g for g in gaps if g[0] <= g[1]]
    return [(*sides, (-INF, hi)) for sides in product(gaps, repeat=len(cuts))]


@dataclass
class CyclePathCatalog:
    ell: int
    groups: dict[tuple[int, int], list[Path]]
    trees: dict[tuple[int, int], RangeReportKD]

    @property
    def paths(self) -> int:
        return sum(len(g) for g in self.groups.values())

    @property
    def stored_entries(self) -> int:
        return sum(t.stored_entries for t in self.trees.values())

    def space_bound(self, c: float) -> float:
        """``c * #P * (1 + log2 #P)^(l-1)``."""
        P = max(2, self.paths)
        return c * P * log_cost(P) ** (self.ell - 1)


@dataclass
class CycleIndex:
    G: AttributedGraph
    ell: int
    catalog: CyclePathCatalog
    contributing: RangeReportKD
    best_max: dict[Path, int] = field(default_factory=dict)

    def delay_bound(self, c: float) -> float:
        """``c * (1 + log2 #P)^(l+1)``."""
        return c * log_cost(max(2, self.catalog.paths)) ** (self.ell + 1)


def build_cycle_index(G: AttributedGraph, ell: int) -> CycleIndex:
    if not 2 <= ell <= MAX_HALF_LENGTH:
        raise ValueError(f"half length must lie in [2, {MAX_HALF_LENGTH}]")
    groups: dict[tuple[int, int], list[Path]] = defaultdict(list)
    for p in anchor_paths(G, ell):
        groups[p[0], p[-1]].append(p)
    trees = {key: RangeReportKD([path_point(p) for p in ps], ps, dims=ell)
             for key, ps in groups.items()}
    catalog = CyclePathCatalog(ell, dict(groups), trees)
    pts, pay, best = [], [], {}
    for key, ps in groups.items():
        tree = trees[key]
        for p in ps:
            partner = None
            for box in avoiding_boxes(p[1:-1]):
                v = tree.min_in_box(box)
                if v is not None and (partner is None or v < partner):
                    partner = v
            if partner is None:
                continue
            w = max(max(p), partner)
            best[p] = w
            pts.append((p[0], w))
            pay.append(p)
    return CycleIndex(G, ell, catalog, RangeReportKD(pts, pay, dims=2), best)


def _cycle_of(p: Path, p2: Path) -> tuple[int, ...]:
    return (*p, *reversed(p2[1:-1]))


def cycle_source(idx: CycleIndex, lo: int, hi: int, meter: DelayMeter | None = None
                 ) -> Iterator[Occurrence]:
    """Each cycle of ``G_q`` twice, once from either half."""
    G, Q = idx.G, PatternGraph.cycle(2 * idx.ell)
    trees = idx.catalog.trees
    for p in idx.contributing.report(((lo, INF), (-INF, hi)), meter):
        tree = trees[p[0], p[-1]]
        for box in avoiding_boxes(p[1:-1], hi):
            for p2 in tree.report(box, meter):
                seq = _cycle_of(p, p2)
                if meter is not None:
                    meter.tick(len(seq))
                assert len(set(seq)) == len(seq) and all(
                    G.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))), \
                    f"joined halves {p} and {p2} are not a simple cycle"
                yield Occurrence.from_mapping(Q, seq)


def query_cycles(idx: CycleIndex, q, meter: DelayMeter | None = None) -> Iterator[Occurrence]:
    """Every ``2l``-cycle inside ``G_q`` exactly once."""
    meter = meter if meter is not None else DelayMeter()
    lo, hi = idx.G.rank_range(q)
    if lo > hi:
        return iter(())
    return dedup_enumerate(cycle_source(idx, lo, hi, meter), 2, None, meter)


def contributes(G: AttributedGraph, ell: int, p: Path, q) -> bool:
    """Brute force: is ``p`` one half of a ``2l``-cycle inside ``G_q`` anchored at ``p[0]``?"""
    lo, hi = G.rank_range(q)
    if not all(lo <= x <= hi for x in p):
        return False
    inner = set(p[1:-1])
    for p2 in anchor_paths(G, ell):
        if p2[0] == p[0] and p2[-1] == p[-1] and not inner & set(p2[1:-1]) \
                and all(lo <= x <= hi for x in p2):
            return True
    return False

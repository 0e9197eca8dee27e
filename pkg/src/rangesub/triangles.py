"""Output-sensitive range triangle listing.

Three pieces:

* the *RTE* index: for every edge, sentinel points that decide in one 2D
  dominance test whether the edge lies on a triangle of ``G_q``; each point
  carries one witness triangle;
* the doubling lister (``sdtl``): lists every triangle of a graph except a
  forbidden set, pacing a known free set across geometrically growing runs
  of a pluggable k-triangle lister;
* the assembly: the witness stream goes through a dedup buffer; whatever the
  buffer still holds when the stream ends becomes the free set, and what it
  has already emitted becomes the forbidden set.

Triangles are vertex-rank triples ``(u, v, w)`` with ``u < v < w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .enumeration import DedupBuffer, DelayMeter, log_cost
from .geometry import INF, RangeReportKD, report_delay_bound
from .graph import AttributedGraph, Occurrence, PatternGraph

Edge = tuple[int, int]
Triangle = tuple[int, int, int]

TRIANGLE_ALPHA = 18
_TRIANGLE = PatternGraph.triangle()


class InvariantError(AssertionError):
    """An internal accounting invariant of the triangle lister failed."""


# --------------------------------------------------------------------------
# RTE
# --------------------------------------------------------------------------

@dataclass
class RteIndex:
    G: AttributedGraph
    type1: RangeReportKD
    type2: RangeReportKD
    type3: RangeReportKD
    sentinels: dict[str, dict[Edge, int]] = field(default_factory=dict)

    @property
    def point_counts(self) -> tuple[int, int, int]:
        return self.type1.size, self.type2.size, self.type3.size

    def delay_bound(self) -> float:
        """Work between two stream items: three report indexes back to back."""
        return 3 * report_delay_bound(max(2, self.G.m), 2) + 8


def build_rte(G: AttributedGraph) -> RteIndex:
    pts1, pay1, pts2, pay2, pts3, pay3 = [], [], [], [], [], []
    s1: dict[Edge, int] = {}
    s2: dict[Edge, int] = {}
    s3: dict[Edge, int] = {}
    adj = [set(nb) for nb in G.adj]
    for a, b in G.edges():
        common = adj[a] & adj[b]
        if not common:
            continue
        above = [w for w in common if w > b]
        below = [w for w in common if w < a]
        middle = [w for w in common if a < w < b]
        if above:
            w = min(above)
            s1[a, b] = w
            pts1.append((a, w))
            pay1.append(((a, b), (a, b, w)))
        if below:
            u = max(below)
            s2[a, b] = u
            pts2.append((u, b))
            pay2.append(((a, b), (u, a, b)))
        if middle:
            v = min(middle)
            s3[a, b] = v
            pts3.append((a, b))
            pay3.append(((a, b), (a, v, b)))
    return RteIndex(G, RangeReportKD(pts1, pay1, dims=2), RangeReportKD(pts2, pay2, dims=2),
                    RangeReportKD(pts3, pay3, dims=2), {"type1": s1, "type2": s2, "type3": s3})


def rte_pairs(idx: RteIndex, lo: int, hi: int, meter: DelayMeter | None = None
              ) -> Iterator[tuple[Edge, Triangle]]:
    """``(edge, witness triangle)`` for every point inside ``[lo, inf) x (-inf, hi]``."""
    if lo > hi:
        return
    box = ((lo, INF), (-INF, hi))
    for part in (idx.type1, idx.type2, idx.type3):
        yield from part.report(box, meter)


def query_rte(idx: RteIndex, q, meter: DelayMeter | None = None
              ) -> tuple[Iterator[Edge], Iterator[Triangle]]:
    """Edge stream (each edge of E*_q at most 3 times) and witness triangle stream."""
    lo, hi = idx.G.rank_range(q)
    edges = (e for e, _ in rte_pairs(idx, lo, hi, meter))
    tris = (t for _, t in rte_pairs(idx, lo, hi, meter))
    return edges, tris


# --------------------------------------------------------------------------
# k-triangle listers
# --------------------------------------------------------------------------

Lister = Callable[[Mapping[int, set], DelayMeter], Iterable["Triangle | None"]]


def forward_lister(adj: Mapping[int, set], meter: DelayMeter) -> Iterator[Triangle | None]:
    """Degree-ordered forward listing; ``None`` marks a unit of work.

    Each edge is oriented towards the endpoint later in (degree, vertex)
    order, so out-neighbourhoods have size ``O(sqrt m)`` and the whole pass
    costs ``O(m^{3/2})``.
    """
    key = {v: (len(nb), v) for v, nb in adj.items()}
    out = {v: {w for w in nb if key[w] > key[v]} for v, nb in adj.items()}
    for u in sorted(adj, key=key.__getitem__):
        meter.tick()
        yield None
        ou = out[u]
        for v in sorted(ou):
            ov = out[v]
            small, large = (ou, ov) if len(ou) <= len(ov) else (ov, ou)
            meter.tick(1 + len(small))
            yield None
            for w in sorted(small):
                if w in large:
                    yield tuple(sorted((u, v, w)))


def forward_work_bound(m: int) -> float:
    """Upper bound on the ticks of one full :func:`forward_lister` pass."""
    return 3 * m + m * math.ceil(math.sqrt(2 * m)) + 1


# --------------------------------------------------------------------------
# doubling framework
# --------------------------------------------------------------------------

@dataclass
class SdtlStats:
    k0: int = 0
    schedule: list[int] = field(default_factory=list)
    yes_sizes: list[int] = field(default_factory=list)
    runs: int = 0
    out: int | None = None
    paced: int = 0
    flushed: int = 0


def sdtl(adj: Mapping[int, set], free: Iterable[Triangle], forbidden: Iterable[Triangle],
         meter: DelayMeter | None = None, lister: Lister = forward_lister,
         work_bound: Callable[[int], float] = forward_work_bound,
         stats: SdtlStats | None = None) -> Iterator[Triangle]:
    """Every triangle of ``adj`` outside ``forbidden``, each once, ``free`` included.

    Run ``i`` asks the lister for its first ``k_i = 3^i k_0`` triangles.
    While it works, the free set left by the previous run is released one
    triangle per ``T / |free|`` units, ``T`` being the lister's work bound.
    A run that returns fewer than ``k_i`` triangles has seen all of them.
    """
    meter = meter if meter is not None else DelayMeter()
    stats = stats if stats is not None else SdtlStats()
    free = sorted(set(free))
    no = set(forbidden)
    m_star = sum(len(nb) for nb in adj.values()) // 2
    if no & set(free):
        raise ValueError("free and forbidden sets overlap")
    if len(no) > 3 * m_star:
        raise ValueError("forbidden set larger than 3m*")
    if 18 * len(free) < m_star:
        raise ValueError("free set smaller than m*/18")
    for t in (*free, *no):
        u, v, w = t
        if not (v in adj.get(u, ()) and w in adj.get(u, ()) and w in adj.get(v, ())):
            raise ValueError(f"{t} is not a triangle of the graph")

    T = work_bound(m_star)
    yes = list(reversed(free))  # pop() releases in sorted order
    k0 = max(1, len(no) + len(yes))
    stats.k0 = k0
    i, k_prev = 0, None
    while True:
        i += 1
        k = 3 ** i * k0
        stats.schedule.append(k)
        stats.yes_sizes.append(len(yes))
        if i >= 2 and not 2 * len(yes) >= k_prev:
            raise InvariantError(f"run {i}: |yes|={len(yes)} < k_{i-1}/2={k_prev / 2}")
        stats.runs += 1
        interval = T / len(yes) if yes else INF
        mark = meter.work
        raw: list[Triangle] = []
        for item in lister(adj, meter):
            if item is not None:
                raw.append(item)
                if len(raw) == k:
                    break
            while yes and meter.work - mark >= interval:
                mark += interval
                t = yes.pop()
                no.add(t)
                stats.paced += 1
                yield t
        while yes:
            meter.tick()
            t = yes.pop()
            no.add(t)
            stats.flushed += 1
            yield t
        fresh = [t for t in raw if t not in no]
        if len(raw) < k:
            stats.out = len(raw)
            for t in fresh:
                meter.tick()
                no.add(t)
                yield t
            return
        yes = list(reversed(fresh))
        k_prev = k


# --------------------------------------------------------------------------
# assembly
# --------------------------------------------------------------------------

@dataclass
class TriangleQueryStats:
    m_star: int = 0
    rte_outputs: int = 0
    distinct: int = 0
    emitted_during_rte: int = 0
    buffered_at_rte_end: int = 0
    sdtl: SdtlStats = field(default_factory=SdtlStats)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise InvariantError(msg)


def query_triangles(G: AttributedGraph, idx: RteIndex, q, meter: DelayMeter | None = None,
                    stats: TriangleQueryStats | None = None,
                    lister: Lister = forward_lister) -> Iterator[Occurrence]:
    """Triangles of ``G_q``, each exactly once."""
    meter = meter if meter is not None else DelayMeter()
    stats = stats if stats is not None else TriangleQueryStats()
    lo, hi = G.rank_range(q)
    if lo > hi:
        return
    adj: dict[int, set] = {}

    def witnesses():
        for (a, b), t in rte_pairs(idx, lo, hi, meter):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
            yield t

    buf = DedupBuffer(TRIANGLE_ALPHA, idx.delay_bound(), meter)
    for t in buf.epochs_of(witnesses()):
        yield _occ(t)

    m_star = sum(len(nb) for nb in adj.values()) // 2
    stats.m_star = m_star
    stats.rte_outputs = buf.source_outputs
    stats.distinct = buf.distinct
    stats.emitted_during_rte = buf.emitted
    stats.buffered_at_rte_end = len(buf.pending)
    limit = (3 * m_star + 1) / 18
    _check(buf.emitted <= limit, f"emitted {buf.emitted} > (3m*+1)/18 = {limit}")
    _check(len(buf.pending) >= buf.distinct - limit, "buffer holds fewer than |S| - (3m*+1)/18")
    _check(3 * buf.distinct >= m_star and buf.distinct <= 3 * m_star,
           f"|S|={buf.distinct} outside [m*/3, 3m*] for m*={m_star}")
    if not m_star:
        return
    emitted = set(buf.seen) - {buf.key(t) for t in buf.pending}
    for t in sdtl(adj, list(buf.pending), emitted, meter, lister=lister, stats=stats.sdtl):
        yield _occ(t)


def _occ(t: Triangle) -> Occurrence:
    return Occurrence.from_mapping(_TRIANGLE, t)


def triangle_work_bound(m_star: int, m: int, c: float) -> float:
    """``c * m* * (1 + log2 m)^3 + c * (1 + log2 m)^2``."""
    lg = log_cost(max(2, m))
    return c * m_star * lg ** 3 + c * lg ** 2

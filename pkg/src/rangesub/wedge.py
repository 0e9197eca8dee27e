"""Range wedge counting with a tunable space/query tradeoff.

Three layers:

* :class:`WeightedSetFamily` -- weighted set intersection sizes; sums for
  pairs of large sets (more than ``lam`` elements) are tabulated, everything
  else is answered by probing the smaller set in ``O(lam)``.
* :class:`ColoredWedgeIndex` -- counts wedges ``u - b - w`` with ``u, w`` in
  an interval and centre ``b`` black, from the weighted sets ``S_U`` of a
  canonical collection.
* :class:`WedgeIndex` -- for every member ``U`` of a canonical collection of
  ``V``, a colored index on the edges incident to ``U`` with ``U`` black.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .enumeration import DelayMeter, log_cost
from .geometry import CanonicalCollection
from .graph import AttributedGraph


class ParameterError(ValueError):
    pass


def _check_lambda(lam: float, size: int, what: str) -> None:
    top = max(1.0, math.sqrt(size))
    if not 1 <= lam <= top * (1 + 1e-12):
        raise ParameterError(f"lambda={lam} outside [1, sqrt({what})={top:.6g}]")


class WeightedSetFamily:
    """Sets ``S_i`` with per-element weights and the large-pair table."""

    def __init__(self, sets: Iterable[Mapping[Hashable, int]], lam: float):
        self.sets = [dict(s) for s in sets]
        self.lam = lam
        self.N = sum(len(s) for s in self.sets)
        self.large = [i for i, s in enumerate(self.sets) if len(s) > lam]
        large = set(self.large)
        inverted: dict = defaultdict(list)
        for i in self.large:
            for e, w in self.sets[i].items():
                inverted[e].append((i, w))
        table: Counter = Counter()
        for holders in inverted.values():
            for (i, wi), (j, wj) in combinations(holders, 2):
                table[i, j] += wi * wj
        # zero entries are implicit for large pairs that never share an element
        self.table = dict(table)
        self._large = large

    @property
    def stored_entries(self) -> int:
        n_large = len(self.large)
        return self.N + n_large * (n_large - 1) // 2

    def size(self, a: int, b: int, meter: DelayMeter | None = None) -> int:
        """``sum_{e in S_a ∩ S_b} weight_a(e) * weight_b(e)``."""
        if a == b:
            raise ValueError("size() needs distinct set ids")
        if not (0 <= a < len(self.sets) and 0 <= b < len(self.sets)):
            raise KeyError(f"unknown set id {a if not 0 <= a < len(self.sets) else b}")
        if a in self._large and b in self._large:
            if meter is not None:
                meter.tick()
            return self.table.get((min(a, b), max(a, b)), 0)
        sa, sb = self.sets[a], self.sets[b]
        if len(sa) > len(sb):
            sa, sb = sb, sa
        if meter is not None:
            meter.tick(len(sa) + 1)
        return sum(w * sb[e] for e, w in sa.items() if e in sb)


def wsis_build(sets, lam: float) -> WeightedSetFamily:
    sets = [dict(s) for s in sets]
    _check_lambda(lam, sum(len(s) for s in sets), "N")
    return WeightedSetFamily(sets, lam)


def wsis_query(fam: WeightedSetFamily, a: int, b: int, meter: DelayMeter | None = None) -> int:
    return fam.size(a, b, meter)


class ColoredWedgeIndex:
    """Colored range wedge counting on a graph given by its adjacency map.

    ``adj`` maps every vertex (a global rank) to its neighbours; ``black`` is
    the set of black vertices.
    """

    def __init__(self, adj: Mapping[int, Iterable[int]], black: set, lam: float):
        self.collection = CanonicalCollection(sorted(adj))
        self.nodes = self.collection.members()
        self.slot = {node: i for i, node in enumerate(self.nodes)}
        weighted = []
        for node in self.nodes:
            s: Counter = Counter()
            for x in self.collection.member(node):
                for b in adj[x]:
                    if b in black:
                        s[b] += 1
            weighted.append(s)
        self.family = WeightedSetFamily(weighted, lam)
        self.diagonal = [sum(w * (w - 1) // 2 for w in s.values()) for s in weighted]

    @property
    def stored_entries(self) -> int:
        return self.family.stored_entries + len(self.diagonal)

    def cover(self, lo: int, hi: int, meter: DelayMeter | None = None) -> list[int]:
        return [self.slot[node] for node in self.collection.cover(lo, hi, meter)]

    def query(self, lo: int, hi: int, meter: DelayMeter | None = None) -> int:
        parts = self.cover(lo, hi, meter)
        total = 0
        for x, i in enumerate(parts):
            total += self.diagonal[i]
            for j in parts[x + 1:]:
                total += self.family.size(i, j, meter)
        if meter is not None:
            meter.tick(len(parts))
        return total

    def terms(self, lo: int, hi: int) -> list[tuple[int, int, int]]:
        """``(i, j, size)`` for every term of a query, ``i <= j`` in cover order."""
        parts = self.cover(lo, hi)
        out = []
        for x, i in enumerate(parts):
            out.append((i, i, self.diagonal[i]))
            for j in parts[x + 1:]:
                out.append((i, j, self.family.size(i, j)))
        return out

    def term_wedges(self, i: int, j: int, adj: Mapping[int, Iterable[int]], black: set
                    ) -> list[tuple[int, int, int]]:
        """Wedges ``(u, b, w)`` attributed to term ``(i, j)``, enumerated directly."""
        coll = self.collection
        Ui = coll.member(self.nodes[i])
        Uj = coll.member(self.nodes[j])
        out = []
        for u in Ui:
            for w in Uj:
                if u == w or (i == j and w < u):
                    continue
                for b in set(adj[u]) & set(adj[w]):
                    if b in black:
                        out.append((min(u, w), b, max(u, w)))
        return out


def colored_build(G: AttributedGraph, black: set, lam: float) -> ColoredWedgeIndex:
    _check_lambda(lam, G.m, "m")
    return ColoredWedgeIndex({v: G.adj[v] for v in range(G.n)}, set(black), lam)


def colored_query(idx: ColoredWedgeIndex, G: AttributedGraph, q,
                  meter: DelayMeter | None = None) -> int:
    lo, hi = G.rank_range(q)
    if lo > hi:
        return 0
    return idx.query(lo, hi, meter)


class WedgeIndex:
    """Range wedge counting in ``~O(m^2/lam^2)`` space and ``~O(lam)`` query work."""

    def __init__(self, G: AttributedGraph, lam: float):
        _check_lambda(lam, G.m, "m")
        self.G = G
        self.lam = lam
        self.collection = CanonicalCollection(list(range(G.n)))
        self.inner: dict[int, ColoredWedgeIndex] = {}
        self.edge_copies = 0
        for node in self.collection.members():
            U = self.collection.member(node)
            adj_u = self.local_graph(U)
            self.edge_copies += sum(len(nb) for nb in adj_u.values()) // 2
            self.inner[node] = ColoredWedgeIndex(adj_u, set(U), lam)

    def local_graph(self, U) -> dict[int, list[int]]:
        """Adjacency of G_U: every edge of G with an endpoint in ``U``."""
        G = self.G
        inside = set(U)
        adj: dict[int, list[int]] = {u: list(G.adj[u]) for u in U}
        for u in U:
            for y in G.adj[u]:
                if y not in inside:
                    adj.setdefault(y, []).append(u)
        return adj

    @property
    def stored_entries(self) -> int:
        return self.edge_copies + sum(ix.stored_entries for ix in self.inner.values())

    def query(self, q, meter: DelayMeter | None = None) -> int:
        lo, hi = self.G.rank_range(q)
        if lo > hi:
            return 0
        total = 0
        for node in self.collection.cover(lo, hi, meter):
            total += self.inner[node].query(lo, hi, meter)
        return total

    def attribution(self, q) -> dict[tuple[int, int, int], list[tuple[int, int, int]]]:
        """Wedges of G_q keyed by (outer member, inner term i, inner term j)."""
        lo, hi = self.G.rank_range(q)
        out = {}
        if lo > hi:
            return out
        for node in self.collection.cover(lo, hi):
            U = self.collection.member(node)
            inner = self.inner[node]
            adj_u = self.local_graph(U)
            for i, j, _ in inner.terms(lo, hi):
                out[node, i, j] = inner.term_wedges(i, j, adj_u, set(U))
        return out


def wedge_build(G: AttributedGraph, lam: float) -> WedgeIndex:
    return WedgeIndex(G, lam)


def wedge_query(idx: WedgeIndex, q, meter: DelayMeter | None = None) -> int:
    return idx.query(q, meter)


def space_bound(m: int, lam: float, c: float) -> float:
    """``c * (m^2 / lam^2) * (1 + log2 m)^3``."""
    return c * (m * m / (lam * lam)) * log_cost(m) ** 3

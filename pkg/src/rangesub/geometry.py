"""Static geometric indexes: 2D weighted range sums, k-dimensional range
reporting with bounded-delay iteration, and canonical interval collections.

All three are built on the same implicit balanced tree over sorted
positions.  Node ``1`` covers ``[0, size)``; node ``x`` covering ``[a, b)``
has children ``2x`` over ``[a, mid)`` and ``2x + 1`` over ``[mid, b)`` with
``mid = (a + b) // 2``.  The tree has depth ``ceil(log2 size)``.

These are layered (merge-sort-tree) structures using ``O(n log^{k-1} n)``
space rather than the linear-space 2D structures from the literature; the
query interface is the same.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from itertools import accumulate
from typing import Any, Iterator, Sequence

from .enumeration import DelayMeter, log_cost

INF = math.inf
Box = Sequence[tuple[float, float]]


def canonical_nodes(lo: int, hi: int, size: int, meter: DelayMeter | None = None
                    ) -> list[tuple[int, int, int]]:
    """Nodes ``(id, a, b)`` whose ranges partition ``[lo, hi)``, left to right."""
    out = []
    if lo >= hi or size <= 0:
        return out
    stack = [(1, 0, size)]
    visited = 0
    while stack:
        node, a, b = stack.pop()
        visited += 1
        if lo <= a and b <= hi:
            out.append((node, a, b))
            continue
        mid = (a + b) // 2
        if hi > mid:
            stack.append((2 * node + 1, mid, b))
        if lo < mid:
            stack.append((2 * node, a, mid))
    if meter is not None:
        meter.tick(visited)
    return out


def tree_nodes(size: int) -> Iterator[tuple[int, int, int]]:
    """Every node ``(id, a, b)`` of the tree over ``[0, size)``."""
    if size <= 0:
        return
    stack = [(1, 0, size)]
    while stack:
        node, a, b = stack.pop()
        yield node, a, b
        if b - a > 1:
            mid = (a + b) // 2
            stack.append((2 * node + 1, mid, b))
            stack.append((2 * node, a, mid))


class CanonicalCollection:
    """Subsets of ``keys`` (sorted) given by the nodes of a balanced tree.

    Every key lies in at most ``1 + ceil(log2 n)`` members, and any interval
    of keys is the disjoint union of at most ``2 ceil(log2 n)`` members.
    """

    def __init__(self, keys: Sequence):
        self.keys = list(keys)
        if any(self.keys[i] > self.keys[i + 1] for i in range(len(self.keys) - 1)):
            raise ValueError("keys must be sorted")
        self.size = len(self.keys)
        self.ranges = {node: (a, b) for node, a, b in tree_nodes(self.size)}

    def members(self) -> list[int]:
        return sorted(self.ranges)

    def member(self, node: int) -> list:
        a, b = self.ranges[node]
        return self.keys[a:b]

    def cover(self, lo, hi, meter: DelayMeter | None = None) -> list[int]:
        """Member ids partitioning the keys ``k`` with ``lo <= k <= hi``."""
        if lo > hi:
            return []
        i = bisect_left(self.keys, lo)
        j = bisect_right(self.keys, hi)
        if meter is not None:
            meter.tick(2 * log_cost(self.size))
        return [node for node, _, _ in canonical_nodes(i, j, self.size, meter)]

    def containing(self, key) -> list[int]:
        """Members containing ``key`` (root to leaf)."""
        i = bisect_left(self.keys, key)
        if i == self.size or self.keys[i] != key:
            return []
        out, node, a, b = [], 1, 0, self.size
        while True:
            out.append(node)
            if b - a == 1:
                return out
            mid = (a + b) // 2
            if i < mid:
                node, b = 2 * node, mid
            else:
                node, a = 2 * node + 1, mid

    def total_size(self) -> int:
        return sum(b - a for a, b in self.ranges.values())


class RangeSum2D:
    """Weighted 2D points answering rectangle sums in ``O(log^2 n)`` work."""

    def __init__(self, points: Sequence[tuple[float, float, int]]):
        pts = sorted(points, key=lambda p: (p[0], p[1]))
        for p in pts:
            if p[2] < 0:
                raise ValueError("weights must be non-negative")
        self.size = len(pts)
        self.xs = [p[0] for p in pts]
        self.total = sum(p[2] for p in pts)
        self._ys: dict[int, list] = {}
        self._pref: dict[int, list] = {}
        if pts:
            self._build(1, 0, self.size, pts)

    def _build(self, node, a, b, pts) -> list[tuple]:
        if b - a == 1:
            col = [(pts[a][1], pts[a][2])]
        else:
            mid = (a + b) // 2
            left = self._build(2 * node, a, mid, pts)
            right = self._build(2 * node + 1, mid, b, pts)
            col = sorted(left + right)
        self._ys[node] = [y for y, _ in col]
        self._pref[node] = [0, *accumulate(w for _, w in col)]
        return col

    @property
    def stored_entries(self) -> int:
        return sum(len(v) for v in self._ys.values())

    def query(self, x1, x2, y1, y2, meter: DelayMeter | None = None) -> int:
        if x1 > x2 or y1 > y2 or not self.size:
            return 0
        i, j = bisect_left(self.xs, x1), bisect_right(self.xs, x2)
        if meter is not None:
            meter.tick(2 * log_cost(self.size))
        total = 0
        for node, _, _ in canonical_nodes(i, j, self.size, meter):
            ys = self._ys[node]
            a, b = bisect_left(ys, y1), bisect_right(ys, y2)
            if meter is not None:
                meter.tick(2 * log_cost(len(ys)))
            pref = self._pref[node]
            total += pref[b] - pref[a]
        return total


def build_sum2d(points) -> RangeSum2D:
    return RangeSum2D(points)


def query_sum2d(idx: RangeSum2D, rect, meter: DelayMeter | None = None) -> int:
    (x1, x2), (y1, y2) = rect
    return idx.query(x1, x2, y1, y2, meter)


class _Level:
    __slots__ = ("keys", "ids", "children")

    def __init__(self, keys, ids, children):
        self.keys = keys
        self.ids = ids
        self.children = children


class RangeReportKD:
    """Static k-dimensional range tree over points with payloads.

    ``agg_coord`` names the coordinate stored in the innermost level, which
    makes :meth:`min_in_box` on that coordinate an ``O(log^k n)`` query.
    Payloads default to the point's position in ``points``.
    """

    def __init__(self, points: Sequence[Sequence[float]], payloads: Sequence[Any] | None = None,
                 dims: int | None = None, agg_coord: int | None = None):
        self.points = [tuple(p) for p in points]
        self.dims = dims if dims is not None else (len(self.points[0]) if self.points else 1)
        if any(len(p) != self.dims for p in self.points):
            raise ValueError("points must share one dimension")
        self.payloads = list(payloads) if payloads is not None else list(range(len(self.points)))
        if len(self.payloads) != len(self.points):
            raise ValueError("one payload per point")
        self.agg_coord = self.dims - 1 if agg_coord is None else agg_coord
        if not 0 <= self.agg_coord < self.dims:
            raise ValueError("agg_coord out of range")
        self.order = [c for c in range(self.dims) if c != self.agg_coord] + [self.agg_coord]
        self.size = len(self.points)
        self.stored_entries = 0
        self._root = self._build(list(range(self.size)), 0)

    def _build(self, ids: list[int], t: int) -> _Level:
        c = self.order[t]
        ids = sorted(ids, key=lambda i: self.points[i][c])
        keys = [self.points[i][c] for i in ids]
        self.stored_entries += len(ids)
        children = None
        if t < self.dims - 1:
            children = {node: self._build(ids[a:b], t + 1) for node, a, b in tree_nodes(len(ids))}
        return _Level(keys, ids, children)

    def _lastlists(self, box: Box, meter: DelayMeter | None):
        """Yield ``(level, i, j)`` innermost slices whose union is ``P ∩ box``."""
        dims = self.dims
        order = self.order
        stack = [(self._root, 0)]
        while stack:
            level, t = stack.pop()
            lo, hi = box[order[t]]
            keys = level.keys
            i, j = bisect_left(keys, lo), bisect_right(keys, hi)
            if meter is not None:
                meter.tick(2 * log_cost(len(keys)))
            if i >= j:
                continue
            if t == dims - 1:
                yield level, i, j
            else:
                nodes = canonical_nodes(i, j, len(keys), meter)
                for node, _, _ in reversed(nodes):
                    stack.append((level.children[node], t + 1))

    def _check(self, box: Box) -> Box:
        if len(box) != self.dims:
            raise ValueError(f"box has {len(box)} sides, index has {self.dims} dimensions")
        return box

    def report(self, box: Box, meter: DelayMeter | None = None) -> Iterator[Any]:
        """Payloads of the points inside ``box`` (closed sides), each exactly once."""
        self._check(box)
        if not self.size or any(lo > hi for lo, hi in box):
            return
        payloads = self.payloads
        for level, i, j in self._lastlists(box, meter):
            ids = level.ids
            for pos in range(i, j):
                if meter is not None:
                    meter.tick()
                yield payloads[ids[pos]]

    def count(self, box: Box, meter: DelayMeter | None = None) -> int:
        self._check(box)
        if not self.size or any(lo > hi for lo, hi in box):
            return 0
        return sum(j - i for _, i, j in self._lastlists(box, meter))

    def min_in_box(self, box: Box, coord: int | None = None, meter: DelayMeter | None = None):
        """Smallest value of coordinate ``coord`` over ``P ∩ box``, or ``None``."""
        if coord is not None and coord != self.agg_coord:
            raise ValueError(f"index aggregates coordinate {self.agg_coord}, not {coord}")
        self._check(box)
        if not self.size or any(lo > hi for lo, hi in box):
            return None
        best = None
        for level, i, _ in self._lastlists(box, meter):
            v = level.keys[i]
            if best is None or v < best:
                best = v
        return best


def build_report_kd(points, payloads=None, dims=None, agg_coord=None) -> RangeReportKD:
    return RangeReportKD(points, payloads, dims=dims, agg_coord=agg_coord)


def report_kd(idx: RangeReportKD, box: Box, meter: DelayMeter | None = None) -> Iterator[Any]:
    return idx.report(box, meter)


def min_in_box(idx: RangeReportKD, box: Box, coord: int, meter: DelayMeter | None = None):
    return idx.min_in_box(box, coord, meter)


def canonical_cover(C: CanonicalCollection, q, meter: DelayMeter | None = None) -> list[int]:
    lo, hi = q
    return C.cover(lo, hi, meter)


def report_delay_bound(size: int, dims: int, c: float = 8.0) -> float:
    """Work budget between two outputs of :meth:`RangeReportKD.report`."""
    return c * log_cost(size) ** dims + 4

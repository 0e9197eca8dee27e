import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rangesub.enumeration import DelayMeter, log_cost
from rangesub.geometry import (INF, CanonicalCollection, RangeReportKD, RangeSum2D,
                               canonical_nodes, report_delay_bound)

from helpers import rng_for


class TestCanonicalCollection:
    def test_full_range_is_root(self):
        C = CanonicalCollection(list(range(1, 9)))
        assert C.cover(1, 8) == [1]

    def test_two_to_seven(self):
        C = CanonicalCollection(list(range(1, 9)))
        parts = [C.member(x) for x in C.cover(2, 7)]
        assert parts == [[2], [3, 4], [5, 6], [7]]

    def test_empty_and_outside(self):
        C = CanonicalCollection(list(range(1, 9)))
        assert C.cover(5, 4) == []
        assert C.cover(20, 30) == []

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError):
            CanonicalCollection([2, 1])

    @given(st.integers(1, 70), st.data())
    @settings(max_examples=150, deadline=None)
    def test_partition_and_bounds(self, n, data):
        C = CanonicalCollection(list(range(n)))
        lo = data.draw(st.integers(-2, n + 1))
        hi = data.draw(st.integers(-2, n + 1))
        parts = [C.member(x) for x in C.cover(lo, hi)]
        got = list(itertools.chain.from_iterable(parts))
        assert got == [k for k in range(n) if lo <= k <= hi]
        depth = max(1, (n - 1).bit_length())
        assert len(parts) <= 2 * depth
        for k in range(n):
            assert len(C.containing(k)) <= 1 + depth

    def test_containing_matches_members(self):
        C = CanonicalCollection(list(range(13)))
        for k in range(13):
            assert set(C.containing(k)) == {x for x in C.members() if k in C.member(x)}


class TestRangeSum2D:
    def test_example(self):
        idx = RangeSum2D([(1, 1, 2), (2, 3, 5)])
        assert idx.query(1, 2, 1, 3) == 7
        assert idx.query(1, 1, 1, 3) == 2
        assert idx.query(3, 9, 0, 9) == 0

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            RangeSum2D([(0, 0, -1)])

    def test_against_naive(self):
        rng = rng_for(21)
        for trial in range(40):
            pts = [(int(x), int(y), int(w)) for x, y, w in
                   zip(rng.integers(0, 12, 40), rng.integers(0, 12, 40), rng.integers(0, 5, 40))]
            idx = RangeSum2D(pts)
            for _ in range(30):
                x1, x2, y1, y2 = (int(v) for v in rng.integers(-1, 13, 4))
                want = sum(w for x, y, w in pts if x1 <= x <= x2 and y1 <= y <= y2)
                assert idx.query(x1, x2, y1, y2) == want

    def test_query_work_is_polylog(self):
        pts = [(i, (7 * i) % 101, 1) for i in range(1000)]
        idx = RangeSum2D(pts)
        m = DelayMeter()
        idx.query(13, 977, 5, 80, m)
        assert m.work <= 8 * log_cost(1000) ** 2


class TestRangeReport:
    def test_multiplicity(self):
        # four copies of one point, one elsewhere: each reported once
        idx = RangeReportKD([(1, 1)] * 4 + [(5, 5)], dims=2)
        assert sorted(idx.report(((0, 2), (0, 2)))) == [0, 1, 2, 3]
        assert idx.count(((0, 9), (0, 9))) == 5

    def test_side_count_checked(self):
        idx = RangeReportKD([(1, 2, 3)])
        with pytest.raises(ValueError):
            list(idx.report(((0, 1), (0, 1))))

    @pytest.mark.parametrize("dims", [1, 2, 3, 4])
    def test_against_naive(self, dims):
        rng = rng_for(22, dims)
        for _ in range(15):
            pts = [tuple(int(v) for v in rng.integers(0, 8, dims)) for _ in range(int(rng.integers(0, 40)))]
            idx = RangeReportKD(pts, dims=dims)
            for _ in range(20):
                box = []
                for _ in range(dims):
                    a, b = sorted(int(v) for v in rng.integers(-1, 9, 2))
                    box.append((a, b) if rng.random() < 0.8 else (-INF, INF))
                inside = [i for i, p in enumerate(pts) if all(lo <= x <= hi for x, (lo, hi) in zip(p, box))]
                got = list(idx.report(box))
                assert sorted(got) == inside and len(got) == len(set(got))
                assert idx.count(box) == len(inside)
                want_min = min((pts[i][dims - 1] for i in inside), default=None)
                assert idx.min_in_box(box) == want_min

    def test_report_delay(self):
        rng = rng_for(23)
        pts = [tuple(int(v) for v in rng.integers(0, 200, 2)) for _ in range(500)]
        idx = RangeReportKD(pts)
        bound = report_delay_bound(500, 2)
        for _ in range(50):
            a, b = sorted(int(v) for v in rng.integers(0, 200, 2))
            m = DelayMeter()
            for _ in idx.report(((a, b), (-INF, 120)), m):
                m.emit()
            m.finish()
            assert m.max_gap <= bound

    def test_min_wrong_coordinate(self):
        idx = RangeReportKD([(1, 2)])
        with pytest.raises(ValueError):
            idx.min_in_box(((0, 3), (0, 3)), coord=0)


def test_canonical_nodes_partition():
    for size in range(1, 40):
        for lo in range(size + 1):
            for hi in range(lo, size + 1):
                ranges = [(a, b) for _, a, b in canonical_nodes(lo, hi, size)]
                flat = [x for a, b in ranges for x in range(a, b)]
                assert flat == list(range(lo, hi))

import pytest

from rangesub.enumeration import (DedupBuffer, DelayMeter, DuplicateBoundError, dedup_enumerate,
                                  delay_bound, log_cost, metered, run_metered)
from rangesub.graph import Interval, PatternGraph, oracle_list

from helpers import rng_for


def paced(items, step, meter):
    """Source doing ``step`` units of work before each item."""
    for x in items:
        meter.tick(step)
        yield x


def test_log_cost():
    assert [log_cost(s) for s in (0, 1, 2, 3, 4, 1023, 1024)] == [1, 1, 2, 2, 3, 10, 11]


def test_meter_gaps():
    m = DelayMeter()
    m.tick(3); m.emit()
    m.tick(5); m.emit()
    m.tick(1); m.finish()
    assert m.gaps == [3, 5, 1] and m.outputs == 2 and m.max_gap == 5
    m.finish()
    assert len(m.gaps) == 3


def test_metered_counts_terminal_gap():
    out, m = run_metered(lambda meter: paced("abc", 4, meter))
    assert out == list("abc") and len(m.gaps) == 4


@pytest.mark.parametrize("delta", [None, 2.0])
def test_pairs_dedup(delta):
    m = DelayMeter()
    out = list(dedup_enumerate(paced("aabb", 2, m), 2, delta, m))
    assert out == ["a", "b"]


def test_triangle_vertex_permutations(g5):
    # every triangle of G5 appears three times (one per rotation)
    tris = sorted(o.vertices for o in oracle_list(g5, PatternGraph.triangle()))
    copies = [t[i:] + t[:i] for t in tris for i in range(3)]
    m = DelayMeter()
    out = list(dedup_enumerate(paced(copies, 3, m), 3, None, m, key=lambda t: frozenset(t)))
    assert sorted(tuple(sorted(t)) for t in out) == tris


def test_empty_source():
    m = DelayMeter()
    assert list(dedup_enumerate(iter(()), 3, 1.0, m)) == []


def test_too_many_copies_is_an_error():
    m = DelayMeter()
    with pytest.raises(DuplicateBoundError):
        list(dedup_enumerate(paced("aaa", 1, m), 2, None, m))


def test_slow_source_is_an_error_when_strict():
    m = DelayMeter()
    with pytest.raises(DuplicateBoundError):
        # promised delay 1, but the second copy of "a" arrives after 50 units
        list(dedup_enumerate(paced("aa", 50, m), 2, 1.0, m))


def test_slow_source_tolerated_when_lenient():
    m = DelayMeter()
    assert list(dedup_enumerate(paced("aab", 50, m), 2, 1.0, m, strict=False)) == ["a", "b"]


def test_bad_parameters():
    with pytest.raises(ValueError):
        DedupBuffer(0, 1.0, DelayMeter())
    with pytest.raises(ValueError):
        DedupBuffer(2, 0.0, DelayMeter())


@pytest.mark.parametrize("delta", [None, 4.0])
@pytest.mark.parametrize("alpha", [1, 2, 5])
def test_random_sources_meet_the_delay_budget(alpha, delta):
    rng = rng_for(31, alpha)
    for trial in range(30):
        n = int(rng.integers(1, 60))
        items = []
        for x in range(n):
            items += [x] * int(rng.integers(1, alpha + 1))
        order = rng.permutation(len(items))
        items = [items[i] for i in order]
        m = DelayMeter()
        steps = iter(int(s) for s in rng.integers(1, 5, len(items)))

        def source():
            for x in items:
                m.tick(next(steps))
                yield x

        out = list(metered(dedup_enumerate(source(), alpha, delta, m), m))
        assert sorted(out) == list(range(n))
        assert m.max_gap <= delay_bound(alpha, 4, n, c=4)

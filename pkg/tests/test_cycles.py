import pytest

from rangesub.enumeration import DelayMeter, metered
from rangesub.geometry import INF
from rangesub.graph import (AttributedGraph, Interval, PatternGraph, complete_graph, oracle_list,
                            random_graph, random_intervals)
from rangesub.cycles import (anchor_paths, avoiding_boxes, build_cycle_index, contributes,
                             path_point, query_cycles)

from helpers import corpus, drain, rng_for

DELAY_C = 8


def c4():
    return AttributedGraph([1, 2, 3, 4], [1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)])


def test_c4_catalog():
    G = c4()
    idx = build_cycle_index(G, 2)
    group = idx.catalog.groups[0, 2]
    assert sorted(group) == [(0, 1, 2), (0, 3, 2)]
    assert {G.attrs[idx.best_max[p]] for p in group} == {4.0}


def test_c4_queries():
    G = c4()
    idx = build_cycle_index(G, 2)
    got = drain(query_cycles(idx, Interval(1, 4)))
    assert [o.labelled(G) for o in got] == [(1, 2, 3, 4)]
    assert list(query_cycles(idx, Interval(1, 3))) == []


def test_tree_has_nothing_contributing():
    G = AttributedGraph(list(range(7)), list(range(7)), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert build_cycle_index(G, 2).contributing.size == 0


def test_k4():
    G = complete_graph(4)
    idx = build_cycle_index(G, 2)
    # five anchor-minimum endpoint pairs, three of which close a 4-cycle
    assert len(idx.catalog.groups) == 5
    assert {(p[0], p[-1]) for p in idx.best_max} == {(0, 1), (0, 2), (0, 3)}
    assert len(drain(query_cycles(idx, Interval(1, 4)))) == 3


def test_half_length_range():
    with pytest.raises(ValueError):
        build_cycle_index(c4(), 1)
    with pytest.raises(ValueError):
        build_cycle_index(c4(), 5)


def test_avoiding_boxes_partition():
    interior = (3, 7)
    boxes = avoiding_boxes(interior)
    pts = [(a, b, 0) for a in range(10) for b in range(a + 1, 10)]
    for p in pts:
        inside = [bx for bx in boxes if all(lo <= x <= hi for x, (lo, hi) in zip(p, bx))]
        assert len(inside) == (0 if {p[0], p[1]} & set(interior) else 1)


def test_anchor_paths_start_at_minimum():
    G = corpus()[7]
    for p in anchor_paths(G, 3):
        assert p[0] == min(p) and len(set(p)) == 4
        assert path_point(p) == (*sorted(p[1:-1]), max(p))


def test_contributing_membership_is_exact():
    rng = rng_for(101)
    for trial in range(15):
        G = random_graph(int(rng.integers(4, 12)), float(rng.uniform(0.3, 0.7)), rng)
        for ell in (2, 3):
            idx = build_cycle_index(G, ell)
            for lo in range(G.n):
                for hi in range(lo, G.n):
                    q = Interval(G.attrs[lo], G.attrs[hi])
                    member = set(idx.contributing.report(((lo, INF), (-INF, hi))))
                    for key, paths in idx.catalog.groups.items():
                        for p in paths:
                            assert (p in member) == contributes(G, ell, p, q)


@pytest.mark.parametrize("ell,n_max", [(2, 40), (3, 18)])
def test_against_oracle(ell, n_max):
    Q = PatternGraph.cycle(2 * ell)
    graphs = [G for G in corpus() if G.n <= n_max][:40]
    for i, G in enumerate(graphs):
        idx = build_cycle_index(G, ell)
        assert idx.catalog.stored_entries <= idx.catalog.space_bound(1.0)
        for q in random_intervals(G, 10, rng_for(102, i)):
            m = DelayMeter()
            got = drain(metered(query_cycles(idx, q, m), m))
            assert set(got) == oracle_list(G, Q, q)
            assert m.max_gap <= idx.delay_bound(DELAY_C)

import math
from collections import Counter
from itertools import combinations

import pytest

from rangesub.enumeration import DelayMeter
from rangesub.graph import Interval, PatternGraph, oracle_count, oracle_list, random_intervals
from rangesub.wedge import (ParameterError, WedgeIndex, colored_build, colored_query,
                            space_bound, wsis_build, wsis_query)

from helpers import corpus, rng_for


class TestWeightedSets:
    def test_example(self):
        fam = wsis_build([{"x": 1}, {"x": 2}], lam=1)
        assert wsis_query(fam, 0, 1) == 2

    def test_same_id_rejected(self):
        fam = wsis_build([{"x": 1}, {"y": 1}], lam=1)
        with pytest.raises(ValueError):
            wsis_query(fam, 0, 0)
        with pytest.raises(KeyError):
            wsis_query(fam, 0, 5)

    @pytest.mark.parametrize("lam", [0.5, 100])
    def test_lambda_range(self, lam):
        with pytest.raises(ParameterError):
            wsis_build([{"x": 1}, {"x": 1, "y": 1}], lam)

    def test_against_naive(self):
        rng = rng_for(51)
        for trial in range(30):
            sets = [{int(e): int(rng.integers(1, 4)) for e in rng.choice(20, int(rng.integers(0, 12)), replace=False)}
                    for _ in range(8)]
            N = sum(len(s) for s in sets)
            for lam in {1.0, max(1.0, math.sqrt(N) / 2), max(1.0, math.sqrt(N))}:
                fam = wsis_build(sets, lam)
                for a, b in combinations(range(8), 2):
                    want = sum(w * sets[b][e] for e, w in sets[a].items() if e in sets[b])
                    assert wsis_query(fam, a, b) == want

    def test_small_set_probe_work(self):
        sets = [{e: 1 for e in range(k)} for k in (2, 3, 50, 60)]
        fam = wsis_build(sets, lam=4)
        m = DelayMeter()
        fam.size(0, 3, m)
        assert m.work <= 4 + 1
        m = DelayMeter()
        fam.size(2, 3, m)   # both large: one table lookup
        assert m.work == 1


class TestColored:
    def test_all_black(self, g5):
        idx = colored_build(g5, set(range(g5.n)), lam=1)
        assert colored_query(idx, g5, Interval(1, 5)) == 10

    def test_only_vertex_three_black(self, g5):
        idx = colored_build(g5, {g5.index(3)}, lam=1)
        assert colored_query(idx, g5, Interval(1, 5)) == 3

    def test_against_brute_force(self):
        rng = rng_for(52)
        for i, G in enumerate(corpus()[:40]):
            black = {v for v in range(G.n) if rng.random() < 0.4}
            idx = colored_build(G, black, lam=max(1.0, math.sqrt(G.m) / 2))
            for q in random_intervals(G, 10, rng_for(52, i)):
                lo, hi = G.rank_range(q)
                want = 0
                for b in black:
                    d = sum(1 for v in G.adj[b] if lo <= v <= hi)
                    want += d * (d - 1) // 2
                assert colored_query(idx, G, q) == want


class TestWedgeIndex:
    def test_examples(self, g5):
        assert WedgeIndex(g5, 1).query(Interval(1, 5)) == 10
        assert WedgeIndex(g5, 2).query(Interval(2, 5)) == 5

    @pytest.mark.parametrize("lam", [0, 0.99, 2.5])
    def test_lambda_out_of_range(self, g5, lam):
        with pytest.raises(ParameterError):
            WedgeIndex(g5, lam)

    def test_each_wedge_attributed_once(self):
        W = PatternGraph.wedge()
        for i, G in enumerate(corpus()[:25]):
            ix = WedgeIndex(G, max(1.0, G.m ** 0.25))
            for q in random_intervals(G, 8, rng_for(53, i)):
                found = Counter()
                for wedges in ix.attribution(q).values():
                    found.update(wedges)
                want = {(min(o.mapping[1], o.mapping[2]), o.mapping[0], max(o.mapping[1], o.mapping[2]))
                        for o in oracle_list(G, W, q)}
                assert set(found) == want
                assert all(c == 1 for c in found.values())

    def test_against_oracle(self):
        W = PatternGraph.wedge()
        for i, G in enumerate(corpus()[:40]):
            for lam in (1.0, max(1.0, G.m ** 0.25), max(1.0, math.sqrt(G.m))):
                ix = WedgeIndex(G, lam)
                for q in random_intervals(G, 10, rng_for(54, i)):
                    assert ix.query(q) == oracle_count(G, W, q)

    def test_space_monotone_in_lambda(self):
        G = max(corpus(), key=lambda g: g.m)
        sizes = [WedgeIndex(G, lam).stored_entries for lam in (1, 2, 4, 8, math.sqrt(G.m))]
        assert sizes == sorted(sizes, reverse=True)
        assert all(s <= space_bound(G.m, lam, 1.0) for s, lam in zip(sizes, (1, 2, 4, 8)))

"""Stars and even cycles listed with polylogarithmic delay."""

import numpy as np

from rangesub import Interval, PatternGraph, build_cycle_index, build_star_index, oracle_list, query_cycles, query_stars, random_graph
from rangesub.enumeration import DelayMeter, log_cost, metered

rng = np.random.default_rng(4)
G = random_graph(40, 0.15, rng)
q = Interval(10, 80)
print(f"graph n={G.n} m={G.m}; query attributes in [10, 80]\n")

for leaves in (2, 3, 4):
    idx = build_star_index(G, leaves)
    m = DelayMeter()
    got = list(metered(query_stars(idx, q, m), m))
    assert set(got) == oracle_list(G, PatternGraph.star(leaves), q)
    print(f"{leaves}-stars: {len(got):6d}  max gap {m.max_gap:4d} "
          f"= {m.max_gap / log_cost(G.n) ** 2:.2f} x (1+log2 n)^2")

for ell in (2, 3):
    idx = build_cycle_index(G, ell)
    m = DelayMeter()
    got = list(metered(query_cycles(idx, q, m), m))
    assert set(got) == oracle_list(G, PatternGraph.cycle(2 * ell), q)
    print(f"{2 * ell}-cycles: {len(got):5d}  catalog {idx.catalog.paths} paths, max gap {m.max_gap}")

"""Range counting: any pattern in polylog time, wedges with a space knob.

A graph of people with ages as attributes; a query asks how many copies of a
pattern live among the people whose age falls in an interval.
"""

import math

import numpy as np

from rangesub import Interval, PatternGraph, WedgeIndex, build_generic_count, oracle_count, random_graph
from rangesub.enumeration import DelayMeter

rng = np.random.default_rng(1)
G = random_graph(200, 0.03, rng, attr_levels=80)
print(f"graph: n={G.n}, m={G.m}, attributes are integer ages 0..79\n")

paw = PatternGraph.paw()
idx = build_generic_count(G, paw)
print(f"paw counting index: {idx.point_count} registration points (pairs min/max vertex)")
for q in (Interval(20, 40), Interval(0, 79), Interval(50, 52)):
    m = DelayMeter()
    got = idx.query(q, m)
    print(f"  paws with ages in [{q.lo:g}, {q.hi:g}]: {got:6d}  (oracle {oracle_count(G, paw, q):6d}, "
          f"{m.work} work units)")

print("\nwedges: stored entries fall as lambda grows, query work rises")
q = Interval(10, 60)
want = oracle_count(G, PatternGraph.wedge(), q)
for lam in (1, 2, 4, 8, math.sqrt(G.m)):
    ix = WedgeIndex(G, lam)
    m = DelayMeter()
    got = ix.query(q, m)
    assert got == want
    print(f"  lambda={lam:6.2f}  stored={ix.stored_entries:8d}  query work={m.work:6d}  wedges={got}")

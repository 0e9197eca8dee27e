"""Set intersection answered with four range wedge counts.

Each set becomes two vertices, each element one vertex in the middle of the
attribute line.  A mixed second difference of wedge counts over four
intervals leaves exactly |S_a ∩ S_b|, so a fast small wedge index would give
a fast small set-intersection index.
"""

from itertools import combinations

from rangesub import SetFamilyInstance, WedgeIndex, build_reduction, disjointness_value

fam = SetFamilyInstance((frozenset("abc"), frozenset("cd"), frozenset("ae"), frozenset("xyz")))
rg = build_reduction(fam)
ix = WedgeIndex(rg.graph, 1)
print(f"{fam.s} sets, N={fam.N}; graph n={rg.graph.n}, m={rg.graph.m}\n")
for a, b in combinations(range(1, fam.s + 1), 2):
    cs = [ix.query(rg.interval(x, y)) for x, y in ((a, b), (a + 1, b), (a, b - 1), (a + 1, b - 1))]
    value = disjointness_value(rg, ix.query, a, b)
    common = sorted(fam.sets[a - 1] & fam.sets[b - 1])
    print(f"S{a} vs S{b}: wedges {cs} -> {cs[0]}-{cs[1]}-{cs[2]}+{cs[3]} = {value}  common {common}")

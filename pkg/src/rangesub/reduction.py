"""Set intersection through four range wedge counts.

Set ``S_i`` gets two vertices with attributes ``i`` and ``s + i``; every
element gets one vertex at ``s + 1/2`` joined to both vertices of each set
containing it.  For ``q = [x, s + y]`` the wedges centred at set vertices
depend on ``x`` and ``y`` separately, while the wedges centred at an element
count pairs among its ``L_e(x) + R_e(y)`` visible set vertices.  A mixed
second difference over ``x in {a, a+1}`` and ``y in {b, b-1}`` therefore
keeps only ``[e in S_a][e in S_b]`` per element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from .graph import AttributedGraph, Interval


@dataclass(frozen=True)
class SetFamilyInstance:
    sets: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.sets) < 2:
            raise ValueError("need at least two sets")

    @property
    def s(self) -> int:
        return len(self.sets)

    @property
    def N(self) -> int:
        return sum(len(x) for x in self.sets)

    @property
    def universe(self) -> list:
        return sorted(set().union(*self.sets), key=repr)


@dataclass
class ReductionGraph:
    family: SetFamilyInstance
    graph: AttributedGraph

    def interval(self, x: int, y: int) -> Interval:
        """``[x, s + y]`` in attribute space."""
        return Interval(float(x), float(self.family.s + y))


def build_reduction(fam: SetFamilyInstance) -> ReductionGraph:
    s = fam.s
    labels, attrs, edges = [], [], []
    for i in range(1, s + 1):
        labels += [f"a{i}", f"b{i}"]
        attrs += [float(i), float(s + i)]
    for e in fam.universe:
        labels.append(f"x{e!r}")
        attrs.append(s + 0.5)
    for i, S in enumerate(fam.sets, 1):
        for e in S:
            edges += [(f"x{e!r}", f"a{i}"), (f"x{e!r}", f"b{i}")]
    return ReductionGraph(fam, AttributedGraph(labels, attrs, edges))


WedgeCounter = Callable[[Interval], int]


def disjointness_value(rg: ReductionGraph, count: WedgeCounter, a: int, b: int) -> int:
    """``c1 - c2 - c3 + c4`` for sets ``a < b`` (1-based); equals ``|S_a ∩ S_b|``.

    ``a < b`` keeps ``b - 1 >= 1``, so every query still sees the element
    vertices at ``s + 1/2``.
    """
    s = rg.family.s
    if a == b:
        raise ValueError("need two distinct sets")
    if not 1 <= a < b <= s:
        raise ValueError("need 1 <= a < b <= s")
    c1 = count(rg.interval(a, b))
    c2 = count(rg.interval(a + 1, b))
    c3 = count(rg.interval(a, b - 1))
    c4 = count(rg.interval(a + 1, b - 1))
    return c1 - c2 - c3 + c4


def disjointness_query(rg: ReductionGraph, count: WedgeCounter, a: int, b: int) -> bool:
    """Whether ``S_a`` and ``S_b`` intersect."""
    return disjointness_value(rg, count, a, b) > 0


def wedge_split(fam: SetFamilyInstance, x: int, y: int) -> tuple[int, int]:
    """Closed forms for ``q = [x, s + y]``: (element-set-element, set-element-set) wedges.

    Set vertices visible are ``a_i`` for ``x <= i <= s`` and ``b_i`` for
    ``1 <= i <= y``; element vertices are visible whenever ``x <= s`` and
    ``y >= 1``.
    """
    s = fam.s
    if x > s or y < 1:
        return 0, 0
    left = [i for i in range(1, s + 1) if i >= x]
    right = [i for i in range(1, s + 1) if i <= y]
    ese = sum(len(fam.sets[i - 1]) * (len(fam.sets[i - 1]) - 1) // 2 for i in left + right)
    ses = 0
    for e in fam.universe:
        d = sum(1 for i in left if e in fam.sets[i - 1]) + sum(1 for i in right if e in fam.sets[i - 1])
        ses += d * (d - 1) // 2
    return ese, ses


def split_by_centre(rg: ReductionGraph, x: int, y: int) -> tuple[int, int]:
    """Wedges of ``G_q`` counted directly, split by whether the centre is an element."""
    G = rg.graph
    lo, hi = G.rank_range(rg.interval(x, y))
    ese = ses = 0
    for c in range(lo, hi + 1):
        d = sum(1 for v in G.adj[c] if lo <= v <= hi)
        if str(G.labels[c]).startswith("x"):
            ses += d * (d - 1) // 2
        else:
            ese += d * (d - 1) // 2
    return ese, ses


def random_family(rng, s_max: int = 10, n_max: int = 200, universe: int = 30) -> SetFamilyInstance:
    rng = np.random.default_rng(rng)
    s = int(rng.integers(2, s_max + 1))
    budget = int(rng.integers(0, n_max + 1))
    sizes = rng.multinomial(budget, [1 / s] * s)
    sets = tuple(frozenset(int(v) for v in rng.choice(universe, size=min(int(k), universe), replace=False))
                 for k in sizes)
    return SetFamilyInstance(sets)


def parse_family(text: str) -> SetFamilyInstance:
    """Lines ``s <set-id> <element>...``; sets are ordered by first appearance."""
    sets: dict[Hashable, set] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "s" or len(parts) < 2:
            raise ValueError(f"line {lineno}: expected 's <set-id> <element>...'")
        if parts[1] in sets:
            raise ValueError(f"line {lineno}: duplicate set id {parts[1]}")
        sets[parts[1]] = set(parts[2:])
    return SetFamilyInstance(tuple(frozenset(v) for v in sets.values()))


def format_family(fam: SetFamilyInstance, ids: Sequence[str] | None = None) -> str:
    ids = ids or [str(i) for i in range(1, fam.s + 1)]
    return "".join(f"s {i} {' '.join(sorted(map(str, S)))}".rstrip() + "\n"
                   for i, S in zip(ids, fam.sets))

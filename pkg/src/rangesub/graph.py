"""Attributed graphs, query patterns and brute-force occurrence oracles.

Vertices are re-indexed at construction so that index order *is* attribute
order: vertex ``i`` has the ``i``-th smallest ``(attribute, original id)``
key.  Every other module compares vertices by index only, which makes the
tie-break on equal attributes automatic.
"""

from __future__ import annotations

import bisect
import functools
import hashlib
import itertools
import math
import struct
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

MAX_PATTERN_SIZE = 8


class GraphFormatError(ValueError):
    """Raised for malformed graph, pattern or set-family input."""


class Interval(NamedTuple):
    """Closed attribute interval ``[lo, hi]``; ``lo > hi`` selects nothing."""

    lo: float
    hi: float

    @classmethod
    def full(cls) -> "Interval":
        return cls(-math.inf, math.inf)


def as_interval(q) -> Interval:
    if isinstance(q, Interval):
        return q
    lo, hi = q
    return Interval(float(lo), float(hi))


class AttributedGraph:
    """Immutable undirected simple graph whose vertices carry real attributes.

    ``labels[i]`` is the caller's id of vertex ``i`` and ``attrs[i]`` its
    attribute; both are sorted by ``(attr, label)``.  ``adj[i]`` is the sorted
    neighbour list of ``i``.
    """

    def __init__(self, labels: Sequence, attrs: Sequence[float],
                 edges: Iterable[tuple]):
        if len(labels) != len(attrs):
            raise ValueError("labels and attrs differ in length")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex label")
        order = sorted(range(len(labels)), key=lambda i: (attrs[i], labels[i]))
        self.labels = [labels[i] for i in order]
        self.attrs = [float(attrs[i]) for i in order]
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        nbrs: list[set[int]] = [set() for _ in self.labels]
        for a, b in edges:
            u, v = self._index[a], self._index[b]
            if u == v:
                raise ValueError(f"self-loop on vertex {a!r}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge {{{a!r}, {b!r}}}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.adj: list[list[int]] = [sorted(s) for s in nbrs]
        self._adjset = [frozenset(s) for s in nbrs]
        self.m = sum(len(s) for s in nbrs) // 2

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield u, v

    def rank_range(self, q) -> tuple[int, int]:
        """Inclusive index range ``[lo, hi]`` of the vertices inside ``q``."""
        q = as_interval(q)
        if q.lo > q.hi:
            return 0, -1
        lo = bisect.bisect_left(self.attrs, q.lo)
        hi = bisect.bisect_right(self.attrs, q.hi) - 1
        return lo, hi

    def neighbors_in(self, u: int, lo: int, hi: int) -> list[int]:
        nb = self.adj[u]
        return nb[bisect.bisect_left(nb, lo):bisect.bisect_right(nb, hi)]

    def content_hash(self) -> int:
        """64-bit hash of labels, attributes and edge set."""
        h = hashlib.blake2b(digest_size=8)
        h.update(struct.pack("<QQ", self.n, self.m))
        for lab, a in zip(self.labels, self.attrs):
            h.update(repr(lab).encode())
            h.update(struct.pack("<d", a))
        for u, v in self.edges():
            h.update(struct.pack("<II", u, v))
        return int.from_bytes(h.digest(), "little")

    def __repr__(self):
        return f"AttributedGraph(n={self.n}, m={self.m})"


def parse_graph(text: str | bytes) -> AttributedGraph:
    """Parse the ``v <id> <attr>`` / ``e <id> <id>`` line format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    labels, attrs, edges, seen = [], [], [], set()
    known = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 3:
                vid, attr = _parse_label(parts[1]), float(parts[2])
                if math.isnan(attr):
                    raise ValueError("attribute is NaN")
                if vid in known:
                    raise GraphFormatError(f"line {lineno}: duplicate vertex id {vid}")
                known.add(vid)
                labels.append(vid)
                attrs.append(attr)
            elif parts[0] == "e" and len(parts) == 3:
                a, b = _parse_label(parts[1]), _parse_label(parts[2])
                if a == b:
                    raise GraphFormatError(f"line {lineno}: self-loop on {a}")
                key = (a, b) if repr(a) <= repr(b) else (b, a)
                if key in seen:
                    raise GraphFormatError(f"line {lineno}: duplicate edge {a} {b}")
                seen.add(key)
                edges.append((lineno, a, b))
            else:
                raise GraphFormatError(f"line {lineno}: malformed line {raw!r}")
        except GraphFormatError:
            raise
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    for lineno, a, b in edges:
        for x in (a, b):
            if x not in known:
                raise GraphFormatError(f"line {lineno}: undeclared vertex {x}")
    return AttributedGraph(labels, attrs, [(a, b) for _, a, b in edges])


def _parse_label(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def format_graph(G: AttributedGraph) -> str:
    lines = [f"v {lab} {a!r}" for lab, a in zip(G.labels, G.attrs)]
    lines += [f"e {G.labels[u]} {G.labels[v]}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def induced_subgraph(G: AttributedGraph, q) -> AttributedGraph:
    lo, hi = G.rank_range(q)
    keep = range(lo, hi + 1)
    edges = [(G.labels[u], G.labels[v]) for u, v in G.edges() if lo <= u and v <= hi]
    return AttributedGraph([G.labels[i] for i in keep], [G.attrs[i] for i in keep], edges)


# --------------------------------------------------------------------------
# patterns

@dataclass(frozen=True)
class PatternGraph:
    k: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "generic"

    def __post_init__(self):
        if not 2 <= self.k <= MAX_PATTERN_SIZE:
            raise ValueError(f"pattern size must lie in [2, {MAX_PATTERN_SIZE}]")
        norm = []
        for a, b in self.edges:
            if a == b or not (0 <= a < self.k and 0 <= b < self.k):
                raise ValueError(f"bad pattern edge {(a, b)}")
            norm.append((min(a, b), max(a, b)))
        if len(set(norm)) != len(norm):
            raise ValueError("pattern has parallel edges")
        object.__setattr__(self, "edges", tuple(norm))
        if not self._connected():
            raise ValueError("pattern must be connected")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen, stack = {0}, [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.k

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.k)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    @classmethod
    def edge(cls):
        return cls(2, ((0, 1),), "star")

    @classmethod
    def wedge(cls):
        return cls(3, ((0, 1), (0, 2)), "star")

    @classmethod
    def star(cls, leaves: int):
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)), "star")

    @classmethod
    def path(cls, length: int):
        return cls(length + 1, tuple((i, i + 1) for i in range(length)), "path")

    @classmethod
    def clique(cls, size: int):
        return cls(size, tuple(itertools.combinations(range(size), 2)), "clique")

    @classmethod
    def triangle(cls):
        return cls.clique(3)

    @classmethod
    def cycle(cls, size: int):
        if size < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls(size, tuple((i, (i + 1) % size) for i in range(size)), "cycle")

    @classmethod
    def paw(cls):
        return cls(4, ((0, 1), (1, 2), (0, 2), (2, 3)), "generic")

    @classmethod
    def parse(cls, spec: str) -> "PatternGraph":
        """``wedge``, ``triangle``, ``paw``, ``clique:4``, ``star:3``, ``path:3``,
        ``cycle:4`` or ``edges:0-1,1-2,...``."""
        name, _, arg = spec.strip().partition(":")
        simple = {"wedge": cls.wedge, "triangle": cls.triangle, "paw": cls.paw,
                  "edge": cls.edge}
        if name in simple and not arg:
            return simple[name]()
        sized = {"clique": cls.clique, "star": cls.star, "path": cls.path, "cycle": cls.cycle}
        try:
            if name in sized:
                return sized[name](int(arg))
            if name == "edges":
                pairs = [tuple(int(x) for x in tok.split("-")) for tok in arg.split(",")]
                return cls(max(max(p) for p in pairs) + 1, tuple(pairs))
        except ValueError as exc:
            raise GraphFormatError(f"bad pattern {spec!r}: {exc}") from None
        raise GraphFormatError(f"unknown pattern {spec!r}")

    def automorphism_count(self) -> int:
        """Number of vertex permutations preserving the edge set (brute force)."""
        return _automorphisms(self)

    def _count_automorphisms(self) -> int:
        es = set(self.edges)
        cnt = 0
        for perm in itertools.permutations(range(self.k)):
            if all((min(perm[a], perm[b]), max(perm[a], perm[b])) in es for a, b in self.edges):
                cnt += 1
        return cnt

    def search_order(self) -> list[int]:
        """BFS order from the max-degree vertex; each later vertex touches an earlier one."""
        adj = self.adjacency()
        start = max(range(self.k), key=lambda x: (len(adj[x]), -x))
        order, seen = [start], {start}
        i = 0
        while i < len(order):
            for y in sorted(adj[order[i]], key=lambda z: -len(adj[z])):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
            i += 1
        return order


@functools.lru_cache(maxsize=None)
def _automorphisms(Q: PatternGraph) -> int:
    return Q._count_automorphisms()


@dataclass(frozen=True)
class Occurrence:
    """One pattern occurrence: sorted vertex tuple plus the image of the edges.

    Two occurrences compare equal iff vertex set and edge image coincide, so
    automorphic embeddings collapse.  ``mapping`` (pattern vertex -> graph
    vertex) is kept for verification only.
    """

    vertices: tuple[int, ...]
    edges: frozenset
    mapping: tuple[int, ...] = field(default=(), compare=False, hash=False)

    @classmethod
    def from_mapping(cls, Q: PatternGraph, mapping: Sequence[int]) -> "Occurrence":
        es = frozenset((min(mapping[a], mapping[b]), max(mapping[a], mapping[b]))
                       for a, b in Q.edges)
        return cls(tuple(sorted(mapping)), es, tuple(mapping))

    def is_valid(self, G: AttributedGraph, Q: PatternGraph) -> bool:
        mp = self.mapping
        return (len(set(mp)) == Q.k
                and all(G.has_edge(mp[a], mp[b]) for a, b in Q.edges)
                and Occurrence.from_mapping(Q, mp) == self)

    def labelled(self, G: AttributedGraph) -> tuple:
        return tuple(G.labels[v] for v in self.vertices)


# --------------------------------------------------------------------------
# oracles

def embeddings(G: AttributedGraph, Q: PatternGraph) -> Iterator[tuple[int, ...]]:
    """All injective edge-preserving maps from Q into G (backtracking)."""
    if Q.k > MAX_PATTERN_SIZE:
        raise ValueError("pattern too large")
    order = Q.search_order()
    qadj = Q.adjacency()
    pos = {x: i for i, x in enumerate(order)}
    # for each step, the earlier pattern vertices it must be adjacent to
    back = [[y for y in qadj[x] if pos[y] < i] for i, x in enumerate(order)]
    adj, adjset, k = G.adj, G._adjset, Q.k
    mapping = [-1] * k
    used = set()

    def extend(i):
        if i == k:
            yield tuple(mapping)
            return
        x = order[i]
        if i == 0:
            cands = range(G.n)
            rest = ()
        else:
            anchor = min(back[i], key=lambda y: len(adj[mapping[y]]))
            cands = adj[mapping[anchor]]
            rest = [adjset[mapping[y]] for y in back[i] if y != anchor]
        for c in cands:
            if c in used or any(c not in s for s in rest):
                continue
            mapping[x] = c
            used.add(c)
            yield from extend(i + 1)
            used.discard(c)
        mapping[x] = -1

    yield from extend(0)


def embedding_count(G: AttributedGraph, Q: PatternGraph) -> int:
    return sum(1 for _ in embeddings(G, Q))


def all_occurrences(G: AttributedGraph, Q: PatternGraph) -> set[Occurrence]:
    return {Occurrence.from_mapping(Q, mp) for mp in embeddings(G, Q)}


def oracle_list(G: AttributedGraph, Q: PatternGraph, q=Interval.full()) -> set[Occurrence]:
    """Occurrences of Q in G_q, found by exhaustive search on the induced subgraph.

    Vertex indices in the result refer to ``G``.
    """
    lo, hi = G.rank_range(q)
    if lo > hi:
        return set()
    sub = induced_subgraph(G, q)
    return {Occurrence(tuple(v + lo for v in o.vertices),
                       frozenset((a + lo, b + lo) for a, b in o.edges),
                       tuple(v + lo for v in o.mapping))
            for o in all_occurrences(sub, Q)}


def oracle_count(G: AttributedGraph, Q: PatternGraph, q=Interval.full()) -> int:
    """``|oracle_list(G, Q, q)|``, computed as embeddings of G_q divided by ``|Aut(Q)|``."""
    lo, hi = G.rank_range(q)
    if lo > hi:
        return 0
    total = embedding_count(induced_subgraph(G, q), Q)
    aut = Q.automorphism_count()
    assert total % aut == 0, "embedding count not a multiple of |Aut(Q)|"
    return total // aut


class OccurrenceTable:
    """All occurrences of Q in G, filterable by interval.

    Equivalent to calling ``oracle_list`` per interval (an occurrence lies in
    G_q iff all its vertices do) but enumerates G only once.
    """

    def __init__(self, G: AttributedGraph, Q: PatternGraph):
        self.G, self.Q = G, Q
        self.occurrences = all_occurrences(G, Q)

    def in_range(self, q) -> set[Occurrence]:
        lo, hi = self.G.rank_range(q)
        return {o for o in self.occurrences if lo <= o.vertices[0] and o.vertices[-1] <= hi}

    def count(self, q) -> int:
        lo, hi = self.G.rank_range(q)
        return sum(1 for o in self.occurrences if lo <= o.vertices[0] and o.vertices[-1] <= hi)


# --------------------------------------------------------------------------
# generators used by tests, demos and the CLI

def random_graph(n: int, p: float, rng=None, max_edges: int | None = None,
                 attr_levels: int | None = None) -> AttributedGraph:
    """Erdos-Renyi G(n, p) with random attributes.

    ``attr_levels`` draws integer attributes from ``range(attr_levels)`` so
    that ties occur; otherwise attributes are uniform reals.
    """
    rng = np.random.default_rng(rng)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    pick = rng.random(len(pairs)) < p
    edges = [pr for pr, keep in zip(pairs, pick) if keep]
    if max_edges is not None and len(edges) > max_edges:
        sel = rng.choice(len(edges), size=max_edges, replace=False)
        edges = [edges[i] for i in sorted(sel)]
    if attr_levels:
        attrs = rng.integers(0, attr_levels, size=n).astype(float)
    else:
        attrs = rng.random(n) * 100.0
    return AttributedGraph(list(range(n)), attrs.tolist(), edges)


def random_intervals(G: AttributedGraph, count: int, rng=None) -> list[Interval]:
    """Mix of intervals: attribute-aligned, in-between values, unbounded and empty."""
    rng = np.random.default_rng(rng)
    out = [Interval.full()]
    vals = G.attrs or [0.0]
    lo_v, hi_v = min(vals) - 1.0, max(vals) + 1.0
    while len(out) < count:
        mode = rng.integers(0, 6)
        if mode <= 2 and G.n:
            a, b = sorted(rng.choice(vals, size=2))
        elif mode == 3:
            a, b = sorted(rng.uniform(lo_v, hi_v, size=2))
        elif mode == 4:
            a = -math.inf if rng.random() < 0.5 else float(rng.choice(vals))
            b = math.inf if a != -math.inf else float(rng.choice(vals))
        else:
            b, a = sorted(rng.uniform(lo_v, hi_v, size=2))
            if a == b:
                a += 1.0
        out.append(Interval(float(a), float(b)))
    return out[:count]


G5_TEXT = """\
# five-vertex fixture: two triangles sharing edge {2,3}
v 1 1
v 2 2
v 3 3
v 4 4
v 5 5
e 1 2
e 2 3
e 1 3
e 3 4
e 4 5
e 2 4
"""


def fixture_g5() -> AttributedGraph:
    return parse_graph(G5_TEXT)


def complete_graph(n: int) -> AttributedGraph:
    return AttributedGraph(list(range(1, n + 1)), list(range(1, n + 1)),
                           itertools.combinations(range(1, n + 1), 2))

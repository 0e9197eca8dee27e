"""Range joins: natural joins restricted to a query box ``B(q, ..., q)``.

Values are rank-reduced to ``1..D`` with ``D`` a power of two.  The index
stores, for every *heavy* dyadic combination (one dyadic interval per
attribute, restricted join non-empty, AGM value above ``delta``), a cover of
the combination's box by disjoint boxes each of AGM value at most ``delta``
and each holding at least one result tuple.  A query splits its box into
canonical dyadic combinations; heavy ones stream their box covers through
the generic join and light ones run the generic join directly.

AGM values are compared squared, as exact integers: with a half-integral
cover ``W = y / 2`` the square is ``prod |R_e ⋉ B| ** y_e``.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import mpmath
import numpy as np

from .enumeration import DelayMeter, log_cost
from .geometry import RangeReportKD

Box = tuple[tuple[int, int], ...]
Combo = tuple[tuple[int, int], ...]  # (level, offset) per attribute

MAX_COVER_EDGES = 15
DENSE_LIMIT = 1 << 16


class UnsupportedSchemeError(ValueError):
    """No exact edge-cover solver for this hypergraph; supply ``W`` yourself."""


# --------------------------------------------------------------------------
# relations and instances
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    scheme: tuple[str, ...]
    tuples: tuple[tuple, ...]

    def __post_init__(self):
        if len(set(self.scheme)) != len(self.scheme):
            raise ValueError(f"relation {self.name}: repeated attribute in scheme")
        if any(len(t) != len(self.scheme) for t in self.tuples):
            raise ValueError(f"relation {self.name}: tuple arity differs from scheme")


def solve_edge_cover(attrs: Sequence[str], schemes: Sequence[Sequence[str]]
                     ) -> tuple[tuple[Fraction, ...], Fraction]:
    """Optimal fractional edge cover of a graph-shaped hypergraph.

    Binary schemes have a half-integral optimum, so it suffices to search
    ``y in {0,1,2}^E`` (``W = y/2``) with every attribute covered by
    ``sum y >= 2``.  Totals are tried in increasing order and each vector
    in lexicographic order, so the first hit is the lexicographically
    smallest optimal cover.
    """
    if any(len(s) != 2 for s in schemes):
        raise UnsupportedSchemeError("exact cover supports binary schemes only")
    if len(schemes) > MAX_COVER_EDGES:
        raise UnsupportedSchemeError(f"more than {MAX_COVER_EDGES} schemes")
    pos = {a: i for i, a in enumerate(attrs)}
    ends = [(pos[s[0]], pos[s[1]]) for s in schemes]
    covered = {pos[a] for s in schemes for a in s}
    if covered != set(range(len(attrs))):
        raise ValueError("some attribute lies in no scheme")
    E, d = len(ends), len(attrs)
    # for pruning: the latest edge index touching each attribute
    last_touch = [max(i for i, (a, b) in enumerate(ends) if x in (a, b)) for x in range(d)]

    def search(total: int):
        y = [0] * E
        need = [2] * d

        def rec(i: int, left: int) -> bool:
            if i == E:
                return left == 0 and all(c <= 0 for c in need)
            a, b = ends[i]
            for v in (0, 1, 2):
                if v > left:
                    break
                y[i] = v
                need[a] -= v
                need[b] -= v
                ok = all(need[x] <= 0 for x in range(d) if last_touch[x] == i)
                # every unit of budget reduces total demand by at most two
                if ok and sum(max(0, c) for c in need) <= 2 * (left - v):
                    if rec(i + 1, left - v):
                        return True
                need[a] += v
                need[b] += v
            y[i] = 0
            return False

        return tuple(y) if rec(0, total) else None

    # each attribute needs two units and each unit of y serves two attributes
    for total in range(d, 2 * E + 1):
        y = search(total)
        if y is not None:
            return tuple(Fraction(v, 2) for v in y), Fraction(total, 2)
    raise AssertionError("the all-ones cover always exists")


class _Trie:
    __slots__ = ("keys", "child")

    def __init__(self):
        self.keys: list[int] = []
        self.child: dict = {}


def _build_trie(rows: list[tuple]) -> _Trie:
    root = _Trie()
    for row in rows:
        node = root
        for depth, v in enumerate(row):
            nxt = node.child.get(v)
            if nxt is None:
                nxt = _Trie() if depth < len(row) - 1 else None
                node.child[v] = nxt
            node = nxt
    stack = [root]
    while stack:
        node = stack.pop()
        node.keys = sorted(node.child)
        stack.extend(c for c in node.child.values() if c is not None)
    return root


class _Counter:
    """``|R ⋉ B|`` for boxes over the relation's own attributes."""

    def __init__(self, rows: list[tuple], D: int):
        arity = len(rows[0]) if rows else 0
        self.n = len(rows)
        self.D = D
        self.mode = "empty" if not rows else None
        if not rows:
            return
        if arity <= 2 and D ** arity <= DENSE_LIMIT:
            grid = np.zeros((D + 1,) * arity, dtype=np.int64)
            for r in rows:
                grid[r] += 1
            for ax in range(arity):
                grid = np.cumsum(grid, axis=ax)
            self.mode, self.arity = "dense", arity
            self.grid = grid.tolist()
        else:
            self.mode, self.kd = "kd", RangeReportKD(rows)

    def count(self, box: Sequence[tuple[int, int]]) -> int:
        if self.mode == "empty":
            return 0
        D = self.D
        box = [(lo if lo > 1 else 1, hi if hi < D else D) for lo, hi in box]
        if any(lo > hi for lo, hi in box):
            return 0
        if self.mode == "kd":
            return self.kd.count(box)
        g = self.grid
        if self.arity == 1:
            (a, b), = box
            return g[b] - g[a - 1]
        (a1, b1), (a2, b2) = box
        return g[b1][b2] - g[a1 - 1][b2] - g[b1][a2 - 1] + g[a1 - 1][a2 - 1]


def _pow2(x: int) -> int:
    return 1 << max(0, (x - 1).bit_length())


class JoinInstance:
    """Relations over a shared attribute order, rank-reduced to ``1..D``.

    ``W`` defaults to :func:`solve_edge_cover`; a caller-supplied cover must
    be half-integral.
    """

    def __init__(self, relations: Sequence[Relation], attrs: Sequence[str] | None = None,
                 W: Sequence[Fraction] | None = None, ranked: bool = False,
                 domain: int | None = None):
        self.relations = list(relations)
        if attrs is None:
            attrs = list(dict.fromkeys(a for r in self.relations for a in r.scheme))
        self.attrs = tuple(attrs)
        self.d = len(self.attrs)
        pos = {a: i for i, a in enumerate(self.attrs)}
        if any(a not in pos for r in self.relations for a in r.scheme):
            raise ValueError("scheme attribute missing from attribute order")
        if {a for r in self.relations for a in r.scheme} != set(self.attrs):
            raise ValueError("every attribute must appear in some scheme")
        if W is None:
            W, rho = solve_edge_cover(self.attrs, [r.scheme for r in self.relations])
        else:
            W = tuple(Fraction(w) for w in W)
            if len(W) != len(self.relations) or any((2 * w).denominator != 1 or w < 0 for w in W):
                raise ValueError("W must give one non-negative half-integer per relation")
            for a in self.attrs:
                if sum(w for w, r in zip(W, self.relations) if a in r.scheme) < 1:
                    raise ValueError(f"W does not cover attribute {a}")
            rho = sum(W, Fraction(0))
        self.W, self.rho = tuple(W), rho
        self.y = tuple(int(2 * w) for w in self.W)

        if ranked:
            self.values = None
            top = max((v for r in self.relations for t in r.tuples for v in t), default=1)
            self.D = _pow2(max(domain or 1, top))
            rank = None
        else:
            self.values = sorted({v for r in self.relations for t in r.tuples for v in t})
            self.D = _pow2(max(1, len(self.values)))
            rank = {v: i + 1 for i, v in enumerate(self.values)}
        self.L = self.D.bit_length() - 1

        self.cols: list[tuple[int, ...]] = []      # global positions per relation
        self.rows: list[list[tuple]] = []          # tuples in relation column order
        for r in self.relations:
            cols = tuple(pos[a] for a in r.scheme)
            rows = sorted(set(tuple(rank[v] for v in t) if rank else tuple(t) for t in r.tuples))
            if rows and (min(min(t) for t in rows) < 1 or max(max(t) for t in rows) > self.D):
                raise ValueError("ranked values must lie in 1..D")
            self.cols.append(cols)
            self.rows.append(rows)
        self.N = sum(len(rows) for rows in self.rows)

        # tries follow the global attribute order
        self.tries = []
        self.trie_cols = []
        for cols, rows in zip(self.cols, self.rows):
            perm = sorted(range(len(cols)), key=lambda i: cols[i])
            self.trie_cols.append(tuple(cols[i] for i in perm))
            self.tries.append(_build_trie([tuple(t[i] for i in perm) for t in rows]))
        self.by_attr = [[e for e, cols in enumerate(self.trie_cols) if x in cols]
                        for x in range(self.d)]
        self.counters = [_Counter(rows, self.D) for rows in self.rows]

    # -- value/rank mapping ------------------------------------------------
    def rank_interval(self, x1, x2) -> tuple[int, int]:
        """Ranks of values in ``[x1, x2]``; ``(1, 0)`` when none."""
        if self.values is None:
            lo = max(1, math.ceil(x1)) if x1 != -math.inf else 1
            hi = min(self.D, math.floor(x2)) if x2 != math.inf else self.D
            return (lo, hi) if lo <= hi else (1, 0)
        lo = bisect_left(self.values, x1) + 1
        hi = bisect_right(self.values, x2)
        return (lo, hi) if lo <= hi else (1, 0)

    def unrank(self, row: tuple[int, ...]) -> tuple:
        if self.values is None:
            return row
        return tuple(self.values[v - 1] for v in row)

    # -- AGM --------------------------------------------------------------
    def restricted_counts(self, box: Box) -> list[int]:
        return [c.count([box[x] for x in cols]) for c, cols in zip(self.counters, self.cols)]

    def agm_squared(self, box: Box) -> int:
        counts = self.restricted_counts(box)
        if any(c == 0 for c in counts):
            return 0
        out = 1
        for c, y in zip(counts, self.y):
            out *= c ** y
        return out

    def agm_value(self, box: Box) -> float:
        return math.sqrt(self.agm_squared(box))

    # -- generic join -----------------------------------------------------
    def generic_join(self, box: Box, meter: DelayMeter | None = None) -> Iterator[tuple[int, ...]]:
        """Result tuples (in attribute order) inside ``box``, each once."""
        if any(lo > hi for lo, hi in box):
            return
        d = self.d
        nodes = list(self.tries)
        binding = [0] * d
        by_attr = self.by_attr
        tick = meter.tick if meter is not None else (lambda _u=1: None)

        def rec(t: int):
            if t == d:
                tick()
                yield tuple(binding)
                return
            lo, hi = box[t]
            spans = []
            for e in by_attr[t]:
                keys = nodes[e].keys
                i, j = bisect_left(keys, lo), bisect_right(keys, hi)
                tick(2 * log_cost(len(keys)))
                if i >= j:
                    return
                spans.append((j - i, e, i, j))
            spans.sort()
            _, e0, i0, j0 = spans[0]
            others = [e for _, e, _, _ in spans[1:]]
            saved = [nodes[e] for e in by_attr[t]]
            keys0 = saved[by_attr[t].index(e0)].keys
            for p in range(i0, j0):
                v = keys0[p]
                tick(1 + len(others))
                if all(v in nodes[e].child for e in others):
                    for e in by_attr[t]:
                        nodes[e] = nodes[e].child[v]
                    binding[t] = v
                    yield from rec(t + 1)
                    for e, node in zip(by_attr[t], saved):
                        nodes[e] = node

        yield from rec(0)

    def nonempty(self, box: Box) -> bool:
        """Whether the join has a tuple in ``box``; the generic join with early exit."""
        if any(lo > hi for lo, hi in box):
            return False
        d, by_attr = self.d, self.by_attr
        nodes = list(self.tries)

        def found(t: int) -> bool:
            if t == d:
                return True
            lo, hi = box[t]
            rels = by_attr[t]
            best = None
            for e in rels:
                keys = nodes[e].keys
                i, j = bisect_left(keys, lo), bisect_right(keys, hi)
                if i >= j:
                    return False
                if best is None or j - i < best[0]:
                    best = (j - i, e, i, j)
            _, e0, i0, j0 = best
            saved = [nodes[e] for e in rels]
            keys0 = nodes[e0].keys
            for p in range(i0, j0):
                v = keys0[p]
                if all(v in nodes[e].child for e in rels):
                    for e in rels:
                        nodes[e] = nodes[e].child[v]
                    hit = found(t + 1)
                    for e, node in zip(rels, saved):
                        nodes[e] = node
                    if hit:
                        return True
            return False

        return found(0)

    def nested_loop_join(self, box: Box | None = None) -> set[tuple[int, ...]]:
        """Reference join: extend partial bindings relation by relation."""
        partial = [dict()]
        for cols, rows in zip(self.cols, self.rows):
            nxt = []
            for b in partial:
                for t in rows:
                    if all(b.get(c, v) == v for c, v in zip(cols, t)):
                        nb = dict(b)
                        nb.update(zip(cols, t))
                        nxt.append(nb)
            partial = nxt
        out = {tuple(b[x] for x in range(self.d)) for b in partial}
        if box is not None:
            out = {t for t in out if all(lo <= v <= hi for v, (lo, hi) in zip(t, box))}
        return out


# --------------------------------------------------------------------------
# dyadic geometry
# --------------------------------------------------------------------------

def dyadic_interval(level: int, offset: int) -> tuple[int, int]:
    return offset * (1 << level) + 1, (offset + 1) * (1 << level)


def dyadic_decompose(lo: int, hi: int, D: int, meter: DelayMeter | None = None
                     ) -> list[tuple[int, int]]:
    """Canonical ``(level, offset)`` intervals partitioning ``[lo, hi]`` within ``[1, D]``."""
    lo, hi = max(lo, 1), min(hi, D)
    out = []
    if lo > hi:
        return out
    L = D.bit_length() - 1
    stack = [(L, 0)]
    while stack:
        level, off = stack.pop()
        if meter is not None:
            meter.tick()
        a, b = dyadic_interval(level, off)
        if b < lo or a > hi:
            continue
        if lo <= a and b <= hi:
            out.append((level, off))
            continue
        stack.append((level - 1, 2 * off + 1))
        stack.append((level - 1, 2 * off))
    return out


def combo_box(combo: Combo) -> Box:
    return tuple(dyadic_interval(l, o) for l, o in combo)


def _split(box: Box) -> tuple[Box, Box]:
    widths = [hi - lo for lo, hi in box]
    j = widths.index(max(widths))
    lo, hi = box[j]
    mid = (lo + hi) // 2
    left = box[:j] + ((lo, mid),) + box[j + 1:]
    right = box[:j] + ((mid + 1, hi),) + box[j + 1:]
    return left, right


# --------------------------------------------------------------------------
# the index
# --------------------------------------------------------------------------

@dataclass
class BuildStats:
    combos_examined: int = 0
    agm_evaluations: int = 0
    emptiness_tests: int = 0
    boxes_examined: int = 0


@dataclass
class RangeJoinIndex:
    inst: JoinInstance
    delta: float
    heavy: dict[Combo, list[Box]] = field(default_factory=dict)
    stats: BuildStats = field(default_factory=BuildStats)

    @property
    def stored_boxes(self) -> int:
        return sum(len(c) for c in self.heavy.values())

    def delay_bound(self, c: float) -> float:
        """``c * delta * (1 + log2 N) ** (d + 1)``, with ``N`` clamped to at least 2."""
        return c * self.delta * log_cost(max(2, self.inst.N)) ** (self.inst.d + 1)

    def space_bound(self, c: float) -> float:
        """``c * (N ** rho / delta) * (1 + log2 N) ** d``."""
        N, inst = max(2, self.inst.N), self.inst
        return c * (N ** float(inst.rho) / self.delta) * log_cost(N) ** inst.d

    def canonical_combos(self, lo: int, hi: int, meter: DelayMeter | None = None) -> list[Combo]:
        parts = dyadic_decompose(lo, hi, self.inst.D, meter)
        return list(product(parts, repeat=self.inst.d))

    def query(self, lo: int, hi: int, meter: DelayMeter | None = None) -> Iterator[tuple[int, ...]]:
        """Join tuples with every value in the rank range ``[lo, hi]``."""
        inst = self.inst
        for combo in self.canonical_combos(lo, hi, meter):
            if meter is not None:
                meter.tick()
            cover = self.heavy.get(combo)
            if cover is None:
                yield from inst.generic_join(combo_box(combo), meter)
            else:
                for box in cover:
                    yield from inst.generic_join(box, meter)


class _BoxOracle:
    """Memoized AGM squares and emptiness tests (cover boxes recur across combos)."""

    def __init__(self, inst: JoinInstance, stats: BuildStats):
        self.inst, self.stats = inst, stats
        self._agm: dict[Box, int] = {}
        self._full: dict[Box, bool] = {}

    def agm2(self, box: Box) -> int:
        v = self._agm.get(box)
        if v is None:
            self.stats.agm_evaluations += 1
            v = self._agm[box] = self.inst.agm_squared(box)
        return v

    def nonempty(self, box: Box) -> bool:
        v = self._full.get(box)
        if v is None:
            self.stats.emptiness_tests += 1
            v = self._full[box] = self.inst.nonempty(box)
        return v


def _box_cover(oracle: _BoxOracle, box: Box, bound2: int, memo: dict) -> list[Box]:
    """Prune empty boxes, keep light ones, halve the widest side otherwise.

    The split depends only on the box, so a box met again (as a heavy
    combination or inside another cover) reuses its cover from ``memo``.
    """
    done = memo.get(box)
    if done is not None:
        return done
    oracle.stats.boxes_examined += 1
    if oracle.agm2(box) == 0 or not oracle.nonempty(box):
        out = []
    elif oracle.agm2(box) <= bound2:
        out = [box]
    else:
        left, right = _split(box)
        out = _box_cover(oracle, left, bound2, memo) + _box_cover(oracle, right, bound2, memo)
    memo[box] = out
    return out


def _delta_squared_floor(delta) -> int:
    """Largest integer ``A`` with ``A <= delta ** 2`` (exact for rationals)."""
    f = Fraction(delta)
    sq = f * f
    return sq.numerator // sq.denominator


def build_range_join(inst: JoinInstance, delta) -> RangeJoinIndex:
    """Heavy combinations by top-down refinement, each with its box cover."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    bound2 = _delta_squared_floor(delta)
    idx = RangeJoinIndex(inst, delta)
    st = idx.stats
    oracle = _BoxOracle(inst, st)
    memo: dict[Box, list[Box]] = {}
    root = tuple((inst.L, 0) for _ in range(inst.d))
    todo = deque([root])
    seen = {root}
    while todo:
        combo = todo.popleft()
        st.combos_examined += 1
        box = combo_box(combo)
        if oracle.agm2(box) <= bound2 or not oracle.nonempty(box):
            continue
        idx.heavy[combo] = _box_cover(oracle, box, bound2, memo)
        # restricting one dimension can only shrink the AGM value
        for j, (level, off) in enumerate(combo):
            if level == 0:
                continue
            for half in (2 * off, 2 * off + 1):
                child = combo[:j] + ((level - 1, half),) + combo[j + 1:]
                if child not in seen:
                    seen.add(child)
                    todo.append(child)
    return idx


def query_range_join(idx: RangeJoinIndex, q, meter: DelayMeter | None = None
                     ) -> Iterator[tuple]:
    """Result tuples of values in ``q = (x1, x2)``, as original values."""
    lo, hi = idx.inst.rank_interval(*q)
    for row in idx.query(lo, hi, meter):
        yield idx.inst.unrank(row)


def brute_force_heavy(inst: JoinInstance, delta) -> set[Combo]:
    """Every heavy combination, by scanning all level vectors."""
    bound2 = _delta_squared_floor(delta)
    out = set()
    per_dim = [(l, o) for l in range(inst.L + 1) for o in range(inst.D >> l)]
    for combo in product(per_dim, repeat=inst.d):
        box = combo_box(combo)
        if inst.agm_squared(box) > bound2 and inst.nonempty(box):
            out.add(combo)
    return out


def check_box_cover(inst: JoinInstance, combo: Combo, cover: list[Box], delta,
                    exact: bool = True) -> list[str]:
    """Problems with a stored cover; an empty list means it is sound.

    ``exact`` also demands that the boxes reproduce the combination's join,
    which pruned covers (see :mod:`rangesub.listing`) deliberately do not.
    """
    bound2 = _delta_squared_floor(delta)
    problems = []
    outer = combo_box(combo)
    for b in cover:
        if any(lo < olo or hi > ohi for (lo, hi), (olo, ohi) in zip(b, outer)):
            problems.append(f"box {b} leaves the combination box")
        if not inst.nonempty(b):
            problems.append(f"box {b} has an empty join")
        if inst.agm_squared(b) > bound2:
            problems.append(f"box {b} has AGM above delta")
    for i in range(len(cover)):
        for j in range(i + 1, len(cover)):
            if all(max(a[0], b[0]) <= min(a[1], b[1]) for a, b in zip(cover[i], cover[j])):
                problems.append(f"boxes {cover[i]} and {cover[j]} overlap")
    if not exact:
        return problems
    got = [t for b in cover for t in inst.generic_join(b)]
    if set(got) != inst.nested_loop_join(outer) or len(got) != len(set(got)):
        problems.append("cover does not reproduce the combination's join exactly")
    return problems


# --------------------------------------------------------------------------
# the generalized AGM inequality
# --------------------------------------------------------------------------

def check_partition_agm(inst: JoinInstance, families: Sequence[Sequence[tuple[int, int]]],
                        dps: int = 50) -> tuple[mpmath.mpf, mpmath.mpf, bool]:
    """Both sides of the generalized AGM bound for disjoint interval families.

    ``lhs = sum over I_1 x ... x I_d of prod_e |R_e ⋉ B|^W(e)`` and
    ``rhs = prod_e |R_e|^W(e)``, with ``0^0 = 0``.
    """
    if len(families) != inst.d:
        raise ValueError("one interval family per attribute")
    for fam in families:
        spans = sorted(fam)
        if any(lo > hi for lo, hi in spans):
            raise ValueError("interval with lo > hi")
        if any(spans[i][1] >= spans[i + 1][0] for i in range(len(spans) - 1)):
            raise ValueError("intervals of a family must be pairwise disjoint")

    def power(c: int, w: Fraction):
        if c == 0:
            return mpmath.mpf(0)
        return mpmath.power(c, mpmath.mpf(w.numerator) / w.denominator)

    with mpmath.workdps(dps):
        lhs = mpmath.mpf(0)
        for box in product(*families):
            term = mpmath.mpf(1)
            for c, w in zip(inst.restricted_counts(box), inst.W):
                term *= power(c, w)
                if term == 0:
                    break
            lhs += term
        rhs = mpmath.mpf(1)
        for rows, w in zip(inst.rows, inst.W):
            rhs *= power(len(rows), w)
        ok = lhs <= rhs * (1 + mpmath.mpf("1e-9"))
    return lhs, rhs, bool(ok)


# --------------------------------------------------------------------------
# relation files
# --------------------------------------------------------------------------

def parse_relations(text: str) -> list[Relation]:
    """``r <name> <attr>...`` headers, each followed by its tuple lines."""
    rels: list[Relation] = []
    name = scheme = None
    rows: list[tuple] = []

    def close():
        if name is not None:
            rels.append(Relation(name, scheme, tuple(rows)))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "r":
            close()
            if len(parts) < 3:
                raise ValueError(f"line {lineno}: relation header needs a name and attributes")
            name, scheme, rows = parts[1], tuple(parts[2:]), []
            continue
        if name is None:
            raise ValueError(f"line {lineno}: tuple before any relation header")
        if len(parts) != len(scheme):
            raise ValueError(f"line {lineno}: expected {len(scheme)} values, got {len(parts)}")
        try:
            rows.append(tuple(float(p) if any(ch in p for ch in ".eE") else int(p) for p in parts))
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric value") from None
    close()
    return rels


def format_relations(rels: Sequence[Relation]) -> str:
    lines = []
    for r in rels:
        lines.append("r " + " ".join((r.name, *r.scheme)))
        lines.extend(" ".join(str(v) for v in t) for t in r.tuples)
    return "\n".join(lines) + "\n"

"""Uniform build/query surface over every index, plus the on-disk format.

File layout (all integers little-endian)::

    magic     8 bytes  b"RSUBIDX\\0"
    version   u16
    name      u16 length + UTF-8 structure name
    params    u32 length + UTF-8 JSON
    source    u64 content hash of the graph or relation file
    payload   u64 length + u32 CRC-32 + pickled index

The payload is a pickle, so only load index files you produced yourself.
"""

from __future__ import annotations

import json
import math
import pickle
import struct
import sys
import zlib
from dataclasses import dataclass
from hashlib import blake2b
from typing import Any, Callable, Iterable

from .counting import build_clique_count, build_generic_count
from .cycles import build_cycle_index, query_cycles
from .enumeration import DelayMeter, metered
from .graph import AttributedGraph, PatternGraph, oracle_count, oracle_list
from .join import JoinInstance, RangeJoinIndex, build_range_join, parse_relations
from .listing import build_generic_list, encode_pattern_join, query_generic_list
from .stars import build_star_index, query_stars
from .triangles import build_rte, query_triangles
from .wedge import ParameterError, WedgeIndex

MAGIC = b"RSUBIDX\0"
VERSION = 1

STRUCTURES = ("wedge-count", "generic-count", "clique-count", "range-join",
              "generic-list", "triangle-list", "star-list", "cycle-list")
COUNTING = {"wedge-count", "generic-count", "clique-count"}


class IndexFormatError(ValueError):
    """The file is not a readable index (bad magic, version, length or CRC)."""


class UsageError(ValueError):
    """Structure, pattern and parameters do not fit together."""


@dataclass
class GraphJoin:
    """A range join over a graph's pattern encoding; queries are attribute intervals."""

    G: AttributedGraph
    join: RangeJoinIndex

    def ranks(self, q) -> tuple[int, int]:
        lo, hi = self.G.rank_range(q)
        return lo + 1, hi + 1


def _join_of(ix) -> RangeJoinIndex:
    return ix.join if isinstance(ix, GraphJoin) else ix


def _join_ranks(ix, q) -> tuple[int, int]:
    return ix.ranks(q) if isinstance(ix, GraphJoin) else ix.inst.rank_interval(*q)


@dataclass
class Built:
    """An index together with what is needed to query and re-check it."""

    structure: str
    params: dict
    source_hash: int
    index: Any

    # -- sizes ---------------------------------------------------------
    @property
    def stored_entries(self) -> int:
        ix, s = self.index, self.structure
        if s in COUNTING or s == "star-list":
            return ix.stored_entries
        if s == "range-join":
            return _join_of(ix).inst.N + _join_of(ix).stored_boxes
        if s == "generic-list":
            return ix.join.inst.N + ix.stored_boxes
        if s == "triangle-list":
            return sum(ix.point_counts)
        if s == "cycle-list":
            return ix.catalog.stored_entries + ix.contributing.size
        raise AssertionError(s)

    # -- queries ---------------------------------------------------------
    def run(self, q, meter: DelayMeter) -> int:
        """Answer one query; listing structures are drained and counted."""
        s, ix = self.structure, self.index
        if s in COUNTING:
            value = ix.query(q, meter)
            meter.emit()
            meter.finish()
            return value
        return sum(1 for _ in metered(self.enumerate(q, meter), meter))

    def enumerate(self, q, meter: DelayMeter | None = None) -> Iterable:
        s, ix = self.structure, self.index
        if s == "range-join":
            lo, hi = _join_ranks(ix, q)
            return _join_of(ix).query(lo, hi, meter)
        if s == "generic-list":
            return query_generic_list(ix, q, meter)
        if s == "triangle-list":
            return query_triangles(ix.G, ix, q, meter)
        if s == "star-list":
            return query_stars(ix, q, meter)
        if s == "cycle-list":
            return query_cycles(ix, q, meter)
        raise UsageError(f"{s} is a counting structure")

    def answer(self, q):
        """Count, or the set of listed results."""
        if self.structure in COUNTING:
            return self.index.query(q)
        return set(self.enumerate(q))


def _pattern_for(structure: str, pattern: str | None, ell: int | None) -> PatternGraph | None:
    Q = PatternGraph.parse(pattern) if pattern else None
    if structure == "wedge-count":
        if Q is not None and Q != PatternGraph.wedge():
            raise UsageError("wedge-count only counts wedges")
        return PatternGraph.wedge()
    if structure == "clique-count":
        Q = Q or PatternGraph.triangle()
        if Q.kind != "clique" or len(Q.edges) != Q.k * (Q.k - 1) // 2:
            raise UsageError("clique-count needs a clique pattern")
        return Q
    if structure == "triangle-list":
        if Q is not None and Q != PatternGraph.triangle():
            raise UsageError("triangle-list only lists triangles")
        return PatternGraph.triangle()
    if structure == "star-list":
        if Q is None:
            if ell is None:
                raise UsageError("star-list needs --ell or a star pattern")
            return PatternGraph.star(ell)
        leaves = Q.k - 1
        if Q != PatternGraph.star(leaves) and Q != PatternGraph.wedge():
            raise UsageError("star-list needs a star pattern")
        return PatternGraph.star(leaves)
    if structure == "cycle-list":
        if Q is None:
            if ell is None:
                raise UsageError("cycle-list needs --ell or a cycle pattern")
            return PatternGraph.cycle(2 * ell)
        if Q.kind != "cycle" or Q.k % 2:
            raise UsageError("cycle-list needs an even cycle pattern")
        return Q
    if structure in ("generic-count", "generic-list"):
        if Q is None:
            raise UsageError(f"{structure} needs --pattern")
        return Q
    return Q


def text_hash(text: str | bytes) -> int:
    data = text.encode() if isinstance(text, str) else text
    return int.from_bytes(blake2b(data, digest_size=8).digest(), "little")


def build(structure: str, G: AttributedGraph | None = None, *, pattern: str | None = None,
          lam: float | None = None, delta: float | None = None, ell: int | None = None,
          relations_text: str | None = None) -> Built:
    """Build ``structure``; raises :class:`UsageError` or :class:`ParameterError`."""
    if structure not in STRUCTURES:
        raise UsageError(f"unknown structure {structure!r}; choose from {', '.join(STRUCTURES)}")
    if structure == "range-join" and relations_text is not None:
        if delta is None:
            raise UsageError("range-join needs --delta")
        inst = JoinInstance(parse_relations(relations_text))
        return Built(structure, {"delta": delta}, text_hash(relations_text),
                     build_range_join(inst, delta))
    if G is None:
        raise UsageError(f"{structure} needs --graph")
    Q = _pattern_for(structure, pattern, ell)
    params: dict = {"pattern": pattern} if pattern else {}
    h = G.content_hash()
    if structure == "wedge-count":
        lam = 1.0 if lam is None else lam
        params["lambda"] = lam
        return Built(structure, params, h, WedgeIndex(G, lam))
    if structure == "generic-count":
        return Built(structure, params, h, build_generic_count(G, Q))
    if structure == "clique-count":
        return Built(structure, params, h, build_clique_count(G, Q.k))
    if structure in ("range-join", "generic-list"):
        if Q is None:
            raise UsageError("range-join over a graph needs --pattern (or use --relations)")
        if delta is None:
            raise UsageError(f"{structure} needs --delta")
        if delta < 1:
            raise ParameterError(f"delta={delta} must be >= 1")
        params["delta"] = delta
        params["pattern"] = pattern
        if structure == "range-join":
            return Built(structure, params, h,
                         GraphJoin(G, build_range_join(encode_pattern_join(G, Q), delta)))
        return Built(structure, params, h, build_generic_list(G, Q, delta))
    if structure == "triangle-list":
        return Built(structure, params, h, build_rte(G))
    if structure == "star-list":
        params["ell"] = Q.k - 1
        return Built(structure, params, h, build_star_index(G, Q.k - 1))
    params["ell"] = Q.k // 2
    return Built(structure, params, h, build_cycle_index(G, Q.k // 2))


def count_build_work(fn: Callable[[], Any]) -> tuple[Any, int]:
    """Run ``fn`` counting Python and C function-call events as work units."""
    calls = 0

    def prof(_frame, event, _arg):
        nonlocal calls
        if event in ("call", "c_call"):
            calls += 1

    old = sys.getprofile()
    sys.setprofile(prof)
    try:
        out = fn()
    finally:
        sys.setprofile(old)
    return out, calls


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def dumps(b: Built) -> bytes:
    name = b.structure.encode()
    params = json.dumps(b.params, sort_keys=True).encode()
    payload = pickle.dumps(b.index, protocol=pickle.HIGHEST_PROTOCOL)
    return b"".join([
        MAGIC,
        struct.pack("<H", VERSION),
        struct.pack("<H", len(name)), name,
        struct.pack("<I", len(params)), params,
        struct.pack("<Q", b.source_hash),
        struct.pack("<QI", len(payload), zlib.crc32(payload)), payload,
    ])


def loads(data: bytes) -> Built:
    view = memoryview(data)
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(view):
            raise IndexFormatError("truncated index file")
        out = bytes(view[pos:pos + n])
        pos += n
        return out

    if take(8) != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    (version,) = struct.unpack("<H", take(2))
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    (ln,) = struct.unpack("<H", take(2))
    structure = take(ln).decode()
    (lp,) = struct.unpack("<I", take(4))
    try:
        params = json.loads(take(lp))
    except ValueError:
        raise IndexFormatError("unreadable parameter block") from None
    (source,) = struct.unpack("<Q", take(8))
    size, crc = struct.unpack("<QI", take(12))
    payload = take(size)
    if pos != len(view):
        raise IndexFormatError("trailing bytes after payload")
    if zlib.crc32(payload) != crc:
        raise IndexFormatError("payload checksum mismatch")
    if structure not in STRUCTURES:
        raise IndexFormatError(f"unknown structure {structure!r}")
    return Built(structure, params, source, pickle.loads(payload))


# --------------------------------------------------------------------------
# oracle checks
# --------------------------------------------------------------------------

def reference(b: Built, G: AttributedGraph | None, q):
    """The oracle's answer for ``q`` in the same shape as :meth:`Built.answer`."""
    s = b.structure
    if s == "range-join":
        inst: JoinInstance = _join_of(b.index).inst
        lo, hi = _join_ranks(b.index, q)
        return inst.nested_loop_join(((lo, hi),) * inst.d) if lo <= hi else set()
    Q = _pattern_of(b)
    if s in COUNTING:
        return oracle_count(G, Q, q)
    return oracle_list(G, Q, q)


def _pattern_of(b: Built) -> PatternGraph:
    s, p = b.structure, b.params
    if s == "wedge-count":
        return PatternGraph.wedge()
    if s == "triangle-list":
        return PatternGraph.triangle()
    if s == "star-list":
        return PatternGraph.star(p["ell"])
    if s == "cycle-list":
        return PatternGraph.cycle(2 * p["ell"])
    if s == "clique-count":
        return b.index.Q
    return PatternGraph.parse(p["pattern"])


def check_against_oracle(b: Built, G: AttributedGraph | None, queries: Iterable) -> list[str]:
    """Mismatches between the index and the oracle, one message per bad query."""
    problems = []
    for q in queries:
        try:
            got = b.answer(q)
            if b.structure not in COUNTING:
                items = list(b.enumerate(q))
                if len(items) != len(set(items)):
                    problems.append(f"{b.structure} {tuple(q)}: duplicate outputs")
        except Exception as exc:  # a corrupted index may fail in any way
            problems.append(f"{b.structure} {tuple(q)}: {type(exc).__name__}: {exc}")
            continue
        want = reference(b, G, q)
        if got != want:
            gs = got if isinstance(got, int) else len(got)
            ws = want if isinstance(want, int) else len(want)
            problems.append(f"{b.structure} {tuple(q)}: got {gs}, oracle {ws}")
    return problems


def clamp_lambda(lam: float, m: int) -> float:
    return min(max(1.0, lam), max(1.0, math.sqrt(m)))

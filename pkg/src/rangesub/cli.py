"""``rangesub`` command line: build, query, verify and tradeoff.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad flags, parameters out of range, unreadable inputs, hash
mismatch).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .enumeration import DelayMeter
from .graph import GraphFormatError, Interval, parse_graph, random_graph, random_intervals
from .structures import (STRUCTURES, Built, IndexFormatError, UsageError, build,
                         check_against_oracle, clamp_lambda, count_build_work, dumps, loads)
from .wedge import ParameterError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def parse_queries(text: str) -> list[Interval]:
    """One ``x1 x2`` pair per line; ``-inf`` / ``inf`` allowed, ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise _Usage(f"queries line {lineno}: expected 'x1 x2'")
        try:
            out.append(Interval(float(parts[0]), float(parts[1])))
        except ValueError:
            raise _Usage(f"queries line {lineno}: not a number") from None
    return out


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x)) if not float(x).is_integer() else str(int(x))


def _read(path: str | None, what: str) -> str:
    if path is None:
        raise _Usage(f"--{what} is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {what} file {path}: {exc.strerror}") from None


def _writer(out: str | None):
    fh = open(out, "w", newline="") if out else sys.stdout
    return fh, csv.writer(fh)


def _build_from_args(args, G=None) -> Built:
    rel = _read(args.relations, "relations") if getattr(args, "relations", None) else None
    if G is None and rel is None:
        G = parse_graph(_read(args.graph, "graph"))
    return build(args.structure, G, pattern=args.pattern, lam=args.lam, delta=args.delta,
                 ell=args.ell, relations_text=rel)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_build(args) -> int:
    if not args.out:
        raise _Usage("--out is required")
    built, work = count_build_work(lambda: _build_from_args(args))
    Path(args.out).write_bytes(dumps(built))
    fh, w = _writer(None)
    w.writerow(["structure", "stored_entries", "build_work", "source_hash"])
    w.writerow([built.structure, built.stored_entries, work, f"{built.source_hash:016x}"])
    return EXIT_OK


def _load(path: str | None) -> Built:
    if path is None:
        raise _Usage("--index is required")
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _Usage(f"cannot read index {path}: {exc.strerror}") from None
    return loads(data)


def _source_hash(args) -> int | None:
    if getattr(args, "relations", None):
        from .structures import text_hash
        return text_hash(_read(args.relations, "relations"))
    if args.graph:
        return parse_graph(_read(args.graph, "graph")).content_hash()
    return None


def cmd_query(args) -> int:
    built = _load(args.index)
    h = _source_hash(args)
    if h is not None and h != built.source_hash:
        raise _Usage(f"index was built from a different input "
                     f"({built.source_hash:016x} != {h:016x})")
    queries = parse_queries(_read(args.queries, "queries"))
    fh, w = _writer(args.out)
    w.writerow(["x1", "x2", "result", "max_delay", "total_work"])
    for q in queries:
        meter = DelayMeter()
        value = built.run(q, meter)
        w.writerow([_fmt(q.lo), _fmt(q.hi), value, meter.max_gap, meter.work])
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def _random_graphs(trials: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(4, 13))
        yield random_graph(n, float(rng.uniform(0.2, 0.5)), rng, attr_levels=int(rng.integers(3, 12))), rng


def cmd_verify(args) -> int:
    failures: list[str] = []
    checked = 0
    rng = np.random.default_rng(args.seed)
    if args.index:
        try:
            built = _load(args.index)
        except IndexFormatError as exc:
            print(f"FAIL index {args.index}: {exc}")
            return EXIT_FAIL
        G = None
        if built.structure != "range-join" or not args.relations:
            G = parse_graph(_read(args.graph, "graph"))
            if G.content_hash() != built.source_hash:
                print("FAIL index was built from a different graph")
                return EXIT_FAIL
        G_for = getattr(built.index, "G", None) if G is None else G
        queries = random_intervals(G_for, 30, rng) if G_for is not None else \
            [Interval.full(), *(Interval(float(a), float(b)) for a, b in
                                sorted(rng.integers(0, 20, size=(29, 2)).tolist()))]
        failures += check_against_oracle(built, G_for, queries)
        checked += 1
    else:
        if args.structure is None:
            raise _Usage("--structure is required")
        graphs = []
        if args.graph or args.relations:
            graphs.append((None, rng))
        graphs += list(_random_graphs(args.trials, args.seed))
        for G, grng in graphs:
            lam = args.lam
            if G is None:
                built = _build_from_args(args)
                G = getattr(built.index, "G", None) or (
                    parse_graph(_read(args.graph, "graph")) if args.graph else None)
            else:
                if lam is not None:
                    lam = clamp_lambda(lam, G.m)
                built = build(args.structure, G, pattern=args.pattern, lam=lam,
                              delta=args.delta, ell=args.ell)
            if G is not None:
                queries = random_intervals(G, 30, grng)
            else:
                queries = [Interval.full(), Interval(1, 4), Interval(3, 2)]
            failures += check_against_oracle(built, G, queries)
            checked += 1
    for f in failures:
        print(f"FAIL {f}")
    status = "PASS" if not failures else "FAIL"
    print(f"{status} {checked} instance(s), {len(failures)} failure(s)")
    return EXIT_OK if not failures else EXIT_FAIL


def _sweep(text: str | None, name: str) -> list[float]:
    if not text:
        raise _Usage(f"--{name} sweep values are required, e.g. --{name} 1,2,4,8")
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise _Usage(f"--{name}: expected comma-separated numbers") from None


def cmd_tradeoff(args) -> int:
    G = parse_graph(_read(args.graph, "graph"))
    if args.structure == "wedge-count":
        key, values = "lambda", _sweep(args.lam_sweep, "lambda")
    elif args.structure in ("range-join", "generic-list"):
        key, values = "delta", _sweep(args.delta_sweep, "delta")
    else:
        raise _Usage("tradeoff sweeps wedge-count (--lambda) or range-join/generic-list (--delta)")
    if args.queries:
        queries = parse_queries(_read(args.queries, "queries"))
    else:
        queries = random_intervals(G, 20, np.random.default_rng(args.seed))
    fh, w = _writer(args.out)
    w.writerow([key, "stored_entries", "mean_delay", "max_delay", "total_work"])
    rows = []
    for v in values:
        kw = {"lam": v} if key == "lambda" else {"delta": v}
        built = build(args.structure, G, pattern=args.pattern, ell=args.ell, **kw)
        gaps, total = [], 0
        for q in queries:
            meter = DelayMeter()
            built.run(q, meter)
            gaps.append(meter.max_gap)
            total += meter.work
        row = (v, built.stored_entries, sum(gaps) / len(gaps), max(gaps), total)
        rows.append(row)
        w.writerow([_fmt(v), row[1], f"{row[2]:.3f}", row[3], row[4]])
    if fh is not sys.stdout:
        fh.close()
    order = sorted(rows)
    entries_ok = all(a[1] >= b[1] for a, b in zip(order, order[1:]))
    delay_ok = all(a[2] <= b[2] for a, b in zip(order, order[1:]))
    print(f"entries non-increasing in {key}: {'yes' if entries_ok else 'no'}; "
          f"mean delay non-decreasing: {'yes' if delay_ok else 'no'}", file=sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rangesub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sweep=False):
        sp.add_argument("--graph", help="graph file (v/e lines)")
        sp.add_argument("--relations", help="relation file for range-join")
        sp.add_argument("--structure", choices=STRUCTURES)
        sp.add_argument("--pattern", help="wedge, triangle, paw, clique:4, star:3, path:3, cycle:4, edges:...")
        if sweep:
            sp.add_argument("--lambda", dest="lam_sweep", help="comma-separated lambda values")
            sp.add_argument("--delta", dest="delta_sweep", help="comma-separated delta values")
        else:
            sp.add_argument("--lambda", dest="lam", type=float)
            sp.add_argument("--delta", type=float)
        sp.add_argument("--ell", type=int)
        sp.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("build", help="build an index and write it to --out")
    common(b)
    b.add_argument("--out")
    b.set_defaults(run=cmd_build)

    q = sub.add_parser("query", help="answer a query file against a saved index")
    q.add_argument("--index")
    q.add_argument("--queries")
    q.add_argument("--graph", help="check the index against this graph's hash")
    q.add_argument("--relations", help="check the index against this relation file's hash")
    q.add_argument("--out")
    q.set_defaults(run=cmd_query)

    v = sub.add_parser("verify", help="compare a structure (or a saved index) with the oracles")
    common(v)
    v.add_argument("--trials", type=int, default=5)
    v.add_argument("--index")
    v.set_defaults(run=cmd_verify)

    t = sub.add_parser("tradeoff", help="sweep lambda or delta; CSV of space and delay")
    common(t, sweep=True)
    t.add_argument("--queries")
    t.add_argument("--out")
    t.set_defaults(run=cmd_tradeoff)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.run(args)
    except (_Usage, UsageError, ParameterError, GraphFormatError, IndexFormatError) as exc:
        print(f"rangesub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"rangesub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

import csv
import io
import subprocess
import sys

import pytest

from rangesub.cli import main, parse_queries
from rangesub.graph import G5_TEXT, Interval, fixture_g5, format_graph, random_graph
from rangesub.structures import STRUCTURES, IndexFormatError, build, dumps, loads

from helpers import rng_for

QUERIES = "-inf inf\n2 4\n3 2\n2 5\n"

OPTS = {
    "wedge-count": ["--lambda", "2"],
    "generic-count": ["--pattern", "paw"],
    "clique-count": ["--pattern", "triangle"],
    "range-join": ["--pattern", "triangle", "--delta", "2"],
    "generic-list": ["--pattern", "cycle:4", "--delta", "1"],
    "triangle-list": [],
    "star-list": ["--ell", "3"],
    "cycle-list": ["--ell", "2"],
}


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "g5.txt"
    g.write_text(G5_TEXT)
    q = tmp_path / "q.txt"
    q.write_text(QUERIES)
    return tmp_path, str(g), str(q)


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_queries():
    assert parse_queries("# c\n-inf 3\n1 inf\n") == [Interval(float("-inf"), 3), Interval(1, float("inf"))]


@pytest.mark.parametrize("structure", STRUCTURES)
def test_build_query_verify(structure, files, capsys):
    d, g, q = files
    ix = str(d / "ix.bin")
    code, out, _ = run(capsys, "build", "--graph", g, "--structure", structure, *OPTS[structure], "--out", ix)
    assert code == 0
    head, row = rows(out)
    assert head == ["structure", "stored_entries", "build_work", "source_hash"]
    assert row[0] == structure and int(row[1]) >= 0 and int(row[2]) > 0
    code, out, _ = run(capsys, "query", "--index", ix, "--queries", q, "--graph", g)
    assert code == 0
    table = rows(out)
    assert table[0] == ["x1", "x2", "result", "max_delay", "total_work"] and len(table) == 5
    code, out, _ = run(capsys, "verify", "--graph", g, "--structure", structure, *OPTS[structure],
                       "--trials", "2")
    assert code == 0 and out.strip().splitlines()[-1].startswith("PASS")
    code, out, _ = run(capsys, "verify", "--index", ix, "--graph", g)
    assert code == 0


def test_g5_answers(files, capsys):
    d, g, q = files
    expect = {"wedge-count": ["10", "3", "0", "5"], "clique-count": ["2", "1", "0", "1"],
              "triangle-list": ["2", "1", "0", "1"], "generic-count": ["5", "0", "0", "1"]}
    for s, want in expect.items():
        ix = str(d / f"{s}.bin")
        run(capsys, "build", "--graph", g, "--structure", s, *OPTS[s], "--out", ix)
        _, out, _ = run(capsys, "query", "--index", ix, "--queries", q)
        assert [r[2] for r in rows(out)[1:]] == want


def test_round_trip_matches_fresh_build():
    G = random_graph(12, 0.4, rng_for(121), attr_levels=6)
    qs = [Interval.full(), Interval(1, 3), Interval(2, 5), Interval(4, 1)]
    for s in STRUCTURES:
        opts = {"wedge-count": dict(lam=2), "generic-count": dict(pattern="path:3"),
                "clique-count": dict(pattern="triangle"), "range-join": dict(pattern="path:2", delta=2),
                "generic-list": dict(pattern="triangle", delta=2), "star-list": dict(ell=2),
                "cycle-list": dict(ell=2), "triangle-list": {}}[s]
        b = build(s, G, **opts)
        data = dumps(b)
        back = loads(data)
        assert back.structure == s and back.params == b.params and back.source_hash == G.content_hash()
        for q in qs:
            assert back.answer(q) == b.answer(q)


def test_corrupt_index(files, capsys):
    d, g, q = files
    ix = d / "ix.bin"
    run(capsys, "build", "--graph", g, "--structure", "triangle-list", "--out", str(ix))
    data = bytearray(ix.read_bytes())
    data[-3] ^= 0xFF
    ix.write_bytes(bytes(data))
    with pytest.raises(IndexFormatError):
        loads(bytes(data))
    assert run(capsys, "verify", "--index", str(ix), "--graph", g)[0] == 1
    assert run(capsys, "query", "--index", str(ix), "--queries", q)[0] == 2
    ix.write_bytes(b"nonsense")
    assert run(capsys, "query", "--index", str(ix), "--queries", q)[0] == 2


def test_hash_mismatch(files, capsys):
    d, g, q = files
    ix = str(d / "ix.bin")
    run(capsys, "build", "--graph", g, "--structure", "triangle-list", "--out", ix)
    other = d / "other.txt"
    other.write_text(G5_TEXT.replace("v 5 5", "v 5 6"))
    code, _, err = run(capsys, "query", "--index", ix, "--queries", q, "--graph", str(other))
    assert code == 2 and "different input" in err


@pytest.mark.parametrize("argv", [
    ["build", "--structure", "wedge-count", "--lambda", "0"],
    ["build", "--structure", "wedge-count", "--lambda", "9"],
    ["build", "--structure", "clique-count", "--pattern", "path:3"],
    ["build", "--structure", "triangle-list", "--pattern", "wedge"],
    ["build", "--structure", "generic-list", "--pattern", "triangle"],
    ["build", "--structure", "range-join", "--pattern", "triangle", "--delta", "0.5"],
])
def test_usage_errors(argv, files, capsys):
    d, g, _ = files
    code, _, err = run(capsys, *argv, "--graph", g, "--out", str(d / "x.bin"))
    assert code == 2 and "error" in err


def test_missing_file(capsys):
    assert run(capsys, "build", "--graph", "/nonexistent", "--structure", "triangle-list",
               "--out", "/tmp/x")[0] == 2


def test_verify_zero_trials(files, capsys):
    _, g, _ = files
    code, out, _ = run(capsys, "verify", "--graph", g, "--structure", "cycle-list", "--ell", "2",
                       "--trials", "0")
    assert code == 0 and "1 instance" in out


def test_relation_file(files, capsys):
    d, _, _ = files
    rel = d / "r.txt"
    rel.write_text("r R A B\n1 2\n2 3\n1 3\nr S B C\n2 3\n3 1\nr T A C\n1 3\n2 1\n")
    ix = str(d / "rj.bin")
    assert run(capsys, "build", "--relations", str(rel), "--structure", "range-join",
               "--delta", "1", "--out", ix)[0] == 0
    qf = d / "rq.txt"
    qf.write_text("-inf inf\n1 2\n")
    code, out, _ = run(capsys, "query", "--index", ix, "--queries", str(qf), "--relations", str(rel))
    assert code == 0 and [r[2] for r in rows(out)[1:]] == ["2", "0"]
    assert run(capsys, "verify", "--index", ix, "--relations", str(rel))[0] == 0


def test_tradeoff(tmp_path, capsys):
    G = random_graph(60, 0.1, rng_for(122))
    g = tmp_path / "g.txt"
    g.write_text(format_graph(G))
    code, out, err = run(capsys, "tradeoff", "--graph", str(g), "--structure", "wedge-count",
                         "--lambda", "1,2,4,8")
    table = rows(out)
    assert code == 0 and len(table) == 5
    entries = [int(r[1]) for r in table[1:]]
    assert entries == sorted(entries, reverse=True)
    assert "entries non-increasing in lambda: yes" in err
    code, out, _ = run(capsys, "tradeoff", "--graph", str(g), "--structure", "wedge-count", "--lambda", "2")
    assert len(rows(out)) == 2
    small = tmp_path / "s.txt"
    small.write_text(G5_TEXT)
    code, out, _ = run(capsys, "tradeoff", "--graph", str(small), "--structure", "range-join",
                       "--pattern", "triangle", "--delta", "1,2,4")
    assert code == 0 and len(rows(out)) == 4


def test_console_script(files):
    _, g, q = files
    res = subprocess.run([sys.executable, "-m", "rangesub.cli", "verify", "--graph", g,
                          "--structure", "triangle-list", "--trials", "0"], capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout

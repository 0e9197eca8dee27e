"""Seeded graph corpus and small utilities shared by the test modules."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from rangesub.graph import AttributedGraph, random_graph

CORPUS_SIZE = 200
CORPUS_SEED = 20240611


@lru_cache(maxsize=None)
def corpus() -> tuple[AttributedGraph, ...]:
    """200 random graphs with n <= 40 and m <= 150; half use tied integer attributes."""
    rng = np.random.default_rng(CORPUS_SEED)
    out = []
    for i in range(CORPUS_SIZE):
        n = int(rng.integers(2, 41))
        p = float(rng.uniform(0.05, 0.5))
        levels = int(rng.integers(2, 30)) if i % 2 else None
        out.append(random_graph(n, p, rng, max_edges=150, attr_levels=levels))
    return tuple(out)


def rng_for(*key: int) -> np.random.Generator:
    return np.random.default_rng([CORPUS_SEED, *key])


def drain(it):
    """List an iterator and assert it has no repeated element."""
    out = list(it)
    assert len(out) == len(set(out)), "duplicate outputs"
    return out


SCHEME_SHAPES = (
    (("A", "B"),),
    (("A", "B"), ("B", "C")),
    (("A", "B"), ("B", "C"), ("A", "C")),
    (("A", "B"), ("B", "C"), ("C", "D")),
    (("A", "B"), ("B", "C"), ("C", "D"), ("A", "D")),
    (("A", "B"), ("A", "C"), ("A", "D")),
)


def random_join_instance(rng, max_tuples: int = 40, values: int = 12, shapes=SCHEME_SHAPES):
    """Binary-scheme join with at most four relations over a small value range."""
    from rangesub.join import JoinInstance, Relation

    shape = shapes[int(rng.integers(0, len(shapes)))]
    rels = []
    for i, scheme in enumerate(shape):
        k = int(rng.integers(0, max_tuples + 1))
        rows = {tuple(int(v) for v in rng.integers(1, values + 1, 2)) for _ in range(k)}
        rels.append(Relation(f"R{i}", scheme, tuple(sorted(rows))))
    return JoinInstance(rels)


# criterion number -> (PASS/FAIL, title, detail); printed by conftest
ACCEPTANCE: dict[int, tuple[str, str, str]] = {}

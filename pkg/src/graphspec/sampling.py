"""Seeded random streams and random graphs.

Every random draw in the package comes from :func:`rng_for`, which derives an
independent generator from one integer seed and a stream name, so results
never depend on ambient entropy or on the order in which streams are created.
"""

from __future__ import annotations

import zlib

import numpy as np

from .functional import FamilyPredicate
from .graph import Graph, has_clique, pair_list

_MASK64 = (1 << 64) - 1


def _sequence(seed: int, name: str) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(seed) & _MASK64, spawn_key=(zlib.crc32(name.encode()),))


def rng_for(seed: int, name: str) -> np.random.Generator:
    """Generator for the stream ``name`` under ``seed``."""
    return np.random.default_rng(_sequence(seed, name))


def derive_seed(seed: int, name: str) -> int:
    """A 64-bit child seed for the stream ``name``."""
    return int(_sequence(seed, name).generate_state(1, dtype=np.uint64)[0])


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Erdos-Renyi graph: each pair is an edge independently with probability ``p``."""
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def random_member(P: FamilyPredicate, n: int, rng: np.random.Generator) -> Graph:
    """A random graph of order ``n`` drawn directly from the family.

    ``all``: each pair with probability 1/2. ``rpartite``: a uniform random
    r-colouring, then each bichromatic pair with probability 1/2. ``krfree``:
    pairs in random order, each added with probability 1/2 unless it would
    close an r-clique.
    """
    if P.kind == "all":
        return random_graph(n, rng)
    if P.kind == "rpartite":
        colour = rng.integers(0, P.r, size=n)
        upper = np.triu((rng.random((n, n)) < 0.5) & (colour[:, None] != colour[None, :]), 1)
        return Graph(upper | upper.T)
    pairs = pair_list(n)
    order = rng.permutation(len(pairs))
    coins = rng.random(len(pairs)) < 0.5
    rows = [0] * n
    for idx, keep in zip(order, coins):
        if not keep:
            continue
        u, v = pairs[idx]
        if not has_clique(rows, rows[u] & rows[v], P.r - 2):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    a = np.array([[(rows[u] >> v) & 1 for v in range(n)] for u in range(n)], dtype=bool)
    return Graph(a.reshape(n, n))

"""Immutable labeled graphs and the constructive operations applied to them.

A :class:`Graph` wraps a read-only symmetric boolean adjacency matrix with an
all-false diagonal. Every operation returns a fresh graph; inputs are never
modified.

Blow-up layout: in ``blowup_independent(G, t)`` and ``blowup_clique(G, t)`` the
copies of vertex ``u`` occupy the contiguous index block ``[u*t, (u+1)*t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Exact backtracking predicates work on 64-bit-style row masks.
PREDICATE_MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class Graph:
    """Loop-free undirected graph on vertices ``0..n-1``."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.array(self.adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] and a.diagonal().any():
            raise ValueError("adjacency has a nonzero diagonal (loops are not allowed)")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def __len__(self):
        return self.n

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adj)) // 2

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def matrix(self) -> np.ndarray:
        """Adjacency as a fresh float64 array."""
        return self.adj.astype(np.float64)

    def row_masks(self) -> list[int]:
        """Neighbourhoods as integer bit masks (bit ``v`` of entry ``u`` is edge uv)."""
        weights = [1 << v for v in range(self.n)]
        return [sum(w for w, x in zip(weights, row) if x) for row in self.adj.tolist()]

    def flip(self, u: int, v: int) -> Graph:
        """Copy with the pair ``uv`` toggled."""
        if u == v:
            raise ValueError("cannot flip a loop")
        a = self.adj.copy()
        a[u, v] = a[v, u] = not a[u, v]
        return Graph(a)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError("n must be non-negative")
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a)


@dataclass(frozen=True)
class VertexSet:
    """Strictly increasing, duplicate-free tuple of vertex indices."""

    members: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.members)
        if any(x < 0 for x in m):
            raise ValueError("vertex indices must be non-negative")
        if any(b <= a for a, b in zip(m, m[1:])):
            raise ValueError("vertex set must be strictly increasing and duplicate-free")
        object.__setattr__(self, "members", m)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> VertexSet:
        vs = [int(v) for v in vertices]
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex in vertex set")
        return cls(tuple(sorted(vs)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _as_vertex_set(S) -> VertexSet:
    return S if isinstance(S, VertexSet) else VertexSet.of(S)


# --- constructors -----------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(~np.eye(n, dtype=bool))


def empty(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(np.zeros((n, n), dtype=bool))


def complement(G: Graph) -> Graph:
    a = ~G.adj
    np.fill_diagonal(a, False)
    return Graph(a)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """``G`` on ``0..G.n-1`` followed by ``H`` shifted by ``G.n``; no cross edges."""
    a = np.zeros((G.n + H.n, G.n + H.n), dtype=bool)
    a[: G.n, : G.n] = G.adj
    a[G.n :, G.n :] = H.adj
    return Graph(a)


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    a = np.ones((G.n + H.n, G.n + H.n), dtype=bool)
    a[: G.n, : G.n] = G.adj
    a[G.n :, G.n :] = H.adj
    return Graph(a)


def blowup_independent(G: Graph, t: int) -> Graph:
    """Replace each vertex by ``t`` pairwise non-adjacent copies."""
    if t < 1:
        raise ValueError(f"blow-up factor must be >= 1, got {t}")
    return Graph(np.kron(G.adj, np.ones((t, t), dtype=bool)))


def blowup_clique(G: Graph, t: int) -> Graph:
    """Replace each vertex by a ``t``-clique; equals the complement of the
    independent blow-up of the complement."""
    if t < 1:
        raise ValueError(f"blow-up factor must be >= 1, got {t}")
    a = np.kron(G.adj | np.eye(G.n, dtype=bool), np.ones((t, t), dtype=bool))
    np.fill_diagonal(a, False)
    return Graph(a)


def add_isolated(G: Graph, m: int) -> Graph:
    """Append ``m`` isolated vertices after the existing ones."""
    if m < 0:
        raise ValueError("cannot add a negative number of vertices")
    return disjoint_union(G, empty(m))


def induced_subgraph(G: Graph, S) -> Graph:
    """Subgraph on ``S``, relabeled in increasing vertex order."""
    S = _as_vertex_set(S)
    idx = np.array(S.members, dtype=np.intp)
    if len(idx) and idx[-1] >= G.n:
        raise IndexError(f"vertex {idx[-1]} out of range for a graph of order {G.n}")
    return Graph(G.adj[np.ix_(idx, idx)])


def delete_vertices(G: Graph, S) -> Graph:
    """Induced subgraph on the complement of ``S``."""
    S = _as_vertex_set(S)
    if len(S) and S.members[-1] >= G.n:
        raise IndexError(f"vertex {S.members[-1]} out of range for a graph of order {G.n}")
    drop = set(S.members)
    return induced_subgraph(G, VertexSet(tuple(v for v in range(G.n) if v not in drop)))


# --- edge masks ---------------------------------------------------------------

def pair_list(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 order: ``(0,1), (0,2), (1,2), (0,3), ...``.

    Bit ``b`` of an edge mask refers to ``pair_list(n)[b]``.
    """
    return [(i, j) for j in range(1, n) for i in range(j)]


def from_edge_mask(n: int, mask: int) -> Graph:
    pairs = pair_list(n)
    if mask < 0 or mask >> len(pairs):
        raise ValueError(f"edge mask {mask} out of range for n={n}")
    a = np.zeros((n, n), dtype=bool)
    for b, (i, j) in enumerate(pairs):
        if mask >> b & 1:
            a[i, j] = a[j, i] = True
    return Graph(a)


def edge_mask(G: Graph) -> int:
    mask = 0
    for b, (i, j) in enumerate(pair_list(G.n)):
        if G.adj[i, j]:
            mask |= 1 << b
    return mask


def adjacency_batch(n: int, masks: Sequence[int] | np.ndarray) -> np.ndarray:
    """Stack of float64 adjacency matrices, one per edge mask."""
    masks = np.asarray(masks, dtype=np.int64)
    pairs = pair_list(n)
    out = np.zeros((len(masks), n, n), dtype=np.float64)
    for b, (i, j) in enumerate(pairs):
        bit = ((masks >> b) & 1).astype(np.float64)
        out[:, i, j] = bit
        out[:, j, i] = bit
    return out


# --- exact predicates ---------------------------------------------------------

def _guard_order(G: Graph):
    if G.n > PREDICATE_MAX_ORDER:
        raise ValueError(
            f"exact predicates are limited to n <= {PREDICATE_MAX_ORDER}, got n={G.n}"
        )


def has_clique(rows: list[int], candidates: int, need: int) -> bool:
    """Whether the vertices in bit mask ``candidates`` contain a ``need``-clique."""
    if need == 0:
        return True
    while candidates:
        if candidates.bit_count() < need:
            return False
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        # later candidates only, so each clique is explored once
        if has_clique(rows, candidates & rows[v], need - 1):
            return True
    return False


def clique_free_after_adding(G: Graph, u: int, v: int, r: int) -> bool:
    """Whether ``G + uv`` is still K_r-free, assuming ``G`` is."""
    rows = G.row_masks()
    return not has_clique(rows, rows[u] & rows[v], r - 2)


def is_kr_free(G: Graph, r: int) -> bool:
    """True iff ``G`` contains no clique on ``r`` vertices (exact search)."""
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    _guard_order(G)
    if r > G.n:
        return True
    rows = G.row_masks()
    return not has_clique(rows, (1 << G.n) - 1, r)


def is_r_partite(G: Graph, r: int) -> bool:
    """True iff ``G`` admits a proper colouring with ``r`` colours (exact search)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    _guard_order(G)
    n = G.n
    if r >= n:
        return True
    if G.edge_count == 0:
        return True
    if r == 1:
        return False
    rows = G.row_masks()
    order = _colouring_order(rows, n)
    colour = [-1] * n

    def assign(pos: int, used: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        nb = rows[v]
        forbidden = 0
        for w in range(n):
            if nb >> w & 1 and colour[w] >= 0:
                forbidden |= 1 << colour[w]
        # a fresh colour is interchangeable with any other fresh one
        for c in range(min(used + 1, r)):
            if not forbidden >> c & 1:
                colour[v] = c
                if assign(pos + 1, max(used, c + 1)):
                    return True
        colour[v] = -1
        return False

    return assign(0, 0)


def _colouring_order(rows: list[int], n: int) -> list[int]:
    """Greedy order: repeatedly take the vertex with most already-ordered neighbours."""
    remaining = set(range(n))
    placed = 0
    order = []
    while remaining:
        v = max(remaining, key=lambda x: ((rows[x] & placed).bit_count(), rows[x].bit_count(), -x))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order

"""graph6 and plain edge-list readers and writers.

graph6 is written without the optional ``>>graph6<<`` header; the reader
accepts input with or without it. The edge-list format is a first line with
the vertex count ``n`` followed by one ``u v`` pair per line, 0-based. Blank
lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GraphFormatError
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"
_MAX_GRAPH6_ORDER = 68719476735  # 2**36 - 1


def _encode_order(n: int) -> str:
    if n < 0 or n > _MAX_GRAPH6_ORDER:
        raise ValueError(f"graph6 cannot encode order {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(G: Graph) -> str:
    """graph6 string for ``G`` (no header, no trailing newline)."""
    n = G.n
    iu, ju = np.triu_indices(n, 1)
    # graph6 orders pairs column by column: (0,1), (0,2), (1,2), ...
    key = np.lexsort((iu, ju))
    bits = G.adj[iu[key], ju[key]].astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return _encode_order(n) + "".join(chr(int(g) + 63) for g in groups)


def from_graph6(text: str, line: int | None = None) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string", line)
    if any(not (63 <= ord(c) <= 126) for c in s):
        raise GraphFormatError(f"invalid graph6 character in {s!r}", line)
    vals = [ord(c) - 63 for c in s]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise GraphFormatError("truncated graph6 order field", line)
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        if len(vals) < 8:
            raise GraphFormatError("truncated graph6 order field", line)
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    npairs = n * (n - 1) // 2
    if len(body) != (npairs + 5) // 6:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {(npairs + 5) // 6} for n={n}", line
        )
    bits = np.unpackbits(np.array(body, dtype=np.uint8)[:, None], axis=1)[:, 2:].ravel()
    if bits[npairs:].any():
        raise GraphFormatError("nonzero padding bits in graph6 body", line)
    iu, ju = np.triu_indices(n, 1)
    key = np.lexsort((iu, ju))
    a = np.zeros((n, n), dtype=bool)
    a[iu[key], ju[key]] = bits[:npairs].astype(bool)
    return Graph(a | a.T)


def to_edge_list(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if n is None:
            if len(parts) != 1:
                raise GraphFormatError(f"expected the vertex count, got {raw!r}", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphFormatError(f"vertex count is not an integer: {raw!r}", lineno) from None
            if n < 0:
                raise GraphFormatError("vertex count must be non-negative", lineno)
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1} in {raw!r}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        raise GraphFormatError("missing vertex count line")
    return Graph.from_edges(n, edges)


def read_graph(path, fmt: str | None = None) -> Graph:
    """Read a graph from ``path``.

    ``fmt`` is ``"graph6"`` or ``"edgelist"``; when omitted, ``.g6``/``.graph6``
    files are read as graph6 and everything else as an edge list.
    """
    path = Path(path)
    text = path.read_text()
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphFormatError(f"expected exactly one graph6 line, found {len(lines)}")
        return from_graph6(lines[0], line=1)
    if fmt == "edgelist":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(G: Graph, path, fmt: str | None = None):
    path = Path(path)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        path.write_text(to_graph6(G) + "\n")
    elif fmt == "edgelist":
        path.write_text(to_edge_list(G))
    else:
        raise ValueError(f"unknown graph format {fmt!r}")

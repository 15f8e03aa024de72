"""graph6 and plain adjacency-list graph files."""

from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError


class ParseError(GraphError):
    pass


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n <= 68719476735:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise GraphError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    words = _encode_n(g.n)
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        words.append(sum(b << (5 - i) for i, b in enumerate(chunk)))
    text = "".join(chr(w + 63) for w in words)
    return (">>graph6<<" if header else "") + text


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ParseError("invalid graph6 character")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        rest = data[8:]
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {(nbits + 5) // 6}")
    bits = [(d >> (5 - i)) & 1 for d in rest for i in range(6)]
    if any(bits[nbits:]):
        raise ParseError("nonzero graph6 padding")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def to_adjlist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_adjlist(text: str) -> Graph:
    """``n m`` header then one 0-indexed ``u v`` pair per line; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty adjacency-list file")
    try:
        n, m = (int(x) for x in rows[0])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed adjacency list: {exc}") from None
    if len(pairs) != m:
        raise ParseError(f"header declares {m} edges, found {len(pairs)}")
    if len({frozenset(p) for p in pairs}) != m:
        raise ParseError("duplicate edge")
    try:
        return Graph.from_edges(n, pairs)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def read_graph(path, fmt: str | None = None) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from None
    if fmt is None:
        fmt = "graph6" if p.suffix in (".g6", ".graph6") else "adj"
    try:
        if fmt == "graph6":
            return from_graph6(text.splitlines()[0] if text.strip() else "")
        if fmt == "adj":
            return from_adjlist(text)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown format {fmt!r}")

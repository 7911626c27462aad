"""Text formats for tournaments, semi-complete digraphs, matrices, orderings.

All formats are line-oriented, human-diffable and 1-based:

* digraph: first line ``n``, then n lines of n characters over {0,1};
  character j of line i is 1 iff the arc i -> j is present; the diagonal
  must be 0.  A tournament requires exactly one arc per pair, a
  semi-complete digraph at least one.
* matrix: first line ``R C``, then R lines of C characters over {0,1}.
* ordering: a single line of n space-separated 1-based vertex ids.
* ordered graph: a symmetric digraph-style matrix with ``n`` header,
  interpreted as an undirected graph.
"""

from __future__ import annotations

from typing import Sequence

from .core import (
    BinaryMatrix,
    SemiCompleteDigraph,
    Tournament,
    UndirectedOrderedGraph,
)


class FormatError(ValueError):
    """Malformed input file; carries 1-based line/column diagnostics."""

    def __init__(self, message: str, line: int, col: int | None = None):
        loc = f"line {line}" if col is None else f"line {line}, column {col}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.col = col


def _split_lines(text: str) -> list[str]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _parse_header_int(lines: list[str], what: str) -> int:
    if not lines:
        raise FormatError(f"empty input, expected {what}", 1)
    try:
        return int(lines[0].strip())
    except ValueError:
        raise FormatError(f"expected {what}, got {lines[0]!r}", 1) from None


def _parse_grid(lines: list[str], n_rows: int, n_cols: int, offset: int) -> list[list[int]]:
    if len(lines) < offset + n_rows:
        raise FormatError(f"expected {n_rows} rows, got {len(lines) - offset}", len(lines) + 1)
    grid = []
    for r in range(n_rows):
        raw = lines[offset + r].strip()
        if len(raw) != n_cols:
            raise FormatError(f"expected {n_cols} characters, got {len(raw)}", offset + r + 1)
        row = []
        for c, ch in enumerate(raw):
            if ch not in "01":
                raise FormatError(f"invalid character {ch!r}", offset + r + 1, c + 1)
            row.append(int(ch))
        grid.append(row)
    return grid


def parse_digraph(text: str, kind: str = "semicomplete") -> SemiCompleteDigraph:
    """Parse an adjacency block; ``kind`` is 'tournament' or 'semicomplete'."""
    lines = _split_lines(text)
    n = _parse_header_int(lines, "vertex count")
    if n < 1:
        raise FormatError("vertex count must be >= 1", 1)
    grid = _parse_grid(lines, n, n, 1)
    for i in range(n):
        if grid[i][i]:
            raise FormatError("diagonal entry must be 0", i + 2, i + 1)
    for i in range(n):
        for j in range(i + 1, n):
            s = grid[i][j] + grid[j][i]
            if kind == "tournament" and s != 1:
                raise FormatError(
                    f"pair ({i + 1},{j + 1}) has {s} arcs, tournament needs exactly 1",
                    i + 2,
                    j + 1,
                )
            if s < 1:
                raise FormatError(f"pair ({i + 1},{j + 1}) has no arc", i + 2, j + 1)
    masks = [sum(1 << j for j in range(n) if grid[i][j]) for i in range(n)]
    cls = Tournament if kind == "tournament" else SemiCompleteDigraph
    return cls(masks, validate=False)


def serialize_digraph(G: SemiCompleteDigraph) -> str:
    rows = [
        "".join("1" if G.out[i] >> j & 1 else "0" for j in range(G.n))
        for i in range(G.n)
    ]
    return "\n".join([str(G.n)] + rows) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    lines = _split_lines(text)
    if not lines:
        raise FormatError("empty input, expected 'R C' header", 1)
    parts = lines[0].split()
    if len(parts) != 2:
        raise FormatError(f"expected 'R C' header, got {lines[0]!r}", 1)
    try:
        r, c = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"expected integers in header, got {lines[0]!r}", 1) from None
    if r < 1 or c < 1:
        raise FormatError("matrix dimensions must be >= 1", 1)
    return BinaryMatrix(_parse_grid(lines, r, c, 1))


def serialize_matrix(M: BinaryMatrix) -> str:
    rows = ["".join(str(x) for x in row) for row in M.entries]
    return "\n".join([f"{M.rows} {M.cols}"] + rows) + "\n"


def parse_ordering(text: str, n: int) -> tuple[int, ...]:
    lines = _split_lines(text)
    if not lines:
        raise FormatError("empty input, expected ordering line", 1)
    parts = lines[0].split()
    if len(parts) != n:
        raise FormatError(f"expected {n} vertex ids, got {len(parts)}", 1)
    try:
        ids = [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer vertex id in {lines[0]!r}", 1) from None
    order = tuple(v - 1 for v in ids)
    if sorted(order) != list(range(n)):
        raise FormatError(f"not a permutation of 1..{n}", 1)
    return order


def serialize_ordering(order: Sequence[int]) -> str:
    return " ".join(str(v + 1) for v in order) + "\n"


def parse_ordered_graph(text: str) -> UndirectedOrderedGraph:
    """Symmetric 0/1 adjacency block with an ``n`` header line."""
    lines = _split_lines(text)
    n = _parse_header_int(lines, "vertex count")
    if n < 1:
        raise FormatError("vertex count must be >= 1", 1)
    grid = _parse_grid(lines, n, n, 1)
    for i in range(n):
        if grid[i][i]:
            raise FormatError("diagonal entry must be 0", i + 2, i + 1)
        for j in range(i + 1, n):
            if grid[i][j] != grid[j][i]:
                raise FormatError(
                    f"asymmetric entry for pair ({i + 1},{j + 1})", i + 2, j + 1
                )
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if grid[i][j]]
    return UndirectedOrderedGraph(n, edges)


def serialize_ordered_graph(G: UndirectedOrderedGraph) -> str:
    rows = [
        "".join("1" if G.has_edge(i, j) else "0" for j in range(G.n))
        for i in range(G.n)
    ]
    return "\n".join([str(G.n)] + rows) + "\n"

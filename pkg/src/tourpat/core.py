"""Core data types and canonical tournament constructions.

Vertices are 0-based everywhere in the library; conversion to the 1-based
labels of the text formats happens only at the I/O boundary (`formats`).
Graphs are immutable after construction: adjacency is stored as one
out-neighbor bitmask per vertex, so ``arc(i, j)`` is a single bit test and
set operations are integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from . import rng


class CapExceeded(RuntimeError):
    """An exact search was asked to run beyond its configured size cap."""


def check_cap(what: str, n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"{what}: n={n} exceeds exact-search cap {cap}")


class SemiCompleteDigraph:
    """Digraph with at least one arc between every pair of distinct vertices.

    Pairs carrying both arcs are *bidirectional*; a bidirectional pair is
    what "adding one edge" to a tournament produces.
    """

    __slots__ = ("n", "out")

    def __init__(self, out_masks: Sequence[int], validate: bool = True):
        self.n = len(out_masks)
        self.out = tuple(out_masks)
        if validate:
            self._validate()

    def _validate(self) -> None:
        n = self.n
        full = (1 << n) - 1
        for i, m in enumerate(self.out):
            if m & ~full:
                raise ValueError(f"vertex {i}: out-mask has bits outside 0..{n - 1}")
            if m >> i & 1:
                raise ValueError(f"vertex {i}: self-loop")
        for i in range(n):
            for j in range(i + 1, n):
                if not (self.out[i] >> j & 1) and not (self.out[j] >> i & 1):
                    raise ValueError(f"pair ({i},{j}) has no arc")

    def arc(self, i: int, j: int) -> bool:
        """True iff the arc i -> j is present."""
        return bool(self.out[i] >> j & 1)

    def out_degree(self, i: int) -> int:
        return (self.out[i]).bit_count()

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            m = self.out[i]
            while m:
                j = (m & -m).bit_length() - 1
                yield (i, j)
                m &= m - 1

    def bidi_pairs(self) -> tuple[tuple[int, int], ...]:
        """Bidirectional pairs {i, j} as sorted (i, j) tuples, i < j."""
        pairs = []
        for i in range(self.n):
            both = self.out[i]
            for j in range(i + 1, self.n):
                if both >> j & 1 and self.out[j] >> i & 1:
                    pairs.append((i, j))
        return tuple(pairs)

    @property
    def bidi(self) -> frozenset:
        return frozenset(self.bidi_pairs())

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.out)

    def induced(self, vertices: Iterable[int]) -> "SemiCompleteDigraph":
        """Induced sub-digraph, relabeled by the sorted vertex list."""
        vs = sorted(vertices)
        idx = {v: k for k, v in enumerate(vs)}
        masks = []
        for v in vs:
            m = 0
            for w in vs:
                if w != v and self.out[v] >> w & 1:
                    m |= 1 << idx[w]
            masks.append(m)
        return type(self)(masks, validate=False)

    def to_tournament(self) -> "Tournament":
        """Reinterpret as a tournament; fails if any pair is bidirectional."""
        return Tournament(self.out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SemiCompleteDigraph)
            and self.n == other.n
            and self.out == other.out
        )

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        kind = type(self).__name__
        return f"{kind}(n={self.n}, edges={self.edge_count()})"

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]):
        masks = [0] * n
        for i, j in arcs:
            masks[i] |= 1 << j
        return cls(masks)


class Tournament(SemiCompleteDigraph):
    """Complete oriented graph: exactly one arc between every vertex pair."""

    __slots__ = ()

    def _validate(self) -> None:
        super()._validate()
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.out[i] >> j & 1 and self.out[j] >> i & 1:
                    raise ValueError(f"pair ({i},{j}) has both arcs")


class UndirectedOrderedGraph:
    """Undirected graph whose vertices are the ordered positions 0..n-1."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        norm = set()
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u},{v}) for n={n}")
            norm.add((u, v) if u < v else (v, u))
        self.edges = frozenset(norm)

    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def neighbors(self, u: int) -> list[int]:
        out = [b if a == u else a for a, b in self.edges if u in (a, b)]
        return sorted(out)

    def degree(self, u: int) -> int:
        return sum(1 for a, b in self.edges if u in (a, b))

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_forest(self) -> bool:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def relabel_compact(self, vertices: Sequence[int]) -> tuple["UndirectedOrderedGraph", list[int]]:
        """Induced subgraph on ``vertices`` with positions compacted to 0..k-1.

        Returns the compacted graph and the list mapping new labels back to
        the original ones (sorted, so order is preserved).
        """
        vs = sorted(vertices)
        idx = {v: k for k, v in enumerate(vs)}
        sub = [(idx[a], idx[b]) for a, b in self.edges if a in idx and b in idx]
        return UndirectedOrderedGraph(len(vs), sub), vs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UndirectedOrderedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"UndirectedOrderedGraph(n={self.n}, m={len(self.edges)})"


class BinaryMatrix:
    """Immutable 0/1 matrix, used both as pattern and as host."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        for r in rows:
            for x in r:
                if x not in (0, 1):
                    raise ValueError(f"entry {x} is not 0/1")
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def ones(self) -> int:
        return sum(sum(r) for r in self.entries)

    def one_cells(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.rows)
            for j in range(self.cols)
            if self.entries[i][j]
        ]

    def row_masks(self) -> list[int]:
        """Row i as a bitmask over columns (bit j = entry (i, j))."""
        return [
            sum(1 << j for j in range(self.cols) if row[j]) for row in self.entries
        ]

    def has_zero_row(self) -> bool:
        return any(not any(r) for r in self.entries)

    def has_zero_col(self) -> bool:
        return any(
            not any(self.entries[i][j] for i in range(self.rows))
            for j in range(self.cols)
        )

    def bipartite_graph(self) -> UndirectedOrderedGraph:
        """Row/column incidence graph: rows 0..R-1, columns R..R+C-1."""
        edges = [(i, self.rows + j) for i, j in self.one_cells()]
        return UndirectedOrderedGraph(self.rows + self.cols, edges)

    def is_forest(self) -> bool:
        return self.bipartite_graph().is_forest()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_ones(cls, rows: int, cols: int, cells: Iterable[tuple[int, int]]) -> "BinaryMatrix":
        grid = [[0] * cols for _ in range(rows)]
        for i, j in cells:
            grid[i][j] = 1
        return cls(grid)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols}, ones={self.ones()})"


@dataclass(frozen=True)
class PatternWitness:
    """Strictly increasing row/column selections embedding a pattern matrix."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def verify(self, host: BinaryMatrix, pattern: BinaryMatrix) -> bool:
        if len(self.rows) != pattern.rows or len(self.cols) != pattern.cols:
            return False
        if any(a >= b for a, b in zip(self.rows, self.rows[1:])):
            return False
        if any(a >= b for a, b in zip(self.cols, self.cols[1:])):
            return False
        if self.rows and (self.rows[-1] >= host.rows or self.rows[0] < 0):
            return False
        if self.cols and (self.cols[-1] >= host.cols or self.cols[0] < 0):
            return False
        for i in range(pattern.rows):
            for j in range(pattern.cols):
                if pattern.entry(i, j) and not host.entry(self.rows[i], self.cols[j]):
                    return False
        return True


@dataclass(frozen=True)
class SubgraphWitness:
    """Injective vertex map certifying an H-copy in a host digraph."""

    mapping: tuple[int, ...]  # mapping[v] = host image of pattern vertex v

    def verify(self, host: SemiCompleteDigraph, pattern: SemiCompleteDigraph) -> bool:
        f = self.mapping
        if len(f) != pattern.n or len(set(f)) != len(f):
            return False
        if any(not 0 <= x < host.n for x in f):
            return False
        for u, v in pattern.arcs():
            if not host.arc(f[u], f[v]):
                return False
        return True


def check_ordering(order: Sequence[int], n: int) -> tuple[int, ...]:
    """Validate that ``order`` is a permutation of 0..n-1 and return it."""
    o = tuple(order)
    if sorted(o) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {order}")
    return o


# ---------------------------------------------------------------------------
# constructions


def make_transitive(n: int) -> Tournament:
    """Transitive tournament T_n: arc i -> j iff i < j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    full = (1 << n) - 1
    return Tournament([full & ~((1 << (i + 1)) - 1) for i in range(n)], validate=False)


def make_circulant(n: int) -> Tournament:
    """Rotational tournament C_n: arc i -> j iff (j-i) mod n in 1..(n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    half = (n - 1) // 2
    masks = []
    for i in range(n):
        m = 0
        for d in range(1, half + 1):
            m |= 1 << ((i + d) % n)
        masks.append(m)
    return Tournament(masks, validate=False)


def make_u5() -> Tournament:
    """T_5 with the arcs (1,4) and (2,5) reversed (1-based labels)."""
    t = make_transitive(5)
    masks = list(t.out)
    for i, j in ((0, 3), (1, 4)):  # 0-based images of (1,4), (2,5)
        masks[i] &= ~(1 << j)
        masks[j] |= 1 << i
    return Tournament(masks)


def make_delta(k: int) -> Tournament:
    """Chain of k 3-cycles (a_i, b_i, c_i) with all arcs forward between blocks."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 3 * k
    arcs = []
    for b in range(k):
        a = 3 * b
        arcs += [(a, a + 1), (a + 1, a + 2), (a + 2, a)]
        for w in range(3 * (b + 1), n):
            arcs += [(a, w), (a + 1, w), (a + 2, w)]
    return Tournament.from_arcs(n, arcs)


def make_xh_tree(h: int) -> UndirectedOrderedGraph:
    """The h-vertex tree with edges (x_1,x_{h-1}), ..., (x_{h-2},x_{h-1}), (x_{h-2},x_h)."""
    if h < 3:
        raise ValueError("h must be >= 3")
    edges = [(i, h - 2) for i in range(h - 2)] + [(h - 3, h - 1)]
    return UndirectedOrderedGraph(h, edges)


def back_edge_graph(H: Tournament, order: Sequence[int]) -> UndirectedOrderedGraph:
    """Back-edge graph of H under ``order``.

    Positions p < q are joined iff H has the arc from order[q] to order[p],
    i.e. an arc pointing from a later vertex to an earlier one.
    """
    o = check_ordering(order, H.n)
    edges = [
        (p, q)
        for q in range(H.n)
        for p in range(q)
        if H.arc(o[q], o[p])
    ]
    return UndirectedOrderedGraph(H.n, edges)


def add_back_arcs(base: Tournament, pairs: Iterable[tuple[int, int]]) -> SemiCompleteDigraph:
    """Augment ``base`` by the reversal arcs in ``pairs``.

    Each pair (j, i) must be the reverse of an existing arc (i, j); the
    result has exactly those pairs bidirectional.
    """
    masks = list(base.out)
    for j, i in pairs:
        if not base.arc(i, j):
            raise ValueError(f"({j},{i}) does not reverse an existing arc of the base")
        if masks[j] >> i & 1:
            raise ValueError(f"arc ({j},{i}) already present")
        masks[j] |= 1 << i
    return SemiCompleteDigraph(masks, validate=False)


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniformly random labeled tournament; pair bits in lexicographic order."""
    masks = [0] * n
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rng.bit(seed, t):
                masks[i] |= 1 << j
            else:
                masks[j] |= 1 << i
            t += 1
    return Tournament(masks, validate=False)


def complete_digraph(n: int) -> SemiCompleteDigraph:
    """All 2*C(n,2) arcs present: every pair bidirectional."""
    full = (1 << n) - 1
    return SemiCompleteDigraph([full & ~(1 << i) for i in range(n)], validate=False)


def transitive_order(T: SemiCompleteDigraph, subset: Optional[int] = None) -> Optional[list[int]]:
    """Topological vertex order of the induced sub-digraph, or None if cyclic.

    ``subset`` is a bitmask (defaults to all vertices). For a transitive
    tournament the order is unique; bidirectional pairs make it cyclic.
    """
    if subset is None:
        subset = (1 << T.n) - 1
    members = [v for v in range(T.n) if subset >> v & 1]
    members.sort(key=lambda v: -((T.out[v] & subset).bit_count()))
    for a, b in combinations(members, 2):
        if not T.arc(a, b) or T.arc(b, a):
            return None
    return members


def is_transitive(T: SemiCompleteDigraph, subset: Optional[int] = None) -> bool:
    return transitive_order(T, subset) is not None

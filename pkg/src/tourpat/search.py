"""Containment testing and exact extremal numbers.

`contains_pattern` / `contains_subdigraph` decide pattern containment in
0/1 matrices and tournament containment in semi-complete digraphs, always
returning re-verifiable witnesses.  The three `*_exact` searches compute
ex(n, M), t(T_n, H) and t(n, H) by branch and bound, with candidate cells
and arcs visited in lexicographic order so results and node counts are
reproducible.  On timeout they return a bracketing interval, never a
point value.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .core import (
    BinaryMatrix,
    PatternWitness,
    SemiCompleteDigraph,
    SubgraphWitness,
    Tournament,
    add_back_arcs,
    check_cap,
    make_transitive,
)

# ---------------------------------------------------------------------------
# matrix pattern containment


def _greedy_columns(host_row_masks: Sequence[int], rows: Sequence[int],
                    pattern_col_masks: Sequence[int], n_cols: int) -> Optional[list[int]]:
    """Smallest increasing column choice covering each pattern column.

    With the host rows fixed, pattern column j is placeable at host column c
    iff every pattern row with a 1 in column j has a 1 at (row, c); taking
    the smallest feasible c left to right is optimal.
    """
    cols = []
    c = 0
    for j, need in enumerate(pattern_col_masks):
        while c < n_cols:
            ok = True
            m = need
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                if not host_row_masks[rows[i]] >> c & 1:
                    ok = False
                    break
            if ok:
                break
            c += 1
        if c == n_cols:
            return None
        cols.append(c)
        c += 1
    return cols


def contains_pattern(A: BinaryMatrix, M: BinaryMatrix) -> Optional[PatternWitness]:
    """First witness (by row selection, then greedy columns) of M in A, or None."""
    if M.rows > A.rows or M.cols > A.cols:
        return None
    host_rows = A.row_masks()
    col_masks = [
        sum(1 << i for i in range(M.rows) if M.entry(i, j)) for j in range(M.cols)
    ]
    for rows in combinations(range(A.rows), M.rows):
        cols = _greedy_columns(host_rows, rows, col_masks, A.cols)
        if cols is not None:
            return PatternWitness(tuple(rows), tuple(cols))
    return None


def verify_pattern_witness(A: BinaryMatrix, M: BinaryMatrix, w: PatternWitness) -> bool:
    """Independent naive re-check of a pattern witness."""
    return w.verify(A, M)


# ---------------------------------------------------------------------------
# subdigraph containment


def _subdigraph_backtrack(
    G: SemiCompleteDigraph,
    H: SemiCompleteDigraph,
    pinned: dict[int, int],
    find_all: bool,
) -> Iterator[tuple[int, ...]]:
    """Backtracking over injective maps, pattern vertices in index order.

    Consistency: for each already-assigned u, every H-arc between u and the
    new vertex must map onto a present G-arc.  Candidates ascend, so the
    first witness is the lexicographically least assignment vector.
    """
    n, h = G.n, H.n
    mapping = [-1] * h
    used = [False] * n

    def ok(v: int, img: int) -> bool:
        for u in range(v):
            if H.arc(v, u) and not G.arc(img, mapping[u]):
                return False
            if H.arc(u, v) and not G.arc(mapping[u], img):
                return False
        return True

    def bt(v: int) -> Iterator[tuple[int, ...]]:
        if v == h:
            yield tuple(mapping)
            return
        if v in pinned:
            cands: Sequence[int] = (pinned[v],)
        else:
            cands = range(n)
        for img in cands:
            if used[img] or not ok(v, img):
                continue
            mapping[v] = img
            used[img] = True
            yield from bt(v + 1)
            used[img] = False
            mapping[v] = -1

    yield from bt(0)


def contains_subdigraph(
    G: SemiCompleteDigraph, H: SemiCompleteDigraph
) -> Optional[SubgraphWitness]:
    """Injective arc-preserving map of H into G, or None."""
    if H.n > G.n:
        return None
    for mapping in _subdigraph_backtrack(G, H, {}, find_all=False):
        return SubgraphWitness(mapping)
    return None


def contains_subdigraph_using_arc(
    G: SemiCompleteDigraph, H: SemiCompleteDigraph, arc: tuple[int, int]
) -> Optional[SubgraphWitness]:
    """Like contains_subdigraph but some H-arc must map onto the given G-arc."""
    a, b = arc
    for u, v in H.arcs():
        for mapping in _subdigraph_backtrack(G, H, {u: a, v: b}, find_all=False):
            return SubgraphWitness(mapping)
    return None


def iter_subdigraph_copies(
    G: SemiCompleteDigraph, H: SemiCompleteDigraph
) -> Iterator[SubgraphWitness]:
    """Exhaustive enumeration of all H-copies (all injective witnesses)."""
    for mapping in _subdigraph_backtrack(G, H, {}, find_all=True):
        yield SubgraphWitness(mapping)


def verify_subdigraph_witness(
    G: SemiCompleteDigraph, H: SemiCompleteDigraph, w: SubgraphWitness
) -> bool:
    """Independent naive re-check of a subdigraph witness."""
    return w.verify(G, H)


# ---------------------------------------------------------------------------
# guaranteed transitive subtournaments


def find_transitive_subtournament(G: SemiCompleteDigraph, h: int):
    """Greedy doubling chain: h vertices inducing a transitive subtournament.

    Picks a maximum out-degree vertex and recurses into its out-neighborhood,
    which at least halves; guaranteed to reach h vertices when n >= 2^(h-1).
    Returns None only below that guarantee.
    """
    full = (1 << G.n) - 1
    return _greedy_chain_masks(G.out, full, h)


def _greedy_chain_masks(out: Sequence[int], subset: int, h: int) -> Optional[tuple[int, ...]]:
    chain = []
    cur = subset
    while cur and len(chain) < h:
        best_v, best_d = -1, -1
        m = cur
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (out[v] & cur).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        chain.append(best_v)
        cur &= out[best_v]
    if len(chain) < h:
        return None
    return tuple(chain[:h])


def find_bidirectional_biclique(
    G: SemiCompleteDigraph,
    a: int,
    b: int,
    within: Optional[tuple[Sequence[int], Sequence[int]]] = None,
):
    """Disjoint sets (A, B), |A|=a, |B|=b, all cross pairs bidirectional.

    Searches the undirected graph of bidirectional pairs, optionally with A
    restricted to within[0] and B to within[1].  Returns None if absent.
    """
    n = G.n
    bidi_mask = [0] * n
    for i, j in G.bidi_pairs():
        bidi_mask[i] |= 1 << j
        bidi_mask[j] |= 1 << i
    side_a = sorted(within[0]) if within else list(range(n))
    side_b_mask = 0
    for v in sorted(within[1]) if within else range(n):
        side_b_mask |= 1 << v
    for A in combinations(side_a, a):
        common = side_b_mask
        for v in A:
            common &= bidi_mask[v]
            common &= ~(1 << v)
        if common.bit_count() >= b:
            B = []
            m = common
            while m and len(B) < b:
                B.append((m & -m).bit_length() - 1)
                m &= m - 1
            return tuple(A), tuple(B)
    return None


# ---------------------------------------------------------------------------
# exact extremal numbers


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of an exact extremal search.

    When complete, ``value`` is the extremal number and ``witness`` a
    maximum avoiding configuration of size value - 1.  When a deadline
    interrupted the search, ``complete`` is False and ``bracket`` holds the
    interval [best_found + 1, upper bound] containing the true value.
    """

    value: Optional[int]
    witness: object
    nodes: int
    complete: bool = True
    bracket: Optional[tuple[int, int]] = None


class _Deadline:
    def __init__(self, seconds: Optional[float]):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.checks = 0

    def expired(self) -> bool:
        if self.at is None:
            return False
        self.checks += 1
        return self.checks % 256 == 0 and time.monotonic() > self.at


def ex_exact(
    n: int,
    M: BinaryMatrix,
    max_n: int = 7,
    timeout_s: Optional[float] = None,
) -> ExtremalResult:
    """ex(n, M): least m forcing every n x n 0/1 matrix with m ones to contain M.

    Computed as (maximum 1-count over M-avoiding hosts) + 1 by branch and
    bound over cells in row-major order.  If no n x n host can contain M at
    all, the value is n^2 + 1 by convention; if even the all-zero host
    contains M (an all-zero pattern), the value is 0.
    """
    check_cap("ex_exact", n, max_n)
    zero = BinaryMatrix.zeros(n, n)
    if contains_pattern(zero, M) is not None:
        return ExtremalResult(0, None, 0)
    ones_host = BinaryMatrix([[1] * n for _ in range(n)])
    if contains_pattern(ones_host, M) is None:
        return ExtremalResult(n * n + 1, ones_host, 0)

    cells = [(r, c) for r in range(n) for c in range(n)]
    grid = [[0] * n for _ in range(n)]
    best = {"count": -1, "witness": None}
    nodes = {"count": 0}
    deadline = _Deadline(timeout_s)

    def current_host() -> BinaryMatrix:
        return BinaryMatrix([row[:] for row in grid])

    def bt(idx: int, placed: int) -> bool:
        """Returns False when the deadline fired."""
        nodes["count"] += 1
        if deadline.expired():
            return False
        if placed + (len(cells) - idx) <= best["count"]:
            return True
        if idx == len(cells):
            if placed > best["count"]:
                best["count"] = placed
                best["witness"] = current_host()
            return True
        r, c = cells[idx]
        grid[r][c] = 1
        if contains_pattern(current_host(), M) is None:
            if not bt(idx + 1, placed + 1):
                grid[r][c] = 0
                return False
        grid[r][c] = 0
        return bt(idx + 1, placed)

    finished = bt(0, 0)
    if not finished:
        return ExtremalResult(
            None,
            best["witness"],
            nodes["count"],
            complete=False,
            bracket=(max(best["count"] + 1, 1), n * n + 1),
        )
    return ExtremalResult(best["count"] + 1, best["witness"], nodes["count"])


def max_hfree_augmentation(
    base: Tournament,
    H: Tournament,
    timeout_s: Optional[float] = None,
) -> tuple[Optional[int], tuple, int, bool]:
    """Maximum number of reversal arcs addable to ``base`` keeping it H-free.

    Candidate pairs in lexicographic order; adding the reversal of (i, j)
    can only create H-copies through the new arc (j, i), so containment is
    re-checked with that arc pinned.  Returns (count, pairs, nodes, complete);
    count is None when the base already contains H.
    """
    if contains_subdigraph(base, H) is not None:
        return None, (), 0, True
    # one candidate per unordered pair: the arc the base is missing
    pairs = [
        (j, i) if base.arc(i, j) else (i, j)
        for i in range(base.n)
        for j in range(i + 1, base.n)
    ]
    chosen: list[tuple[int, int]] = []
    best = {"count": -1, "witness": ()}
    nodes = {"count": 0}
    deadline = _Deadline(timeout_s)

    def bt(idx: int, G: SemiCompleteDigraph) -> bool:
        nodes["count"] += 1
        if deadline.expired():
            return False
        if len(chosen) > best["count"]:
            best["count"] = len(chosen)
            best["witness"] = tuple(chosen)
        if idx == len(pairs):
            return True
        if len(chosen) + (len(pairs) - idx) <= best["count"]:
            return True
        a, b = pairs[idx]
        masks = list(G.out)
        masks[a] |= 1 << b
        G2 = SemiCompleteDigraph(masks, validate=False)
        if contains_subdigraph_using_arc(G2, H, (a, b)) is None:
            chosen.append((a, b))
            if not bt(idx + 1, G2):
                chosen.pop()
                return False
            chosen.pop()
        return bt(idx + 1, G)

    finished = bt(0, SemiCompleteDigraph(base.out, validate=False))
    return best["count"], best["witness"], nodes["count"], finished


def t_transitive_exact(
    n: int,
    H: Tournament,
    max_n: int = 8,
    timeout_s: Optional[float] = None,
) -> ExtremalResult:
    """t(T_n, H): least t so that adding t edges to T_n forces an H-copy.

    Equals (maximum H-free reversal-arc count) + 1, or 0 when T_n already
    contains H (transitive H with n >= h).
    """
    if n < H.n:
        raise ValueError(f"n={n} < |H|={H.n}: t(T_n,H) undefined")
    check_cap("t_transitive_exact", n, max_n)
    base = make_transitive(n)
    count, witness, nodes, finished = max_hfree_augmentation(base, H, timeout_s)
    if count is None:
        return ExtremalResult(0, (), nodes)
    if not finished:
        return ExtremalResult(
            None, witness, nodes, complete=False,
            bracket=(count + 1, n * (n - 1) // 2 + 1),
        )
    return ExtremalResult(count + 1, witness, nodes)


def t_general_exact(
    n: int,
    H: Tournament,
    max_n: int = 6,
    timeout_s: Optional[float] = None,
) -> ExtremalResult:
    """t(n, H): least t forcing an H-copy when t edges are added to any
    n-vertex tournament.

    Outer enumeration over base tournaments up to relabeling (canonical
    minimum-bitstring representatives), inner maximum H-free augmentation.
    Equivalently: 1 + the maximum bidirectional-pair count over all H-free
    semi-complete digraphs on n vertices, or 0 when every base contains H.
    """
    if n < H.n:
        raise ValueError(f"n={n} < |H|={H.n}: t(n,H) undefined")
    check_cap("t_general_exact", n, max_n)
    from .enumeration import canonical_tournament_codes, tournament_from_code

    deadline_total = None if timeout_s is None else time.monotonic() + timeout_s
    best_count = None
    best_witness = None
    total_nodes = 0
    for code in canonical_tournament_codes(n):
        base = tournament_from_code(n, int(code))
        remaining = None
        if deadline_total is not None:
            remaining = deadline_total - time.monotonic()
            if remaining <= 0:
                return ExtremalResult(
                    None, best_witness, total_nodes, complete=False,
                    bracket=((best_count or 0) + 1, n * (n - 1) // 2 + 1),
                )
        count, pairs, nodes, finished = max_hfree_augmentation(base, H, remaining)
        total_nodes += nodes
        if not finished:
            return ExtremalResult(
                None, best_witness, total_nodes, complete=False,
                bracket=((best_count or 0) + 1, n * (n - 1) // 2 + 1),
            )
        if count is not None and (best_count is None or count > best_count):
            best_count = count
            best_witness = (base, pairs)
    if best_count is None:
        return ExtremalResult(0, None, total_nodes)  # every tournament contains H
    return ExtremalResult(best_count + 1, best_witness, total_nodes)

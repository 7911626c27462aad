"""Machinery connecting 0/1 matrix patterns and tournaments.

A square pattern M without zero lines is encoded as the tournament M* on
vertices l_1..l_k, r_1..r_k: both sides are transitive chains, and the
cross pair (l_i, r_j) points from r_j to l_i exactly when M(i,j) = 1, so
the right-to-left arcs reproduce M's bipartite graph.  M*_p layers p
copies of M* with all remaining edges pointing from earlier structure to
later structure on the L side and R side, and from the L side to the R
side across blocks.

An n x n host matrix A is encoded as T_2n plus one bidirectional pair
(i, j+n) per 1-entry A(i,j); dense interval pairs in such digraphs are
located by the halving recursion.  Logarithms here are base 2, clamped to
be at least 1 for interval length <= 2 so thresholds never degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    BinaryMatrix,
    SemiCompleteDigraph,
    SubgraphWitness,
    Tournament,
    add_back_arcs,
    make_transitive,
)


@dataclass(frozen=True)
class MStarTournament:
    """Tournament encoding of a square pattern matrix."""

    tournament: Tournament
    k: int
    left: tuple[int, ...]  # vertices 0..k-1 stand for l_1..l_k
    right: tuple[int, ...]  # vertices k..2k-1 stand for r_1..r_k
    source: BinaryMatrix
    every_left_hit: bool  # each l_i receives an arc from some r_j
    every_right_points: bool  # each r_j points to some l_i


def _require_pattern(M: BinaryMatrix) -> None:
    if M.rows != M.cols:
        raise ValueError(f"pattern must be square, got {M.rows}x{M.cols}")
    if M.has_zero_row() or M.has_zero_col():
        raise ValueError(
            "pattern has an all-zero row or column; densify it first "
            "(add 1s while keeping the bipartite graph acyclic)"
        )


def matrix_to_mstar(M: BinaryMatrix) -> MStarTournament:
    """The tournament M* of a square pattern without zero rows or columns."""
    _require_pattern(M)
    k = M.rows
    arcs = []
    for i in range(k):
        for j in range(i + 1, k):
            arcs.append((i, j))  # l chain
            arcs.append((k + i, k + j))  # r chain
    for i in range(k):
        for j in range(k):
            if M.entry(i, j):
                arcs.append((k + j, i))
            else:
                arcs.append((i, k + j))
    T = Tournament.from_arcs(2 * k, arcs)
    every_left = all(any(T.arc(k + j, i) for j in range(k)) for i in range(k))
    every_right = all(any(T.arc(k + j, i) for i in range(k)) for j in range(k))
    return MStarTournament(
        tournament=T,
        k=k,
        left=tuple(range(k)),
        right=tuple(range(k, 2 * k)),
        source=M,
        every_left_hit=every_left,
        every_right_points=every_right,
    )


def mstar_blowup(M: BinaryMatrix, p: int) -> Tournament:
    """M*_p: p layered copies of M*.

    Layout: all L blocks first (L_1 .. L_p, each a k-chain), then all R
    blocks.  Inside block s the copy of M* is reproduced; all other
    L-side and R-side edges follow the layout order, and every cross edge
    between different blocks points from the L side to the R side, so the
    right-to-left arcs stay p disjoint copies of M's bipartite graph.
    """
    _require_pattern(M)
    if p < 1:
        raise ValueError("p must be >= 1")
    k = M.rows
    n = 2 * k * p

    def l_vertex(s: int, i: int) -> int:
        return s * k + i

    def r_vertex(s: int, j: int) -> int:
        return p * k + s * k + j

    arcs = []
    for s in range(p):
        for t in range(p):
            for i in range(k):
                for j in range(k):
                    if s == t and M.entry(i, j):
                        arcs.append((r_vertex(s, j), l_vertex(s, i)))
                    else:
                        arcs.append((l_vertex(s, i), r_vertex(t, j)))
    for a in range(p * k):
        for b in range(a + 1, p * k):
            arcs.append((a, b))  # within the L side
            arcs.append((p * k + a, p * k + b))  # within the R side
    return Tournament.from_arcs(n, arcs)


def minimal_p(k: int) -> int:
    """Least even p with (p/2)^2 - p + 1 > k * (p/2)^(2 - 1/k).

    Evaluated in float64; the left side is exact in floats for the sizes
    involved, the right side is within one ulp, and the inequality is
    strict, so the crossing point is stable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    p = 2
    while True:
        half = p / 2.0
        if half * half - p + 1 > k * half ** (2.0 - 1.0 / k):
            return p
        p += 2


def matrix_to_interval_digraph(A: BinaryMatrix) -> SemiCompleteDigraph:
    """T_2n with the pair (i, j+n) bidirectional exactly when A(i,j) = 1."""
    if A.rows != A.cols:
        raise ValueError(f"host matrix must be square, got {A.rows}x{A.cols}")
    n = A.rows
    base = make_transitive(2 * n)
    reversals = [(n + j, i) for i in range(n) for j in range(n) if A.entry(i, j)]
    return add_back_arcs(base, reversals)


def clamped_log2(m: int) -> float:
    """log2(m), clamped to >= 1 for m <= 2."""
    return max(1.0, math.log2(m)) if m >= 1 else 1.0


def find_dense_interval_pair(
    G: SemiCompleteDigraph, p: int
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Two disjoint equal-length intervals X before Y with many bidirectional
    edges between them.

    Halving recursion: split the current interval into halves of length m;
    if at least m * (log2 m)^p bidirectional edges cross, return them,
    otherwise recurse into each half (left first).  Returns None when the
    recursion exhausts.
    """
    n = G.n
    badj = [0] * n
    for i, j in G.bidi_pairs():
        badj[i] |= 1 << j
        badj[j] |= 1 << i

    def cross_count(x_lo: int, x_hi: int, y_mask: int) -> int:
        return sum((badj[v] & y_mask).bit_count() for v in range(x_lo, x_hi))

    def rec(lo: int, hi: int):
        m = (hi - lo) // 2
        if m < 1:
            return None
        y_mask = ((1 << m) - 1) << (lo + m)
        count = cross_count(lo, lo + m, y_mask)
        if count >= m * clamped_log2(m) ** p:
            return (
                tuple(range(lo, lo + m)),
                tuple(range(lo + m, lo + 2 * m)),
                count,
            )
        return rec(lo, lo + m) or rec(lo + m, hi)

    return rec(0, n)


def figure1_matrices() -> tuple[BinaryMatrix, BinaryMatrix]:
    """The two benchmark patterns with superlinear extremal growth."""
    m1 = BinaryMatrix.from_ones(3, 3, [(0, 0), (0, 1), (1, 0), (2, 2)])
    m2 = BinaryMatrix.from_ones(
        5,
        5,
        [(0, 1), (0, 3), (0, 4), (1, 2), (1, 4), (2, 1), (3, 0), (3, 4), (4, 4)],
    )
    return m1, m2


def find_split_mstar_copy(
    G: SemiCompleteDigraph, M: BinaryMatrix
) -> Optional[SubgraphWitness]:
    """A copy of M* in G in which every L image precedes every R image.

    Exhaustive backtracking (L vertices first, candidates ascending, R
    candidates restricted above the largest L image), so a None answer
    certifies that no such copy exists.
    """
    ms = matrix_to_mstar(M)
    Mt = ms.tournament
    k = ms.k
    h = 2 * k
    mapping = [-1] * h
    used = set()

    def ok(v: int, img: int) -> bool:
        for u in range(v):
            if Mt.arc(v, u) and not G.arc(img, mapping[u]):
                return False
            if Mt.arc(u, v) and not G.arc(mapping[u], img):
                return False
        return True

    def bt(v: int, max_l: int) -> bool:
        if v == h:
            return True
        lo = max_l + 1 if v >= k else 0
        for img in range(lo, G.n):
            if img in used or not ok(v, img):
                continue
            mapping[v] = img
            used.add(img)
            if bt(v + 1, max(max_l, img) if v < k else max_l):
                return True
            used.discard(img)
            mapping[v] = -1
        return False

    if bt(0, -1):
        return SubgraphWitness(tuple(mapping))
    return None


def pattern_witness_to_split_copy(rows: tuple[int, ...], cols: tuple[int, ...], n: int) -> SubgraphWitness:
    """The split M*-copy induced by a pattern witness of A (rows, cols)."""
    return SubgraphWitness(tuple(rows) + tuple(n + c for c in cols))

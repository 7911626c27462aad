"""Structural classification of tournaments.

Covers the tournament chromatic number, the minimum 2-coloring class size
s(H), the minimum feedback edge set number beta(H), the forest / weak
forest / star hierarchy, homogeneous sets and primality, membership in the
two-condition family characterizing prime U_5-free tournaments, and a
bound profile summarizing which asymptotic regime applies to H.

Every search here is exact and deterministic: candidates are tried in
lexicographic vertex order, so witnesses are reproducible.  Size caps
raise :class:`~tourpat.core.CapExceeded` instead of degrading silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .core import (
    CapExceeded,
    SemiCompleteDigraph,
    Tournament,
    UndirectedOrderedGraph,
    check_cap,
    is_transitive,
)

# ---------------------------------------------------------------------------
# transitive-part machinery


def _can_insert_transitive(T: SemiCompleteDigraph, part_mask: int, v: int) -> bool:
    """Can v join a transitive part (given as a bitmask) keeping it transitive?

    With the part transitive, the extension is transitive iff every
    in-neighbor of v inside the part beats every out-neighbor of v inside
    the part, and no pair (v, u) inside is bidirectional.  In a
    semi-complete digraph every directed cycle contains one of length <= 3,
    so checking the 2- and 3-cycles through v is sufficient.
    """
    out_v = T.out[v] & part_mask
    in_v = part_mask & ~T.out[v]
    m = out_v
    while m:
        b = (m & -m).bit_length() - 1
        m &= m - 1
        if T.out[b] & (in_v | (1 << v)):
            return False
    return True


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _coloring_with(T: SemiCompleteDigraph, k: int) -> Optional[list[int]]:
    """Backtracking search for a partition into <= k transitive parts.

    Vertices are assigned in index order and classes tried in first-use
    order, so the first solution found is the lexicographically least
    assignment vector.  Returns class bitmasks or None.
    """
    n = T.n
    classes: list[int] = []

    def bt(v: int) -> bool:
        if v == n:
            return True
        for ci in range(len(classes)):
            if _can_insert_transitive(T, classes[ci], v):
                classes[ci] |= 1 << v
                if bt(v + 1):
                    return True
                classes[ci] &= ~(1 << v)
        if len(classes) < k:
            classes.append(1 << v)
            if bt(v + 1):
                return True
            classes.pop()
        return False

    return classes if bt(0) else None


def chromatic_number(
    G: SemiCompleteDigraph, max_n: int = 24
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Minimum number of transitive parts partitioning V, with one witness."""
    check_cap("chromatic_number", G.n, max_n)
    for k in range(1, G.n + 1):
        classes = _coloring_with(G, k)
        if classes is not None:
            return k, tuple(_mask_vertices(c) for c in classes)
    raise AssertionError("every tournament is n-colorable")  # pragma: no cover


def min_color_class(
    H: SemiCompleteDigraph, max_n: int = 20
) -> tuple[int, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Smallest color-class size s over all 2-colorings of H.

    Transitive tournaments get s = 0 with an empty class.  Raises
    ValueError for 3-or-more-chromatic inputs.
    """
    check_cap("min_color_class", H.n, max_n)
    n = H.n
    full = (1 << n) - 1
    if is_transitive(H):
        return 0, ((), tuple(range(n)))
    for s in range(1, n // 2 + 1):
        for combo in combinations(range(n), s):
            small = 0
            for v in combo:
                small |= 1 << v
            if is_transitive(H, small) and is_transitive(H, full & ~small):
                return s, (combo, _mask_vertices(full & ~small))
    raise ValueError("not 2-chromatic: no bipartition into transitive sets")


def min_feedback_edges(H: Tournament, max_n: int = 24) -> tuple[int, tuple[int, ...]]:
    """beta(H): minimum back-edge count over all orderings, with a witness.

    Dynamic program over vertex subsets: best(S) = min over v in S of
    best(S \\ {v}) + |out(v) ∩ (S \\ {v})|, placing v last.  The witness is
    rebuilt front-to-back choosing the smallest feasible first vertex, so
    it is the lexicographically least optimal ordering.
    """
    check_cap("min_feedback_edges", H.n, max_n)
    n = H.n
    full = (1 << n) - 1
    best = [0] * (full + 1)
    for S in range(1, full + 1):
        if S & (S - 1) == 0:
            continue
        b = None
        m = S
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            rest = S & ~(1 << v)
            cand = best[rest] + (H.out[v] & rest).bit_count()
            if b is None or cand < b:
                b = cand
        best[S] = b
    order = []
    S = full
    while S:
        m = S
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            rest = S & ~(1 << v)
            indeg = (rest & ~H.out[v]).bit_count()  # arcs u -> v from the rest
            if indeg + best[rest] == best[S]:
                order.append(v)
                S = rest
                break
    return best[full], tuple(order)


def brute_force_beta(H: Tournament) -> int:
    """Independent beta oracle: full enumeration over all n! orderings."""
    n = H.n
    best = [n * n]

    def extend(remaining: int, placed_mask: int, count: int) -> None:
        if not remaining:
            if count < best[0]:
                best[0] = count
            return
        m = remaining
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            extend(
                remaining & ~(1 << v),
                placed_mask | (1 << v),
                count + (H.out[v] & placed_mask).bit_count(),
            )

    extend((1 << n) - 1, 0, 0)
    return best[0]


def is_forest_tournament(
    H: Tournament, max_n: int = 20
) -> tuple[bool, Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Does some bipartition (L, R) into transitive sets have acyclic R->L arcs?

    The arcs pointing from R to L are read as an undirected bipartite graph;
    the tournament is a forest iff that graph is a forest for some choice.
    Bipartitions are scanned by ascending L-bitmask.
    """
    check_cap("is_forest_tournament", H.n, max_n)
    n = H.n
    full = (1 << n) - 1
    for L in range(full + 1):
        R = full & ~L
        if not is_transitive(H, L) or not is_transitive(H, R):
            continue
        edges = [
            (l, r)
            for l in _mask_vertices(L)
            for r in _mask_vertices(R)
            if H.arc(r, l)
        ]
        if UndirectedOrderedGraph(n, edges).is_forest():
            return True, (_mask_vertices(L), _mask_vertices(R))
    return False, None


def is_weak_forest(
    H: Tournament, max_n: int = 12
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Does some ordering of H have an acyclic back-edge graph?

    Branch and bound over orderings built left to right: appending v adds
    back edges from v to every already-placed out-neighbor; a branch is cut
    as soon as those edges close a cycle (union-find on vertices).
    """
    check_cap("is_weak_forest", H.n, max_n)
    n = H.n

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order: list[int] = []

    def bt(placed_mask: int, parent: list[int]) -> bool:
        if len(order) == n:
            return True
        for v in range(n):
            if placed_mask >> v & 1:
                continue
            partners = H.out[v] & placed_mask
            roots = set()
            ok = True
            m = partners
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                r = find(parent, u)
                if r in roots:
                    ok = False
                    break
                roots.add(r)
            if not ok:
                continue
            nxt = list(parent)
            for r in roots:
                nxt[r] = v
            order.append(v)
            if bt(placed_mask | (1 << v), nxt):
                return True
            order.pop()
        return False

    if bt(0, list(range(n))):
        return True, tuple(order)
    return False, None


# ---------------------------------------------------------------------------
# homogeneous sets and primality


def _pair_closure(G: SemiCompleteDigraph, u: int, v: int) -> int:
    """Smallest homogeneous set containing {u, v}, by splitter absorption.

    A vertex w outside X splits X if its out-arcs hit part but not all of
    X; every homogeneous superset of X must contain each splitter, so
    absorbing all of them and iterating reaches the minimal closure.
    """
    full = (1 << G.n) - 1
    X = (1 << u) | (1 << v)
    while True:
        size = X.bit_count()
        add = 0
        m = full & ~X
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            c = (G.out[w] & X).bit_count()
            if 0 < c < size:
                add |= 1 << w
        if not add:
            return X
        X |= add


def homogeneous_sets(G: SemiCompleteDigraph, max_n: int = 20) -> list[tuple[int, ...]]:
    """All distinct nontrivial pairwise-closure homogeneous sets.

    These are the minimal homogeneous sets spanning each vertex pair; the
    list is empty iff the tournament is prime.
    """
    check_cap("homogeneous_sets", G.n, max_n)
    full = (1 << G.n) - 1
    found = set()
    for u, v in combinations(range(G.n), 2):
        X = _pair_closure(G, u, v)
        if X != full:
            found.add(X)
    return sorted((_mask_vertices(X) for X in found), key=lambda t: (len(t), t))


def _closure_sizes_np(adj: np.ndarray) -> np.ndarray:
    """Pairwise-closure sizes for all vertex pairs at once (matrix form).

    Same absorption rule as :func:`_pair_closure`, run for every pair in
    parallel; used for primality checks on larger instances and inside the
    Monte Carlo estimators.
    """
    n = adj.shape[0]
    pairs = list(combinations(range(n), 2))
    X = np.zeros((len(pairs), n), dtype=bool)
    for k, (u, v) in enumerate(pairs):
        X[k, u] = X[k, v] = True
    A = adj.astype(np.float32)
    while True:
        counts = X.astype(np.float32) @ A.T  # counts[p, w] = |out(w) ∩ X_p|
        sizes = X.sum(axis=1, keepdims=True)
        split = (counts > 0) & (counts < sizes) & ~X
        if not split.any():
            return X.sum(axis=1)
        X |= split


def _adj_bool(G: SemiCompleteDigraph) -> np.ndarray:
    a = np.zeros((G.n, G.n), dtype=bool)
    for i in range(G.n):
        m = G.out[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            a[i, j] = True
    return a


def is_prime(G: SemiCompleteDigraph, max_n: int = 20) -> bool:
    """True iff every homogeneous set is trivial (pairwise-closure method)."""
    check_cap("is_prime", G.n, max_n)
    if G.n <= 2:
        return True  # no set with 1 < |X| < n exists
    if G.n > 16:
        return bool(np.all(_closure_sizes_np(_adj_bool(G)) == G.n))
    full = (1 << G.n) - 1
    for u, v in combinations(range(G.n), 2):
        if _pair_closure(G, u, v) != full:
            return False
    return True


def is_prime_oracle(G: SemiCompleteDigraph) -> bool:
    """Definitional oracle: enumerate all 2^n subsets (tiny n only)."""
    n = G.n
    for size in range(2, n):
        for X in combinations(range(n), size):
            inside = set(X)
            if all(
                all(G.arc(w, x) for x in X) or all(G.arc(x, w) for x in X)
                for w in range(n)
                if w not in inside
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# the two-condition family of prime U_5-free tournaments


def circulant_isomorphism(G: Tournament) -> Optional[tuple[int, ...]]:
    """Isomorphism from the rotational tournament C_n onto G, or None.

    Regularity filter first: C_n is (n-1)/2-regular.  In C_n the cyclic
    successor of v is the unique out-neighbor u with out(v) \\ out(u) = {u};
    that relation is graph-intrinsic, so chaining it from any start vertex
    reconstructs the cyclic labeling, which is then fully verified.
    """
    n = G.n
    if n < 3 or n % 2 == 0:
        return None
    half = (n - 1) // 2
    if any(G.out_degree(v) != half for v in range(n)):
        return None
    succ = []
    for v in range(n):
        cands = []
        m = G.out[v]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if G.out[v] & ~G.out[u] == 1 << u:
                cands.append(u)
        if len(cands) != 1:
            return None
        succ.append(cands[0])
    chain = [0]
    for _ in range(n - 1):
        chain.append(succ[chain[-1]])
    if len(set(chain)) != n or succ[chain[-1]] != 0:
        return None
    for a in range(n):
        for d in range(1, n):
            expected = d <= half
            if G.arc(chain[a], chain[(a + d) % n]) != expected:
                return None
    return tuple(chain)


def three_transitive_partition(
    G: Tournament,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """Partition V into V1, V2, V3 with every pairwise union transitive.

    Parts may be empty (a transitive tournament satisfies this with
    (V, {}, {})).  Backtracking with incremental transitivity of the three
    unions; parts are opened in order, so the witness is deterministic.
    """
    n = G.n
    parts = [0, 0, 0]

    def insert_ok(v: int, p: int) -> bool:
        for q in range(3):
            if q != p and not _can_insert_transitive(G, parts[p] | parts[q], v):
                return False
        return True

    def bt(v: int, used: int) -> bool:
        if v == n:
            return True
        for p in range(min(used + 1, 3)):
            if insert_ok(v, p):
                parts[p] |= 1 << v
                if bt(v + 1, max(used, p + 1)):
                    return True
                parts[p] &= ~(1 << v)
        return False

    if bt(0, 0):
        return tuple(_mask_vertices(p) for p in parts)  # type: ignore[return-value]
    return None


def q5_member(G: Tournament, max_n: int = 15) -> tuple[bool, dict]:
    """Membership in the family: isomorphic to some C_n, or 3-partitionable
    into sets with pairwise-transitive unions.  Returns the witness."""
    check_cap("q5_member", G.n, max_n)
    iso = circulant_isomorphism(G)
    if iso is not None:
        return True, {"condition": 1, "isomorphism": iso}
    parts = three_transitive_partition(G)
    if parts is not None:
        return True, {"condition": 2, "parts": parts}
    return False, {"condition": None}


def q5_member_oracle(G: Tournament) -> bool:
    """Definitional oracle: all 3^n part assignments, brute isomorphism."""
    from itertools import permutations, product

    n = G.n
    cond2 = False
    for assign in product(range(3), repeat=n):
        masks = [0, 0, 0]
        for v, p in enumerate(assign):
            masks[p] |= 1 << v
        if all(
            is_transitive(G, masks[i] | masks[j])
            for i in range(3)
            for j in range(i + 1, 3)
        ):
            cond2 = True
            break
    if cond2:
        return True
    if n >= 3 and n % 2 == 1:
        from .core import make_circulant

        C = make_circulant(n)
        for perm in permutations(range(n)):
            if all(G.arc(perm[i], perm[j]) == C.arc(i, j) for i, j in combinations(range(n), 2)):
                return True
    return False


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class ClassProfile:
    """Structural summary of one tournament."""

    n: int
    chi: int
    s: Optional[int]  # None when chi >= 3
    beta: int
    is_forest: bool
    is_weak_forest: bool
    is_star: bool
    is_prime: bool


def class_profile(H: Tournament, max_n: int = 15) -> ClassProfile:
    chi, _ = chromatic_number(H, max_n=max_n)
    s = min_color_class(H, max_n=max_n)[0] if chi <= 2 else None
    beta, _ = min_feedback_edges(H, max_n=max_n)
    forest, _ = is_forest_tournament(H, max_n=max_n)
    weak, _ = is_weak_forest(H, max_n=max_n)
    return ClassProfile(
        n=H.n,
        chi=chi,
        s=s,
        beta=beta,
        is_forest=forest,
        is_weak_forest=weak,
        is_star=(s == 1),
        is_prime=is_prime(H, max_n=max(max_n, H.n)),
    )


@dataclass(frozen=True)
class BoundStatement:
    quantity: str  # "t_general" or "t_transitive" or "both"
    text: str
    conjecture: bool
    basis: str


@dataclass(frozen=True)
class BoundProfile:
    n: int
    chi: int
    s: Optional[int]
    beta: int
    is_forest: bool
    is_weak_forest: bool
    is_star: bool
    is_hero: Optional[bool]
    statements: tuple[BoundStatement, ...]

    def lines(self) -> list[str]:
        out = [
            f"h={self.n} chi={self.chi} s={self.s} beta={self.beta} "
            f"forest={self.is_forest} weak_forest={self.is_weak_forest} "
            f"star={self.is_star} hero={self.is_hero}"
        ]
        for st in self.statements:
            tag = " (conjecture)" if st.conjecture else ""
            out.append(f"  [{st.quantity}] {st.text}{tag}  -- {st.basis}")
        return out


_EPS_BY_H_MOD_4 = {0: 4, 1: 7, 2: 6, 3: 9}


def bound_profile(
    H: Tournament, is_hero: Optional[bool] = None, max_n: int = 15
) -> BoundProfile:
    """Which growth regime of t(n,H) / t(T_n,H) the classification implies.

    Hero status cannot be computed here; it is an input flag, and the hero
    bound is only emitted when the caller asserts it.
    """
    p = class_profile(H, max_n=max_n)
    h = H.n
    st: list[BoundStatement] = []
    if p.chi == 1:
        st.append(
            BoundStatement(
                "t_transitive",
                "t(T_n,H) = 0 for n >= h",
                False,
                "H is transitive, so T_n already contains it",
            )
        )
        st.append(
            BoundStatement(
                "t_general",
                f"t(n,H) = 0 for n >= 2^{h - 1}",
                False,
                "every tournament on 2^(h-1) vertices contains T_h",
            )
        )
    elif p.chi >= 3:
        r = p.chi
        st.append(
            BoundStatement(
                "both",
                f"t(T_n,H), t(n,H) = (1 - 1/{r - 1} + o(1)) * C(n,2)",
                False,
                f"chi(H) = {r} >= 3: quadratic regime with constant {1 - 1/(r - 1):.6g}",
            )
        )
    else:  # chi == 2
        s = p.s
        if s == 1:
            st.append(
                BoundStatement(
                    "t_general", "t(n,H) = O(n)", False, "star tournament (s = 1)"
                )
            )
        else:
            st.append(
                BoundStatement(
                    "t_general",
                    f"t(n,H) = O(n^(2 - 1/2^{s - 1})) = O(n^{2 - 1 / 2 ** (s - 1):.6g})",
                    False,
                    f"2-chromatic with s = {s}",
                )
            )
        if is_hero:
            st.append(
                BoundStatement(
                    "t_general",
                    f"t(n,H) = O(n^(2 - 1/{s})) = O(n^{2 - 1 / s:.6g})",
                    False,
                    "hero flag supplied by caller",
                )
            )
        if not p.is_forest:
            eps = _EPS_BY_H_MOD_4[h % 4]
            st.append(
                BoundStatement(
                    "t_transitive",
                    f"t(T_n,H) = Omega(n^(1 + 4/(3*{h} - {eps}))) = "
                    f"Omega(n^{1 + 4 / (3 * h - eps):.6g})",
                    False,
                    f"not a forest; eps = {eps} from h mod 4 = {h % 4}",
                )
            )
        if p.beta <= 2:
            st.append(
                BoundStatement(
                    "t_transitive", "t(T_n,H) = O(n)", False, f"beta(H) = {p.beta} <= 2"
                )
            )
        if p.is_forest:
            st.append(
                BoundStatement(
                    "t_transitive",
                    "t(T_n,H) = n (log n)^O(1)",
                    True,
                    "forest tournament: conjectured near-linear growth",
                )
            )
    return BoundProfile(
        n=h,
        chi=p.chi,
        s=p.s,
        beta=p.beta,
        is_forest=p.is_forest,
        is_weak_forest=p.is_weak_forest,
        is_star=p.is_star,
        is_hero=is_hero,
        statements=tuple(st),
    )

"""Random orientation sampling, exact expansion, expander extraction,
t-gap sampling, and seeded Monte Carlo estimators.

All randomness flows through the counter-based generator in `rng`, so
every number produced here is a pure function of the inputs and the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import classify, rng, search
from .core import (
    SemiCompleteDigraph,
    Tournament,
    UndirectedOrderedGraph,
    is_transitive,
)

#: two-sided 99% normal quantile used for confidence half-widths
Z99 = 2.5758293035489004


# ---------------------------------------------------------------------------
# orientation sampling


def _orient(out_masks: Sequence[int], pairs: Sequence[tuple[int, int]], seed: int) -> list[int]:
    masks = list(out_masks)
    for t, (i, j) in enumerate(pairs):
        if rng.bit(seed, t):
            masks[j] &= ~(1 << i)  # keep i -> j
        else:
            masks[i] &= ~(1 << j)  # keep j -> i
    return masks


def sample_orientation(F: SemiCompleteDigraph, seed: int) -> Tournament:
    """One tournament from the orientation distribution of F.

    Each bidirectional pair, in lexicographic pair order, is resolved by an
    independent fair bit: bit 1 keeps the arc from the smaller to the larger
    endpoint.  Non-bidirectional pairs keep F's arc.  Deterministic in
    (F, seed).
    """
    return Tournament(_orient(F.out, F.bidi_pairs(), seed), validate=False)


# ---------------------------------------------------------------------------
# exact edge expansion


@dataclass(frozen=True)
class ExpansionReport:
    """Minimum of e(S, V-S)/|S| over 1 <= |S| <= n/2, with its argmin."""

    value: float
    argmin_set: tuple[int, ...]
    exact: bool
    cut_edges: int
    set_size: int


def _bidi_graph(G: SemiCompleteDigraph) -> UndirectedOrderedGraph:
    return UndirectedOrderedGraph(G.n, G.bidi_pairs())


def expansion_exact(
    U: UndirectedOrderedGraph | SemiCompleteDigraph,
    max_exhaustive_n: int = 24,
    sample_cuts: int = 4096,
    seed: int = 0,
) -> ExpansionReport:
    """Edge expansion of U (of the bidirectional graph for digraph input).

    Exhaustive over all subsets up to ``max_exhaustive_n`` vertices; a
    complete graph short-circuits to ceil(n/2) analytically.  Larger inputs
    fall back to seeded sampled cuts, reported with exact=False (the sampled
    minimum only upper-bounds the true expansion).  A single vertex has no
    admissible S, reported as infinite expansion.
    """
    if isinstance(U, SemiCompleteDigraph):
        U = _bidi_graph(U)
    n = U.n
    if n == 1:
        return ExpansionReport(math.inf, (), True, 0, 0)
    m = len(U.edges)
    if m == n * (n - 1) // 2:
        k = n // 2
        return ExpansionReport(n - k, tuple(range(k)), True, k * (n - k), k)
    adj = [0] * n
    for a, b in U.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    if n <= max_exhaustive_n:
        return _expansion_exhaustive(n, adj)
    best = None
    for s in range(sample_cuts):
        mask = int(rng.word(seed, s)) & ((1 << n) - 1)
        size = mask.bit_count()
        if size > n // 2:
            mask ^= (1 << n) - 1
            size = n - size
        if size == 0:
            continue
        cut = _cut_size(n, adj, mask)
        if best is None or cut * best[2] < best[1] * size:
            best = (mask, cut, size)
    mask, cut, size = best
    return ExpansionReport(cut / size, _mask_tuple(mask), False, cut, size)


def _cut_size(n: int, adj: Sequence[int], mask: int) -> int:
    comp = ((1 << n) - 1) & ~mask
    total = 0
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        total += (adj[v] & comp).bit_count()
    return total


def _mask_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _expansion_exhaustive(n: int, adj: Sequence[int]) -> ExpansionReport:
    """Vectorized sweep of all 2^n subsets.

    Edges inside S are accumulated by the doubling recurrence
    e_in(S + v) = e_in(S) + |adj(v) & S| over prefixes, and the cut size is
    sum(deg) - 2 e_in; the argmin is taken over 1 <= |S| <= n/2 with the
    smallest bitmask winning ties.
    """
    size = 1 << n
    e_in = np.zeros(size, dtype=np.int32)
    degsum = np.zeros(size, dtype=np.int32)
    for v in range(n):
        block = np.arange(1 << v, dtype=np.int64)
        lo = 1 << v
        e_in[lo : 2 * lo] = e_in[:lo] + np.bitwise_count(block & adj[v]).astype(np.int32)
        degsum[lo : 2 * lo] = degsum[:lo] + adj[v].bit_count()
    masks = np.arange(size, dtype=np.int64)
    pc = np.bitwise_count(masks).astype(np.int32)
    valid = (pc >= 1) & (pc <= n // 2)
    cut = degsum - 2 * e_in
    ratio = np.where(valid, cut / np.maximum(pc, 1), np.inf)
    idx = int(np.argmin(ratio))
    return ExpansionReport(
        float(ratio[idx]), _mask_tuple(int(masks[idx])), True, int(cut[idx]), int(pc[idx])
    )


# ---------------------------------------------------------------------------
# expander extraction


@dataclass(frozen=True)
class ExtractionStep:
    vertices: int
    edges: int
    expansion: float
    threshold: float
    action: str  # "stop", "descend-cut", "descend-complement", "fail"


@dataclass(frozen=True)
class ExtractionResult:
    vertices: tuple[int, ...]  # original labels of the terminal subgraph
    graph: UndirectedOrderedGraph  # compacted terminal subgraph
    expansion: ExpansionReport
    threshold: float
    steps: tuple[ExtractionStep, ...]


def extract_expander(
    U: UndirectedOrderedGraph,
    b: float,
    max_exhaustive_n: int = 24,
) -> Optional[ExtractionResult]:
    """Iteratively shrink U until the current subgraph is a b*log2^b(m)-expander.

    Each round computes the exact expansion; if it is below the threshold,
    the argmin cut side X (|X| <= m/2) is inspected: descend into X if it
    spans at least b*x*log2^{b+1}(x) edges, else into the complement under
    the analogous bound, else report failure (None).  The terminal subgraph
    is returned with its certifying expansion report.
    """
    labels = list(range(U.n))
    cur = U
    steps: list[ExtractionStep] = []
    while True:
        m = cur.n
        thr = b * math.log2(m) ** b if m > 1 else 0.0
        rep = expansion_exact(cur, max_exhaustive_n=max_exhaustive_n)
        if rep.value >= thr:
            steps.append(ExtractionStep(m, cur.edge_count(), rep.value, thr, "stop"))
            return ExtractionResult(
                tuple(labels), cur, rep, thr, tuple(steps)
            )
        X = rep.argmin_set
        x = len(X)
        comp = tuple(v for v in range(m) if v not in set(X))
        sub_x, _ = cur.relabel_compact(X)
        sub_c, _ = cur.relabel_compact(comp)
        need_x = b * x * math.log2(x) ** (b + 1) if x > 1 else 0.0
        need_c = (
            b * len(comp) * math.log2(len(comp)) ** (b + 1) if len(comp) > 1 else 0.0
        )
        if sub_x.edge_count() >= need_x:
            steps.append(
                ExtractionStep(m, cur.edge_count(), rep.value, thr, "descend-cut")
            )
            labels = [labels[v] for v in sorted(X)]
            cur = sub_x
        elif sub_c.edge_count() >= need_c:
            steps.append(
                ExtractionStep(
                    m, cur.edge_count(), rep.value, thr, "descend-complement"
                )
            )
            labels = [labels[v] for v in comp]
            cur = sub_c
        else:
            steps.append(ExtractionStep(m, cur.edge_count(), rep.value, thr, "fail"))
            return None


# ---------------------------------------------------------------------------
# t-gap sampling


@dataclass(frozen=True)
class GapSubgraph:
    """Induced subgraph on positions pairwise >= t apart, avoiding the first
    and last t-1 positions.  Vertices keep their original labels."""

    n: int
    t: int
    vertices: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        t = self.t
        for v in self.vertices:
            if v < t - 1 or v > self.n - t:
                raise ValueError(f"vertex {v} violates the exclusion zones for t={t}")
        vs = sorted(self.vertices)
        for a, b in zip(vs, vs[1:]):
            if b - a < t:
                raise ValueError(f"vertices {a},{b} closer than t={t}")

    def edge_count(self) -> int:
        return len(self.edges)

    def as_graph(self) -> UndirectedOrderedGraph:
        return UndirectedOrderedGraph(self.n, self.edges)


def sample_tgap(G: UndirectedOrderedGraph, t: int, seed: int) -> GapSubgraph:
    """Randomized t-gap subgraph.

    Scanning positions t..n-t+1 (1-based), a position is skipped whenever
    one of the previous t-1 positions was selected and is otherwise taken
    with probability 1/t (word % t == 0).  t=1 selects everything, t=n
    nothing.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    n = G.n
    selected = []
    last = None
    for v in range(t - 1, n - t + 1):  # 0-based image of t..n-t+1
        if last is not None and v - last < t:
            continue
        if rng.word(seed, v) % t == 0:
            selected.append(v)
            last = v
    sel = set(selected)
    edges = frozenset(e for e in G.edges if e[0] in sel and e[1] in sel)
    return GapSubgraph(n=n, t=t, vertices=tuple(selected), edges=edges)


def trivial_gap(G: UndirectedOrderedGraph, t: int) -> Optional[GapSubgraph]:
    """The non-isolated vertices of G as a t-gap subgraph, when they qualify."""
    vs = sorted({v for e in G.edges for v in e})
    if any(v < t - 1 or v > G.n - t for v in vs):
        return None
    if any(b - a < t for a, b in zip(vs, vs[1:])):
        return None
    return GapSubgraph(n=G.n, t=t, vertices=tuple(vs), edges=G.edges)


# ---------------------------------------------------------------------------
# Monte Carlo estimators


@dataclass(frozen=True)
class EstimateReport:
    event: str
    trials: int
    successes: int
    estimate: float
    half_width: float  # 99% normal-approximation confidence half-width
    seed: int


def _np_adjacency(T: Tournament) -> np.ndarray:
    a = np.zeros((T.n, T.n), dtype=bool)
    for i in range(T.n):
        m = T.out[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            a[i, j] = True
    return a


def _event_predicate(event: str, n: int) -> Callable[[Tournament], bool]:
    if event == "transitive":
        return lambda T: is_transitive(T)
    if event == "regular":
        return lambda T: all(T.out_degree(v) == (T.n - 1) // 2 for v in range(T.n))
    if event == "iso_circulant":
        return lambda T: classify.circulant_isomorphism(T) is not None
    if event == "not_prime":
        return lambda T: not classify.is_prime(T, max_n=max(20, n))
    if event == "q5_member":
        return lambda T: classify.q5_member(T, max_n=max(15, n))[0]
    raise ValueError(f"unknown event {event!r}")


def estimate_probability(
    F: SemiCompleteDigraph,
    event: str,
    trials: int,
    seed: int,
) -> EstimateReport:
    """Monte Carlo estimate of P[predicate] under the orientation distribution.

    Per-trial seeds are word(seed, trial); predicates delegate to the
    classification module with caps opened to the instance size (the
    pairwise-closure and partition searches stay exact at any n, only
    slower).
    """
    pred = _event_predicate(event, F.n)
    pairs = F.bidi_pairs()
    successes = 0
    for trial in range(trials):
        T = Tournament(_orient(F.out, pairs, rng.subseed(seed, trial)), validate=False)
        if pred(T):
            successes += 1
    p = successes / trials if trials else 0.0
    hw = Z99 * math.sqrt(p * (1 - p) / trials) if trials else math.inf
    return EstimateReport(event, trials, successes, p, hw, seed)


# ---------------------------------------------------------------------------
# certificate pipeline


@dataclass(frozen=True)
class CertificateReport:
    extraction_ok: bool
    subgraph_vertices: tuple[int, ...]
    trials_run: int
    prime_count: int
    family_count: int
    certificate_trial: Optional[int]
    certificate: Optional[Tournament]
    certificate_prime: Optional[bool] = None
    certificate_in_family: Optional[bool] = None
    certificate_hfree: Optional[bool] = None


def sparse_certificate_search(
    G: SemiCompleteDigraph,
    H: Tournament,
    family_predicate: Callable[[Tournament], bool],
    b: float,
    trials: int,
    seed: int,
) -> CertificateReport:
    """Search for a prime sampled tournament outside the given family.

    Pipeline: extract an expander from the bidirectional graph of G,
    restrict G to it, then repeatedly orient and test.  The first sample
    that is prime and not a family member is reported as a certificate,
    together with whether it is H-free.
    """
    ext = extract_expander(_bidi_graph(G), b)
    if ext is None or len(ext.vertices) < 2:
        return CertificateReport(False, (), 0, 0, 0, None, None)
    Gp = G.induced(ext.vertices)
    pairs = Gp.bidi_pairs()
    prime_count = 0
    family_count = 0
    for trial in range(trials):
        T = Tournament(_orient(Gp.out, pairs, rng.subseed(seed, trial)), validate=False)
        prime = classify.is_prime(T, max_n=max(20, T.n))
        member = family_predicate(T)
        prime_count += prime
        family_count += member
        if prime and not member:
            hfree = search.contains_subdigraph(T, H) is None
            return CertificateReport(
                True,
                ext.vertices,
                trial + 1,
                prime_count,
                family_count,
                trial,
                T,
                certificate_prime=prime,
                certificate_in_family=member,
                certificate_hfree=hfree,
            )
    return CertificateReport(
        True, ext.vertices, trials, prime_count, family_count, None, None
    )

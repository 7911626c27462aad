"""Enumeration of labeled tournaments as pair-orientation bit codes.

A tournament on n vertices is encoded in C(n,2) bits, one per vertex pair
in lexicographic order: bit t is 1 iff the arc points from the smaller to
the larger endpoint of the t-th pair.  Codes make exhaustive sweeps and
symmetry reduction cheap: relabeling acts on codes by a precomputed bit
permutation (with flips where a pair's endpoints swap order).
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from .core import Tournament


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def tournament_from_code(n: int, code: int) -> Tournament:
    masks = [0] * n
    for t, (i, j) in enumerate(pair_list(n)):
        if code >> t & 1:
            masks[i] |= 1 << j
        else:
            masks[j] |= 1 << i
    return Tournament(masks, validate=False)


def code_from_tournament(T: Tournament) -> int:
    code = 0
    for t, (i, j) in enumerate(pair_list(T.n)):
        if T.arc(i, j):
            code |= 1 << t
    return code


def code_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def permutation_bit_maps(n: int) -> list[list[tuple[int, int, bool]]]:
    """For each vertex permutation, the induced action on code bits.

    Entry (src, dst, flip): bit ``src`` of the original code lands in bit
    ``dst`` of the relabeled code, negated when the permutation swaps the
    pair's endpoint order.
    """
    pairs = pair_list(n)
    index = {p: t for t, p in enumerate(pairs)}
    maps = []
    for perm in permutations(range(n)):
        entry = []
        for t, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            flip = a > b
            dst = index[(min(a, b), max(a, b))]
            entry.append((t, dst, flip))
        maps.append(entry)
    return maps


def relabel_code(n: int, code: int, perm: tuple[int, ...]) -> int:
    pairs = pair_list(n)
    index = {p: t for t, p in enumerate(pairs)}
    out = 0
    for t, (i, j) in enumerate(pairs):
        a, b = perm[i], perm[j]
        bit = code >> t & 1
        if a > b:
            a, b = b, a
            bit ^= 1
        out |= bit << index[(a, b)]
    return out


def canonical_tournament_codes(n: int) -> np.ndarray:
    """Codes that are minimal within their relabeling orbit (one per class)."""
    m = n * (n - 1) // 2
    codes = np.arange(1 << m, dtype=np.int64)
    canon = codes.copy()
    for entry in permutation_bit_maps(n)[1:]:
        permuted = np.zeros_like(codes)
        for src, dst, flip in entry:
            bits = (codes >> src) & 1
            if flip:
                bits ^= 1
            permuted |= bits << dst
        np.minimum(canon, permuted, out=canon)
    return codes[canon == codes]


def induced_codes(codes: np.ndarray, n: int, subset: tuple[int, ...]) -> np.ndarray:
    """Sub-tournament codes induced on ``subset``, vectorized over ``codes``.

    ``subset`` must be sorted; endpoint order is then preserved, so the
    induced code is a plain bit gather.
    """
    index = {p: t for t, p in enumerate(pair_list(n))}
    out = np.zeros_like(codes)
    for tt, (a, b) in enumerate(combinations(subset, 2)):
        out |= ((codes >> index[(a, b)]) & 1) << tt
    return out

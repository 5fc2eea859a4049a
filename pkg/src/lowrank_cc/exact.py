"""Exact solvers: set-partition enumeration, rank-1 sign split, rank-2 angular sweep."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from .core import (
    Clustering,
    as_factors,
    as_weights,
    canonicalize,
    merge_improving,
    single_cluster,
    vp_objective,
)

MAX_ORACLE_N = 13
_SUFFIX_LEN = 6


@lru_cache(maxsize=None)
def _suffixes(length: int, blocks: int, cap: int) -> np.ndarray:
    """All restricted-growth continuations of ``length`` labels.

    ``blocks`` labels are already in use and labels must stay below ``cap``.
    Rows come out in lexicographic order.
    """
    if length == 0:
        return np.zeros((1, 0), dtype=np.int8)
    parts = []
    for lab in range(min(blocks + 1, cap)):
        tail = _suffixes(length - 1, max(blocks, lab + 1), cap)
        head = np.full((tail.shape[0], 1), lab, dtype=np.int8)
        parts.append(np.hstack([head, tail]))
    return np.vstack(parts)


def set_partitions(n: int, max_clusters: int | None = None):
    """Yield blocks of restricted-growth strings covering every partition of ``n`` items.

    Each block is an int8 array of shape ``(m, n)``; concatenated, the blocks
    list all partitions with at most ``max_clusters`` parts in lexicographic
    order of their label strings.
    """
    if n < 1:
        raise ValueError("need at least one item")
    cap = n if max_clusters is None else max(1, min(max_clusters, n))
    tail = min(_SUFFIX_LEN, n - 1)
    head = n - tail

    def prefixes(prefix, blocks):
        if len(prefix) == head:
            yield prefix, blocks
            return
        for lab in range(min(blocks + 1, cap)):
            yield from prefixes(prefix + [lab], max(blocks, lab + 1))

    for prefix, blocks in prefixes([0], 1):
        suf = _suffixes(tail, blocks, cap)
        pre = np.broadcast_to(np.array(prefix, dtype=np.int8), (suf.shape[0], head))
        yield np.hstack([pre, suf])


def _factor_scores(V: np.ndarray, L: np.ndarray, cap: int) -> np.ndarray:
    m = L.shape[0]
    idx = (np.arange(m)[:, None] * cap + L).ravel()
    obj = np.zeros(m)
    for j in range(V.shape[1]):
        s = np.bincount(idx, weights=np.tile(V[:, j], m), minlength=m * cap)
        obj += (s.reshape(m, cap) ** 2).sum(axis=1)
    return obj


def _weight_scores(A: np.ndarray, L: np.ndarray) -> np.ndarray:
    iu, ju = np.triu_indices(A.shape[0], 1)
    same = L[:, iu] == L[:, ju]
    return (same * A[iu, ju]).sum(axis=1)


def brute_force(A=None, *, V=None, max_clusters: int | None = None) -> tuple[Clustering, float]:
    """Optimal clustering by enumerating all set partitions (n <= 13).

    Pass either a similarity matrix ``A`` (maximizes ``cc_objective``) or a
    factor matrix ``V`` (maximizes ``vp_objective``; the maximizers coincide
    for ``A = V V^T``). With factors, enumeration is limited to ``d + 2``
    parts unless ``max_clusters`` says otherwise. Ties go to the first
    partition in enumeration order.
    """
    if (A is None) == (V is None):
        raise ValueError("pass exactly one of A or V")
    if V is not None:
        X = as_factors(V)
        if max_clusters is None:
            max_clusters = X.shape[1] + 2
    else:
        X = as_weights(A)
    n = X.shape[0]
    if n > MAX_ORACLE_N:
        raise ValueError("instance too large for oracle")
    cap = n if max_clusters is None else max(1, min(max_clusters, n))

    best_obj, best = -np.inf, None
    for L in set_partitions(n, cap):
        scores = _factor_scores(X, L, cap) if V is not None else _weight_scores(X, L)
        b = int(np.argmax(scores))
        if scores[b] > best_obj:
            best_obj, best = float(scores[b]), L[b].copy()
    return canonicalize(best), best_obj


def rank1_psd_solve(v) -> Clustering:
    """Split items by the sign of ``v``; zeros join the nonnegative side.

    For ``A = v v^T`` this agrees with every pair, so it is optimal.
    """
    v = np.asarray(v, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValueError("empty labeling")
    return canonicalize(v < 0)


def _best_for_first_cut(S: np.ndarray, Q: np.ndarray, c1: int):
    """Best 2- and 3-arc split with first cut ``c1``; returns (obj, c2, c3 or -1)."""
    m = S.shape[0]
    total = Q[m]
    best = (-np.inf, -1, -1)
    c2 = np.arange(c1 + 1, m)
    if c2.size == 0:
        return best
    first = Q[c2] - Q[c1]
    rest = total - first
    two = (first ** 2).sum(axis=1) + (rest ** 2).sum(axis=1)
    j = int(np.argmax(two))
    best = (float(two[j]), int(c2[j]), -1)
    if c2.size < 2:
        return best
    # 3 arcs: [c1, c2), [c2, c3), [c3, m) + [0, c1)
    ii, jj = np.triu_indices(c2.size, 1)
    a2, a3 = c2[ii], c2[jj]
    s1 = Q[a2] - Q[c1]
    s2 = Q[a3] - Q[a2]
    s3 = total - s1 - s2
    three = (s1 ** 2).sum(axis=1) + (s2 ** 2).sum(axis=1) + (s3 ** 2).sum(axis=1)
    j = int(np.argmax(three))
    if three[j] > best[0]:
        best = (float(three[j]), int(a2[j]), int(a3[j]))
    return best


def rank2_psd_solve(V, threads: int = 1) -> tuple[Clustering, float]:
    """Exact vector-partition optimum for rank-2 factors in ``O(n^3)``.

    Optimal clusters occupy disjoint angular sectors, so after sorting the
    nonzero rows by angle every cluster is a contiguous circular arc. All
    splits into one, two or three arcs are scored from prefix sums. Zero rows
    are placed with the first nonzero row afterwards.
    """
    V = as_factors(V)
    n, d = V.shape
    if d != 2:
        raise ValueError(f"rank2_psd_solve needs d = 2, got d = {d}")
    nonzero = np.flatnonzero(np.any(V != 0, axis=1))
    if nonzero.size == 0:
        C = single_cluster(n)
        return C, 0.0
    angles = np.arctan2(V[nonzero, 1], V[nonzero, 0])
    order = nonzero[np.argsort(angles, kind="stable")]
    S = V[order]
    m = S.shape[0]
    Q = np.vstack([np.zeros(2), np.cumsum(S, axis=0)])

    cuts = range(m)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _best_for_first_cut(S, Q, c), cuts))
    else:
        results = [_best_for_first_cut(S, Q, c) for c in cuts]

    # one arc, then candidates in (c1, c2, c3) order; first strict maximum wins
    best_obj, best_cut = float(Q[m] @ Q[m]), None
    for c1, (obj, c2, c3) in zip(cuts, results):
        if obj > best_obj:
            best_obj, best_cut = obj, (c1, c2, c3)

    arc = np.zeros(m, dtype=np.intp)
    if best_cut is not None:
        c1, c2, c3 = best_cut
        arc[c1:c2] = 1
        if c3 >= 0:
            arc[c2:c3] = 2
    labels = np.empty(n, dtype=np.intp)
    labels[order] = arc
    zero = np.ones(n, dtype=bool)
    zero[nonzero] = False
    labels[zero] = labels[nonzero[0]]
    C = merge_improving(V, canonicalize(labels))
    return C, vp_objective(V, C)

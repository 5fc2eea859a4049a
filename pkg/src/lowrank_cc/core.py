"""Domain types and objective functions for correlation clustering.

A factor matrix ``V`` (n x d) stands for the similarity matrix ``A = V V^T``.
Similarity matrices and factor matrices are plain float64 ndarrays checked by
:func:`as_factors` and :func:`as_weights`; a partition is a :class:`Clustering`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SYMMETRY_RTOL = 1e-9


def as_factors(V) -> np.ndarray:
    """Validate and return ``V`` as an (n, d) float64 array.

    A 1-D input is treated as a single column (rank one).
    """
    V = np.asarray(V, dtype=np.float64)
    if V.ndim == 1:
        V = V[:, None]
    if V.ndim != 2:
        raise ValueError(f"factor matrix must be 2-D, got shape {V.shape}")
    n, d = V.shape
    if n < 1 or d < 1:
        raise ValueError(f"factor matrix needs n >= 1 and d >= 1, got {V.shape}")
    if not np.all(np.isfinite(V)):
        raise ValueError("factor matrix has non-finite entries")
    return V


def as_weights(A) -> np.ndarray:
    """Validate and return ``A`` as a square, (nearly) symmetric float64 array."""
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"weight matrix must be square and nonempty, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("weight matrix has non-finite entries")
    gap = np.abs(A - A.T)
    if np.any(gap > SYMMETRY_RTOL * np.maximum(1.0, np.abs(A))):
        raise ValueError("weight matrix is not symmetric")
    return A


@dataclass(frozen=True, eq=False)
class Clustering:
    """A partition of ``n`` items in canonical (first-occurrence) label order.

    Build one from arbitrary ids with :func:`canonicalize`; the constructor
    itself only accepts labels that are already canonical.
    """

    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.intp).ravel()
        if labels.size == 0:
            raise ValueError("empty labeling")
        # first occurrences must appear as 0, 1, 2, ... in order
        _, first = np.unique(labels, return_index=True)
        order = labels[np.sort(first)]
        if not np.array_equal(order, np.arange(order.size)) or order.size != self.k:
            raise ValueError("labels are not in canonical form; use canonicalize()")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.labels == c)

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash((self.k, self.labels.tobytes()))

    def __repr__(self):
        return f"Clustering(k={self.k}, labels={self.labels.tolist()})"

    def to_dict(self) -> dict:
        return {"labels": self.labels.tolist(), "k": self.k}


def canonicalize(labels) -> Clustering:
    """Relabel cluster ids in order of first occurrence.

    >>> canonicalize([2, 2, 0, 1]).labels.tolist()
    [0, 0, 1, 2]
    """
    if isinstance(labels, Clustering):
        return labels
    raw = np.asarray(labels).ravel()
    if raw.size == 0:
        raise ValueError("empty labeling")
    _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
    # rank each distinct id by the position where it first appears
    rank = np.empty(first.size, dtype=np.intp)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return Clustering(rank[inverse.ravel()], int(first.size))


def _check_sizes(n: int, C: Clustering):
    if C.n != n:
        raise ValueError(f"clustering has {C.n} items but the data has {n}")


def sum_points(V, C) -> np.ndarray:
    """Return the (k, d) array whose row ``c`` is the sum of rows of ``V`` in cluster ``c``."""
    V = as_factors(V)
    C = canonicalize(C)
    _check_sizes(V.shape[0], C)
    S = np.zeros((C.k, V.shape[1]))
    np.add.at(S, C.labels, V)
    return S


def vp_objective(V, C) -> float:
    """Vector-partition score: sum of squared norms of the cluster sum points."""
    S = sum_points(V, C)
    return float(np.sum(S * S))


def _pairs(A: np.ndarray, C: Clustering):
    iu, ju = np.triu_indices(A.shape[0], 1)
    return A[iu, ju], C.labels[iu] != C.labels[ju]


def cc_objective(A, C) -> float:
    """Correlation-clustering score ``sum_{i<j} A_ij x_i.x_j``: total weight kept inside clusters.

    This differs from :func:`cut_objective` by the constant ``sum_{i<j} A_ij``,
    so both have the same maximizers, and for ``A = V V^T`` it satisfies
    ``2 * cc_objective + sum_i |v_i|^2 == vp_objective``. The diagonal of
    ``A`` is never read.
    """
    A = as_weights(A)
    C = canonicalize(C)
    _check_sizes(A.shape[0], C)
    a, cut = _pairs(A, C)
    return float(np.sum(a[~cut]))


def cut_objective(A, C) -> float:
    """``-sum_{i<j} A_ij d_ij`` where ``d_ij`` marks pairs split across clusters."""
    A = as_weights(A)
    C = canonicalize(C)
    _check_sizes(A.shape[0], C)
    a, cut = _pairs(A, C)
    return 0.0 - float(np.sum(a[cut]))


def agreement_weight(A, C) -> float:
    """Total agreement weight: positive pairs kept together plus negative pairs cut."""
    A = as_weights(A)
    C = canonicalize(C)
    _check_sizes(A.shape[0], C)
    a, cut = _pairs(A, C)
    contrib = np.where(cut, np.maximum(-a, 0.0), np.maximum(a, 0.0))
    return float(np.sum(contrib))


def merge_improving(V, C, collapse_orthogonal: bool = False, rtol: float = 1e-12) -> Clustering:
    """Greedily merge clusters whose sum points have a positive dot product.

    The pair with the largest positive product is merged first (lowest index
    pair on ties) until no positive pair remains. Merging such a pair raises
    :func:`vp_objective` by twice the product. With ``collapse_orthogonal``,
    pairs whose product is zero (up to ``rtol * |S_i| |S_j|``) are merged too,
    which leaves the objective unchanged.
    """
    V = as_factors(V)
    C = canonicalize(C)
    _check_sizes(V.shape[0], C)
    labels = C.labels.copy()
    S = sum_points(V, C)
    alive = list(range(C.k))
    while len(alive) > 1:
        P = S[alive] @ S[alive].T
        norms = np.sqrt(np.diag(P))
        iu, ju = np.triu_indices(len(alive), 1)
        prods = P[iu, ju]
        best = int(np.argmax(prods))
        if prods[best] > 0:
            pick = best
        elif collapse_orthogonal:
            zero = np.abs(prods) <= rtol * norms[iu] * norms[ju]
            if not zero.any():
                break
            pick = int(np.flatnonzero(zero)[0])
        else:
            break
        keep, drop = alive[iu[pick]], alive[ju[pick]]
        S[keep] += S[drop]
        labels[labels == drop] = keep
        alive.remove(drop)
    return canonicalize(labels)


def single_cluster(n: int) -> Clustering:
    return Clustering(np.zeros(n, dtype=np.intp), 1)


def singletons(n: int) -> Clustering:
    return Clustering(np.arange(n), n)

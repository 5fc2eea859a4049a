"""Comparison methods: Pivot for signed instances and k-means with k-means++ seeding."""
from __future__ import annotations

import numpy as np

from .core import Clustering, as_factors, as_weights, canonicalize, cc_objective

MAX_LLOYD_ITER = 300


def pivot_once(positive: np.ndarray, order: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One Pivot pass visiting candidate pivots in ``order``.

    ``positive[i, j]`` says whether ``i`` and ``j`` are similar. Returns raw
    labels and, for each item, the pivot of its cluster.
    """
    n = positive.shape[0]
    labels = np.full(n, -1, dtype=np.intp)
    pivots = np.full(n, -1, dtype=np.intp)
    c = 0
    for p in order:
        if labels[p] >= 0:
            continue
        grab = (labels < 0) & positive[p]
        grab[p] = True
        labels[grab] = c
        pivots[grab] = p
        c += 1
    return labels, pivots


def pivot(A, restarts: int = 1, seed=None) -> tuple[Clustering, float]:
    """Best-of-``restarts`` Pivot clustering of a signed similarity matrix.

    Each pass picks a uniformly random unclustered item and clusters it with
    every unclustered item ``j`` having ``A[pivot, j] > 0``. Weighted inputs
    are thresholded at zero; exact zeros count as dissimilar.
    """
    A = as_weights(A)
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rng = np.random.default_rng(seed)
    positive = A > 0
    best_obj, best = -np.inf, None
    for _ in range(restarts):
        labels, _ = pivot_once(positive, rng.permutation(A.shape[0]))
        C = canonicalize(labels)
        obj = cc_objective(A, C)
        if obj > best_obj:
            best_obj, best = obj, C
    return best, best_obj


def _sq_dists(X, centers):
    return ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def kmeans_pp_seed(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ initial centers: first uniform, then by squared distance."""
    n = X.shape[0]
    centers = [X[rng.integers(n)]]
    closest = ((X - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            i = rng.choice(n, p=closest / total)
        else:
            i = rng.integers(n)
        centers.append(X[i])
        closest = np.minimum(closest, ((X - X[i]) ** 2).sum(axis=1))
    return np.array(centers)


def lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int = MAX_LLOYD_ITER):
    """Lloyd iterations from ``centers`` until the assignment stops changing.

    Returns ``(labels, centers, costs)`` where ``costs`` records the
    within-cluster sum of squares after every assignment step. A cluster
    left empty is reseeded at the point farthest from its current center.
    """
    centers = centers.copy()
    k = centers.shape[0]
    labels = None
    costs = []
    for _ in range(max_iter):
        D = _sq_dists(X, centers)
        new = np.argmin(D, axis=1)
        costs.append(float(D[np.arange(X.shape[0]), new].sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(k):
            mask = labels == c
            if mask.any():
                centers[c] = X[mask].mean(axis=0)
        for c in range(k):
            if not (labels == c).any():
                far = int(np.argmax(((X - centers[labels]) ** 2).sum(axis=1)))
                labels[far] = c
                centers[c] = X[far]
    return labels, centers, costs


def kmeans_cost(X, labels) -> float:
    X = np.asarray(X, dtype=np.float64)
    cost = 0.0
    for c in np.unique(labels):
        pts = X[labels == c]
        cost += float(((pts - pts.mean(axis=0)) ** 2).sum())
    return cost


def kmeans(V, k: int, restarts: int = 10, seed=None) -> Clustering:
    """Best-of-``restarts`` Lloyd's k-means with k-means++ seeding."""
    X = as_factors(V)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rng = np.random.default_rng(seed)
    best_cost, best = np.inf, None
    for _ in range(restarts):
        labels, _, _ = lloyd(X, kmeans_pp_seed(X, k, rng))
        cost = kmeans_cost(X, labels)
        if cost < best_cost:
            best_cost, best = cost, labels
    return canonicalize(best)

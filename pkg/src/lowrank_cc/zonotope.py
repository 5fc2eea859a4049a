"""Signing-zonotope sampling for the low-rank vector partition problem.

Each item ``i`` and each pair of cluster slots ``a < b`` (``d + 1`` slots in
total, 0-based here) contributes one generator: the first ``d`` columns of
``v_i (e_a - e_b)^T`` stacked into a vector of length ``d**2``. Projecting a
Gaussian direction ``x`` onto the generators and taking signs gives a signing,
and a signing decodes to a clustering with at most ``d + 1`` clusters.

Because column ``(i, a, b)`` holds ``+v_i`` in block ``a`` and ``-v_i`` in
block ``b`` (nothing when ``b == d``), the projection reduces to
``v_i . (x_a - x_b)`` where ``x_c`` is the ``c``-th length-``d`` block of
``x`` and ``x_d = 0``. Every routine below uses that form and never builds
``G^T x`` densely.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .core import Clustering, as_factors, canonicalize, merge_improving, single_cluster

_BATCH = 512


def slot_pairs(d: int) -> list[tuple[int, int]]:
    """Slot pairs ``(a, b)``, ``a < b``, over ``d + 1`` slots in lexicographic order."""
    return list(combinations(range(d + 1), 2))


class GeneratorMatrix:
    """Generators of the signing zonotope for factor rows ``V``.

    Columns are ordered item-major, then by slot pair ``(a, b)``
    lexicographically, giving ``M = n * d * (d + 1) / 2`` columns of length
    ``d**2``. The dense matrix is only built on request via :meth:`dense`.
    """

    def __init__(self, V):
        self.V = as_factors(V)
        self.n, self.d = self.V.shape
        self.pairs = slot_pairs(self.d)
        self._pair_pos = {p: j for j, p in enumerate(self.pairs)}

    @property
    def M(self) -> int:
        return self.n * len(self.pairs)

    def column_index(self, i: int, a: int, b: int) -> int:
        if not (0 <= i < self.n) or (a, b) not in self._pair_pos:
            raise IndexError(f"no generator for item {i}, slots ({a}, {b})")
        return i * len(self.pairs) + self._pair_pos[(a, b)]

    def column_key(self, j: int) -> tuple[int, int, int]:
        i, p = divmod(j, len(self.pairs))
        a, b = self.pairs[p]
        return i, a, b

    def column(self, j: int) -> np.ndarray:
        i, a, b = self.column_key(j)
        d = self.d
        g = np.zeros(d * d)
        g[a * d:(a + 1) * d] = self.V[i]
        if b < d:
            g[b * d:(b + 1) * d] = -self.V[i]
        return g

    def dense(self) -> np.ndarray:
        """The full ``d**2`` x ``M`` generator matrix."""
        return np.column_stack([self.column(j) for j in range(self.M)])

    def slot_scores(self, x) -> np.ndarray:
        """``(n, d + 1)`` array of ``v_i . x_c``, the last slot being identically 0."""
        x = np.asarray(x, dtype=np.float64).reshape(self.d, self.d)
        return np.hstack([self.V @ x.T, np.zeros((self.n, 1))])

    def project(self, x) -> np.ndarray:
        """``G^T x`` computed blockwise in ``O(n d^2)``."""
        P = self.slot_scores(x)
        a, b = np.array(self.pairs).T
        return (P[:, a] - P[:, b]).ravel()


def build_generators(V) -> GeneratorMatrix:
    return GeneratorMatrix(V)


def _sign(u: np.ndarray) -> np.ndarray:
    # sign(0) := +1 keeps the map total
    return np.where(u >= 0, 1, -1).astype(np.int8)


@dataclass(frozen=True, eq=False)
class Signing:
    """A +-1 value for every (item, slot pair) triple, item-major.

    :meth:`get` also answers for ``a > b`` using ``sigma[i, b, a] = -sigma[i, a, b]``.
    """

    values: np.ndarray
    n: int
    d: int

    def __post_init__(self):
        vals = np.asarray(self.values).astype(np.int8).ravel()
        expected = self.n * self.d * (self.d + 1) // 2
        if vals.size != expected:
            raise ValueError(f"signing has length {vals.size}, expected {expected}")
        if not np.all(np.abs(vals) == 1):
            raise ValueError("signing entries must be +1 or -1")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def table(self) -> np.ndarray:
        """``(n, d + 1, d + 1)`` antisymmetric win table with zero diagonal."""
        s = self.d + 1
        T = np.zeros((self.n, s, s), dtype=np.int8)
        a, b = np.triu_indices(s, 1)
        flat = self.values.reshape(self.n, -1)
        T[:, a, b] = flat
        T[:, b, a] = -flat
        return T

    def get(self, i: int, a: int, b: int) -> int:
        if a == b:
            raise ValueError("slot pair needs two distinct slots")
        lo, hi = min(a, b), max(a, b)
        pos = slot_pairs(self.d).index((lo, hi))
        v = int(self.values[i * (self.d * (self.d + 1) // 2) + pos])
        return v if a < b else -v


def sample_signing(G: GeneratorMatrix, rng: np.random.Generator) -> Signing:
    """Draw ``x ~ N(0, I_{d^2})`` and return ``sign(G^T x)``."""
    x = rng.standard_normal(G.d * G.d)
    return Signing(_sign(G.project(x)), G.n, G.d)


def decode_clustering(sigma: Signing, n: int, d: int) -> Clustering:
    """Map a signing to a clustering.

    Item ``i`` goes to the slot that beats every other slot. If no slot does
    (a non-extremal signing), the slot with the most wins is used, the
    smallest index winning ties.
    """
    if sigma.n != n or sigma.d != d:
        raise ValueError(f"signing is for n={sigma.n}, d={sigma.d}, not n={n}, d={d}")
    wins = (sigma.table() > 0).sum(axis=2)
    # argmax takes the first maximum; an all-wins slot has d wins and is unique
    return canonicalize(np.argmax(wins, axis=1))


class ZonoResult(NamedTuple):
    clustering: Clustering
    vp_objective: float
    cc_objective: float


def _best_in_stream(V: np.ndarray, iterations: int, rng: np.random.Generator):
    """Best (objective, raw labels) over ``iterations`` draws; first maximum wins."""
    n, d = V.shape
    best_obj, best_labels = -np.inf, None
    done = 0
    while done < iterations:
        B = min(_BATCH, iterations - done)
        X = rng.standard_normal((B, d, d))
        # P[b, i, c] = v_i . x_c for the first d slots; slot d scores 0
        P = np.matmul(X, V.T).transpose(0, 2, 1)
        top = np.argmax(P, axis=2)
        labels = np.where(np.max(P, axis=2) >= 0, top, d)
        idx = (np.arange(B)[:, None] * (d + 1) + labels).ravel()
        obj = np.zeros(B)
        for j in range(d):
            s = np.bincount(idx, weights=np.tile(V[:, j], B), minlength=B * (d + 1))
            obj += (s.reshape(B, d + 1) ** 2).sum(axis=1)
        b = int(np.argmax(obj))
        if obj[b] > best_obj:
            best_obj, best_labels = float(obj[b]), labels[b].copy()
        done += B
    return best_obj, best_labels


def zonocc(V, iterations: int, seed=None, threads: int = 1) -> ZonoResult:
    """Approximately maximize the vector-partition objective by zonotope sampling.

    Runs ``iterations`` rounds of: draw a Gaussian direction, take the
    extremal signing it selects, decode it to a clustering and score it. The
    best clustering (never worse than putting everything in one cluster) is
    passed through :func:`merge_improving` before returning.

    With ``threads == 1`` the draws come from ``np.random.default_rng(seed)``
    and the result is bit-reproducible. With more threads, iterations are
    split statically over workers seeded from ``SeedSequence(seed).spawn``;
    the result then depends on ``(seed, threads)`` only.
    """
    V = as_factors(V)
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if threads < 1:
        raise ValueError("threads must be at least 1")
    n, d = V.shape
    norms2 = float(np.sum(V * V))
    total = V.sum(axis=0)

    best_obj = float(total @ total)
    best = single_cluster(n)

    if threads == 1:
        runs = [_best_in_stream(V, iterations, np.random.default_rng(seed))]
    else:
        children = np.random.SeedSequence(seed).spawn(threads)
        shares = [iterations // threads + (w < iterations % threads) for w in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(
                lambda w: _best_in_stream(V, shares[w], np.random.default_rng(children[w]))
                if shares[w] else (-np.inf, None),
                range(threads),
            ))
    for obj, labels in runs:
        if obj > best_obj:
            best_obj, best = obj, canonicalize(labels)

    best = merge_improving(V, best)
    S = np.zeros((best.k, d))
    np.add.at(S, best.labels, V)
    vp = float(np.sum(S * S))
    return ZonoResult(best, vp, (vp - norms2) / 2.0)

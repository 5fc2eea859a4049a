"""Synthetic instances and the time-series to factor-matrix pipeline."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import Clustering, as_weights, canonicalize


class DegenerateDataWarning(UserWarning):
    """Raised for constant series or a spectrum with too few positive eigenvalues."""


@dataclass(frozen=True)
class TimeSeriesTable:
    names: list
    values: np.ndarray  # (m time steps, n series)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("time-series values must be 2-D (steps x series)")
        if values.shape[1] != len(self.names):
            raise ValueError(f"{len(self.names)} names for {values.shape[1]} series")
        if not np.all(np.isfinite(values)):
            raise ValueError("time-series table has non-finite values")
        object.__setattr__(self, "names", list(self.names))
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class PlantedInstance:
    factors: np.ndarray
    planted: Clustering
    epsilon: float
    k_true: int


def simplex_vertices(d: int) -> np.ndarray:
    """``(d + 1, d)`` array of unit vectors with pairwise dot product ``-1/d``.

    The centered basis vectors of R^{d+1} are written in the Helmert basis of
    the sum-zero hyperplane and scaled to unit length.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    H = np.zeros((d, d + 1))
    for r in range(1, d + 1):
        H[r - 1, :r] = 1.0
        H[r - 1, r] = -r
        H[r - 1] /= math.sqrt(r * (r + 1))
    P = H.T
    return P / np.linalg.norm(P, axis=1, keepdims=True)


def gen_planted(d: int, n: int | None = None, epsilon: float = 0.15, seed=None) -> PlantedInstance:
    """Planted-partition factors ``(1 - eps) W + eps E``.

    The number of clusters is drawn uniformly from ``ceil(d/2) .. d + 1``
    (capped at ``n``); each cluster owns one simplex vertex, items are
    assigned uniformly, and ``E`` is standard Gaussian noise. ``n`` defaults
    to ``10 d``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    n = 10 * d if n is None else n
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    rng = np.random.default_rng(seed)
    k_true = int(rng.integers(math.ceil(d / 2), d + 2))
    k_true = min(k_true, n)
    # redraw until every planted cluster is used
    while True:
        labels = rng.integers(0, k_true, size=n)
        if np.unique(labels).size == k_true:
            break
    W = simplex_vertices(d)[labels]
    E = rng.standard_normal((n, d))
    V = (1.0 - epsilon) * W + epsilon * E
    return PlantedInstance(V, canonicalize(labels), float(epsilon), k_true)


def gen_gaussian(n: int, d: int, seed=None) -> np.ndarray:
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    return np.random.default_rng(seed).standard_normal((n, d))


def smooth_exponential(series, alpha: float = 0.5) -> np.ndarray:
    """Exponential smoothing ``s_t = alpha x_t + (1 - alpha) s_{t-1}`` with ``s_0 = x_0``.

    A 2-D input is smoothed column by column.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.shape[0] == 0:
        raise ValueError("cannot smooth an empty series")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1.0:
        return x.copy()
    s = np.empty_like(x)
    s[0] = x[0]
    # incremental form keeps constant series exactly constant
    for t in range(1, x.shape[0]):
        s[t] = s[t - 1] + alpha * (x[t] - s[t - 1])
    return s


def detrend_quadratic(table: TimeSeriesTable) -> TimeSeriesTable:
    """Subtract the least-squares quadratic fit of the per-step mean from every series."""
    m = table.m
    if m < 3:
        raise ValueError(f"quadratic detrending needs at least 3 time steps, got {m}")
    t = np.arange(m, dtype=np.float64)
    B = np.column_stack([np.ones(m), t, t * t])
    mean = table.values.mean(axis=1)
    coef, *_ = np.linalg.lstsq(B, mean, rcond=None)
    trend = B @ coef
    return TimeSeriesTable(table.names, table.values - trend[:, None])


def zscore(series) -> np.ndarray:
    """``(x - mean) / std`` with the population std, column-wise for 2-D input.

    Constant series map to zeros and trigger a :class:`DegenerateDataWarning`.
    """
    x = np.asarray(series, dtype=np.float64)
    mu = x.mean(axis=0)
    sd = x.std(axis=0)
    flat = np.atleast_1d(sd == 0)
    if flat.any():
        warnings.warn(f"{int(flat.sum())} constant series z-scored to zero", DegenerateDataWarning)
    safe = np.where(sd == 0, 1.0, sd)
    return np.where(sd == 0, 0.0, (x - mu) / safe)


def zscore_table(table: TimeSeriesTable) -> TimeSeriesTable:
    return TimeSeriesTable(table.names, zscore(table.values))


def pearson_correlation(table: TimeSeriesTable) -> np.ndarray:
    """Pearson correlation between every pair of series (population moments).

    Constant series get correlation 0 with everything else and a warning;
    the diagonal is always 1.
    """
    if table.m < 2:
        raise ValueError(f"correlation needs at least 2 time steps, got {table.m}")
    X = table.values - table.values.mean(axis=0)
    sd = np.sqrt((X * X).mean(axis=0))
    flat = sd == 0
    if flat.any():
        warnings.warn(f"{int(flat.sum())} constant series get zero correlation", DegenerateDataWarning)
    Z = X / np.where(flat, 1.0, sd)
    Z[:, flat] = 0.0
    R = (Z.T @ Z) / table.m
    R = np.clip((R + R.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(R, 1.0)
    return R


def lowrank_psd_factor(A, d: int) -> np.ndarray:
    """Factor ``V`` (n x r, r <= d) from the top positive eigenpairs of ``A``.

    ``V V^T`` keeps the ``d`` largest strictly positive eigenvalues; fewer
    columns come back (with a warning) if the spectrum runs out. Each column
    is signed so its largest-magnitude entry is nonnegative.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    A = as_weights(A)
    w, U = np.linalg.eigh((A + A.T) / 2.0)
    top = np.argsort(w)[::-1][:d]
    top = top[w[top] > 0]
    if top.size == 0:
        raise ValueError("matrix has no PSD component")
    if top.size < d:
        warnings.warn(f"only {top.size} positive eigenvalues, wanted {d}", DegenerateDataWarning)
    U = U[:, top]
    lead = U[np.argmax(np.abs(U), axis=0), np.arange(top.size)]
    U = U * np.where(lead < 0, -1.0, 1.0)
    return U * np.sqrt(w[top])


def discarded_spectrum_error(A, d: int) -> float:
    """Frobenius error ``|A - V V^T|`` predicted by the eigenvalues dropped by :func:`lowrank_psd_factor`."""
    A = as_weights(A)
    w = np.linalg.eigvalsh((A + A.T) / 2.0)
    order = np.argsort(w)[::-1]
    kept = order[:d][w[order[:d]] > 0]
    dropped = np.delete(w, kept)
    return float(np.sqrt(np.sum(dropped ** 2)))


def shift_diagonal_psd(A) -> np.ndarray:
    """Add ``max(0, -lambda_min) + 1e-8 |A|_F`` to the diagonal, making ``A`` positive definite.

    Off-diagonal entries, and therefore every clustering objective, are unchanged.
    """
    A = as_weights(A)
    lam = float(np.linalg.eigvalsh((A + A.T) / 2.0)[0])
    shift = max(0.0, -lam) + 1e-8 * float(np.linalg.norm(A))
    out = A.copy()
    out[np.diag_indices_from(out)] += shift
    return out


def prepare(table: TimeSeriesTable, alpha: float = 0.5, smooth: bool = True, detrend: bool = True) -> np.ndarray:
    """Smooth, detrend, z-score and correlate a table, in that order."""
    if smooth:
        table = TimeSeriesTable(table.names, smooth_exponential(table.values, alpha))
    if detrend:
        table = detrend_quadratic(table)
    table = zscore_table(table)
    return pearson_correlation(table)

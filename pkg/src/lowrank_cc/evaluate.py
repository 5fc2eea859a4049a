"""Clustering metrics and method comparison reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import as_factors, as_weights, canonicalize, cc_objective, single_cluster, vp_objective


def pair_accuracy(C, C_ref) -> float:
    """Fraction of item pairs on which two clusterings make the same together/apart call."""
    a = canonicalize(C).labels
    b = canonicalize(C_ref).labels
    if a.size != b.size:
        raise ValueError(f"clusterings have {a.size} and {b.size} items")
    if a.size < 2:
        raise ValueError("pair accuracy needs at least 2 items")
    iu, ju = np.triu_indices(a.size, 1)
    agree = (a[iu] == a[ju]) == (b[iu] == b[ju])
    return float(agree.mean())


def _missing(x) -> bool:
    return x is None or (isinstance(x, float) and np.isnan(x)) or (isinstance(x, str) and x.strip() == "")


def attribute_cohesion(C, attr) -> float:
    """Share of same-cluster pairs that also share the attribute.

    Pairs are pooled over all clusters. A pair is only counted when both items
    have a value; missing values are ``None``, NaN or empty strings.
    """
    C = canonicalize(C)
    attr = list(attr)
    if len(attr) != C.n:
        raise ValueError(f"{len(attr)} attribute values for {C.n} items")
    present = np.array([not _missing(x) for x in attr])
    codes = np.full(C.n, -1, dtype=np.intp)
    if present.any():
        _, inv = np.unique(np.array([str(x) for x, p in zip(attr, present) if p]), return_inverse=True)
        codes[present] = inv.ravel()
    iu, ju = np.triu_indices(C.n, 1)
    eligible = (C.labels[iu] == C.labels[ju]) & present[iu] & present[ju]
    total = int(eligible.sum())
    if total == 0:
        raise ValueError("no comparable pairs")
    same = int((eligible & (codes[iu] == codes[ju])).sum())
    return same / total


@dataclass
class Report:
    methods: list = field(default_factory=list)
    baseline: dict | None = None

    def to_json(self) -> str:
        return json.dumps({"methods": self.methods, "baseline": self.baseline}, indent=2)

    def to_text(self) -> str:
        cols = ["name", "objective_cc", "ratio_cc", "objective_vp", "ratio_vp", "k", "seconds"]
        rows = [cols]
        for m in self.methods + ([self.baseline] if self.baseline else []):
            rows.append([_fmt(m.get(c)) for c in cols])
        widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
        lines = []
        for r in rows:
            lines.append("  ".join(s.ljust(w) if i == 0 else s.rjust(w) for i, (s, w) in enumerate(zip(r, widths))))
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _ratio(x, best):
    if x is None or best is None:
        return None
    if x == best:
        return 1.0
    # ratios are meaningless against a non-positive best score
    return x / best if best > 0 else None


def compare_report(A_full, V=None, results=None, seconds=None) -> Report:
    """Score named clusterings against one instance.

    ``results`` maps method name to clustering; ``seconds`` optionally maps
    method name to wall time. Entries are sorted by ``objective_cc``
    descending (ties by name) and carry ratios to the best entry. The
    single-cluster clustering is reported separately as the baseline.
    """
    A = as_weights(A_full)
    n = A.shape[0]
    if V is not None:
        V = as_factors(V)
        if V.shape[0] != n:
            raise ValueError(f"factors have {V.shape[0]} rows, matrix has {n}")
    seconds = seconds or {}

    def entry(name, C):
        C = canonicalize(C)
        if C.n != n:
            raise ValueError(f"clustering {name!r} has {C.n} items, matrix has {n}")
        return {
            "name": name,
            "objective_cc": cc_objective(A, C),
            "objective_vp": vp_objective(V, C) if V is not None else None,
            "k": C.k,
            "seconds": seconds.get(name),
        }

    methods = [entry(name, C) for name, C in (results or {}).items()]
    methods.sort(key=lambda m: (-m["objective_cc"], m["name"]))
    best_cc = max((m["objective_cc"] for m in methods), default=None)
    vps = [m["objective_vp"] for m in methods if m["objective_vp"] is not None]
    best_vp = max(vps, default=None)
    for m in methods:
        m["ratio_cc"] = _ratio(m["objective_cc"], best_cc)
        m["ratio_vp"] = _ratio(m["objective_vp"], best_vp)
    baseline = entry("single-cluster", single_cluster(n))
    baseline["ratio_cc"] = _ratio(baseline["objective_cc"], best_cc)
    baseline["ratio_vp"] = _ratio(baseline["objective_vp"], best_vp)
    return Report(methods, baseline)

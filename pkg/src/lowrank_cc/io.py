"""CSV and JSON formats for factor matrices, time-series tables, attributes and clusterings."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import Clustering, as_factors, canonicalize
from .dataprep import TimeSeriesTable


class ParseError(ValueError):
    pass


def _parse_float(cell: str, path, row: int, col: int) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(f"{path}: row {row}, column {col}: not a number: {cell!r}") from None


def read_matrix(path) -> np.ndarray:
    """Headerless numeric CSV (factor matrix or square similarity matrix)."""
    rows = []
    with open(path, newline="") as fh:
        for r, line in enumerate(csv.reader(fh), start=1):
            if not line or all(not c.strip() for c in line):
                continue
            rows.append([_parse_float(c, path, r, j) for j, c in enumerate(line, start=1)])
    if not rows:
        raise ParseError(f"{path}: no data rows")
    width = len(rows[0])
    for r, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ParseError(f"{path}: row {r} has {len(row)} columns, expected {width}")
    return np.array(rows, dtype=np.float64)


def write_matrix(path, X) -> None:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    with open(path, "w", newline="") as fh:
        for row in X:
            fh.write(",".join(format(x, ".17g") for x in row) + "\n")


def read_factors(path) -> np.ndarray:
    return as_factors(read_matrix(path))


def write_factors(path, V) -> None:
    write_matrix(path, as_factors(V))


def read_timeseries(path) -> TimeSeriesTable:
    """CSV with a header of series names, then one row per time step."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            names = [c.strip() for c in next(reader)]
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        values = []
        for r, line in enumerate(reader, start=2):
            if not line or all(not c.strip() for c in line):
                continue
            if len(line) != len(names):
                raise ParseError(f"{path}: row {r} has {len(line)} columns, expected {len(names)}")
            values.append([_parse_float(c, path, r, j) for j, c in enumerate(line, start=1)])
    if not values:
        raise ParseError(f"{path}: no time steps")
    return TimeSeriesTable(names, np.array(values))


def read_attributes(path) -> tuple[list[str], dict[str, list]]:
    """Attribute CSV with header ``id,attr1,...``; empty cells become ``None``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if not header or header[0].strip() != "id":
            raise ParseError(f"{path}: header must start with 'id'")
        attrs = [h.strip() for h in header[1:]]
        ids, cols = [], {a: [] for a in attrs}
        for r, line in enumerate(reader, start=2):
            if not line:
                continue
            if len(line) != len(header):
                raise ParseError(f"{path}: row {r} has {len(line)} columns, expected {len(header)}")
            ids.append(line[0])
            for a, cell in zip(attrs, line[1:]):
                cols[a].append(cell.strip() or None)
    return ids, cols


def clustering_record(C: Clustering, objective_vp=None, objective_cc=None, **extra) -> dict:
    rec = {
        "labels": C.labels.tolist(),
        "k": C.k,
        "objective_vp": objective_vp,
        "objective_cc": objective_cc,
    }
    rec.update(extra)
    return rec


def write_clustering(path, C: Clustering, objective_vp=None, objective_cc=None, **extra) -> None:
    Path(path).write_text(json.dumps(clustering_record(C, objective_vp, objective_cc, **extra), indent=2) + "\n")


def read_clustering(path) -> tuple[Clustering, dict]:
    try:
        rec = json.loads(Path(path).read_text())
        labels = rec["labels"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"{path}: not a clustering JSON file ({exc})") from None
    return canonicalize(labels), rec

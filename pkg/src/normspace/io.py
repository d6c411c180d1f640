"""Reading and writing the JSON/CSV formats."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Union

import numpy as np

from .errors import DimensionMismatch, NormSpaceError
from .metric import FiniteMetric, validate_metric
from .norms import NormSpec, spec_from_json


def metric_to_json(r: FiniteMetric) -> dict:
    return {"n": r.n, "d": [[i, j, float(r.matrix[i, j])] for i, j in r.pairs()]}


def metric_from_json(obj: dict) -> FiniteMetric:
    n = int(obj["n"])
    table = np.zeros((n, n))
    seen = set()
    for i, j, v in obj["d"]:
        i, j = int(i), int(j)
        if not 0 <= i < j < n:
            raise DimensionMismatch(f"entry ({i}, {j}) needs 0 <= i < j < {n}")
        table[i, j] = table[j, i] = float(v)
        seen.add((i, j))
    if len(seen) != n * (n - 1) // 2:
        raise DimensionMismatch(f"expected all {n * (n - 1) // 2} pairs, got {len(seen)}")
    return validate_metric(table)


def metric_from_csv(text: str) -> FiniteMetric:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    try:
        table = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise NormSpaceError(f"non-numeric CSV entry: {exc}") from None
    if any(len(r) != len(table) for r in table):
        raise DimensionMismatch("CSV metric must be a square matrix")
    return validate_metric(table)


def load_metric(path: Union[str, Path]) -> FiniteMetric:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return metric_from_csv(text)
    return metric_from_json(json.loads(text))


def load_spec(path: Union[str, Path]) -> NormSpec:
    return spec_from_json(json.loads(Path(path).read_text()))


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, infinities as strings)."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()

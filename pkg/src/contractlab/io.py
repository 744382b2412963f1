"""File ingestion: matrices as JSON {"rows": [[...], ...]} or CSV (one
row per line), vectors as JSON arrays or single-column CSV, and sequence
spec files pointing at matrix files or a seeded generator."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .matcore import DEFAULT_ZERO_TOL, Matrix
from .products import MatrixSequence


class InputError(ValueError):
    """Unparseable or invalid input file."""


def _finite_rows(rows, source: str) -> np.ndarray:
    if not rows:
        raise InputError(f"{source}: empty matrix")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError(f"{source}: ragged row {i} (expected {width} values)")
    try:
        a = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: non-numeric value ({exc})") from exc
    if not np.all(np.isfinite(a)):
        raise InputError(f"{source}: non-finite value")
    return a


def load_matrix(path, zero_tol: float = DEFAULT_ZERO_TOL) -> Matrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}") from exc
        if not isinstance(doc, dict) or "rows" not in doc:
            raise InputError(f"{path}: expected an object with a 'rows' field")
        rows = doc["rows"]
    else:
        rows = [row for row in csv.reader(text.splitlines()) if row]
    a = _finite_rows(rows, str(path))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"{path}: expected a square matrix, got shape {a.shape}")
    return Matrix(a, zero_tol=zero_tol)


def load_vector(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}") from exc
        if not isinstance(doc, list):
            raise InputError(f"{path}: expected a JSON array")
        values = doc
    else:
        values = []
        for row in csv.reader(text.splitlines()):
            if not row:
                continue
            if len(row) != 1:
                raise InputError(f"{path}: expected a single column")
            values.append(row[0])
    try:
        x = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: non-numeric value ({exc})") from exc
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise InputError(f"{path}: empty or non-finite vector")
    return x


def parse_weights(text: str) -> np.ndarray:
    """Weights given inline as a comma-separated list, or as a file path."""
    if "," in text:
        try:
            return np.asarray([float(v) for v in text.split(",")], dtype=float)
        except ValueError as exc:
            raise InputError(f"bad weight list {text!r}") from exc
    return load_vector(text)


def load_sequence(path, zero_tol: float = DEFAULT_ZERO_TOL) -> MatrixSequence:
    """Sequence spec: {"matrices": [paths], "repeat": k} or
    {"generator": {"kind": ..., "n": ..., "seed": ..., "min_entry": ...}}.
    Relative matrix paths are resolved against the spec file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "generator" in doc:
        try:
            return MatrixSequence(generator=doc["generator"])
        except (KeyError, ValueError) as exc:
            raise InputError(f"{path}: bad generator spec ({exc})") from exc
    if "matrices" not in doc:
        raise InputError(f"{path}: expected 'matrices' or 'generator'")
    repeat = int(doc.get("repeat", 1))
    if repeat < 1:
        raise InputError(f"{path}: repeat must be >= 1")
    items = [load_matrix(path.parent / p, zero_tol) for p in doc["matrices"]]
    if not items:
        raise InputError(f"{path}: empty matrix list")
    return MatrixSequence(items=items * repeat)

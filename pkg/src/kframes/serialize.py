"""JSON interchange for matrices, frames, and reports.

Matrix schema (row-major, decimal doubles; Python's shortest-repr float
formatting round-trips exactly):

    {"rows": r, "cols": c, "re": [r*c floats], "im": [r*c floats]}

Frame files carry the same payload plus {"dim": r, "count": c, "label": ...}.
Subset syntax on the CLI and in configs: comma-separated zero-based indices
("0,2,5"), "all", or "empty".
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path

import numpy as np

from .errors import BadSubset, DimensionMismatch
from .frames import IndexSubset, KFrame
from .linalg import as_cmat

__all__ = [
    "matrix_to_obj",
    "matrix_from_obj",
    "frame_to_obj",
    "frame_from_obj",
    "save_matrix",
    "load_matrix",
    "save_frame",
    "load_frame",
    "load_operator",
    "parse_subset",
    "to_jsonable",
]


def matrix_to_obj(a) -> dict:
    a = as_cmat(a)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in a.real.ravel(order="C")],
        "im": [float(x) for x in a.imag.ravel(order="C")],
    }


def matrix_from_obj(obj: dict, name: str = "matrix") -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{name}: malformed matrix object ({exc})") from exc
    if rows < 1 or cols < 1:
        raise DimensionMismatch(f"{name}: non-positive shape ({rows}, {cols})")
    if re.shape != (rows * cols,) or im.shape != (rows * cols,):
        raise DimensionMismatch(
            f"{name}: entry count does not match {rows}x{cols}"
        )
    return as_cmat(
        (re + 1j * im).reshape(rows, cols), name
    )


def frame_to_obj(frame: KFrame) -> dict:
    obj = matrix_to_obj(frame.vectors)
    obj["dim"] = frame.dim
    obj["count"] = frame.count
    obj["label"] = frame.label
    return obj


def frame_from_obj(obj: dict) -> KFrame:
    vectors = matrix_from_obj(obj, "frame")
    dim = int(obj.get("dim", vectors.shape[0]))
    count = int(obj.get("count", vectors.shape[1]))
    if (dim, count) != vectors.shape:
        raise DimensionMismatch(
            f"frame header ({dim}, {count}) disagrees with payload {vectors.shape}"
        )
    label = obj.get("label")
    return KFrame(vectors=vectors, label=None if label is None else str(label))


def _write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def save_matrix(path, a) -> None:
    _write_json(path, matrix_to_obj(a))


def load_matrix(path) -> np.ndarray:
    return matrix_from_obj(json.loads(Path(path).read_text()), str(path))


def save_frame(path, frame: KFrame) -> None:
    _write_json(path, frame_to_obj(frame))


def load_frame(path) -> KFrame:
    return frame_from_obj(json.loads(Path(path).read_text()))


def load_operator(path) -> np.ndarray:
    """Load a square matrix (operator K)."""
    k = load_matrix(path)
    if k.shape[0] != k.shape[1]:
        raise DimensionMismatch(f"{path}: operator must be square, got {k.shape}")
    return k


def parse_subset(text: str, count: int) -> IndexSubset:
    """Parse "0,2,5" / "all" / "empty" against a frame of `count` vectors."""
    cleaned = text.strip().lower()
    if cleaned == "all":
        return IndexSubset.full(count)
    if cleaned == "empty" or cleaned == "":
        return IndexSubset.empty()
    try:
        indices = tuple(int(part) for part in cleaned.split(",") if part.strip() != "")
    except ValueError as exc:
        raise BadSubset(f"cannot parse subset {text!r}") from exc
    return IndexSubset(indices).validate_for(count)


def to_jsonable(value):
    """Recursively convert reports/dataclasses/numpy values to JSON types."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: to_jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    if isinstance(value, IndexSubset):
        return list(value.indices)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (np.complexfloating,)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return repr(value)
    if isinstance(value, np.ndarray):
        return matrix_to_obj(value) if value.ndim == 2 else [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value

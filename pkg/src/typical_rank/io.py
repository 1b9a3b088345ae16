"""JSON file formats for tensors and decompositions.

Tensor file::

    {"dims": [d1, d2, d3], "order": "slice-major", "data": [...]}

``data`` lists entry ``(i, j, k)`` at offset ``k*d1*d2 + i*d2 + j``.

Decomposition file::

    {"dims": [d1, d2, d3], "terms": [{"u": [...], "v": [...], "w": [...]}, ...]}

Numbers are written with Python's shortest round-trip ``repr``, so a save
followed by a load reproduces every double bit for bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, List

import numpy as np

from .errors import ParseError, ValidationError
from .tensor import Decomposition, RankOneTerm, Tensor3

__all__ = [
    "ORDER",
    "tensor_to_dict",
    "tensor_from_dict",
    "decomposition_to_dict",
    "decomposition_from_dict",
    "save_tensor",
    "load_tensor",
    "save_decomposition",
    "load_decomposition",
    "read_json",
    "write_json",
]

ORDER = "slice-major"


def read_json(path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, allow_nan=False) + "\n", encoding="utf-8")


def _floats(values: np.ndarray) -> List[float]:
    return [float(x) for x in np.asarray(values, dtype=float).ravel()]


def _dims(obj, where: str):
    dims = obj.get("dims") if isinstance(obj, dict) else None
    if not isinstance(dims, list) or len(dims) != 3:
        raise ValidationError(f"{where}: field 'dims' must be a list of three integers")
    if not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims):
        raise ValidationError(f"{where}: field 'dims' must hold positive integers, got {dims}")
    return tuple(dims)


def _vector(values, length: int, where: str) -> np.ndarray:
    if not isinstance(values, list):
        raise ValidationError(f"{where}: expected a list of numbers")
    if len(values) != length:
        raise ValidationError(f"{where}: expected {length} numbers, got {len(values)}")
    for x in values:
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ValidationError(f"{where}: non-numeric or non-finite entry {x!r}")
    return np.array(values, dtype=float)


def tensor_to_dict(T: Tensor3) -> dict:
    return {"dims": list(T.shape), "order": ORDER, "data": _floats(T.to_flat())}


def tensor_from_dict(obj, where: str = "tensor") -> Tensor3:
    dims = _dims(obj, where)
    if obj.get("order") != ORDER:
        raise ValidationError(f"{where}: field 'order' must be {ORDER!r}, got {obj.get('order')!r}")
    data = _vector(obj.get("data"), dims[0] * dims[1] * dims[2], f"{where}: field 'data'")
    return Tensor3.from_flat(dims, data)


def decomposition_to_dict(D: Decomposition) -> dict:
    return {
        "dims": list(D.shape),
        "terms": [{"u": _floats(t.u), "v": _floats(t.v), "w": _floats(t.w)} for t in D.terms],
    }


def decomposition_from_dict(obj, where: str = "decomposition") -> Decomposition:
    dims = _dims(obj, where)
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise ValidationError(f"{where}: field 'terms' must be a list")
    out = []
    for r, term in enumerate(terms):
        if not isinstance(term, dict):
            raise ValidationError(f"{where}: terms[{r}] must be an object")
        vecs = [_vector(term.get(key), d, f"{where}: terms[{r}].{key}") for key, d in zip("uvw", dims)]
        out.append(RankOneTerm(*vecs))
    return Decomposition(dims, tuple(out))


def save_tensor(path, T: Tensor3) -> None:
    write_json(path, tensor_to_dict(T))


def load_tensor(path) -> Tensor3:
    return tensor_from_dict(read_json(path), str(path))


def save_decomposition(path, D: Decomposition) -> None:
    write_json(path, decomposition_to_dict(D))


def load_decomposition(path) -> Decomposition:
    return decomposition_from_dict(read_json(path), str(path))

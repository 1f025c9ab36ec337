"""Structured text: JSON with a fixed layout so files diff cleanly.

Objects keep insertion order, one key per line.  Arrays of scalars stay on a
single line, so a list of simplices prints one tuple per line.  Non-finite
floats are written as the strings "inf", "-inf" and "nan".
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from fractions import Fraction
from typing import Any

import numpy as np


def _scalar(v: Any, precision: int | None):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [_scalar(v.real, precision), _scalar(v.imag, precision)]
    if isinstance(v, (float, np.floating)):
        v = float(v) + 0.0  # folds -0.0 into 0.0
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if precision is not None:
            v = float(f"{v:.{precision}g}")
        return v
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _normalize(v: Any, precision: int | None):
    if isinstance(v, dict):
        return {str(k): _normalize(x, precision) for k, x in v.items()}
    if isinstance(v, np.ndarray):
        v = v.tolist()
    if isinstance(v, (list, tuple)):
        return [_normalize(x, precision) for x in v]
    return _scalar(v, precision)


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (list, dict)) for x in v)


def _emit(v, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_emit(x, indent + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list):
        if _is_flat(v):
            return "[" + ", ".join(json.dumps(x) for x in v) + "]"
        items = [inner + _emit(x, indent + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(v)


def dumps(obj: Any, precision: int | None = None) -> str:
    """Serialize to structured text; ``precision`` rounds floats to that many significant digits."""
    return _emit(_normalize(obj, precision), 0) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory and rename, so readers never
    see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".txt")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

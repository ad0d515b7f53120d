"""Writers for meshes (OBJ), tables (CSV) and reports (JSON).

Floats are written with ``%.17g`` so repeated runs produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence, TextIO

import numpy as np


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


def grid_vertices(surface, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vertices at ``(u[i], v[j])`` in row-major order (index ``i * len(v) + j``)."""
    U, V = np.meshgrid(u, v, indexing="ij")
    X, Y, Z = surface(U, V)
    return np.stack([np.broadcast_to(X, U.shape), np.broadcast_to(Y, U.shape), np.broadcast_to(Z, U.shape)], axis=-1).reshape(-1, 3)


def grid_faces(nu: int, nv: int) -> np.ndarray:
    """Two triangles per grid cell, 1-based indices."""
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    p00 = (i * nv + j).ravel() + 1
    p01, p10, p11 = p00 + 1, p00 + nv, p00 + nv + 1
    first = np.stack([p00, p10, p11], axis=1)
    second = np.stack([p00, p11, p01], axis=1)
    return np.stack([first, second], axis=1).reshape(-1, 3)


def write_obj(stream: TextIO, vertices: np.ndarray, faces: np.ndarray, comment: str = "") -> None:
    if comment:
        stream.write(f"# {comment}\n")
    for x, y, z in vertices:
        stream.write(f"v {fmt(x)} {fmt(y)} {fmt(z)}\n")
    for a, b, c in faces:
        stream.write(f"f {a} {b} {c}\n")


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if not isinstance(x, str) else x for x in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def to_text(writer, *args) -> str:
    buf = io.StringIO()
    writer(buf, *args)
    return buf.getvalue()

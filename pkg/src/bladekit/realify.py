"""Realification C^n -> R^2n with interleaved coordinates (x1, y1, ..., xn, yn).

The interleaved layout is fixed: determinant signs of realified matrices
depend on it.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionError, TagMismatchError
from .linalg import Matrix, Vector, _check_list, inner
from .numeric import COMPLEX, EXACT, FLOAT, REAL, Scalar

LAYOUT = "interleaved"


def _require_complex(v: Vector):
    if v.field != COMPLEX:
        raise TagMismatchError("expected a complex vector")


def realify_vector(v: Vector) -> Vector:
    """(x1+iy1, ..., xn+iyn) -> (x1, y1, ..., xn, yn)."""
    _require_complex(v)
    n = v.dim
    if v.backend == FLOAT:
        out = np.empty(2 * n, dtype=np.float64)
        out[0::2] = v.data.real
        out[1::2] = v.data.imag
    else:
        out = np.empty(2 * n, dtype=object)
        for k, z in enumerate(v.data):
            out[2 * k] = z.real
            out[2 * k + 1] = z.imag
    return Vector(out, REAL, v.backend)


def derealify_vector(x: Vector) -> Vector:
    """Inverse of :func:`realify_vector`."""
    if x.field != REAL:
        raise TagMismatchError("expected a real vector")
    if x.dim % 2:
        raise DimensionError(f"odd dimension {x.dim} is not a realified complex space")
    if x.backend == FLOAT:
        return Vector(x.data[0::2] + 1j * x.data[1::2], COMPLEX, FLOAT)
    out = np.empty(x.dim // 2, dtype=object)
    for k in range(x.dim // 2):
        out[k] = Scalar(x.data[2 * k].re, x.data[2 * k + 1].re, COMPLEX, EXACT)
    return Vector(out, COMPLEX, EXACT)


def complex_structure(v: Vector) -> Vector:
    """i*v.  Realified, (x1, y1, ...) maps to (-y1, x1, ...)."""
    _require_complex(v)
    return v * Scalar(0, 1, COMPLEX, v.backend)


def complex_structure_real(x: Vector) -> Vector:
    """The complex structure acting directly on a realified vector."""
    if x.field != REAL or x.dim % 2:
        raise DimensionError("expected a real vector of even dimension")
    out = np.empty_like(x.data)
    out[0::2] = -x.data[1::2]
    out[1::2] = x.data[0::2]
    return Vector(out, REAL, x.backend)


def real_inner(u: Vector, v: Vector) -> Scalar:
    """<u, v>_R = Re <u, v>, also the dot product of the realifications."""
    return inner(u, v).real


def build_m_real(vs: Sequence[Vector]) -> Matrix:
    """M_R(v_1, ..., v_p): the 2n x p real matrix of realified columns."""
    vs = _check_list(vs)
    _require_complex(vs[0])
    return Matrix.from_columns([realify_vector(v) for v in vs])


def with_i(vs: Sequence[Vector]) -> list[Vector]:
    """(v_1, i v_1, ..., v_p, i v_p)."""
    out = []
    for v in vs:
        out.append(v)
        out.append(complex_structure(v))
    return out

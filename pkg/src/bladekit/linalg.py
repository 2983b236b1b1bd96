"""Dense vectors and matrices over R or C for both scalar backends.

Storage is a numpy array: ``float64``/``complex128`` on the float backend and
an ``object`` array of :class:`~bladekit.numeric.Scalar` on the exact one.
Most routines are written once against numpy operations and work for both,
since object arrays dispatch ``+``, ``*`` and ``conjugate`` to the elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import DimensionError, TagMismatchError, UnsupportedBackendError
from .numeric import (
    COMPLEX,
    EXACT,
    FLOAT,
    REAL,
    Backend,
    Field,
    Scalar,
    Tolerance,
)

InnerKind = Literal["hermitian", "real"]
INNER_KINDS = ("hermitian", "real")


def _is_complex_entry(x) -> bool:
    if isinstance(x, Scalar):
        return x.field == COMPLEX
    if isinstance(x, (list, tuple)):
        return True
    return isinstance(x, (complex, np.complexfloating))


def _raw(x, field: Field, backend: Backend):
    """Array element for one entry: a native number or an exact Scalar."""
    s = Scalar.of(x, field, backend)
    if backend == EXACT:
        return s
    return complex(s.re, s.im) if field == COMPLEX else s.re


def _dtype(field: Field, backend: Backend):
    if backend == EXACT:
        return object
    return np.complex128 if field == COMPLEX else np.float64


def _wrap(x, field: Field, backend: Backend) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar.of(x, field, backend)


def _check_tags(a, b, what="operands"):
    if a.field != b.field or a.backend != b.backend:
        raise TagMismatchError(
            f"{what} tagged {a.field}/{a.backend} and {b.field}/{b.backend}"
        )


class Vector:
    """A column vector with explicit field and backend tags."""

    __slots__ = ("data", "field", "backend")

    def __init__(self, data: np.ndarray, field: Field, backend: Backend):
        if data.ndim != 1 or data.shape[0] == 0:
            raise DimensionError("a vector needs a positive dimension")
        self.data = data
        self.field = field
        self.backend = backend

    @classmethod
    def of(cls, entries: Iterable, field: Field | None = None, backend: Backend = FLOAT) -> "Vector":
        entries = list(entries.data if isinstance(entries, Vector) else entries)
        if field is None:
            field = COMPLEX if any(_is_complex_entry(x) for x in entries) else REAL
        data = np.array([_raw(x, field, backend) for x in entries], dtype=_dtype(field, backend))
        return cls(data, field, backend)

    @classmethod
    def basis(cls, n: int, k: int, field: Field = REAL, backend: Backend = FLOAT) -> "Vector":
        """Canonical basis vector e_k (0-based k) of dimension n."""
        return cls.of([1 if i == k else 0 for i in range(n)], field, backend)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def entries(self) -> tuple:
        return tuple(_wrap(x, self.field, self.backend) for x in self.data)

    def __len__(self):
        return self.dim

    def __getitem__(self, i) -> Scalar:
        return _wrap(self.data[i], self.field, self.backend)

    def __iter__(self):
        return iter(self.entries)

    def _like(self, data) -> "Vector":
        return Vector(data, self.field, self.backend)

    def _scalar_raw(self, s):
        if isinstance(s, Scalar):
            if s.backend != self.backend:
                raise TagMismatchError("scalar and vector use different backends")
            if s.field == COMPLEX and self.field == REAL:
                raise TagMismatchError("complex scalar times real vector")
            return _raw(s, self.field, self.backend)
        if isinstance(s, (complex, np.complexfloating)) and self.field == REAL:
            raise TagMismatchError("complex scalar times real vector")
        if self.backend == EXACT and isinstance(s, float):
            raise TagMismatchError("float scalar times exact vector")
        return _raw(s, self.field, self.backend)

    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        _check_tags(self, other)
        if other.dim != self.dim:
            raise DimensionError(f"dimensions {self.dim} and {other.dim} differ")
        return self._like(self.data + other.data)

    def __sub__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        _check_tags(self, other)
        if other.dim != self.dim:
            raise DimensionError(f"dimensions {self.dim} and {other.dim} differ")
        return self._like(self.data - other.data)

    def __neg__(self) -> "Vector":
        return self._like(-self.data)

    def __mul__(self, s) -> "Vector":
        if isinstance(s, (Vector, Matrix)):
            return NotImplemented
        return self._like(self.data * self._scalar_raw(s))

    __rmul__ = __mul__

    def conj(self) -> "Vector":
        return self._like(np.conjugate(self.data))

    def norm2(self) -> Scalar:
        return inner(self, self).real

    def norm(self) -> Scalar:
        return self.norm2().sqrt()

    def to_backend(self, backend: Backend) -> "Vector":
        if backend == self.backend:
            return self
        return Vector.of(self.entries, self.field, backend)

    def as_complex(self) -> "Vector":
        if self.field == COMPLEX:
            return self
        return Vector.of(self.entries, COMPLEX, self.backend)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def __repr__(self):
        return f"Vector([{', '.join(str(e) for e in self.entries)}], {self.field}, {self.backend})"

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def vector(entries, field: Field | None = None, backend: Backend = FLOAT) -> Vector:
    return Vector.of(entries, field, backend)


class Matrix:
    """A dense rows x cols matrix with explicit field and backend tags."""

    __slots__ = ("data", "field", "backend")

    def __init__(self, data: np.ndarray, field: Field, backend: Backend):
        if data.ndim != 2 or 0 in data.shape:
            raise DimensionError("a matrix needs positive row and column counts")
        self.data = data
        self.field = field
        self.backend = backend

    @classmethod
    def of(cls, rows, field: Field | None = None, backend: Backend = FLOAT) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        if field is None:
            field = COMPLEX if any(_is_complex_entry(x) for r in rows for x in r) else REAL
        data = np.array(
            [[_raw(x, field, backend) for x in r] for r in rows], dtype=_dtype(field, backend)
        )
        return cls(data, field, backend)

    @classmethod
    def from_columns(cls, vs: Sequence[Vector]) -> "Matrix":
        """M(v_1, ..., v_p): the n x p matrix with the given columns."""
        vs = _check_list(vs)
        return cls(np.stack([v.data for v in vs], axis=1), vs[0].field, vs[0].backend)

    @classmethod
    def identity(cls, n: int, field: Field = REAL, backend: Backend = FLOAT) -> "Matrix":
        return cls.of([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, backend)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, ij) -> Scalar:
        return _wrap(self.data[ij], self.field, self.backend)

    @property
    def entries(self) -> tuple:
        return tuple(
            tuple(_wrap(x, self.field, self.backend) for x in row) for row in self.data
        )

    def columns(self) -> list[Vector]:
        return [Vector(self.data[:, j].copy(), self.field, self.backend) for j in range(self.cols)]

    def _like(self, data) -> "Matrix":
        return Matrix(data, self.field, self.backend)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _check_tags(self, other)
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return self._like(self.data @ other.data)
        if isinstance(other, Vector):
            _check_tags(self, other)
            if self.cols != other.dim:
                raise DimensionError(f"cannot apply {self.shape} matrix to dim {other.dim}")
            return Vector(self.data @ other.data, self.field, self.backend)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_tags(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")
        return self._like(self.data + other.data)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_tags(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")
        return self._like(self.data - other.data)

    def __neg__(self):
        return self._like(-self.data)

    @property
    def T(self) -> "Matrix":
        return self._like(self.data.T.copy())

    def conj_transpose(self) -> "Matrix":
        return conj_transpose(self)

    def det(self) -> Scalar:
        return det(self)

    def to_backend(self, backend: Backend) -> "Matrix":
        if backend == self.backend:
            return self
        return Matrix.of(self.entries, self.field, backend)

    def as_complex(self) -> "Matrix":
        if self.field == COMPLEX:
            return self
        return Matrix.of(self.entries, COMPLEX, self.backend)

    def real_part(self) -> "Matrix":
        if self.backend == FLOAT:
            return Matrix(np.ascontiguousarray(self.data.real, dtype=np.float64), REAL, FLOAT)
        return Matrix(_map_obj(lambda s: s.real, self.data), REAL, EXACT)

    def imag_part(self) -> "Matrix":
        if self.backend == FLOAT:
            return Matrix(np.ascontiguousarray(self.data.imag, dtype=np.float64), REAL, FLOAT)
        return Matrix(_map_obj(lambda s: s.imag, self.data), REAL, EXACT)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Matrix([{rows}], {self.field}, {self.backend})"

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "Matrix":
        rows = [[Scalar.from_json(x) for x in row] for row in obj]
        backend = rows[0][0].backend
        return cls.of(rows, field, backend)


def matrix(rows, field: Field | None = None, backend: Backend = FLOAT) -> Matrix:
    return Matrix.of(rows, field, backend)


def _map_obj(fn, arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = fn(x)
    return out


def _check_list(vs: Sequence[Vector]) -> list[Vector]:
    vs = list(vs)
    if not vs:
        raise DimensionError("need at least one vector")
    first = vs[0]
    for v in vs[1:]:
        _check_tags(first, v, "vectors")
        if v.dim != first.dim:
            raise DimensionError(f"vectors of dimensions {first.dim} and {v.dim}")
    return vs


# ----------------------------------------------------------------------
# core operations


def inner(u: Vector, v: Vector) -> Scalar:
    """<u, v> = sum conj(u_i) v_i (conjugate-linear in the first slot)."""
    _check_tags(u, v)
    if u.dim != v.dim:
        raise DimensionError(f"dimensions {u.dim} and {v.dim} differ")
    if u.backend == FLOAT:
        return Scalar.of(np.vdot(u.data, v.data), u.field, FLOAT)
    return (np.conjugate(u.data) * v.data).sum()


def conj_transpose(m: Matrix) -> Matrix:
    return Matrix(np.conjugate(m.data).T.copy(), m.field, m.backend)


def det(m: Matrix) -> Scalar:
    """Determinant by pivoted elimination.

    Float backend: LAPACK LU with partial pivoting.  Exact backend:
    fraction-free (Bareiss) elimination, which never rounds.
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.backend == FLOAT:
        return Scalar.of(np.linalg.det(m.data), m.field, FLOAT)
    if m.field == REAL:
        rows = [[x.re for x in row] for row in m.data]
        return Scalar(_bareiss(rows, Fraction(1)), 0, REAL, EXACT)
    rows = [list(row) for row in m.data]
    return _bareiss(rows, Scalar.one(COMPLEX, EXACT))


def _bareiss(a: list[list], one):
    n = len(a)
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return one * 0
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - aik * rk[j]) / prev
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def block_embed(a: Matrix, b: Matrix) -> Matrix:
    """N = [[A, -B], [B, A]] for real p x p blocks A, B.

    ``|det(A + iB)|^2 == det N`` for every such pair.
    """
    if a.field != REAL or b.field != REAL:
        raise TagMismatchError("block_embed needs real blocks")
    _check_tags(a, b)
    if a.rows != a.cols or a.shape != b.shape:
        raise DimensionError(f"blocks must be equal square matrices, got {a.shape} and {b.shape}")
    return Matrix(np.block([[a.data, -b.data], [b.data, a.data]]), REAL, a.backend)


def complex_from_blocks(a: Matrix, b: Matrix) -> Matrix:
    """A + iB as a complex matrix."""
    _check_tags(a, b)
    if a.shape != b.shape:
        raise DimensionError(f"shapes {a.shape} and {b.shape} differ")
    if a.backend == FLOAT:
        return Matrix(a.data + 1j * b.data, COMPLEX, FLOAT)
    data = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a.data):
        data[idx] = Scalar(x.re, b.data[idx].re, COMPLEX, EXACT)
    return Matrix(data, COMPLEX, EXACT)


def singular_values(m: Matrix) -> tuple[Scalar, ...]:
    """Singular values in descending order (float backend only)."""
    if m.backend != FLOAT:
        raise UnsupportedBackendError("singular values need the float backend")
    s = np.linalg.svd(m.data, compute_uv=False)
    return tuple(Scalar(max(float(x), 0.0), 0, REAL, FLOAT) for x in s)


# ----------------------------------------------------------------------
# Gram-Schmidt


@dataclass(frozen=True)
class GramSchmidtResult:
    """Residuals u_k, squared heights ||u_k||^2 and dependence flags.

    ``residuals[k]`` is v_k minus its projection onto the span of
    v_1..v_{k-1} under the chosen inner product.  Heights and the
    orthonormal basis need square roots and are float-backend only.
    """

    residuals: tuple[Vector, ...]
    heights_squared: tuple[Scalar, ...]
    dependent: tuple[bool, ...]
    inner_kind: InnerKind
    backend: Backend

    @property
    def heights(self) -> tuple[Scalar, ...]:
        if self.backend != FLOAT:
            raise UnsupportedBackendError("heights need square roots; use heights_squared")
        return tuple(h.sqrt() for h in self.heights_squared)

    @property
    def orthonormal(self) -> tuple[Vector, ...]:
        """Normalized residuals of the independent inputs."""
        if self.backend != FLOAT:
            raise UnsupportedBackendError("normalization needs square roots")
        out = []
        for u, h2, dep in zip(self.residuals, self.heights_squared, self.dependent):
            if not dep:
                out.append(Vector(u.data / math.sqrt(h2.re), u.field, u.backend))
        return tuple(out)

    @property
    def rank(self) -> int:
        return sum(not d for d in self.dependent)


def _pair_inner(u: np.ndarray, w: np.ndarray, kind: InnerKind, field: Field, backend: Backend):
    """Raw inner product usable as a projection coefficient on w's field."""
    if backend == FLOAT:
        ip = np.vdot(u, w)
        return ip.real if kind == "real" or field == REAL else ip
    ip = (np.conjugate(u) * w).sum()
    if kind == "real" and field == COMPLEX:
        return Scalar(ip.re, 0, COMPLEX, EXACT)
    return ip


def gram_schmidt(
    vs: Sequence[Vector],
    inner_kind: InnerKind = "hermitian",
    tol: Tolerance | None = None,
) -> GramSchmidtResult:
    """Orthogonalize ``vs`` in order, recording each height.

    ``inner_kind="real"`` uses Re<.,.>, i.e. projections with real
    coefficients onto the real span; ``"hermitian"`` projects onto the
    complex span (identical to ``"real"`` for real vectors).  A residual
    below ``abs_eps * (1 + max input norm)`` (float) or exactly zero (exact)
    counts as dependent: its height is 0 and it is not used for later
    projections.
    """
    if inner_kind not in INNER_KINDS:
        raise ValueError(f"unknown inner kind {inner_kind!r}")
    vs = _check_list(vs)
    field, backend = vs[0].field, vs[0].backend
    tol = tol or Tolerance.default(backend)

    if backend == FLOAT:
        scale = max(float(np.linalg.norm(v.data)) for v in vs)
        threshold = tol.abs_eps * (1.0 + scale)

    accepted: list[tuple[np.ndarray, object]] = []
    residuals, heights2, flags = [], [], []
    for v in vs:
        w = v.data.copy()
        passes = 2 if backend == FLOAT else 1
        for _ in range(passes):
            for u, n2 in accepted:
                w = w - (_pair_inner(u, w, inner_kind, field, backend) / n2) * u
        if backend == FLOAT:
            h2 = float(np.vdot(w, w).real)
            dep = math.sqrt(h2) < threshold
            if dep:
                h2 = 0.0
                w = np.zeros_like(w)
            else:
                accepted.append((w, h2))
            heights2.append(Scalar(h2, 0, REAL, FLOAT))
        else:
            h2 = (np.conjugate(w) * w).sum().real
            dep = h2.is_zero()
            if not dep:
                accepted.append((w, h2 if field == REAL else h2.as_complex()))
            heights2.append(h2)
        residuals.append(Vector(w, field, backend))
        flags.append(dep)
    return GramSchmidtResult(tuple(residuals), tuple(heights2), tuple(flags), inner_kind, backend)

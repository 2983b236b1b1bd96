"""Grade-p multivectors in the exterior power of R^m or C^n.

Coefficients are keyed by 1-based strictly increasing multi-indices
(i_1 < ... < i_p) and stored sparsely; exact zeros are dropped so that the
zero multivector has no entries.  The product is C-linear for complex
multivectors and R-linear for real ones; to work in the underlying real
space realify the factors first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateBasisError,
    DimensionError,
    NotSameSubspaceError,
    TagMismatchError,
    UnsupportedBackendError,
)
from .linalg import Matrix, Vector, _bareiss, _check_list, _check_tags, det, gram_schmidt
from .numeric import COMPLEX, EXACT, FLOAT, REAL, Backend, Field, Scalar, Tolerance

MultiIndex = tuple[int, ...]


def multi_indices(dim: int, grade: int) -> Iterator[MultiIndex]:
    """All I = (i_1 < ... < i_p) in 1..dim, in lexicographic order."""
    return itertools.combinations(range(1, dim + 1), grade)


def parse_multi_index(text: str) -> MultiIndex:
    text = text.strip()
    if not text:
        return ()
    index = tuple(int(t) for t in text.split(","))
    if any(b <= a for a, b in zip(index, index[1:])):
        raise ValueError(f"multi-index {text!r} is not strictly increasing")
    return index


def format_multi_index(index: MultiIndex) -> str:
    return ",".join(str(i) for i in index)


def _check_index(index: MultiIndex, dim: int, grade: int | None = None):
    if any(b <= a for a, b in zip(index, index[1:])):
        raise ValueError(f"multi-index {index} is not strictly increasing")
    if index and (index[0] < 1 or index[-1] > dim):
        raise ValueError(f"multi-index {index} out of range 1..{dim}")
    if grade is not None and len(index) != grade:
        raise DimensionError(f"multi-index {index} does not have grade {grade}")


class Multivector:
    """Immutable homogeneous multivector sum_I c_I e_I."""

    __slots__ = ("dim", "grade", "coeffs", "field", "backend")

    def __init__(
        self,
        dim: int,
        grade: int,
        coeffs: Mapping[MultiIndex, Scalar] | None = None,
        field: Field = REAL,
        backend: Backend = FLOAT,
    ):
        if dim < 1 or grade < 0:
            raise DimensionError(f"invalid dim {dim} / grade {grade}")
        clean = {}
        for index, c in (coeffs or {}).items():
            index = tuple(index)
            _check_index(index, dim, grade)
            c = Scalar.of(c, field, backend) if not isinstance(c, Scalar) else c
            if c.backend != backend:
                raise TagMismatchError("coefficient backend differs from multivector backend")
            if c.field != field:
                c = c.as_complex() if field == COMPLEX else c.as_real()
            if not c.is_zero():
                clean[index] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def zero(cls, dim: int, grade: int, field: Field = REAL, backend: Backend = FLOAT) -> "Multivector":
        return cls(dim, grade, {}, field, backend)

    @classmethod
    def basis(cls, dim: int, index: Iterable[int], field: Field = REAL, backend: Backend = FLOAT) -> "Multivector":
        index = tuple(index)
        return cls(dim, len(index), {index: Scalar.one(field, backend)}, field, backend)

    @classmethod
    def from_vector(cls, v: Vector) -> "Multivector":
        coeffs = {(k + 1,): c for k, c in enumerate(v.entries)}
        return cls(v.dim, 1, coeffs, v.field, v.backend)

    def coeff(self, index: Iterable[int]) -> Scalar:
        return self.coeffs.get(tuple(index), Scalar.zero(self.field, self.backend))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError("expected a Multivector")
        _check_tags(self, other)
        if self.dim != other.dim:
            raise DimensionError(f"ambient dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_compatible(other)
        if self.grade != other.grade:
            raise DimensionError("mixed-grade sums are not supported")
        out = dict(self.coeffs)
        for index, c in other.coeffs.items():
            out[index] = out[index] + c if index in out else c
        return Multivector(self.dim, self.grade, out, self.field, self.backend)

    def __neg__(self) -> "Multivector":
        return Multivector(self.dim, self.grade, {i: -c for i, c in self.coeffs.items()}, self.field, self.backend)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, s) -> "Multivector":
        if isinstance(s, Scalar):
            if s.backend != self.backend:
                raise TagMismatchError("scalar and multivector use different backends")
            if s.field == COMPLEX and self.field == REAL:
                raise TagMismatchError("complex scalar times real multivector")
            s = s.as_complex() if self.field == COMPLEX else s
        else:
            s = Scalar.of(s, self.field, self.backend)
        return Multivector(self.dim, self.grade, {i: s * c for i, c in self.coeffs.items()}, self.field, self.backend)

    def __mul__(self, s):
        if isinstance(s, Multivector):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def norm_squared(self) -> Scalar:
        out = Scalar.zero(REAL, self.backend)
        for c in self.coeffs.values():
            out = out + c.abs2()
        return out

    def norm(self) -> Scalar:
        if self.backend != FLOAT:
            raise UnsupportedBackendError("norm needs a square root; use norm_squared")
        return Scalar(math.sqrt(sum(abs(complex(c)) ** 2 for c in self.coeffs.values())), 0, REAL, FLOAT)

    def to_backend(self, backend: Backend) -> "Multivector":
        return Multivector(
            self.dim,
            self.grade,
            {i: c.to_backend(backend) for i, c in self.coeffs.items()},
            self.field,
            backend,
        )

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.dim, self.grade, self.coeffs) == (other.dim, other.grade, other.coeffs)

    __hash__ = None

    def __repr__(self):
        terms = " + ".join(f"({c})e{format_multi_index(i)}" for i, c in self.coeffs.items()) or "0"
        return f"Multivector[{self.field}, dim={self.dim}, grade={self.grade}]({terms})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "grade": self.grade,
            "field": self.field,
            "coeffs": {format_multi_index(i): c.to_json() for i, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Multivector":
        raw = {parse_multi_index(k): Scalar.from_json(v) for k, v in obj["coeffs"].items()}
        backend = next(iter(raw.values())).backend if raw else FLOAT
        field = obj.get("field")
        if field is None:
            field = COMPLEX if any(c.im != 0 for c in raw.values()) else REAL
        return cls(int(obj["dim"]), int(obj["grade"]), raw, field, backend)


def _merge_sign(a: MultiIndex, b: MultiIndex) -> int:
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product; graded-anticommutative and associative."""
    a._check_compatible(b)
    grade = a.grade + b.grade
    out: dict[MultiIndex, Scalar] = {}
    if grade <= a.dim:
        for ia, ca in a.coeffs.items():
            sa = set(ia)
            for ib, cb in b.coeffs.items():
                if sa.intersection(ib):
                    continue
                index = tuple(sorted(ia + ib))
                term = ca * cb if _merge_sign(ia, ib) > 0 else -(ca * cb)
                out[index] = out[index] + term if index in out else term
    return Multivector(a.dim, grade, out, a.field, a.backend)


def wedge_vectors(vs: Sequence[Vector]) -> Multivector:
    """v_1 ^ ... ^ v_p by repeated products of grade-1 factors."""
    vs = _check_list(vs)
    return reduce(wedge, (Multivector.from_vector(v) for v in vs))


def blade_from_vectors(vs: Sequence[Vector]) -> Multivector:
    """v_1 ^ ... ^ v_p with coefficient at I the p x p minor of M(v) on rows I.

    More vectors than dimensions are always dependent; like :func:`wedge`
    this gives the zero multivector of grade p.
    """
    vs = _check_list(vs)
    n, p = vs[0].dim, len(vs)
    field, backend = vs[0].field, vs[0].backend
    if p > n:
        return Multivector.zero(n, p, field, backend)
    m = np.stack([v.data for v in vs], axis=1)
    indices = list(multi_indices(n, p))
    coeffs: dict[MultiIndex, Scalar] = {}
    if backend == FLOAT:
        rows = np.array(indices) - 1
        minors = np.linalg.det(m[rows, :])
        for index, c in zip(indices, minors):
            if c != 0:
                coeffs[index] = Scalar.of(c, field, FLOAT)
    else:
        one = Fraction(1) if field == REAL else Scalar.one(COMPLEX, EXACT)
        for index in indices:
            rows = [[(x.re if field == REAL else x) for x in m[i - 1]] for i in index]
            c = _bareiss(rows, one)
            if c != 0:
                coeffs[index] = Scalar(c, 0, REAL, EXACT) if field == REAL else c
    return Multivector(n, p, coeffs, field, backend)


def coordinate_component(b: Multivector, index: Iterable[int]) -> Multivector:
    """B_I: the orthogonal projection of B onto the coordinate line of e_I."""
    index = tuple(index)
    _check_index(index, b.dim, b.grade)
    c = b.coeffs.get(index)
    return Multivector(b.dim, b.grade, {index: c} if c is not None else {}, b.field, b.backend)


# ----------------------------------------------------------------------
# orientation


def _independent_basis(vs: Sequence[Vector], tol: Tolerance) -> list[Vector]:
    vs = _check_list(vs)
    gs = gram_schmidt(vs, "hermitian", tol)
    if any(gs.dependent):
        raise DegenerateBasisError("the vectors are linearly dependent")
    return vs


def _spans_within(inner_vs: list[Vector], outer_vs: list[Vector], tol: Tolerance) -> bool:
    gs = gram_schmidt(outer_vs + inner_vs, "hermitian", tol)
    return all(gs.dependent[len(outer_vs):])


def orientation_phase(
    basis_a: Sequence[Vector],
    basis_b: Sequence[Vector],
    tol: Tolerance | None = None,
) -> float:
    """Phase in (-pi, pi] of lambda with blade(basis_b) = lambda * blade(basis_a).

    Both lists must be bases of the same subspace.  In the real case the
    result is 0 (same orientation) or pi (opposite).
    """
    a, b = list(basis_a), list(basis_b)
    if not a or not b:
        raise DegenerateBasisError("empty basis")
    _check_tags(a[0], b[0], "bases")
    tol = tol or Tolerance.default(a[0].backend)
    a = _independent_basis(a, tol)
    b = _independent_basis(b, tol)
    if a[0].dim != b[0].dim:
        raise DimensionError("bases live in different ambient spaces")
    if len(a) != len(b) or not (_spans_within(b, a, tol) and _spans_within(a, b, tol)):
        raise NotSameSubspaceError("the two bases span different subspaces")
    blade_a = blade_from_vectors(a)
    blade_b = blade_from_vectors(b)
    index = max(blade_a.coeffs, key=lambda i: abs(complex(blade_a.coeffs[i])))
    lam = blade_b.coeff(index) / blade_a.coeffs[index]
    if lam.field == REAL:
        return 0.0 if lam > 0 else math.pi
    return lam.phase()


@dataclass(frozen=True)
class DetInterpretation:
    """Volume and orientation content of a square determinant.

    Real matrices: ``magnitude = |det|`` scales n-volumes and the phase is
    0 or pi.  Complex matrices: ``magnitude = |det|^2`` scales 2n-volumes of
    the underlying real space and the phase is arg(det).  ``phase`` is None
    when det = 0.
    """

    det: Scalar
    magnitude: Scalar
    phase: float | None
    volume_scale: Scalar
    volume_dim: int
    field: Field

    @property
    def modulus(self) -> float:
        return abs(complex(self.det))


def det_interpret(m: Matrix) -> DetInterpretation:
    d = det(m)
    n = m.rows
    if m.field == REAL:
        magnitude = abs(d)
        vol_dim = n
    else:
        magnitude = d.abs2()
        vol_dim = 2 * n
    if d.is_zero():
        phase = None
    elif m.field == REAL:
        phase = 0.0 if d > 0 else math.pi
    else:
        phase = d.phase()
    return DetInterpretation(d, magnitude, phase, magnitude, vol_dim, m.field)

"""Angles between subspaces and the reality index of real subspaces of C^n.

A :class:`Subspace` is either a complex subspace of C^n (Hermitian inner
product, C-linear blades) or a real subspace of R^m.  Real subspaces built
with :meth:`Subspace.real_span` live in the realified space R^2n and know
how to apply the complex structure, which is what the Kähler angle, the
reality index and the holomorphy classification need.

Everything here runs on the float backend; exact inputs are converted.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateBasisError, DimensionError, TagMismatchError
from .exterior import blade_from_vectors
from .gram_volume import gram, volume
from .linalg import Matrix, Vector, _check_list, det, gram_schmidt, singular_values
from .numeric import COMPLEX, FLOAT, REAL, Field, Tolerance
from .realify import complex_structure_real, realify_vector, with_i


def _unit_eps(tol: Tolerance) -> float:
    # threshold for quantities that live on the unit scale (sines, cosines)
    return tol.abs_eps + tol.rel_eps


def _clamp(x: float, lo: float = 0.0, hi: float = 1.0) -> float:
    return min(max(x, lo), hi)


class Subspace:
    """A subspace given by a spanning list, with a cached orthonormal basis."""

    def __init__(self, spanning: Sequence[Vector], realified: bool = False, tol: Tolerance | None = None):
        vs = [v.to_backend(FLOAT) for v in _check_list(spanning)]
        if realified and (vs[0].field != REAL or vs[0].dim % 2):
            raise DimensionError("a realified subspace needs real vectors of even dimension")
        self.tol = tol or Tolerance.default(FLOAT)
        self.spanning = tuple(vs)
        self.realified = realified
        kind = "hermitian" if vs[0].field == COMPLEX else "real"
        self.onb = gram_schmidt(vs, kind, self.tol).orthonormal
        if not self.onb:
            raise DegenerateBasisError("the spanning list only spans {0}")
        self._q = np.stack([u.data for u in self.onb], axis=1)

    @classmethod
    def real_span(cls, vectors: Sequence[Vector], tol: Tolerance | None = None) -> "Subspace":
        """span_R of complex vectors, as a real subspace of the realified space."""
        vs = _check_list(vectors)
        if vs[0].field != COMPLEX:
            raise TagMismatchError("real_span expects complex vectors")
        return cls([realify_vector(v) for v in vs], realified=True, tol=tol)

    @property
    def field(self) -> Field:
        return self.onb[0].field

    @property
    def inner_kind(self) -> str:
        return "hermitian" if self.field == COMPLEX else "real"

    @property
    def dim(self) -> int:
        return len(self.onb)

    @property
    def ambient_dim(self) -> int:
        return self.onb[0].dim

    @property
    def basis_matrix(self) -> np.ndarray:
        """Orthonormal basis as the columns of an ambient x dim array."""
        return self._q

    def realification(self) -> "Subspace":
        """V_R = span_R{v, iv : v in V} for a complex subspace V."""
        if self.field != COMPLEX:
            raise TagMismatchError("only complex subspaces can be realified")
        return Subspace.real_span(with_i(self.onb), self.tol)

    def i_image(self) -> "Subspace":
        """iV for a real subspace of a realified complex space."""
        if not self.realified:
            raise TagMismatchError("the complex structure needs a realified subspace")
        return Subspace([complex_structure_real(u) for u in self.onb], realified=True, tol=self.tol)

    def __repr__(self):
        kind = "realified real" if self.realified else self.field
        return f"Subspace({kind}, dim={self.dim}, ambient={self.ambient_dim})"


def _check_pair(v: Subspace, w: Subspace):
    if v.field != w.field:
        raise TagMismatchError("subspaces use different fields")
    if v.ambient_dim != w.ambient_dim:
        raise DimensionError(f"ambient dimensions {v.ambient_dim} and {w.ambient_dim} differ")


def _principal_cos_sin(v: Subspace, w: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Cosines (descending) and sines (ascending) of the principal angles."""
    qv, qw = v.basis_matrix, w.basis_matrix
    if qw.shape[1] > qv.shape[1]:
        qv, qw = qw, qv
    field = v.field
    c = qv.conj().T @ qw
    r = qw - qv @ c
    cos = np.array([_clamp(s.re) for s in singular_values(Matrix(c, field, FLOAT))])
    sin = np.array([_clamp(s.re) for s in singular_values(Matrix(r, field, FLOAT))])[::-1]
    return cos, sin


def principal_angles(v: Subspace, w: Subspace) -> tuple[float, ...]:
    """Ascending principal angles, min(dim V, dim W) of them.

    Angles up to pi/4 are taken from the sines (the residual of W after
    projecting onto V), larger ones from the cosines, so that both ends of
    [0, pi/2] are resolved to full precision.
    """
    _check_pair(v, w)
    cos, sin = _principal_cos_sin(v, w)
    out = []
    for c, s in zip(cos, sin):
        out.append(math.asin(s) if c * c >= 0.5 else math.acos(c))
    return tuple(sorted(out))


def disjointness_sine(v: Subspace, w: Subspace) -> float:
    """||A ^ B|| / (||A|| ||B||) for blades A, B of V and W."""
    _check_pair(v, w)
    if v.dim + w.dim > v.ambient_dim:
        return 0.0
    a = blade_from_vectors(v.onb).norm().re
    b = blade_from_vectors(w.onb).norm().re
    ab = blade_from_vectors(list(v.onb) + list(w.onb)).norm().re
    return _clamp(ab / (a * b))


def disjointness_angle(v: Subspace, w: Subspace) -> float:
    """asin of the blade-norm ratio: 0 iff V and W meet, pi/2 iff V is orthogonal to W."""
    return math.asin(disjointness_sine(v, w))


def _require_realified(v: Subspace):
    if not v.realified:
        raise TagMismatchError("expected a real subspace of a realified complex space")


def kahler_angle(v: Subspace) -> float:
    """arccos |<v1, i v2>_R| for an orthonormal basis (v1, v2) of a real plane."""
    _require_realified(v)
    if v.dim != 2:
        raise DimensionError(f"the Kähler angle needs a plane, got dimension {v.dim}")
    v1, v2 = v.onb
    c = abs(float(np.dot(v1.data, complex_structure_real(v2).data)))
    return math.acos(_clamp(c))


def reality_index(v: Subspace) -> float:
    """sqrt(sin of the disjointness angle between V and iV), in [0, 1]."""
    _require_realified(v)
    return math.sqrt(disjointness_sine(v, v.i_image()))


class Holomorphy(enum.Flag):
    GENERIC = 0
    HOLOMORPHIC = enum.auto()
    PURELY_REAL = enum.auto()
    TOTALLY_REAL = enum.auto()

    @property
    def label(self) -> str:
        for flag in (Holomorphy.HOLOMORPHIC, Holomorphy.TOTALLY_REAL, Holomorphy.PURELY_REAL):
            if flag in self:
                return flag.name.lower()
        return "generic"

    @property
    def names(self) -> list[str]:
        return [f.name.lower() for f in (Holomorphy.HOLOMORPHIC, Holomorphy.PURELY_REAL, Holomorphy.TOTALLY_REAL) if f in self]


def classify(v: Subspace, tol: Tolerance | None = None) -> Holomorphy:
    """Holomorphic (V = iV), purely real (V meets iV only in 0) and
    totally real (V orthogonal to iV) tests at unit-scale tolerance.

    Totally real subspaces are also flagged purely real.  ``GENERIC`` means
    V contains a complex subspace without being one.
    """
    _require_realified(v)
    eps = _unit_eps(tol or v.tol)
    q = v.basis_matrix
    jq = np.stack([complex_structure_real(u).data for u in v.onb], axis=1)
    cross = q.T @ jq
    residual = jq - q @ cross
    res_sv = np.linalg.svd(residual, compute_uv=False)
    flags = Holomorphy.GENERIC
    if float(np.max(np.linalg.norm(residual, axis=0))) <= eps:
        flags |= Holomorphy.HOLOMORPHIC
    elif float(res_sv.min()) > eps:
        flags |= Holomorphy.PURELY_REAL
        if float(np.max(np.abs(cross))) <= eps:
            flags |= Holomorphy.TOTALLY_REAL
    return flags


# ----------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class AngleReport:
    principal: tuple[float, ...]
    disjointness: float
    kahler: float | None = None
    reality_index: float | None = None

    def to_json(self) -> dict:
        def both(x):
            if x is None:
                return None
            return {"radians": x, "degrees": round(math.degrees(x), 4)}

        return {
            "principal": {
                "radians": list(self.principal),
                "degrees": [round(math.degrees(t), 4) for t in self.principal],
            },
            "disjointness": both(self.disjointness),
            "kahler": both(self.kahler),
            "reality_index": self.reality_index,
        }


def angle_report(v: Subspace, w: Subspace) -> AngleReport:
    return AngleReport(principal_angles(v, w), disjointness_angle(v, w))


def reality_report(v: Subspace) -> AngleReport:
    """Angles between V and iV, with the Kähler angle (planes) and reality index."""
    _require_realified(v)
    iv = v.i_image()
    sin_u = disjointness_sine(v, iv)
    return AngleReport(
        principal_angles(v, iv),
        math.asin(sin_u),
        kahler_angle(v) if v.dim == 2 else None,
        math.sqrt(sin_u),
    )


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    def holds(self, tol: Tolerance | None = None) -> bool:
        return (tol or Tolerance.default(FLOAT)).close(self.lhs, self.rhs)


@dataclass(frozen=True)
class RealityRelations:
    """Complex vs real quantities linked by the reality index rho of span_R(vs)."""

    rho: float
    relations: tuple[Relation, ...] = field(default_factory=tuple)

    def holds(self, tol: Tolerance | None = None) -> bool:
        return all(r.holds(tol) for r in self.relations)

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "relations": [
                {"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual}
                for r in self.relations
            ],
        }


def reality_relations_check(vs: Sequence[Vector], tol: Tolerance | None = None) -> RealityRelations:
    """Evaluate both sides of

    * ||v_1 ^C ... ^C v_p|| = ||v_1 ^R ... ^R v_p|| * rho
    * |G(v)| = |G_R(v)| * rho^2
    * |det M(v)| = V(v) * rho            (only when p = n)

    where rho is the reality index of span_R(vs).
    """
    vs = [v.to_backend(FLOAT) for v in _check_list(vs)]
    if vs[0].field != COMPLEX:
        raise TagMismatchError("reality relations need complex vectors")
    n, p = vs[0].dim, len(vs)
    if p > n:
        raise DimensionError(f"{p} vectors in C^{n}")
    try:
        rho = reality_index(Subspace.real_span(vs, tol))
    except DegenerateBasisError:
        rho = 0.0
    real_vs = [realify_vector(v) for v in vs]
    c_norm = blade_from_vectors(vs).norm().re
    r_norm = blade_from_vectors(real_vs).norm().re
    rels = [
        Relation("blade_norms", c_norm, r_norm * rho),
        Relation("gramians", gram(vs, "hermitian").gramian.re, gram(vs, "real").gramian.re * rho**2),
    ]
    if p == n:
        rels.append(
            Relation("determinant", abs(complex(det(Matrix.from_columns(vs)))), volume(vs, tol).volume.re * rho)
        )
    return RealityRelations(rho, tuple(rels))

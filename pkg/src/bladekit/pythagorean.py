"""Volume of a parallelotope split over its projections on coordinate subspaces.

For p real vectors the p-volume satisfies V^2 = sum_I V_I^2, where V_I is the
volume of the projection onto span{e_i : i in I}.  For p complex vectors the
2p-volume of P(v_1, i v_1, ...) satisfies V = sum_I V_I with no squares, the
projections being onto complex coordinate subspaces.  Both follow from
expanding the blade of the vectors in the basis e_I.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import DimensionError, UnsupportedBackendError
from .exterior import MultiIndex, blade_from_vectors, coordinate_component, format_multi_index, multi_indices
from .linalg import Vector, _check_list
from .numeric import COMPLEX, EXACT, FLOAT, REAL, Backend, Scalar, Tolerance

Mode = Literal["real_squared", "complex_linear"]


@dataclass(frozen=True)
class PythagoreanDecomposition:
    """``total`` and ``parts`` are volumes: p-volumes (real) or 2p-volumes
    of the complex span (complex).  Parts cover every multi-index, zeros
    included."""

    mode: Mode
    total: Scalar
    parts: dict[MultiIndex, Scalar]
    backend: Backend

    def identity_sides(self) -> tuple[Scalar, Scalar]:
        """(total^2, sum parts^2) in real mode, (total, sum parts) in complex mode."""
        acc = Scalar.zero(REAL, self.backend)
        if self.mode == "real_squared":
            for p in self.parts.values():
                acc = acc + p * p
            return self.total * self.total, acc
        for p in self.parts.values():
            acc = acc + p
        return self.total, acc

    def residual(self) -> float:
        lhs, rhs = self.identity_sides()
        return abs(float(lhs) - float(rhs))

    def holds(self, tol: Tolerance | None = None) -> bool:
        lhs, rhs = self.identity_sides()
        if self.backend == EXACT:
            return lhs == rhs
        return (tol or Tolerance.default(FLOAT)).close(float(lhs), float(rhs))

    def to_plot_json(self) -> dict:
        return {
            "mode": self.mode,
            "total": float(self.total),
            "parts": [{"I": format_multi_index(i), "value": float(v)} for i, v in self.parts.items()],
        }


def decompose(vs: Sequence[Vector]) -> PythagoreanDecomposition:
    """Split the volume spanned by ``vs`` over coordinate subspaces.

    Real vectors: total = ||B||, parts |B_I| (the real mode needs a square
    root for the total, so it is float-only).  Complex vectors: total =
    ||B||^2, parts |B_I|^2, exact on either backend.
    """
    vs = _check_list(vs)
    n, p = vs[0].dim, len(vs)
    if p > n:
        raise DimensionError(f"{p} vectors in dimension {n}")
    blade = blade_from_vectors(vs)
    backend = blade.backend
    parts: dict[MultiIndex, Scalar] = {}
    if blade.field == COMPLEX:
        for index in multi_indices(n, p):
            parts[index] = coordinate_component(blade, index).norm_squared()
        return PythagoreanDecomposition("complex_linear", blade.norm_squared(), parts, backend)
    if backend != FLOAT:
        raise UnsupportedBackendError("the real-mode total is a square root; use the float backend")
    for index in multi_indices(n, p):
        parts[index] = abs(blade.coeff(index))
    return PythagoreanDecomposition("real_squared", blade.norm(), parts, backend)


def project_onto_coordinates(v: Vector, index: MultiIndex) -> Vector:
    """Orthogonal projection onto span{e_i : i in index} (1-based)."""
    keep = set(index)
    entries = [c if (k + 1) in keep else c * 0 for k, c in enumerate(v.entries)]
    return Vector.of(entries, v.field, v.backend)

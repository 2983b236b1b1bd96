"""Gram matrices, Gramians and parallelotope volumes.

The volume is defined procedurally as the product of successive heights,
each height measured with real projections (Re<.,.>).  It is deliberately
*not* computed as the square root of a Gramian, so that the Gramian/volume
identities remain a genuine cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import UnsupportedBackendError
from .linalg import INNER_KINDS, InnerKind, Matrix, Vector, _check_list, det, gram_schmidt
from .numeric import COMPLEX, FLOAT, REAL, Backend, Field, Scalar, Tolerance
from .realify import realify_vector, with_i


@dataclass(frozen=True)
class GramResult:
    gram: Matrix
    gramian: Scalar
    field: Field
    inner_kind: InnerKind


def gram_matrix(vs: Sequence[Vector], inner_kind: InnerKind = "hermitian") -> Matrix:
    """(<v_i, v_j>)_{ij}, or (Re<v_i, v_j>)_{ij} for ``inner_kind="real"``."""
    if inner_kind not in INNER_KINDS:
        raise ValueError(f"unknown inner kind {inner_kind!r}")
    m = Matrix.from_columns(_check_list(vs))
    g = m.conj_transpose() @ m
    if inner_kind == "real" and g.field == COMPLEX:
        g = g.real_part()
    return g


def gram(vs: Sequence[Vector], inner_kind: InnerKind = "hermitian") -> GramResult:
    vs = _check_list(vs)
    g = gram_matrix(vs, inner_kind)
    d = det(g)
    if d.backend == FLOAT:
        # Hermitian PSD: drop round-off imaginary parts and negatives
        d = Scalar(max(d.re, 0.0), 0, REAL, FLOAT)
    else:
        d = d.as_real()
    return GramResult(g, d, vs[0].field, inner_kind)


def gramian(vs: Sequence[Vector], inner_kind: InnerKind = "hermitian") -> Scalar:
    return gram(vs, inner_kind).gramian


@dataclass(frozen=True)
class VolumeResult:
    """p-volume of P(v_1, ..., v_p) as a product of heights.

    The squared forms are exact on the exact backend; ``volume`` and
    ``heights`` need square roots and are float-only.
    """

    heights_squared: tuple[Scalar, ...]
    degenerate: bool
    backend: Backend

    @property
    def volume_squared(self) -> Scalar:
        out = Scalar.one(REAL, self.backend)
        for h2 in self.heights_squared:
            out = out * h2
        return out

    @property
    def heights(self) -> tuple[Scalar, ...]:
        if self.backend != FLOAT:
            raise UnsupportedBackendError("heights need square roots; use heights_squared")
        return tuple(h2.sqrt() for h2 in self.heights_squared)

    @property
    def volume(self) -> Scalar:
        if self.backend != FLOAT:
            raise UnsupportedBackendError("volume needs a square root; use volume_squared")
        return Scalar(math.prod(h.re for h in self.heights), 0, REAL, FLOAT)

    def __float__(self):
        return float(self.volume)


def _as_real_list(vs: Sequence[Vector]) -> list[Vector]:
    vs = _check_list(vs)
    if vs[0].field == COMPLEX:
        return [realify_vector(v) for v in vs]
    return vs


def volume(vs: Sequence[Vector], tol: Tolerance | None = None) -> VolumeResult:
    """p-volume of the parallelotope spanned by ``vs`` (complex inputs are
    realified first)."""
    gs = gram_schmidt(_as_real_list(vs), "real", tol)
    return VolumeResult(gs.heights_squared, any(gs.dependent), gs.backend)


def volume_complex_span(vs: Sequence[Vector], tol: Tolerance | None = None) -> VolumeResult:
    """2p-volume of P(v_1, i v_1, ..., v_p, i v_p)."""
    vs = _check_list(vs)
    if vs[0].field != COMPLEX:
        vs = [v.as_complex() for v in vs]
    return volume(with_i(vs), tol)

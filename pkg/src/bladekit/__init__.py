"""Gramians, volumes, blades, orientations and subspace angles over R and C."""

__version__ = "0.1.0"

from .errors import (
    BladeError,
    DegenerateBasisError,
    DimensionError,
    NotSameSubspaceError,
    TagMismatchError,
    UnsupportedBackendError,
)
from .numeric import Scalar, Tolerance, approx_eq
from .linalg import Matrix, Vector, block_embed, conj_transpose, det, gram_schmidt, inner, matrix, singular_values, vector
from .realify import build_m_real, complex_structure, real_inner, realify_vector
from .gram_volume import GramResult, VolumeResult, gram, gramian, volume, volume_complex_span
from .exterior import (
    Multivector,
    blade_from_vectors,
    coordinate_component,
    det_interpret,
    orientation_phase,
    wedge,
)
from .angles import (
    AngleReport,
    Holomorphy,
    Subspace,
    classify,
    disjointness_angle,
    kahler_angle,
    principal_angles,
    reality_index,
    reality_relations_check,
)
from .pythagorean import PythagoreanDecomposition, decompose

__all__ = [
    "BladeError",
    "DegenerateBasisError",
    "DimensionError",
    "NotSameSubspaceError",
    "TagMismatchError",
    "UnsupportedBackendError",
    "Scalar",
    "Tolerance",
    "approx_eq",
    "Matrix",
    "Vector",
    "block_embed",
    "conj_transpose",
    "det",
    "gram_schmidt",
    "inner",
    "matrix",
    "singular_values",
    "vector",
    "build_m_real",
    "complex_structure",
    "real_inner",
    "realify_vector",
    "GramResult",
    "VolumeResult",
    "gram",
    "gramian",
    "volume",
    "volume_complex_span",
    "Multivector",
    "blade_from_vectors",
    "coordinate_component",
    "det_interpret",
    "orientation_phase",
    "wedge",
    "AngleReport",
    "Holomorphy",
    "Subspace",
    "classify",
    "disjointness_angle",
    "kahler_angle",
    "principal_angles",
    "reality_index",
    "reality_relations_check",
    "PythagoreanDecomposition",
    "decompose",
]

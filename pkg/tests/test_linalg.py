import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bladekit.errors import DimensionError, TagMismatchError, UnsupportedBackendError
from bladekit.linalg import (
    Matrix,
    Vector,
    block_embed,
    complex_from_blocks,
    conj_transpose,
    det,
    gram_schmidt,
    inner,
    matrix,
    singular_values,
    vector,
)
from bladekit.numeric import Scalar, Tolerance, approx_eq
from bladekit.gram_volume import gramian

from conftest import rand_matrix, rand_vectors


def test_inner_conjugates_first_slot():
    u, v = vector([1 + 1j, 0]), vector([1, 2j])
    assert inner(u, v) == 1 - 1j
    assert inner(u, u) == 2
    assert inner(v, u) == inner(u, v).conj()
    e1, e2 = Vector.basis(3, 0), Vector.basis(3, 1)
    assert inner(e1, e2) == 0


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner(vector([1, 2]), vector([1, 2, 3]))
    with pytest.raises(TagMismatchError):
        inner(vector([1, 2]), vector([1, 2j]))


def test_det_examples():
    m = matrix([[1 + 1j, 1], [0, 2j]])
    assert approx_eq(det(m), -2 + 2j)
    assert det(m.to_backend("exact")) == -2 + 2j
    m2 = matrix([[math.sqrt(2), -1j], [0, 2]])
    assert approx_eq(det(m2), 2 * math.sqrt(2))
    assert det(Matrix.identity(4, backend="exact")) == 1
    assert approx_eq(det(Matrix.identity(4)), 1)


def test_det_realified_example():
    m_real = matrix([[1, -1, 1, 0], [1, 1, 0, 1], [0, 0, 0, -2], [0, 0, 2, 0]], backend="exact")
    assert det(m_real) == 8


def test_det_needs_square():
    with pytest.raises(DimensionError):
        det(matrix([[1, 2, 3], [4, 5, 6]]))


def test_exact_det_pivots_on_zero():
    m = matrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]], backend="exact")
    # cofactor expansion along the first row
    assert det(m) == -(1 * 8 - 3 * 4) + 2 * (1 * -3 - 0 * 4)
    assert det(matrix([[0, 0], [1, 2]], backend="exact")) == 0


def test_conj_transpose():
    m = matrix([[1 + 1j, 1], [0, 2j]])
    assert conj_transpose(m) == matrix([[1 - 1j, 0], [1, -2j]])
    r = matrix([[1, 2, 3], [4, 5, 6]])
    assert conj_transpose(r) == r.T


def test_conj_transpose_involution(rng):
    for backend in ("float", "exact"):
        m = rand_matrix(rng, 3, 4, "complex", backend)
        assert conj_transpose(conj_transpose(m)) == m


def test_block_embed_examples():
    n = block_embed(matrix([[1]], backend="exact"), matrix([[1]], backend="exact"))
    assert n == matrix([[1, -1], [1, 1]], backend="exact")
    assert det(n) == 2 == Scalar(1, 1, backend="exact").abs2()


def test_block_embed_from_complex_pair():
    m = matrix([[1 + 1j, 1], [0, 2j]], backend="exact")
    n = block_embed(m.real_part(), m.imag_part())
    assert det(n) == 8 == det(m).abs2()


def test_block_embed_zero_imaginary(rng):
    a = rand_matrix(rng, 3, 3, "real", "exact")
    zero = Matrix.of([[0] * 3] * 3, "real", "exact")
    assert det(block_embed(a, zero)) == det(a) * det(a)


def test_block_embed_rejects_bad_input():
    with pytest.raises(TagMismatchError):
        block_embed(matrix([[1j]]), matrix([[1.0]]))
    with pytest.raises(DimensionError):
        block_embed(matrix([[1, 2]]), matrix([[1, 2]]))


def test_gram_schmidt_heights_real():
    res = gram_schmidt([vector([2, 0, 0, 0]), vector([0, 4, 3, 0])])
    assert [float(h) for h in res.heights] == [2.0, 5.0]
    assert not any(res.dependent)


def test_gram_schmidt_hermitian_exact():
    v1 = vector([1 + 1j, 0], backend="exact")
    v2 = vector([1, 2j], backend="exact")
    res = gram_schmidt([v1, v2], "hermitian")
    assert res.heights_squared == (2, 4)
    lam = inner(v1, v2) / inner(v1, v1)
    assert res.residuals[1] == v2 - v1 * lam
    with pytest.raises(UnsupportedBackendError):
        res.heights


def test_gram_schmidt_float_hermitian_heights():
    res = gram_schmidt([vector([1 + 1j, 0]), vector([1, 2j])], "hermitian")
    assert np.allclose([float(h) for h in res.heights], [math.sqrt(2), 2])


def test_gram_schmidt_orthonormal_input_unchanged(rng):
    q, _ = np.linalg.qr(rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3)))
    vs = [Vector(q[:, k], "complex", "float") for k in range(3)]
    res = gram_schmidt(vs, "hermitian")
    assert np.allclose([float(h) for h in res.heights], 1.0)
    for a, b in zip(res.orthonormal, vs):
        assert np.allclose(a.data, b.data)


def test_gram_schmidt_flags_dependence(rng):
    vs = rand_vectors(rng, 4, 2, "complex")
    for backend in ("float", "exact"):
        ws = [v.to_backend(backend) for v in vs]
        extra = ws[0] * Scalar(2, -1, "complex", backend) + ws[1]
        res = gram_schmidt(ws + [extra], "hermitian")
        assert res.dependent == (False, False, True)
        assert res.heights_squared[2] == 0
        base = gram_schmidt(ws, "hermitian")
        assert res.heights_squared[:2] == base.heights_squared
        # over R the complex combination is independent
        assert not any(gram_schmidt(ws + [extra], "real").dependent)


def test_gram_schmidt_heights_product_is_gramian(rng):
    for field in ("real", "complex"):
        for kind in ("hermitian", "real"):
            vs = rand_vectors(rng, 4, 3, field, "exact")
            res = gram_schmidt(vs, kind)
            prod = res.heights_squared[0] * res.heights_squared[1] * res.heights_squared[2]
            assert prod == gramian(vs, kind)


def test_singular_values():
    assert [float(s) for s in singular_values(Matrix.identity(3))] == pytest.approx([1, 1, 1], rel=1e-12)
    assert [float(s) for s in singular_values(matrix([[3, 0], [0, 2]]))] == pytest.approx([3, 2], rel=1e-12)
    # eigenvalues of M^T M = [[2,2],[2,2]] are 4 and 0
    s = [float(x) for x in singular_values(matrix([[1, 1], [1, 1]]))]
    assert s == pytest.approx([2, 0], abs=1e-12)
    with pytest.raises(UnsupportedBackendError):
        singular_values(Matrix.identity(2, backend="exact"))


def test_singular_values_squares_are_eigenvalues(rng):
    m = rand_matrix(rng, 4, 3, "complex")
    s = np.array([float(x) for x in singular_values(m)])
    ev = np.sort(np.linalg.eigvalsh(conj_transpose(m).data @ m.data))[::-1]
    assert np.all(np.diff(s) <= 0)
    assert np.allclose(s**2, ev)


def test_matrix_json_roundtrip():
    m = matrix([[1 + 1j, 1], [0, 2j]], backend="exact")
    assert Matrix.from_json(m.to_json()) == m


@pytest.mark.parametrize("backend", ["float", "exact"])
@pytest.mark.parametrize("field", ["real", "complex"])
def test_det_multiplicative(rng, backend, field):
    for n in range(1, 5):
        a = rand_matrix(rng, n, n, field, backend)
        b = rand_matrix(rng, n, n, field, backend)
        lhs, rhs = det(a @ b), det(a) * det(b)
        if backend == "exact":
            assert lhs == rhs
        else:
            assert approx_eq(lhs, rhs, Tolerance(1e-9, 1e-12))


@pytest.mark.parametrize("backend", ["float", "exact"])
def test_det_of_conj_transpose(rng, backend):
    for n in range(1, 5):
        m = rand_matrix(rng, n, n, "complex", backend)
        if backend == "exact":
            assert det(conj_transpose(m)) == det(m).conj()
        else:
            assert approx_eq(det(conj_transpose(m)), det(m).conj())


small_ints = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda p: st.tuples(
        st.lists(st.lists(small_ints, min_size=p, max_size=p), min_size=p, max_size=p),
        st.lists(st.lists(small_ints, min_size=p, max_size=p), min_size=p, max_size=p),
    )
))
def test_block_embed_determinant_identity(blocks):
    a = matrix(blocks[0], "real", "exact")
    b = matrix(blocks[1], "real", "exact")
    m = complex_from_blocks(a, b)
    assert det(m).abs2() == det(block_embed(a, b))

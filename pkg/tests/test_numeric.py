import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bladekit.errors import TagMismatchError, UnsupportedBackendError
from bladekit.numeric import (
    Scalar,
    Tolerance,
    approx_eq,
    normalize_phase,
    scalar_abs2,
    scalar_add,
    scalar_conj,
    scalar_mul,
)

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=50)


@st.composite
def gaussian(draw):
    return Scalar(draw(fractions), draw(fractions), "complex", "exact")


def test_mul_by_conjugate_is_abs2():
    z = Scalar(1, 1, backend="float")
    assert scalar_mul(z, scalar_conj(z)) == 2
    assert scalar_abs2(z) == 2
    assert scalar_abs2(z).field == "real"


def test_conj_involution():
    z = Scalar(2, 3)
    assert scalar_conj(scalar_conj(z)) == z


def test_exact_addition_has_no_rounding():
    a = Scalar(Fraction(1, 3), Fraction(1, 3), "complex", "exact")
    b = Scalar(Fraction(2, 3), Fraction(2, 3), "complex", "exact")
    s = scalar_add(a, b)
    assert s.re == 1 and s.im == 1
    assert isinstance(s.re, Fraction)


def test_mixed_tags_raise():
    with pytest.raises(TagMismatchError):
        Scalar(1, backend="float") + Scalar(1, backend="exact")
    with pytest.raises(TagMismatchError):
        scalar_add(Scalar(1, 0, "real"), Scalar(1, 0, "complex"))
    with pytest.raises(TagMismatchError):
        Scalar(1, 0, "real", "exact") * Scalar(0, 1, "complex", "exact")


def test_real_scalar_rejects_imaginary_part():
    with pytest.raises(ValueError):
        Scalar(1, 2, "real")


def test_ints_adopt_tags():
    z = Scalar(Fraction(1, 2), 0, "complex", "exact")
    w = z + 1
    assert w.backend == "exact" and w.field == "complex" and w.re == Fraction(3, 2)


def test_exact_division():
    a = Scalar(1, 2, "complex", "exact")
    b = Scalar(3, -1, "complex", "exact")
    assert (a / b) * b == a
    with pytest.raises(ZeroDivisionError):
        a / Scalar.zero("complex", "exact")


def test_exact_sqrt_unsupported():
    with pytest.raises(UnsupportedBackendError):
        Scalar(4, 0, "real", "exact").sqrt()
    with pytest.raises(UnsupportedBackendError):
        abs(Scalar(3, 4, "complex", "exact"))
    assert abs(Scalar(-3, 0, "real", "exact")) == 3
    assert abs(Scalar(3, 4)) == 5


def test_approx_eq_examples():
    tol = Tolerance(1e-9, 1e-12)
    assert approx_eq(1.0, 1.0 + 1e-12, tol)
    assert not approx_eq(0.0, 1e-3, Tolerance(1e-9, 1e-9))
    third = Scalar(Fraction(1, 3), backend="exact")
    assert not approx_eq(third, Scalar(Fraction(333, 1000), backend="exact"), tol)
    assert approx_eq(third, Fraction(1, 3))


def test_approx_eq_backend_mismatch():
    with pytest.raises(TagMismatchError):
        approx_eq(Scalar(1.0), Scalar(1, backend="exact"))
    with pytest.raises(TagMismatchError):
        approx_eq(Scalar(1, backend="exact"), 1.0)


def test_tolerance_defaults(monkeypatch):
    monkeypatch.delenv("BLADE_TOLERANCE", raising=False)
    assert Tolerance.default() == Tolerance(1e-9, 1e-12)
    assert Tolerance.default("exact") == Tolerance(0.0, 0.0)
    monkeypatch.setenv("BLADE_TOLERANCE", "1e-6")
    assert Tolerance.default().rel_eps == 1e-6


def test_phase_normalization():
    assert normalize_phase(math.pi) == pytest.approx(math.pi)
    assert normalize_phase(-math.pi) == pytest.approx(math.pi)
    assert normalize_phase(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert Scalar(-1, -0.0, "complex").phase() == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        Scalar(0).phase()


@pytest.mark.parametrize(
    "s",
    [Scalar(1.5, -2.0), Scalar(Fraction(1, 3), Fraction(-7, 2), "complex", "exact"), Scalar(2, 0, "real", "exact")],
)
def test_json_roundtrip(s):
    back = Scalar.from_json(s.to_json(), s.field)
    assert back == s and back.backend == s.backend


def test_exact_json_uses_fraction_strings():
    assert Scalar(Fraction(1, 3), 2, "complex", "exact").to_json() == ["1/3", "2/1"]


@given(gaussian(), gaussian())
def test_conj_distributes(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()


@given(gaussian())
def test_abs2_nonnegative_and_definite(z):
    a2 = z.abs2()
    assert a2 >= 0
    assert (a2 == 0) == z.is_zero()
    assert z * z.conj() == a2.as_complex()


@settings(max_examples=200)
@given(gaussian(), gaussian(), gaussian())
def test_exact_and_float_backends_agree(a, b, c):
    tol = Tolerance()
    exact = (a * b + c) * a.conj()
    fa, fb, fc = (x.to_backend("float") for x in (a, b, c))
    approx = (fa * fb + fc) * fa.conj()
    scale = max(1.0, abs(complex(exact)))
    assert abs(complex(exact) - complex(approx)) <= 16 * tol.rel_eps * scale

"""Tagged scalars over R or C with a floating-point and an exact backend.

The float backend stores ``re``/``im`` as Python floats.  The exact backend
stores them as :class:`fractions.Fraction`, so a complex exact scalar is a
Gaussian rational and arithmetic never rounds.  Square roots are not
available exactly; code that needs one asks for the squared quantity instead.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Literal, Union

from .errors import TagMismatchError, UnsupportedBackendError

Field = Literal["real", "complex"]
Backend = Literal["float", "exact"]

REAL: Field = "real"
COMPLEX: Field = "complex"
FLOAT: Backend = "float"
EXACT: Backend = "exact"

FIELDS = (REAL, COMPLEX)
BACKENDS = (FLOAT, EXACT)

DEFAULT_REL_EPS = 1e-9
DEFAULT_ABS_EPS = 1e-12
TOLERANCE_ENV = "BLADE_TOLERANCE"

Number = Union[int, float, complex, Fraction]


def _check_field(field):
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")


def _check_backend(backend):
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")


def to_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, float (binary-exact) or 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (Integral, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r} has no exact form")
        return Fraction(x)
    if hasattr(x, "item"):  # numpy scalar
        return to_fraction(x.item())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Scalar:
    """An immutable element of R or C under one backend.

    Arithmetic between scalars requires identical field and backend tags;
    Python ints are accepted on either side and adopt the other operand's
    tags.  Use :meth:`as_complex` to lift a real scalar into C explicitly.
    """

    __slots__ = ("re", "im", "field", "backend")

    def __init__(self, re, im=0, field: Field | None = None, backend: Backend = FLOAT):
        _check_backend(backend)
        if backend == EXACT:
            re, im = to_fraction(re), to_fraction(im)
        else:
            re, im = float(re), float(im)
        if field is None:
            field = REAL if im == 0 else COMPLEX
        _check_field(field)
        if field == REAL and im != 0:
            raise ValueError("real scalar with nonzero imaginary part")
        if field == REAL:
            im = Fraction(0) if backend == EXACT else 0.0
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def of(cls, value, field: Field | None = None, backend: Backend = FLOAT) -> "Scalar":
        """Build a scalar from a Python/numpy number, Fraction, 'p/q' string,
        ``[re, im]`` pair or another Scalar (whose value is re-tagged)."""
        if isinstance(value, Scalar):
            if value.backend == backend:
                re, im = value.re, value.im
            elif backend == FLOAT:
                re, im = float(value.re), float(value.im)
            else:
                re, im = to_fraction(value.re), to_fraction(value.im)
            if field is None:
                field = value.field
            return cls(re, im, field, backend)
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"complex pair must have 2 entries, got {len(value)}")
            re, im = value
            return cls(re, im, field or COMPLEX, backend)
        if hasattr(value, "item") and not isinstance(value, (str, Fraction)):
            value = value.item()
        if isinstance(value, complex):
            return cls(value.real, value.imag, field or COMPLEX, backend)
        return cls(value, 0, field or REAL, backend)

    @classmethod
    def zero(cls, field: Field = REAL, backend: Backend = FLOAT) -> "Scalar":
        return cls(0, 0, field, backend)

    @classmethod
    def one(cls, field: Field = REAL, backend: Backend = FLOAT) -> "Scalar":
        return cls(1, 0, field, backend)

    # ------------------------------------------------------------------
    # tag handling

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.backend != self.backend or other.field != self.field:
                raise TagMismatchError(
                    f"operands tagged {self.field}/{self.backend} and "
                    f"{other.field}/{other.backend}"
                )
            return other
        if isinstance(other, Integral) and not isinstance(other, bool):
            return Scalar(int(other), 0, self.field, self.backend)
        return NotImplemented

    def as_complex(self) -> "Scalar":
        if self.field == COMPLEX:
            return self
        return Scalar(self.re, self.im, COMPLEX, self.backend)

    def as_real(self) -> "Scalar":
        """Real-tagged copy; the imaginary part must be exactly zero."""
        if self.field == REAL:
            return self
        if self.im != 0:
            raise ValueError(f"{self!r} is not real")
        return Scalar(self.re, 0, REAL, self.backend)

    def to_backend(self, backend: Backend) -> "Scalar":
        return Scalar.of(self, self.field, backend)

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.re + o.re, self.im + o.im, self.field, self.backend)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.re - o.re, self.im - o.im, self.field, self.backend)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.field == REAL:
            return Scalar(self.re * o.re, 0, REAL, self.backend)
        return Scalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            COMPLEX,
            self.backend,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if self.field == REAL:
            return Scalar(self.re / o.re, 0, REAL, self.backend)
        if self.backend == FLOAT:
            q = complex(self.re, self.im) / complex(o.re, o.im)
            return Scalar(q.real, q.imag, COMPLEX, FLOAT)
        d = o.re * o.re + o.im * o.im
        return Scalar(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
            COMPLEX,
            EXACT,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.field, self.backend)

    def __pos__(self):
        return self

    def conjugate(self) -> "Scalar":
        if self.field == REAL:
            return self
        return Scalar(self.re, -self.im, COMPLEX, self.backend)

    conj = conjugate

    def abs2(self) -> "Scalar":
        """|z|^2 as a real-tagged scalar (exact on the exact backend)."""
        return Scalar(self.re * self.re + self.im * self.im, 0, REAL, self.backend)

    @property
    def real(self) -> "Scalar":
        return Scalar(self.re, 0, REAL, self.backend)

    @property
    def imag(self) -> "Scalar":
        return Scalar(self.im, 0, REAL, self.backend)

    def sqrt(self) -> "Scalar":
        """Square root of a nonnegative real scalar; float backend only."""
        if self.backend == EXACT:
            raise UnsupportedBackendError("square roots are not exact on the exact backend")
        if self.field != REAL or self.re < 0:
            raise ValueError(f"sqrt needs a nonnegative real scalar, got {self!r}")
        return Scalar(math.sqrt(self.re), 0, REAL, FLOAT)

    def __abs__(self) -> "Scalar":
        if self.field == REAL:
            return Scalar(abs(self.re), 0, REAL, self.backend)
        if self.backend == EXACT:
            raise UnsupportedBackendError("|z| of a complex exact scalar needs a square root; use abs2()")
        return Scalar(math.hypot(self.re, self.im), 0, REAL, FLOAT)

    def phase(self) -> float:
        """Principal argument in (-pi, pi]; raises for zero."""
        if self.is_zero():
            raise ValueError("the phase of zero is undefined")
        return normalize_phase(math.atan2(float(self.im), float(self.re)))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    # ------------------------------------------------------------------
    # conversions and comparisons

    @property
    def value(self):
        """Native value: float/complex on the float backend, Fraction or
        complex-of-floats on the exact backend (real part only if real)."""
        if self.field == REAL:
            return self.re
        if self.backend == FLOAT:
            return complex(self.re, self.im)
        return (self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im != 0:
            raise TypeError(f"cannot convert non-real {self!r} to float")
        return float(self.re)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, float, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __lt__(self, other):
        o = self._coerce_real_compare(other)
        return self.re < o

    def __le__(self, other):
        o = self._coerce_real_compare(other)
        return self.re <= o

    def __gt__(self, other):
        o = self._coerce_real_compare(other)
        return self.re > o

    def __ge__(self, other):
        o = self._coerce_real_compare(other)
        return self.re >= o

    def _coerce_real_compare(self, other):
        if self.im != 0:
            raise TypeError("ordering is only defined for real scalars")
        if isinstance(other, Scalar):
            if other.im != 0:
                raise TypeError("ordering is only defined for real scalars")
            return other.re
        return other

    def __repr__(self):
        if self.backend == EXACT:
            body = str(self.re) if self.field == REAL else f"{self.re}, {self.im}"
        else:
            body = repr(self.re) if self.field == REAL else f"{self.re!r}, {self.im!r}"
        return f"Scalar({body}, {self.field}, {self.backend})"

    def __str__(self):
        if self.field == REAL:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    # ------------------------------------------------------------------
    # JSON

    def to_json(self):
        """``[re, im]`` floats or ``["p/q", "r/s"]`` strings."""
        if self.backend == FLOAT:
            return [self.re, self.im]
        return [_frac_str(self.re), _frac_str(self.im)]

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "Scalar":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"scalar JSON must be a [re, im] pair, got {obj!r}")
        re, im = obj
        if isinstance(re, str) and isinstance(im, str):
            return cls(Fraction(re), Fraction(im), field, EXACT)
        if isinstance(re, str) or isinstance(im, str):
            raise ValueError(f"mixed string/number scalar pair {obj!r}")
        return cls(re, im, field, FLOAT)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def normalize_phase(phi: float) -> float:
    """Map an angle to the principal interval (-pi, pi]."""
    phi = math.remainder(phi, 2 * math.pi)
    if phi <= -math.pi:
        phi += 2 * math.pi
    return phi


def phase_distance(a: float, b: float) -> float:
    """Distance between two phases on the circle."""
    return abs(math.remainder(a - b, 2 * math.pi))


# ----------------------------------------------------------------------
# functional forms


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return _strict(a, b) + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return _strict(a, b) * b


def scalar_conj(a: Scalar) -> Scalar:
    return a.conjugate()


def scalar_abs2(a: Scalar) -> Scalar:
    return a.abs2()


def _strict(a, b):
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise TypeError("operands must be Scalar instances")
    if (a.field, a.backend) != (b.field, b.backend):
        raise TagMismatchError(
            f"operands tagged {a.field}/{a.backend} and {b.field}/{b.backend}"
        )
    return a


# ----------------------------------------------------------------------
# tolerance policy


@dataclass(frozen=True)
class Tolerance:
    rel_eps: float = DEFAULT_REL_EPS
    abs_eps: float = DEFAULT_ABS_EPS

    def __post_init__(self):
        if self.rel_eps < 0 or self.abs_eps < 0:
            raise ValueError("tolerances must be nonnegative")

    @classmethod
    def default(cls, backend: Backend = FLOAT) -> "Tolerance":
        """Backend default; ``BLADE_TOLERANCE`` overrides the float rel_eps."""
        _check_backend(backend)
        if backend == EXACT:
            return cls(0.0, 0.0)
        env = os.environ.get(TOLERANCE_ENV)
        rel = float(env) if env else DEFAULT_REL_EPS
        return cls(rel, DEFAULT_ABS_EPS)

    @classmethod
    def exact(cls) -> "Tolerance":
        return cls(0.0, 0.0)

    def close(self, a: float, b: float) -> bool:
        """Plain-float version of :func:`approx_eq`."""
        return abs(a - b) <= self.abs_eps + self.rel_eps * max(abs(a), abs(b))


def approx_eq(a, b, tol: Tolerance | None = None) -> bool:
    """True iff |a-b| <= abs_eps + rel_eps*max(|a|,|b|).

    Exact-backend scalars are compared for literal equality regardless of
    ``tol``.  Python numbers are lifted to the other operand's backend
    (ints to either; floats/complex to float; Fractions to exact).
    """
    a, b = _lift_pair(a, b)
    if a.backend == EXACT:
        return a.re == b.re and a.im == b.im
    tol = tol or Tolerance.default(FLOAT)
    diff = math.hypot(a.re - b.re, a.im - b.im)
    scale = max(math.hypot(a.re, a.im), math.hypot(b.re, b.im))
    return diff <= tol.abs_eps + tol.rel_eps * scale


def _lift_pair(a, b):
    if not isinstance(a, Scalar) and not isinstance(b, Scalar):
        return Scalar.of(a), Scalar.of(b)
    if not isinstance(a, Scalar):
        return _lift(a, b), b
    if not isinstance(b, Scalar):
        return a, _lift(b, a)
    if a.backend != b.backend:
        raise TagMismatchError(f"cannot compare {a.backend} and {b.backend} scalars")
    return a, b


def _lift(x, like: Scalar) -> Scalar:
    if isinstance(x, Integral) and not isinstance(x, bool):
        return Scalar.of(int(x), backend=like.backend)
    if isinstance(x, Fraction):
        if like.backend != EXACT:
            raise TagMismatchError("Fraction compared with a float-backend scalar")
        return Scalar.of(x, backend=EXACT)
    if like.backend == EXACT:
        raise TagMismatchError(f"{type(x).__name__} compared with an exact scalar")
    return Scalar.of(x, backend=FLOAT)

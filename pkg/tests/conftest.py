from fractions import Fraction

import numpy as np
import pytest

from bladekit.linalg import Matrix, Vector
from bladekit.numeric import Scalar


def rand_rational(rng, lo=-2, hi=2, max_den=8):
    q = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(lo * q, hi * q + 1)), q)


def rand_vector(rng, n, field="real", backend="float"):
    """Entries uniform in [-2, 2] (and [-2, 2]i); rationals on the exact backend."""
    if backend == "exact":
        if field == "real":
            return Vector.of([Scalar(rand_rational(rng), 0, "real", "exact") for _ in range(n)], "real", "exact")
        return Vector.of(
            [Scalar(rand_rational(rng), rand_rational(rng), "complex", "exact") for _ in range(n)],
            "complex",
            "exact",
        )
    x = rng.uniform(-2, 2, n)
    if field == "complex":
        x = x + 1j * rng.uniform(-2, 2, n)
    return Vector(x, field, "float")


def rand_vectors(rng, n, p, field="real", backend="float"):
    return [rand_vector(rng, n, field, backend) for _ in range(p)]


def rand_matrix(rng, rows, cols, field="real", backend="float"):
    return Matrix.from_columns(rand_vectors(rng, rows, cols, field, backend))


def rational_twin(vs):
    """The same vectors on the float backend."""
    return [v.to_backend("float") for v in vs]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)

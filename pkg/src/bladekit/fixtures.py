"""Small worked instances with known closed-form answers.

Each :class:`Fixture` recomputes one quantity through the library and
compares it with a reference value.  Fixtures marked ``exact_ok`` involve
only squared quantities (Gramians, squared volumes and norms, determinants)
and also run on the exact backend, where they must match literally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .angles import Subspace, classify, kahler_angle, principal_angles, reality_index, disjointness_angle
from .exterior import blade_from_vectors, det_interpret, orientation_phase
from .gram_volume import gramian, volume, volume_complex_span
from .linalg import Matrix, Vector, det
from .numeric import EXACT, FLOAT, Backend, Scalar, Tolerance, approx_eq, phase_distance
from .realify import build_m_real, complex_structure, realify_vector, with_i

SQRT2 = math.sqrt(2)


def c2(a, b, backend: Backend) -> Vector:
    return Vector.of([complex(a), complex(b)], backend=backend)


def pair(backend: Backend = FLOAT) -> list[Vector]:
    """v1 = (1+i, 0), v2 = (1, 2i) in C^2."""
    return [c2(1 + 1j, 0, backend), c2(1, 2j, backend)]


def pair_unrotated() -> list[Vector]:
    """v1' = (sqrt 2, 0), v2' = (-i, 2): v1, v2 rotated back in their complex lines."""
    return [c2(SQRT2, 0, FLOAT), c2(-1j, 2, FLOAT)]


def square(backend: Backend = FLOAT) -> list[Vector]:
    """v1 = 5, v2 = 5i in C."""
    return [Vector.of([5 + 0j], backend=backend), Vector.of([5j], backend=backend)]


def tilted(backend: Backend = FLOAT) -> tuple[Vector, Vector]:
    """u = (2, 0), v = (4i, 3) in C^2."""
    return c2(2, 0, backend), c2(4j, 3, backend)


def orthogonal_pair(backend: Backend = FLOAT) -> list[Vector]:
    """v1 = (3, 0), v2 = (0, 2i): spans a totally real plane."""
    return [c2(3, 0, backend), c2(0, 2j, backend)]


def _i(v: Vector) -> Vector:
    return complex_structure(v)


def _vol(vs, backend):
    r = volume(vs, Tolerance.default(backend))
    return r.volume if backend == FLOAT else r.volume_squared


def _vol_c(vs, backend):
    r = volume_complex_span(vs, Tolerance.default(backend))
    return r.volume if backend == FLOAT else r.volume_squared


@dataclass(frozen=True)
class Fixture:
    name: str
    expected: object
    compute: Callable[[Backend], object]
    exact_ok: bool = False
    kind: str = "number"  # number | phase | label


@dataclass(frozen=True)
class FixtureResult:
    name: str
    expected: object
    actual: object
    status: str  # pass | FAIL | skip | ERROR

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skip")


def _sq(name, expected_float, expected_sq, fn):
    """A float fixture and its squared exact twin for a volume/norm."""
    return [
        Fixture(name, expected_float, lambda b: fn(FLOAT)),
        Fixture(f"{name}^2", expected_sq, lambda b: _squared(fn, b), exact_ok=True),
    ]


def _squared(fn, backend):
    if backend == FLOAT:
        x = fn(FLOAT)
        return x * x
    return fn(EXACT)


FIXTURES: list[Fixture] = []


def _pair_gr(b):
    v1, v2 = pair(b)
    return gramian([v1, v2, _i(v1), _i(v2)], "real")


def _square_vol4(b):
    v1, v2 = square(b)
    return volume(with_i([v1, v2]), Tolerance.default(b)).volume_squared


def _fig(fn):
    def run(b):
        u, v = tilted(b)
        return fn(u, v, b)
    return run


def _bnorm(vs_fn, realify=False):
    def run(b):
        vs = vs_fn(b)
        if realify:
            vs = [realify_vector(v) for v in vs]
        blade = blade_from_vectors(vs)
        return blade.norm() if b == FLOAT else blade.norm_squared()
    return run


def _pair_with_i_real(b):
    v1, v2 = pair(b)
    return [realify_vector(x) for x in (v1, _i(v1), v2, _i(v2))]


def _det_m(b):
    return det(Matrix.from_columns(pair(b)))


def _det_mr(b):
    return det(build_m_real(with_i(pair(b))))


def _pair_phase(b):
    return det_interpret(Matrix.from_columns(pair(FLOAT))).phase


def _blade_ratio_phase(b):
    a = blade_from_vectors(pair_unrotated())
    c = blade_from_vectors(pair(FLOAT))
    index = max(a.coeffs, key=lambda i: abs(complex(a.coeffs[i])))
    return (c.coeff(index) / a.coeffs[index]).phase()


def _real_span(vs):
    return Subspace.real_span(vs)


FIXTURES += [
    # C^2 pair (1+i, 0), (1, 2i)
    Fixture("realify v1 = (1,1,0,0)", (1, 1, 0, 0), lambda b: tuple(realify_vector(pair(b)[0]).entries), exact_ok=True, kind="tuple"),
    Fixture("realify i*v2 = (0,1,-2,0)", (0, 1, -2, 0), lambda b: tuple(realify_vector(_i(pair(b)[1])).entries), exact_ok=True, kind="tuple"),
    Fixture("pair |G(v1,v2)|", 8, lambda b: gramian(pair(b)), exact_ok=True),
    Fixture("pair |G_R(v1,v2)|", 9, lambda b: gramian(pair(b), "real"), exact_ok=True),
    Fixture("pair |G_R(v1,v2,iv1,iv2)|", 64, _pair_gr, exact_ok=True),
    *_sq("pair V(v1,v2)", 3, 9, lambda b: _vol(pair(b), b)),
    *_sq("pair V(v1,iv1,v2,iv2)", 8, 64, lambda b: _vol_c(pair(b), b)),
    # square in C
    Fixture("square |G(5,5i)|", 0, lambda b: gramian(square(b)), exact_ok=True),
    Fixture("square |G_R(5,5i)|", 625, lambda b: gramian(square(b), "real"), exact_ok=True),
    *_sq("square V(5,5i)", 25, 625, lambda b: _vol(square(b), b)),
    Fixture("square V(v1,iv1,v2,iv2)^2", 0, _square_vol4, exact_ok=True),
    # u = (2,0), v = (4i,3)
    *_sq("tilted V(u,v)", 10, 100, _fig(lambda u, v, b: _vol([u, v], b))),
    *_sq("tilted V(iu,v)", 6, 36, _fig(lambda u, v, b: _vol([_i(u), v], b))),
    *_sq("tilted V(u,iu,v)", 12, 144, _fig(lambda u, v, b: _vol([u, _i(u), v], b))),
    *_sq("tilted V(u,iu,v,iv)", 36, 1296, _fig(lambda u, v, b: _vol([u, _i(u), v, _i(v)], b))),
    Fixture("tilted |det M(u,v)|^2", 36, _fig(lambda u, v, b: det(Matrix.from_columns([u, v])).abs2()), exact_ok=True),
    Fixture(
        "tilted |i|V(u,v) - V(iu,v)",
        4,
        _fig(lambda u, v, b: _vol([u, v], FLOAT) - _vol([_i(u), v], FLOAT)),
    ),
    # determinants and orientation
    Fixture("pair det M", -2 + 2j, _det_m, exact_ok=True),
    Fixture("pair |det M|^2", 8, lambda b: _det_m(b).abs2(), exact_ok=True),
    Fixture("pair arg det M", 3 * math.pi / 4, _pair_phase, kind="phase"),
    Fixture("pair det M_R(v1,iv1,v2,iv2)", 8, _det_mr, exact_ok=True),
    Fixture("rotated det M(v1',v2')", math.sqrt(8), lambda b: det(Matrix.from_columns(pair_unrotated()))),
    Fixture(
        "orientation phase (v1',v2') -> (v1,v2)",
        3 * math.pi / 4,
        lambda b: orientation_phase(pair_unrotated(), pair(FLOAT)),
        kind="phase",
    ),
    # blades
    *_sq("orthogonal ||v1 ^C v2||", 6, 36, _bnorm(orthogonal_pair)),
    *_sq("orthogonal ||v1 ^R v2||", 6, 36, _bnorm(orthogonal_pair, realify=True)),
    *_sq("orthogonal V(v1,iv1,v2,iv2)", 36, 1296, lambda b: _vol_c(orthogonal_pair(b), b)),
    *_sq("pair ||v1 ^R v2||", 3, 9, _bnorm(pair, realify=True)),
    Fixture("pair ||v1 ^C v2||^2", 8, lambda b: blade_from_vectors(pair(b)).norm_squared(), exact_ok=True),
    *_sq("pair ||v1 ^R iv1 ^R v2 ^R iv2||", 8, 64, _bnorm(_pair_with_i_real)),
    Fixture("rotated ||v1' ^R v2'||", math.sqrt(10), lambda b: blade_from_vectors([realify_vector(v) for v in pair_unrotated()]).norm()),
    Fixture("pair blade ratio v1^v2 / v1'^v2'", 3 * math.pi / 4, _blade_ratio_phase, kind="phase"),
    # reality index and angles
    Fixture("pair reality index", 2 * SQRT2 / 3, lambda b: reality_index(_real_span(pair(FLOAT)))),
    Fixture("pair Kähler angle", math.asin(2 * SQRT2 / 3), lambda b: kahler_angle(_real_span(pair(FLOAT)))),
    Fixture(
        "pair disjointness angle (V, iV)",
        math.asin(8 / 9),
        lambda b: disjointness_angle(_real_span(pair(FLOAT)), _real_span(pair(FLOAT)).i_image()),
    ),
    Fixture(
        "pair principal sines product (V, iV)",
        8 / 9,
        lambda b: math.prod(math.sin(t) for t in principal_angles(_real_span(pair(FLOAT)), _real_span(pair(FLOAT)).i_image())),
    ),
    Fixture("orthogonal reality index", 1, lambda b: reality_index(_real_span(orthogonal_pair(FLOAT)))),
    Fixture("square reality index", 0, lambda b: reality_index(_real_span(square(FLOAT)))),
    Fixture("square classification", "holomorphic", lambda b: classify(_real_span(square(FLOAT))).label, kind="label"),
    Fixture("orthogonal classification", "totally_real", lambda b: classify(_real_span(orthogonal_pair(FLOAT))).label, kind="label"),
    Fixture("pair classification", "purely_real", lambda b: classify(_real_span(pair(FLOAT))).label, kind="label"),
]


def _matches(fx: Fixture, actual, backend: Backend, tol: Tolerance) -> bool:
    if fx.kind == "label":
        return actual == fx.expected
    if fx.kind == "tuple":
        return len(actual) == len(fx.expected) and all(
            _number_matches(a, e, backend, tol) for a, e in zip(actual, fx.expected)
        )
    if fx.kind == "phase":
        return phase_distance(actual, fx.expected) <= tol.abs_eps + tol.rel_eps * abs(fx.expected)
    return _number_matches(actual, fx.expected, backend, tol)


def _number_matches(actual, expected, backend, tol) -> bool:
    if isinstance(actual, Scalar):
        if actual.backend == EXACT:
            return actual == expected
        return approx_eq(actual, Scalar.of(expected), tol)
    return approx_eq(Scalar.of(actual), Scalar.of(expected), tol)


def run_fixtures(
    backend: Backend = FLOAT,
    tol: Tolerance | None = None,
    fixtures: Sequence[Fixture] | None = None,
) -> list[FixtureResult]:
    tol = tol if tol is not None else Tolerance.default(backend)
    out = []
    for fx in fixtures if fixtures is not None else FIXTURES:
        if backend == EXACT and not fx.exact_ok:
            out.append(FixtureResult(fx.name, fx.expected, None, "skip"))
            continue
        try:
            actual = fx.compute(backend)
        except Exception as exc:  # reported as a row, never propagated
            out.append(FixtureResult(fx.name, fx.expected, f"{type(exc).__name__}: {exc}", "ERROR"))
            continue
        status = "pass" if _matches(fx, actual, backend, tol) else "FAIL"
        out.append(FixtureResult(fx.name, fx.expected, actual, status))
    return out

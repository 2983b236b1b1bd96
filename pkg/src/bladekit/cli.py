"""Command-line interface: JSON vector sets in, JSON reports out.

Input files look like::

    {"field": "complex", "dim": 2, "vectors": [[[1, 1], [0, 0]], [[1, 0], [0, 2]]]}

with complex entries written as ``[re, im]`` pairs.  Real entries may also
be ``"p/q"`` strings, which the exact backend reads without rounding.

Exit codes: 0 success, 2 malformed input, 3 tag or dimension error,
4 fixture failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .angles import Subspace, angle_report, classify, kahler_angle, reality_relations_check, reality_report
from .errors import BladeError, DimensionError, TagMismatchError
from .exterior import det_interpret
from .fixtures import run_fixtures
from .gram_volume import gram, volume, volume_complex_span
from .linalg import Matrix, Vector
from .numeric import COMPLEX, EXACT, FLOAT, REAL, Scalar, Tolerance
from .pythagorean import decompose

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SEMANTIC = 3
EXIT_FIXTURE = 4

SIG_DIGITS = 12


class InputError(Exception):
    pass


# ----------------------------------------------------------------------
# input


def _real_entry(x, backend):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise InputError(f"invalid real entry {x!r}")
    try:
        if backend == EXACT:
            # decimal literals such as 0.1 are read as 1/10, not as binary floats
            return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)
        return float(Fraction(x)) if isinstance(x, str) else float(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid real entry {x!r}: {exc}") from None


def load_vector_set(path: str, backend: str = FLOAT) -> tuple[str, list[Vector], list]:
    """Parse a vector-set file into (field, vectors, labels)."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    field = doc.get("field")
    if field not in (REAL, COMPLEX):
        raise InputError(f"{path}: field must be 'real' or 'complex'")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError(f"{path}: dim must be a positive integer")
    raw = doc.get("vectors")
    if not isinstance(raw, list) or not raw:
        raise InputError(f"{path}: vectors must be a nonempty list")
    labels = doc.get("labels") or []
    vectors = []
    for k, coords in enumerate(raw):
        if not isinstance(coords, list) or len(coords) != dim:
            raise InputError(f"{path}: vector {k} must have {dim} coordinates")
        entries = []
        for x in coords:
            if isinstance(x, list):
                if field != COMPLEX or len(x) != 2:
                    raise InputError(f"{path}: [re, im] pairs are only allowed in complex files")
                re, im = (_real_entry(t, backend) for t in x)
                entries.append(Scalar(re, im, COMPLEX, backend))
            else:
                entries.append(Scalar(_real_entry(x, backend), 0, field, backend))
        vectors.append(Vector.of(entries, field, backend))
    return field, vectors, labels


# ----------------------------------------------------------------------
# output


def _round(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        x = float(f"{obj:.{SIG_DIGITS}g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 12 significant digits."""
    return json.dumps(_round(obj), indent=2, sort_keys=True, ensure_ascii=False)


def _emit(args, obj):
    text = dumps(obj) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tol(args) -> Tolerance:
    if args.backend == EXACT:
        return Tolerance.exact()
    base = Tolerance.default(FLOAT)
    if args.tolerance is not None:
        return Tolerance(args.tolerance, base.abs_eps if args.tolerance > 0 else 0.0)
    return base


def _sj(s: Scalar | None):
    return None if s is None else s.to_json()


# ----------------------------------------------------------------------
# commands


def cmd_gramian(args) -> int:
    field, vs, _ = load_vector_set(args.input, args.backend)
    res = gram(vs, args.inner)
    _emit(args, {
        "field": field,
        "inner": args.inner,
        "gram": res.gram.to_json(),
        "gramian": res.gramian.to_json(),
    })
    return EXIT_OK


def cmd_volume(args) -> int:
    field, vs, _ = load_vector_set(args.input, args.backend)
    tol = _tol(args)
    if args.with_i:
        if field != COMPLEX:
            raise TagMismatchError("--with-i needs a complex vector set")
        res = volume_complex_span(vs, tol)
    else:
        res = volume(vs, tol)
    floaty = res.backend == FLOAT
    _emit(args, {
        "volume": _sj(res.volume) if floaty else None,
        "volume_squared": res.volume_squared.to_json(),
        "heights": [h.to_json() for h in res.heights] if floaty else None,
        "heights_squared": [h.to_json() for h in res.heights_squared],
        "degenerate": res.degenerate,
    })
    return EXIT_OK


def cmd_det(args) -> int:
    field, vs, _ = load_vector_set(args.input, args.backend)
    if len(vs) != vs[0].dim:
        raise DimensionError(f"det needs {vs[0].dim} vectors, got {len(vs)}")
    info = det_interpret(Matrix.from_columns(vs))
    _emit(args, {
        "field": field,
        "det": info.det.to_json(),
        "modulus": info.modulus,
        "phase": info.phase,
        "volume_scale": info.volume_scale.to_json(),
        "volume_dim": info.volume_dim,
    })
    return EXIT_OK


def _subspace(field, vs, real_span, tol):
    if real_span:
        if field != COMPLEX:
            raise TagMismatchError("--real-span needs complex vector sets")
        return Subspace.real_span(vs, tol)
    return Subspace(vs, tol=tol)


def cmd_angles(args) -> int:
    tol = _tol(args) if args.backend == FLOAT else Tolerance.default(FLOAT)
    fv, vs, _ = load_vector_set(args.input, FLOAT)
    fw, ws, _ = load_vector_set(args.other, FLOAT)
    if fv != fw:
        raise TagMismatchError(f"vector sets use fields {fv} and {fw}")
    v = _subspace(fv, vs, args.real_span, tol)
    w = _subspace(fw, ws, args.real_span, tol)
    report = angle_report(v, w).to_json()
    report["dims"] = [v.dim, w.dim]
    report["ambient_dim"] = v.ambient_dim
    _emit(args, report)
    return EXIT_OK


def cmd_reality(args) -> int:
    tol = _tol(args) if args.backend == FLOAT else Tolerance.default(FLOAT)
    field, vs, _ = load_vector_set(args.input, FLOAT)
    if field != COMPLEX:
        raise TagMismatchError("the reality index needs a complex vector set")
    v = Subspace.real_span(vs, tol)
    flags = classify(v, tol)
    report = reality_report(v)
    mu = kahler_angle(v) if v.dim == 2 else None
    out = {
        "rho": report.reality_index,
        "mu": None if mu is None else {"radians": mu, "degrees": round(math.degrees(mu), 4)},
        "classification": flags.label,
        "flags": flags.names,
        "angles": report.to_json(),
        "relations": None,
    }
    if len(vs) <= vs[0].dim:
        out["relations"] = reality_relations_check(vs, tol).to_json()["relations"]
    _emit(args, out)
    return EXIT_OK


def cmd_pythagorean(args) -> int:
    _, vs, _ = load_vector_set(args.input, args.backend)
    if vs[0].field == REAL and args.backend == EXACT:
        vs = [v.to_backend(FLOAT) for v in vs]
    _emit(args, decompose(vs).to_plot_json())
    return EXIT_OK


def _show(x):
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, tuple):
        return "(" + ", ".join(_show(t) for t in x) + ")"
    return str(x)


def cmd_verify(args) -> int:
    rows = run_fixtures(args.backend, _tol(args))
    width = max(len(r.name) for r in rows)
    lines = [f"{'fixture'.ljust(width)}  status  expected  actual"]
    for r in rows:
        lines.append(f"{r.name.ljust(width)}  {r.status.ljust(6)}  {_show(r.expected)}  {_show(r.actual)}")
    failed = [r for r in rows if not r.ok]
    lines.append(f"{len(rows) - len(failed)}/{len(rows)} ok ({args.backend} backend)")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        Path(args.output).write_text(dumps([
            {"name": r.name, "status": r.status, "expected": _show(r.expected), "actual": _show(r.actual)}
            for r in rows
        ]) + "\n", encoding="utf-8")
    return EXIT_FIXTURE if failed else EXIT_OK


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=(FLOAT, EXACT), default=FLOAT)
    common.add_argument("--tolerance", type=float, default=None, metavar="REL",
                        help="relative tolerance for float comparisons")
    common.add_argument("--output", default=None, metavar="PATH", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="bladekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gramian", parents=[common], help="Gram matrix and Gramian")
    p.add_argument("input")
    p.add_argument("--inner", choices=("hermitian", "real"), default="hermitian")
    p.set_defaults(func=cmd_gramian)

    p = sub.add_parser("volume", parents=[common], help="parallelotope volume")
    p.add_argument("input")
    p.add_argument("--with-i", action="store_true", help="use (v1, iv1, ..., vp, ivp)")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("det", parents=[common], help="determinant, phase and volume scale")
    p.add_argument("input")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("angles", parents=[common], help="angles between two subspaces")
    p.add_argument("input")
    p.add_argument("other")
    p.add_argument("--real-span", action="store_true",
                   help="treat complex vector sets as real spans in the realified space")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("reality", parents=[common], help="reality index and classification of span_R")
    p.add_argument("input")
    p.set_defaults(func=cmd_reality)

    p = sub.add_parser("pythagorean", parents=[common], help="coordinate projection decomposition")
    p.add_argument("input")
    p.set_defaults(func=cmd_pythagorean)

    p = sub.add_parser("verify", parents=[common], help="run the built-in reference fixtures")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (TagMismatchError, DimensionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except BladeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())

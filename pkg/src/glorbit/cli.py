"""Command-line front end.

Every subcommand prints one JSON document to stdout. Exit status is 0 on
success, 1 on a domain error (the document is then ``{"error": {...}}``) and
2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable

from . import serialize as ser
from . import zlinalg as zl
from .affine_orbits import (
    d_from_v,
    equivalent_subspaces,
    subspace_invariant,
    witness_subspace,
)
from .errors import NotEquivalent, OrbitError, ShapeError
from .measure import lambda_complex, lambda_parallelotope, lambda_segment
from .point_orbits import (
    approx_orbit_certified,
    equivalent_points,
    h_invariant,
    is_dense,
    witness_point,
)
from .ratgeom import RationalSimplex, SimplicialComplex, d_min

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED = 0, 1, 2


class Failure(Exception):
    def __init__(self, code: int, reason: str, message: str, extra: dict | None = None):
        super().__init__(message)
        self.code, self.reason, self.message = code, reason, message
        self.extra = extra or {}

    def payload(self) -> dict:
        return {**self.extra, "error": {"reason": self.reason, "message": self.message}}


def _load(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise Failure(EXIT_MALFORMED, "IOError", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise Failure(EXIT_MALFORMED, "JSONDecodeError", f"{path}: {exc}") from None


# subcommands -------------------------------------------------------------

def cmd_point_invariant(args, path):
    x = ser.point_from(_load(path))
    return ser.point_invariant_to_json(h_invariant(x))


def cmd_point_equiv(args):
    x = ser.point_from(_load(args.x))
    y = ser.point_from(_load(args.y))
    if not equivalent_points(x, y):
        raise Failure(EXIT_DOMAIN, "NotEquivalent", "H_x and H_y differ", {"equivalent": False})
    gamma = witness_point(x, y)
    return {"equivalent": True, "witness": ser.matrix_to_json(gamma)}


def cmd_point_dense(args, path):
    x = ser.point_from(_load(path))
    _, cert = is_dense(x)
    return ser.density_to_json(cert, x.basis)


def cmd_dense_approx(args):
    x = ser.point_from(_load(args.x))
    if args.target is None:
        raise Failure(EXIT_MALFORMED, "MissingArgument", "--target is required")
    z = _parse_vector(args.target)
    eps = _parse_rat(args.eps, "--eps")
    res = approx_orbit_certified(x, z, eps, trace=args.points_out is not None)
    if args.points_out:
        with open(args.points_out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow([f"x{i + 1}" for i in range(x.n)])
            for p in res.trace:
                w.writerow([float(c) for c in p])
    out = {
        "gamma": ser.matrix_to_json(res.gamma),
        "det": str(res.gamma.det),
        "image": ser.point_to_json(res.image),
        "target": ser.vector_to_json(z),
        "eps": ser.rat_to_str(eps),
        "sq_error_upper": ser.rat_to_str(res.sq_error_upper),
    }
    if args.approx:
        out["image_approx"] = [float(c) for c in _mid(res.image)]
    return out


def _mid(p):
    return [p.basis.approx(r, 64).mid for r in p.coeffs]


def cmd_subspace_invariant(args, path):
    F = ser.subspace_from(_load(path), args.ambient_dim)
    inv = subspace_invariant(F)
    out = {**ser.subspace_invariant_to_json(inv), "d": d_min(F)}
    assert out["d"] == d_from_v(inv.dim, inv.volume)
    if args.approx:
        out["V_approx"] = float(inv.volume)
    return out


def cmd_subspace_equiv(args):
    F = ser.subspace_from(_load(args.F), args.ambient_dim)
    G = ser.subspace_from(_load(args.G), args.ambient_dim)
    if not equivalent_subspaces(F, G):
        raise Failure(EXIT_DOMAIN, "NotEquivalent", "(dim, V) invariants differ", {"equivalent": False})
    return {"equivalent": True, "witness": ser.matrix_to_json(witness_subspace(F, G))}


def cmd_measure(args, path):
    doc = _load(path)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ser.FormatError("measure input needs a 'kind'")
    kind = doc["kind"]
    if kind == "segment":
        value, i = lambda_segment(ser.vector_from(doc["a"]), ser.vector_from(doc["b"])), 1
    elif kind == "parallelotope":
        gens = [ser.vector_from(g) for g in doc["generators"]]
        i = int(doc.get("i", len(gens)))
        value = lambda_parallelotope(gens, i)
    elif kind == "complex":
        simplices = [RationalSimplex(tuple(ser.vector_from(p) for p in s)) for s in doc["simplices"]]
        cx = SimplicialComplex.generated_by(simplices, doc.get("n"))
        i = int(doc.get("i", cx.dim))
        value = lambda_complex(cx, i)
    else:
        raise ser.FormatError(f"unknown measure kind {kind!r}")
    out = {"kind": kind, "i": i, "lambda": ser.rat_to_str(value)}
    if args.approx:
        out["lambda_approx"] = float(value)
    return out


def cmd_random_unimodular(args):
    if args.ambient_dim is None or args.ambient_dim < 1:
        raise Failure(EXIT_MALFORMED, "MissingArgument", "--ambient-dim must be a positive integer")
    U = zl.random_unimodular(args.ambient_dim, args.steps, rng=random.Random(args.seed))
    return {"matrix": ser.matrix_to_json(U), "det": str(U.det), "seed": args.seed}


def _parse_rat(s: str, what: str) -> Fraction:
    try:
        return ser.rat_from(s)
    except ser.FormatError:
        raise Failure(EXIT_MALFORMED, "FormatError", f"{what}: expected a rational, got {s!r}") from None


def _parse_vector(s: str) -> tuple:
    s = s.strip()
    if s.startswith("["):
        try:
            return ser.vector_from(json.loads(s))
        except json.JSONDecodeError as exc:
            raise Failure(EXIT_MALFORMED, "FormatError", f"--target: {exc}") from None
    return tuple(_parse_rat(t, "--target") for t in s.split(","))


# dispatch ----------------------------------------------------------------

def _guard(fn: Callable, *a) -> tuple[int, Any]:
    try:
        return EXIT_OK, fn(*a)
    except Failure as f:
        return f.code, f.payload()
    except (ser.FormatError, ShapeError, KeyError, TypeError) as exc:
        return EXIT_MALFORMED, _err(type(exc).__name__, exc)
    except OrbitError as exc:
        return EXIT_DOMAIN, _err(exc.reason, exc)
    except ValueError as exc:
        return EXIT_MALFORMED, _err("ValueError", exc)


def _err(reason, exc) -> dict:
    msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
    return {"error": {"reason": reason, "message": msg}}


BATCH = {
    "point-invariant": cmd_point_invariant,
    "point-dense": cmd_point_dense,
    "subspace-invariant": cmd_subspace_invariant,
    "measure": cmd_measure,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="glorbit", description="GL(n,Z)-orbits of points and rational affine subspaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--approx", action="store_true", help="add lossy decimal fields")
        sp.add_argument("--ambient-dim", type=int, default=None)

    for name, help_ in [
        ("point-invariant", "canonical basis of H_x"),
        ("point-dense", "density decision with certificate"),
        ("subspace-invariant", "(dim, V) invariant and d_F"),
        ("measure", "rational measure of a segment, parallelotope or complex"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs="+", metavar="FILE")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for several files")
        common(sp)

    sp = sub.add_parser("point-equiv", help="decide x ~ y and emit a witness")
    sp.add_argument("x")
    sp.add_argument("y")
    common(sp)

    sp = sub.add_parser("subspace-equiv", help="decide F ~ G and emit a witness")
    sp.add_argument("F")
    sp.add_argument("G")
    common(sp)

    sp = sub.add_parser("dense-approx", help="gamma with |gamma x - target| < eps")
    sp.add_argument("x")
    sp.add_argument("--target", required=False)
    sp.add_argument("--eps", default="1/1000")
    sp.add_argument("--points-out", default=None, help="CSV of the orbit points visited")
    common(sp)

    sp = sub.add_parser("random-unimodular", help="random element of GL(n,Z)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int, default=20)
    common(sp)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    if args.command in BATCH:
        fn = BATCH[args.command]
        if len(args.inputs) == 1:
            code, doc = _guard(fn, args, args.inputs[0])
        else:
            with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
                results = list(pool.map(lambda f: _guard(fn, args, f), args.inputs))
            code = max(c for c, _ in results)
            doc = [{"file": f, "result": d} for f, (_, d) in zip(args.inputs, results)]
    else:
        fn = {
            "point-equiv": cmd_point_equiv,
            "subspace-equiv": cmd_subspace_equiv,
            "dense-approx": cmd_dense_approx,
            "random-unimodular": cmd_random_unimodular,
        }[args.command]
        code, doc = _guard(fn, args)
    json.dump(doc, out, sort_keys=True)
    out.write("\n")
    return code


def main() -> None:
    sys.exit(run())

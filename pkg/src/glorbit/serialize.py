"""Exact JSON encoding of rationals, matrices, symbolic points and subspaces.

Rationals are strings ``"p/q"`` in lowest terms with ``q > 0`` (integers are
written without the ``/1``). Floats are rejected on input: they would make
every downstream result inexact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from . import zlinalg as zl
from .affine_orbits import SubspaceInvariant
from .point_orbits import DensityCertificate, PointInvariant
from .ratgeom import RationalAffineSubspace, make_subspace
from .symbolic import SymbolicBasis, SymbolicPoint, make_constant


class FormatError(ValueError):
    """Malformed input document."""


_RAT = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def rat_to_str(x) -> str:
    return str(Fraction(x))


def rat_from(v: Any) -> Fraction:
    if isinstance(v, bool):
        raise FormatError(f"expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _RAT.match(v):
        try:
            return Fraction(v.replace(" ", ""))
        except ZeroDivisionError:
            raise FormatError(f"zero denominator in {v!r}") from None
    raise FormatError(f"expected an exact rational like \"3/4\", got {v!r}")


def int_from(v: Any) -> int:
    q = rat_from(v)
    if q.denominator != 1:
        raise FormatError(f"expected an integer, got {v!r}")
    return q.numerator


def vector_to_json(v) -> list:
    return [rat_to_str(a) for a in v]


def vector_from(v: Any) -> tuple:
    if not isinstance(v, list):
        raise FormatError(f"expected a list of rationals, got {v!r}")
    return tuple(rat_from(a) for a in v)


def matrix_to_json(M) -> list:
    rows = M.mat if hasattr(M, "mat") else M
    return [[str(int(a)) for a in r] for r in rows]


def matrix_from(v: Any) -> tuple:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise FormatError("expected a matrix as a list of rows")
    return tuple(tuple(int_from(a) for a in r) for r in v)


def unimodular_from(v: Any) -> zl.UnimodularMap:
    return zl.UnimodularMap(matrix_from(v))


# symbolic points -----------------------------------------------------------

def basis_to_json(B: SymbolicBasis) -> list:
    return [
        {"label": c.label, "approx_lo": rat_to_str(c.lo), "approx_hi": rat_to_str(c.hi)}
        for c in B.constants
    ]


def basis_from(v: Any) -> SymbolicBasis:
    if not isinstance(v, list) or not v:
        raise FormatError("basis must be a nonempty list")
    consts = []
    for item in v:
        if isinstance(item, str):
            item = {"label": item}
        if not isinstance(item, dict) or "label" not in item:
            raise FormatError(f"bad basis entry {item!r}")
        lo, hi = item.get("approx_lo"), item.get("approx_hi")
        lo = None if lo is None else rat_from(lo)
        hi = None if hi is None else rat_from(hi)
        consts.append(make_constant(str(item["label"]), lo, hi))
    if consts[0].label != "1":
        consts.insert(0, make_constant("1"))
    return SymbolicBasis(tuple(consts))


def point_to_json(x: SymbolicPoint) -> dict:
    return {"basis": basis_to_json(x.basis), "coords": [vector_to_json(r) for r in x.coeffs]}


def point_from(v: Any) -> SymbolicPoint:
    """A symbolic point document, or a plain list of rationals."""
    if isinstance(v, list):
        return SymbolicPoint.rational(vector_from(v))
    if not isinstance(v, dict) or "coords" not in v:
        raise FormatError("point needs 'coords'")
    if "basis" not in v:
        return SymbolicPoint.rational(vector_from(v["coords"]))
    B = basis_from(v["basis"])
    rows = []
    for r in v["coords"]:
        if isinstance(r, dict):
            rows.append({k: rat_from(a) for k, a in r.items()})
        elif isinstance(r, list):
            if len(r) != B.size:
                raise FormatError(f"coordinate row {r!r} does not match the basis size {B.size}")
            rows.append(tuple(rat_from(a) for a in r))
        else:
            rows.append({"1": rat_from(r)})
    return SymbolicPoint.from_coords(B, rows)


# subspaces -----------------------------------------------------------------

def subspace_to_json(F: RationalAffineSubspace) -> dict:
    return {"generators": [vector_to_json(g) for g in F.generators()]}


def subspace_from(v: Any, n: int | None = None) -> RationalAffineSubspace:
    if not isinstance(v, dict):
        raise FormatError("subspace must be an object with 'generators' or 'equations'")
    n = v.get("n", n)
    if "generators" in v:
        gens = [vector_from(g) for g in v["generators"]]
        return make_subspace(generators=gens, n=n)
    if "equations" in v:
        eq = v["equations"]
        if not isinstance(eq, dict) or "A" not in eq or "b" not in eq:
            raise FormatError("equations need 'A' and 'b'")
        A = [vector_from(r) for r in eq["A"]]
        b = vector_from(eq["b"])
        return make_subspace(equations=(A, b), n=n)
    raise FormatError("subspace must have 'generators' or 'equations'")


# results ------------------------------------------------------------------

def point_invariant_to_json(inv: PointInvariant) -> dict:
    return {
        "rank": inv.rank,
        "labels": list(inv.labels),
        "generators": [vector_to_json(g) for g in inv.generators],
    }


def point_invariant_from(v: dict) -> PointInvariant:
    return PointInvariant(
        int(v["rank"]), tuple(vector_from(g) for g in v["generators"]), tuple(v.get("labels", ()))
    )


def subspace_invariant_to_json(inv: SubspaceInvariant) -> dict:
    return {"dim": inv.dim, "V": rat_to_str(inv.volume)}


def subspace_invariant_from(v: dict) -> SubspaceInvariant:
    return SubspaceInvariant(int(v["dim"]), rat_from(v["V"]))


def density_to_json(cert: DensityCertificate, basis: SymbolicBasis) -> dict:
    if cert.dense:
        return {
            "dense": True,
            "generators": [vector_to_json(g) for g in cert.generators],
            "pair": list(cert.pair),
        }
    return {
        "dense": False,
        "p": [str(a) for a in cert.p],
        "xi": basis.render(cert.xi),
        "xi_coeffs": vector_to_json(cert.xi),
    }

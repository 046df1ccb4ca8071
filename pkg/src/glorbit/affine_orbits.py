"""GL(n,Z)-orbits of rational affine subspaces.

The pair ``(dim F, V_F)`` is a complete invariant, where ``V_F`` is the
(dim F + 1)-dimensional rational measure of the parallelotope spanned by the
vertices of a regular simplex of minimal-denominator points of ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import zlinalg as zl
from .errors import DenominatorMismatch, NotEquivalent, NotRegular
from .measure import lambda_parallelotope, qnorm
from .ratgeom import (
    RationalAffineSubspace,
    as_point,
    d_min,
    den,
    homog,
    is_regular,
    lattice_coordinates,
    make_subspace,
    regular_simplex_in,
    regular_simplex_through,
    scale_subspace,
)


@dataclass(frozen=True)
class SubspaceInvariant:
    dim: int
    volume: Fraction


def v_f(F: RationalAffineSubspace, simplex: Sequence | None = None) -> Fraction:
    """``V_F``; zero exactly when ``F`` passes through the origin.

    ``simplex`` may supply the minimal-denominator regular simplex to use.
    """
    if F.contains_origin:
        return Fraction(0)
    verts = regular_simplex_in(F) if simplex is None else [as_point(v) for v in simplex]
    return lambda_parallelotope(verts, F.dim + 1)


def subspace_invariant(F: RationalAffineSubspace) -> SubspaceInvariant:
    return SubspaceInvariant(F.dim, v_f(F))


def d_from_v(e: int, V) -> int:
    """Least ``k >= 1`` with ``k**(e+1) * V`` an integer."""
    V = Fraction(V)
    if V < 0:
        raise ValueError("volume must be nonnegative")
    q = V.denominator
    k = 1
    # k^(e+1) V integral iff q | k^(e+1); the answer divides q
    while (k ** (e + 1)) % q:
        k += 1
    return k


def filetto_point(F: RationalAffineSubspace) -> tuple:
    """A point ``v`` of ``F`` with ``den(v) == d_F`` and ``qnorm(v) == d_F**dim * V_F``."""
    if F.contains_origin:
        return (Fraction(0),) * F.n
    d = d_min(F)
    e = F.dim
    G = scale_subspace(F, d)
    verts = regular_simplex_in(G)
    if e == 0:
        w = verts[0]
    else:
        A, coords = _linear_chart(verts, F.n)
        w_local = _filetto_codim_one(coords)
        w = zl.mat_vec(zl.transpose(A), w_local)
    v = tuple(Fraction(c) / d for c in w)
    V = v_f(F)
    if not F.contains(v) or den(v) != d or qnorm(v) != d ** e * V:
        raise AssertionError("Filetto construction failed verification")
    return v


def _linear_chart(points, n):
    """Saturated basis ``A`` of the span of ``points`` and their integer coordinates."""
    A = zl.saturation_basis(points)
    coords = [lattice_coordinates(A, tuple(int(c) for c in p)) for p in points]
    return A, coords


def _filetto_codim_one(c):
    """Filetto point of the affine hyperplane through integer points ``c`` of Z^m.

    ``c`` (m points, m = dim + 1) spans a regular simplex of denominator 1 and
    its hull misses the origin.
    """
    m = len(c)
    c = [list(r) for r in c]
    U = tuple(map(tuple, c))
    if zl.det(U) < 0:
        c[0], c[1] = c[1], c[0]
    U = tuple(map(tuple, c))
    V = zl.det(U)
    assert V > 0
    diffs = [tuple(a - b for a, b in zip(ci, c[0])) for ci in c[1:]]
    rows = ((0,) * m + (1,),) + tuple(dv + (1,) for dv in diffs)
    C = zl.complete_to_basis(rows)
    z = list(C.mat[m])
    w = z[:m]
    if zl.det((tuple(w),) + tuple(diffs)) < 0:
        w = [-a for a in w]
    # z_{m+1} can be reset to 1 by adding multiples of (0, ..., 0, 1)
    assert zl.det((tuple(w),) + tuple(diffs)) == 1
    # w + sum k_i diffs_i keeps the determinant; round toward the c0 direction
    t = zl.mat_vec(zl.transpose(zl.rat_inverse((tuple(c[0]),) + tuple(diffs))), tuple(w))
    for k, dv in zip(t[1:], diffs):
        r = round(k)
        w = [a - r * b for a, b in zip(w, dv)]
    return tuple(V * a for a in w)


def gamma_from_regular_simplexes(vs: Sequence, ws: Sequence) -> zl.UnimodularMap:
    """The unique ``gamma`` in GL(n,Z) with ``gamma(v_i) == w_i``.

    Both ``conv(0, v_1..v_n)`` and ``conv(0, w_1..w_n)`` must be regular with
    ``den(v_i) == den(w_i)``.
    """
    vs = [as_point(v) for v in vs]
    ws = [as_point(w) for w in ws]
    n = len(vs)
    if len(ws) != n or any(len(v) != n for v in vs + ws):
        raise ValueError("need n points in R^n on each side")
    if [den(v) for v in vs] != [den(w) for w in ws]:
        raise DenominatorMismatch("den(v_i) != den(w_i)")
    zero = (Fraction(0),) * n
    for pts in (vs, ws):
        if not is_regular([zero] + pts):
            raise NotRegular(f"conv(0, {pts}) is not regular")
    Vt = zl.transpose(tuple(homog(p) for p in [zero] + vs))
    Wt = zl.transpose(tuple(homog(p) for p in [zero] + ws))
    C = zl.mat_mul(Wt, zl.UnimodularMap(Vt).inverse().mat)
    assert C[n] == (0,) * n + (1,) and all(r[n] == 0 for r in C[:n])
    gamma = zl.UnimodularMap(tuple(r[:n] for r in C[:n]))
    assert all(gamma(v) == w for v, w in zip(vs, ws))
    return gamma


def equivalent_subspaces(F: RationalAffineSubspace, G: RationalAffineSubspace) -> bool:
    if F.n != G.n:
        raise ValueError("subspaces live in different ambient spaces")
    return subspace_invariant(F) == subspace_invariant(G)


def _chart(F: RationalAffineSubspace):
    """``(alpha, alpha^-1, m)``: alpha maps the linear span of ``F`` onto R^m x 0."""
    pts = regular_simplex_in(F)
    if F.contains_origin:
        pts = [p for p in pts if any(p)] or []
    S = zl.saturation_basis(pts) if pts else ()
    m = len(S)
    C = zl.complete_to_basis(S, F.n) if S else zl.UnimodularMap.identity(F.n)
    inv = zl.UnimodularMap(zl.transpose(C.mat), _checked=True)
    return inv.inverse(), inv, m


def _restrict(F: RationalAffineSubspace, alpha: zl.UnimodularMap, m: int) -> RationalAffineSubspace:
    image = F.transform(alpha)
    rows = [r[:m] + (r[-1],) for r in image.lattice]
    assert all(not any(r[m:-1]) for r in image.lattice)
    return RationalAffineSubspace(m, zl.hnf_rows(rows))


def witness_subspace(F: RationalAffineSubspace, G: RationalAffineSubspace) -> zl.UnimodularMap:
    """A ``gamma`` in GL(n,Z) with ``gamma(F) == G`` (checked on canonical lattices)."""
    if not equivalent_subspaces(F, G):
        raise NotEquivalent("(dim, V) invariants differ")
    n = F.n
    aF, aF_inv, m = _chart(F)
    aG, aG_inv, mG = _chart(G)
    assert m == mG
    if m == 0:
        local = ()
    elif F.contains_origin:
        # both are the coordinate subspace R^m x 0 after charting
        local = zl.identity(m)
    else:
        local = _witness_hyperplanes(_restrict(F, aF, m), _restrict(G, aG, m)).mat
    block = zl.block_diag(local, zl.identity(n - m)) if m else zl.identity(n)
    gamma = aG_inv @ zl.UnimodularMap(block, _checked=True) @ aF
    if F.transform(gamma) != G:
        raise AssertionError("witness failed verification")
    return gamma


def _witness_hyperplanes(F: RationalAffineSubspace, G: RationalAffineSubspace) -> zl.UnimodularMap:
    """Witness for equivalent affine hyperplanes of R^m that miss the origin."""
    v = filetto_point(F)
    w = filetto_point(G)
    vs = regular_simplex_through(F, v)[1:]
    ws = regular_simplex_through(G, w)[1:]
    v1 = tuple(c / qnorm(v) for c in v)
    w1 = tuple(c / qnorm(w) for c in w)
    return gamma_from_regular_simplexes([v1] + vs, [w1] + ws)


__all__ = [
    "SubspaceInvariant",
    "v_f",
    "subspace_invariant",
    "d_from_v",
    "scale_subspace",
    "filetto_point",
    "gamma_from_regular_simplexes",
    "equivalent_subspaces",
    "witness_subspace",
    "make_subspace",
]

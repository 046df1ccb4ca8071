"""The rational measure lambda_i on the pieces where it can be evaluated exactly.

Three shapes are supported: caller-supplied regular simplicial complexes,
segments, and parallelotopes spanned by rational vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from . import zlinalg as zl
from .errors import NotRegular, UnsupportedDimension
from .ratgeom import (
    SimplicialComplex,
    as_point,
    d_min,
    den_simplex,
    is_regular,
    make_subspace,
)


def dimensional_part(cx: SimplicialComplex, i: int) -> SimplicialComplex:
    """Subcomplex generated by the maximal ``i``-simplexes of ``cx``."""
    return SimplicialComplex.generated_by(cx.maximal(i), cx.n, validate=False)


def lambda_complex(cx: SimplicialComplex, i: int) -> Fraction:
    """Sum of ``1 / (i! den(T))`` over maximal ``i``-simplexes ``T`` of a regular complex."""
    # faces of regular simplexes are regular, so maximal ones suffice
    for s in cx.maximal():
        if not is_regular(s):
            raise NotRegular(f"{s} is not regular", simplex=s)
    if i < 0:
        return Fraction(0)
    return sum((Fraction(1, factorial(i) * den_simplex(t)) for t in cx.maximal(i)), Fraction(0))


def lambda_segment(a: Sequence, b: Sequence) -> Fraction:
    """lambda_1 of the segment ``conv(a, b)``.

    With ``b - a = c p`` for a primitive integer vector ``p`` and ``c > 0``,
    the value is ``c / d`` where ``d`` is the least denominator of a rational
    point on the line through ``a`` and ``b``. A degenerate segment gives 0.
    """
    a, b = as_point(a), as_point(b)
    if a == b:
        return Fraction(0)
    w = tuple(y - x for x, y in zip(a, b))
    p = zl.primitive_part(w)
    k = next(i for i, c in enumerate(p) if c)
    c = w[k] / p[k]
    line = make_subspace(generators=[a, b])
    return c / d_min(line)


def qnorm(w: Sequence) -> Fraction:
    """``lambda_1(conv(0, w))``."""
    w = as_point(w)
    return lambda_segment((0,) * len(w), w)


def lambda_parallelotope(generators: Sequence[Sequence], i: int | None = None) -> Fraction:
    """lambda_k of the parallelotope spanned by ``k`` rational vectors.

    Only ``i == k`` is supported. Dependent generators give 0.
    """
    gens = tuple(as_point(g) for g in generators)
    k = len(gens)
    if i is None:
        i = k
    if i != k:
        raise UnsupportedDimension(f"lambda_{i} of a {k}-generated parallelotope is not supported")
    if k == 0:
        return Fraction(1)
    if zl.rank(gens) < k:
        return Fraction(0)
    B = zl.saturation_basis(gens)
    coords = tuple(_coordinates(B, g) for g in gens)
    return abs(Fraction(zl.det(coords)))


def _coordinates(B, v):
    # rational y with y @ B == v (B has independent rows)
    k = len(B)
    aug = tuple(tuple(B[r][j] for r in range(k)) + (v[j],) for j in range(len(v)))
    R, piv = zl.rref(aug)
    y = [Fraction(0)] * k
    for row, p in zip(R, piv):
        y[p] = row[-1]
    return tuple(y)

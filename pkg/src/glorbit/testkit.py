"""Independent oracles used to cross-check the main routines."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import zlinalg as zl
from .errors import UnsupportedSize
from .ratgeom import (
    RationalSimplex,
    SimplicialComplex,
    as_point,
    dehomog,
    homog,
    lattice_coordinates,
)

MAX_MEDIANT_SPLITS = 100_000


def enumerate_unimodular(n: int, bound: int) -> Iterator[zl.UnimodularMap]:
    """Every integer n x n matrix with entries in [-bound, bound] and det +-1.

    Matrices come in lexicographic order of their row-major entries.
    """
    if n not in (1, 2, 3) or not 0 <= bound <= 3:
        raise UnsupportedSize(f"enumeration supports n in 1..3 and bound <= 3, got ({n}, {bound})")
    vals = range(-bound, bound + 1)
    if n == 1:
        for a in vals:
            if a in (1, -1):
                yield zl.UnimodularMap(((a,),), _checked=True)
        return
    if n == 2:
        for a, b, c, d in itertools.product(vals, repeat=4):
            if a * d - b * c in (1, -1):
                yield zl.UnimodularMap(((a, b), (c, d)), _checked=True)
        return
    rows = np.array(list(itertools.product(vals, repeat=3)), dtype=np.int64)
    for r1 in rows:
        cross = np.cross(r1, rows)              # (R, 3): r1 x r2 for every r2
        dets = cross @ rows.T                  # (R, R): (r1 x r2) . r3
        i2, i3 = np.nonzero(np.abs(dets) == 1)
        for a, b in zip(i2, i3):
            yield zl.UnimodularMap(
                (tuple(int(x) for x in r1), tuple(int(x) for x in rows[a]),
                 tuple(int(x) for x in rows[b])),
                _checked=True,
            )


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def mediant_regularize_segment(a: Sequence, b: Sequence, *, validate: bool = True) -> SimplicialComplex:
    """Regular triangulation of ``conv(a, b)`` by Farey mediant insertion.

    The lifts of the segment span a rank-2 saturated lattice. Starting from a
    regular pair ``(a~, c)`` whose cone contains ``b~``, the Stern-Brocot walk
    repeatedly takes the mediant of the current pair and keeps the half that
    still contains ``b~``. Every mediant that lands inside the segment becomes
    a subdivision point; all resulting pieces are regular by construction.
    """
    a, b = as_point(a), as_point(b)
    if a == b:
        raise ValueError("degenerate segment")
    ha, hb = homog(a), homog(b)
    basis = zl.saturation_basis((ha, hb))
    A = lattice_coordinates(basis, ha)
    B = lattice_coordinates(basis, hb)
    s = 1 if _det2(A, B) > 0 else -1
    if _det2(A, B) * s == 1:
        cuts = []
    else:
        g, x, y = _ext_gcd(A[0], A[1])
        # c0 completes A to a basis with det(A, c0) = s
        c0 = (-y * s * g, x * s * g)
        alpha = _det2(B, c0) * s
        beta = _det2(A, B) * s
        k = alpha // beta
        L, R = A, (c0[0] + k * A[0], c0[1] + k * A[1])
        cuts = []
        for _ in range(MAX_MEDIANT_SPLITS):
            M = (L[0] + R[0], L[1] + R[1])
            side = _det2(M, B) * s
            if side == 0:
                break
            if side > 0:
                cuts.append(M)
                L = M
            else:
                R = M
        else:
            raise RuntimeError("mediant walk did not reach the endpoint")
    path = [ha] + [tuple(y0 * u + y1 * w for u, w in zip(basis[0], basis[1])) for y0, y1 in cuts] + [hb]
    pts = [dehomog(h) for h in path]
    pieces = [RationalSimplex((p, q)) for p, q in zip(pts, pts[1:])]
    return SimplicialComplex.generated_by(pieces, len(a), validate=validate)


def gram_sq_volume(generators: Sequence[Sequence]) -> Fraction:
    """Squared k-dimensional volume of the parallelotope: det of the Gram matrix."""
    gens = tuple(as_point(g) for g in generators)
    gram = tuple(tuple(sum(x * y for x, y in zip(u, v)) for v in gens) for u in gens)
    return Fraction(zl.det(gram))

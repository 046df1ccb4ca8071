"""Rational points, Farey regular simplexes and rational affine subspaces.

Points are plain tuples of :class:`fractions.Fraction`. A rational affine
subspace ``F`` of R^n is stored through the saturated lattice

    L_F = span{lift(v) : v in F with rational coordinates}  intersected with Z^(n+1)

in Hermite normal form, where ``lift(v) = (den(v)*v, den(v))``. Two subspaces
are equal exactly when these HNF matrices agree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import zlinalg as zl
from ._lp import lp_max
from .errors import DegenerateSimplex, EmptySubspace, InvalidComplex, ShapeError

Point = tuple  # tuple[Fraction, ...]


def as_point(coords: Iterable) -> Point:
    return tuple(zl.as_fraction(c) for c in coords)


def den(x: Sequence) -> int:
    """Least common denominator of the coordinates; ``den(0) == 1``."""
    return zl.common_denominator(x)


def homog(x: Sequence) -> tuple[int, ...]:
    """Homogeneous correspondent ``(den(x)*x_1, ..., den(x)*x_n, den(x))``."""
    d = den(x)
    return tuple(int(Fraction(c) * d) for c in x) + (d,)


def dehomog(h: Sequence[int]) -> Point:
    h = tuple(h)
    if not h or h[-1] <= 0:
        raise ValueError(f"{h} has non-positive last coordinate")
    if zl.vec_gcd(h) != 1:
        raise ValueError(f"{h} is not primitive")
    return tuple(Fraction(c, h[-1]) for c in h[:-1])


def point_from_lattice_vector(h: Sequence[int]) -> Point:
    """The point whose lift lies on the ray of ``h`` (last entry positive)."""
    if h[-1] <= 0:
        raise ValueError(f"{tuple(h)} does not represent a point")
    return tuple(Fraction(c, h[-1]) for c in h[:-1])


def affinely_independent(points: Sequence[Point]) -> bool:
    if not points:
        return False
    base = points[0]
    diffs = tuple(tuple(a - b for a, b in zip(p, base)) for p in points[1:])
    return zl.rank(diffs) == len(diffs) if diffs else True


def lift_matrix(points: Sequence[Point]) -> zl.Matrix:
    return tuple(homog(p) for p in points)


# ---------------------------------------------------------------------------
# simplexes and complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalSimplex:
    """Convex hull of affinely independent rational points (vertex order ignored)."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(sorted({as_point(v) for v in self.vertices}))
        if len(verts) != len(self.vertices):
            raise DegenerateSimplex("repeated vertex")
        if len({len(v) for v in verts}) != 1:
            raise ShapeError("vertices of different dimensions")
        if not affinely_independent(verts):
            raise DegenerateSimplex(f"vertices {verts} are affinely dependent")
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    def faces(self) -> Iterable["RationalSimplex"]:
        for k in range(1, len(self.vertices) + 1):
            for sub in itertools.combinations(self.vertices, k):
                yield RationalSimplex(sub)

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"RationalSimplex[{vs}]"


def is_regular(S) -> bool:
    """Farey regularity: vertex lifts extend to a basis of Z^(n+1)."""
    verts = S.vertices if isinstance(S, RationalSimplex) else tuple(as_point(v) for v in S)
    diag = zl.smith_diagonal(lift_matrix(verts))
    return len(diag) == len(verts) and all(d == 1 for d in diag)


def den_simplex(S) -> int:
    verts = S.vertices if isinstance(S, RationalSimplex) else S
    out = 1
    for v in verts:
        out *= den(v)
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite face-closed set of rational simplexes meeting in common faces."""

    simplices: frozenset
    n: int
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        simplices = frozenset(self.simplices)
        object.__setattr__(self, "simplices", simplices)
        if any(s.n != self.n for s in simplices):
            raise ShapeError("simplex outside the ambient dimension")
        if self.validate:
            self._check()

    @classmethod
    def generated_by(cls, simplices: Iterable, n: int | None = None, *, validate: bool = True):
        """Close a collection of simplexes (or vertex lists) under faces."""
        simps = [s if isinstance(s, RationalSimplex) else RationalSimplex(tuple(s)) for s in simplices]
        if n is None:
            if not simps:
                raise ShapeError("ambient dimension needed for an empty complex")
            n = simps[0].n
        closed = {f for s in simps for f in s.faces()}
        return cls(frozenset(closed), n, validate)

    def _check(self):
        for s in self.simplices:
            for f in s.faces():
                if f not in self.simplices:
                    raise InvalidComplex(f"face {f} of {s} is missing")
        top = self.maximal()
        for s, t in itertools.combinations(top, 2):
            if not _meet_in_common_face(s, t):
                raise InvalidComplex(f"{s} and {t} do not meet in a common face")

    def maximal(self, i: int | None = None) -> list:
        """Maximal simplexes (optionally only those of dimension ``i``)."""
        out = []
        by_vertices = [frozenset(s.vertices) for s in self.simplices]
        for s, vs in zip(self.simplices, by_vertices):
            if i is not None and s.dim != i:
                continue
            if not any(vs < other for other in by_vertices):
                out.append(s)
        return sorted(out, key=lambda s: (s.dim, s.vertices))

    @property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    def vertices(self) -> list:
        return sorted({v for s in self.simplices for v in s.vertices})

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(sorted(self.simplices, key=lambda s: (s.dim, s.vertices)))


def _meet_in_common_face(s: RationalSimplex, t: RationalSimplex) -> bool:
    common = set(s.vertices) & set(t.vertices)
    ns, nt, n = len(s.vertices), len(t.vertices), s.n
    A = [[1] * ns + [0] * nt, [0] * ns + [1] * nt]
    for k in range(n):
        A.append([v[k] for v in s.vertices] + [-w[k] for w in t.vertices])
    b = [1, 1] + [0] * n
    c = [0 if v in common else 1 for v in s.vertices] + [0] * nt
    best = lp_max(c, A, b)
    if best is None:
        return not common
    return bool(common) and best == 0


# ---------------------------------------------------------------------------
# rational affine subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalAffineSubspace:
    """Canonical lattice form of a nonempty rational affine subspace of R^n."""

    n: int
    lattice: zl.Matrix

    def __post_init__(self):
        lat = zl.matrix(self.lattice, integer=True)
        if not lat or any(len(r) != self.n + 1 for r in lat):
            raise ShapeError("lattice rows must live in Z^(n+1)")
        if all(r[-1] == 0 for r in lat):
            raise EmptySubspace("lattice has no point with positive last coordinate")
        object.__setattr__(self, "lattice", lat)

    @property
    def dim(self) -> int:
        return len(self.lattice) - 1

    def contains(self, x: Sequence) -> bool:
        h = homog(as_point(x))
        return zl.rank(self.lattice + (h,)) == len(self.lattice)

    @property
    def contains_origin(self) -> bool:
        return self.contains((0,) * self.n)

    def transform(self, g) -> "RationalAffineSubspace":
        """Image under a :class:`UnimodularMap` or :class:`AffineUnimodularMap`."""
        if isinstance(g, zl.AffineUnimodularMap):
            U, b = g.linear, g.translation
        else:
            U, b = g, (0,) * self.n
        rows = []
        for r in self.lattice:
            x, t = r[:-1], r[-1]
            rows.append(tuple(a + t * bb for a, bb in zip(U(x), b)) + (t,))
        return RationalAffineSubspace(self.n, zl.hnf_rows(rows))

    def equations(self) -> tuple[zl.Matrix, tuple]:
        """Integer ``(A, b)`` with ``F = {x : A x = b}`` (empty ``A`` for R^n)."""
        K = zl.integer_kernel(self.lattice)
        A = tuple(r[:-1] for r in K)
        b = tuple(-r[-1] for r in K)
        return A, b

    def generators(self) -> list:
        """Affinely independent rational points spanning ``F``."""
        return regular_simplex_in(self)


def make_subspace(generators: Sequence | None = None, equations=None,
                  n: int | None = None) -> RationalAffineSubspace:
    """Build a subspace from affine generators or from equations ``A x = b``."""
    if (generators is None) == (equations is None):
        raise ValueError("give exactly one of generators or equations")
    if generators is not None:
        pts = [as_point(p) for p in generators]
        if not pts:
            raise EmptySubspace("no generators")
        n = len(pts[0]) if n is None else n
        if any(len(p) != n for p in pts):
            raise ShapeError("generator of the wrong dimension")
        return RationalAffineSubspace(n, zl.saturation_basis(lift_matrix(pts)))
    A, b = equations
    A = [as_point(r) for r in A]
    b = as_point(b)
    if len(A) != len(b):
        raise ShapeError("A and b have different numbers of rows")
    if n is None:
        if not A:
            raise ShapeError("ambient dimension needed when there are no equations")
        n = len(A[0])
    if any(len(r) != n for r in A):
        raise ShapeError("equation of the wrong dimension")
    rows = [zl.clear_denominators(tuple(r) + (-bb,)) for r, bb in zip(A, b)]
    K = zl.integer_kernel(rows) if rows else zl.identity(n + 1)
    if not K or all(r[-1] == 0 for r in K):
        raise EmptySubspace("inconsistent equations")
    return RationalAffineSubspace(n, K)


def d_min(F: RationalAffineSubspace) -> int:
    """Least denominator of a rational point of ``F``."""
    return zl.vec_gcd(r[-1] for r in F.lattice)


def _split_basis(F: RationalAffineSubspace) -> zl.Matrix:
    """Lattice basis ``b_0, ..., b_e`` whose last coordinates are ``(d_F, 0, ..., 0)``."""
    col = tuple((r[-1],) for r in F.lattice)
    H, U = zl.hnf(col)
    return zl.mat_mul(U.mat, F.lattice)


def _simplex_from_basis(B) -> list:
    b0 = B[0]
    lifts = [b0] + [tuple(a + c for a, c in zip(b, b0)) for b in B[1:]]
    return [dehomog(h) for h in lifts]


def regular_simplex_in(F: RationalAffineSubspace, rng: random.Random | None = None) -> list:
    """``dim F + 1`` points of ``F``, each of denominator ``d_F``, spanning a regular simplex.

    With ``rng`` the basis is scrambled first, giving a different valid answer.
    """
    B = [list(r) for r in _split_basis(F)]
    if rng is not None and len(B) > 1:
        e = len(B) - 1
        W = zl.random_unimodular(e, 3 * e + 2, rng=rng)
        rest = zl.mat_mul(W.mat, tuple(map(tuple, B[1:])))
        b0 = list(B[0])
        for r in rest:
            k = rng.randint(-2, 2)
            b0 = [a + k * c for a, c in zip(b0, r)]
        B = [b0] + [list(r) for r in rest]
    return _simplex_from_basis(tuple(map(tuple, B)))


def regular_simplex_through(F: RationalAffineSubspace, v0: Sequence) -> list:
    """Regular simplex of minimal-denominator points of ``F`` with ``v0`` first."""
    v0 = as_point(v0)
    d = d_min(F)
    if den(v0) != d or not F.contains(v0):
        raise ValueError(f"{v0} is not a point of F with denominator d_F={d}")
    h0 = homog(v0)
    coords = lattice_coordinates(F.lattice, h0)
    C = zl.complete_to_basis((coords,))
    B = zl.mat_mul(C.mat, F.lattice)
    assert B[0] == h0
    rest = [tuple(a - (b[-1] // d) * c for a, c in zip(b, h0)) for b in B[1:]]
    # the rest spans the fixed lattice of F's direction; its HNF keeps entries small
    rest = zl.hnf_rows(rest) if rest else ()
    return _simplex_from_basis((h0,) + tuple(rest))


def lattice_coordinates(basis: zl.Matrix, v: Sequence) -> tuple[int, ...]:
    """Integer ``y`` with ``y @ basis == v``; raises ``ValueError`` if none exists."""
    k = len(basis)
    aug = tuple(tuple(basis[i][j] for i in range(k)) + (v[j],) for j in range(len(v)))
    R, piv = zl.rref(aug)
    if k in piv:
        raise ValueError("vector is outside the span")
    y = [Fraction(0)] * k
    for row, p in zip(R, piv):
        y[p] = row[-1]
    if any(c.denominator != 1 for c in y):
        raise ValueError("vector is outside the lattice")
    y = tuple(int(c) for c in y)
    if zl.mat_vec(zl.transpose(basis), y) != tuple(v):
        raise ValueError("vector is outside the span")
    return y


def scale_subspace(F: RationalAffineSubspace, d: int) -> RationalAffineSubspace:
    """The subspace ``d F = {d x : x in F}``."""
    if d <= 0:
        raise ValueError("scale factor must be a positive integer")
    rows = [tuple(d * c for c in r[:-1]) + (r[-1],) for r in F.lattice]
    return RationalAffineSubspace(F.n, zl.saturation_basis(rows))

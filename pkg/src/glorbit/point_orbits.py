"""GL(n,Z)-orbits of points: the group H_x, witnesses, density and approximation.

For ``x`` in R^n, ``H_x = Z x_1 + ... + Z x_n`` is a complete orbit invariant.
Coordinates are :class:`~glorbit.symbolic.SymbolicPoint` rows over a basis of
Q-independent constants, so ``H_x`` is the Z-module spanned by those rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from . import zlinalg as zl
from .errors import BasisMismatch, CannotFixSign, NotDense, NotEquivalent, PrecisionExhausted
from .ratgeom import as_point
from .symbolic import Interval, SymbolicPoint

MAX_EUCLID_STEPS = 100_000


@dataclass(frozen=True)
class PointInvariant:
    """Canonical Z-basis of H_x in reduced rational Hermite form."""

    rank: int
    generators: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.generators) != self.rank:
            raise ValueError("rank must equal the number of generators")


def _integer_rows(rows):
    D = zl.common_denominator(a for r in rows for a in r)
    return D, tuple(tuple(a.numerator * (D // a.denominator) for a in r) for r in rows)


def h_invariant(x: SymbolicPoint) -> PointInvariant:
    """Canonical basis of the group generated by the coordinates of ``x``."""
    D, N = _integer_rows(x.coeffs)
    if not any(any(r) for r in N):
        return PointInvariant(0, (), x.basis.labels)
    H = zl.hnf_rows(N)
    gens = tuple(tuple(Fraction(a, D) for a in r) for r in H)
    return PointInvariant(len(gens), gens, x.basis.labels)


def _same_basis(x: SymbolicPoint, y: SymbolicPoint):
    if x.basis != y.basis:
        raise BasisMismatch(f"bases {x.basis.labels} and {y.basis.labels} differ")
    if x.n != y.n:
        raise BasisMismatch(f"points live in R^{x.n} and R^{y.n}")


def equivalent_points(x: SymbolicPoint, y: SymbolicPoint) -> bool:
    _same_basis(x, y)
    return h_invariant(x) == h_invariant(y)


def _reduction(x: SymbolicPoint) -> tuple[zl.UnimodularMap, zl.UnimodularMap, int]:
    """``(alpha, alpha^-1, e)`` with ``alpha(x)`` supported on its first ``e`` coordinates.

    The rows of ``alpha^-1`` transposed start with a Z-basis of the smallest
    rational linear subspace containing ``x``.
    """
    n = x.n
    cols = zl.transpose(x.coeffs)
    S = zl.saturation_basis(cols)
    e = len(S)
    C = zl.complete_to_basis(S, n) if S else zl.UnimodularMap.identity(n)
    inv = zl.UnimodularMap(zl.transpose(C.mat), _checked=True)
    return inv.inverse(), inv, e


def witness_point(x: SymbolicPoint, y: SymbolicPoint, want_det_plus: bool = False) -> zl.UnimodularMap:
    """A ``gamma`` in GL(n,Z) with ``gamma(x) == y`` (checked exactly).

    With ``want_det_plus`` the result lies in SL(n,Z). That is possible
    whenever ``rank(H_x) < n``; otherwise ``gamma`` is unique and
    :class:`CannotFixSign` is raised if its determinant is -1.
    """
    _same_basis(x, y)
    if h_invariant(x) != h_invariant(y):
        raise NotEquivalent("H_x and H_y differ")
    n = x.n
    alpha, _, e = _reduction(x)
    beta, beta_inv, e_y = _reduction(y)
    assert e == e_y
    xp = zl.mat_mul(alpha.mat, x.coeffs)
    yp = zl.mat_mul(beta.mat, y.coeffs)
    assert not any(any(r) for r in xp[e:]) and not any(any(r) for r in yp[e:])
    delta = _change_of_basis(xp[:e], yp[:e])
    block = zl.block_diag(delta, zl.identity(n - e)) if e else zl.identity(n)
    gamma = beta_inv @ zl.UnimodularMap(block, _checked=True) @ alpha
    if want_det_plus and gamma.det == -1:
        if e == n:
            raise CannotFixSign("rank(H_x) = n, so the witness is unique and has det -1")
        flip = [list(r) for r in block]
        flip[n - 1] = [-a for a in flip[n - 1]]
        gamma = beta_inv @ zl.UnimodularMap(tuple(map(tuple, flip)), _checked=True) @ alpha
    if x.apply(gamma) != y:
        raise AssertionError("witness failed exact verification")
    return gamma


def _change_of_basis(X, Y):
    """Integer ``delta`` with ``delta @ X == Y`` for two bases of one module."""
    e = len(X)
    if e == 0:
        return ()
    _, piv = zl.rref(X)
    XP = tuple(tuple(r[j] for j in piv) for r in X)
    YP = tuple(tuple(r[j] for j in piv) for r in Y)
    delta = zl.mat_mul(YP, zl.rat_inverse(XP))
    if any(Fraction(a).denominator != 1 for r in delta for a in r):
        raise NotEquivalent("bases are not related by an integer matrix")
    delta = tuple(tuple(int(a) for a in r) for r in delta)
    if zl.mat_mul(delta, X) != tuple(Y):
        raise NotEquivalent("bases are not related by an integer matrix")
    if zl.det(delta) not in (1, -1):
        raise NotEquivalent("change of basis is not unimodular")
    return delta


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityCertificate:
    """Evidence for :func:`is_dense`.

    Dense: ``generators`` holds two independent elements of H_x and ``pair``
    two coordinates with irrational ratio. Not dense: ``x = xi * p`` with
    ``p`` primitive and ``xi > 0`` (coefficients over the basis), so the
    orbit avoids the open ball of radius ``xi`` about the origin.
    """

    dense: bool
    p: tuple | None = None
    xi: tuple | None = None
    generators: tuple = ()
    pair: tuple | None = None


def is_dense(x: SymbolicPoint) -> tuple[bool, DensityCertificate]:
    """Is the GL(n,Z)-orbit of ``x`` dense in R^n?  Dense iff rank(H_x) >= 2."""
    inv = h_invariant(x)
    if inv.rank >= 2:
        pair = _independent_pair(x)
        return True, DensityCertificate(True, generators=inv.generators[:2], pair=pair)
    if inv.rank == 0:
        return False, DensityCertificate(False, p=(0,) * x.n, xi=(Fraction(0),) * x.basis.size)
    h = inv.generators[0]
    k = next(j for j, a in enumerate(h) if a)
    p = [int(r[k] / h[k]) for r in x.coeffs]
    if x.basis.sign(h) < 0:
        h = tuple(-a for a in h)
        p = [-a for a in p]
    return False, DensityCertificate(False, p=tuple(p), xi=h)


def _independent_pair(x: SymbolicPoint) -> tuple[int, int]:
    rows = x.coeffs
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if zl.rank((rows[i], rows[j])) == 2:
                return (i, j)
    raise AssertionError("rank >= 2 but no independent pair")


# ---------------------------------------------------------------------------
# dense-orbit approximation
# ---------------------------------------------------------------------------

@dataclass
class Approximation:
    """Result of :func:`approx_orbit_certified`."""

    gamma: zl.UnimodularMap
    image: SymbolicPoint
    sq_error_upper: Fraction
    trace: list = field(default_factory=list)


def _sq_dist_interval(x: SymbolicPoint, z: Sequence, bits: int) -> Interval:
    acc = Interval.point(0)
    for row, zi in zip(x.coeffs, z):
        diff = (row[0] - zi,) + tuple(row[1:])
        acc = acc + x.basis.enclose(diff, bits).square()
    return acc


def certify_distance(x: SymbolicPoint, z: Sequence, eps) -> tuple[bool, Fraction]:
    """Decide ``|x - z| < eps`` by interval arithmetic; also return the bound used.

    Raises :class:`PrecisionExhausted` when the maximal precision cannot decide.
    """
    z = as_point(z)
    eps2 = Fraction(eps) ** 2
    big = max((abs(a).numerator.bit_length() for r in x.coeffs for a in r), default=0)
    bits = max(32, big + 32)
    while True:
        iv = _sq_dist_interval(x, z, bits)
        if iv.hi < eps2:
            return True, iv.hi
        if iv.lo >= eps2:
            return False, iv.lo
        if bits >= x.basis.max_bits:
            raise PrecisionExhausted("cannot certify the distance to the target")
        bits = min(2 * bits, x.basis.max_bits)


class _Shrinker:
    """Unimodular moves on a basis of H_x, tracked by an e x e matrix."""

    def __init__(self, basis, gens):
        self.basis = basis
        self.g = [list(r) for r in gens]
        self.T = [list(r) for r in zl.identity(len(gens))]

    def value(self, i) -> Interval:
        return self.basis.approx(self.g[i], 64)

    def magnitude(self, i) -> Fraction:
        return self.value(i).magnitude()

    def ratio(self, i, j) -> Fraction:
        a, b = self.value(i), self.value(j)
        if b.lo <= 0 <= b.hi:
            raise PrecisionExhausted("cannot separate a basis element from zero")
        return a.mid / b.mid

    def add(self, i, j, q):
        # g_i += q g_j
        if q:
            self.g[i] = [a + q * b for a, b in zip(self.g[i], self.g[j])]
            self.T[i] = [a + q * b for a, b in zip(self.T[i], self.T[j])]

    def swap(self, i, j):
        self.g[i], self.g[j] = self.g[j], self.g[i]
        self.T[i], self.T[j] = self.T[j], self.T[i]

    def matrix(self):
        return tuple(map(tuple, self.T))


def _round(q: Fraction) -> int:
    return floor(q + Fraction(1, 2))


def approx_orbit_certified(x: SymbolicPoint, z: Sequence, eps, *, max_rounds: int = 12,
                           trace: bool = False) -> Approximation:
    """Find ``gamma`` in GL(n,Z) with ``|gamma(x) - z| < eps``, certified by intervals.

    The construction maps ``x`` to ``(g_1, ..., g_e, 0, ..., 0)`` with ``g`` a
    basis of H_x, shrinks ``g`` by the Euclidean algorithm on an irrational
    pair, slides the first basis element along the axis to the target
    multiple, and carries the first axis onto the primitive direction of ``z``.
    """
    dense, _ = is_dense(x)
    if not dense:
        raise NotDense("rank(H_x) < 2, the orbit is discrete")
    z = as_point(z)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if len(z) != x.n:
        raise ValueError("target has the wrong dimension")
    n = x.n
    ok, bound = certify_distance(x, z, eps)
    if ok:
        return Approximation(zl.UnimodularMap.identity(n), x, bound)

    alpha, _, e = _reduction(x)
    xp = zl.mat_mul(alpha.mat, x.coeffs)
    gens = xp[:e]
    if any(z):
        p = zl.primitive_part(z)
        k = next(i for i, c in enumerate(p) if c)
        c = z[k] / p[k]
        eta = zl.UnimodularMap(zl.transpose(zl.complete_to_basis((p,)).mat), _checked=True)
    else:
        c = Fraction(0)
        eta = zl.UnimodularMap.identity(n)
    frob2 = sum(a * a for r in eta.mat for a in r)
    basis = x.basis
    points = []

    t2 = eps * eps / (4 * e * frob2)
    for _ in range(max_rounds):
        sh = _Shrinker(basis, gens)
        # Euclid on the first two elements; their ratio is irrational
        for _ in range(MAX_EUCLID_STEPS):
            if sh.magnitude(0) < sh.magnitude(1):
                sh.swap(0, 1)
            m0, m1 = sh.magnitude(0), sh.magnitude(1)
            if m0 * m0 < t2 and m1 * m1 < t2:
                break
            w = max(sh.value(0).width, sh.value(1).width)
            if w * w >= t2:
                raise PrecisionExhausted("constant enclosures are too wide for the requested eps")
            sh.add(0, 1, -_round(sh.ratio(0, 1)))
            if trace:
                points.append(_approx_coords(x.apply(_compose(eta, sh.matrix(), alpha, e, n))))
        else:
            raise PrecisionExhausted("basis shrinking did not reach the threshold")
        for i in range(2, e):
            sh.add(i, 1, -_round(sh.ratio(i, 1)))
        # slide g_1 to the target: g_1 + K g_2 ~ c
        v0, v1 = sh.value(0), sh.value(1)
        K = _round((c - v0.mid) / v1.mid)
        sh.add(0, 1, K)
        gamma = _compose(eta, sh.matrix(), alpha, e, n)
        image = x.apply(gamma)
        if trace:
            points.append(_approx_coords(image))
        ok, bound = certify_distance(image, z, eps)
        if ok:
            return Approximation(gamma, image, bound, points)
        t2 /= 16
    raise PrecisionExhausted("approximation did not converge within the round limit")


def _approx_coords(p: SymbolicPoint) -> tuple:
    return tuple(p.basis.approx(r, 32).mid for r in p.coeffs)


def _compose(eta, delta, alpha, e, n) -> zl.UnimodularMap:
    block = zl.block_diag(delta, zl.identity(n - e)) if e < n else delta
    return eta @ zl.UnimodularMap(block, _checked=True) @ alpha


def approx_orbit(x: SymbolicPoint, z: Sequence, eps) -> zl.UnimodularMap:
    return approx_orbit_certified(x, z, eps).gamma

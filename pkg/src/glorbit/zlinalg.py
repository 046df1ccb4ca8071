"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding ``int`` or ``fractions.Fraction``
entries. Nothing here touches floating point.

Conventions:

* ``hnf`` is the row-style Hermite normal form: pivots positive, zero rows
  last, entries above a pivot reduced into ``[0, pivot)``.
* ``snf`` returns ``(S, U, V)`` with ``U @ A @ V == S``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotSaturated, NotUnimodular, ShapeError

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


# ---------------------------------------------------------------------------
# basic helpers
# ---------------------------------------------------------------------------

def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or string such as ``"2/3"`` or ``"-1.25"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return value
    f = as_fraction(value)
    if f.denominator != 1:
        raise ValueError(f"{value!r} is not an integer")
    return f.numerator


def matrix(rows: Iterable[Iterable], *, integer: bool = False) -> Matrix:
    conv = as_int if integer else _normalize
    out = tuple(tuple(x if type(x) is int else conv(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ShapeError("ragged matrix")
    return out


def _normalize(x):
    # keep ints as ints, integral fractions become ints
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    f = as_fraction(x)
    return f.numerator if f.denominator == 1 else f


def shape(A: Matrix) -> tuple[int, int]:
    return (len(A), len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return ()
    if len(A[0]) != len(B):
        raise ShapeError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Matrix, v: Sequence) -> tuple:
    if A and len(A[0]) != len(v):
        raise ShapeError(f"cannot apply {shape(A)} matrix to length {len(v)} vector")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    ma, na = shape(A)
    mb, nb = shape(B)
    top = tuple(tuple(row) + (0,) * nb for row in A)
    bottom = tuple((0,) * na + tuple(row) for row in B)
    return top + bottom


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def common_denominator(values: Iterable) -> int:
    d = 1
    for x in values:
        q = x.denominator if isinstance(x, (int, Fraction)) else Fraction(x).denominator
        if q != 1:
            d = lcm(d, q)
    return d


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by the lcm of its denominators."""
    d = common_denominator(v)
    return tuple(int(Fraction(x) * d) for x in v)


def primitive_part(v: Sequence) -> tuple[int, ...]:
    """The primitive integer vector on the ray through ``v`` (``v`` nonzero)."""
    w = clear_denominators(v)
    g = vec_gcd(w)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in w)


# ---------------------------------------------------------------------------
# determinants, rank, solving
# ---------------------------------------------------------------------------

def det(A: Matrix):
    """Exact determinant; Bareiss for integer input, Gaussian otherwise."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in A for x in r):
        return _bareiss(A)
    M = [[Fraction(x) for x in r] for r in A]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        piv = M[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = M[i][c] / piv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    result *= sign
    return result.numerator if result.denominator == 1 else result


def _bareiss(A: Matrix) -> int:
    M = [list(r) for r in A]
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form over Q and the pivot columns."""
    M = [[Fraction(x) for x in r] for r in A]
    m, n = shape(A)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in M), tuple(pivots)


def rank(A: Matrix) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def rat_inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = tuple(tuple(row) + identity(n)[i] for i, row in enumerate(A))
    R, piv = rref(aug)
    if piv[:n] != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(_normalize(x) for x in row[n:]) for row in R)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def hnf(A: Matrix) -> tuple[Matrix, "UnimodularMap"]:
    """Row Hermite normal form ``H`` and unimodular ``U`` with ``U @ A == H``."""
    return _hnf(A, True)


def _hnf(A: Matrix, track: bool):
    A = matrix(A, integer=True)
    if not A:
        raise ShapeError("hnf of an empty matrix")
    m, n = shape(A)
    H = [list(r) for r in A]
    # without tracking, U is a throwaway 0 x 0 stand-in
    U = [list(r) for r in identity(m)] if track else [[] for _ in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_sub(H, i, r, q)
                    _row_sub(U, i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                _row_sub(H, i, r, q)
                _row_sub(U, i, r, q)
        r += 1
    if not track:
        return tuple(map(tuple, H)), None
    return tuple(map(tuple, H)), UnimodularMap(tuple(map(tuple, U)), _checked=True)


def _row_sub(M, i, j, q):
    # row_i -= q * row_j
    Mj = M[j]
    M[i] = [a - q * b for a, b in zip(M[i], Mj)]


def hnf_rows(A: Matrix) -> Matrix:
    """Nonzero rows of the Hermite normal form (a canonical lattice basis)."""
    if not A:
        return ()
    H, _ = _hnf(A, False)
    return tuple(row for row in H if any(row))


def snf(A: Matrix) -> tuple[Matrix, "UnimodularMap", "UnimodularMap"]:
    """Smith normal form ``S`` with ``U @ A @ V == S``.

    The diagonal of ``S`` is nonnegative and each entry divides the next.
    Alternates row and column Hermite forms, which keeps entries reduced.
    """
    A = matrix(A, integer=True)
    if not A:
        raise ShapeError("snf of an empty matrix")
    m, n = shape(A)
    S = A
    U = identity(m)
    V = identity(n)
    while True:
        # one forced row pass sorts zero rows last even if S starts diagonal
        first = True
        while first or not _is_diagonal(S):
            first = False
            S, U1 = hnf(S)
            U = mat_mul(U1.mat, U)
            if _is_diagonal(S):
                break
            T, V1 = hnf(transpose(S))
            S = transpose(T)
            V = mat_mul(V, transpose(V1.mat))
        diag = [S[i][i] for i in range(min(m, n))]
        bad = next(
            ((i, j) for i in range(len(diag)) for j in range(i + 1, len(diag))
             if diag[i] and diag[j] % diag[i]),
            None,
        )
        if bad is None:
            break
        i, j = bad
        # column i += column j brings diag[j] into row j, column i
        S = tuple(tuple(r[k] + (r[j] if k == i else 0) for k in range(n)) for r in S)
        V = tuple(tuple(r[k] + (r[j] if k == i else 0) for k in range(n)) for r in V)
    if any(S[i][i] < 0 for i in range(min(m, n))):
        flip = tuple(-1 if i < n and S[i][i] < 0 else 1 for i in range(m))
        S = tuple(tuple(f * x for x in r) for f, r in zip(flip, S))
        U = tuple(tuple(f * x for x in r) for f, r in zip(flip, U))
    return (
        S,
        UnimodularMap(U, _checked=True),
        UnimodularMap(V, _checked=True),
    )


def _is_diagonal(S) -> bool:
    return all(not x for i, r in enumerate(S) for j, x in enumerate(r) if i != j)


def smith_diagonal(A: Matrix) -> tuple[int, ...]:
    S, _, _ = snf(A)
    return tuple(S[i][i] for i in range(min(shape(S))))


def integer_kernel(A: Matrix) -> Matrix:
    """Z-basis (HNF) of ``{x in Z^n : A x = 0}`` for an integer matrix ``A``."""
    A = matrix(A, integer=True)
    m, n = shape(A)
    if m == 0:
        return identity(n)
    H, U = hnf(transpose(A))
    kernel = tuple(U.mat[i] for i in range(n) if not any(H[i]))
    return hnf_rows(kernel) if kernel else ()


# ---------------------------------------------------------------------------
# unimodular maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnimodularMap:
    """An element of GL(n, Z), acting on column vectors by ``x -> mat @ x``."""

    mat: Matrix
    _checked: bool = False

    def __post_init__(self):
        mat = matrix(self.mat, integer=True)
        object.__setattr__(self, "mat", mat)
        if any(len(r) != len(mat) for r in mat) or not mat:
            raise ShapeError("unimodular map needs a nonempty square matrix")
        if not self._checked and det(mat) not in (1, -1):
            raise NotUnimodular(f"determinant of {mat} is not +-1")
        object.__setattr__(self, "_checked", True)

    def __eq__(self, other):
        return isinstance(other, UnimodularMap) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"UnimodularMap({[list(r) for r in self.mat]})"

    @property
    def n(self) -> int:
        return len(self.mat)

    @property
    def det(self) -> int:
        return det(self.mat)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(mat_mul(self.mat, other.mat), _checked=True)

    def __call__(self, v: Sequence) -> tuple:
        return mat_vec(self.mat, v)

    def inverse(self) -> "UnimodularMap":
        return unimodular_inverse(self)

    @classmethod
    def identity(cls, n: int) -> "UnimodularMap":
        return cls(identity(n), _checked=True)


@dataclass(frozen=True)
class AffineUnimodularMap:
    """``x -> linear(x) + translation``, an element of GL(n,Z) semidirect Z^n."""

    linear: UnimodularMap
    translation: tuple

    def __post_init__(self):
        t = tuple(as_int(x) for x in self.translation)
        if len(t) != self.linear.n:
            raise ShapeError("translation length must equal the dimension")
        object.__setattr__(self, "translation", t)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(self.linear(v), self.translation))


def unimodular_inverse(U: UnimodularMap) -> UnimodularMap:
    # the HNF of a unimodular matrix is the identity, so its transform is U^-1
    _, T = hnf(U.mat)
    H = mat_mul(T.mat, U.mat)
    if H != identity(U.n):
        raise NotUnimodular("matrix is not invertible over Z")
    return T


def complete_to_basis(rows: Matrix, m: int | None = None) -> UnimodularMap:
    """Extend the rows of a k x m integer matrix to a unimodular m x m matrix.

    The first k rows of the result are the input rows. Raises
    :class:`NotSaturated` when no such extension exists.
    """
    rows = matrix(rows, integer=True)
    if not rows:
        if m is None:
            raise ShapeError("ambient dimension needed for an empty row set")
        return UnimodularMap.identity(m)
    k, m = shape(rows)
    if k > m:
        raise NotSaturated(f"{k} vectors cannot be part of a basis of Z^{m}")
    S, U, V = snf(rows)
    if any(S[i][i] != 1 for i in range(k)):
        raise NotSaturated(f"rows {rows} do not extend to a basis of Z^{m}")
    Vinv = unimodular_inverse(V)
    Uinv = unimodular_inverse(U)
    M = mat_mul(block_diag(Uinv.mat, identity(m - k)), Vinv.mat)
    assert M[:k] == rows
    return UnimodularMap(M, _checked=True)


def saturation_basis(span_rows: Matrix) -> Matrix:
    """HNF basis of (Q-row-space of ``span_rows``) intersected with Z^m."""
    ints = tuple(clear_denominators(r) for r in span_rows if any(r))
    if not ints:
        return ()
    B = hnf_rows(ints)
    r = len(B)
    S, U, V = snf(B)
    Vinv = unimodular_inverse(V)
    return hnf_rows(Vinv.mat[:r])


def random_unimodular(n: int, steps: int, seed=None, *, rng: random.Random | None = None,
                      bound: int = 3) -> UnimodularMap:
    """Product of ``steps`` random elementary operations (deterministic per seed).

    Each step is a row addition with a multiplier in ``[-bound, bound]``, a row
    swap, or a row negation.
    """
    if n < 1 or steps < 0:
        raise ValueError("need n >= 1 and steps >= 0")
    rng = rng if rng is not None else random.Random(seed)
    M = [list(r) for r in identity(n)]
    for _ in range(steps):
        op = rng.random()
        if n == 1 or op < 0.15:
            i = rng.randrange(n)
            M[i] = [-x for x in M[i]]
            continue
        i, j = rng.randrange(n), rng.randrange(n - 1)
        j += j >= i
        if op < 0.3:
            M[i], M[j] = M[j], M[i]
        else:
            q = rng.randint(-bound, bound) or 1
            M[i] = [a + q * b for a, b in zip(M[i], M[j])]
    return UnimodularMap(tuple(map(tuple, M)), _checked=True)

"""Real points with coordinates in the Q-span of declared constants.

A :class:`SymbolicBasis` lists constants ``1 = c_0, c_1, ..., c_k`` that the
caller asserts to be linearly independent over Q. A coordinate is then a
rational coefficient vector, so equality and rank questions are exact
rational linear algebra; only order comparisons need the interval
enclosures carried by each constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath

from . import zlinalg as zl
from .errors import BasisMismatch, PrecisionExhausted, ShapeError

DEFAULT_MAX_BITS = 2048


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __mul__(self, other):
        other = _as_interval(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def square(self) -> "Interval":
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.lo <= 0 <= self.hi:
            return Interval(Fraction(0), max(a, b))
        return Interval(min(a, b), max(a, b))

    def magnitude(self) -> Fraction:
        """Upper bound on ``|x|``."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    """A named real constant with a caller-supplied enclosure.

    ``enclose(bits)`` returns an interval containing the constant; the base
    class cannot refine, so it always returns the supplied interval.
    """

    label: str
    lo: Fraction
    hi: Fraction

    def enclose(self, bits: int) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def refinable(self) -> bool:
        return False


@dataclass(frozen=True)
class UnitConstant(Constant):
    label: str = "1"
    lo: Fraction = Fraction(1)
    hi: Fraction = Fraction(1)

    def enclose(self, bits):
        return Interval.point(1)


@dataclass(frozen=True)
class RootConstant(Constant):
    """The positive real ``radicand ** (1/degree)``, refined by integer roots."""

    radicand: Fraction = Fraction(2)
    degree: int = 2

    def enclose(self, bits):
        p, q = self.radicand.numerator, self.radicand.denominator
        # r^(1/k) = (p q^(k-1))^(1/k) / q
        scaled = p * q ** (self.degree - 1) * 2 ** (bits * self.degree)
        s = _iroot(scaled, self.degree)
        den = q * 2 ** bits
        return Interval(Fraction(s, den), Fraction(s + 1, den))

    @property
    def refinable(self):
        return True


@dataclass(frozen=True)
class MpmathConstant(Constant):
    """pi or e, enclosed from a high-precision mpmath evaluation."""

    name: str = "pi"

    def enclose(self, bits):
        with mpmath.workprec(bits + 32):
            v = mpmath.pi if self.name == "pi" else mpmath.e
            m, ex = mpmath.mpf(v).man_exp
        x = Fraction(int(m)) * Fraction(2) ** int(ex)
        slack = Fraction(1, 2 ** (bits + 8))
        return Interval(x - slack, x + slack)

    @property
    def refinable(self):
        return True


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if k == 2:
        return isqrt(n)
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


_ROOT = re.compile(r"^(sqrt|cbrt)\(?(\d+(?:/\d+)?)\)?$")


def make_constant(label: str, lo=None, hi=None) -> Constant:
    """Recognize ``1``, ``sqrtN``, ``cbrtN``, ``pi`` and ``e``; anything else is opaque.

    Recognized constants are refined on demand and the supplied interval (if
    any) is checked against them. Opaque constants need an interval.
    """
    lo = None if lo is None else zl.as_fraction(lo)
    hi = None if hi is None else zl.as_fraction(hi)
    if label == "1":
        c = UnitConstant()
    elif (m := _ROOT.match(label)):
        deg = 2 if m.group(1) == "sqrt" else 3
        r = Fraction(m.group(2))
        approx = RootConstant(label, Fraction(0), Fraction(0), r, deg).enclose(16)
        c = RootConstant(label, approx.lo, approx.hi, r, deg)
    elif label in ("pi", "e"):
        approx = MpmathConstant(label, Fraction(0), Fraction(0), label).enclose(16)
        c = MpmathConstant(label, approx.lo, approx.hi, label)
    else:
        if lo is None or hi is None:
            raise ValueError(f"constant {label!r} needs approx_lo and approx_hi")
        return Constant(label, lo, hi)
    if lo is not None and hi is not None:
        if lo > hi:
            raise ValueError(f"bad interval for {label!r}")
        true = c.enclose(64)
        if true.hi < lo or true.lo > hi:
            raise ValueError(f"interval [{lo}, {hi}] does not contain {label}")
    return c


@dataclass(frozen=True, eq=False)
class SymbolicBasis:
    """Constants ``1, c_1, ..., c_k`` assumed linearly independent over Q."""

    constants: tuple
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        consts = tuple(self.constants)
        if not consts or consts[0].label != "1":
            raise ValueError("the first basis constant must be the rational unit '1'")
        labels = [c.label for c in consts]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in basis")
        object.__setattr__(self, "constants", consts)

    @classmethod
    def of(cls, *labels: str, max_bits: int = DEFAULT_MAX_BITS) -> "SymbolicBasis":
        labels = labels if labels and labels[0] == "1" else ("1",) + labels
        return cls(tuple(make_constant(lab) for lab in labels), max_bits)

    @classmethod
    def rational(cls) -> "SymbolicBasis":
        return cls((UnitConstant(),))

    @property
    def labels(self) -> tuple:
        return tuple(c.label for c in self.constants)

    @property
    def size(self) -> int:
        return len(self.constants)

    def __eq__(self, other):
        return isinstance(other, SymbolicBasis) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def enclose(self, coeffs: Sequence, bits: int) -> Interval:
        """Interval containing ``sum(coeffs[i] * c_i)``."""
        acc = Interval.point(0)
        for a, c in zip(coeffs, self.constants):
            if a:
                acc = acc + c.enclose(bits) * Fraction(a)
        return acc

    def _bits_for(self, coeffs: Sequence, extra: int) -> int:
        big = max((abs(Fraction(a)).numerator.bit_length() for a in coeffs), default=0)
        return max(32, big + extra)

    def sign(self, coeffs: Sequence) -> int:
        """Exact sign of the symbolic real (refining intervals as needed)."""
        if not any(coeffs):
            return 0
        bits = self._bits_for(coeffs, 32)
        while True:
            iv = self.enclose(coeffs, bits)
            if iv.lo > 0:
                return 1
            if iv.hi < 0:
                return -1
            if bits >= self.max_bits or not self._refinable(coeffs):
                raise PrecisionExhausted(f"cannot decide the sign of {tuple(coeffs)}")
            bits = min(2 * bits, self.max_bits)

    def _refinable(self, coeffs) -> bool:
        return all(c.refinable or not a for a, c in zip(coeffs, self.constants) if c.label != "1")

    def approx(self, coeffs: Sequence, rel_bits: int = 64) -> Interval:
        """Enclosure at a precision scaled to the size of the coefficients."""
        bits = min(self._bits_for(coeffs, rel_bits), self.max_bits)
        return self.enclose(coeffs, bits)

    def render(self, coeffs: Sequence) -> str:
        """Human-readable exact expression such as ``"3/2*sqrt2 + 1"``."""
        terms = []
        for a, c in zip(coeffs, self.constants):
            a = Fraction(a)
            if not a:
                continue
            if c.label == "1":
                terms.append(str(a))
            elif a == 1:
                terms.append(c.label)
            elif a == -1:
                terms.append("-" + c.label)
            else:
                terms.append(f"{a}*{c.label}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class SymbolicPoint:
    """Point of R^n; row ``i`` of ``coeffs`` expresses ``x_i`` over ``basis``."""

    basis: SymbolicBasis
    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple(zl.as_fraction(a) for a in r) for r in self.coeffs)
        if any(len(r) != self.basis.size for r in rows):
            raise ShapeError("coefficient rows must match the basis size")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def rational(cls, coords: Sequence) -> "SymbolicPoint":
        return cls(SymbolicBasis.rational(), tuple((zl.as_fraction(c),) for c in coords))

    @classmethod
    def from_coords(cls, basis: SymbolicBasis, coords: Sequence[dict | Sequence]) -> "SymbolicPoint":
        """Build from rows given as coefficient lists or ``{label: coeff}`` dicts."""
        rows = []
        for c in coords:
            if isinstance(c, dict):
                unknown = set(c) - set(basis.labels)
                if unknown:
                    raise BasisMismatch(f"labels {sorted(unknown)} not in basis")
                rows.append(tuple(zl.as_fraction(c.get(lab, 0)) for lab in basis.labels))
            else:
                rows.append(tuple(c))
        return cls(basis, tuple(rows))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(any(r) for r in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(not any(r[1:]) for r in self.coeffs)

    def rational_coords(self) -> tuple:
        if not self.is_rational:
            raise ValueError("point has irrational coordinates")
        return tuple(r[0] for r in self.coeffs)

    def apply(self, U) -> "SymbolicPoint":
        M = U.mat if hasattr(U, "mat") else U
        # integer product on the cleared coefficients, one division at the end
        D = zl.common_denominator(a for r in self.coeffs for a in r)
        N = tuple(tuple(a.numerator * (D // a.denominator) for a in r) for r in self.coeffs)
        rows = zl.mat_mul(M, N)
        return SymbolicPoint(self.basis, tuple(tuple(Fraction(a, D) for a in r) for r in rows))

    def enclose(self, bits: int) -> list:
        return [self.basis.enclose(r, bits) for r in self.coeffs]

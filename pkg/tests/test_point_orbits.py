import random
import time
from fractions import Fraction as Fr
from math import gcd, lcm

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glorbit import zlinalg as zl
from glorbit.errors import BasisMismatch, CannotFixSign, NotDense, NotEquivalent, PrecisionExhausted
from glorbit.point_orbits import (
    approx_orbit,
    approx_orbit_certified,
    certify_distance,
    equivalent_points,
    h_invariant,
    is_dense,
    witness_point,
)
from glorbit.symbolic import Interval, SymbolicBasis, SymbolicPoint, make_constant

from conftest import rational_points

R = SymbolicPoint.rational
B2 = SymbolicBasis.of("sqrt2")
B3 = SymbolicBasis.of("sqrt2", "sqrt3")


def sym(basis, *rows):
    return SymbolicPoint(basis, tuple(tuple(Fr(a) for a in r) for r in rows))


def rational_generator(x):
    """gcd(numerators) / lcm(denominators): the generator of Z x_1 + ... + Z x_n."""
    D = lcm(*(Fr(c).denominator for c in x))
    g = 0
    for c in x:
        g = gcd(g, int(Fr(c) * D))
    return Fr(g, D)


def random_symbolic(rng, basis, n):
    return sym(basis, *[[Fr(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(basis.size)] for _ in range(n)])


class TestInvariant:
    def test_examples(self):
        inv = h_invariant(R((Fr(1, 2), Fr(1, 3))))
        assert inv.rank == 1 and inv.generators == ((Fr(1, 6),),)
        assert h_invariant(R((0, 0))).rank == 0
        inv = h_invariant(sym(B2, (1, 0), (0, 1)))
        assert inv.rank == 2 and inv.generators == ((1, 0), (0, 1))

    @given(rational_points(3).filter(any))
    def test_rational_generator(self, x):
        inv = h_invariant(R(x))
        assert inv.rank == 1 and inv.generators == ((rational_generator(x),),)

    @given(st.integers(0, 2**32))
    def test_orbit_invariance_symbolic(self, seed):
        rng = random.Random(seed)
        x = random_symbolic(rng, B3, rng.choice((2, 3, 4)))
        inv = h_invariant(x)
        for _ in range(20):
            U = zl.random_unimodular(x.n, 12, rng=rng)
            assert h_invariant(x.apply(U)) == inv

    def test_equivalent_examples(self):
        assert equivalent_points(R((Fr(1, 2), Fr(1, 3))), R((Fr(1, 6), 0)))
        assert equivalent_points(sym(B2, (1, 0), (0, 1)), sym(B2, (0, 1), (1, 0)))
        assert not equivalent_points(R((1, 0)), R((Fr(1, 2), 0)))

    def test_basis_mismatch(self):
        with pytest.raises(BasisMismatch):
            equivalent_points(sym(B2, (1, 0), (0, 1)), R((1, 0)))
        with pytest.raises(BasisMismatch):
            equivalent_points(R((1, 0)), R((1, 0, 0)))


class TestWitness:
    def test_example(self):
        x, y = R((Fr(1, 2), Fr(1, 3))), R((Fr(1, 6), 0))
        g = witness_point(x, y)
        assert x.apply(g) == y and g.det in (1, -1)

    def test_identity_and_inequivalent(self):
        x = sym(B2, (1, 0), (0, 1))
        assert x.apply(witness_point(x, x)) == x
        with pytest.raises(NotEquivalent):
            witness_point(R((1, 0)), R((Fr(1, 2), 0)))

    @given(st.integers(0, 2**32))
    def test_random_pairs(self, seed):
        rng = random.Random(seed)
        basis = rng.choice((SymbolicBasis.rational(), B2, B3))
        x = random_symbolic(rng, basis, rng.choice((2, 3, 4)))
        y = x.apply(zl.random_unimodular(x.n, 15, rng=rng))
        g = witness_point(x, y)
        assert x.apply(g) == y
        assert zl.det(g.mat) in (1, -1)

    @given(st.integers(0, 2**32))
    def test_det_plus(self, seed):
        rng = random.Random(seed)
        x = random_symbolic(rng, B2, 3)
        y = x.apply(zl.random_unimodular(3, 15, rng=rng))
        e = h_invariant(x).rank
        if e < 3:
            g = witness_point(x, y, want_det_plus=True)
            assert g.det == 1 and x.apply(g) == y
        else:
            g = witness_point(x, y)
            if g.det == -1:
                with pytest.raises(CannotFixSign):
                    witness_point(x, y, want_det_plus=True)

    def test_cannot_fix_sign_when_unique(self):
        x = sym(B2, (1, 0), (0, 1))
        y = sym(B2, (0, 1), (1, 0))
        assert witness_point(x, y).det == -1
        with pytest.raises(CannotFixSign):
            witness_point(x, y, want_det_plus=True)


class TestDensity:
    def test_examples(self):
        dense, cert = is_dense(sym(B2, (1, 0), (0, 1)))
        assert dense and cert.pair == (0, 1)
        dense, cert = is_dense(sym(B2, (0, 1), (0, 2)))
        assert not dense and cert.p == (1, 2) and cert.xi == (0, 1)
        dense, cert = is_dense(R((Fr(3, 5), Fr(7, 5))))
        assert not dense and cert.p == (3, 7) and cert.xi == (Fr(1, 5),)

    def test_negative_multiple(self):
        # x = -sqrt2 (1, 2) = sqrt2 (-1, -2); xi must be positive
        dense, cert = is_dense(sym(B2, (0, -1), (0, -2)))
        assert not dense and cert.p == (-1, -2) and cert.xi == (0, 1)

    def test_certificate_reconstructs(self, rng):
        for _ in range(50):
            p = [rng.randint(-5, 5) for _ in range(3)]
            if not any(p):
                continue
            g = zl.vec_gcd(p)
            p = [a // g for a in p]
            xi = (Fr(rng.randint(-4, 4), rng.randint(1, 5)), Fr(rng.randint(-3, 3), rng.randint(1, 3)))
            if not any(xi):
                continue
            x = sym(B2, *[[a * c for c in xi] for a in p])
            dense, cert = is_dense(x)
            assert not dense
            assert B2.sign(cert.xi) == 1
            assert sym(B2, *[[a * c for c in cert.xi] for a in cert.p]) == x


class TestApprox:
    def test_already_close(self):
        x = sym(B2, (1, 0), (0, 1))
        g = approx_orbit(x, (1, Fr(14142, 10000)), Fr(1, 1000))
        assert g == zl.UnimodularMap.identity(2)

    @pytest.mark.parametrize("target,eps", [((0, 0), Fr(1, 10)), ((3, 0), Fr(1, 100)), ((-2, 5), Fr(1, 1000))])
    def test_targets(self, target, eps):
        x = sym(B2, (1, 0), (0, 1))
        res = approx_orbit_certified(x, target, eps)
        assert res.gamma.det in (1, -1)
        assert x.apply(res.gamma) == res.image
        ok, bound = certify_distance(res.image, target, eps)
        assert ok and bound < eps * eps

    def test_three_dims_and_two_constants(self):
        x = sym(B3, (1, 0, 0), (0, 1, 0), (0, 0, 1))
        t = time.perf_counter()
        res = approx_orbit_certified(x, (Fr(1, 3), 2, -1), Fr(1, 500))
        assert time.perf_counter() - t < 10
        assert certify_distance(res.image, (Fr(1, 3), 2, -1), Fr(1, 500))[0]

    def test_rank_two_in_three_dims(self):
        x = sym(B2, (1, 1), (2, 0), (0, 3))
        res = approx_orbit_certified(x, (5, Fr(1, 2), 7), Fr(1, 200))
        assert certify_distance(res.image, (5, Fr(1, 2), 7), Fr(1, 200))[0]

    def test_not_dense(self):
        with pytest.raises(NotDense):
            approx_orbit(R((1, 2)), (0, 0), Fr(1, 10))

    def test_trace_points(self):
        x = sym(B2, (1, 0), (0, 1))
        res = approx_orbit_certified(x, (2, 1), Fr(1, 100), trace=True)
        assert res.trace and len(res.trace[0]) == 2

    def test_coarse_opaque_constant(self):
        # an opaque constant with a fixed wide interval cannot certify tiny eps
        c = make_constant("c", Fr(1), Fr(2))
        basis = SymbolicBasis((make_constant("1"), c))
        x = sym(basis, (1, 0), (0, 1))
        with pytest.raises(PrecisionExhausted):
            approx_orbit(x, (0, 0), Fr(1, 10**6))


class TestSymbolic:
    def test_sign_and_render(self):
        # 140/99 < sqrt2 < 99/70 (consecutive continued-fraction convergents)
        assert B2.sign((Fr(-140, 99), 1)) == 1
        assert B2.sign((Fr(-99, 70), 1)) == -1
        assert B2.sign((0, 0)) == 0
        assert B2.render((Fr(1), Fr(3, 2))) == "1 + 3/2*sqrt2"
        assert B2.render((0, 1)) == "sqrt2"

    def test_enclosures_contain_value(self):
        for label, value in [("sqrt2", 2**0.5), ("cbrt5", 5 ** (1 / 3)), ("pi", 3.141592653589793)]:
            c = make_constant(label)
            for bits in (8, 64, 300):
                iv = c.enclose(bits)
                assert iv.lo <= Fr(value) + Fr(1, 10**12) and Fr(value) - Fr(1, 10**12) <= iv.hi
                assert iv.width <= Fr(1, 2 ** (bits - 2))

    def test_wrong_interval_rejected(self):
        with pytest.raises(ValueError):
            make_constant("sqrt2", Fr(3, 2), 2)

    def test_interval_arithmetic(self):
        a, b = Interval(Fr(-1), Fr(2)), Interval(Fr(3), Fr(4))
        assert a * b == Interval(Fr(-4), Fr(8))
        assert a.square() == Interval(Fr(0), Fr(4))
        assert (a - b) == Interval(Fr(-5), Fr(-1))

import random
from fractions import Fraction as Fr
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glorbit import zlinalg as zl
from glorbit.errors import NotRegular, UnsupportedDimension
from glorbit.measure import (
    dimensional_part,
    lambda_complex,
    lambda_parallelotope,
    lambda_segment,
    qnorm,
)
from glorbit.ratgeom import (
    RationalSimplex,
    SimplicialComplex,
    den_simplex,
    is_regular,
    point_from_lattice_vector,
)
from glorbit.testkit import gram_sq_volume, mediant_regularize_segment

from conftest import rational_points


def embed(v):
    return tuple(v) + (Fr(0),)


def random_affine(rng, n):
    U = zl.random_unimodular(n, 10, rng=rng)
    return zl.AffineUnimodularMap(U, tuple(rng.randint(-3, 3) for _ in range(n)))


def transform_complex(cx, g):
    return SimplicialComplex.generated_by([tuple(g(v) for v in s.vertices) for s in cx.maximal()], cx.n)


class TestExamples:
    def test_qnorm(self):
        assert qnorm((1, 0)) == 1
        assert qnorm((Fr(1, 2), 0)) == Fr(1, 2)
        assert qnorm((2, 2)) == 2

    def test_segment_off_integer_line(self):
        # the line y = 1/2 carries no integer points; the mediant oracle gives 1/2
        a, b = (0, Fr(1, 2)), (1, Fr(1, 2))
        assert lambda_segment(a, b) == Fr(1, 2)
        assert lambda_complex(mediant_regularize_segment(a, b), 1) == Fr(1, 2)
        assert lambda_segment(a, a) == 0

    def test_parallelotope(self):
        assert lambda_parallelotope([(1, 0), (0, 1)], 2) == 1
        assert lambda_parallelotope([(Fr(1, 2), 0), (0, Fr(1, 2))], 2) == Fr(1, 4)
        assert lambda_parallelotope([(1, 2), (2, 4)], 2) == 0
        assert lambda_parallelotope([], 0) == 1
        with pytest.raises(UnsupportedDimension):
            lambda_parallelotope([(1, 0), (0, 1)], 1)

    def test_complex(self):
        cx = SimplicialComplex.generated_by([((0,), (1,)), ((1,), (2,))])
        assert lambda_complex(cx, 1) == 2
        assert lambda_complex(cx, 0) == 0
        assert lambda_complex(cx, 2) == 0
        pt = SimplicialComplex.generated_by([((Fr(1, 2),),)])
        assert lambda_complex(pt, 0) == Fr(1, 2)

    def test_complex_not_regular(self):
        cx = SimplicialComplex.generated_by([((0,), (2,))])
        with pytest.raises(NotRegular) as info:
            lambda_complex(cx, 1)
        assert info.value.simplex == RationalSimplex(((0,), (2,)))

    def test_dimensional_part(self):
        cx = SimplicialComplex.generated_by([((0,), (1,)), ((3,),)])
        assert dimensional_part(cx, 1) == SimplicialComplex.generated_by([((0,), (1,))])
        assert dimensional_part(cx, 0) == SimplicialComplex.generated_by([((3,),)])
        assert len(dimensional_part(cx, 2)) == 0


@given(rational_points(2), rational_points(2))
def test_segment_matches_mediant_oracle(a, b):
    if a == b:
        return
    assert lambda_segment(a, b) == lambda_complex(mediant_regularize_segment(a, b), 1)


@given(rational_points(2), rational_points(2), st.integers(1, 6), st.integers(1, 6))
def test_segment_valuation(a, w, s, t):
    if not any(w):
        return
    b = tuple(x + s * y for x, y in zip(a, w))
    c = tuple(x + (s + t) * y for x, y in zip(a, w))
    assert lambda_segment(a, b) + lambda_segment(b, c) == lambda_segment(a, c)


@given(rational_points(2), rational_points(2), st.integers(0, 2**32))
def test_segment_affine_invariance(a, b, seed):
    g = random_affine(random.Random(seed), 2)
    assert lambda_segment(g(a), g(b)) == lambda_segment(a, b)
    assert lambda_segment(embed(a), embed(b)) == lambda_segment(a, b)


def test_complex_invariance_and_conservativity(rng):
    for _ in range(40):
        a = tuple(Fr(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(2))
        b = tuple(Fr(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(2))
        if a == b:
            continue
        cx = mediant_regularize_segment(a, b)
        value = lambda_complex(cx, 1)
        image = transform_complex(cx, random_affine(rng, 2))
        assert lambda_complex(image, 1) == value
        lifted = SimplicialComplex.generated_by([tuple(embed(v) for v in s.vertices) for s in cx.maximal()])
        assert lambda_complex(lifted, 1) == value
        assert lambda_complex(cx, 0) == 0


def test_regular_triangles_invariance(rng):
    base = SimplicialComplex.generated_by([((0, 0), (1, 0), (0, 1)), ((1, 0), (0, 1), (1, 1))])
    assert lambda_complex(base, 2) == 1
    for _ in range(30):
        image = transform_complex(base, random_affine(rng, 2))
        assert lambda_complex(image, 2) == 1


def test_pyramid_identity(rng):
    # conv(v0, F) with v0 integral: 1/(k! den) equals lambda_{k-1}(F) / k
    checked = 0
    for _ in range(60):
        n = rng.randint(2, 4)
        B = zl.random_unimodular(n + 1, 12, rng=rng).mat
        rows = [r if r[-1] > 0 else tuple(-x for x in r) for r in B]
        rows = [r for r in rows if r[-1] > 0]
        if len(rows) < 2:
            continue
        face = [point_from_lattice_vector(r) for r in rows]
        apex = tuple(rng.randint(-3, 3) for _ in range(n))
        simplex = face + [apex]
        if not is_regular(simplex):
            continue
        k = len(simplex) - 1
        top = SimplicialComplex.generated_by([tuple(simplex)])
        sub = SimplicialComplex.generated_by([tuple(face)])
        assert lambda_complex(top, k) == Fr(1, factorial(k) * den_simplex(simplex))
        assert lambda_complex(top, k) == lambda_complex(sub, k - 1) / k
        checked += 1
    assert checked >= 10


@given(st.lists(rational_points(3), min_size=3, max_size=3))
def test_full_dimension_matches_gram(gens):
    assert lambda_parallelotope(gens, 3) ** 2 == gram_sq_volume(gens)


def test_parallelotope_basis_normalization(rng):
    for _ in range(100):
        n = rng.randint(1, 5)
        k = rng.randint(1, n)
        rows = zl.random_unimodular(n, 15, rng=rng).mat[:k]
        assert lambda_parallelotope(rows, k) == 1
        assert lambda_parallelotope([embed(r) for r in rows], k) == 1


def test_coplanar_ratios(rng):
    # two parallelotopes in one 2-plane of R^3: lambda ratio^2 = Gram ratio
    for _ in range(50):
        plane = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(2)]
        if zl.rank(plane) < 2:
            continue

        def sample():
            cs = [[Fr(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)] for _ in range(2)]
            return [tuple(c[0] * x + c[1] * y for x, y in zip(*plane)) for c in cs]

        P, Q = sample(), sample()
        lp, lq = lambda_parallelotope(P, 2), lambda_parallelotope(Q, 2)
        if not lp or not lq:
            continue
        assert (lp / lq) ** 2 == gram_sq_volume(P) / gram_sq_volume(Q)


@given(st.lists(rational_points(2), min_size=2, max_size=2), st.integers(0, 2**32))
def test_parallelotope_linear_invariance(gens, seed):
    U = zl.random_unimodular(2, 10, seed)
    assert lambda_parallelotope([U(g) for g in gens], 2) == lambda_parallelotope(gens, 2)

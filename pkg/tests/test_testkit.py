import itertools
from fractions import Fraction as Fr

import pytest

from glorbit import zlinalg as zl
from glorbit.errors import UnsupportedSize
from glorbit.measure import lambda_complex
from glorbit.ratgeom import RationalSimplex, is_regular
from glorbit.testkit import enumerate_unimodular, gram_sq_volume, mediant_regularize_segment


def brute_count(n, bound):
    vals = range(-bound, bound + 1)
    return sum(
        1
        for entries in itertools.product(vals, repeat=n * n)
        if zl.det([entries[i * n:(i + 1) * n] for i in range(n)]) in (1, -1)
    )


class TestEnumerate:
    def test_n1(self):
        assert [U.mat for U in enumerate_unimodular(1, 1)] == [((-1,),), ((1,),)]

    def test_contains_generators(self):
        mats = {U.mat for U in enumerate_unimodular(2, 1)}
        assert ((0, 1), (1, 0)) in mats and ((1, 1), (0, 1)) in mats

    @pytest.mark.parametrize("bound", [1, 2, 3])
    def test_counts_2x2(self, bound):
        mats = [U.mat for U in enumerate_unimodular(2, bound)]
        assert len(mats) == len(set(mats)) == brute_count(2, bound)
        assert all(zl.det(M) in (1, -1) for M in mats)

    def test_count_3x3_bound1(self):
        mats = [U.mat for U in enumerate_unimodular(3, 1)]
        assert len(mats) == len(set(mats)) == brute_count(3, 1)

    def test_regression_constants(self):
        assert sum(1 for _ in enumerate_unimodular(2, 1)) == 40
        assert sum(1 for _ in enumerate_unimodular(2, 2)) == 104
        assert sum(1 for _ in enumerate_unimodular(2, 3)) == 232

    def test_deterministic(self):
        assert list(enumerate_unimodular(2, 2)) == list(enumerate_unimodular(2, 2))

    @pytest.mark.parametrize("n,bound", [(4, 1), (0, 1), (2, 4)])
    def test_unsupported(self, n, bound):
        with pytest.raises(UnsupportedSize):
            list(enumerate_unimodular(n, bound))


class TestMediant:
    def test_already_regular(self):
        cx = mediant_regularize_segment((0, 0), (1, 0))
        assert cx.maximal(1) == [RationalSimplex(((0, 0), (1, 0)))]

    def test_split_at_midpoint(self):
        cx = mediant_regularize_segment((0, 0), (2, 2))
        assert (1, 1) in cx.vertices() and len(cx.maximal(1)) == 2

    def test_third(self):
        cx = mediant_regularize_segment((0, 0), (Fr(2, 3), 0))
        assert (Fr(1, 2), 0) in cx.vertices()
        assert all(is_regular(s) for s in cx.maximal(1))

    def test_every_piece_regular_and_covers(self, rng):
        for _ in range(100):
            a = tuple(Fr(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(2))
            b = tuple(Fr(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(2))
            if a == b:
                continue
            cx = mediant_regularize_segment(a, b)
            pieces = cx.maximal(1)
            assert all(is_regular(s) for s in pieces)
            ends = [v for v in cx.vertices() if sum(v in s.vertices for s in pieces) == 1]
            assert sorted(ends) == sorted([a, b])

    def test_order_independent_value(self):
        a, b = (0, Fr(1, 7)), (Fr(5, 3), 2)
        assert lambda_complex(mediant_regularize_segment(a, b), 1) == lambda_complex(
            mediant_regularize_segment(b, a), 1
        )

    def test_large_index_terminates(self):
        assert lambda_complex(mediant_regularize_segment((0,), (11,)), 1) == 11


def test_gram_examples():
    assert gram_sq_volume([(1, 0), (0, 1)]) == 1
    assert gram_sq_volume([(1, 1)]) == 2
    assert gram_sq_volume([(Fr(1, 2), 0), (0, Fr(1, 2))]) == Fr(1, 16)
    assert gram_sq_volume([(1, 2), (2, 4)]) == 0

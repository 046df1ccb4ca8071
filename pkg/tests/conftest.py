import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from glorbit.errors import EmptySubspace
from glorbit.ratgeom import make_subspace

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def small_ints(lo=-6, hi=6):
    return st.integers(lo, hi)


def int_matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def rationals(max_num=12, max_den=8):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def rational_points(n, **kw):
    return st.lists(rationals(**kw), min_size=n, max_size=n).map(tuple)


def random_rational(rng, num=9, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_subspace(rng, n=None, num=6, den=5):
    """Affine hull of up to n random rational points (retries on degenerate draws)."""
    while True:
        n = n or rng.randint(1, 4)
        k = rng.randint(1, n)
        pts = [tuple(random_rational(rng, num, den) for _ in range(n)) for _ in range(k)]
        try:
            return make_subspace(generators=pts)
        except EmptySubspace:
            continue


def random_subspaces(seed, count, dims=(2, 3, 4)):
    rng = random.Random(seed)
    return [random_subspace(rng, rng.choice(dims)) for _ in range(count)]


@pytest.fixture
def rng():
    return random.Random(20261016)

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2contact.crosscheck import run_group
from g2contact.errors import PoleAtPoint
from g2contact.oracle import Series, compose, ev, revert, run_points, t_jets_explicit

coeffs = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=6), min_size=5,
                  max_size=5)


@given(coeffs, coeffs)
def test_series_division_inverts_multiplication(a, b):
    if b[0] == 0:
        return
    f, g = Series(a), Series(b)
    assert ((f * g) / g).c == f.c


@given(coeffs)
def test_reversion_is_compositional_inverse(a):
    a = [Fraction(0)] + a[1:]
    if a[1] == 0:
        return
    g = Series(a)
    ident = Series.variable(0, g.order)
    assert compose(g, revert(g)).c == ident.c
    assert compose(revert(g), g).c == ident.c


def test_jets_of_polynomial(t):
    # H = t^3 at t = 2: 8, 12, 12, 6, 0, 0, 0
    assert t_jets_explicit(t ** 3, "t", 2) == [8, 12, 12, 6, 0, 0, 0]


def test_series_evaluation_of_rational_function(r):
    s = ev(1 / (1 - r), {"r": Series.variable(0, 4)})
    assert s.c == [1, 1, 1, 1, 1]


def test_poles_are_redrawn(rng):
    def fn(point):
        if point["u"] < 0:
            raise PoleAtPoint("negative")
        return [0]

    res = run_points("half poles", rng, ["u"], fn, 20)
    assert res.points == 20 and res.skipped > 0 and res.is_zero


def test_nonzero_is_reported(rng):
    res = run_points("identity", rng, ["u"], lambda p: [p["u"] - 1], 20)
    assert not res.is_zero


@pytest.mark.parametrize("k", [1, 2, 6])
def test_seeded_runs_are_reproducible(k):
    a = run_group(k, seed=3, n=20)
    b = run_group(k, seed=3, n=20)
    assert [(x.name, x.points, x.skipped, len(x.nonzero)) for x in a] == \
        [(x.name, x.points, x.skipped, len(x.nonzero)) for x in b]
    assert all(x.points >= 20 for x in a)


def test_different_seeds_sample_different_points():
    from g2contact.oracle import random_rational
    assert [random_rational(random.Random(1)) for _ in range(3)] != \
        [random_rational(random.Random(2)) for _ in range(3)]

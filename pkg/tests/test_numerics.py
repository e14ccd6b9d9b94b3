import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitlp.numerics import (
    ONE,
    ZERO,
    Polynomial,
    falling_factorial,
    format_polynomial,
    format_rational,
    integer_scaled,
    parse_polynomial,
    rational_poly_bound,
    sign_stability_bound,
)

polys = st.lists(st.integers(-20, 20), max_size=5).map(lambda cs: Polynomial(tuple(cs)))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_trailing_zeros_are_dropped():
    assert Polynomial((1, 2, 0, 0)) == Polynomial((1, 2))
    assert Polynomial((0, 0)).is_zero()
    assert ZERO.degree == 0


def test_falling_factorial_examples():
    assert falling_factorial(0) == ONE
    assert falling_factorial(2) == Polynomial((0, -1, 1))  # n^2 - n
    assert falling_factorial(1, shift=1) == Polynomial((-1, 1))
    assert falling_factorial(3)(5) == 60


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 30))
def test_falling_factorial_counts_arrangements(w, shift, n):
    """Agrees with math.perm, including the zero below the support."""
    expected = math.perm(n - shift, w) if n >= shift else falling_factorial(w, shift)(n)
    assert falling_factorial(w, shift)(n) == expected


def test_falling_factorial_rejects_negative():
    with pytest.raises(ValueError):
        falling_factorial(-1)


@given(polys, polys, st.integers(-50, 50))
def test_ring_operations_commute_with_evaluation(p, q, n):
    assert (p + q)(n) == p(n) + q(n)
    assert (p - q)(n) == p(n) - q(n)
    assert (p * q)(n) == p(n) * q(n)
    assert (p * 3)(n) == 3 * p(n)
    assert (-p)(n) == -p(n)


@given(nonzero_polys)
def test_sign_stability_bound(p):
    bound = sign_stability_bound(p)
    for n in range(bound, bound + 25):
        assert (p(n) > 0) == (p.leading > 0) and p(n) != 0


def test_sign_stability_bound_examples():
    assert sign_stability_bound(Polynomial((5,))) == 1
    assert sign_stability_bound(Polynomial((-6, 1))) == 7
    with pytest.raises(ValueError):
        sign_stability_bound(ZERO)


def test_rational_bound_scales_denominators():
    assert rational_poly_bound([Fraction(0)]) is None
    assert rational_poly_bound([Fraction(-7, 2), Fraction(1, 2)]) == 8
    assert integer_scaled([Fraction(1, 2), Fraction(2, 3)]) == (6, [3, 4])


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p)) == p
    assert parse_polynomial(format_polynomial(p, compact=True)) == p


def test_format_examples():
    assert format_polynomial(Polynomial((3, -1, 2))) == "2n^2 - n + 3"
    assert format_polynomial(Polynomial((0, -1, 1)), compact=True) == "n^2-n"
    assert format_polynomial(ZERO) == "0"
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(4)) == "4"


def test_monomial_helpers():
    p = Polynomial((1, 0, -2))
    assert p.monomial_count() == 2
    assert p.drop_degree(2) == ONE
    assert p.coeff(7) == 0
    assert Polynomial.monomial(3, 4) == Polynomial((0, 0, 0, 4))

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmin.rationals import (GaussianRational as GR, format_rational,
                            parse_rational, rational_sqrt,
                            solve_quadratic_rational)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(rationals)
def test_parse_format_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("bad", ["1.5", "1e3", "", "3/", "/4", "0x10", "nan"])
def test_parse_rejects_non_rationals(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_rational_sqrt():
    assert rational_sqrt(Q(9, 4)) == Q(3, 2)
    assert rational_sqrt(Q(0)) == 0
    assert rational_sqrt(Q(2)) is None
    assert rational_sqrt(Q(-1)) is None


@given(rationals, rationals, rationals, rationals)
@settings(max_examples=50)
def test_gaussian_field_ops(a, b, c, d):
    z = GR(a, b)
    w = GR(c, d)
    assert (z + w) - w == z
    assert z * w == w * z
    assert (z * w).conj() == z.conj() * w.conj()
    if not w.is_zero():
        assert (z / w) * w == z


def test_quadratic_solver():
    assert solve_quadratic_rational(Q(1), Q(-3), Q(2)) == (Q(2), Q(1))
    assert solve_quadratic_rational(Q(1), Q(0), Q(-2)) is None


def test_gaussian_predicates():
    assert GR(Q(2)).is_real() and not GR(Q(2)).is_imaginary()
    assert GR.imag(Q(3, 7)).is_imaginary() and not GR.imag(Q(3, 7)).is_real()
    assert GR(Q(0)).is_real() and GR(Q(0)).is_imaginary()

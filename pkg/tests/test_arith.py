import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nnrepr.arith import (
    as_rational,
    ceil_log2,
    common_denominator_scale,
    format_rational,
    parse_rational,
    res_matrix,
    res_rational,
)
from nnrepr.errors import FormatError, InvalidInputError

rationals = st.fractions(max_denominator=10**12).filter(lambda q: abs(q.numerator) < 10**15)


@pytest.mark.parametrize("q, bits", [("1/2", 2), ("0", 1), ("1", 1), ("3/4", 3), ("-1/2", 2), ("7", 3), ("8", 4)])
def test_res_rational_examples(q, bits):
    assert res_rational(q) == bits


def test_res_matrix_examples():
    assert res_matrix([[0, 0], ["1/2", "1/2"], [1, 1]]) == 2
    assert res_matrix([[0, 0, 0]]) == 1
    assert res_matrix([["1/2", "1/2"], [1, 0], [0, 1]]) == 2


@pytest.mark.parametrize("rows", [[], [[]], [[1, 2], [3]]])
def test_res_matrix_rejects_bad_shapes(rows):
    with pytest.raises(InvalidInputError):
        res_matrix(rows)


def test_literal_mode_only_differs_for_negative_numerators():
    assert res_rational(-1, literal=True) == 1  # log2|a+1| = -inf drops out
    assert res_rational(-1) == 1
    assert res_rational(-7, literal=True) == 3
    assert res_rational(-8) == 4
    assert res_rational(5, literal=True) == res_rational(5)


def test_arithmetic_examples():
    assert Fraction(1, 2) + Fraction(1, 2) == 1
    assert Fraction(1, 3) * 3 == 1
    assert Fraction(2, 3) < Fraction(3, 4)


def test_common_denominator_scale_examples():
    assert common_denominator_scale([["1/2", 1], [0, "3/4"]]) == (4, [[2, 4], [0, 3]])
    assert common_denominator_scale([[1, -2], [3, 0]]) == (1, [[1, -2], [3, 0]])
    assert common_denominator_scale([[1, 0], ["-1/4", "5/4"]]) == (4, [[4, 0], [-1, 5]])


@pytest.mark.parametrize("text, value", [("-3/4", Fraction(-3, 4)), ("2", Fraction(2)), ("6/8", Fraction(3, 4)),
                                         (" 0/5 ", Fraction(0))])
def test_parse_rational(text, value):
    q = parse_rational(text)
    assert q == value
    assert q.denominator >= 1 and math.gcd(q.numerator, q.denominator) == 1


@pytest.mark.parametrize("text", ["1/0", "a", "1/-2", "1.5", "", "1/2/3"])
def test_parse_rational_errors(text):
    with pytest.raises(FormatError):
        parse_rational(text)


def test_floats_are_rejected():
    with pytest.raises(InvalidInputError):
        as_rational(0.5)
    with pytest.raises(InvalidInputError):
        as_rational(True)


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(0)) == "0"


@given(rationals)
def test_format_parse_roundtrip_is_canonical(q):
    text = format_rational(q)
    assert parse_rational(text) == q
    assert format_rational(parse_rational(text)) == text


@given(rationals)
def test_res_is_sign_symmetric(q):
    assert res_rational(q) == res_rational(-q)


def test_res_sign_symmetry_seeded():
    rng = random.Random(7)
    for _ in range(1000):
        q = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9))
        assert res_rational(q) == res_rational(-q)


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=5))
def test_scale_roundtrip(rows):
    D, M = common_denominator_scale(rows)
    assert D >= 1
    for row, mrow in zip(rows, M):
        for q, v in zip(row, mrow):
            assert Fraction(v, D) == q


@given(st.integers(min_value=0, max_value=2**64))
def test_integer_res_matches_bit_length(v):
    # ceil(log2(v + 1)) is exactly v.bit_length(); the denominator needs 1 bit
    bits = res_rational(v)
    assert bits == max(1, v.bit_length())
    assert 2**bits >= v + 1


def test_integer_res_powers_of_two_boundaries():
    for e in range(1, 65):
        assert res_rational(2**e - 1) == e
        assert res_rational(2**e) == e + 1


@given(st.integers(min_value=1, max_value=2**70))
def test_ceil_log2(v):
    c = ceil_log2(v)
    assert 2**c >= v and (c == 0 or 2 ** (c - 1) < v)

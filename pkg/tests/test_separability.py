import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from nnrepr.boolfn import FunctionSpec, truth_table
from nnrepr.errors import InvalidInputError, ResourceLimitError
from nnrepr.separability import check_witness, is_linear_threshold


@pytest.mark.parametrize("method", ["simplex", "fm"])
def test_examples(method):
    and_ = is_linear_threshold("0001", 2, method)
    assert and_.separable and check_witness("0001", 2, and_.w, and_.b)
    assert check_witness("0001", 2, (1, 1), 2)
    assert not is_linear_threshold("0110", 2, method).separable
    assert is_linear_threshold("0000", 2, method).separable
    assert is_linear_threshold("1111", 2, method).separable
    assert not is_linear_threshold("01101001", 3, method).separable  # 3-bit parity


def test_three_input_census():
    # 104 of the 256 three-input Boolean functions are threshold functions
    count = 0
    for bits in itertools.product("01", repeat=8):
        table = "".join(bits)
        a = is_linear_threshold(table, 3, "simplex")
        b = is_linear_threshold(table, 3, "fm")
        assert a.separable == b.separable, table
        count += a.separable
    assert count == 104


def test_two_input_census():
    separable = [t for t in ("".join(b) for b in itertools.product("01", repeat=4))
                 if is_linear_threshold(t, 2).separable]
    assert len(separable) == 14
    assert "0110" not in separable and "1001" not in separable


def test_simplex_and_fm_agree_on_random_four_input_tables():
    rng = random.Random(4)
    for _ in range(40):
        table = "".join(rng.choice("01") for _ in range(16))
        assert is_linear_threshold(table, 4, "simplex").separable == is_linear_threshold(table, 4, "fm").separable


@settings(max_examples=100)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.lists(st.integers(-16, 16), min_size=n, max_size=n),
                                                   st.integers(-60, 60))))
def test_lt_tables_are_separable(case):
    w, b = case
    table = truth_table(FunctionSpec.lt(w, b))
    cert = is_linear_threshold(table, len(w))
    assert cert.separable
    iw, ib = cert.integer_witness()
    assert check_witness(table, len(w), iw, ib)


def test_non_threshold_elt_table():
    # 1{x1 + x2 = 1} is XOR
    assert not is_linear_threshold(truth_table(FunctionSpec.elt([1, 1], 1)), 2).separable


def test_width_twelve_threshold_table():
    w = [1 << i for i in range(12)]
    table = truth_table(FunctionSpec.lt(w, 1365))
    cert = is_linear_threshold(table, 12)
    assert cert.separable and check_witness(table, 12, cert.w, cert.b)


def test_errors():
    with pytest.raises(InvalidInputError):
        is_linear_threshold("011", 2)
    with pytest.raises(InvalidInputError):
        is_linear_threshold("0001", 2, method="magic")
    with pytest.raises(ResourceLimitError):
        is_linear_threshold("01" * (1 << 12), 13)
    with pytest.raises(ResourceLimitError):
        is_linear_threshold("01" * 32, 6, method="fm")

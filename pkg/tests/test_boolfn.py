import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nnrepr.boolfn import (
    FunctionSpec,
    Kind,
    evaluate,
    index_of,
    input_of,
    table_from_hex,
    table_to_hex,
    truth_table,
    truth_table_array,
)
from nnrepr.errors import FormatError, InvalidInputError, ResourceLimitError


def test_evaluate_examples():
    assert evaluate(FunctionSpec.omb(3), (1, 0, 1)) == 1
    assert evaluate(FunctionSpec.eq(2), (1, 0, 1, 0)) == 1
    # x = (0,1) is 2 and y = (1,0) is 1 under little-endian weights
    assert evaluate(FunctionSpec.comp(2), (0, 1, 1, 0)) == 1
    assert evaluate(FunctionSpec.comp(2), (1, 0, 0, 1)) == 0


def test_truth_table_examples():
    assert truth_table(FunctionSpec.lt([1, 1], 2)) == "0001"
    assert truth_table(FunctionSpec.table("0110")) == "0110"
    # OMB n=2 is 1 exactly on (1,0) and (1,1)
    assert truth_table(FunctionSpec.omb(2)) == "0011"


def test_evaluate_rejects_arity_mismatch():
    with pytest.raises(InvalidInputError):
        evaluate(FunctionSpec.eq(2), (1, 0, 1))
    with pytest.raises(InvalidInputError):
        evaluate(FunctionSpec.omb(2), (1, 2))


@pytest.mark.parametrize("make", [
    lambda: FunctionSpec(Kind.LT, 2, (1,), 0),
    lambda: FunctionSpec.lt([1.5], 0),
    lambda: FunctionSpec.table("011"),
    lambda: FunctionSpec.table("01x0"),
    lambda: FunctionSpec.eq(0),
    lambda: FunctionSpec.comp(-1),
])
def test_invalid_specs(make):
    with pytest.raises(InvalidInputError):
        make()


def test_arity_cap():
    with pytest.raises(ResourceLimitError):
        truth_table(FunctionSpec.omb(6), cap=5)


def test_arity_cap_env_override(monkeypatch):
    monkeypatch.setenv("NNREPR_MAX_ARITY", "4")
    with pytest.raises(ResourceLimitError):
        truth_table_array(FunctionSpec.omb(5))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("kind", [Kind.EQ, Kind.COMP, Kind.OMB])
def test_vectorized_table_matches_evaluate(kind, n):
    spec = FunctionSpec(kind, n)
    table = truth_table(spec)
    for k in range(1 << spec.arity):
        assert int(table[k]) == evaluate(spec, input_of(k, spec.arity))


def _comparison_oracle(kind, n, k):
    # read the two operands straight off the index bits, little-endian per operand
    bits = format(k, f"0{2 * n}b")
    x = int(bits[:n][::-1], 2)
    y = int(bits[n:][::-1], 2)
    return int(x == y) if kind is Kind.EQ else int(x >= y)


@pytest.mark.parametrize("n", [1, 4, 7, 10])
@pytest.mark.parametrize("kind", [Kind.EQ, Kind.COMP])
def test_eq_comp_against_integer_oracle(kind, n):
    table = truth_table_array(FunctionSpec(kind, n))
    ks = range(1 << (2 * n)) if n <= 7 else random.Random(n).sample(range(1 << (2 * n)), 20000)
    for k in ks:
        assert table[k] == _comparison_oracle(kind, n, k)
    if kind is Kind.EQ:
        assert int(table.sum()) == 1 << n
    else:
        assert int(table.sum()) == (1 << n) * ((1 << n) + 1) // 2


@given(st.integers(min_value=1, max_value=16).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=(1 << n) - 1))))
def test_omb_is_parity_of_first_one(case):
    n, k = case
    X = input_of(k, n)
    expected = 0 if k == 0 else (X.index(1) + 1) % 2
    assert evaluate(FunctionSpec.omb(n), X) == expected


@given(st.lists(st.integers(-16, 16), min_size=1, max_size=8), st.integers(-40, 40))
def test_lt_and_elt_tables_match_evaluate(w, b):
    for spec in (FunctionSpec.lt(w, b), FunctionSpec.elt(w, b)):
        table = truth_table(spec)
        for k, X in enumerate(itertools.product((0, 1), repeat=len(w))):
            assert int(table[k]) == evaluate(spec, X)


def test_index_order_is_msb_first():
    assert index_of((1, 0, 0)) == 4
    assert input_of(6, 3) == (1, 1, 0)
    assert all(index_of(input_of(k, 5)) == k for k in range(32))


def test_big_weights_use_exact_integers():
    w = [2**62, 2**62, -(2**63)]
    spec = FunctionSpec.elt(w, 0)
    assert truth_table(spec) == "10000001"
    assert truth_table_array(spec).dtype == np.uint8


@given(st.text(alphabet="01", min_size=1, max_size=64))
def test_hex_roundtrip(bits):
    assert table_from_hex(table_to_hex(bits)) == bits


def test_hex_rejects_bad_order():
    with pytest.raises(FormatError):
        table_from_hex({"order": "lsb-first", "length": 4, "hex": "6"})


@pytest.mark.parametrize("spec", [FunctionSpec.lt([1, -2], 0), FunctionSpec.elt([3], 3), FunctionSpec.eq(3),
                                  FunctionSpec.comp(2), FunctionSpec.omb(4), FunctionSpec.table("0110")])
def test_spec_json_roundtrip(spec):
    assert FunctionSpec.from_json(spec.to_json()) == spec

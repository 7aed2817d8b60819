import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nnrepr import Label, verify
from nnrepr.arith import res_matrix
from nnrepr.boolfn import FunctionSpec, truth_table
from nnrepr.constructions import (
    comp_scales,
    construct_comp,
    construct_elt,
    construct_eq,
    construct_for,
    construct_lt,
    construct_omb,
    find_hyperplane_binary_point,
)
from nnrepr.eqmatrix import EqMatrix, builtin_matrix
from nnrepr.errors import DegenerateFunctionError, InvalidInputError

P, N = Label.POS, Label.NEG
h = F(1, 2)


def _dot(w, x):
    return sum(F(a) * b for a, b in zip(w, x))


def test_lt_or():
    rep = construct_lt([1, 1], 1)
    assert rep.meta["params"]["xstar"] == [F(1, 4), F(1, 4)]
    assert rep.meta["params"]["c"] == F(1, 4)
    assert rep.anchors == ((h, h), (0, 0)) and rep.labels == (P, N)
    assert verify(rep, FunctionSpec.lt([1, 1], 1)).passed


def test_lt_and():
    rep = construct_lt([1, 1], 2)
    assert rep.meta["params"]["xstar"] == [F(3, 4), F(3, 4)]
    assert rep.anchors == ((1, 1), (h, h)) and rep.labels == (P, N)
    assert verify(rep, FunctionSpec.lt([1, 1], 2)).passed


def test_lt_identity_bit():
    rep = construct_lt([1], 1)
    assert rep.meta["params"]["xstar"] == [h] and rep.meta["params"]["c"] == h
    assert rep.anchors == ((1,), (0,))


def test_lt_zero_weights():
    with pytest.raises(DegenerateFunctionError):
        construct_lt([0, 0], 1)


def test_elt_examples():
    rep = construct_elt([1, -1], 0)
    assert rep.anchors == ((0, 0), (-h, h), (h, -h))
    assert rep.labels == (P, N, N)
    # a1 = X* - c w and a2 = X* + c w; as a set this is {(1/2,-1/2), (-1/2,1/2)}
    assert set(rep.anchors[1:]) == {(h, -h), (-h, h)}
    assert verify(rep, FunctionSpec.elt([1, -1], 0)).passed

    rep = construct_elt([2], 2)
    assert rep.meta["params"]["c"] == F(1, 4)
    assert set(rep.anchors) == {(1,), (h,), (F(3, 2),)}
    assert verify(rep, FunctionSpec.elt([2], 2)).passed

    with pytest.raises(DegenerateFunctionError):
        construct_elt([1, 1], 3)


def test_find_hyperplane_binary_point():
    assert find_hyperplane_binary_point([1, -1], 0) == (0, 0)
    assert find_hyperplane_binary_point([2, 3, 5], 5) == (0, 0, 1)
    assert find_hyperplane_binary_point([1, 1], 3) is None


@settings(max_examples=150)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=10), st.integers(-30, 30))
def test_hyperplane_point_is_lex_smallest(w, b):
    import itertools

    brute = next((x for x in itertools.product((0, 1), repeat=len(w)) if _dot(w, x) == b), None)
    assert find_hyperplane_binary_point(w, b) == brute


@settings(max_examples=60)
@given(st.lists(st.integers(-16, 16), min_size=1, max_size=8).filter(any), st.integers(-40, 40))
def test_lt_invariants_and_verification(w, b):
    rep = construct_lt(w, b)
    xstar, c = rep.meta["params"]["xstar"], rep.meta["params"]["c"]
    assert c > 0 and _dot(w, xstar) == b - h
    assert verify(rep, FunctionSpec.lt(w, b)).passed


@settings(max_examples=60)
@given(st.lists(st.integers(-16, 16), min_size=1, max_size=8).filter(any), st.integers(-20, 20))
def test_elt_invariants_and_verification(w, b):
    if find_hyperplane_binary_point(w, b) is None:
        with pytest.raises(DegenerateFunctionError):
            construct_elt(w, b)
        return
    rep = construct_elt(w, b)
    a0, a1, a2 = rep.anchors
    assert _dot(w, a0) == b
    # collinear with a0 the exact midpoint
    assert all(x0 + x0 == x1 + x2 for x0, x1, x2 in zip(a0, a1, a2))
    assert verify(rep, FunctionSpec.elt(w, b)).passed


def test_eq_identity_n1():
    rep = construct_eq(builtin_matrix("identity", 1))
    assert rep.anchors == ((h, h), (1, 0), (0, 1)) and rep.labels == (P, N, N)
    assert rep.resolution == 2
    assert verify(rep, FunctionSpec.eq(1)).passed


def test_eq_single_row():
    rep = construct_eq([[1, 2]], 2)
    assert rep.size == 3 and rep.meta["params"]["c"] == [F(1, 10)]
    assert rep.anchors[1] == (h + F(1, 10), h + F(2, 10), h - F(1, 10), h - F(2, 10))
    assert verify(rep, FunctionSpec.eq(2)).passed


def test_eq_identity_n10_shape():
    rep = construct_eq(builtin_matrix("identity", 10))
    assert rep.size == 21 and rep.resolution == 2


def test_eq_errors():
    with pytest.raises(InvalidInputError):
        construct_eq([[1, 0], [0, 0]])
    with pytest.raises(InvalidInputError):
        construct_eq([[1, 1]])  # refuted: (1,-1) is in the kernel
    with pytest.raises(InvalidInputError):
        construct_eq([[1, 2]], 3)
    with pytest.raises(InvalidInputError):
        EqMatrix(())


def test_eq_unchecked_matrix_is_accepted_as_is():
    rep = construct_eq([[1, 1]], unchecked=True)
    assert rep.meta["params"]["matrix_verdict"] == "unchecked"
    assert not verify(rep, FunctionSpec.eq(2)).passed


def test_comp_examples():
    rep = construct_comp(1)
    assert rep.anchors == ((1, 0), (F(-1, 4), F(5, 4))) and rep.labels == (P, N)
    assert verify(rep, FunctionSpec.comp(1)).passed
    assert comp_scales(2) == [h, F(5, 8), F(3, 4), F(7, 8)]
    rep = construct_comp(2)
    assert rep.size == 4 and verify(rep, FunctionSpec.comp(2)).passed
    with pytest.raises(InvalidInputError):
        construct_comp(0)


def test_omb_examples():
    rep = construct_omb(2, drop_zero_anchor=True)
    assert rep.anchors == ((1, 0), (0, h)) and rep.labels == (P, N)
    assert verify(rep, FunctionSpec.omb(2)).passed
    rep = construct_omb(3)
    assert rep.anchors == ((1, 0, 0), (0, F(2, 3), 0), (0, 0, F(1, 3)), (0, 0, 0))
    assert rep.labels == (P, N, P, N)
    with pytest.raises(InvalidInputError):
        construct_omb(3, drop_zero_anchor=True)


@pytest.mark.parametrize("n", range(1, 65))
def test_resolution_bounds_and_sizes(n):
    clog = math.ceil(math.log2(n)) if n > 1 else 0
    eq = construct_eq(builtin_matrix("identity", n))
    assert eq.size == 2 * n + 1 and eq.resolution == 2
    comp = construct_comp(n)
    assert comp.size == 2 * n and comp.resolution <= clog + 3
    omb = construct_omb(n)
    assert omb.size == n + 1 and omb.resolution <= (n).bit_length()  # ceil(log2(n+1))
    if n % 2 == 0:
        assert construct_omb(n, drop_zero_anchor=True).size == n
    c = comp_scales(n)
    assert all(x < y for x, y in zip(c, c[1:]))
    diag = [a[i] for i, a in enumerate(omb.anchors[:n])]
    assert all(x > y > 0 for x, y in zip(diag, diag[1:]))


@pytest.mark.parametrize("n", [4, 8, 12])
def test_pow2_row_growth(n):
    rep = construct_eq(builtin_matrix("pow2_row", n))
    assert rep.size == 3
    assert n - 2 <= rep.resolution <= 2 * n + 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_every_construction_verifies(n):
    for spec, rep in [
        (FunctionSpec.eq(n), construct_eq(builtin_matrix("identity", n))),
        (FunctionSpec.eq(n), construct_eq(builtin_matrix("pow2_row", n))),
        (FunctionSpec.comp(n), construct_comp(n)),
        (FunctionSpec.omb(n), construct_omb(n)),
    ]:
        assert verify(rep, spec).passed, (spec, rep.meta)


def test_construct_for_tables():
    assert construct_for(FunctionSpec.table("0000")).size == 1
    assert construct_for(FunctionSpec.table("1111")).labels == (P,)
    rep = construct_for(FunctionSpec.table("0111"))
    assert rep.size == 2 and verify(rep, FunctionSpec.table("0111")).passed
    rep = construct_for(FunctionSpec.table("0110"))
    assert rep.meta["construction"] == "pointwise"
    assert verify(rep, FunctionSpec.table("0110")).passed


def test_anchor_values_fit_recorded_resolution():
    rep = construct_comp(10)
    assert res_matrix(rep.anchors) == rep.resolution <= 6
    assert truth_table(FunctionSpec.comp(1)) == "1011"

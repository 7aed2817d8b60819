"""Anchor constructions for threshold functions, in exact rationals.

Each builder returns an :class:`~nnrepr.anchors.AnchorSet` whose ``meta``
records the construction name and parameters.  Labels: POS marks anchors
that must be nearest to 1-inputs, NEG those nearest to 0-inputs.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .anchors import AnchorSet, Label
from .boolfn import FunctionSpec, Kind
from .eqmatrix import EqMatrix, Verdict, validate_eq_matrix
from .errors import DegenerateFunctionError, InvalidInputError

HALF = Fraction(1, 2)


def _int_vector(w: Sequence[int], name: str = "w") -> tuple[int, ...]:
    w = tuple(w)
    if any(isinstance(v, bool) or not isinstance(v, int) for v in w):
        raise InvalidInputError(f"{name} must be an integer vector")
    if not w:
        raise InvalidInputError(f"{name} must be non-empty")
    return w


def construct_lt(w: Sequence[int], b: int) -> AnchorSet:
    """Two anchors for ``1{w.X >= b}``.

    Both anchors sit on the normal line through ``X* = (b - 1/2) w / |w|^2``,
    a point of the hyperplane ``w.x = b - 1/2`` that no binary vector lies
    on; they are ``X* +- c w`` with ``c = 1 / (2 |w|^2)``.
    """
    w = _int_vector(w)
    norm2 = sum(v * v for v in w)
    if norm2 == 0:
        raise DegenerateFunctionError(
            "w = 0 gives a constant function; represent it with a single anchor")
    xstar = [Fraction(2 * b - 1, 2 * norm2) * v for v in w]
    c = Fraction(1, 2 * norm2)
    a_pos = tuple(x + c * v for x, v in zip(xstar, w))
    a_neg = tuple(x - c * v for x, v in zip(xstar, w))
    meta = {"construction": "lt", "params": {"w": list(w), "b": b, "c": c, "xstar": xstar}}
    return AnchorSet((a_pos, a_neg), (Label.POS, Label.NEG), len(w), meta)


def find_hyperplane_binary_point(w: Sequence[int], b: int) -> tuple[int, ...] | None:
    """Lexicographically smallest binary ``X`` with ``w.X = b``, or None.

    Meet in the middle: subset sums of the second half are hashed (earliest
    lexicographic completion kept), then the first half is scanned in
    lexicographic order, so the first hit is the overall minimum.
    """
    w = tuple(w)
    n = len(w)
    h = (n + 1) // 2
    head, tail = w[:h], w[h:]
    completions: dict[int, tuple[int, ...]] = {}
    for bits in itertools.product((0, 1), repeat=len(tail)):
        s = sum(a * x for a, x in zip(tail, bits))
        completions.setdefault(s, bits)
    for bits in itertools.product((0, 1), repeat=len(head)):
        rest = completions.get(b - sum(a * x for a, x in zip(head, bits)))
        if rest is not None:
            return bits + rest
    return None


def construct_elt(w: Sequence[int], b: int) -> AnchorSet:
    """Three collinear anchors for ``1{w.X = b}``: ``X*`` and ``X* -+ w/|w|^2``."""
    w = _int_vector(w)
    norm2 = sum(v * v for v in w)
    if norm2 == 0:
        raise DegenerateFunctionError(
            "w = 0 gives a constant function; represent it with a single anchor")
    xstar = find_hyperplane_binary_point(w, b)
    if xstar is None:
        raise DegenerateFunctionError(
            f"no binary X satisfies w.X = {b}; the function is constant 0 (one anchor)")
    c = Fraction(1, norm2)
    a0 = tuple(Fraction(x) for x in xstar)
    a1 = tuple(x - c * v for x, v in zip(a0, w))
    a2 = tuple(x + c * v for x, v in zip(a0, w))
    meta = {"construction": "elt", "params": {"w": list(w), "b": b, "c": c, "xstar": list(xstar)}}
    return AnchorSet((a0, a1, a2), (Label.POS, Label.NEG, Label.NEG), len(w), meta)


def construct_eq(A, n: int | None = None, unchecked: bool = False) -> AnchorSet:
    """``2m + 1`` anchors for the 2n-input EQ from an m x n EQ matrix.

    ``a_0`` is the all-halves point; row ``i`` contributes the pair
    ``a_0 +- c_i [A_i, -A_i]`` with ``c_i = 1 / (2 |A_i|^2)``.  An
    unvalidated matrix is validated first unless ``unchecked`` is set.
    """
    mat = A if isinstance(A, EqMatrix) else EqMatrix(tuple(map(tuple, A)))
    if n is None:
        n = mat.cols
    if n < 1 or mat.rows < 1:
        raise InvalidInputError("EQ construction needs m >= 1 rows and n >= 1 columns")
    if mat.cols != n:
        raise InvalidInputError(f"matrix has {mat.cols} columns but n = {n}")
    norms = mat.row_norms()
    if 0 in norms:
        raise InvalidInputError(f"EQ matrix row {norms.index(0) + 1} is all zero")
    if mat.validated is Verdict.UNCHECKED and not unchecked:
        mat = validate_eq_matrix(mat)
    if mat.validated is Verdict.REFUTED:
        raise InvalidInputError(
            f"not an EQ matrix: A x = 0 for x = {list(mat.refutation_witness)}")

    a0 = (HALF,) * (2 * n)
    anchors, labels, cs = [a0], [Label.POS], []
    for row, norm2 in zip(mat.entries, norms):
        c = Fraction(1, 2 * norm2)
        cs.append(c)
        direction = tuple(row) + tuple(-v for v in row)
        anchors.append(tuple(HALF + c * d for d in direction))
        anchors.append(tuple(HALF - c * d for d in direction))
        labels += [Label.NEG, Label.NEG]
    meta = {"construction": "eq",
            "params": {"n": n, "matrix": [list(r) for r in mat.entries], "c": cs,
                       "matrix_verdict": mat.validated.value}}
    return AnchorSet(tuple(anchors), tuple(labels), 2 * n, meta)


def comp_scales(n: int) -> list[Fraction]:
    """Displacements ``c_i = 1/2 + (i - 1)/(4n)``, i = 1..2n (strictly increasing)."""
    return [HALF + Fraction(i, 4 * n) for i in range(2 * n)]


def construct_comp(n: int) -> AnchorSet:
    """2n anchors for ``COMP(X, Y) = 1{X >= Y}`` on 2n inputs.

    Significance rank ``r`` (1 = most significant) gets the anchor pair
    ``X* + c_{2r-1} W_r`` (POS) and ``X* - c_{2r} W_r`` (NEG), where
    ``X* = 1/2`` and ``W_r = e_x - e_y`` for that bit.  Smaller
    displacements win ties of the leading bits, so the most significant
    differing bit decides.  Under the little-endian EQ/COMP input layout
    rank ``r`` is bit index ``n - r`` of each operand.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"COMP needs n >= 1, got {n!r}")
    c = comp_scales(n)
    anchors, labels = [], []
    for r in range(1, n + 1):
        bit = n - r
        for scale, sign, label in ((c[2 * r - 2], 1, Label.POS), (c[2 * r - 1], -1, Label.NEG)):
            a = [HALF] * (2 * n)
            a[bit] = HALF + sign * scale
            a[n + bit] = HALF - sign * scale
            anchors.append(tuple(a))
            labels.append(label)
    meta = {"construction": "comp", "params": {"n": n, "c": c, "rank_to_bit": [n - r for r in range(1, n + 1)]}}
    return AnchorSet(tuple(anchors), tuple(labels), 2 * n, meta)


def construct_omb(n: int, drop_zero_anchor: bool = False) -> AnchorSet:
    """``n + 1`` diagonal anchors for ODD-MAX-BIT.

    ``a_i = (1 - (i-1)/n) e_i`` labeled POS for odd i, NEG for even i, plus
    the origin labeled NEG.  For even n the origin is redundant (``a_n`` is
    already NEG and nearest to the zero input) and may be dropped.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"OMB needs n >= 1, got {n!r}")
    if drop_zero_anchor and n % 2:
        raise InvalidInputError("dropping the zero anchor needs even n (a_n must be NEG)")
    anchors, labels = [], []
    for i in range(1, n + 1):
        a = [Fraction(0)] * n
        a[i - 1] = 1 - Fraction(i - 1, n)
        anchors.append(tuple(a))
        labels.append(Label.POS if i % 2 else Label.NEG)
    if not drop_zero_anchor:
        anchors.append((Fraction(0),) * n)
        labels.append(Label.NEG)
    meta = {"construction": "omb", "params": {"n": n, "drop_zero_anchor": drop_zero_anchor}}
    return AnchorSet(tuple(anchors), tuple(labels), n, meta)


def constant_representation(arity: int, value: int) -> AnchorSet:
    label = Label.POS if value else Label.NEG
    return AnchorSet(((Fraction(0),) * arity,), (label,), arity,
                     {"construction": "constant", "params": {"value": value}})


def pointwise_representation(spec: FunctionSpec) -> AnchorSet:
    """Every input is its own anchor; valid for any function, size 2**arity."""
    from .boolfn import input_of, truth_table

    table = truth_table(spec)
    anchors = [tuple(Fraction(v) for v in input_of(k, spec.arity)) for k in range(len(table))]
    labels = [Label.POS if t == "1" else Label.NEG for t in table]
    return AnchorSet(tuple(anchors), tuple(labels), spec.arity, {"construction": "pointwise"})


def construct_for(spec: FunctionSpec, eq_matrix=None, drop_zero_anchor: bool = False) -> AnchorSet:
    """Dispatch a :class:`FunctionSpec` to its construction.

    TABLE specs go through the separability test: constant tables get one
    anchor, threshold tables the two-anchor construction on an integer
    witness, and everything else the pointwise representation.
    """
    from .boolfn import truth_table
    from .eqmatrix import builtin_matrix
    from .separability import is_linear_threshold

    kind = spec.kind
    if kind is Kind.LT:
        return construct_lt(spec.w, spec.b)
    if kind is Kind.ELT:
        return construct_elt(spec.w, spec.b)
    if kind is Kind.EQ:
        mat = eq_matrix if eq_matrix is not None else builtin_matrix("identity", spec.n)
        return construct_eq(mat, spec.n)
    if kind is Kind.COMP:
        return construct_comp(spec.n)
    if kind is Kind.OMB:
        return construct_omb(spec.n, drop_zero_anchor)
    table = truth_table(spec)
    if set(table) == {"1"} or set(table) == {"0"}:
        return constant_representation(spec.arity, int(table[0]))
    cert = is_linear_threshold(table, spec.arity)
    if cert.separable:
        w, b = cert.integer_witness()
        rep = construct_lt(w, b)
        return AnchorSet(rep.anchors, rep.labels, rep.arity,
                         {"construction": "lt", "params": {**rep.meta["params"], "from_table": True}})
    return pointwise_representation(spec)


__all__ = [
    "comp_scales",
    "constant_representation",
    "construct_comp",
    "construct_elt",
    "construct_eq",
    "construct_for",
    "construct_lt",
    "construct_omb",
    "find_hyperplane_binary_point",
    "pointwise_representation",
]

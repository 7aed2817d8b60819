"""Symbolic Boolean function specs and their exact evaluation.

Two bit-order conventions are in play and both are kept as defined:

* EQ and COMP read ``X = (x_1..x_n, y_1..y_n)`` with ``x_i`` worth 2**(i-1),
  i.e. position 1 is the least significant bit of each operand.
* OMB reads ``X_1`` as the most significant (leftmost) bit.

Truth tables enumerate inputs by an index ``k`` whose most significant bit
is position 1 of the input vector, so ``table[k]`` is the value on the
input spelled by ``format(k, f"0{arity}b")``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import FormatError, InvalidInputError, ResourceLimitError
from .limits import max_arity

TABLE_ORDER = "msb-first"


class Kind(str, Enum):
    LT = "LT"
    ELT = "ELT"
    EQ = "EQ"
    COMP = "COMP"
    OMB = "OMB"
    TABLE = "TABLE"


@dataclass(frozen=True)
class FunctionSpec:
    """A target Boolean function.

    ``n`` is the half-width for EQ/COMP (arity 2n) and the width otherwise.
    """

    kind: Kind
    n: int
    w: tuple[int, ...] = ()
    b: int = 0
    bits: str = ""

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise InvalidInputError(f"n must be a non-negative integer, got {self.n!r}")
        if kind in (Kind.LT, Kind.ELT):
            w = tuple(self.w)
            if any(isinstance(v, bool) or not isinstance(v, int) for v in w) or isinstance(self.b, bool) \
                    or not isinstance(self.b, int):
                raise InvalidInputError("LT/ELT weights and bias must be integers")
            if len(w) != self.n:
                raise InvalidInputError(f"weight vector has length {len(w)}, expected {self.n}")
            object.__setattr__(self, "w", w)
        elif kind is Kind.TABLE:
            if len(self.bits) != 1 << self.n or set(self.bits) - {"0", "1"}:
                raise InvalidInputError(f"TABLE needs exactly {1 << self.n} bits of 0/1")
        elif self.n < 1:
            raise InvalidInputError(f"{kind.value} needs n >= 1")

    # constructors -----------------------------------------------------
    @classmethod
    def lt(cls, w: Sequence[int], b: int) -> "FunctionSpec":
        return cls(Kind.LT, len(w), tuple(w), b)

    @classmethod
    def elt(cls, w: Sequence[int], b: int) -> "FunctionSpec":
        return cls(Kind.ELT, len(w), tuple(w), b)

    @classmethod
    def eq(cls, n: int) -> "FunctionSpec":
        return cls(Kind.EQ, n)

    @classmethod
    def comp(cls, n: int) -> "FunctionSpec":
        return cls(Kind.COMP, n)

    @classmethod
    def omb(cls, n: int) -> "FunctionSpec":
        return cls(Kind.OMB, n)

    @classmethod
    def table(cls, bits: str) -> "FunctionSpec":
        size = len(bits)
        if size == 0 or size & (size - 1):
            raise InvalidInputError(f"truth table length {size} is not a power of two")
        return cls(Kind.TABLE, size.bit_length() - 1, bits=bits)

    @property
    def arity(self) -> int:
        return 2 * self.n if self.kind in (Kind.EQ, Kind.COMP) else self.n

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "n": self.n}
        if self.kind in (Kind.LT, Kind.ELT):
            out["w"] = list(self.w)
            out["b"] = self.b
        elif self.kind is Kind.TABLE:
            out["bits"] = self.bits
        return out

    @classmethod
    def from_json(cls, obj) -> "FunctionSpec":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise FormatError(f"function spec is not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FormatError("function spec must be an object with a 'kind' field")
        try:
            kind = Kind(str(obj["kind"]).upper())
        except ValueError:
            raise FormatError(f"unknown function kind {obj['kind']!r}") from None
        if kind in (Kind.LT, Kind.ELT):
            w = obj.get("w")
            if not isinstance(w, list):
                raise FormatError(f"{kind.value} spec needs a 'w' list")
            spec = cls(kind, len(w), tuple(w), obj.get("b", 0))
            if "n" in obj and obj["n"] != spec.n:
                raise FormatError(f"'n'={obj['n']} disagrees with len(w)={spec.n}")
            return spec
        if kind is Kind.TABLE:
            bits = obj.get("bits")
            if not isinstance(bits, str):
                raise FormatError("TABLE spec needs a 'bits' string")
            return cls.table(bits)
        if "n" not in obj:
            raise FormatError(f"{kind.value} spec needs 'n'")
        return cls(kind, obj["n"])


def _as_bits(X, arity: int) -> tuple[int, ...]:
    bits = tuple(int(v) for v in X)
    if len(bits) != arity:
        raise InvalidInputError(f"input has length {len(bits)}, expected {arity}")
    if any(v not in (0, 1) for v in bits):
        raise InvalidInputError("inputs must be binary")
    return bits


def little_endian_value(bits: Sequence[int]) -> int:
    return sum(v << i for i, v in enumerate(bits))


def evaluate(spec: FunctionSpec, X) -> int:
    """Exact value of ``spec`` on the binary vector ``X`` (integers only)."""
    bits = _as_bits(X, spec.arity)
    kind = spec.kind
    if kind is Kind.LT:
        return int(sum(w * x for w, x in zip(spec.w, bits)) >= spec.b)
    if kind is Kind.ELT:
        return int(sum(w * x for w, x in zip(spec.w, bits)) == spec.b)
    if kind in (Kind.EQ, Kind.COMP):
        x = little_endian_value(bits[: spec.n])
        y = little_endian_value(bits[spec.n:])
        return int(x == y) if kind is Kind.EQ else int(x >= y)
    if kind is Kind.OMB:
        n = spec.n
        total = sum((-1) ** i * (v << (n - 1 - i)) for i, v in enumerate(bits))
        return int(total > 0)
    return int(spec.bits[index_of(bits)])


def index_of(bits: Sequence[int]) -> int:
    """Table index of an input vector (position 1 is the index's MSB)."""
    k = 0
    for v in bits:
        k = (k << 1) | v
    return k


def input_of(k: int, arity: int) -> tuple[int, ...]:
    return tuple((k >> (arity - 1 - j)) & 1 for j in range(arity))


def _check_cap(arity: int, cap: int | None) -> None:
    cap = max_arity() if cap is None else cap
    if arity > cap:
        raise ResourceLimitError(f"arity {arity} exceeds the cap of {cap}")


def _partial_sums(weights: Sequence[int], dtype) -> np.ndarray:
    """Weighted sums of every assignment, first weight on the index MSB."""
    sums = np.zeros(1, dtype=dtype)
    for w in reversed(weights):
        sums = np.concatenate([sums, sums + w])
    return sums


def weighted_sum_table(weights: Sequence[int]) -> np.ndarray:
    """``w.X`` for every input index, built as an outer sum of two halves."""
    bound = sum(abs(w) for w in weights)
    dtype = np.int64 if bound < 2**62 else object
    h = len(weights) // 2
    top = _partial_sums(weights[:h], dtype)
    bottom = _partial_sums(weights[h:], dtype)
    return np.add.outer(top, bottom).ravel()


def _linear_form(spec: FunctionSpec) -> tuple[list[int], str, int]:
    """Every built-in kind is ``w.X <op> b`` for some integer ``w``."""
    kind = spec.kind
    if kind is Kind.LT:
        return list(spec.w), ">=", spec.b
    if kind is Kind.ELT:
        return list(spec.w), "==", spec.b
    n = spec.n
    if kind in (Kind.EQ, Kind.COMP):
        w = [1 << i for i in range(n)] + [-(1 << i) for i in range(n)]
        return w, ("==" if kind is Kind.EQ else ">="), 0
    return [(-1) ** i * (1 << (n - 1 - i)) for i in range(n)], ">", 0


def truth_table_array(spec: FunctionSpec, cap: int | None = None) -> np.ndarray:
    """All 2**arity values as a uint8 array indexed by input index."""
    _check_cap(spec.arity, cap)
    if spec.kind is Kind.TABLE:
        return np.frombuffer(spec.bits.encode("ascii"), dtype=np.uint8) - ord("0")
    w, op, b = _linear_form(spec)
    s = weighted_sum_table(w)
    out = {">=": s >= b, "==": s == b, ">": s > b}[op]
    return np.asarray(out, dtype=np.uint8)


def truth_table(spec: FunctionSpec, cap: int | None = None) -> str:
    """Truth table as a ``0``/``1`` string of length 2**arity."""
    arr = truth_table_array(spec, cap)
    return (arr + ord("0")).astype(np.uint8).tobytes().decode("ascii")


def table_to_hex(bits: str) -> dict:
    """Pack a truth table string into hex, four outputs per digit."""
    padded = bits + "0" * (-len(bits) % 4)
    digits = "".join(f"{int(padded[i:i + 4], 2):x}" for i in range(0, len(padded), 4))
    return {"order": TABLE_ORDER, "length": len(bits), "hex": digits}


def table_from_hex(obj: dict) -> str:
    if obj.get("order") != TABLE_ORDER:
        raise FormatError(f"unsupported truth table order {obj.get('order')!r}")
    try:
        length = int(obj["length"])
        bits = "".join(f"{int(c, 16):04b}" for c in obj["hex"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"malformed packed truth table: {exc}") from None
    if len(bits) < length:
        raise FormatError("packed truth table is shorter than its length field")
    return bits[:length]

"""EQ matrices: integer matrices with no nonzero {-1, 0, 1} kernel vector.

Validation is a meet-in-the-middle search.  Columns are split in two
halves, every {-1,0,1} assignment of each half is turned into its partial
sum ``A_half @ x_half``, and a kernel vector exists iff some left sum is
the negation of some right sum (excluding the all-zero pair).
"""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence
import warnings

import numpy as np

from .errors import FormatError, InvalidInputError, ResourceLimitError
from .limits import EQ_MATRIX_MAX_WIDTH


class Verdict(str, Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNCHECKED = "unchecked"


@dataclass(frozen=True)
class EqMatrix:
    entries: tuple[tuple[int, ...], ...]
    validated: Verdict = Verdict.UNCHECKED
    refutation_witness: tuple[int, ...] | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise InvalidInputError("EQ matrix must have at least one row and one column")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise InvalidInputError(f"ragged matrix: row {i + 1} has {len(r)} entries, expected {width}")
            if any(isinstance(v, bool) or not isinstance(v, int) for v in r):
                raise InvalidInputError(f"row {i + 1} has non-integer entries")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "validated", Verdict(self.validated))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row_norms(self) -> list[int]:
        """Squared Euclidean row norms, i.e. diag(A A^T)."""
        return [sum(v * v for v in r) for r in self.entries]

    def zero_columns(self) -> list[int]:
        return [j for j in range(self.cols) if all(r[j] == 0 for r in self.entries)]

    def validate(self, workers: int = 1) -> "EqMatrix":
        return validate_eq_matrix(self.entries, workers=workers)

    def to_json(self) -> dict:
        out = {
            "rows": [list(r) for r in self.entries],
            "verdict": self.validated.value,
            "witness": list(self.refutation_witness) if self.refutation_witness else None,
        }
        out.update(self.stats)
        return out


def matvec(entries: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * v for a, v in zip(row, x)) for row in entries]


def _half_assignments(width: int) -> np.ndarray:
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product((0, 1, -1), repeat=width)), dtype=np.int64)
    return grid


def _row_keys(sums: np.ndarray) -> np.ndarray:
    """View each row of an int64 matrix as one opaque, hashable record."""
    sums = np.ascontiguousarray(sums)
    return sums.view(np.dtype((np.void, sums.dtype.itemsize * sums.shape[1]))).ravel()


def validate_eq_matrix(entries, workers: int = 1, cap: int = EQ_MATRIX_MAX_WIDTH) -> EqMatrix:
    """Prove or refute the EQ-matrix property.

    Returns an :class:`EqMatrix` whose ``validated`` is ``PROVEN`` or
    ``REFUTED``; a refutation carries a re-checked kernel witness.
    """
    A = entries.entries if isinstance(entries, EqMatrix) else entries
    base = EqMatrix(A)
    n = base.cols
    if n > cap:
        raise ResourceLimitError(f"EQ-matrix validation is capped at {cap} columns, got {n}")
    start = time.perf_counter()
    bound = max(abs(v) for r in base.entries for v in r) * n
    if bound < 2**62:
        witness, enumerated = _mitm_numpy(base.entries, workers)
    else:
        witness, enumerated = _mitm_python(base.entries)
    stats = {"assignments_enumerated": enumerated,
             "elapsed_ms": round((time.perf_counter() - start) * 1000, 3)}
    if witness is None:
        return EqMatrix(base.entries, Verdict.PROVEN, None, stats)
    if not any(witness) or any(matvec(base.entries, witness)):
        raise AssertionError(f"bad refutation witness {witness}")
    # -x is a witness too; report the one whose first nonzero entry is +1
    if next(v for v in witness if v) < 0:
        witness = [-v for v in witness]
    return EqMatrix(base.entries, Verdict.REFUTED, tuple(witness), stats)


def _mitm_numpy(entries, workers):
    A = np.array(entries, dtype=np.int64)
    n = A.shape[1]
    h = n // 2
    left = _half_assignments(h)
    right = _half_assignments(n - h)
    left_sums = left @ A[:, :h].T
    right_sums = right @ A[:, h:].T
    enumerated = len(left) + len(right)

    # Row 0 of each grid is the all-zero assignment.
    zero_left = np.flatnonzero(~left_sums[1:].any(axis=1))
    if zero_left.size:
        return list(left[1 + zero_left[0]]) + [0] * (n - h), enumerated

    keys = _row_keys(left_sums)
    index: dict = {}
    for i in range(len(keys) - 1, -1, -1):
        index[keys[i].tobytes()] = i  # keeps the earliest assignment per sum

    neg_keys = _row_keys(-right_sums)

    def scan(lo_hi):
        lo, hi = lo_hi
        for j in range(max(lo, 1), hi):
            i = index.get(neg_keys[j].tobytes())
            if i is not None:
                return j, i
        return None

    chunks = np.linspace(0, len(neg_keys), max(1, workers) + 1, dtype=np.int64)
    spans = list(zip(chunks[:-1].tolist(), chunks[1:].tolist()))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = list(pool.map(scan, spans))
    else:
        hits = [scan(s) for s in spans]
    for hit in hits:
        if hit is not None:
            j, i = hit
            return [int(v) for v in left[i]] + [int(v) for v in right[j]], enumerated
    return None, enumerated


def _mitm_python(entries):
    n = len(entries[0])
    h = n // 2
    left_cols = [tuple(r[:h]) for r in entries]
    right_cols = [tuple(r[h:]) for r in entries]
    index: dict = {}
    enumerated = 0
    for x in itertools.product((0, 1, -1), repeat=h):
        enumerated += 1
        s = tuple(matvec(left_cols, x))
        if any(x) and not any(s):
            return list(x) + [0] * (n - h), enumerated
        index.setdefault(s, x)
    for y in itertools.product((0, 1, -1), repeat=n - h):
        enumerated += 1
        if not any(y):
            continue
        s = tuple(-v for v in matvec(right_cols, y))
        x = index.get(s)
        if x is not None:
            return list(x) + list(y), enumerated
    return None, enumerated


def builtin_matrix(family: str, n: int) -> EqMatrix:
    """``identity`` (n x n) or ``pow2_row`` ([1, 2, ..., 2**(n-1)])."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    if family == "identity":
        rows = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    elif family in ("pow2_row", "pow2"):
        rows = ((tuple(1 << j for j in range(n))),)
    else:
        raise InvalidInputError(f"unknown EQ-matrix family {family!r}")
    if n <= EQ_MATRIX_MAX_WIDTH // 2:
        checked = validate_eq_matrix(rows)
        if checked.validated is not Verdict.PROVEN:
            raise AssertionError(f"builtin {family} failed validation")
        return checked
    # Both families are EQ matrices for every n; skip the expensive re-run.
    return EqMatrix(rows, Verdict.PROVEN)


def load_matrix(source: str) -> EqMatrix:
    """Parse whitespace-separated integer rows, or ``{"rows": [[...], ...]}``."""
    text = source.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        rows = obj.get("rows") if isinstance(obj, dict) else None
        if not isinstance(rows, list) or not rows:
            raise FormatError("JSON matrix needs a non-empty 'rows' list")
        for i, r in enumerate(rows, 1):
            if not isinstance(r, list):
                raise FormatError("row is not a list", i)
            for j, v in enumerate(r, 1):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise FormatError(f"non-integer entry {v!r}", i, j)
        parsed = [tuple(r) for r in rows]
    else:
        parsed = []
        for i, line in enumerate(text.splitlines(), 1):
            tokens = line.split()
            if not tokens:
                continue
            row = []
            for j, tok in enumerate(tokens, 1):
                try:
                    row.append(int(tok))
                except ValueError:
                    raise FormatError(f"non-integer token {tok!r}", i, j) from None
            parsed.append(tuple(row))
        if not parsed:
            raise FormatError("matrix text holds no rows")
    width = len(parsed[0])
    for i, r in enumerate(parsed, 1):
        if len(r) != width:
            raise FormatError(f"ragged row with {len(r)} entries, expected {width}", i)
    m = EqMatrix(tuple(parsed))
    if m.zero_columns():
        # A zero column j puts e_j in the kernel, so validation will refute it.
        warnings.warn(f"EQ matrix has all-zero columns {m.zero_columns()}; those input bits are unused",
                      stacklevel=2)
    return m

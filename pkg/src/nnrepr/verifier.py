"""Exhaustive, exact nearest-neighbor verification.

Anchors are scaled by the lcm ``D`` of their denominators so every squared
distance becomes the integer ``sum_j (D x_j - M_ij)**2`` (= D**2 d**2).
Inputs are visited in reflected Gray order inside fixed subcubes: flipping
bit ``j`` from 0 to 1 adds ``D**2 - 2 D M_ij`` to anchor ``i``'s distance,
and the reverse flip subtracts it, so each input costs O(m) integer adds.

The scan itself runs in the compiled kernel (``nnrepr._kernel``) when it is
importable and the distances fit in 128 bits, and in ``nnrepr._pykernel``
otherwise.  Set ``NNREPR_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from . import _pykernel
from .anchors import AnchorSet, Label
from .arith import common_denominator_scale
from .boolfn import FunctionSpec, index_of, input_of, truth_table_array
from .errors import InvalidInputError, StructuralError
from .limits import DEFAULT_COUNTEREXAMPLE_LIMIT, max_arity

try:
    if os.environ.get("NNREPR_BACKEND", "").lower() == "python":
        raise ImportError("forced pure-Python backend")
    from . import _kernel
except ImportError:
    _kernel = None

BACKEND = "cython" if _kernel is not None else "python"

# Inputs per Gray-walk block; failures are collected block by block.
BLOCK_BITS = 16


@dataclass(frozen=True)
class ScaledAnchorTable:
    D: int
    M: tuple[tuple[int, ...], ...]
    labels: tuple[Label, ...]
    norms: tuple[int, ...]
    deltas: tuple[tuple[int, ...], ...]  # deltas[i][j] = D**2 - 2 D M[i][j]

    @classmethod
    def from_anchors(cls, anchors: AnchorSet) -> "ScaledAnchorTable":
        D, M = common_denominator_scale(anchors.anchors)
        M = tuple(map(tuple, M))
        norms = tuple(sum(v * v for v in row) for row in M)
        deltas = tuple(tuple(D * D - 2 * D * v for v in row) for row in M)
        return cls(D, M, anchors.labels, norms, deltas)

    @property
    def arity(self) -> int:
        return len(self.M[0])

    def distances(self, k: int) -> list[int]:
        """Scaled squared distances from input index ``k`` to every anchor."""
        a = self.arity
        X = [self.D * ((k >> (a - 1 - j)) & 1) for j in range(a)]
        return [sum((x - v) ** 2 for x, v in zip(X, row)) for row in self.M]

    def max_distance_bound(self) -> int:
        top = max(abs(v) for row in self.M for v in row)
        return self.arity * (self.D + top) ** 2

    def fits_int128(self) -> bool:
        top = max(abs(v) for row in self.M for v in row)
        return (self.D < 2**62 and top < 2**62
                and self.max_distance_bound().bit_length() <= _pykernel.INT128_BUDGET_BITS)


@dataclass
class VerificationReport:
    passed: bool
    total_inputs: int
    counterexamples: list[dict]
    ties: list[dict]
    n_counterexamples: int
    n_ties: int
    resolution: int
    size: int
    scale: int
    elapsed: float = field(default=0.0, compare=False)
    backend: str = field(default=BACKEND, compare=False)

    def to_json(self) -> dict:
        return {
            "schema_version": "1",
            "pass": self.passed,
            "inputs": self.total_inputs,
            "counterexamples": self.counterexamples,
            "ties": self.ties,
            "n_counterexamples": self.n_counterexamples,
            "n_ties": self.n_ties,
            "resolution_bits": self.resolution,
            "size": self.size,
            "scale": self.scale,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }

    def comparable(self) -> dict:
        """The report minus timing, for determinism checks."""
        out = self.to_json()
        out.pop("elapsed_ms")
        return out


@dataclass(frozen=True)
class Nearest:
    argmin: frozenset[int]
    distances: tuple[int, ...]
    scale: int


def _bits_of(X, arity: int) -> tuple[int, ...]:
    bits = tuple(int(v) for v in X)
    if len(bits) != arity:
        raise InvalidInputError(f"input has length {len(bits)}, anchors have arity {arity}")
    if any(v not in (0, 1) for v in bits):
        raise InvalidInputError("inputs must be binary")
    return bits


def nearest(anchors: AnchorSet, X) -> Nearest:
    """All anchors at minimum distance from ``X`` (ties kept), with the
    scaled squared distance to every anchor."""
    table = ScaledAnchorTable.from_anchors(anchors)
    d = table.distances(index_of(_bits_of(X, anchors.arity)))
    best = min(d)
    return Nearest(frozenset(i for i, v in enumerate(d) if v == best), tuple(d), table.D)


def enumerate_gray(table: ScaledAnchorTable, callback: Callable[[int, list[int]], None] | None = None,
                   start: int = 0, low: int | None = None) -> Iterator[tuple[int, list[int]]]:
    """Reference Gray walk over ``start .. start + 2**low - 1``.

    Yields ``(input index, scaled distances)`` per input, updating the
    distances incrementally; ``callback`` is invoked with the same pair.
    """
    a = table.arity
    low = a if low is None else low
    if start % (1 << low):
        raise InvalidInputError("start must be aligned to the subcube size")
    k = start
    dist = table.distances(k)
    for t in range(1, (1 << low) + 1):
        if callback is not None:
            callback(k, dist)
        yield k, list(dist)
        if t == 1 << low:
            return
        bit = (t & -t).bit_length() - 1
        j = a - 1 - bit
        sign = -1 if (k >> bit) & 1 else 1
        dist = [d + sign * row[j] for d, row in zip(dist, table.deltas)]
        k ^= 1 << bit


def _check_structure(anchors: AnchorSet) -> None:
    seen: dict[tuple, Label] = {}
    for a, lab in zip(anchors.anchors, anchors.labels):
        other = seen.setdefault(a, lab)
        if other is not lab:
            raise StructuralError(f"anchor {[str(v) for v in a]} appears with both labels")


def _scan(table: ScaledAnchorTable, truth: np.ndarray, start: int, low: int, use_kernel: bool):
    out_idx = np.empty(1 << low, dtype=np.int64)
    out_tie = np.empty(1 << low, dtype=np.uint8)
    is_pos = np.array([lab is Label.POS for lab in table.labels], dtype=np.uint8)
    if use_kernel:
        M = np.array(table.M, dtype=np.int64)
        count = _kernel.scan_block(M, table.D, is_pos, truth, table.arity, start, low, out_idx, out_tie)
    else:
        count = _pykernel.scan_block(table.M, table.D, is_pos.tolist(), truth.tobytes(), table.arity,
                                     start, low, out_idx, out_tie)
    order = np.argsort(out_idx[:count], kind="stable")
    return out_idx[:count][order], out_tie[:count][order]


def verify_parallel(anchors: AnchorSet, spec: FunctionSpec, workers: int = 1,
                    limit: int = DEFAULT_COUNTEREXAMPLE_LIMIT, cap: int | None = None,
                    backend: str | None = None) -> VerificationReport:
    """Check every binary input against ``spec`` and report failures.

    The input space is cut into subcubes of ``2**BLOCK_BITS`` inputs by
    fixing the leading coordinates; workers take subcubes, and results are
    merged in input order, so the report does not depend on ``workers``.
    Counterexamples and ties are each truncated to the ``limit`` smallest
    input indices; ``n_counterexamples`` and ``n_ties`` hold full counts.
    """
    started = time.perf_counter()
    arity = spec.arity
    if anchors.arity != arity:
        raise InvalidInputError(f"anchors have arity {anchors.arity} but the function has arity {arity}")
    cap = max_arity() if cap is None else cap
    truth = truth_table_array(spec, cap)
    _check_structure(anchors)
    table = ScaledAnchorTable.from_anchors(anchors)

    backend = backend or BACKEND
    if backend not in ("cython", "python"):
        raise InvalidInputError(f"unknown backend {backend!r}")
    use_kernel = backend == "cython" and _kernel is not None and table.fits_int128()

    low = min(arity, BLOCK_BITS)
    starts = [s << low for s in range(1 << (arity - low))]

    def run(start):
        return _scan(table, truth, start, low, use_kernel)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(s) for s in starts]

    counterexamples, ties = [], []
    n_fail = n_tie = 0
    for idx, tie in results:  # blocks arrive in increasing input order
        for k, is_tie in zip(idx.tolist(), tie.tolist()):
            if is_tie:
                n_tie += 1
                if len(ties) < limit:
                    ties.append(k)
            else:
                n_fail += 1
                if len(counterexamples) < limit:
                    counterexamples.append(k)

    pos, neg = anchors.positives(), anchors.negatives()

    def describe(k):
        d = table.distances(k)
        dpos = min((d[i] for i in pos), default=None)
        dneg = min((d[i] for i in neg), default=None)
        return {
            "x": format(k, f"0{arity}b") if arity else "",
            "expected": int(truth[k]),
            "dpos": None if dpos is None else str(dpos),
            "dneg": None if dneg is None else str(dneg),
        }

    return VerificationReport(
        passed=n_fail == 0 and n_tie == 0,
        total_inputs=1 << arity,
        counterexamples=[describe(k) for k in counterexamples],
        ties=[describe(k) for k in ties],
        n_counterexamples=n_fail,
        n_ties=n_tie,
        resolution=anchors.resolution,
        size=anchors.size,
        scale=table.D,
        elapsed=time.perf_counter() - started,
        backend="cython" if use_kernel else "python",
    )


def verify(anchors: AnchorSet, spec: FunctionSpec, limit: int = DEFAULT_COUNTEREXAMPLE_LIMIT,
           cap: int | None = None, backend: str | None = None) -> VerificationReport:
    """Single-worker :func:`verify_parallel`."""
    return verify_parallel(anchors, spec, 1, limit, cap, backend)


def exact_squared_distance(anchor: Sequence[Fraction], X: Sequence[int]) -> Fraction:
    """Unscaled rational d(X, a)**2; independent of the integer engine."""
    return sum(((Fraction(x) - v) ** 2 for x, v in zip(X, anchor)), Fraction(0))


__all__ = [
    "BACKEND",
    "Nearest",
    "ScaledAnchorTable",
    "VerificationReport",
    "enumerate_gray",
    "exact_squared_distance",
    "input_of",
    "nearest",
    "verify",
    "verify_parallel",
]

"""Acceptance grid: every construction checked exhaustively at desk scale.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the CLI
``acceptance`` subcommand and ``tests/test_acceptance.py`` both run them.
Randomized criteria draw from ``random.Random(seed)``.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .anchors import AnchorSet, Label
from .arith import ceil_log2
from .boolfn import FunctionSpec, input_of, truth_table
from .constructions import (
    comp_scales,
    construct_comp,
    construct_elt,
    construct_eq,
    construct_lt,
    construct_omb,
    find_hyperplane_binary_point,
)
from .eqmatrix import Verdict, builtin_matrix, matvec, validate_eq_matrix
from .separability import is_linear_threshold
from .verifier import ScaledAnchorTable, enumerate_gray, exact_squared_distance, verify, verify_parallel

WORKER_COUNTS = (1, 2, 4, 8)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        first = f" ({self.details[0]})" if self.details else ""
        return f"[{status}] criterion {self.number}: {self.title}{first} [{self.elapsed:.2f}s]"


class _Collector:
    def __init__(self, number, title):
        self.result = CriterionResult(number, title, True)
        self._start = time.perf_counter()

    def check(self, ok: bool, message: str) -> bool:
        if not ok:
            self.result.passed = False
            self.result.details.append(message)
        return ok

    def note(self, message: str) -> None:
        self.result.details.append(message)

    def done(self) -> CriterionResult:
        self.result.elapsed = time.perf_counter() - self._start
        if self.result.passed and not self.result.details:
            self.result.details.append("all checks hold")
        return self.result


# -- instance generators shared by several criteria --------------------------

def random_lt_instances(seed: int, n: int = 12, count: int = 100, bound: int = 16):
    """Seeded non-constant ``(w, b)`` pairs with ``|w_i| <= bound``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = [rng.randint(-bound, bound) for _ in range(n)]
        if not any(w):
            continue
        lo = sum(v for v in w if v < 0)
        hi = sum(v for v in w if v > 0)
        out.append((tuple(w), rng.randint(lo + 1, hi)))
    return out


def random_elt_instances(seed: int, n: int = 12, count: int = 100, bound: int = 16):
    """Seeded ``(w, b)`` whose hyperplane contains a binary point."""
    rng = random.Random(seed + 1)
    out = []
    while len(out) < count:
        w = [rng.randint(-bound, bound) for _ in range(n)]
        if not any(w):
            continue
        lo = sum(v for v in w if v < 0)
        hi = sum(v for v in w if v > 0)
        b = rng.randint(lo, hi)
        if find_hyperplane_binary_point(w, b) is not None:
            out.append((tuple(w), b))
    return out


def instance_grid(seed: int):
    """(anchors, spec) pairs covering criteria 1-6, for determinism checks."""
    for n in range(1, 11):
        yield construct_eq(builtin_matrix("identity", n)), FunctionSpec.eq(n)
    for n in range(2, 13):
        yield construct_eq(builtin_matrix("pow2_row", n)), FunctionSpec.eq(n)
    for n in range(1, 11):
        yield construct_comp(n), FunctionSpec.comp(n)
    for n in range(1, 21):
        yield construct_omb(n), FunctionSpec.omb(n)
        if n % 2 == 0:
            yield construct_omb(n, drop_zero_anchor=True), FunctionSpec.omb(n)
    for w, b in random_lt_instances(seed):
        yield construct_lt(w, b), FunctionSpec.lt(w, b)
    for w, b in random_elt_instances(seed):
        yield construct_elt(w, b), FunctionSpec.elt(w, b)


# -- criteria ---------------------------------------------------------------

def criterion_1(seed: int = 0, workers: int = 8) -> CriterionResult:
    c = _Collector(1, "EQ via identity matrix: 2n+1 anchors, 2-bit resolution, exhaustive pass")
    for n in range(1, 11):
        rep = construct_eq(builtin_matrix("identity", n))
        c.check(rep.size == 2 * n + 1, f"n={n}: size {rep.size} != {2 * n + 1}")
        c.check(rep.resolution == 2, f"n={n}: resolution {rep.resolution} != 2")
        report = verify(rep, FunctionSpec.eq(n))
        c.check(report.passed, f"n={n}: verification failed")
        if n == 10:
            c.check(report.elapsed < 10.0, f"n=10 single-worker took {report.elapsed:.2f}s (limit 10s)")
            par = verify_parallel(rep, FunctionSpec.eq(n), workers=workers)
            c.check(par.passed, "n=10 parallel verification failed")
            c.check(par.elapsed < 3.0, f"n=10 with {workers} workers took {par.elapsed:.2f}s (limit 3s)")
            c.note(f"n=10: {report.elapsed:.3f}s single, {par.elapsed:.3f}s with {workers} workers")
    return c.done()


def criterion_2(seed: int = 0) -> CriterionResult:
    c = _Collector(2, "EQ via single power-of-two row: 3 anchors, linear resolution")
    for n in range(2, 13):
        rep = construct_eq(builtin_matrix("pow2_row", n))
        c.check(rep.size == 3, f"n={n}: size {rep.size} != 3")
        c.check(n - 2 <= rep.resolution <= 2 * n + 3, f"n={n}: resolution {rep.resolution} outside [n-2, 2n+3]")
        c.check(verify(rep, FunctionSpec.eq(n)).passed, f"n={n}: verification failed")
    return c.done()


def criterion_3(seed: int = 0) -> CriterionResult:
    c = _Collector(3, "COMP: 2n anchors, resolution <= ceil(log2 n)+3, increasing displacements")
    for n in range(1, 11):
        rep = construct_comp(n)
        c.check(rep.size == 2 * n, f"n={n}: size {rep.size} != {2 * n}")
        bound = ceil_log2(n) + 3
        c.check(rep.resolution <= bound, f"n={n}: resolution {rep.resolution} > {bound}")
        scales = comp_scales(n)
        c.check(all(a < b for a, b in zip(scales, scales[1:])), f"n={n}: displacements not increasing")
        c.check(verify(rep, FunctionSpec.comp(n)).passed, f"n={n}: verification failed")
    return c.done()


def criterion_4(seed: int = 0) -> CriterionResult:
    c = _Collector(4, "OMB: n+1 anchors, resolution <= ceil(log2(n+1)); n anchors for even n")
    for n in range(1, 21):
        rep = construct_omb(n)
        c.check(rep.size == n + 1, f"n={n}: size {rep.size} != {n + 1}")
        c.check(rep.resolution <= ceil_log2(n + 1), f"n={n}: resolution {rep.resolution} too large")
        c.check(verify(rep, FunctionSpec.omb(n)).passed, f"n={n}: verification failed")
        if n % 2 == 0:
            small = construct_omb(n, drop_zero_anchor=True)
            c.check(small.size == n, f"n={n}: reduced size {small.size} != {n}")
            c.check(verify(small, FunctionSpec.omb(n)).passed, f"n={n}: reduced variant failed")
    return c.done()


def criterion_5(seed: int = 0) -> CriterionResult:
    c = _Collector(5, "LT two-anchor construction on 100 random n=12 instances and exponential weights")
    for w, b in random_lt_instances(seed):
        c.check(verify(construct_lt(w, b), FunctionSpec.lt(w, b)).passed, f"w={w}, b={b}: failed")
    w = tuple(1 << i for i in range(12))
    for b in (1, 1365, 2048, 4095):
        c.check(verify(construct_lt(w, b), FunctionSpec.lt(w, b)).passed, f"powers of two, b={b}: failed")
    return c.done()


def _collinear_midpoint(rep: AnchorSet, w) -> bool:
    a0, a1, a2 = rep.anchors
    if any(x0 * 2 != x1 + x2 for x0, x1, x2 in zip(a0, a1, a2)):
        return False
    diff = [x2 - x0 for x0, x2 in zip(a0, a2)]
    # a2 - a0 must be a positive multiple of w
    ratios = {d / v for d, v in zip(diff, w) if v}
    return len(ratios) == 1 and ratios.pop() > 0 and all(d == 0 for d, v in zip(diff, w) if not v)


def criterion_6(seed: int = 0) -> CriterionResult:
    c = _Collector(6, "ELT three-anchor construction on 100 random n=12 instances, collinear with midpoint")
    for w, b in random_elt_instances(seed):
        rep = construct_elt(w, b)
        c.check(_collinear_midpoint(rep, w), f"w={w}, b={b}: anchors not collinear about a0")
        c.check(verify(rep, FunctionSpec.elt(w, b)).passed, f"w={w}, b={b}: failed")
    return c.done()


def criterion_7(seed: int = 0) -> CriterionResult:
    c = _Collector(7, "lower bounds: XOR and 3-parity not separable; AND, OR, random LT tables separable")
    c.check(not is_linear_threshold("0110", 2).separable, "XOR reported separable")
    c.check(not is_linear_threshold("01101001", 3).separable, "3-bit parity reported separable")
    c.check(is_linear_threshold("0001", 2).separable, "AND reported non-separable")
    c.check(is_linear_threshold("0111", 2).separable, "OR reported non-separable")
    for w, b in random_lt_instances(seed, n=8):
        cert = is_linear_threshold(truth_table(FunctionSpec.lt(w, b)), 8)
        c.check(cert.separable, f"LT table w={w}, b={b} reported non-separable")
    xor = AnchorSet.build([[0, 0], ["1/2", "1/2"], [1, 1]], [Label.NEG, Label.POS, Label.NEG])
    c.check(verify(xor, FunctionSpec.table("0110")).passed, "XOR three-anchor set failed verification")
    return c.done()


def criterion_8(seed: int = 0) -> CriterionResult:
    c = _Collector(8, "incremental Gray engine matches rational recomputation; worker-count invariance")
    rng = random.Random(seed + 8)
    arity = 16
    anchors = AnchorSet.build(
        [[Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(arity)] for _ in range(6)],
        [Label.POS, Label.NEG] * 3)
    table = ScaledAnchorTable.from_anchors(anchors)
    samples = {}
    for _ in range(10_000):
        samples.setdefault(rng.randrange(1 << arity), []).append(rng.randrange(anchors.size))
    mismatches = 0
    for k, dist in enumerate_gray(table):
        for i in samples.get(k, ()):
            exact = exact_squared_distance(anchors.anchors[i], input_of(k, arity))
            if exact * table.D ** 2 != dist[i]:
                mismatches += 1
    c.check(mismatches == 0, f"{mismatches} of 10000 incremental distances disagree")

    differing = 0
    checked = 0
    for rep, spec in instance_grid(seed):
        reports = [verify_parallel(rep, spec, workers=k).comparable() for k in WORKER_COUNTS]
        checked += 1
        if any(r != reports[0] for r in reports[1:]):
            differing += 1
    c.check(differing == 0, f"{differing} of {checked} instances differ across worker counts")
    c.note(f"10000 distance samples, {checked} instances x workers {WORKER_COUNTS}")
    return c.done()


def naive_kernel_witness(A) -> tuple[int, ...] | None:
    """Plain 3**n enumeration, no splitting: the independent route."""
    n = len(A[0])
    grid = np.array(list(itertools.product((-1, 0, 1), repeat=n)), dtype=np.int64)
    sums = grid @ np.array(A, dtype=np.int64).T
    nonzero = grid.any(axis=1)
    hits = np.flatnonzero(nonzero & ~sums.any(axis=1))
    return tuple(int(v) for v in grid[hits[0]]) if hits.size else None


def criterion_9(seed: int = 0) -> CriterionResult:
    c = _Collector(9, "EQ-matrix meet-in-the-middle agrees with naive enumeration on 200 matrices")
    rng = random.Random(seed + 9)
    refuted = 0
    for t in range(200):
        n = rng.randint(1, 10)
        m = rng.randint(1, 4)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        fast = validate_eq_matrix(A)
        naive = naive_kernel_witness(A)
        c.check((fast.validated is Verdict.PROVEN) == (naive is None), f"matrix {A}: verdicts disagree")
        if fast.validated is Verdict.REFUTED:
            refuted += 1
            x = fast.refutation_witness
            c.check(any(x) and not any(matvec(A, x)), f"matrix {A}: witness {x} does not re-check")
    c.note(f"{200 - refuted} proven, {refuted} refuted")
    return c.done()


def criterion_10(seed: int = 0) -> CriterionResult:
    c = _Collector(10, "mutation test: +1/2 on one EQ-identity anchor entry (n=2) is detected")
    rng = random.Random(seed + 10)
    base = construct_eq(builtin_matrix("identity", 2))
    spec = FunctionSpec.eq(2)
    c.check(verify(base, spec).passed, "unmutated EQ_4 representation failed")
    flips = 0
    for _ in range(10):
        i, j = rng.randrange(base.size), rng.randrange(base.arity)
        rows = [list(a) for a in base.anchors]
        rows[i][j] += Fraction(1, 2)
        mutated = AnchorSet.build(rows, base.labels)
        try:
            report = verify(mutated, spec)
        except ValueError:
            flips += 1  # identical coordinates with opposite labels
            continue
        if not report.passed:
            flips += 1
    c.check(flips >= 1, "no mutation changed pass to fail")
    c.note(f"{flips} of 10 mutations detected")
    return c.done()


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(seed: int = 0, only=None) -> list[CriterionResult]:
    results = []
    for number, fn in enumerate(CRITERIA, 1):
        if only and number not in only:
            continue
        results.append(fn(seed))
    return results

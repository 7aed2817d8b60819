"""Exact linear-separability test for truth tables.

A table is a linear threshold function iff some rational ``(w, b)`` has
``w.X >= b`` on every 1-input and ``w.X <= b - 1`` on every 0-input.
Two independent exact procedures decide this:

``simplex``
    Phase-1 simplex (Bland's rule, fraction-free integer pivoting) on the
    Farkas alternative: convex combinations of 1-inputs and 0-inputs that
    coincide.  When that system is infeasible the optimal dual multipliers
    are a separating hyperplane.  This is the default and handles n = 12 comfortably.
``fm``
    Fourier-Motzkin elimination of ``w`` and ``b`` with duplicate
    removal, then back-substitution for a witness.  Exponential blow-up
    keeps it to small widths; it serves as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .boolfn import input_of
from .errors import InvalidInputError, ResourceLimitError
from .limits import SEPARABILITY_MAX_WIDTH

FM_MAX_WIDTH = 5


@dataclass(frozen=True)
class SeparabilityCertificate:
    separable: bool
    w: tuple[Fraction, ...] | None = None
    b: Fraction | None = None

    def integer_witness(self) -> tuple[tuple[int, ...], int] | None:
        """The witness scaled to integers; the margin only grows."""
        if not self.separable:
            return None
        scale = math.lcm(*(q.denominator for q in (*self.w, self.b)))
        return tuple(int(q * scale) for q in self.w), int(self.b * scale)


def check_witness(table: str, n: int, w: Sequence, b) -> bool:
    """Re-check the margin inequalities exactly on every input."""
    for k, out in enumerate(table):
        s = sum(Fraction(wi) * x for wi, x in zip(w, input_of(k, n)))
        if out == "1" and not s >= b:
            return False
        if out == "0" and not s <= b - 1:
            return False
    return True


def is_linear_threshold(table: str, n: int, method: str = "simplex",
                        cap: int = SEPARABILITY_MAX_WIDTH) -> SeparabilityCertificate:
    if len(table) != 1 << n or set(table) - {"0", "1"}:
        raise InvalidInputError(f"table must hold exactly {1 << n} bits of 0/1")
    if n > cap:
        raise ResourceLimitError(f"separability check is capped at width {cap}, got {n}")
    if "0" not in table:
        return SeparabilityCertificate(True, (Fraction(0),) * n, Fraction(0))
    if "1" not in table:
        return SeparabilityCertificate(True, (Fraction(0),) * n, Fraction(1))
    if method == "simplex":
        cert = _simplex(table, n)
    elif method == "fm":
        if n > FM_MAX_WIDTH:
            raise ResourceLimitError(f"Fourier-Motzkin route is capped at width {FM_MAX_WIDTH}")
        cert = _fourier_motzkin(table, n)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    if cert.separable and not check_witness(table, n, cert.w, cert.b):
        raise AssertionError("separating witness failed its exact re-check")
    return cert


# -- simplex on the Farkas system ------------------------------------------

def _simplex(table: str, n: int) -> SeparabilityCertificate:
    # Columns: a 1-input X contributes (X, -1, 0); a 0-input (-X, 1, 1).
    # Rows 0..n-1 are coordinates, row n the bias, row n+1 normalizes the
    # weight on 0-inputs to 1.  Feasible with y >= 0 iff not separable.
    #
    # Fraction-free (Bareiss) pivoting: every stored entry is the true
    # tableau entry times the common denominator ``det`` (> 0), and each
    # elimination divides exactly by the previous pivot.
    m = n + 2
    cols = []
    for k, out in enumerate(table):
        X = input_of(k, n)
        cols.append(list(X) + [-1, 0] if out == "1" else [-x for x in X] + [1, 1])
    nvar = len(cols)
    width = nvar + m  # structural columns then one artificial per row
    rows = [[cols[j][r] for j in range(nvar)] + [int(r == i) for i in range(m)] + [int(r == m - 1)]
            for r in range(m)]
    # Phase-1 reduced costs (objective: sum of artificials); last entry is
    # minus the objective value.
    zrow = [-sum(rows[r][j] for r in range(m)) for j in range(nvar)] + [0] * m + [-1]
    basis = [nvar + r for r in range(m)]
    det = 1

    while True:
        entering = next((j for j in range(width) if zrow[j] < 0), None)
        if entering is None:
            break
        leave = None
        for r in range(m):
            a = rows[r][entering]
            if a > 0:
                if leave is None:
                    leave = r
                    continue
                # compare rhs[r]/a with rhs[leave]/a_leave by cross-multiplying
                lhs = rows[r][-1] * rows[leave][entering]
                rhs_ = rows[leave][-1] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[r] < basis[leave]):
                    leave = r
        if leave is None:  # phase 1 objective is bounded below by 0
            raise AssertionError("unbounded phase-1 simplex")
        prow = rows[leave]
        piv = prow[entering]
        for row in (*rows, zrow):
            if row is prow:
                continue
            f = row[entering]
            if f:
                for j in range(len(row)):
                    row[j] = (row[j] * piv - f * prow[j]) // det
            else:
                for j in range(len(row)):
                    if row[j]:
                        row[j] = row[j] * piv // det
        det = piv
        basis[leave] = entering

    objective = -zrow[-1]
    if objective == 0:
        return SeparabilityCertificate(False)
    # Duals from the artificial columns: true reduced cost = 1 - pi_r.
    pi = [1 - Fraction(zrow[nvar + r], det) for r in range(m)]
    margin = pi[n + 1]
    w = tuple(-pi[i] / margin for i in range(n))
    b = -pi[n] / margin
    return SeparabilityCertificate(True, w, b)


# -- Fourier-Motzkin ---------------------------------------------------------

def _normalize(coeffs: tuple[Fraction, ...], rhs: Fraction):
    scale = max((abs(c) for c in coeffs), default=Fraction(0))
    if scale == 0:
        return coeffs, rhs
    return tuple(c / scale for c in coeffs), rhs / scale


def _fourier_motzkin(table: str, n: int) -> SeparabilityCertificate:
    # constraints coeffs . (w_1..w_n, b) >= rhs
    system = set()
    for k, out in enumerate(table):
        X = input_of(k, n)
        if out == "1":
            system.add(_normalize(tuple(Fraction(x) for x in X) + (Fraction(-1),), Fraction(0)))
        else:
            system.add(_normalize(tuple(Fraction(-x) for x in X) + (Fraction(1),), Fraction(1)))
    nv = n + 1
    stages = []
    for var in range(nv):
        stages.append(system)
        pos, neg, rest = [], [], set()
        for c, r in system:
            if c[var] > 0:
                pos.append((c, r))
            elif c[var] < 0:
                neg.append((c, r))
            else:
                rest.add((c, r))
        for cp, rp in pos:
            for cn, rn in neg:
                alpha, beta = cp[var], -cn[var]
                coeffs = tuple(beta * a + alpha * q for a, q in zip(cp, cn))
                rest.add(_normalize(coeffs, beta * rp + alpha * rn))
        system = rest
    if any(r > 0 for _, r in system):
        return SeparabilityCertificate(False)
    values = [Fraction(0)] * nv
    for var in reversed(range(nv)):
        lo, hi = None, None
        for c, r in stages[var]:
            a = c[var]
            if a == 0:
                continue
            slack = r - sum(c[j] * values[j] for j in range(var + 1, nv))
            bound = slack / a
            if a > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        values[var] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    return SeparabilityCertificate(True, tuple(values[:n]), values[n])

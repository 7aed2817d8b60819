"""Compiled kernel vs pure-Python fallback on exhaustive verification.

    python benchmarks/bench_verify.py [--repeat 3] [--quick]

Each case is verified once per backend; reports must agree exactly apart
from timing, and the best-of-``repeat`` wall time is printed.
"""
import argparse
import time

from nnrepr import FunctionSpec, construct_comp, construct_eq, construct_lt, construct_omb, verifier
from nnrepr.eqmatrix import builtin_matrix


def cases(quick):
    n_eq, n_omb, n_comp = (6, 12, 5) if quick else (10, 20, 8)
    w = [3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, -7, 9, 3]
    yield f"EQ identity n={n_eq}", construct_eq(builtin_matrix("identity", n_eq)), FunctionSpec.eq(n_eq)
    yield f"COMP n={n_comp}", construct_comp(n_comp), FunctionSpec.comp(n_comp)
    yield f"OMB n={n_omb}", construct_omb(n_omb), FunctionSpec.omb(n_omb)
    yield "LT n=16", construct_lt(w, 4), FunctionSpec.lt(w, 4)


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller instances")
    args = parser.parse_args(argv)
    if verifier._kernel is None:
        print("compiled kernel unavailable; only the python backend can run")
        return 1
    print(f"{'case':<22}{'inputs':>10}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for name, anchors, spec in cases(args.quick):
        tc, rc = best_of(lambda: verifier.verify(anchors, spec, backend="cython"), args.repeat)
        tp, rp = best_of(lambda: verifier.verify(anchors, spec, backend="python"), 1)
        assert rc.comparable() == rp.comparable(), name
        print(f"{name:<22}{rc.total_inputs:>10}{tc:>11.3f}{tp:>11.3f}{tp / tc:>8.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Acceptance grid: one test per criterion, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py [--seed N]``) or through
pytest, where the lines are echoed in the terminal summary.
"""
import argparse
import sys

import pytest

from nnrepr.acceptance import CRITERIA

ACCEPTANCE_LINES: list[str] = []


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1), ids=lambda k: f"criterion_{k}")
def test_criterion(number):
    result = CRITERIA[number - 1](0)
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, "\n".join(result.details)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    ok = True
    for fn in CRITERIA:
        result = fn(args.seed)
        print(result.line(), flush=True)
        ok &= result.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

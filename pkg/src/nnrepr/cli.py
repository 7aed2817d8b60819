"""``nnrepr`` command line.

Exit codes: 0 success/pass, 1 verification failure (or refuted matrix,
non-separable table is *not* a failure), 2 usage or format error, 3 a
resource cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .anchors import AnchorSet
from .arith import format_rational
from .boolfn import FunctionSpec, Kind
from .constructions import construct_for
from .eqmatrix import EqMatrix, Verdict, builtin_matrix, load_matrix, validate_eq_matrix
from .errors import FormatError, InvalidInputError, NNReprError, ResourceLimitError
from .limits import DEFAULT_COUNTEREXAMPLE_LIMIT
from .separability import is_linear_threshold
from .verifier import verify_parallel

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_function_flags(p: argparse.ArgumentParser, default_fn: str | None = None) -> None:
    g = p.add_argument_group("target function")
    g.add_argument("--fn", choices=["lt", "elt", "eq", "comp", "omb", "table"],
                   required=default_fn is None, default=default_fn)
    g.add_argument("--w", type=_int_list, help="weights, e.g. --w=1,-1 (use '=' for a leading minus)")
    g.add_argument("--b", type=int, help="threshold / bias")
    g.add_argument("--n", type=int, help="width (half-width for eq/comp)")
    g.add_argument("--bits", help="truth table, most significant input position first")


def spec_from_args(args) -> FunctionSpec:
    fn = args.fn
    if fn in ("lt", "elt"):
        if args.w is None or args.b is None:
            raise InvalidInputError(f"--fn {fn} needs --w and --b")
        if args.n is not None and args.n != len(args.w):
            raise InvalidInputError(f"--n {args.n} disagrees with {len(args.w)} weights")
        return FunctionSpec.lt(args.w, args.b) if fn == "lt" else FunctionSpec.elt(args.w, args.b)
    if fn == "table":
        if args.bits is None:
            raise InvalidInputError("--fn table needs --bits")
        return FunctionSpec.table(args.bits)
    if args.n is None:
        raise InvalidInputError(f"--fn {fn} needs --n")
    return FunctionSpec(Kind(fn.upper()), args.n)


def _eq_matrix(source: str | None, n: int, unchecked: bool = False) -> EqMatrix | None:
    if source is None:
        return None
    if source in ("identity", "pow2", "pow2_row"):
        return builtin_matrix(source, n)
    mat = load_matrix(Path(source).read_text())
    return mat if unchecked else validate_eq_matrix(mat)


def _summary(anchors: AnchorSet) -> str:
    construction = anchors.meta.get("construction", "?")
    npos, nneg = len(anchors.positives()), len(anchors.negatives())
    return (f"{construction}: {anchors.size} anchors ({npos} POS, {nneg} NEG), "
            f"arity {anchors.arity}, resolution {anchors.resolution} bits")


# -- subcommands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    spec = spec_from_args(args)
    if args.eq_matrix is not None and spec.kind is not Kind.EQ:
        raise InvalidInputError("--eq-matrix only applies to --fn eq")
    if args.drop_zero_anchor and spec.kind is not Kind.OMB:
        raise InvalidInputError("--drop-zero-anchor only applies to --fn omb")
    mat = _eq_matrix(args.eq_matrix, spec.n, args.unchecked) if spec.kind is Kind.EQ else None
    anchors = construct_for(spec, eq_matrix=mat, drop_zero_anchor=args.drop_zero_anchor)
    anchors.meta["function"] = spec.to_json()
    if args.out:
        _write(args.out, anchors.dumps())
        print(_summary(anchors))
    else:
        sys.stdout.write(anchors.dumps())
        print(_summary(anchors), file=sys.stderr)
    if args.csv:
        Path(args.csv).write_text(anchors.to_csv())
    return EXIT_OK


def _load_anchors(path: str) -> AnchorSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return AnchorSet.from_json(text)


def cmd_verify(args) -> int:
    anchors = _load_anchors(args.anchors)
    spec = spec_from_args(args)
    report = verify_parallel(anchors, spec, workers=args.workers, limit=args.limit)
    _write(args.out, _dump(report.to_json()))
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: {report.total_inputs} inputs, {report.n_counterexamples} counterexamples, "
          f"{report.n_ties} ties, size {report.size}, resolution {report.resolution} bits "
          f"[{report.backend}, {report.elapsed * 1000:.1f} ms]", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_analyze(args) -> int:
    anchors = _load_anchors(args.anchors)
    out = {
        "size": anchors.size,
        "arity": anchors.arity,
        "resolution_bits": anchors.resolution,
        "labels": {"POS": len(anchors.positives()), "NEG": len(anchors.negatives())},
        "squared_norms": [format_rational(v) for v in anchors.squared_norms()],
    }
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_eqmatrix(args) -> int:
    if args.builtin:
        if args.n is None:
            raise InvalidInputError("--builtin needs --n")
        mat = EqMatrix(builtin_matrix(args.builtin, args.n).entries)
    elif args.source:
        try:
            text = sys.stdin.read() if args.source == "-" else Path(args.source).read_text()
        except OSError as exc:
            raise FormatError(f"cannot read {args.source}: {exc.strerror}") from None
        mat = load_matrix(text)
    else:
        raise InvalidInputError("give a matrix file or --builtin")
    if args.action == "show":
        out = {"rows": [list(r) for r in mat.entries], "m": mat.rows, "n": mat.cols,
               "row_norms": mat.row_norms(), "zero_columns": mat.zero_columns()}
        sys.stdout.write(_dump(out))
        return EXIT_OK
    checked = validate_eq_matrix(mat, workers=args.workers)
    out = checked.to_json()
    out["row_norms"] = checked.row_norms()
    sys.stdout.write(_dump(out))
    return EXIT_OK if checked.validated is Verdict.PROVEN else EXIT_FAIL


def cmd_lowerbound(args) -> int:
    spec = spec_from_args(args)
    from .boolfn import truth_table

    cert = is_linear_threshold(truth_table(spec), spec.arity)
    out = {"separable": cert.separable}
    if cert.separable:
        out["w"] = [format_rational(v) for v in cert.w]
        out["b"] = format_rational(cert.b)
        out["interpretation"] = "separable ⇒ NN(f) ≤ 2"
    else:
        out["interpretation"] = "not separable ⇒ NN(f) ≥ 3"
    sys.stdout.write(_dump(out))
    print(out["interpretation"], file=sys.stderr)
    return EXIT_OK


@dataclass
class RunManifest:
    """A serializable construct / verify job.

    ``command`` is ``construct``, ``verify`` (needs ``params.anchors``) or
    ``roundtrip`` (construct then verify).  ``seed`` is recorded for
    randomized suites; the constructions themselves are deterministic.
    """

    command: str
    spec: dict
    params: dict = field(default_factory=dict)
    seed: int = 0
    caps: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)

    @classmethod
    def load(cls, text: str) -> "RunManifest":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"manifest is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(obj, dict):
            raise FormatError("manifest must be a JSON object")
        unknown = set(obj) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise FormatError(f"unknown manifest fields: {sorted(unknown)}")
        if obj.get("command") not in ("construct", "verify", "roundtrip"):
            raise FormatError(f"manifest command must be construct, verify or roundtrip, got {obj.get('command')!r}")
        if "spec" not in obj:
            raise FormatError("manifest needs a 'spec'")
        return cls(**obj)


def cmd_run(args) -> int:
    manifest = RunManifest.load(Path(args.manifest).read_text())
    spec = FunctionSpec.from_json(manifest.spec)
    params, caps, outputs = manifest.params, manifest.caps, manifest.outputs
    cap = int(caps["max_arity"]) if "max_arity" in caps else None
    if cap is not None and spec.arity > cap:
        raise ResourceLimitError(f"function arity {spec.arity} exceeds the manifest cap {cap}")
    code = EXIT_OK
    if manifest.command in ("construct", "roundtrip"):
        mat = _eq_matrix(params.get("eq_matrix"), spec.n) if spec.kind is Kind.EQ else None
        anchors = construct_for(spec, eq_matrix=mat, drop_zero_anchor=bool(params.get("drop_zero_anchor")))
        anchors.meta["function"] = spec.to_json()
        if "anchors" in outputs:
            _write(outputs["anchors"], anchors.dumps())
        print(_summary(anchors), file=sys.stderr)
    else:
        if "anchors" not in params:
            raise FormatError("verify manifest needs params.anchors")
        anchors = _load_anchors(params["anchors"])
    if manifest.command in ("verify", "roundtrip"):
        report = verify_parallel(anchors, spec, workers=int(params.get("workers", 1)),
                                 limit=int(caps.get("counterexample_limit", DEFAULT_COUNTEREXAMPLE_LIMIT)),
                                 cap=cap)
        body = report.to_json()
        body["manifest"] = asdict(manifest)
        _write(outputs.get("report"), _dump(body))
        code = EXIT_OK if report.passed else EXIT_FAIL
    return code


def cmd_acceptance(args) -> int:
    from .acceptance import run_all

    only = set(args.only) if args.only else None
    results = run_all(seed=args.seed, only=only)
    for r in results:
        print(r.line())
        for d in r.details[1:] if r.passed else r.details:
            print(f"    {d}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nnrepr", description="Construct and exhaustively verify nearest-neighbor representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an anchor set for a threshold function")
    _add_function_flags(p)
    p.add_argument("--eq-matrix", help="identity, pow2, or a matrix file (text or JSON)")
    p.add_argument("--unchecked", action="store_true", help="skip validating a user EQ matrix")
    p.add_argument("--drop-zero-anchor", action="store_true", help="OMB with even n: n anchors")
    p.add_argument("--out", help="write the AnchorSet JSON here (default: stdout)")
    p.add_argument("--csv", help="also write a CSV export")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustively verify an anchor file against a function")
    p.add_argument("anchors")
    _add_function_flags(p)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--limit", type=int, default=DEFAULT_COUNTEREXAMPLE_LIMIT, help="counterexample cap")
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="size, resolution, norms and label counts of an anchor file")
    p.add_argument("anchors")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("eqmatrix", help="validate or show an EQ matrix")
    p.add_argument("action", choices=["validate", "show"])
    p.add_argument("source", nargs="?", help="matrix file ('-' for stdin)")
    p.add_argument("--builtin", choices=["identity", "pow2"])
    p.add_argument("--n", type=int)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_eqmatrix)

    p = sub.add_parser("lowerbound", help="decide linear separability of a function")
    _add_function_flags(p, default_fn="table")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("run", help="execute a JSON run manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("acceptance", help="run the acceptance grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    p.set_defaults(func=cmd_acceptance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) is not None and getattr(args, "workers", 1) < 1:
        parser.error("--workers must be positive")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInputError, NNReprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

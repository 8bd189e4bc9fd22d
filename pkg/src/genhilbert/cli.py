"""Command-line front end.

Subcommands map one-to-one onto library operations; verdicts that are
mathematically negative (divergent integrals, unbounded operators) are
successful runs reported in-band.  Exit codes: 0 success, 1 domain error
(resource caps, convergence failures, violated check), 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import certify, kernel, norms, operator
from .errors import ConvergenceError, ResourceLimitError
from .measure import LEBESGUE, MeasureFormatError, parse_measure
from .operator import EnEvalConfig, SequenceVector
from .rng import SplitMix64

_FLOAT_FMT = "%.17g"


def _load_measure(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read measure file {path}: {exc}") from exc
    try:
        return parse_measure(text)
    except MeasureFormatError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


def _load_sequence(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read sequence file {path}: {exc}") from exc
    try:
        return operator.sequence_from_csv(text)
    except ValueError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


class _UsageError(Exception):
    """Invalid invocation or unparseable input file (exit code 2)."""


def _parse_p(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a real >= 1 or 'inf', got {text!r}")
    if math.isnan(p) or p < 1.0:
        raise argparse.ArgumentTypeError(f"p must be >= 1 or 'inf', got {text}")
    return p


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _progress(args, message: str):
    if not args.quiet:
        print(message, file=sys.stderr)


def _cmd_entry(args) -> int:
    mu = _load_measure(args.measure)
    if args.n < 0 or args.k < 0:
        raise _UsageError("indices must be nonnegative")
    value = kernel.entry(mu, args.n, args.k)
    if args.output == "json":
        print(json.dumps({"n": args.n, "k": args.k, "value": value}))
    else:
        print(_FLOAT_FMT % value)
    return 0


def _cmd_section(args) -> int:
    mu = _load_measure(args.measure)
    section = kernel.finite_section(mu, args.N)
    if args.output == "json":
        print(kernel.section_to_json(section))
    else:
        sys.stdout.write(kernel.section_to_csv(section))
    return 0


def _cmd_apply(args) -> int:
    mu = _load_measure(args.measure)
    seq, header_p = _load_sequence(args.sequence)
    p_echo = args.p if args.p is not None else header_p
    if args.route == "fft":
        if mu != LEBESGUE:
            raise ValueError(
                "the fft route implements the classical (Lebesgue) matrix only; "
                "pass the Lebesgue measure or use --route truncated/quadrature"
            )
        image = operator.hankel_fast_apply(seq, args.rows)
    elif args.route == "quadrature":
        image = operator.apply_via_quadrature(mu, seq, args.rows, EnEvalConfig())
    else:
        image = operator.apply_truncated(mu, seq, args.rows)
    if args.output == "json":
        print(json.dumps({"rows": args.rows, "values": list(image.values)}))
    else:
        sys.stdout.write(operator.sequence_to_csv(image, p=p_echo))
    return 0


def _emit_verdict(verdict, output: str) -> None:
    payload = norms.verdict_to_dict(verdict)
    if output == "csv":
        lines = ["key,value"] + [f"{key},{value}" for key, value in payload.items()]
        print("\n".join(lines))
    else:
        print(json.dumps(payload))


def _cmd_norm(args) -> int:
    mu = _load_measure(args.measure)
    # norm_integral's precondition (raises on endpoint atoms, exit 1);
    # classification then packages the same integral as a verdict.
    norms.norm_integral(mu, args.p)
    _emit_verdict(norms.classify_boundedness(mu, args.p), args.output)
    return 0


def _cmd_classify(args) -> int:
    mu = _load_measure(args.measure)
    _emit_verdict(norms.classify_boundedness(mu, args.p), args.output)
    return 0


def _cmd_certify(args) -> int:
    mu = _load_measure(args.measure)
    _progress(args, f"certifying over eps={args.eps} sizes={args.N}")
    report = certify.convergence_sweep(mu, args.p, args.eps, args.N, tol=args.tol)
    if args.output == "json":
        print(certify.report_to_json(report))
    else:
        sys.stdout.write(certify.report_to_csv(report))
    return 0


def _hilbert_check_trial(rng: SplitMix64, max_terms: int):
    length_a = 1 + rng.below(max_terms)
    a = np.array([rng.uniform01() for _ in range(length_a)])
    length_b = 1 + rng.below(max_terms)
    b = np.array([rng.uniform01() for _ in range(length_b)])
    return SequenceVector(a, nonneg=True), SequenceVector(b, nonneg=True)


def _cmd_hilbert_check(args) -> int:
    if math.isinf(args.p) or args.p == 1.0:
        raise _UsageError("hilbert-check needs 1 < p < inf (constant undefined otherwise)")
    if args.trials < 1 or args.terms < 1:
        raise _UsageError("--trials and --terms must be positive")
    constant = norms.classical_constant(args.p)
    q = args.p / (args.p - 1.0)
    rng = SplitMix64(args.seed)
    worst = 0.0
    violations = 0
    for trial in range(args.trials):
        a, b = _hilbert_check_trial(rng, args.terms)
        image = operator.hankel_fast_apply(a, len(b))
        bilinear = float(np.dot(b.values, image.values))
        bound = constant * operator.lp_norm(a.values, args.p) * operator.lp_norm(b.values, q)
        if bound > 0:
            worst = max(worst, bilinear / bound)
        if bilinear > bound + 1e-9:
            violations += 1
            _progress(args, f"trial {trial}: {bilinear} > {bound}")
    payload = {
        "p": args.p,
        "trials": args.trials,
        "seed": args.seed,
        "max_ratio": worst,
        "violations": violations,
        "status": "ok" if violations == 0 else "violated",
    }
    if args.output == "csv":
        print("\n".join(["key,value"] + [f"{key},{value}" for key, value in payload.items()]))
    else:
        print(json.dumps(payload))
    return 0 if violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genhilbert",
        description="Generalized Hilbert matrices from measures on [0,1]: "
        "entries, sections, applies, sharp ell-p norms, certification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, output_default):
        sp.add_argument("--output", choices=("csv", "json"), default=output_default)
        sp.add_argument("--quiet", action="store_true", help="suppress progress on stderr")

    sp = sub.add_parser("entry", help="single matrix entry")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    common(sp, "csv")
    sp.set_defaults(func=_cmd_entry)

    sp = sub.add_parser("section", help="dense N x N leading section")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--N", type=int, required=True)
    common(sp, "csv")
    sp.set_defaults(func=_cmd_section)

    sp = sub.add_parser("apply", help="apply the matrix to a sequence file")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--sequence", required=True)
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--route", choices=("truncated", "quadrature", "fft"), default="truncated")
    sp.add_argument("--p", type=_parse_p, default=None, help="echoed in the output header")
    common(sp, "csv")
    sp.set_defaults(func=_cmd_apply)

    sp = sub.add_parser("norm", help="sharp-norm integral (measures without endpoint atoms)")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--p", type=_parse_p, required=True)
    common(sp, "json")
    sp.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("classify", help="boundedness verdict, endpoint atoms included")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--p", type=_parse_p, required=True)
    common(sp, "json")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("certify", help="lower-bound sweep against the analytic norm")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--p", type=_parse_p, required=True)
    sp.add_argument("--eps", type=_parse_float_list, required=True, help="comma list")
    sp.add_argument("--N", type=_parse_int_list, required=True, help="comma list of sizes")
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp, "csv")
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("hilbert-check", help="seeded random check of the classical inequality")
    sp.add_argument("--p", type=_parse_p, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--terms", type=int, default=64, help="max sequence length per trial")
    common(sp, "json")
    sp.set_defaults(func=_cmd_hilbert_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, ConvergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

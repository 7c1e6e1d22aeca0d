"""Command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status follows the
verdict: 0 holds, 1 refuted (certificate included), 2 inconclusive, 3 usage
or input error (diagnostic on stderr, no report).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from tpkit import kernels
from tpkit.quotients import (
    d_inequalities,
    hutchinson_holds,
    hutchinson_sections,
    lemma1_chain,
    second_quotients,
    th1_audit,
)
from tpkit.rational import as_rational, format_rational
from tpkit.realroots import Polynomial, classify_theorem_st1, is_real_rooted_nonpositive
from tpkit.seqcore import (
    AsweFinite,
    Exponential,
    Geometric,
    RationalGF,
    hadamard,
    materialize,
    normalize,
    spec_from_json,
    spec_to_json,
)
from tpkit.theta import PrecisionConfig, estimate_constant, verify_th3
from tpkit.toeplitz import check_tp_window, find_negative_minor

__all__ = ["main", "run", "explore_c1", "DEFAULT_C1_GRID", "EXIT_CODES"]

SCHEMA_VERSION = "1"
EXIT_CODES = {"holds": 0, "refuted": 1, "inconclusive": 2}
DEFAULT_C1_GRID = (
    Geometric(Fraction(1), Fraction(1)),
    Exponential(),
    AsweFinite(Fraction(1), 0, (Fraction(1), Fraction(1)), (), Fraction(0)),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rat(text):
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load_spec(args, attr="spec", file_attr="file"):
    raw = getattr(args, attr, None)
    path = getattr(args, file_attr, None)
    if raw is None and path is None:
        raise UsageError("a sequence is required (--spec JSON or --file PATH)")
    if raw is not None and path is not None:
        raise UsageError("give either --spec or --file, not both")
    try:
        if path is not None:
            with open(path) as fh:
                obj = json.load(fh)
        else:
            obj = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read sequence spec: {exc}")
    return spec_from_json(obj)


def _q_strings(q):
    return [format_rational(x) for x in q.q]


# -- subcommands ----------------------------------------------------------------
# each returns (verdict, result dict)

def cmd_check_tp(args):
    spec = _load_spec(args)
    seq = materialize(spec, args.window)
    w = check_tp_window(seq, args.order, args.window)
    return ("refuted" if w.verdict == "fail" else "holds"), w.to_json()


def cmd_quotients(args):
    seq = materialize(_load_spec(args), args.nmax)
    q = second_quotients(seq, args.nmax)
    return "holds", {"q": _q_strings(q), "first_index": 2}


def cmd_hutchinson(args):
    seq = materialize(_load_spec(args), max(args.nmax, args.trunc))
    q = second_quotients(seq, args.nmax)
    holds = hutchinson_holds(q)
    sections = hutchinson_sections(seq.coeffs[: args.trunc + 1])
    result = {
        "q": _q_strings(q),
        "hutchinson_holds": holds,
        "sections_degree": args.trunc,
        "sections_checked": sections.sections_checked,
        "sections_failing": [list(f) for f in sections.failures],
    }
    if not holds:
        bad = next(i for i, x in enumerate(q.q) if x < 4)
        result["certificate"] = {"index": bad + 2, "q": format_rational(q.q[bad])}
    return ("holds" if holds else "refuted"), result


def cmd_lemma1(args):
    seq = materialize(_load_spec(args), args.nmax)
    q = second_quotients(seq, args.nmax)
    report = lemma1_chain(q)
    result = {"q": _q_strings(q), **report.to_json()}
    if report.first_violation is not None:
        l = report.first_violation
        result["certificate"] = {"l": l, "value": format_rational(report.values[l])}
        return "refuted", result
    return "holds", result


def cmd_d_ineq(args):
    seq = materialize(_load_spec(args), args.nmax)
    if seq.coeffs[0] <= 0 or seq.coeffs[1] <= 0:
        raise ValueError("a_0 and a_1 must be positive")
    q = second_quotients(normalize(seq), args.nmax)
    report = d_inequalities(q)
    return ("holds" if report.all_nonnegative else "refuted"), {"q": _q_strings(q), **report.to_json()}


def cmd_verify_st1(args):
    if args.poly is not None:
        if args.spec is not None or args.file is not None:
            raise UsageError("give either --poly or a sequence spec")
        try:
            target = Polynomial.from_json(json.loads(args.poly))
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed --poly JSON: {exc}")
    else:
        target = _load_spec(args)
        if not isinstance(target, (RationalGF, AsweFinite)):
            raise UsageError("verify-st1 needs a rational_gf or aswe_finite spec, or --poly")
    verdict = classify_theorem_st1(target)
    result = verdict.to_json()
    if verdict.derivative_preserved:
        return "holds", result
    if verdict.positive_zeros:
        return "refuted", result
    return "inconclusive", result


def cmd_th1_audit(args):
    audit = th1_audit(_load_spec(args), args.nmax, args.lmax, args.trunc)
    if audit.vacuous:
        verdict = "inconclusive"
    else:
        verdict = "holds" if audit.min_q_above_3 else "refuted"
    return verdict, audit.to_json()


def cmd_verify_th3(args):
    if args.a2 is None:
        raise UsageError("verify-th3 needs --a2")
    prec = PrecisionConfig(args.precision_bits)
    report = verify_th3(_load_spec(args), args.a2, args.nmax, prec, n_min=args.nmin, cross_check=not args.no_cross_check)
    v = report.verdict
    if v == "pass" and not report.cross_checks_consistent:
        v = "inconclusive"
    return {"pass": "holds", "fail": "refuted", "inconclusive": "inconclusive"}[v], report.to_json()


def cmd_estimate(args):
    rerun = args.rerun_degree if args.name == "q_infinity" and args.rerun_degree else None
    report = estimate_constant(args.name, args.tol, degree=args.degree, prec_bits=args.precision_bits, rerun_degree=rerun)
    result = report.to_json()
    ok = True
    if report.residual is not None:
        ok = report.residual_contains_zero
    if report.tail_guard_ok is not None:
        ok = ok and report.tail_guard_ok
    if "rerun" in result:
        agree = Fraction(result["rerun"]["difference"]) <= Fraction(1, 10**6)
        result["rerun"]["agrees_within_1e-6"] = agree
        ok = ok and agree
    return ("holds" if ok else "inconclusive"), result


def _positive_prefix(coeffs):
    n = 0
    while n < len(coeffs) and coeffs[n] > 0:
        n += 1
    return n


def explore_c1(candidate, grid=DEFAULT_C1_GRID, order=4, window=12, l_max=3, trunc=12):
    """Bounded search for evidence about the remainder criterion for preservers.

    Phase 1 checks the candidate's remainders: exactly, through the
    ``q_{l+3}(q_{l+2} - 4) + 3 >= 0`` chain, and heuristically through
    real-rootedness of truncations.  Phase 2 looks for a negative Toeplitz
    minor of ``candidate * B`` for each B in the grid.  Returns
    ``(verdict, result)``; ``refuted`` means a certificate shows the
    candidate is not a preserver.
    """
    grid = tuple(grid)
    if not grid:
        raise ValueError("empty parameter grid")
    horizon = max(window, l_max + trunc, 4)
    seq = materialize(candidate, horizon)
    if any(c < 0 for c in seq.coeffs):
        raise ValueError("candidate coefficients must be nonnegative")

    phase1 = {"l_max": l_max, "trunc_degree": trunc}
    npos = _positive_prefix(seq.coeffs)
    chain_violation = None
    if npos >= 4:
        report = lemma1_chain(second_quotients(seq, npos - 1))
        phase1["chain_values"] = [format_rational(v) for v in report.values]
        chain_violation = report.first_violation
    else:
        phase1["chain_values"] = None
        phase1["chain_note"] = "fewer than four leading positive coefficients; chain not applicable"
    phase1["chain_first_violation"] = chain_violation
    truncation_failures = []
    for l in range(l_max + 1):
        p = Polynomial(seq.coeffs[l : l + trunc + 1])
        if p.is_zero() or p.coeffs[0] == 0:
            continue
        if not is_real_rooted_nonpositive(p).nonpositive_rooted:
            truncation_failures.append(l)
    phase1["truncation_failures"] = truncation_failures
    phase1["truncation_note"] = "heuristic: truncations of entire functions need not be real-rooted"

    cells = []
    found = None
    for b in grid:
        bseq = materialize(b, window)
        prod = hadamard(materialize(candidate, window), bseq)
        cert = find_negative_minor(prod, order, window)
        cells.append({"b": spec_to_json(b), "certificate": None if cert is None else cert.to_json()})
        if cert is not None and found is None:
            found = cells[-1]

    result = {
        "candidate": spec_to_json(candidate),
        "bounds": {"order": order, "window": window},
        "phase1": phase1,
        "phase2": cells,
        "conjecture_counterexample": found is not None and chain_violation is None and not truncation_failures,
    }
    if found is not None:
        result["summary"] = "negative minor of candidate * B found"
        return "refuted", result
    if chain_violation is not None:
        result["summary"] = f"remainder l={chain_violation} violates the necessary quotient inequality"
        return "refuted", result
    result["summary"] = "no counterexample within bounds"
    return "inconclusive", result


def cmd_explore_c1(args):
    candidate = _load_spec(args)
    grid = DEFAULT_C1_GRID
    if args.grid is not None:
        try:
            raw = json.loads(args.grid)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed --grid JSON: {exc}")
        if not isinstance(raw, list):
            raise UsageError("--grid must be a JSON list of sequence specs")
        grid = tuple(spec_from_json(x) for x in raw)
    return explore_c1(candidate, grid, args.order, args.window, args.lmax, args.trunc)


def cmd_hadamard(args):
    left = _load_spec(args)
    if args.right is None:
        raise UsageError("hadamard needs --right")
    try:
        right = spec_from_json(json.loads(args.right))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed --right JSON: {exc}")
    seq = hadamard(materialize(left, args.horizon), materialize(right, args.horizon))
    return "holds", {"coeffs": [format_rational(c) for c in seq.coeffs]}


COMMANDS = {
    "check-tp": cmd_check_tp,
    "quotients": cmd_quotients,
    "hutchinson": cmd_hutchinson,
    "lemma1": cmd_lemma1,
    "d-ineq": cmd_d_ineq,
    "verify-st1": cmd_verify_st1,
    "th1-audit": cmd_th1_audit,
    "verify-th3": cmd_verify_th3,
    "estimate": cmd_estimate,
    "explore-c1": cmd_explore_c1,
    "hadamard": cmd_hadamard,
}


def build_parser():
    parser = _Parser(prog="tpkit", description="Verification toolkit for totally positive sequences.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", help="sequence spec as inline JSON")
            p.add_argument("--file", help="path to a JSON sequence spec")
        p.add_argument("--seed", type=int, default=0, help="recorded in the report for reproducibility")
        p.add_argument("--precision-bits", type=int, default=128)
        return p

    p = common(sub.add_parser("check-tp", help="exhaustive Toeplitz minor check"))
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--window", type=int, default=16)

    for name in ("quotients", "lemma1", "d-ineq"):
        p = common(sub.add_parser(name))
        p.add_argument("--nmax", type=int, default=10)

    p = common(sub.add_parser("hutchinson"))
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--trunc", type=int, default=10)

    p = common(sub.add_parser("verify-st1"))
    p.add_argument("--poly", help='polynomial JSON, e.g. {"coeffs":["1","2","1"]}')

    p = common(sub.add_parser("th1-audit"))
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--trunc", type=int, default=24)

    p = common(sub.add_parser("verify-th3"))
    p.add_argument("--a2", type=_rat)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--nmin", type=int, default=4)
    p.add_argument("--no-cross-check", action="store_true")

    p = common(sub.add_parser("estimate"), spec=False)
    p.add_argument("name", choices=["q_infinity", "a0_squared", "ll13_root"])
    p.add_argument("--tol", type=_rat, default=Fraction(1, 10**4))
    p.add_argument("--degree", type=int, default=40)
    p.add_argument("--rerun-degree", type=int, default=60, help="0 disables the q_infinity consistency rerun")

    p = common(sub.add_parser("explore-c1"))
    p.add_argument("--grid", help="JSON list of sequence specs (default: geometric, exponential, (1+z)^2)")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--window", type=int, default=12)
    p.add_argument("--lmax", type=int, default=3)
    p.add_argument("--trunc", type=int, default=12)

    p = common(sub.add_parser("hadamard"))
    p.add_argument("--right", help="second sequence spec as inline JSON")
    p.add_argument("--horizon", type=int, default=10)
    return parser


def _echo_inputs(args):
    skip = {"command"}
    return {k: (format_rational(v) if isinstance(v, Fraction) else v) for k, v in vars(args).items() if k not in skip}


def run(argv, stdout=None, stderr=None):
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.precision_bits < 64:
            raise UsageError("--precision-bits must be at least 64")
        start = time.perf_counter()
        verdict, result = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"tpkit: usage error: {exc}", file=stderr)
        return 3
    except (ValueError, TypeError, IndexError, KeyError, ZeroDivisionError) as exc:
        print(f"tpkit: input error: {exc}", file=stderr)
        return 3
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": _echo_inputs(args),
        "verdict": verdict,
        "result": result,
        "timing": {"seconds": round(elapsed, 6)},
        "config": {
            "precision_bits": args.precision_bits,
            "seed": args.seed,
            "kernel": kernels.IMPLEMENTATION,
        },
    }
    json.dump(report, stdout, indent=2)
    stdout.write("\n")
    return EXIT_CODES[verdict]


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()

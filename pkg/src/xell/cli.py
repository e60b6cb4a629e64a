"""Command-line front end: construct, evaluate, verify and export.

All parameters are exact rationals given as "num/den" strings.  Exit codes:
0 success, 1 verification failure (failed cases as JSON on stderr), 2 bad
flags or parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .classical import classical_suite
from .exactnum import rational_str, to_rational
from .grid import GH
from .identities import IDENTITIES, check_identity, identity_cases
from .report import VerificationReport, summarize
from .xcore import (FAMILIES, BoundStateExceeded, OutOfRange, ParamSet, construction_check, norm,
                    weight_factor, xpoly)

NUMERIC_SUITES = ("integration", "orthogonality", "gramschmidt")
CORE_SUITES = ("classical", "xi", "diffeq", "shift", "shapeinv", "rodrigues", "invariance",
               "identities", "appendixA", "integration", "gramschmidt", "recurrence", "zeros",
               "genfun")
EXTRA_SUITES = ("singularity", "orthogonality", "doublegenfun", "limit")
SUITES = CORE_SUITES + EXTRA_SUITES + tuple(i for i in IDENTITIES if i != "appendixA")
DEFAULT_ETAS = (Fraction(1, 3), Fraction(2, 5))
LIMIT_HS = (10, 100, 1000, 10000)


class CliError(ValueError):
    pass


def rational_arg(text: str) -> Fraction:
    """argparse type for exact rationals; decimals and exponents are refused."""
    if any(c in text for c in ".eE"):
        raise argparse.ArgumentTypeError(f"{text!r}: give rationals as num/den, not decimals")
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational num/den") from None


def pair_arg(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"{text!r}: expected g or g,h")
    g = rational_arg(parts[0])
    return g, rational_arg(parts[1]) if len(parts) == 2 else None


def suite_arg(text: str) -> str:
    if text != "all" and text not in SUITES:
        raise argparse.ArgumentTypeError(
            f"unknown suite {text!r}; valid: all, {', '.join(SUITES)}")
    return text


def sweep_arg(text: str) -> tuple:
    try:
        lo, hi, count = text.split(":")
        count = int(count)
    except ValueError:
        raise argparse.ArgumentTypeError("--sweep takes lo:hi:count") from None
    if count < 2:
        raise argparse.ArgumentTypeError("--sweep needs count >= 2")
    return rational_arg(lo), rational_arg(hi), count


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xell", description="Exceptional X_l Laguerre and Jacobi polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, single=True):
        p.add_argument("--family", choices=FAMILIES, action="append" if not single else None,
                       required=single)
        p.add_argument("--g", type=rational_arg, required=single)
        p.add_argument("--h", type=rational_arg)
        p.add_argument("--ell", type=int, default=None if not single else 0)
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--output")

    p = sub.add_parser("coeffs", help="closed-form coefficients as JSON")
    common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("eval", help="exact value P_{l,n}(eta), or a sampled table")
    common(p)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--eta", type=rational_arg)
    group.add_argument("--sweep", type=sweep_arg, help="lo:hi:count table of eta, P, weight")

    p = sub.add_parser("norm", help="h_{l,n} as a Gamma product and a float")
    common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("zeros", help="all roots with the extra-zero classification")
    common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("genfun", help="generating-function series coefficients")
    common(p)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--eta", type=rational_arg, required=True)

    p = sub.add_parser("verify", help="run verification suites over a parameter grid")
    common(p, single=False)
    p.add_argument("--suite", type=suite_arg, action="append")
    p.add_argument("--lmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--n", type=int, help="single degree instead of 0..nmax")
    p.add_argument("--params", type=pair_arg, action="append", help="g or g,h; repeatable")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--eta", type=rational_arg, action="append")
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    return parser


# ---------------------------------------------------------------------------
# single-point subcommands


def _params(args) -> ParamSet:
    try:
        return ParamSet(args.family, args.g, args.h, args.ell)
    except (TypeError, ValueError) as exc:
        raise CliError(str(exc)) from None


def _emit(args, payload, pretty: str):
    if args.format == "pretty":
        text = pretty
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        rows = payload if isinstance(payload, list) else [payload]
        keys = list(rows[0].keys()) if rows and isinstance(rows[0], dict) else ["value"]
        writer.writerow(keys)
        for row in rows:
            writer.writerow([json.dumps(row[k]) if isinstance(row[k], (list, dict)) else row[k]
                             for k in keys] if isinstance(row, dict) else [row])
        text = buf.getvalue().rstrip("\n")
    else:
        text = json.dumps(payload, sort_keys=True)
    _write(args, text + "\n")


def _write(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_coeffs(args) -> int:
    x = xpoly(_params(args), args.n)
    _emit(args, x.to_json(), str(x.poly))
    return 0


def cmd_eval(args) -> int:
    params = _params(args)
    P = xpoly(params, args.n).poly
    if args.eta is not None:
        value = rational_str(P(args.eta))
        _emit(args, value, value)
        return 0
    import numpy as np
    lo, hi, count = args.sweep
    try:
        wf = weight_factor(params)
    except (OutOfRange, ValueError):
        wf = None
    lines = [f"# {params} n={args.n}", "# eta P weight"]
    for k in range(count):
        eta = lo + (hi - lo) * Fraction(k, count - 1)
        w = "nan"
        if wf is not None and wf.domain[0] < eta < float(wf.domain[1]):
            w = repr(float(wf.base(np.array([float(eta)]))[0]) / float(wf.divisor(eta)) ** 2)
        lines.append(f"{float(eta)!r} {float(P(eta))!r} {w}")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_norm(args) -> int:
    params = _params(args)
    nv = norm(params, args.n)
    out = {"family": params.family, **params.label(), "ell": params.ell, "n": args.n, **nv.to_json()}
    _emit(args, out, f"{nv.gamma_product!r} = {nv.float_value!r}")
    return 0


def cmd_zeros(args) -> int:
    from .analysis.zeros import zeros
    params = _params(args)
    rs = zeros(params, args.n)
    out = {"family": params.family, **params.label(), "ell": params.ell, "n": args.n, **rs.to_json()}
    pretty = "\n".join(f"{r['re']} {r['im']}" for r in out["roots"])
    _emit(args, out, pretty)
    return 0


def cmd_genfun(args) -> int:
    from .analysis.genfun import closed_series, direct_series
    params = _params(args)
    d = direct_series(params.family, params.lam, params.ell, args.eta, args.order)
    c = closed_series(params.family, params.lam, params.ell, args.eta, args.order)
    coeffs = [rational_str(d[k]) for k in range(args.order + 1)]
    closed = [rational_str(c[k]) for k in range(args.order + 1)]
    out = {"family": params.family, **params.label(), "ell": params.ell, "eta": rational_str(args.eta),
           "order": args.order, "coeffs": coeffs, "closed_form": closed, "match": coeffs == closed}
    _emit(args, out, " ".join(coeffs))
    return 0


# ---------------------------------------------------------------------------
# verify


def _grid(args) -> list:
    families = args.family or list(FAMILIES)
    ells = range(args.lmax + 1) if args.ell is None else [args.ell]
    out = []
    for fam in families:
        if args.params:
            picks = args.params
        elif args.g is not None:
            picks = [(args.g, args.h)]
        else:
            picks = GH[fam]
        for g, h in picks:
            for ell in ells:
                try:
                    p = ParamSet(fam, g, h if fam[0] != "L" else None, ell)
                except (TypeError, ValueError) as exc:
                    raise CliError(f"{fam} g={g} h={h}: {exc}") from None
                if fam == "hDPT" and ell >= p.n_B:
                    continue
                out.append(p)
    return out


def _ns(args, p: ParamSet) -> list:
    ns = [args.n] if args.n is not None else list(range(args.nmax + 1))
    if p.family == "hDPT":
        ns = [n for n in ns if n <= p.n_B - p.ell]
    return ns


def build_tasks(args) -> list:
    suites = args.suite or ["all"]
    if "all" in suites:
        suites = list(CORE_SUITES + EXTRA_SUITES)
    opts = {"nmax": args.nmax, "order": args.order, "etas": tuple(args.eta or DEFAULT_ETAS),
            "nodes": args.nodes}
    grid = _grid(args)
    tasks = []
    for suite in dict.fromkeys(suites):
        for p in grid:
            if suite in ("shapeinv", "singularity", "orthogonality", "gramschmidt", "genfun"):
                tasks.append((suite, p, None, opts))
            elif suite == "doublegenfun":
                if p.family in ("L1", "L2") and p.ell == 0:
                    tasks.append((suite, p, None, opts))
            elif suite == "limit":
                if p.family in ("J1", "J2"):
                    tasks += [(suite, p, n, opts) for n in _ns(args, p) if n <= 3]
            elif suite == "classical":
                if p.ell == 0:
                    tasks += [(suite, p, n, opts) for n in _ns(args, p)]
            elif suite == "integration":
                tasks.append(("integration-pairs", p, None, opts))
                tasks += [(suite, p, n, opts) for n in _ns(args, p)]
            elif suite in ("identities",) or suite in IDENTITIES:
                names = IDENTITIES if suite == "identities" else (suite,)
                top = args.n if args.n is not None else args.nmax
                for case in identity_cases([p], top, names):
                    if args.n is None or case.n == args.n or case.identity in ("fid4", "bid4"):
                        tasks.append(("identity", p, case.n, {**opts, "identity": case.identity}))
            else:
                tasks += [(suite, p, n, opts) for n in _ns(args, p)]
    return tasks


def _error_report(suite, p, n, exc) -> VerificationReport:
    rep = VerificationReport(suite=suite, family=p.family, params=p.label(), ell=p.ell, n=n)
    rep.check("error", False, f"{type(exc).__name__}: {exc}")
    return rep


def run_task(task) -> list:
    """Execute one (suite, params, n, opts) task; never raises."""
    suite, p, n, opts = task
    try:
        return _run(suite, p, n, opts)
    except Exception as exc:  # noqa: BLE001 -- aggregate, never abort
        return [_error_report(suite, p, n, exc)]


def _run(suite, p, n, opts) -> list:
    from .analysis import genfun, gram, limits, recurrence, zeros
    from . import operators as ops
    npts = opts.get("nodes")
    kw = {"npts": npts} if npts else {}
    if suite in NUMERIC_SUITES + ("integration-pairs",) and not p.in_paper_range:
        rep = VerificationReport(suite=suite.split("-")[0], family=p.family, params=p.label(),
                                 ell=p.ell, n=n)
        return [rep.skip("outside the range where the weight is a measure")]
    if suite == "classical":
        return [classical_suite(recurrence.classical_params_at(p.family, p.lam, n))]
    if suite == "xi":
        return [construction_check(p, n)]
    if suite == "diffeq":
        return [ops.eigen_check(p, n)]
    if suite == "shift":
        return [ops.forward_backward_shift_check(p, n)]
    if suite == "shapeinv":
        return [ops.shape_invariance_check(p)]
    if suite == "rodrigues":
        return [ops.rodrigues_check(p, n)]
    if suite == "invariance":
        return [ops.invariance_check(p, n)]
    if suite == "singularity":
        return [ops.singularity_check(p)]
    if suite == "identity":
        from .identities import IdentityCase
        return [check_identity(IdentityCase(opts["identity"], p, n))]
    if suite == "integration-pairs":
        return [gram.integration_formula_check(p, a, b, **kw) for a, b in gram.integration_pairs(p)]
    if suite == "integration":
        return [gram.norm_relation_check(p, n)]
    if suite == "orthogonality":
        return [gram.orthogonality_check(p, opts["nmax"], **kw)]
    if suite == "gramschmidt":
        return [gram.gram_schmidt_check(p, opts["nmax"], **kw)]
    if suite == "recurrence":
        return [recurrence.recurrence_substitute_check(p, n)]
    if suite == "zeros":
        return [zeros.zeros_check(p, n)]
    if suite == "genfun":
        return [genfun.genfun_x(p, opts["order"], eta) for eta in opts["etas"]]
    if suite == "doublegenfun":
        return [genfun.double_genfun_check(p.family, p.g, 2, 4, eta) for eta in opts["etas"]]
    if suite == "limit":
        return [limits.xl_limit_check(p.family, p.g, p.ell, n, Fraction(1, 2), LIMIT_HS)]
    raise CliError(f"unknown suite {suite}")


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("XELL_THREADS")
    return max(1, int(env)) if env and env.isdigit() else 1


def run_verify(args) -> int:
    tasks = build_tasks(args)
    jobs = _jobs(args)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_task, tasks, chunksize=4))
    else:
        chunks = [run_task(t) for t in tasks]
    reports = sorted((r for chunk in chunks for r in chunk), key=lambda r: r.sort_key())
    summary = summarize(reports)
    if args.format == "json":
        lines = [json.dumps(r.to_json(), sort_keys=True) for r in reports]
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "g", "h", "ell", "n", "suite", "pass", "detail"])
        for r in reports:
            writer.writerow([r.family, r.params.get("g"), r.params.get("h"), r.ell, r.n, r.suite,
                             r.passed, r.detail])
        lines = [buf.getvalue().rstrip("\n")]
    else:
        lines = [str(r) for r in reports]
        lines.append(f"{summary['passed']}/{summary['total']} passed, {summary['skipped']} skipped, "
                     f"{summary['failed']} failed")
    _write(args, "\n".join(lines) + "\n")
    failed = [r for r in reports if not r.passed]
    for r in failed:
        sys.stderr.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    return 1 if failed else 0


COMMANDS = {"coeffs": cmd_coeffs, "eval": cmd_eval, "norm": cmd_norm, "zeros": cmd_zeros,
            "genfun": cmd_genfun, "verify": run_verify}


_NEGATIVE_RATIONAL = re.compile(r"-\d+(/\d+)?")


def _join_negative_values(argv: list) -> list:
    """argparse reads "-3/7" as an option; glue it to the preceding flag."""
    out = []
    for tok in argv:
        if (_NEGATIVE_RATIONAL.fullmatch(tok) and out and out[-1].startswith("--")
                and "=" not in out[-1]):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return COMMANDS[args.command](args)
    except (CliError, OutOfRange, BoundStateExceeded, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:

  cuspidal     certification run for the quadratic family on the cuspidal cubic
  three-lines  certification run for given orbit data of the line-triple family
  theorem1     end-to-end run producing exactly k Siegel-certified centers
  matrix       plain-text dump of an action matrix

Reports are JSON on stdout (optionally also written to --out).  Exit codes:
0 full certification, 1 hard error (JSON error object on stdout), 2 when any
verdict is Inconclusive.  SIEGELCERT_WORKERS sets the worker count; identical
configurations (including --seed) produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import os
import sys

from .certifier import CertificationReport
from .cohomology import quad_action_matrix, tl_action_matrix
from .cuspidal import certify_cuspidal
from .errors import SiegelcertError
from .pipeline import certify_three_lines, theorem1_pipeline
from .report import (DEFAULT_RESIDUAL_TOL, DEFAULT_ROOT_TOL, RunConfig,
                     exit_code_for, render, report_to_dict)
from .threelines import OrbitData


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="siegelcert",
        description="Certified Siegel-disk constructions for plane birational maps")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_ROOT_TOL,
                       help="root isolation tolerance (default %(default)g)")
        p.add_argument("--residual-tol", type=float, default=DEFAULT_RESIDUAL_TOL,
                       help="fixed-point residual tolerance (default %(default)g)")
        p.add_argument("--escalations", type=int, default=1,
                       help="precision escalation retries (default %(default)d)")
        p.add_argument("--max-iter", type=int, default=500,
                       help="root iteration cap (default %(default)d)")
        p.add_argument("--strict", action="store_true",
                       help="add resultant/mod-p conjugacy evidence; its failure "
                            "downgrades verdicts to Inconclusive")
        p.add_argument("--seed", type=int, default=0,
                       help="recorded in the report for reproducibility")
        p.add_argument("--out", type=str, default=None,
                       help="also write the JSON report to this path")

    p = sub.add_parser("cuspidal", help="quadratic family on the cuspidal cubic")
    p.add_argument("--n", type=int, required=True,
                   help="orbit closure length (the positive-entropy instance is 8)")
    common(p)

    p = sub.add_parser("three-lines", help="line-triple family at fixed orbit data")
    p.add_argument("--m", type=_int_list, required=True,
                   help="comma list of a-orbit parameters m_1,..,m_N")
    p.add_argument("--n", type=_int_list, required=True,
                   help="comma list of b-orbit parameters n_1,..,n_N")
    common(p)

    p = sub.add_parser(
        "theorem1",
        help="construct an automorphism with exactly k Siegel-certified centers")
    p.add_argument("--k", type=int, required=True,
                   help="number of Siegel centers; k >= 2 (k = 0, 1 are covered "
                        "by earlier degree-2 constructions on other cubics and "
                        "are out of scope here)")
    p.add_argument("--eps", type=float, default=None,
                   help="target-locality radius for the orbit-data search "
                        "(default %g)" % 1.6)
    p.add_argument("--mn-cap", type=int, default=None,
                   help="cap on the swept orbit length (default %d)" % 18)
    common(p)

    p = sub.add_parser("matrix", help="plain-text action-matrix dump")
    p.add_argument("--family", choices=("quad", "three-lines"), required=True)
    p.add_argument("--n", type=_int_list, required=True,
                   help="quad: n1,n2,n3; three-lines: n_1,..,n_N")
    p.add_argument("--m", type=_int_list, default=None,
                   help="three-lines only: m_1,..,m_N")
    p.add_argument("--sigma", type=_int_list, default=(0, 1, 2),
                   help="quad only: permutation matching orbits to forward "
                        "points (default 0,1,2)")
    p.add_argument("--out", type=str, default=None)
    return top


def _workers() -> int:
    raw = os.environ.get("SIEGELCERT_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(text: str, out_path: str | None):
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def _finish(report: CertificationReport, config: RunConfig) -> int:
    _emit(render(report_to_dict(report, config)), config.out)
    return exit_code_for(report)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    workers = _workers()
    try:
        if args.command == "cuspidal":
            if args.n < 1:
                raise SiegelcertError("orbit length n must be >= 1")
            config = RunConfig("cuspidal", "cuspidal", {"n": args.n},
                               args.tol, args.residual_tol, args.escalations,
                               args.strict, args.seed, workers, args.out,
                               max_iter=args.max_iter)
            report = certify_cuspidal(args.n, tol=args.tol, strict=args.strict,
                                      workers=workers,
                                      escalations=args.escalations,
                                      max_iter=args.max_iter)
            return _finish(report, config)

        if args.command == "three-lines":
            orbit = OrbitData(args.m, args.n)
            config = RunConfig("three-lines", "three_lines",
                               {"m": list(args.m), "n": list(args.n)},
                               args.tol, args.residual_tol, args.escalations,
                               args.strict, args.seed, workers, args.out,
                               max_iter=args.max_iter)
            report = certify_three_lines(orbit, tol=args.tol,
                                         strict=args.strict, workers=workers,
                                         escalations=args.escalations,
                                         max_iter=args.max_iter)
            return _finish(report, config)

        if args.command == "theorem1":
            if args.k < 2:
                sys.stderr.write(
                    "k = 0 and k = 1 are delegated to the earlier degree-2 "
                    "constructions on other cubic curves; this tool covers k >= 2.\n")
                return 1
            from .pipeline import DEFAULT_EPS, DEFAULT_MN_CAP
            eps = args.eps if args.eps is not None else DEFAULT_EPS
            mn_cap = args.mn_cap if args.mn_cap is not None else DEFAULT_MN_CAP
            config = RunConfig("theorem1", "theorem1",
                               {"k": args.k, "eps": eps, "mn_cap": mn_cap},
                               args.tol, args.residual_tol, args.escalations,
                               args.strict, args.seed, workers, args.out,
                               max_iter=args.max_iter)
            report = theorem1_pipeline(args.k, tol=args.tol, strict=args.strict,
                                       workers=workers, eps=eps, mN_cap=mn_cap)
            return _finish(report, config)

        if args.command == "matrix":
            if args.family == "quad":
                if len(args.n) != 3:
                    raise SiegelcertError("quad needs --n n1,n2,n3")
                m = quad_action_matrix(*args.n, sigma=tuple(args.sigma))
            else:
                if args.m is None or len(args.m) != len(args.n):
                    raise SiegelcertError("three-lines needs --m and --n of equal length")
                m = tl_action_matrix(OrbitData(args.m, args.n))
            _emit(m.to_text(), args.out)
            return 0
    except (SiegelcertError, ValueError) as exc:
        import json
        sys.stdout.write(json.dumps(
            {"error": {"stage": type(exc).__name__, "message": str(exc)}},
            sort_keys=True, indent=2) + "\n")
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

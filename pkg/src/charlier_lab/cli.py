"""Command-line surface: evaluate, tabulate, verify, contract, benchmark.

Exit codes: 0 all requested checks pass, 1 an identity check failed,
2 invalid or degenerate input (including argument parsing errors).

Reports are written as JSON, CSV, or plain text; when ``--out`` is given the
report path also receives a rendered figure (``<out>.png``) unless
``--no-figures`` is passed.  All outputs are deterministic for a fixed
configuration except the timing columns of ``bench``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import bivariate, figures, krawtchouk2d, multivariate
from .euclid import DegenerateParameterError, EuclidParams2, EuclidParamsD
from .reports import SCHEMA, VerifyReport, rows_to_csv, to_json, verify_reports_to_rows

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INVALID_INPUT = 2

DEFAULT_TOLERANCES = {
    "orthogonality": 1e-8,
    "recurrence": 1e-9,
    "difference": 1e-9,
    "lowering": 1e-10,
    "duality": 1e-10,
    "integral": 1e-8,
    "orthogonality-d": 1e-7,
}
SUITES_2D = ("orthogonality", "recurrence", "difference", "lowering", "duality", "integral")


def _parse_int_pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return (int(parts[0]), int(parts[1]))


def _parse_int_list(text: str) -> List[int]:
    return [int(p) for p in text.split(",") if p]


def _parse_float_list(text: str) -> List[float]:
    return [float(p) for p in text.split(",") if p]


def _parse_pi_fraction(text: str) -> float:
    frac = Fraction(text)
    return math.pi * frac.numerator / frac.denominator


def _add_motion_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theta", type=float, default=None, help="rotation angle in radians")
    parser.add_argument(
        "--theta-pi-frac",
        type=str,
        default=None,
        metavar="P/Q",
        help="rotation angle as a rational multiple of pi (exact at degenerate loci)",
    )
    parser.add_argument("--alpha", type=float, default=1.0, help="first translation parameter")
    parser.add_argument("--beta", type=float, default=1.0, help="second translation parameter")


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    parser.add_argument("--out", type=Path, default=None, help="write the report to this path")
    parser.add_argument(
        "--no-figures",
        action="store_true",
        help="do not render a figure next to the report file",
    )


def _motion_from_args(args: argparse.Namespace) -> EuclidParams2:
    if args.theta is not None and args.theta_pi_frac is not None:
        raise ValueError("--theta and --theta-pi-frac are mutually exclusive")
    if args.theta_pi_frac is not None:
        theta = _parse_pi_fraction(args.theta_pi_frac)
    elif args.theta is not None:
        theta = args.theta
    else:
        theta = 0.0
    return EuclidParams2(theta=theta, alpha=args.alpha, beta=args.beta)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charlier-lab",
        description="Bivariate and d-variate Charlier polynomials: evaluation, "
        "tabulation, identity verification, contraction study, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one polynomial value")
    _add_motion_args(p_eval)
    _add_output_args(p_eval)
    p_eval.add_argument("--deg", type=_parse_int_pair, required=True, metavar="M,N")
    p_eval.add_argument("--pt", type=_parse_int_pair, required=True, metavar="I,K")
    p_eval.add_argument(
        "--algorithm",
        choices=bivariate.ALGORITHM_NAMES,
        default="genfun",
        help="evaluation route (cross-checked against the raising reference)",
    )

    p_table = sub.add_parser("table", help="tabulate values over a box of degrees and points")
    _add_motion_args(p_table)
    _add_output_args(p_table)
    p_table.add_argument("--degmax", type=int, default=2, help="m, n range 0..degmax each")
    p_table.add_argument("--ptmax", type=int, default=2, help="i, k range 0..ptmax each")
    p_table.add_argument(
        "--algorithm", choices=bivariate.ALGORITHM_NAMES, default="genfun"
    )

    p_verify = sub.add_parser("verify", help="run identity verification suites")
    _add_motion_args(p_verify)
    _add_output_args(p_verify)
    p_verify.add_argument(
        "--suite",
        type=str,
        default=None,
        help="comma-separated subset of: " + ", ".join(SUITES_2D) + ", orthogonality-d",
    )
    p_verify.add_argument("--degmax", type=int, default=4)
    p_verify.add_argument("--ptmax", type=int, default=10)
    p_verify.add_argument("--cutoff", type=int, default=60)
    p_verify.add_argument("--nodes", type=int, default=40, help="quadrature nodes per axis")
    p_verify.add_argument("--deg", type=_parse_int_pair, default=(1, 1), metavar="M,N")
    p_verify.add_argument("--pt", type=_parse_int_pair, default=(2, 1), metavar="I,K")
    p_verify.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    p_verify.add_argument("--dim", type=int, default=None, help="dimension for the d-variate suite")
    p_verify.add_argument("--R", type=Path, default=None, help="JSON file with the d-variate motion")
    p_verify.add_argument("--alphas", type=_parse_float_list, default=None, metavar="A1,...,AD")
    p_verify.add_argument("--seed", type=int, default=0, help="seed for a random orthogonal matrix")
    p_verify.add_argument("--dcutoff", type=int, default=40, help="d-variate lattice cutoff per axis")
    p_verify.add_argument("--ddegmax", type=int, default=2, help="d-variate total degree bound")

    p_limit = sub.add_parser("limit", help="Krawtchouk-to-Charlier contraction study")
    _add_motion_args(p_limit)
    _add_output_args(p_limit)
    p_limit.add_argument("--deg", type=_parse_int_pair, default=(1, 1), metavar="M,N")
    p_limit.add_argument("--pt", type=_parse_int_pair, default=(2, 1), metavar="I,K")
    p_limit.add_argument(
        "--Ns", type=_parse_int_list, default=[16, 64, 256, 1024], metavar="N1,N2,..."
    )
    p_limit.add_argument("--dps", type=int, default=None, help="mpmath digits (extended precision)")

    p_bench = sub.add_parser("bench", help="time the four evaluators over a grid")
    _add_motion_args(p_bench)
    _add_output_args(p_bench)
    p_bench.add_argument("--degmax", type=int, default=3)
    p_bench.add_argument("--ptmax", type=int, default=6)
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--warmup", type=int, default=1)

    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_eval(args: argparse.Namespace) -> int:
    params = _motion_from_args(args)
    report = bivariate.evaluate(params, args.deg, args.pt, algorithm=args.algorithm)
    if args.format == "json":
        payload = report.to_dict()
        payload.update({"deg": list(args.deg), "pt": list(args.pt), "params": params.to_json_dict()})
        text = to_json(payload)
    elif args.format == "csv":
        text = rows_to_csv(
            ["m", "n", "i", "k", "value", "algorithm", "reference_value", "discrepancy"],
            [[args.deg[0], args.deg[1], args.pt[0], args.pt[1], report.value,
              report.algorithm, report.reference_value, report.error_estimate]],
        )
    else:
        text = (
            f"C_{{{args.deg[0]},{args.deg[1]}}}({args.pt[0]},{args.pt[1]}) = {report.value!r}\n"
            f"algorithm: {report.algorithm}\n"
            f"cross-check ({report.reference_algorithm}): {report.reference_value!r}\n"
            f"discrepancy: {report.error_estimate:.3e}\n"
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    params = _motion_from_args(args)
    header = ["m", "n", "i", "k", "value", "algorithm", "discrepancy_vs_reference"]
    rows = []
    for m in range(args.degmax + 1):
        for n in range(args.degmax + 1):
            for i in range(args.ptmax + 1):
                for k in range(args.ptmax + 1):
                    report = bivariate.evaluate(params, (m, n), (i, k), algorithm=args.algorithm)
                    discrepancy = (
                        report.error_estimate
                        if args.algorithm != "raising"
                        else abs(report.value - report.reference_value)
                    )
                    rows.append([m, n, i, k, report.value, report.algorithm, discrepancy])
    if args.format == "json":
        text = to_json(
            {
                "schema": SCHEMA,
                "kind": "table",
                "params": params.to_json_dict(),
                "columns": header,
                "rows": rows,
            }
        )
    elif args.format == "csv":
        text = rows_to_csv(header, rows)
    else:
        widths = "  ".join(header)
        lines = [widths]
        for row in rows:
            lines.append("  ".join(str(c) for c in row))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _load_d_params(args: argparse.Namespace) -> Optional[EuclidParamsD]:
    if args.R is None and args.dim is None and args.alphas is None:
        return None
    if args.R is not None:
        data = json.loads(Path(args.R).read_text())
        if "alphas" in data and args.alphas is None:
            return EuclidParamsD.from_json_dict(data)
        rotation = np.array(data["R"], dtype=float)
    else:
        dim = args.dim if args.dim is not None else (len(args.alphas) if args.alphas else None)
        if dim is None:
            raise ValueError("d-variate suite needs --dim, --R, or --alphas")
        rotation = multivariate.random_orthogonal(dim, seed=args.seed)
    alphas = (
        np.array(args.alphas, dtype=float)
        if args.alphas is not None
        else np.ones(rotation.shape[0])
    )
    return EuclidParamsD(rotation=rotation, alphas=alphas)


def cmd_verify(args: argparse.Namespace) -> int:
    params = _motion_from_args(args)
    d_params = _load_d_params(args)
    if args.suite:
        requested = [s.strip() for s in args.suite.split(",") if s.strip()]
        unknown = set(requested) - set(SUITES_2D) - {"orthogonality-d"}
        if unknown:
            raise ValueError(f"unknown suite name(s): {sorted(unknown)}")
    else:
        requested = list(SUITES_2D)
        if d_params is not None:
            requested.append("orthogonality-d")
    if "orthogonality-d" in requested and d_params is None:
        raise ValueError("the orthogonality-d suite needs --dim, --R, or --alphas")

    def tol(name: str) -> float:
        return args.tol if args.tol is not None else DEFAULT_TOLERANCES[name]

    reports: List[VerifyReport] = []
    for name in requested:
        if name == "orthogonality":
            reports.append(
                bivariate.verify_orthogonality(params, args.degmax, args.cutoff, tol=tol(name))
            )
        elif name == "recurrence":
            reports.append(
                bivariate.verify_recurrence(params, args.degmax, args.ptmax, tol=tol(name))
            )
        elif name == "difference":
            reports.append(
                bivariate.verify_difference(params, args.degmax, args.ptmax, tol=tol(name))
            )
        elif name == "lowering":
            reports.append(
                bivariate.verify_lowering(params, args.degmax, args.ptmax, tol=tol(name))
            )
        elif name == "duality":
            reports.append(bivariate.verify_duality(params, args.degmax, tol=tol(name)))
        elif name == "integral":
            reports.append(
                bivariate.verify_integral(params, args.deg, args.pt, nodes=args.nodes, tol=tol(name))
            )
        elif name == "orthogonality-d":
            reports.append(
                multivariate.verify_orthogonality_d(
                    d_params, args.ddegmax, args.dcutoff, tol=tol(name)
                )
            )

    all_passed = all(r.passed for r in reports)
    if args.format == "json":
        text = to_json(
            {
                "schema": SCHEMA,
                "kind": "verify-suite",
                "params": params.to_json_dict(),
                "all_passed": all_passed,
                "reports": [r.to_dict() for r in reports],
            }
        )
    elif args.format == "csv":
        header, rows = verify_reports_to_rows(reports)
        text = rows_to_csv(header, rows)
    else:
        lines = [r.summary_line() for r in reports]
        for r in reports:
            if not r.passed and r.tail_bound > r.tolerance:
                lines.append(
                    f"  note: {r.identity} truncation tail bound {r.tail_bound:.3e} exceeds "
                    f"tolerance {r.tolerance:.1e}; increase the cutoff"
                )
            for diag in r.extras.get("sign_flip_diagnostics", []):
                lines.append(f"  note: {diag}")
        lines.append("ALL PASS" if all_passed else "FAILURES PRESENT")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.out is not None and not args.no_figures:
        figures.save_verify_figure(reports, _figure_path(args.out))
    return EXIT_OK if all_passed else EXIT_IDENTITY_FAILURE


def cmd_limit(args: argparse.Namespace) -> int:
    params = _motion_from_args(args)
    report = krawtchouk2d.limit_study(params, args.deg, args.pt, args.Ns, dps=args.dps)
    if args.format == "json":
        text = to_json(
            {
                "schema": SCHEMA,
                "kind": "limit",
                "params": params.to_json_dict(),
                "report": report.to_dict(),
            }
        )
    elif args.format == "csv":
        header = ["N", "error", "error_alternate_sign"]
        rows = [
            [n, e, ea]
            for n, e, ea in zip(
                report.extras["n_values"],
                report.extras["errors"],
                report.extras["errors_alternate_sign"],
            )
        ]
        text = rows_to_csv(header, rows)
    else:
        lines = [report.summary_line()]
        for n, e in zip(report.extras["n_values"], report.extras["errors"]):
            lines.append(f"  N={n:6d}  |P - C| = {e:.6e}")
        lines.append(
            "monotone decrease: " + ("yes" if report.extras["strictly_decreasing"] else "NO")
        )
        lines.append(f"converged sign convention: {report.extras['converged_convention']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.out is not None and not args.no_figures:
        figures.save_limit_figure(report, _figure_path(args.out))
    return EXIT_OK if report.passed else EXIT_IDENTITY_FAILURE


def cmd_bench(args: argparse.Namespace) -> int:
    params = _motion_from_args(args)
    grid = [
        ((m, n), (i, k))
        for m in range(args.degmax + 1)
        for n in range(args.degmax + 1)
        for i in range(args.ptmax + 1)
        for k in range(args.ptmax + 1)
    ]
    rows: List[Dict[str, object]] = []
    for name in bivariate.ALGORITHM_NAMES:
        fn = {
            "raising": bivariate.eval_raising,
            "genfun": bivariate.eval_genfun,
            "hyper": bivariate.eval_hypergeometric,
            "decomp": bivariate.eval_decomposition,
        }[name]
        try:
            fn(params, grid[0][0], grid[0][1])
        except DegenerateParameterError as exc:
            rows.append(
                {
                    "algorithm": name,
                    "evals": 0,
                    "warmup": args.warmup,
                    "repetitions": args.reps,
                    "best_seconds": float("nan"),
                    "mean_seconds": float("nan"),
                    "max_discrepancy": float("nan"),
                    "status": f"degenerate: {exc}",
                }
            )
            continue
        for _ in range(args.warmup):
            for deg, pt in grid:
                fn(params, deg, pt)
        times = []
        max_disc = 0.0
        for _ in range(args.reps):
            start = time.perf_counter()
            for deg, pt in grid:
                fn(params, deg, pt)
            times.append(time.perf_counter() - start)
        for deg, pt in grid:
            ref = bivariate.eval_raising(params, deg, pt)
            max_disc = max(max_disc, abs(fn(params, deg, pt) - ref))
        rows.append(
            {
                "algorithm": name,
                "evals": len(grid),
                "warmup": args.warmup,
                "repetitions": args.reps,
                "best_seconds": min(times),
                "mean_seconds": sum(times) / len(times),
                "max_discrepancy": max_disc,
                "status": "ok",
            }
        )
    header = [
        "algorithm", "evals", "warmup", "repetitions",
        "best_seconds", "mean_seconds", "max_discrepancy", "status",
    ]
    if args.format == "json":
        text = to_json(
            {"schema": SCHEMA, "kind": "bench", "params": params.to_json_dict(), "rows": rows}
        )
    elif args.format == "csv":
        text = rows_to_csv(header, [[row[h] for h in header] for row in rows])
    else:
        lines = [
            f"{row['algorithm']:8s} evals={row['evals']:4d} best={row['best_seconds']:.4f}s "
            f"mean={row['mean_seconds']:.4f}s max_discrepancy={row['max_discrepancy']:.3e} "
            f"[warmup={row['warmup']}, reps={row['repetitions']}] {row['status']}"
            for row in rows
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.out is not None and not args.no_figures:
        figures.save_bench_figure([r for r in rows if r["status"] == "ok"], _figure_path(args.out))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "eval": cmd_eval,
        "table": cmd_table,
        "verify": cmd_verify,
        "limit": cmd_limit,
        "bench": cmd_bench,
    }[args.command]
    try:
        return handler(args)
    except DegenerateParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: every computation plus the verification harness.

Subcommands: phi, sigma, bounds, coeffs, trace, verify.  Global flags
(--format/--out/--seed/--tol) attach to each subcommand.  Complex inputs
travel as two real flags (--z-re/--z-im) or a single real flag (--z).

Exit codes: 0 success, 1 domain/validation error, 2 verification failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import (
    bieberbach_bound,
    coeffs_from_p,
    extremal_F_coeffs,
    extremal_G_coeffs,
    fekete_szego_bound,
    hankel2_bound,
    CaratheodoryMixture,
)
from .errors import ConsistencyError, ConvergenceError, DomainError, NearZeroDenominator
from .harness import SUITE_IDS, _jsonable, run_suite
from .hypq import PhiParams, phi_eval, shifted_phi_series
from .qcore import NormalizedSeries
from .starlike import GridSpec, boundary_trace, sigma_q_phi, sigma_q_phi_with_grid

_HANDLED = (DomainError, ConvergenceError, NearZeroDenominator, ConsistencyError, ValueError)


class _CliArgumentError(Exception):
    """Flag-level misuse; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse would exit(2) on bad flags, clashing with the exit contract
    # (2 = verification failures); route parse errors through code 1 instead
    def error(self, message: str):
        raise _CliArgumentError(message)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "csv", "plain"), default="plain",
                     help="output format (default: plain)")
    sub.add_argument("--out", type=Path, default=None, help="write output to this path")
    sub.add_argument("--seed", type=int, default=42, help="seed for randomized suites")
    sub.add_argument("--tol", type=float, default=1e-10, help="evaluation tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qstarlike",
        description="q-starlikeness orders, coefficient bounds, and their verification",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_phi = sub.add_parser("phi", help="evaluate the basic hypergeometric series")
    for flag in ("--a", "--b", "--c", "--q"):
        p_phi.add_argument(flag, type=float, required=True)
    p_phi.add_argument("--z", type=float, default=None, help="real argument")
    p_phi.add_argument("--z-re", type=float, default=None)
    p_phi.add_argument("--z-im", type=float, default=None)
    p_phi.add_argument("--shifted", action="store_true",
                       help="multiply by z (evaluate z*Phi instead of Phi)")
    _add_common(p_phi)

    p_sigma = sub.add_parser("sigma", help="order of q-starlikeness of z*Phi(a,b;c;q, r z)")
    for flag in ("--a", "--b", "--c", "--q", "--r"):
        p_sigma.add_argument(flag, type=float, required=True)
    p_sigma.add_argument("--method", choices=("closed", "grid", "both"), default="closed")
    p_sigma.add_argument("--n-theta", type=int, default=720)
    p_sigma.add_argument("--n-radius", type=int, default=64)
    p_sigma.add_argument("--max-radius", type=float, default=1.0 - 1e-6)
    _add_common(p_sigma)

    p_bounds = sub.add_parser("bounds", help="coefficient bounds")
    p_bounds.add_argument("--kind", choices=("bieberbach", "fs", "hankel"), required=True)
    p_bounds.add_argument("--q", type=float, required=True)
    p_bounds.add_argument("--n", type=int, default=None, help="index for the growth bound")
    p_bounds.add_argument("--mu", type=float, default=None, help="real weight (fs)")
    p_bounds.add_argument("--mu-re", type=float, default=None)
    p_bounds.add_argument("--mu-im", type=float, default=None)
    _add_common(p_bounds)

    p_coeffs = sub.add_parser("coeffs", help="coefficients from a driving kernel")
    p_coeffs.add_argument("--kind", choices=("F", "G", "from-p"), required=True)
    p_coeffs.add_argument("--q", type=float, required=True)
    p_coeffs.add_argument("--n", type=int, required=True, help="number of coefficients")
    p_coeffs.add_argument("--p", type=str, default=None,
                          help="comma-separated driving coefficients, complex "
                               "literals allowed (e.g. '0,2,0' or '1j,0.5')")
    _add_common(p_coeffs)

    p_trace = sub.add_parser("trace", help="(theta, Re w, Im w) on a circle")
    p_trace.add_argument("--f", choices=("phi", "F", "G", "mixture"), required=True)
    p_trace.add_argument("--a", type=float, default=None)
    p_trace.add_argument("--b", type=float, default=None)
    p_trace.add_argument("--c", type=float, default=None)
    p_trace.add_argument("--q", type=float, required=True)
    p_trace.add_argument("--radius", type=float, required=True)
    p_trace.add_argument("--n-theta", type=int, default=360)
    p_trace.add_argument("--n-terms", type=int, default=128,
                         help="series truncation for the F/G/mixture kernels")
    p_trace.add_argument("--mixture-file", type=Path, default=None,
                         help="JSON file {weights: [...], phases: [[re,im],...]}")
    _add_common(p_trace)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=sorted(SUITE_IDS), required=True)
    p_verify.add_argument("--n-cases", type=int, default=10)
    _add_common(p_verify)

    return parser


def _complex_flag(args, real_name: str, re_name: str, im_name: str, default=0.0) -> complex:
    plain = getattr(args, real_name)
    re = getattr(args, re_name)
    im = getattr(args, im_name)
    if plain is not None:
        if re is not None or im is not None:
            raise DomainError(
                f"pass either --{real_name.replace('_', '-')} or the -re/-im pair, not both"
            )
        return complex(plain, 0.0)
    if re is None and im is None:
        return complex(default, 0.0)
    return complex(re or 0.0, im or 0.0)


def _fmt_complex(value: complex) -> str:
    if value.imag == 0.0:
        return repr(value.real)
    return f"{value.real!r}{value.imag:+}j"


def _cmd_phi(args) -> tuple[dict, list[dict], int]:
    params = PhiParams(args.a, args.b, args.c, args.q)
    z = _complex_flag(args, "z", "z_re", "z_im")
    value = phi_eval(params, z, tol=args.tol)
    if args.shifted:
        value = z * value
    payload = {
        "command": "phi",
        "a": args.a, "b": args.b, "c": args.c, "q": args.q,
        "z": z, "shifted": bool(args.shifted), "value": value,
    }
    rows = [{"re": value.real, "im": value.imag}]
    return payload, rows, 0


def _cmd_sigma(args) -> tuple[dict, list[dict], int]:
    params = PhiParams(args.a, args.b, args.c, args.q)
    grid = GridSpec(args.n_theta, args.n_radius, args.max_radius)
    if args.method == "closed":
        report = sigma_q_phi(params, args.r, tol=args.tol)
    else:
        report = sigma_q_phi_with_grid(params, args.r, grid, tol=args.tol)
    payload = {
        "command": "sigma",
        "a": args.a, "b": args.b, "c": args.c, "q": args.q, "r": args.r,
        "method": args.method,
        **report.as_dict(),
    }
    if args.method == "both":
        payload["difference"] = abs(report.closed_form - report.grid_estimate)
    if args.method == "grid":
        payload.pop("closed_form", None)
    rows = [{k: v for k, v in payload.items() if k not in ("command", "grid_spec")}]
    return payload, rows, 0


def _cmd_bounds(args) -> tuple[dict, list[dict], int]:
    payload: dict = {"command": "bounds", "kind": args.kind, "q": args.q}
    if args.kind == "bieberbach":
        if args.n is None:
            raise DomainError("--kind bieberbach requires --n")
        payload["n"] = args.n
        payload["value"] = bieberbach_bound(args.q, args.n)
    elif args.kind == "fs":
        mu = _complex_flag(args, "mu", "mu_re", "mu_im")
        bound = fekete_szego_bound(args.q, mu)
        payload["mu"] = mu
        payload["value"] = bound.value
        payload["branch"] = bound.branch
    else:
        payload["value"] = hankel2_bound(args.q)
    rows = [{k: v for k, v in payload.items() if k != "command"}]
    return payload, rows, 0


def _series_for(kind: str, args) -> NormalizedSeries:
    if kind == "F":
        return extremal_F_coeffs(args.q, args.n_terms)
    if kind == "G":
        return extremal_G_coeffs(args.q, args.n_terms)
    if kind == "mixture":
        if args.mixture_file is None:
            raise DomainError("--f mixture requires --mixture-file")
        spec = json.loads(args.mixture_file.read_text())
        phases = np.array([complex(re, im) for re, im in spec["phases"]])
        mixture = CaratheodoryMixture(np.asarray(spec["weights"], dtype=float), phases)
        return mixture.series(args.q, args.n_terms)
    if None in (args.a, args.b, args.c):
        raise DomainError("--f phi requires --a/--b/--c")
    params = PhiParams(args.a, args.b, args.c, args.q)
    return shifted_phi_series(params, scale=1.0, eval_radius=args.radius, tol=args.tol)


def _cmd_trace(args) -> tuple[dict, list[dict], int]:
    series = _series_for(args.f, args)
    table = boundary_trace(series, args.q, args.radius, args.n_theta)
    rows = [
        {"theta": float(t), "re_w": float(re), "im_w": float(im)}
        for t, re, im in table
    ]
    payload = {
        "command": "trace",
        "f": args.f, "q": args.q, "radius": args.radius, "n_theta": args.n_theta,
        "rows": rows,
    }
    return payload, rows, 0


def _cmd_coeffs(args) -> tuple[dict, list[dict], int]:
    if args.kind == "F":
        series = extremal_F_coeffs(args.q, args.n)
    elif args.kind == "G":
        series = extremal_G_coeffs(args.q, args.n)
    else:
        if not args.p:
            raise DomainError("--kind from-p requires --p")
        driving = np.array([complex(tok.strip()) for tok in args.p.split(",")])
        series = coeffs_from_p(driving, args.q, args.n)
    rows = [
        {"n": k + 1, "re": float(c.real), "im": float(c.imag)}
        for k, c in enumerate(series.coeffs)
    ]
    payload = {"command": "coeffs", "kind": args.kind, "q": args.q, "rows": rows}
    return payload, rows, 0


def _cmd_verify(args) -> tuple[dict, list[dict], int]:
    report = run_suite(args.suite, seed=args.seed, n_cases=args.n_cases)
    payload = report.as_dict()
    payload["command"] = "verify"
    rows = [
        {
            "theorem_id": c.theorem_id,
            "lhs": c.lhs,
            "rhs": c.rhs,
            "margin": c.margin,
            "verdict": c.verdict,
        }
        for c in report.certificates
    ]
    return payload, rows, 2 if report.failures else 0


_DISPATCH = {
    "phi": _cmd_phi,
    "sigma": _cmd_sigma,
    "bounds": _cmd_bounds,
    "coeffs": _cmd_coeffs,
    "trace": _cmd_trace,
    "verify": _cmd_verify,
}


def _render_plain(payload: dict) -> str:
    command = payload.get("command")
    if command == "phi":
        return _fmt_complex(payload["value"])
    if command == "sigma":
        keys = ("closed_form", "grid_estimate", "lower_bound", "upper_bound",
                "rho", "s", "difference")
        lines = [f"{k} = {_plain_number(payload[k])}" for k in keys if k in payload]
        return "\n".join(lines)
    if command == "bounds":
        extra = f"  (branch {payload['branch']})" if "branch" in payload else ""
        return f"{payload['value']!r}{extra}"
    if command in ("trace", "coeffs"):
        return _render_csv(payload["rows"])
    if command == "verify":
        lines = [
            f"suite={payload['suite_id']} seed={payload['seed']} "
            f"n_cases={payload['n_cases']} certificates={len(payload['certificates'])} "
            f"failures={payload['failures']}"
        ]
        for cert in payload["certificates"]:
            if cert["verdict"] == "fail":
                lines.append(
                    f"  FAIL {cert['theorem_id']}: lhs={cert['lhs']} rhs={cert['rhs']}"
                )
        return "\n".join(lines)
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True)


def _plain_number(value) -> str:
    if isinstance(value, float):
        if value == float("-inf"):
            return "-inf"
        if value == float("inf"):
            return "inf"
        return repr(value)
    return str(value)


def _render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue().rstrip("\n")


def _csv_cell(value):
    if isinstance(value, complex):
        return _fmt_complex(value)
    if isinstance(value, float):
        return _plain_number(value)
    if isinstance(value, (dict, list)):
        return json.dumps(_jsonable(value), sort_keys=True)
    return value


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, rows, exit_code = _DISPATCH[args.command](args)
    except _CliArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except _HANDLED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    elif args.format == "csv":
        text = _render_csv(rows)
    else:
        text = _render_plain(payload)
    _emit(text, args.out)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line entry point: enumerate, verify, radial."""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

import numpy as np

from . import operators, pauli, radial
from .fields import valid_js
from .numerics import HalfInt, SphereGrid
from .verify import SUITES, VerifyConfig, run_suite

_FRACTION = re.compile(r"[+-]?\d+(/\d+)?")


class ConfigError(Exception):
    pass


def parse_half(text: str, flag: str) -> HalfInt:
    """Exact parse of '3/2', '-1', '0'; reports the first offending character."""
    s = text.strip()
    m = _FRACTION.match(s)
    if m is None or m.end() != len(s):
        pos = 0 if m is None else m.end()
        raise ConfigError(f"{flag}: cannot parse {text!r} at position {pos}: expected an integer or 'n/2'")
    num, _, den = s.partition("/")
    den = int(den) if den else 1
    if den == 0:
        raise ConfigError(f"{flag}: zero denominator in {text!r}")
    twice, rem = divmod(2 * int(num), den)
    if rem:
        raise ConfigError(f"{flag}: {text!r} is not a multiple of 1/2")
    return HalfInt(twice)


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _jsonable(x):
    if isinstance(x, HalfInt):
        return str(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"not serializable: {x!r}")


def _report(command: str, params: dict, results: list[dict], residuals: dict, ok: bool) -> dict:
    return {"command": command, "params": params, "results": results, "residuals": residuals, "pass": bool(ok)}


def _grid(args) -> SphereGrid:
    for name in ("grid_theta", "grid_phi"):
        if getattr(args, name) < 8:
            raise ConfigError(f"--{name.replace('_', '-')} must be at least 8")
    return SphereGrid(args.grid_theta, args.grid_phi)


def _tol(args) -> float:
    if not args.tol > 0:
        raise ConfigError("--tol must be positive")
    return args.tol


# ---- commands ----------------------------------------------------------------

def cmd_enumerate(args):
    k_max = parse_half(args.k, "--k") if args.k is not None else HalfInt(2)
    if k_max.twice < 1:
        raise ConfigError("--k (k_max) must be at least 1/2")
    rows = []
    for t in range(0, k_max.twice + 1):
        for twice in ((0,) if t == 0 else (t, -t)):
            q = pauli.spinor_quantization(HalfInt(twice), count=5)
            rows.append({"k": str(HalfInt(twice)), "j_min": str(q.j_min), "j_list": [str(j) for j in q.j_list]})
    header = ["k", "j_min", "j_list"]
    csv_rows = [[r["k"], r["j_min"], " ".join(r["j_list"])] for r in rows]
    return _report("enumerate", {"k_max": str(k_max)}, rows, {}, True), header, csv_rows


def cmd_verify(args):
    if args.suite not in ("all",) + SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    k = parse_half(args.k, "--k") if args.k is not None else None
    if k is not None and args.suite == "jmin" and k.twice == 0:
        raise ConfigError("--k 0 has no j_min state")
    cfg = VerifyConfig(grid=_grid(args), tol=_tol(args), seed=args.seed, k=k, eps=args.eps, mass=args.mass)
    checks = run_suite(args.suite, cfg)
    results = [c.as_dict() for c in checks]
    params = {"suite": args.suite, "k": None if k is None else str(k), "grid_theta": args.grid_theta,
              "grid_phi": args.grid_phi, "tol": cfg.tol, "seed": args.seed, "eps": args.eps, "mass": args.mass}
    header = ["check", "residual", "tol", "pass"]
    csv_rows = [[c.name, c.residual, c.tol, c.passed] for c in checks]
    residuals = {c.name: float(c.residual) for c in checks}
    return _report("verify", params, results, residuals, all(c.passed for c in checks)), header, csv_rows


def cmd_radial(args):
    k = parse_half(args.k if args.k is not None else "1/2", "--k")
    jmin = operators.j_min(k)
    j = parse_half(args.j, "--j") if args.j is not None else jmin
    if j < jmin:
        raise ConfigError(f"--j {j} is below j_min = {jmin} for k = {k}")
    if j not in valid_js(k, j):
        raise ConfigError(f"--j {j} is not an allowed value for k = {k} (j - k must be an integer)")
    if args.m_num is not None:
        mq = parse_half(args.m_num, "--m-num")
        if abs(mq) > j or (j - mq).twice % 2:
            raise ConfigError(f"--m-num {mq} incompatible with j = {j}")
    if args.delta not in (1, -1):
        raise ConfigError("--delta must be +1 or -1")
    if args.n < 1 or not args.r_max > 0:
        raise ConfigError("--n must be positive and --r-max must be > 0")
    tol = _tol(args)
    eps, mass = args.eps, args.mass
    params = {"k": str(k), "j": str(j), "m_num": args.m_num, "eps": eps, "mass": mass, "r_max": args.r_max,
              "n": args.n, "delta": args.delta, "tol": tol}
    results = []
    if k.twice != 0 and j == jmin:
        try:
            sol = radial.jmin_solve(k, eps, mass)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        rs = np.linspace(0.0, args.r_max, args.n + 1)
        worst = 0.0
        for r in rs:
            main, partner = complex(sol.main_value(r)), complex(sol.partner_value(r))
            res = radial.jmin_pair_residual(sol, [r])
            worst = max(worst, res)
            results.append({"r": float(r), "main_re": main.real, "main_im": main.imag,
                            "partner_re": partner.real, "partner_im": partner.imag, "residual": res})
        params.update({"solution": "closed_form", "kind": sol.kind, "main": sol.main, "partner": sol.partner,
                       "rate": [sol.rate.real, sol.rate.imag], "degenerate": sol.kind == "degenerate"})
        header = ["r", "main_re", "main_im", "partner_re", "partner_im", "residual"]
    else:
        r0 = min(1e-2, args.r_max / (args.n + 1))
        state = radial.solve_reduced(k, j, eps, mass, args.delta, r0, args.r_max, args.n)
        worst = 0.0
        for i, r in enumerate(state.r_grid):
            f, g = state.values[:, i]
            res = radial.backsubstitution_residual(k, j, eps, mass, args.delta, r, state.values[:, i]) / max(
                1.0, float(np.max(np.abs(state.values[:, i]))))
            worst = max(worst, res)
            results.append({"r": float(r), "f_re": f.real, "f_im": f.imag, "g_re": g.real, "g_im": g.imag,
                            "residual": res})
        params.update({"solution": "rk4_reduced", "nu": radial.nu_of(j, k), "r0": r0,
                       "system": "free" if k.twice == 0 else "monopole"})
        header = ["r", "f_re", "f_im", "g_re", "g_im", "residual"]
    csv_rows = [[row[h] for h in header] for row in results]
    return _report("radial", params, results, {"max_residual": worst}, worst < tol), header, csv_rows


COMMANDS = {"enumerate": cmd_enumerate, "verify": cmd_verify, "radial": cmd_radial}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", help="monopole number as a fraction string, e.g. 1/2 (k_max for enumerate)")
    common.add_argument("--j", help="total angular momentum, fraction string")
    common.add_argument("--m-num", help="magnetic quantum number, fraction string")
    common.add_argument("--eps", type=float, default=0.6, help="energy")
    common.add_argument("--mass", type=float, default=1.0)
    common.add_argument("--r-max", type=float, default=5.0)
    common.add_argument("--n", type=int, default=200, help="radial steps")
    common.add_argument("--delta", type=int, default=1, help="parity sign +1 or -1")
    common.add_argument("--suite", default="all", help="all, " + ", ".join(SUITES))
    common.add_argument("--grid-theta", type=int, default=64)
    common.add_argument("--grid-phi", type=int, default=64)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    parser = argparse.ArgumentParser(prog="spinmono", description="Spin-1/2 monopole harmonics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="allowed j per k")
    sub.add_parser("verify", parents=[common], help="run verification suites")
    sub.add_parser("radial", parents=[common], help="radial solutions")
    return parser


def render(report: dict, header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_jsonable) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report, header, rows = COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"spinmono: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, header, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())

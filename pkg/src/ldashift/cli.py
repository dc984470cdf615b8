"""Command-line front end.

Exit codes: 0 ok, 1 check-suite failure, 2 usage/validation error, 3 I/O
failure. Every file-producing command writes a JSON manifest sidecar with the
full parameter set needed to reproduce the output byte-exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from importlib import metadata

import numpy as np

from .core import LdaShiftError, RegimeConfig
from .asymptotics import asymptotic_risk, mp_stieltjes, mp_stieltjes_deriv
from .harness import (
    CurveTable,
    SweepMode,
    SweepSpec,
    run_sweep,
    trace_functional_check,
    wishart_trace_check,
)
from .phase import (
    behavior_signature,
    classify_phase,
    derivative_at_balance,
    imbalance_curve,
    phase_knots,
    regularized_monotonicity_check,
)

CSV_COLUMNS = [
    "mode",
    "grid",
    "gamma0",
    "gamma1",
    "delta2",
    "lambda",
    "pi0",
    "n0",
    "n1",
    "p",
    "reps",
    "theory_risk",
    "mc_mean",
    "mc_std",
    "flag",
]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_SEED = 42


def _version() -> str:
    try:
        return metadata.version("ldashift")
    except metadata.PackageNotFoundError:
        return "unknown"


def _fmt(value) -> str:
    """Locale-independent cell formatting; floats at 9 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def parse_grid(text: str) -> list[float]:
    """Either a comma-separated list or start:stop:step, stop included when it
    lies within 1e-12 of a step multiple."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {text!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        values = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-12:
                break
            values.append(v)
            k += 1
        if not values:
            raise ValueError(f"grid {text!r} is empty")
        return values
    values = [float(x) for x in text.split(",") if x.strip()]
    if not values:
        raise ValueError(f"grid {text!r} is empty")
    return values


def write_table_csv(table: CurveTable, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in table.rows:
            writer.writerow(
                [
                    row.mode,
                    _fmt(row.grid),
                    _fmt(row.gamma0),
                    _fmt(row.gamma1),
                    _fmt(row.delta2),
                    _fmt(row.lam),
                    _fmt(row.pi0),
                    row.n0,
                    row.n1,
                    row.p,
                    row.reps,
                    _fmt(row.theory_risk),
                    _fmt(row.mc_mean),
                    _fmt(row.mc_std),
                    row.flag,
                ]
            )


def write_manifest(path: str, subcommand: str, params: dict, seed: int, outputs, t0: float):
    manifest = {
        "subcommand": subcommand,
        "params": params,
        "master_seed": seed,
        "version": _version(),
        "outputs": list(outputs),
        "duration_s": time.time() - t0,
    }
    with open(path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_theory(args) -> int:
    cfg = RegimeConfig(args.gamma0, args.gamma1, args.delta2, args.pi0, args.lam)
    result = asymptotic_risk(cfg)
    print(
        json.dumps(
            {
                "arg0": result.arg0,
                "arg1": result.arg1,
                "risk": result.risk,
                "regime": result.regime.value,
            }
        )
    )
    return EXIT_OK


def _run_and_write(spec: SweepSpec, args, subcommand: str, params: dict) -> int:
    t0 = time.time()
    table = run_sweep(spec)
    try:
        write_table_csv(table, args.out)
        write_manifest(args.out, subcommand, params, spec.master_seed, [args.out], t0)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_sweep_gamma(args) -> int:
    grid = parse_grid(args.grid)
    spec = SweepSpec(
        mode=SweepMode.GAMMA,
        grid=tuple(grid),
        delta2=args.delta2,
        n=args.n,
        ratio=args.ratio,
        pi0=args.pi0,
        lam=args.lam,
        reps=args.reps,
        master_seed=args.seed,
    )
    params = {
        "mode": "gamma",
        "n": args.n,
        "ratio": args.ratio,
        "grid": args.grid,
        "delta2": args.delta2,
        "pi0": args.pi0,
        "lambda": args.lam,
        "reps": args.reps,
    }
    return _run_and_write(spec, args, "sweep-gamma", params)


def cmd_sweep_imbalance(args) -> int:
    grid = parse_grid(args.ratios)
    spec = SweepSpec(
        mode=SweepMode.IMBALANCE,
        grid=tuple(grid),
        delta2=args.delta2,
        n0=args.n0,
        gamma0=args.gamma0,
        pi0=args.pi0,
        lam=args.lam,
        reps=args.reps,
        master_seed=args.seed,
    )
    params = {
        "mode": "imbalance",
        "n0": args.n0,
        "gamma0": args.gamma0,
        "ratios": args.ratios,
        "delta2": args.delta2,
        "pi0": args.pi0,
        "lambda": args.lam,
        "reps": args.reps,
    }
    return _run_and_write(spec, args, "sweep-imbalance", params)


def cmd_phase(args) -> int:
    knots = phase_knots(args.delta2)
    out = {"gamma_a": knots.gamma_a, "gamma_b": knots.gamma_b}
    if args.gamma0 is not None:
        out["phase"] = classify_phase(args.gamma0, args.delta2).value
        deriv = derivative_at_balance(args.gamma0, args.delta2, args.lam)
        out["derivative_at_balance_sign"] = int(np.sign(deriv))
        grid = np.arange(1.0, 10.0 + 1e-12, 0.25)
        curve = imbalance_curve(args.gamma0, args.delta2, grid, args.lam)
        out["behavior"] = behavior_signature(curve).value
        if args.lam is not None:
            ok, violation = regularized_monotonicity_check(
                args.delta2, args.lam, np.arange(0.05, 5.0 + 1e-12, 0.05)
            )
            out["balanced_risk_monotone"] = ok
            if violation is not None:
                out["first_violation_gamma"] = violation
    print(json.dumps(out))
    return EXIT_OK


def _check(name: str, measured: float, bound: float, failures: list) -> None:
    ok = measured <= bound
    print(f"{'PASS' if ok else 'FAIL'} {name}: measured={measured:.3e} bound={bound:.3e}")
    if not ok:
        failures.append(name)


def _suite_mp(failures: list) -> None:
    for g in [0.1 * k for k in range(1, 10)]:
        _check(
            f"mp_value_gamma={g:.1f}",
            abs(mp_stieltjes(g, 0.0) - 1.0 / (1.0 - g)),
            1e-12,
            failures,
        )
        _check(
            f"mp_deriv_gamma={g:.1f}",
            abs(mp_stieltjes_deriv(g, 0.0) * (1.0 - g) ** 3 - 1.0),
            1e-12,
            failures,
        )
    for g in [0.1 * k for k in range(1, 10)] + [1.5, 2.0, 5.0]:
        for zeta in (-0.1, -1.0, -10.0):
            h = 1e-5
            fd = (mp_stieltjes(g, zeta + h) - mp_stieltjes(g, zeta - h)) / (2 * h)
            exact = mp_stieltjes_deriv(g, zeta)
            _check(
                f"mp_fd_gamma={g}_zeta={zeta}",
                abs(fd - exact) / abs(exact),
                1e-6,
                failures,
            )


def _suite_traces(failures: list) -> None:
    _check("wishart_trace_p50_n30", wishart_trace_check(50, 30, 1234), 1e-8, failures)
    _check("wishart_trace_p2_n4", wishart_trace_check(2, 4, 7), 1e-12, failures)
    _check("wishart_trace_p200_n100", wishart_trace_check(200, 100, 99), 1e-7, failures)
    e1, e2 = trace_functional_check(0.5, 2000, seed=5)
    _check("trace_first_moment_gamma0.5", e1, 0.05, failures)
    _check("trace_second_moment_gamma0.5", e2, 0.05, failures)
    e1, e2 = trace_functional_check(0.1, 2000, seed=5)
    _check("trace_first_moment_gamma0.1", e1, 0.02, failures)
    _check("trace_second_moment_gamma0.1", e2, 0.02, failures)


def _suite_agreement(failures: list, fast: bool) -> None:
    widen = 2.0 if fast else 1.0
    reps1 = 25 if fast else 100
    for delta2 in (9.0, 16.0, 25.0):
        spec = SweepSpec(
            mode=SweepMode.GAMMA,
            grid=(0.25, 0.5, 0.75, 1.25, 1.5, 2.0, 3.0, 4.0),
            delta2=delta2,
            n=200,
            ratio=1.0,
            reps=reps1,
            master_seed=DEFAULT_SEED,
        )
        for row in run_sweep(spec).rows:
            tol = (0.02 if abs(row.grid - 1.0) >= 0.5 else 0.03) * widen
            _check(
                f"peaking_delta2={delta2:g}_gamma={row.grid:g}",
                abs(row.mc_mean - row.theory_risk),
                tol,
                failures,
            )
    reps2 = 50 if fast else 200
    for gamma0 in (0.5, 2.5, 5.0):
        spec = SweepSpec(
            mode=SweepMode.IMBALANCE,
            grid=tuple(np.arange(1.0, 10.0 + 1e-12, 0.5)),
            delta2=9.0,
            n0=40,
            gamma0=gamma0,
            reps=reps2,
            master_seed=DEFAULT_SEED,
        )
        for row in run_sweep(spec).rows:
            gamma = row.gamma0 * row.gamma1 / (row.gamma0 + row.gamma1)
            if 0.9 <= gamma <= 1.1:
                continue
            _check(
                f"imbalance_gamma0={gamma0:g}_ratio={row.grid:g}",
                abs(row.mc_mean - row.theory_risk),
                0.04 * widen,
                failures,
            )


def cmd_check(args) -> int:
    failures: list[str] = []
    if args.suite in ("mp", "all"):
        _suite_mp(failures)
    if args.suite in ("traces", "all"):
        _suite_traces(failures)
    if args.suite in ("agreement", "all"):
        _suite_agreement(failures, args.fast)
    if failures:
        print(f"{len(failures)} check(s) failed")
        return EXIT_CHECK_FAILED
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lda-shift",
        description="Fisher LDA under label shift: theory, sweeps, phase reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory", help="evaluate the closed-form asymptotic risk")
    p.add_argument("--gamma0", type=float, required=True)
    p.add_argument("--gamma1", type=float, required=True)
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--pi0", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("sweep-gamma", help="risk vs gamma at fixed n and class ratio")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--grid", type=str, required=True)
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--pi0", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=str, required=True)
    p.set_defaults(func=cmd_sweep_gamma)

    p = sub.add_parser(
        "sweep-imbalance", help="risk vs n1/n0 at fixed n0 and gamma0"
    )
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--gamma0", type=float, required=True)
    p.add_argument("--ratios", type=str, required=True)
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--pi0", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=str, required=True)
    p.set_defaults(func=cmd_sweep_imbalance)

    p = sub.add_parser("phase", help="knots, phase class, and curve behavior")
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--gamma0", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("check", help="run the invariant check suites")
    p.add_argument(
        "--suite", choices=["mp", "traces", "agreement", "all"], required=True
    )
    p.add_argument("--fast", action="store_true", help="reduced reps, widened bounds")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which matches our contract
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LdaShiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

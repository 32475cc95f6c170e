"""Command-line front end.

Subcommands::

    lambda   sharp constant Lambda(R), optionally weighted or with envelopes
    astar    table of a*(r) over a radius range (CSV)
    verify   randomized certification suites (JSON report)
    plot     curve data for the envelope and psi/phi0 figures (CSV)

Exit codes: 0 success or clean run, 1 a certified violation was found,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import sharp, verify
from .errors import BohrError
from .functionals import (
    PAPER_EXAMPLE_WEIGHT,
    PRINTED_EXAMPLE_WEIGHT,
    THIRD,
    phi0_mobius,
    psi_functional,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
MIN_R = 1e-4
DEFAULT_STEPS = 200
WEIGHTS = {"paper_example": PAPER_EXAMPLE_WEIGHT, "printed_example": PRINTED_EXAMPLE_WEIGHT}

SUITES = {
    "classic": verify.CLASSIC,
    "improved-16-9": verify.PHI0_16_9,
    "improved-lambda": verify.PHI0_LAMBDA_R,
    "weighted": verify.WEIGHTED_G,
    "psi": verify.PSI_1,
    "dominance": "dominance",
    "condition-i": "condition-i",
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    output: str | None = None
    format: str = "csv"
    options: dict = field(default_factory=dict)


def real(text: str) -> float:
    """Parse a float, also accepting fractions such as ``1/3``."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.10g}"


def _emit_rows(cfg: RunConfig, header: list[str], rows: list[list[float]], out) -> None:
    if cfg.format == "json":
        json.dump([dict(zip(header, map(float, row))) for row in rows], out, indent=2)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _check_R(R: float) -> None:
    if not MIN_R <= R <= THIRD:
        raise UsageError(f"--R must lie in [{MIN_R}, 1/3], got {R}")


def cmd_lambda(cfg: RunConfig, out) -> int:
    R, g, bounds = cfg.options["R"], cfg.options["g"], cfg.options["bounds"]
    _check_R(R)
    if g and bounds:
        raise UsageError("--bounds applies to the unweighted constant only")
    res = sharp.lambda_weighted(WEIGHTS[g], R) if g else sharp.lambda_phi0(R)
    pair = sharp.lambda_bounds(R) if bounds else None
    record = {
        "R": R,
        "lambda": res.lam,
        "argmin_a": res.argmin_a,
        "lower": pair.lower if pair else None,
        "upper": pair.upper if pair else None,
        "method": res.method,
        "tol": res.tol,
    }
    if cfg.format == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(record))
        w.writerow([v if isinstance(v, str) else _fmt(v) for v in record.values()])
    return EXIT_OK


def cmd_astar(cfg: RunConfig, out) -> int:
    r_min, r_max, steps = cfg.options["r_min"], cfg.options["r_max"], cfg.options["steps"]
    if not 0.0 < r_min <= r_max < THIRD:
        raise UsageError(f"need 0 < r-min <= r-max < 1/3, got [{r_min}, {r_max}]")
    grid = [r_min] if r_min == r_max else np.linspace(r_min, r_max, steps + 1)
    rows = []
    for r in grid:
        x = sharp.astar(r)
        rows.append([r, x, abs(float(sharp.critical_poly(r)(x))), sharp.m_ratio(x, r)])
    _emit_rows(cfg, ["r", "astar", "p_r_residual", "m_value"], rows, out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    o = cfg.options
    suite, R = SUITES[o["suite"]], o["R"]
    if not 0.0 <= R <= THIRD:
        raise UsageError(f"--R must lie in [0, 1/3], got {R}")
    if suite == "dominance":
        rep = verify.dominance_check(o["density"])
        payload = {"suite": o["suite"], "samples": 0, "seed": cfg.seed, "R": THIRD,
                   "slack_min": -rep.max_excess, "violations": [] if rep.passed else [
                       {"a": rep.worst_a, "r": rep.worst_r, "excess": rep.max_excess}],
                   "scalar_min": rep.scalar_min, "scalar_at_third": rep.scalar_at_third}
        clean = rep.passed
    else:
        grid = verify.radius_grid(R, o["radii"])
        if suite == "condition-i":
            rep = verify.condition_i_spotcheck(o["samples"], cfg.seed, grid, o["order"])
        elif suite == verify.CLASSIC:
            rep = verify.verify_bohr_classic(o["samples"], cfg.seed, grid, o["order"])
        else:
            if suite == verify.PHI0_LAMBDA_R and R < MIN_R:
                raise UsageError(f"improved-lambda needs R >= {MIN_R}")
            rep = verify.verify_improved(suite, R, o["samples"], cfg.seed, o["order"], r_grid=grid)
        payload = rep.to_dict()
        payload["suite"] = o["suite"]
        clean = rep.clean
    json.dump(payload, out, indent=2)
    out.write("\n")
    return EXIT_OK if clean else EXIT_VIOLATION


def cmd_plot(cfg: RunConfig, out) -> int:
    o = cfg.options
    fig, steps = o["figure"], o["steps"]
    if fig in ("bounds", "bounds-zoom"):
        lo = 0.01 if fig == "bounds" else 0.25
        rows = []
        for R in np.linspace(lo, THIRD, steps + 1):
            pair = sharp.lambda_bounds(R)
            rows.append([R, pair.lower, pair.upper])
        _emit_rows(cfg, ["R", "lower", "upper"], rows, out)
    elif fig == "psi-vs-phi0-a":
        r = o["r"]
        if r is None:
            raise UsageError("--figure psi-vs-phi0-a requires --r")
        if not 0.0 <= r <= THIRD:
            raise UsageError(f"--r must lie in [0, 1/3], got {r}")
        a = np.linspace(0.0, 1.0, steps + 1)
        rows = np.column_stack([a, psi_functional(a, r), phi0_mobius(a, r)]).tolist()
        _emit_rows(cfg, ["a", "psi", "phi0"], rows, out)
    else:
        a = o["a"]
        if a is None:
            raise UsageError("--figure psi-vs-phi0-r requires --a")
        if not 0.0 <= a <= 1.0:
            raise UsageError(f"--a must lie in [0, 1], got {a}")
        r = np.linspace(0.0, THIRD, steps + 1)
        rows = np.column_stack([r, psi_functional(a, r), phi0_mobius(a, r)]).tolist()
        _emit_rows(cfg, ["r", "psi", "phi0"], rows, out)
    return EXIT_OK


COMMANDS = {"lambda": cmd_lambda, "astar": cmd_astar, "verify": cmd_verify, "plot": cmd_plot}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrsharp", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", parents=[common], help="sharp constant Lambda(R)")
    p.add_argument("--R", type=real, required=True)
    p.add_argument("--g", choices=sorted(WEIGHTS), default=None)
    p.add_argument("--bounds", action="store_true")

    p = sub.add_parser("astar", parents=[common], help="minimiser a*(r) of M(., r)")
    p.add_argument("--r-min", type=real, default=0.001)
    p.add_argument("--r-max", type=real, default=0.33)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)

    p = sub.add_parser("verify", parents=[common], help="randomized certification suites")
    p.add_argument("--suite", choices=list(SUITES), required=True)
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES)
    p.add_argument("--R", type=real, default=THIRD)
    p.add_argument("--radii", type=int, default=verify.DEFAULT_RADII)
    p.add_argument("--order", type=int, default=256)
    p.add_argument("--density", type=int, default=1000, help="grid density for the dominance suite")

    p = sub.add_parser("plot", parents=[common], help="figure data as CSV")
    p.add_argument("--figure", choices=("bounds", "bounds-zoom", "psi-vs-phi0-a", "psi-vs-phi0-r"),
                   required=True)
    p.add_argument("--a", type=real, default=None)
    p.add_argument("--r", type=real, default=None)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    return parser


def parse_config(argv=None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    seed, output, fmt = args.pop("seed"), args.pop("output"), args.pop("format")
    if fmt is None:
        fmt = "json" if command in ("lambda", "verify") else "csv"
    if args.get("steps", 1) < 1:
        raise UsageError("--steps must be at least 1")
    return RunConfig(command, seed, output, fmt, args)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = open(cfg.output, "w", newline="") if cfg.output else sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, BohrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cfg.output:
            out.close()


if __name__ == "__main__":
    sys.exit(main())

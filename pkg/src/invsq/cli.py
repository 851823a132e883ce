"""
Command-line entry point.

Subcommands write CSV or JSON to ``--out`` (stdout by default). When
INVSQ_OUTPUT_DIR is set, relative ``--out`` paths are placed inside it.

Exit status: 0 success, 1 invalid input, 2 a verification tolerance was
breached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import InvSqError, ResonanceError
from .model import in_critical_band, short_range_solution, sigma_from_alpha
from .oracle import RegulatedProblem, wavefunction_sample
from .rgflow import (
    FlowTrajectory,
    default_window,
    flow_direction,
    flow_from_invariant,
    flow_numeric,
    portrait_grid,
)
from .scattering import log_eps_star, scatter
from .verify import CHECK_NAMES, run_checks, summary_lines

EXIT_OK, EXIT_INVALID, EXIT_BREACH = 0, 1, 2
OUTPUT_DIR_ENV = "INVSQ_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share the validation exit status
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return "%.17g" % x


# ---------------------------------------------------------------------------
# output


def _out_path(path: str | None) -> Path | None:
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, path: str | None) -> None:
    p = _out_path(path)
    if p is None:
        sys.stdout.write(text)
        return
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _finite(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


# ---------------------------------------------------------------------------
# flow


def _eps_grid(args) -> np.ndarray:
    lo, hi = args.eps_range
    if not (0 < lo < hi):
        raise UsageError("--eps-range needs 0 < MIN < MAX")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    return np.geomspace(lo, hi, args.samples)


def _trajectory(args, grid) -> FlowTrajectory:
    so = sigma_from_alpha(args.alpha)
    has_seed = args.lambda0 is not None or args.eps0 is not None
    if has_seed and args.eps_star is not None:
        raise UsageError("give either --lambda0/--eps0 or --eps-star, not both")
    if args.eps_star is not None:
        s_star = log_eps_star(args.eps_star, so.sigma, args.y_star)
        eps0 = float(grid[0])
        try:
            L0 = flow_from_invariant(s_star, so.sigma, eps0)
        except InvSqError:
            L0 = complex(math.inf)
        return flow_numeric(L0, eps0, so, grid)
    if args.y_star is not None:
        raise UsageError("--y-star requires --eps-star")
    if args.lambda0 is None:
        raise UsageError("flow needs --lambda0 (with optional --eps0) or --eps-star")
    return flow_numeric(args.lambda0, args.eps0 if args.eps0 is not None else 1.0, so, grid)


def cmd_flow(args) -> int:
    tr = _trajectory(args, _eps_grid(args))
    if args.format == "json":
        _emit(_json(tr.to_record()), args.out)
    else:
        rows = [[e, _finite(L.real), _finite(L.imag)] for e, L in tr.samples]
        _emit(_csv(["epsilon", "re_Lambda", "im_Lambda"], rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# portrait


def default_seeds(sigma: complex) -> list[complex]:
    """Seeds around the fixed points: real-axis points plus a small off-axis ring."""
    scale = max(abs(sigma), 0.25)
    seeds = [complex(x * scale, 0.0) for x in (-3.0, -1.0, 0.0, 1.0, 3.0)]
    seeds += [complex(0.0, y * scale) for y in (-3.0, -1.0, 1.0, 3.0)]
    return seeds


def _parse_seeds(text: str) -> list[complex]:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    return [parse_complex(p) for p in parts]


def cmd_portrait(args) -> int:
    so = sigma_from_alpha(args.alpha)
    seeds = default_seeds(so.sigma) if args.seeds is None else _parse_seeds(args.seeds)
    if args.eps_range is None:
        window = default_window(so.sigma, 1.0, periods=args.periods)
    else:
        window = tuple(args.eps_range)
        if not 0 < window[0] < window[1]:
            raise UsageError("--eps-range needs 0 < MIN < MAX")
    grid = portrait_grid(so.sigma, window, args.samples)
    trajectories = [flow_numeric(z, window[0], so, grid) for z in seeds]
    if args.format == "json":
        recs = []
        for i, tr in enumerate(trajectories):
            rec = tr.to_record()
            rec["seed_index"] = i
            rec["arrows"] = [
                [_finite(d.real), _finite(d.imag)] for d in (flow_direction(L, so.sigma) for L in tr.Lambda)
            ]
            recs.append(rec)
        _emit(_json(recs), args.out)
    else:
        rows = []
        for i, tr in enumerate(trajectories):
            for e, L in tr.samples:
                d = flow_direction(L, so.sigma)
                rows.append([i, e, _finite(L.real), _finite(L.imag), _finite(d.real), _finite(d.imag)])
        header = ["seed_index", "epsilon", "re_Lambda", "im_Lambda", "re_dLambda", "im_dLambda"]
        _emit(_csv(header, rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# scatter


def _sweep(single, rng, name: str, log: bool = True) -> list[float]:
    if single is not None and rng is not None:
        raise UsageError(f"give --{name} or --{name}-range, not both")
    if rng is not None:
        lo, hi, n = float(rng[0]), float(rng[1]), int(rng[2])
        if n < 1 or not 0 < lo <= hi:
            raise UsageError(f"--{name}-range needs 0 < MIN <= MAX and N >= 1")
        if n == 1:
            return [lo]
        return [float(v) for v in (np.geomspace(lo, hi, n) if log else np.linspace(lo, hi, n))]
    if single is None:
        raise UsageError(f"--{name} or --{name}-range is required")
    return [float(single)]


def cmd_scatter(args) -> int:
    if in_critical_band(args.alpha):
        raise UsageError(f"alpha = {args.alpha} lies in the critical band; closed forms are singular")
    ks = _sweep(args.k, args.k_range, "k")
    stars = _sweep(args.eps_star, args.eps_star_range, "eps-star")
    records = []
    for k in ks:
        if not k > 0:
            raise UsageError("k must be positive")
        for es in stars:
            try:
                rec = scatter(args.alpha, k, es, args.y_star).to_record()
                rec["error"] = None
            except ResonanceError as exc:
                rec = {"alpha": args.alpha, "k": k, "eps_star": es, "error": str(exc)}
            records.append(rec)
    if args.format == "json":
        _emit(_json(records), args.out)
    else:
        header = ["alpha", "k", "eps_star", "re_R", "im_R", "re_T", "im_T", "flux_deficit", "error"]
        rows = [[r.get(h) for h in header] for r in records]
        _emit(_csv(header, rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    names = CHECK_NAMES if args.checks is None else tuple(n.strip() for n in args.checks.split(",") if n.strip())
    bad = [n for n in names if n not in CHECK_NAMES]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECK_NAMES)}")
    report = run_checks(names, quick=args.quick, mutate=args.mutate)
    for line in summary_lines(report):
        print(line, file=sys.stderr)
    _emit(_json(report), args.out)
    return EXIT_OK if report["passed"] else EXIT_BREACH


# ---------------------------------------------------------------------------
# wavefunction


def cmd_wavefunction(args) -> int:
    if args.monomial:
        if (args.zeta is None) == (args.alpha is None):
            raise UsageError("--monomial needs exactly one of --zeta or --alpha")
        alpha = 0.25 + args.zeta**2 if args.zeta is not None else args.alpha
        lo, hi = args.q_range if args.q_range is not None else (1e-3, 1.0)
        if not 0 < lo < hi:
            raise UsageError("--q-range needs 0 < MIN < MAX for monomials")
        Q = np.geomspace(lo, hi, args.samples)
        cp, cm = (0.0, 1.0) if args.branch == "minus" else (1.0, 0.0)
        chi = [short_range_solution(alpha, cp, cm, float(q)) for q in Q]
    else:
        if args.alpha is None or args.k is None or args.eps is None:
            raise UsageError("solved wavefunctions need --alpha, --k and --eps")
        if (args.lam is None) == (args.eps_star is None):
            raise UsageError("give exactly one of --lambda or --eps-star")
        if args.lam is not None:
            lam = args.lam
        else:
            s = sigma_from_alpha(args.alpha).sigma
            L = flow_from_invariant(log_eps_star(args.eps_star, s, args.y_star), s, args.eps)
            lam = (L + 1.0) / args.eps
        problem = RegulatedProblem(args.alpha, args.k, args.eps, lam, args.q_max)
        lo, hi = args.q_range if args.q_range is not None else (problem.eps, problem.Q_max)
        lo = max(lo, problem.eps)
        hi = min(hi, problem.Q_max)
        if not lo < hi:
            raise UsageError("--q-range does not intersect [eps, Q_max]")
        n = max(args.samples // 2, 1)
        side = np.geomspace(lo, hi, n) if args.log_grid else np.linspace(lo, hi, n)
        Q = np.concatenate([-side[::-1], side])
        chi = wavefunction_sample(problem, Q)
    if args.format == "json":
        recs = [{"Q": float(q), "re_chi": c.real, "im_chi": c.imag} for q, c in zip(Q, chi)]
        _emit(_json(recs), args.out)
    else:
        _emit(_csv(["Q", "re_chi", "im_chi"], [[q, c.real, c.imag] for q, c in zip(Q, chi)]), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="invsq", description="Delta-regulated inverse-square scattering and its RG flow.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("flow", help="sample one RG trajectory Lambda(eps)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda0", type=parse_complex, help="reduced coupling Lambda = lambda*eps - 1 at eps0")
    p.add_argument("--eps0", type=float)
    p.add_argument("--eps-star", type=float)
    p.add_argument("--y-star", type=float)
    p.add_argument("--eps-range", type=float, nargs=2, metavar=("MIN", "MAX"), default=(0.01, 100.0))
    p.add_argument("--samples", type=int, default=500)
    _common(p)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("portrait", help="phase portrait: one trajectory per seed")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--seeds", help="comma-separated complex Lambda0 values (empty for none)")
    p.add_argument("--eps-range", type=float, nargs=2, metavar=("MIN", "MAX"))
    p.add_argument("--periods", type=int, default=3, help="log-periods in the default supercritical window")
    p.add_argument("--samples", type=int, default=400)
    _common(p)
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("scatter", help="closed-form R and T")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=float)
    p.add_argument("--k-range", nargs=3, metavar=("MIN", "MAX", "N"))
    p.add_argument("--eps-star", type=float)
    p.add_argument("--eps-star-range", nargs=3, metavar=("MIN", "MAX", "N"))
    p.add_argument("--y-star", type=float, help="Im Lambda at eps_star (supercritical)")
    _common(p)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("verify", help="closed forms against the ODE oracle")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECK_NAMES)}")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--mutate", action="store_true", help="flip a sign in the closed forms")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wavefunction", help="chi(Q) samples")
    p.add_argument("--monomial", action="store_true", help="short-distance power law instead of a solved problem")
    p.add_argument("--branch", choices=("minus", "plus"), default="minus", help="Q^(1/2 -+ sigma)")
    p.add_argument("--zeta", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--lambda", dest="lam", type=parse_complex)
    p.add_argument("--eps-star", type=float)
    p.add_argument("--y-star", type=float)
    p.add_argument("--q-max", type=float)
    p.add_argument("--q-range", type=float, nargs=2, metavar=("MIN", "MAX"))
    p.add_argument("--log-grid", action="store_true")
    p.add_argument("--samples", type=int, default=400)
    _common(p)
    p.set_defaults(func=cmd_wavefunction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit 1
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, InvSqError) as exc:
        print(f"invsq {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

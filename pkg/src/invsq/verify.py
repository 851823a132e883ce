"""
Cross-checks between the closed forms, the RG flow and the ODE oracle.

Each check returns a ``CheckResult`` holding per-case records and a pass
flag. ``run_checks`` assembles them into a JSON-ready report.

Check families
--------------
closed-form
    Oracle R, T on the trajectory through eps_star against the RG-invariant
    closed forms in X_*.
rg-invariance
    R recovered by exact inversion of the coupling relation at eps and
    10 eps on one trajectory.
mobius
    Oracle R, T against exact inversion of the coupling relation at the
    same (eps, lambda); differences come only from the small-k eps
    truncation of the Hankel functions. Errors are measured against the
    larger amplitude, since a nearly vanishing R or T has no meaningful
    relative error.
flux
    Oracle flux balance on sink-side supercritical trajectories.
unitarity
    |R|^2 + |T|^2 = 1 for the subcritical closed forms at real X_*.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import sigma_from_alpha
from .oracle import RegulatedProblem, solve
from .rgflow import flow_from_invariant
from .scattering import RT_from_coupling, closed_form_RT, log_eps_star, x_factor, x_star

ALPHA_GRID = (0.1, 0.2, 0.24, 0.3, 0.5, 1.25, 2.0)
KEPS_GRID = (1e-4, 1e-3)
EPS_STAR_GRID = (0.3, 0.7, 1.5, 3.0, 6.0)
ZETA_GRID = (0.5, 1.0, 2.0)
CLOSED_FORM_TOL = {1e-3: 1e-4, 1e-4: 1e-6}
FLUX_BALANCE_TOL = 1e-6
UNITARITY_TOL = 1e-10

CHECK_NAMES = ("closed-form", "rg-invariance", "mobius", "flux", "unitarity")


@dataclass
class CheckResult:
    name: str
    tolerance: str
    cases: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cases)

    @property
    def worst(self) -> float:
        return max((c["ratio"] for c in self.cases), default=0.0)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "worst_error_over_tolerance": self.worst,
            "n_cases": len(self.cases),
            "n_failed": sum(not c["passed"] for c in self.cases),
            "cases": self.cases,
        }


def _case(inputs: dict, error: float, tol: float, **extra) -> dict:
    return {**inputs, **extra, "error": error, "tolerance": tol, "ratio": error / tol, "passed": bool(error < tol)}


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _c(z: complex) -> list[float]:
    return [z.real, z.imag]


def coupling_on_trajectory(alpha: float, eps: float, eps_star: float, y_star: float | None = None) -> complex:
    """lambda(eps) on the RG trajectory labelled by (eps_star, y_star)."""
    s = sigma_from_alpha(alpha).sigma
    Lambda = flow_from_invariant(log_eps_star(eps_star, s, y_star), s, eps)
    return (Lambda + 1.0) / eps


def _sign(mutate: bool) -> float:
    # mutation mode flips the sign of every closed-form amplitude
    return -1.0 if mutate else 1.0


def check_closed_form(
    alphas=ALPHA_GRID, kepss=KEPS_GRID, eps_stars=EPS_STAR_GRID, *, k: float = 1.0, mutate: bool = False
) -> CheckResult:
    res = CheckResult("closed-form", "relative 1e-4 at k eps = 1e-3, 1e-6 at 1e-4")
    for alpha in alphas:
        s = sigma_from_alpha(alpha, closed_form=True).sigma
        for keps in kepss:
            eps = keps / k
            tol = CLOSED_FORM_TOL.get(keps, 100.0 * keps * keps)
            for es in eps_stars:
                Rc, Tc = closed_form_RT(x_star(k, es, s), s)
                Rc, Tc = _sign(mutate) * Rc, _sign(mutate) * Tc
                lam = coupling_on_trajectory(alpha, eps, es)
                sol = solve(RegulatedProblem(alpha, k, eps, lam))
                err = max(_rel(sol.R, Rc), _rel(sol.T, Tc))
                res.cases.append(
                    _case(
                        {"alpha": alpha, "k": k, "eps": eps, "eps_star": es},
                        err,
                        tol,
                        R_oracle=_c(sol.R),
                        R_closed=_c(Rc),
                        T_oracle=_c(sol.T),
                        T_closed=_c(Tc),
                    )
                )
    return res


def check_rg_invariance(
    alphas=ALPHA_GRID, eps_stars=EPS_STAR_GRID, *, k: float = 1.0, eps: float = 1e-4, mutate: bool = False
) -> CheckResult:
    eps_max = 10.0 * eps
    tol = 10.0 * (k * eps_max) ** 2
    res = CheckResult("rg-invariance", "relative 10 (k eps_max)^2")
    for alpha in alphas:
        s = sigma_from_alpha(alpha, closed_form=True).sigma
        for es in eps_stars:
            R1, _ = RT_from_coupling(coupling_on_trajectory(alpha, eps, es), s, k, eps)
            R2, _ = RT_from_coupling(coupling_on_trajectory(alpha, eps_max, es), s, k, eps_max)
            R2 = _sign(mutate) * R2
            res.cases.append(
                _case(
                    {"alpha": alpha, "k": k, "eps": eps, "eps_max": eps_max, "eps_star": es},
                    _rel(R2, R1),
                    tol,
                    R_eps=_c(R1),
                    R_eps_max=_c(R2),
                )
            )
    return res


def mobius_tolerance(keps: float, sigma: complex, X: complex) -> float:
    """10 (k eps)^2 / (min(1,|sigma|) min(1,|X|)): the neglected O(z^2) terms relative to O(X)."""
    return 10.0 * keps**2 / (min(1.0, abs(sigma)) * min(1.0, abs(X)))


def check_mobius(
    alphas=ALPHA_GRID, kepss=KEPS_GRID, eps_stars=EPS_STAR_GRID, *, k: float = 1.0, mutate: bool = False
) -> CheckResult:
    res = CheckResult("mobius", "10 (k eps)^2 / (min(1,|sigma|) min(1,|X|)) relative to max(|R|,|T|)")
    for alpha in alphas:
        s = sigma_from_alpha(alpha, closed_form=True).sigma
        for keps in kepss:
            eps = keps / k
            tol = mobius_tolerance(keps, s, x_factor(k, eps, s))
            for es in eps_stars:
                lam = coupling_on_trajectory(alpha, eps, es)
                Rm, Tm = RT_from_coupling(lam, s, k, eps)
                Rm, Tm = _sign(mutate) * Rm, _sign(mutate) * Tm
                sol = solve(RegulatedProblem(alpha, k, eps, lam))
                scale = max(abs(Rm), abs(Tm))
                err = max(abs(sol.R - Rm), abs(sol.T - Tm)) / scale
                res.cases.append(
                    _case(
                        {"alpha": alpha, "k": k, "eps": eps, "eps_star": es},
                        err,
                        tol,
                        R_oracle=_c(sol.R),
                        R_mobius=_c(Rm),
                        T_oracle=_c(sol.T),
                        T_mobius=_c(Tm),
                    )
                )
    return res


def sink_trajectories(zeta: float) -> list[tuple[float, float | None, str]]:
    """(eps_star, y_star, label) of sink-side trajectories; y_star None marks the fixed point."""
    return [
        (1.0, -3.0 * zeta, "y*=-3zeta"),
        (1.0, -6.0 * zeta, "y*=-6zeta"),
        (0.4, -2.5 * zeta, "y*=-2.5zeta"),
        (1.0, None, "fixed point -2i zeta"),
    ]


def check_flux(zetas=ZETA_GRID, kepss=(1e-3,), *, k: float = 1.0, mutate: bool = False) -> CheckResult:
    res = CheckResult("flux", "deficit > 0 and |deficit - normalized imbalance| < 1e-6")
    for zeta in zetas:
        alpha = 0.25 + zeta * zeta
        for keps in kepss:
            eps = keps / k
            for es, ys, label in sink_trajectories(zeta):
                if ys is None:
                    lam = (1.0 - 2j * zeta) / eps
                else:
                    lam = coupling_on_trajectory(alpha, eps, es, ys)
                sol = solve(RegulatedProblem(alpha, k, eps, lam))
                deficit = sol.flux_deficit
                err = abs(deficit - sol.normalized_imbalance)
                case = _case(
                    {"alpha": alpha, "zeta": zeta, "k": k, "eps": eps, "trajectory": label},
                    err,
                    FLUX_BALANCE_TOL,
                    flux_deficit=deficit,
                    normalized_imbalance=sol.normalized_imbalance,
                    classification=sol.flux.classification,
                )
                if not (deficit > 0 and sol.flux.classification == "sink"):
                    case["passed"] = False
                res.cases.append(case)
    return res


def check_unitarity(n: int = 50, *, mutate: bool = False) -> CheckResult:
    res = CheckResult("unitarity", "| |R|^2 + |T|^2 - 1 | < 1e-10")
    sigmas = np.linspace(0.0, 0.5, n + 2)[1:-1]
    xs = np.logspace(-3, 3, n)
    worst, worst_at = 0.0, None
    for s in sigmas:
        for X in xs:
            R, T = closed_form_RT(complex(X), complex(s))
            if mutate:
                T = 2.0 * T
            err = abs(abs(R) ** 2 + abs(T) ** 2 - 1.0)
            if err >= worst:
                worst, worst_at = err, (float(s), float(X))
    res.cases.append(
        _case({"grid": f"{n}x{n}", "worst_sigma": worst_at[0], "worst_X_star": worst_at[1]}, worst, UNITARITY_TOL)
    )
    return res


def run_checks(names=CHECK_NAMES, *, quick: bool = False, mutate: bool = False) -> dict:
    """Run the named check families and return the report dict."""
    unknown = set(names) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if quick:
        alphas, eps_stars, kepss = (0.1, 0.3, 1.25), (0.7, 3.0), (1e-3,)
    else:
        alphas, eps_stars, kepss = ALPHA_GRID, EPS_STAR_GRID, KEPS_GRID
    runners = {
        "closed-form": lambda: check_closed_form(alphas, kepss, eps_stars, mutate=mutate),
        "rg-invariance": lambda: check_rg_invariance(alphas, eps_stars, mutate=mutate),
        "mobius": lambda: check_mobius(alphas, kepss, eps_stars, mutate=mutate),
        "flux": lambda: check_flux(ZETA_GRID[:1] if quick else ZETA_GRID, mutate=mutate),
        "unitarity": lambda: check_unitarity(10 if quick else 50, mutate=mutate),
    }
    results = [runners[n]() for n in names]
    return {
        "passed": all(r.passed for r in results),
        "quick": quick,
        "mutated": mutate,
        "checks": [r.to_record() for r in results],
    }


def summary_lines(report: dict) -> list[str]:
    out = []
    for chk in report["checks"]:
        flag = "PASS" if chk["passed"] else "FAIL"
        out.append(
            f"{flag} {chk['name']}: {chk['n_cases'] - chk['n_failed']}/{chk['n_cases']} cases, "
            f"worst error/tolerance {chk['worst_error_over_tolerance']:.3g}"
        )
    return out


__all__ = [
    "ALPHA_GRID",
    "CHECK_NAMES",
    "CheckResult",
    "check_closed_form",
    "check_flux",
    "check_mobius",
    "check_rg_invariance",
    "check_unitarity",
    "coupling_on_trajectory",
    "mobius_tolerance",
    "run_checks",
    "summary_lines",
    "sink_trajectories",
]

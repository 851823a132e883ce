"""
Renormalisation-group flow of the reduced coupling Lambda = lambda*eps - 1.

In s = ln(eps) the flow is autonomous,

    dLambda/ds = 2 sigma^2 (1 - (Lambda / 2 sigma)^2) = 2 sigma^2 - Lambda^2 / 2,

with fixed points +-2 sigma: real for alpha < 1/4, merged at 0 for
alpha = 1/4, and +-2 i zeta above. The equation has real coefficients
(sigma^2 = 1/4 - alpha), so complex conjugation maps trajectories to
trajectories.

Every non-fixed trajectory can be written

    Lambda / 2 sigma = coth(sigma (ln eps - s_star))

for a complex constant ``s_star`` (the RG invariant). Its real part is
ln eps_star; on the supercritical branch it is defined modulo the log-period
pi/zeta and eps_star is the crossing of Re Lambda = 0 with |Im Lambda| > 2 zeta.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import ConvergenceError, PoleError, WindowError
from .model import SigmaOrder, alpha_from_sigma, as_sigma, regime_of, sigma_from_alpha
from .special import gamma_ratio

POLE_TOL = 1e-12
FIXED_POINT_TOL = 1e-12


def _sigma_order(sigma) -> SigmaOrder:
    if isinstance(sigma, SigmaOrder):
        return sigma
    s = as_sigma(sigma)
    alpha = alpha_from_sigma(s)
    if s.imag != 0.0:
        return SigmaOrder(alpha, s, -s.imag)
    return SigmaOrder(alpha, s, None)


def flow_rhs(Lambda: complex, sigma) -> complex:
    """dLambda/d(ln eps)."""
    s = as_sigma(sigma)
    return 2.0 * s * s - 0.5 * Lambda * Lambda


# ---------------------------------------------------------------------------
# analytic flow


def _tanh_step(s: complex, dlog: float) -> complex:
    if s.imag == 0.0:
        return complex(math.tanh(s.real * dlog))
    if s.real == 0.0:
        return 1j * math.tan(s.imag * dlog)
    return cmath.tanh(s * dlog)


def _projective(Lambda0: complex, s: complex, dlog: float) -> tuple[complex, complex]:
    """(numerator, denominator) with Lambda = num / den; den = 0 at a pole.

    Lambda0 may be infinite (Lambda0 = inf means the Dirichlet-like point).
    """
    if s == 0:
        # critical flow: 1/Lambda grows linearly in ln eps
        if cmath.isinf(Lambda0):
            return complex(2.0), complex(dlog)
        return complex(Lambda0), 1.0 + 0.5 * Lambda0 * dlog
    t = _tanh_step(s, dlog)
    two_s = 2.0 * s
    if cmath.isinf(Lambda0):
        return two_s, t
    y0 = Lambda0 / two_s
    return two_s * (y0 + t), 1.0 + y0 * t


def _pole_log(Lambda0: complex, s: complex) -> complex:
    if s == 0:
        return -2.0 / Lambda0
    return cmath.atanh(-2.0 * s / Lambda0) / s


def flow_analytic(Lambda0: complex, eps0: float, sigma, eps: float) -> complex:
    """Closed-form solution of the flow through (eps0, Lambda0).

    Lambda/2s = (Lambda0/2s + tanh(s ln(eps/eps0))) / (1 + (Lambda0/2s) tanh(s ln(eps/eps0))).

    Raises
    ------
    PoleError
        When the denominator is below 1e-12; ``log_eps_pole`` carries the
        pole position in ln(eps).
    """
    if not (eps0 > 0 and eps > 0):
        raise ValueError("scales must be positive")
    s = as_sigma(sigma)
    Lambda0 = complex(Lambda0)
    dlog = math.log(eps / eps0)
    if dlog == 0.0:
        return Lambda0
    num, den = _projective(Lambda0, s, dlog)
    if abs(den) < POLE_TOL:
        pole = None if cmath.isinf(Lambda0) else math.log(eps0) + _pole_log(Lambda0, s)
        raise PoleError(f"flow passes through Lambda = infinity near ln eps = {pole}", pole)
    value = num / den
    if Lambda0.imag == 0.0 and s.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def flow_bounded(Lambda0: complex, eps0: float, sigma, eps: float) -> complex:
    """Lambda / (1 + |Lambda|^2): finite everywhere, zero at poles and at Lambda = 0."""
    s = as_sigma(sigma)
    num, den = _projective(complex(Lambda0), s, math.log(eps / eps0))
    norm = abs(num) ** 2 + abs(den) ** 2
    return num * den.conjugate() / norm


def rg_invariant(Lambda0: complex, eps0: float, sigma) -> complex | None:
    """Complex s_star with Lambda/2s = coth(s (ln eps - s_star)); None at a fixed point."""
    s = as_sigma(sigma)
    Lambda0 = complex(Lambda0)
    s0 = math.log(eps0)
    if cmath.isinf(Lambda0):
        return complex(s0)
    if s == 0:
        if Lambda0 == 0:
            return None
        return s0 - 2.0 / Lambda0
    y0 = Lambda0 / (2.0 * s)
    if abs(y0 - 1.0) < FIXED_POINT_TOL or abs(y0 + 1.0) < FIXED_POINT_TOL:
        return None
    # arccoth(y) = atanh(1/y); y0 = 0 gives i pi / 2
    acoth = cmath.atanh(1.0 / y0) if y0 != 0 else 0.5j * math.pi
    return s0 - acoth / s


def canonical_invariant(log_eps_star: complex, sigma) -> complex:
    """Reduce s_star to its canonical representative.

    Subcritical: Im part taken modulo pi/sigma into (-pi/2s, pi/2s].
    Supercritical: Re part unchanged here (the period is in Re); callers pick
    the representative within their window.
    """
    s = as_sigma(sigma)
    if s.imag == 0.0 and s.real > 0:
        period = math.pi / s.real
        im = log_eps_star.imag
        im = im - period * math.floor(im / period + 0.5)
        return complex(log_eps_star.real, im)
    return complex(log_eps_star)


def flow_from_invariant(log_eps_star: complex, sigma, eps: float) -> complex:
    """Lambda(eps) = 2 sigma coth(sigma (ln eps - s_star))."""
    s = as_sigma(sigma)
    u = math.log(eps) - complex(log_eps_star)
    if s == 0:
        if abs(u) < POLE_TOL:
            raise PoleError("pole of the critical flow", complex(log_eps_star))
        return 2.0 / u
    th = cmath.tanh(s * u)
    if abs(th) < POLE_TOL:
        raise PoleError("trajectory passes through Lambda = infinity", complex(log_eps_star))
    return 2.0 * s / th


def invariant_from_crossing(eps_c: float, y: float, sigma) -> complex:
    """s_star of the supercritical trajectory with Lambda(eps_c) = i y.

    ``y = inf`` selects the real (hermitian) trajectory with its pole at eps_c.
    """
    s = as_sigma(sigma)
    if s.imag == 0.0:
        raise ValueError("crossing parametrisation is for the supercritical branch")
    if math.isinf(y):
        return complex(math.log(eps_c))
    inv = rg_invariant(1j * y, eps_c, s)
    if inv is None:
        raise ValueError("a fixed point has no RG invariant")
    return inv


def x_star(k: float, sigma, log_eps_star: complex) -> complex:
    """X_* = Gamma(1-s)/Gamma(1+s) (k eps_*/2)^(2s) for complex ln eps_* = s_star."""
    s = as_sigma(sigma)
    return gamma_ratio(s) * cmath.exp(2.0 * s * (math.log(k / 2.0) + complex(log_eps_star)))


# ---------------------------------------------------------------------------
# fixed points


@dataclass(frozen=True)
class FixedPointPair:
    lambda_minus: complex
    lambda_plus: complex
    regime: Literal["real-pair", "merged", "conjugate-pair"]
    stability: dict = field(default_factory=dict)


def fixed_points(sigma) -> FixedPointPair:
    """Zeros +-2 sigma of the flow with their classification."""
    so = _sigma_order(sigma)
    s = so.sigma
    if s == 0:
        return FixedPointPair(0j, 0j, "merged", {"plus": "marginal", "minus": "marginal"})
    if s.imag == 0.0:
        lp = complex(2.0 * abs(s.real))
        return FixedPointPair(-lp, lp, "real-pair", {"plus": "IR-stable", "minus": "UV-unstable"})
    # sigma = -i zeta: +2 sigma = -2 i zeta is the sink (Im lambda < 0)
    lp = 2.0 * s
    return FixedPointPair(
        -lp, lp, "conjugate-pair", {"plus": "center (sink)", "minus": "center (source)"}
    )


def merger_scan(alpha_grid: Iterable[float]) -> list[tuple[float, complex]]:
    """Fixed-point separation 4 sigma across a grid of potential strengths."""
    out = []
    for a in alpha_grid:
        s = sigma_from_alpha(a).sigma
        out.append((float(a), 4.0 * s))
    return out


# ---------------------------------------------------------------------------
# numerical flow


@dataclass
class FlowTrajectory:
    """Sampled RG trajectory.

    ``samples`` holds (eps, Lambda) pairs in grid order; Lambda is complex
    infinity where a sample sits exactly on a pole. ``poles`` lists the
    scales at which the coupling passed through infinity.
    """

    sigma: SigmaOrder
    Lambda0: complex
    eps0: float
    samples: list[tuple[float, complex]]
    eps_star: float | None = None
    y_star: float | None = None
    log_period: float | None = None
    log_eps_star: complex | None = None
    poles: list[float] = field(default_factory=list)

    @property
    def regime(self) -> str:
        return self.sigma.regime

    @property
    def eps(self) -> np.ndarray:
        return np.array([e for e, _ in self.samples])

    @property
    def Lambda(self) -> np.ndarray:
        return np.array([L for _, L in self.samples], dtype=complex)

    def branches(self) -> list[list[tuple[float, complex]]]:
        """Samples split wherever the flow crossed a pole."""
        if not self.poles:
            return [list(self.samples)]
        out, cur = [], []
        poles = sorted(self.poles)
        for e, L in self.samples:
            if cur and any(min(cur[-1][0], e) < p <= max(cur[-1][0], e) for p in poles):
                out.append(cur)
                cur = []
            cur.append((e, L))
        if cur:
            out.append(cur)
        return out

    def to_record(self) -> dict:
        def c(z):
            return None if z is None else [z.real, z.imag]

        return {
            "sigma": self.sigma.to_record(),
            "Lambda0": None if cmath.isinf(complex(self.Lambda0)) else c(complex(self.Lambda0)),
            "eps0": self.eps0,
            "samples": [[e, _finite_or_none(L.real), _finite_or_none(L.imag)] for e, L in self.samples],
            "eps_star": self.eps_star,
            "y_star": _finite_or_none(self.y_star),
            "log_period": self.log_period,
            "log_eps_star": c(self.log_eps_star),
            "poles": list(self.poles),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "FlowTrajectory":
        def c(v):
            return None if v is None else complex(v[0], v[1])

        samples = [
            (float(e), complex(math.inf, 0) if re is None else complex(re, im))
            for e, re, im in rec["samples"]
        ]
        y = rec.get("y_star")
        ystar = None if y is None else float(y)
        if ystar is None and rec.get("eps_star") is not None and rec["sigma"]["zeta"] is not None:
            ystar = math.inf
        return cls(
            sigma=SigmaOrder.from_record(rec["sigma"]),
            Lambda0=complex(math.inf) if rec["Lambda0"] is None else c(rec["Lambda0"]),
            eps0=float(rec["eps0"]),
            samples=samples,
            eps_star=rec.get("eps_star"),
            y_star=ystar,
            log_period=rec.get("log_period"),
            log_eps_star=c(rec.get("log_eps_star")),
            poles=[float(p) for p in rec.get("poles", [])],
        )


def _finite_or_none(x):
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def _chart_bound(s: complex) -> float:
    return 4.0 * max(1.0, 2.0 * abs(s))


def _integrate_one_way(Lambda0: complex, s0: float, targets: np.ndarray, s2: complex, rtol: float):
    """Integrate from s0 through sorted targets (all on one side of s0).

    Two charts of the Riemann sphere: Lambda while |Lambda| <= 2B, mu = 1/Lambda
    beyond, with hysteresis. Returns (values, pole positions).
    """
    values = np.empty(len(targets), dtype=complex)
    poles: list[float] = []
    if len(targets) == 0:
        return values, poles
    B = _chart_bound(cmath.sqrt(s2))
    if cmath.isinf(Lambda0):
        chart, y = "mu", 0j
    elif abs(Lambda0) <= B:
        chart, y = "L", complex(Lambda0)
    else:
        chart, y = "mu", 1.0 / complex(Lambda0)

    def rhs_L(t, v):
        return np.array([2.0 * s2 - 0.5 * v[0] * v[0]])

    def rhs_mu(t, v):
        return np.array([0.5 - 2.0 * s2 * v[0] * v[0]])

    def leave_L(t, v):
        return abs(v[0]) - 2.0 * B

    def leave_mu(t, v):
        return abs(v[0]) - 2.0 / B

    def cross_mu(t, v):
        return v[0].real

    leave_L.terminal = True
    leave_L.direction = 1
    leave_mu.terminal = True
    leave_mu.direction = 1
    cross_mu.terminal = False

    t = s0
    idx = 0
    t_end = float(targets[-1])
    guard = 0
    while idx < len(targets):
        guard += 1
        if guard > 100000:
            raise ConvergenceError("too many chart switches")
        remaining = targets[idx:]
        if chart == "L":
            rhs, events = rhs_L, [leave_L]
        else:
            rhs, events = rhs_mu, [leave_mu, cross_mu]
        # solve_ivp cannot evaluate at t0 itself; handle coincident targets directly
        while idx < len(targets) and targets[idx] == t:
            values[idx] = y if chart == "L" else (complex(math.inf) if y == 0 else 1.0 / y)
            idx += 1
        if idx >= len(targets):
            break
        remaining = targets[idx:]
        sol = solve_ivp(
            rhs,
            (t, t_end),
            np.array([y], dtype=complex),
            method="DOP853",
            t_eval=remaining,
            events=events,
            rtol=rtol,
            atol=rtol * 1e-3,
        )
        if sol.status == -1:
            raise ConvergenceError(f"flow integration failed: {sol.message}")
        n = len(sol.t)
        vals = sol.y[0] if n else np.empty(0, dtype=complex)
        if chart == "L":
            values[idx:idx + n] = vals
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                values[idx:idx + n] = np.where(vals == 0, complex(math.inf), 1.0 / vals)
            for te, ye in zip(sol.t_events[1], sol.y_events[1]):
                if abs(ye[0]) < 1e-6 / B:
                    poles.append(float(te))
        idx += n
        if sol.status == 1:
            t = float(sol.t_events[0][0])
            ye = complex(sol.y_events[0][0][0])
            if chart == "L":
                chart, y = "mu", 1.0 / ye
            else:
                chart, y = "L", 1.0 / ye
        else:
            break
    return values, poles


def flow_numeric(
    Lambda0: complex,
    eps0: float,
    sigma,
    eps_grid: Sequence[float],
    *,
    rtol: float = 1e-12,
) -> FlowTrajectory:
    """Integrate the flow in s = ln eps and sample it on ``eps_grid``.

    The grid must be positive and strictly monotone; ``eps0`` may lie
    anywhere relative to it. Passages through Lambda = infinity are followed
    in the inverted chart and reported in ``poles`` (as eps values).
    """
    so = _sigma_order(sigma)
    s = so.sigma
    grid = np.asarray(eps_grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0 or np.any(grid <= 0):
        raise ValueError("eps_grid must be a non-empty 1-d array of positive scales")
    if len(grid) > 1:
        d = np.diff(grid)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise ValueError("eps_grid must be strictly monotone")
    logs = np.log(grid)
    s0 = math.log(eps0)
    s2 = s * s
    Lambda0 = complex(Lambda0)

    out = np.empty(len(grid), dtype=complex)
    fwd = logs >= s0
    bwd = ~fwd
    poles: list[float] = []
    if np.any(fwd):
        order = np.argsort(logs[fwd])
        vals, p = _integrate_one_way(Lambda0, s0, logs[fwd][order], s2, rtol)
        tmp = np.empty_like(vals)
        tmp[order] = vals
        out[fwd] = tmp
        poles += p
    if np.any(bwd):
        order = np.argsort(-logs[bwd])
        vals, p = _integrate_one_way(Lambda0, s0, logs[bwd][order], s2, rtol)
        tmp = np.empty_like(vals)
        tmp[order] = vals
        out[bwd] = tmp
        poles += p
    if Lambda0.imag == 0.0 and s.imag == 0.0:
        out = np.where(np.isfinite(out), out.real + 0j, out)

    traj = FlowTrajectory(
        sigma=so,
        Lambda0=Lambda0,
        eps0=float(eps0),
        samples=[(float(e), complex(L)) for e, L in zip(grid, out)],
        poles=sorted(math.exp(p) for p in poles),
    )
    _attach_invariants(traj, float(grid.min()))
    return traj


def _attach_invariants(traj: FlowTrajectory, eps_min: float) -> None:
    s = traj.sigma.sigma
    inv = rg_invariant(traj.Lambda0, traj.eps0, s)
    if inv is None:
        return
    if s.imag == 0.0:
        traj.log_eps_star = canonical_invariant(inv, s)
        return
    zeta = -s.imag
    period = math.pi / zeta
    traj.log_period = period
    # representative: first outer crossing at or after the window start
    base = math.log(eps_min)
    re = inv.real + period * math.ceil((base - inv.real) / period - 1e-12)
    traj.log_eps_star = complex(re, inv.imag)
    traj.eps_star = math.exp(re)
    a = zeta * inv.imag
    traj.y_star = math.inf if a == 0 else 2.0 * zeta / math.tanh(a)


def extract_eps_star(trajectory: FlowTrajectory, *, check: bool = True) -> tuple[float, float]:
    """Locate eps_star on a supercritical trajectory from its samples.

    Scans the samples for sign changes of Re Lambda, refines each bracket by
    root-finding on the analytic map through the neighbouring sample, and
    returns the smallest crossing with |Im Lambda| >= 2 zeta together with
    y_star = Im Lambda(eps_star). A trajectory with real Lambda has its outer
    crossing at the pole; y_star is then +-inf (sign of the approach is not
    meaningful, +inf is returned).

    Raises
    ------
    WindowError
        At a fixed point, or when no outer crossing lies in the window.
    """
    s = trajectory.sigma.sigma
    if s.imag == 0.0:
        raise ValueError("eps_star extraction applies to the supercritical branch")
    zeta = -s.imag
    if rg_invariant(trajectory.Lambda0, trajectory.eps0, s) is None:
        raise WindowError("a fixed-point trajectory carries no eps_star")
    samples = sorted(trajectory.samples, key=lambda p: p[0])
    logs = [math.log(e) for e, _ in samples]

    def bounded(L):
        if cmath.isinf(L):
            return 0j
        return L / (1.0 + abs(L) ** 2)

    w = [bounded(L).real for _, L in samples]
    crossings: list[tuple[float, complex]] = []
    for i in range(len(samples) - 1):
        if w[i] == 0.0:
            crossings.append((logs[i], samples[i][1]))
            continue
        if w[i] * w[i + 1] < 0:
            L_i = samples[i][1]
            e_i = samples[i][0]

            def f(t, L_i=L_i, e_i=e_i):
                return flow_bounded(L_i, e_i, s, math.exp(t)).real

            root = brentq(f, logs[i], logs[i + 1], xtol=1e-14, rtol=4 * np.finfo(float).eps)
            num, den = _projective(L_i, s, root - math.log(e_i))
            L_root = complex(math.inf) if abs(den) < 1e-300 else num / den
            crossings.append((root, L_root))
    if w and w[-1] == 0.0:
        crossings.append((logs[-1], samples[-1][1]))

    outer = []
    for t, L in crossings:
        if cmath.isinf(L) or abs(L) > 1e12:
            outer.append((t, math.inf))
        elif abs(L.imag) >= 2.0 * zeta:
            outer.append((t, L.imag))
    if not outer:
        span = logs[-1] - logs[0]
        raise WindowError(
            f"no Re(Lambda) = 0 crossing with |Im Lambda| >= 2 zeta in the window "
            f"(span {span:.3g} in ln eps, log-period {math.pi / zeta:.3g})"
        )
    t_star, y_star = min(outer, key=lambda p: p[0])
    if check:
        inv = rg_invariant(trajectory.Lambda0, trajectory.eps0, s)
        period = math.pi / zeta
        d = (t_star - inv.real) / period
        if abs(d - round(d)) * period > 1e-6:
            raise ConvergenceError(
                f"sampled crossing {t_star} disagrees with the analytic invariant {inv.real}"
            )
    return math.exp(t_star), y_star


def small_eps_form(eps: float, eps_star: float, sigma) -> complex:
    """Leading small-eps behaviour Lambda/2s ~ -1 - 2 (eps/eps_*)^(2s), returned as Lambda."""
    s = as_sigma(sigma)
    return 2.0 * s * (-1.0 - 2.0 * cmath.exp(2.0 * s * math.log(eps / eps_star)))


# ---------------------------------------------------------------------------
# phase portraits


def default_window(sigma, eps0: float = 1.0, periods: int = 3) -> tuple[float, float]:
    """Window long enough for subcritical flows to settle or for several limit cycles."""
    s = as_sigma(sigma)
    if s.imag != 0.0:
        period = math.pi / abs(s.imag)
        return eps0, eps0 * math.exp(periods * period)
    if s == 0:
        return eps0, eps0 * 1e6
    # tanh(s L) within ~1e-7 of 1 at the upper end
    return eps0 * math.exp(-2.0 / s.real), eps0 * math.exp(9.0 / s.real)


def portrait_grid(sigma, window: tuple[float, float], samples: int) -> np.ndarray:
    """Log-uniform grid; on the supercritical branch aligned to whole log-periods."""
    s = as_sigma(sigma)
    lo, hi = math.log(window[0]), math.log(window[1])
    if s.imag != 0.0:
        period = math.pi / abs(s.imag)
        n_per = max(8, int(round(samples * period / max(hi - lo, 1e-300))))
        n_periods = max(1, int(math.floor((hi - lo) / period + 1e-9)))
        n = n_per * n_periods + 1
        return np.exp(lo + period * np.arange(n) / n_per)
    return np.geomspace(window[0], window[1], samples)


def portrait_sample(
    sigma,
    seed_grid: Sequence[complex],
    window: tuple[float, float] | None = None,
    *,
    eps0: float | None = None,
    samples: int = 400,
) -> list[FlowTrajectory]:
    """One trajectory per seed Lambda0 placed at eps0 (the window start by default)."""
    s = as_sigma(sigma)
    for z in seed_grid:
        if not cmath.isfinite(complex(z)):
            raise ValueError(f"seed {z} is not finite")
    if window is None:
        window = default_window(s, eps0 or 1.0)
    if eps0 is None:
        eps0 = window[0]
    grid = portrait_grid(s, window, samples)
    return [flow_numeric(complex(z), eps0, s, grid) for z in seed_grid]


def cycle_closure_error(trajectory: FlowTrajectory) -> float:
    """max |Lambda(s + P) - Lambda(s)| over finite samples one log-period apart.

    Requires a grid from ``portrait_grid`` (whole samples per period).
    """
    if trajectory.log_period is None:
        raise ValueError("closure is defined for supercritical trajectories off the fixed points")
    logs = np.log(trajectory.eps)
    step = logs[1] - logs[0]
    n_per = int(round(trajectory.log_period / step))
    if n_per < 1 or len(logs) <= n_per or abs(n_per * step - trajectory.log_period) > 1e-9:
        raise WindowError("grid does not resolve whole log-periods")
    L = trajectory.Lambda
    a, b = L[:-n_per], L[n_per:]
    ok = np.isfinite(a) & np.isfinite(b)
    if not np.any(ok):
        raise WindowError("no finite sample pairs")
    scale = np.maximum(1.0, np.abs(a[ok]))
    return float(np.max(np.abs(a[ok] - b[ok]) / scale))


def flow_direction(Lambda: complex, sigma) -> complex:
    """Arrow direction dLambda/d(ln eps) for plotting."""
    if cmath.isinf(Lambda):
        return complex(math.nan, math.nan)
    return flow_rhs(Lambda, sigma)


__all__ = [
    "FixedPointPair",
    "FlowTrajectory",
    "canonical_invariant",
    "cycle_closure_error",
    "default_window",
    "extract_eps_star",
    "fixed_points",
    "flow_analytic",
    "flow_bounded",
    "flow_direction",
    "flow_from_invariant",
    "flow_numeric",
    "flow_rhs",
    "invariant_from_crossing",
    "merger_scan",
    "portrait_grid",
    "portrait_sample",
    "regime_of",
    "rg_invariant",
    "small_eps_form",
    "x_star",
]

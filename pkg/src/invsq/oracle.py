"""
Direct numerical solution of the regulated scattering problem.

The region |Q| < eps is excised. On each half-line the equation
-chi'' - (alpha/x^2) chi = k^2 chi is integrated in t = ln x for
w = x^(-1/2) chi, which obeys the real equation w'' = (sigma^2 - k^2 x^2) w.
Two real solutions started at x = eps are matched at Q_max onto
sqrt(kx) H1(kx) and sqrt(kx) H2(kx) using a multi-term large-argument
expansion coded here, so the oracle shares no evaluation path with
``invsq.special``. At the origin the two sides are joined by continuity of
chi and the derivative jump lambda.

Nothing in this module uses the small-argument closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigError, MatchingError, SolverInconsistencyError
from .model import sigma_from_alpha

# Normalisation conventions, shared with the closed forms:
#   right half-line  chi = sqrt(kx) (H2 + R H1)        (unit incoming H2)
#   left half-line   chi(-x) = LEFT_PREFACTOR(sigma) T sqrt(kx) H1(kx)
# so that R + i T exp(i pi sigma) = -H2(k eps)/H1(k eps).


def LEFT_PREFACTOR(sigma: complex) -> complex:
    return -1j * cmath.exp(1j * math.pi * sigma)


MAX_KEPS = 1e-2
MAX_CONDITION = 1e10
FLUX_TOL = 1e-8
UNITARY_TOL = 1e-12


def default_q_max(alpha: float, k: float) -> float:
    s = sigma_from_alpha(alpha).sigma
    return 60.0 * (1.0 + abs(s) ** 2) / k


@dataclass(frozen=True)
class RegulatedProblem:
    """Inputs of one regulated solve; ``lam = inf`` imposes chi(+-eps) = 0."""

    alpha: float
    k: float
    eps: float
    lam: complex
    Q_max: float | None = None

    def __post_init__(self):
        if not (self.k > 0 and self.eps > 0):
            raise ConfigError("k and eps must be positive")
        if self.k * self.eps > MAX_KEPS:
            raise ConfigError(f"k*eps = {self.k * self.eps:.3g} exceeds {MAX_KEPS}")
        if self.Q_max is None:
            object.__setattr__(self, "Q_max", default_q_max(self.alpha, self.k))
        s = self.sigma
        if self.k * self.Q_max < 30.0 * (1.0 + abs(s) ** 2):
            raise ConfigError("k*Q_max is too small for asymptotic matching")
        if not self.eps < self.Q_max:
            raise ConfigError("need eps < Q_max")
        object.__setattr__(self, "lam", complex(self.lam))

    @property
    def sigma(self) -> complex:
        return sigma_from_alpha(self.alpha).sigma

    def to_record(self) -> dict:
        return {
            "alpha": self.alpha,
            "k": self.k,
            "eps": self.eps,
            "re_lambda": self.lam.real,
            "im_lambda": self.lam.imag,
            "Q_max": self.Q_max,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "RegulatedProblem":
        return cls(
            alpha=float(rec["alpha"]),
            k=float(rec["k"]),
            eps=float(rec["eps"]),
            lam=complex(rec["re_lambda"], rec["im_lambda"]),
            Q_max=float(rec["Q_max"]),
        )


# ---------------------------------------------------------------------------
# large-argument Hankel expansion


def _asymptotic_coefficients(sigma: complex, n_max: int = 40) -> list[complex]:
    mu = 4.0 * sigma * sigma
    coef = [1.0 + 0j]
    for m in range(1, n_max + 1):
        coef.append(coef[-1] * (mu - (2 * m - 1) ** 2) / (m * 8.0))
    return coef


def reduced_hankel_asymptotic(kind: int, sigma: complex, z: float) -> tuple[complex, complex]:
    """sqrt(z) H(z) and its z-derivative from the asymptotic series.

    The series is summed until terms drop below 1e-17 or start to grow.
    """
    sign = 1j if kind == 1 else -1j
    omega = z - math.pi * sigma / 2.0 - math.pi / 4.0
    pref = math.sqrt(2.0 / math.pi) * cmath.exp(sign * omega)
    total, dtotal = 0j, 0j
    last = math.inf
    for m, a in enumerate(_asymptotic_coefficients(sigma)):
        term = a * sign**m / z**m
        size = abs(term)
        if m > 1 and size > last:
            break
        total += term
        dtotal += term * (sign - m / z)
        last = size
        if size < 1e-17 * abs(total):
            break
    return pref * total, pref * dtotal


# ---------------------------------------------------------------------------
# real basis on one half-line


def _integrate_basis(sigma2: float, k: float, eps: float, x_points: np.ndarray, rtol: float):
    """Two real solutions with (chi, chi') = (1, 0) and (0, 1/eps) at x = eps.

    Returns chi and chi' of both at ``x_points`` as arrays of shape (2, n).
    """
    t0 = math.log(eps)
    t_eval = np.log(x_points)
    r = eps ** -0.5
    # state (w1, w1_t, w2, w2_t) with w = x^(-1/2) chi
    y0 = np.array([r, -0.5 * r, 0.0, r])
    k2 = k * k

    def rhs(t, y):
        q = sigma2 - k2 * math.exp(2.0 * t)
        return np.array([y[1], q * y[0], y[3], q * y[2]])

    sol = solve_ivp(
        rhs,
        (t0, float(t_eval[-1])),
        y0,
        method="DOP853",
        t_eval=t_eval,
        rtol=rtol,
        atol=rtol * 1e-6 * r,
    )
    if not sol.success:
        raise MatchingError(f"half-line integration failed: {sol.message}")
    x = np.exp(sol.t)
    sq = np.sqrt(x)
    chi = np.array([sq * sol.y[0], sq * sol.y[2]])
    dchi = np.array([(sol.y[1] + 0.5 * sol.y[0]) / sq, (sol.y[3] + 0.5 * sol.y[2]) / sq])
    return chi, dchi


@lru_cache(maxsize=256)
def _matched_basis(alpha: float, k: float, eps: float, Q_max: float, rtol: float):
    """Coefficients (a_j, b_j) with phi_j = a_j f1 + b_j f2 at Q_max."""
    sigma = sigma_from_alpha(alpha).sigma
    sigma2 = (sigma * sigma).real
    chi, dchi = _integrate_basis(sigma2, k, eps, np.array([Q_max]), rtol)
    z = k * Q_max
    f1, df1 = reduced_hankel_asymptotic(1, sigma, z)
    f2, df2 = reduced_hankel_asymptotic(2, sigma, z)
    M = np.array([[f1, f2], [k * df1, k * df2]], dtype=complex)
    rhs = np.array([[chi[0, 0], chi[1, 0]], [dchi[0, 0], dchi[1, 0]]], dtype=complex)
    ab = np.linalg.solve(M, rhs)
    return complex(ab[0, 0]), complex(ab[1, 0]), complex(ab[0, 1]), complex(ab[1, 1])


def _equilibrated_condition(A: np.ndarray) -> float:
    row = np.max(np.abs(A), axis=1, keepdims=True)
    row[row == 0] = 1.0
    B = A / row
    col = np.max(np.abs(B), axis=0, keepdims=True)
    col[col == 0] = 1.0
    return float(np.linalg.cond(B / col))


# ---------------------------------------------------------------------------
# flux bookkeeping


@dataclass(frozen=True)
class FluxReport:
    J_plus: float
    J_minus: float
    imbalance: float
    classification: Literal["sink", "source", "unitary"]

    def to_record(self) -> dict:
        return {
            "J_plus": self.J_plus,
            "J_minus": self.J_minus,
            "imbalance": self.imbalance,
            "classification": self.classification,
        }


def current(chi: complex, dchi: complex) -> float:
    """J = i (chi dchi* - chi* dchi) = 2 Im(chi* dchi)."""
    return 2.0 * (complex(chi).conjugate() * complex(dchi)).imag


def classify(lam: complex) -> Literal["sink", "source", "unitary"]:
    im = complex(lam).imag
    if abs(im) < UNITARY_TOL:
        return "unitary"
    return "sink" if im < 0 else "source"


def flux_report(chi_eps: complex, dchi_plus: complex, dchi_minus: complex, lam: complex) -> FluxReport:
    """Currents either side of the origin and their jump.

    ``dchi_plus`` and ``dchi_minus`` are dchi/dQ at Q = +eps and Q = -eps.
    The jump must equal 2 Im(lambda) |chi(eps)|^2.
    """
    jp = current(chi_eps, dchi_plus)
    jm = current(chi_eps, dchi_minus)
    imbalance = jp - jm
    expected = 2.0 * complex(lam).imag * abs(chi_eps) ** 2
    scale = max(abs(jp), abs(jm), abs(expected), 1e-300)
    if abs(imbalance - expected) > FLUX_TOL * scale:
        raise SolverInconsistencyError(
            f"current jump {imbalance:.6g} differs from 2 Im(lambda)|chi|^2 = {expected:.6g}"
        )
    return FluxReport(J_plus=jp, J_minus=jm, imbalance=imbalance, classification=classify(lam))


# ---------------------------------------------------------------------------
# solver


@dataclass(frozen=True)
class OracleSolution:
    problem: RegulatedProblem
    R: complex
    T: complex
    chi_eps: complex
    dchi_plus: complex
    dchi_minus: complex
    flux: FluxReport
    incoming_flux: float
    # (c1, c2) right and (d1, d2) left combinations of the real basis
    coefficients: tuple[complex, complex, complex, complex]

    @property
    def flux_deficit(self) -> float:
        """1 - (reflected + transmitted)/incoming, from the amplitudes."""
        s = self.problem.sigma
        w_r = math.exp(2.0 * math.pi * s.imag)
        return 1.0 - w_r * abs(self.R) ** 2 - abs(self.T) ** 2

    @property
    def normalized_imbalance(self) -> float:
        """Absorbed fraction implied by the current jump at the origin."""
        return -self.flux.imbalance / self.incoming_flux

    def to_record(self) -> dict:
        return {
            **self.problem.to_record(),
            "re_R": self.R.real,
            "im_R": self.R.imag,
            "re_T": self.T.real,
            "im_T": self.T.imag,
            "flux_deficit": self.flux_deficit,
            "normalized_imbalance": self.normalized_imbalance,
            **self.flux.to_record(),
        }


def solve(problem: RegulatedProblem, *, rtol: float = 1e-12) -> OracleSolution:
    """Solve the regulated problem and return amplitudes with boundary data."""
    s = problem.sigma
    k, eps = problem.k, problem.eps
    a1, b1, a2, b2 = _matched_basis(problem.alpha, k, eps, problem.Q_max, rtol)
    lam = problem.lam
    if cmath.isinf(lam):
        # chi(+-eps) = 0: only phi2 survives on either side
        if abs(b2) == 0:
            raise MatchingError("Dirichlet basis has no incoming component")
        c1, c2, d1, d2 = 0j, 1.0 / b2, 0j, 0j
    else:
        # unknowns (c1, c2, d1, d2):
        #   c1 b1 + c2 b2 = 1        unit incoming wave on the right
        #   d1 b1 + d2 b2 = 0        no incoming wave on the left
        #   c1 - d1 = 0              continuity at the origin
        #   c2 + d2 - lam eps c1 = 0 derivative jump
        A = np.array(
            [
                [b1, b2, 0, 0],
                [0, 0, b1, b2],
                [1, 0, -1, 0],
                [-lam * eps, 1, 0, 1],
            ],
            dtype=complex,
        )
        cond = _equilibrated_condition(A)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise MatchingError(
                f"matching system condition number {cond:.3g} exceeds {MAX_CONDITION:.0e}; "
                "try a larger Q_max"
            )
        c1, c2, d1, d2 = np.linalg.solve(A, np.array([1, 0, 0, 0], dtype=complex))
    R = c1 * a1 + c2 * a2
    tau = d1 * a1 + d2 * a2
    T = tau / LEFT_PREFACTOR(s)
    chi_eps = complex(c1)
    dchi_plus = complex(c2) / eps
    dchi_minus = -complex(d2) / eps
    if cmath.isinf(lam):
        fr = FluxReport(
            J_plus=current(0j, dchi_plus),
            J_minus=current(0j, dchi_minus),
            imbalance=0.0,
            classification="unitary",
        )
    else:
        fr = flux_report(chi_eps, dchi_plus, dchi_minus, lam)
    j_in = 4.0 * k / math.pi * math.exp(-math.pi * s.imag)
    return OracleSolution(
        problem=problem,
        R=complex(R),
        T=complex(T),
        chi_eps=chi_eps,
        dchi_plus=dchi_plus,
        dchi_minus=dchi_minus,
        flux=fr,
        incoming_flux=j_in,
        coefficients=(complex(c1), complex(c2), complex(d1), complex(d2)),
    )


def solve_scattering(problem: RegulatedProblem, *, rtol: float = 1e-12) -> tuple[complex, complex]:
    """(R, T) of the regulated problem."""
    sol = solve(problem, rtol=rtol)
    return sol.R, sol.T


def wavefunction_sample(problem: RegulatedProblem, Q_grid: Sequence[float], *, rtol: float = 1e-12) -> list[complex]:
    """chi(Q) for Q in [-Q_max, -eps] U [eps, Q_max]."""
    Q = np.asarray(Q_grid, dtype=float)
    x = np.abs(Q)
    tol = 1e-12 * problem.eps
    if np.any(x < problem.eps - tol) or np.any(x > problem.Q_max * (1 + 1e-12)):
        raise ValueError("grid points must satisfy eps <= |Q| <= Q_max")
    if len(Q) == 0:
        return []
    sol = solve(problem, rtol=rtol)
    c1, c2, d1, d2 = sol.coefficients
    sigma2 = (problem.sigma ** 2).real
    xs = np.unique(np.clip(x, problem.eps, problem.Q_max))
    inner = xs > problem.eps
    chi_b = np.empty((2, len(xs)))
    chi_b[:, ~inner] = np.array([[1.0], [0.0]])
    if np.any(inner):
        chi, _ = _integrate_basis(sigma2, problem.k, problem.eps, xs[inner], rtol)
        chi_b[:, inner] = chi
    idx = np.searchsorted(xs, np.clip(x, problem.eps, problem.Q_max))
    out = []
    for q, i in zip(Q, idx):
        p1, p2 = chi_b[0, i], chi_b[1, i]
        if q > 0:
            out.append(complex(c1 * p1 + c2 * p2))
        else:
            out.append(complex(d1 * p1 + d2 * p2))
    return out


__all__ = [
    "FluxReport",
    "LEFT_PREFACTOR",
    "OracleSolution",
    "RegulatedProblem",
    "classify",
    "current",
    "default_q_max",
    "flux_report",
    "reduced_hankel_asymptotic",
    "solve",
    "solve_scattering",
    "wavefunction_sample",
]

"""
Closed-form scattering data for a unit H2 wave incoming from Q = +infinity.

Conventions
-----------
Right half-line (Q >= eps)::

    chi(Q) = sqrt(kQ) (H2(kQ) + R H1(kQ))

Left half-line, written in x = |Q| (Q <= -eps)::

    chi(-x) = -i T exp(i pi sigma) sqrt(kx) H1(kx)

which is the outgoing wave towards Q = -infinity. With this choice the
continuity condition at |Q| = eps reads exactly

    R + i T exp(i pi sigma) = -H2(k eps) / H1(k eps)

in both regimes (sigma = -i zeta above criticality, where exp(i pi sigma)
becomes exp(pi zeta)).

Asymptotically H1 and H2 carry amplitudes |exp(-+ i pi sigma/2)|, so the
reflected and transmitted probabilities are exp(2 Im(pi sigma))|R|^2 and
|T|^2. The weight on |R|^2 is 1 for real sigma and exp(-2 pi zeta) on the
supercritical branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

from .errors import ExpansionInvalidError, ResonanceError
from .model import SigmaOrder, as_sigma, regime_of, sigma_from_alpha
from .rgflow import invariant_from_crossing, x_star as _x_from_invariant
from .special import _monomials, gamma_ratio, hankel, hankel_series, series_threshold

RESONANCE_TOL = 1e-12


# ---------------------------------------------------------------------------
# X factors


@dataclass(frozen=True)
class XFactor:
    value: complex
    k: float
    eps_or_star: float
    sigma: complex

    def to_record(self) -> dict:
        return {
            "re_X": self.value.real,
            "im_X": self.value.imag,
            "k": self.k,
            "eps": self.eps_or_star,
            "re_sigma": self.sigma.real,
            "im_sigma": self.sigma.imag,
        }


def x_factor(k: float, eps: float, sigma) -> complex:
    """Gamma(1-s)/Gamma(1+s) (k eps/2)^(2s)."""
    if not (k > 0 and eps > 0):
        raise ValueError("k and eps must be positive")
    s = as_sigma(sigma)
    return gamma_ratio(s) * cmath.exp(2.0 * s * math.log(k * eps / 2.0))


def log_eps_star(eps_star: float, sigma, y_star: float | None = None) -> complex:
    """Complex RG invariant s_star for a trajectory labelled by (eps_star, y_star).

    Subcritical: the trajectory Lambda = 2 sigma coth(sigma ln(eps/eps_star)).
    Supercritical: the trajectory crossing Re Lambda = 0 at eps_star with
    Im Lambda = y_star; ``y_star=None`` selects the hermitian trajectory
    (real Lambda), for which |X_*| = 1.
    """
    s = as_sigma(sigma)
    if not eps_star > 0:
        raise ValueError(f"eps_star must be positive, got {eps_star}")
    if s.imag == 0.0:
        if y_star is not None:
            raise ValueError("y_star labels supercritical trajectories only")
        return complex(math.log(eps_star))
    return invariant_from_crossing(eps_star, math.inf if y_star is None else y_star, s)


def x_star(k: float, eps_star: float, sigma, y_star: float | None = None) -> complex:
    """X_* on the trajectory labelled by (eps_star, y_star)."""
    return _x_from_invariant(k, sigma, log_eps_star(eps_star, sigma, y_star))


# ---------------------------------------------------------------------------
# continuity relation


def continuity_relation_exact(sigma, k: float, eps: float) -> complex:
    """-H2(k eps) / H1(k eps)."""
    s = as_sigma(sigma)
    z = k * eps
    if z <= series_threshold(s) or z < 5.0:
        h1, _ = hankel_series("H1", s, z)
        h2, _ = hankel_series("H2", s, z)
    else:
        h1 = hankel("H1", s, z).value
        h2 = hankel("H2", s, z).value
    return -h2 / h1


def continuity_relation_small(sigma, k: float, eps: float) -> complex:
    """(1 - X exp(i pi s)) / (1 - X exp(-i pi s))."""
    s = as_sigma(sigma)
    X = x_factor(k, eps, s)
    return (1.0 - X * cmath.exp(1j * math.pi * s)) / (1.0 - X * cmath.exp(-1j * math.pi * s))


def transmission_from_continuity(R: complex, rhs: complex, sigma) -> complex:
    """Solve R + i T exp(i pi s) = rhs for T."""
    s = as_sigma(sigma)
    return (rhs - R) / (1j * cmath.exp(1j * math.pi * s))


# ---------------------------------------------------------------------------
# coupling <-> reflection


def _brackets(X: complex, s: complex):
    ep = cmath.exp(1j * math.pi * s)
    em = cmath.exp(-1j * math.pi * s)
    return 1.0 + X * ep, 1.0 + X * em, 1.0 - X * ep, 1.0 - X * em


def coupling_from_R(R: complex, sigma, k: float, eps: float) -> complex:
    """Coupling lambda that produces reflection amplitude R at regulator eps.

    lambda eps = 1 - s [(P - R Q)/(M - R N) + Q/N] with
    P, Q = 1 + X exp(+-i pi s) and M, N = 1 - X exp(+-i pi s). Valid on either
    branch of sigma.
    """
    s = as_sigma(sigma)
    X = x_factor(k, eps, s)
    P, Q, M, N = _brackets(X, s)
    den = M - R * N
    if abs(den) < RESONANCE_TOL or abs(N) < RESONANCE_TOL:
        raise ResonanceError(f"coupling bracket vanishes for R = {R}")
    return (1.0 - s * ((P - R * Q) / den + Q / N)) / eps


def coupling_from_R_sub(R: complex, sigma, k: float, eps: float) -> complex:
    s = as_sigma(sigma)
    if s.imag != 0.0 or s.real <= 0:
        raise ValueError("subcritical branch needs real positive sigma")
    return coupling_from_R(R, s, k, eps)


def coupling_from_R_super(R: complex, zeta: float, k: float, eps: float) -> complex:
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    return coupling_from_R(R, complex(0.0, -zeta), k, eps)


def coupling_small_eps(R: complex, sigma, k: float, eps: float) -> complex:
    """First order in X of the reduced coupling Lambda = lambda eps - 1.

    Lambda ~ -2 s [1 + X exp(i pi s)(1 - R exp(-2 i pi s))/(1 - R) + X exp(-i pi s)].
    """
    s = as_sigma(sigma)
    if abs(1.0 - R) < RESONANCE_TOL:
        raise ExpansionInvalidError("R = 1 leaves the small-eps expansion undefined")
    X = x_factor(k, eps, s)
    ep = cmath.exp(1j * math.pi * s)
    em = cmath.exp(-1j * math.pi * s)
    return -2.0 * s * (1.0 + X * ep * (1.0 - R * em * em) / (1.0 - R) + X * em)


def R_from_coupling(lam: complex, sigma, k: float, eps: float) -> complex:
    """Algebraic inverse of ``coupling_from_R`` (a Moebius map in R)."""
    s = as_sigma(sigma)
    X = x_factor(k, eps, s)
    P, Q, M, N = _brackets(X, s)
    if abs(N) < RESONANCE_TOL:
        raise ResonanceError("X exp(-i pi sigma) = 1")
    G = (1.0 - complex(lam) * eps) / s - Q / N
    den = G * N - Q
    if abs(den) < RESONANCE_TOL:
        raise ResonanceError(f"reflection amplitude has a pole at lambda = {lam}")
    return (G * M - P) / den


def _reduced_hankels(s: complex, k: float, eps: float):
    """f = sqrt(z) H(z) at z = k eps for both kinds, with df/dQ."""
    z = k * eps
    if z < 5.0:
        h1, dh1 = hankel_series("H1", s, z)
        h2, dh2 = hankel_series("H2", s, z)
    else:
        raise ValueError("exact relations are implemented for k*eps < 5")
    root = math.sqrt(z)
    f1, f2 = root * h1, root * h2
    df1 = k * (h1 / (2.0 * root) + root * dh1)
    df2 = k * (h2 / (2.0 * root) + root * dh2)
    return f1, df1, f2, df2


def RT_from_coupling_exact(lam: complex, sigma, k: float, eps: float) -> tuple[complex, complex]:
    """(R, T) of the excised problem from full Hankel functions at k eps.

    Continuity at |Q| = eps plus the derivative jump lambda, with no small-z
    truncation.
    """
    s = as_sigma(sigma)
    f1, df1, f2, df2 = _reduced_hankels(s, k, eps)
    lam = complex(lam)
    if cmath.isinf(lam):
        R = -f2 / f1
        return R, 0j
    g = lam - df1 / f1
    den = g * f1 - df1
    if abs(den) < RESONANCE_TOL * abs(df1):
        raise ResonanceError(f"reflection amplitude has a pole at lambda = {lam}")
    R = (df2 - g * f2) / den
    tau = (f2 + R * f1) / f1
    return R, tau / (-1j * cmath.exp(1j * math.pi * s))


def RT_from_coupling(lam: complex, sigma, k: float, eps: float) -> tuple[complex, complex]:
    """(R, T) from the coupling, using the small-k eps continuity relation for T."""
    s = as_sigma(sigma)
    R = R_from_coupling(lam, s, k, eps)
    return R, transmission_from_continuity(R, continuity_relation_small(s, k, eps), s)


# ---------------------------------------------------------------------------
# RG-invariant closed forms


def _resonance_check(X_star: complex, phase: complex):
    if abs(X_star * phase - 1.0) < RESONANCE_TOL:
        raise ResonanceError(f"X_* = {X_star} sits on the resonance X_* = {1 / phase}")


def reflection_sub(X_star: complex, sigma) -> complex:
    """R = (X_* cos(pi s) - 1) / (X_* exp(-i pi s) - 1)."""
    s = as_sigma(sigma)
    if s.imag != 0.0:
        raise ValueError("subcritical closed form needs real sigma")
    if cmath.isinf(X_star):
        return math.cos(math.pi * s.real) * cmath.exp(1j * math.pi * s.real)
    em = cmath.exp(-1j * math.pi * s.real)
    _resonance_check(X_star, em)
    return (X_star * math.cos(math.pi * s.real) - 1.0) / (X_star * em - 1.0)


def transmission_sub(R: complex, sigma) -> complex:
    """T = -i exp(-i pi s) (1 - R)."""
    s = as_sigma(sigma)
    return -1j * cmath.exp(-1j * math.pi * s.real) * (1.0 - R)


def reflection_super(X_star: complex, zeta: float) -> complex:
    """R = (X_* cosh(pi zeta) - 1) / (X_* exp(-pi zeta) - 1)."""
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    em = math.exp(-math.pi * zeta)
    _resonance_check(X_star, em)
    return (X_star * math.cosh(math.pi * zeta) - 1.0) / (X_star * em - 1.0)


def transmission_super(R: complex, zeta: float) -> complex:
    """T = -i exp(-pi zeta) (1 - R)."""
    return -1j * math.exp(-math.pi * zeta) * (1.0 - R)


def closed_form_RT(X_star: complex, sigma) -> tuple[complex, complex]:
    s = as_sigma(sigma)
    if s.imag == 0.0:
        R = reflection_sub(X_star, s)
        return R, transmission_sub(R, s)
    zeta = -s.imag
    R = reflection_super(X_star, zeta)
    return R, transmission_super(R, zeta)


# ---------------------------------------------------------------------------
# flux bookkeeping


def reflection_weight(sigma) -> float:
    """Ratio of outgoing H1 to incoming H2 flux per unit |amplitude|^2."""
    s = as_sigma(sigma)
    return math.exp(2.0 * math.pi * s.imag)


def flux_deficit(R: complex, T: complex, sigma=0.5) -> float:
    """Fraction of incoming flux absorbed at the origin (negative: emitted)."""
    return 1.0 - reflection_weight(sigma) * abs(R) ** 2 - abs(T) ** 2


@dataclass(frozen=True)
class ScatteringSolution:
    R: complex
    T: complex
    regime: Literal["subcritical", "critical", "supercritical"]
    alpha: float
    k: float
    eps_star: float
    flux_deficit: float
    y_star: float | None = None

    def to_record(self) -> dict:
        rec = {
            "alpha": self.alpha,
            "k": self.k,
            "eps_star": self.eps_star,
            "re_R": self.R.real,
            "im_R": self.R.imag,
            "re_T": self.T.real,
            "im_T": self.T.imag,
            "flux_deficit": self.flux_deficit,
        }
        if self.y_star is not None:
            rec["y_star"] = self.y_star
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "ScatteringSolution":
        alpha = float(rec["alpha"])
        y = rec.get("y_star")
        return cls(
            R=complex(rec["re_R"], rec["im_R"]),
            T=complex(rec["re_T"], rec["im_T"]),
            regime=regime_of(alpha),
            alpha=alpha,
            k=float(rec["k"]),
            eps_star=float(rec["eps_star"]),
            flux_deficit=float(rec["flux_deficit"]),
            y_star=None if y is None else float(y),
        )


def scatter(alpha: float, k: float, eps_star: float, y_star: float | None = None) -> ScatteringSolution:
    """Closed-form R and T on the RG trajectory labelled by eps_star (and y_star).

    ``eps_star = 0`` is accepted on the subcritical branch and gives X_* = 0.
    """
    so: SigmaOrder = sigma_from_alpha(alpha, closed_form=True)
    if eps_star == 0 and so.sigma.imag == 0.0:
        Xs = 0j
    else:
        Xs = x_star(k, eps_star, so.sigma, y_star)
    R, T = closed_form_RT(Xs, so.sigma)
    return ScatteringSolution(
        R=complex(R),
        T=complex(T),
        regime=so.regime,
        alpha=float(alpha),
        k=float(k),
        eps_star=float(eps_star),
        flux_deficit=flux_deficit(R, T, so.sigma),
        y_star=y_star,
    )


# ---------------------------------------------------------------------------
# wavefunction


def supercritical_wavefunction(
    Q: float,
    zeta: float,
    k: float,
    *,
    R: complex | None = None,
    T: complex | None = None,
) -> complex:
    """Small-argument (monomial) form of chi for sigma = -i zeta.

    Q > 0 needs ``R`` and returns sqrt(kQ)(H2 + R H1); Q < 0 needs ``T`` and
    returns -i T exp(pi zeta) sqrt(k|Q|) H1(k|Q|). Both Hankel functions are
    replaced by their two-monomial forms, each carrying 1/sinh(pi zeta).
    """
    if not zeta > 0:
        raise ValueError("monomial forms degenerate at zeta = 0")
    s = complex(0.0, -zeta)
    if Q > 0:
        if R is None:
            raise ValueError("R is required on the right half-line")
        z = k * Q
        return math.sqrt(z) * (_monomials("H2", s, z) + R * _monomials("H1", s, z))
    if Q < 0:
        if T is None:
            raise ValueError("T is required on the left half-line")
        z = -k * Q
        return -1j * T * math.exp(math.pi * zeta) * math.sqrt(z) * _monomials("H1", s, z)
    raise ValueError("Q = 0 lies inside the excised region")


__all__ = [
    "RT_from_coupling",
    "RT_from_coupling_exact",
    "R_from_coupling",
    "ScatteringSolution",
    "XFactor",
    "closed_form_RT",
    "continuity_relation_exact",
    "continuity_relation_small",
    "coupling_from_R",
    "coupling_from_R_sub",
    "coupling_from_R_super",
    "coupling_small_eps",
    "flux_deficit",
    "log_eps_star",
    "reflection_sub",
    "reflection_super",
    "reflection_weight",
    "scatter",
    "supercritical_wavefunction",
    "transmission_from_continuity",
    "transmission_sub",
    "transmission_super",
    "x_factor",
    "x_star",
]

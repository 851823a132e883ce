"""
Domain types for the delta-regulated inverse-square problem.

Units are natural, hbar = 2m = 1, so the stationary equation reads

    -chi'' - (alpha / Q^2) chi + lambda delta(Q) chi = k^2 chi

with alpha dimensionless, lambda and k in 1/length and E = k^2.

The reduced coupling at regulator scale eps is Lambda = lambda*eps - 1. With
this normalisation the renormalisation-group fixed points sit at +-2 sigma
(see ``invsq.rgflow``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Literal

from .errors import CriticalBandError, ScaleInvariantError
from .special import CylinderOrder

ALPHA_CRITICAL = 0.25
CRITICAL_BAND = 1e-6

RegimeName = Literal["subcritical", "critical", "supercritical"]


def regime_of(alpha: float) -> RegimeName:
    if alpha < ALPHA_CRITICAL:
        return "subcritical"
    if alpha > ALPHA_CRITICAL:
        return "supercritical"
    return "critical"


def in_critical_band(alpha: float) -> bool:
    return abs(alpha - ALPHA_CRITICAL) < CRITICAL_BAND


@dataclass(frozen=True)
class PotentialStrength:
    alpha: float

    @property
    def regime(self) -> RegimeName:
        return regime_of(self.alpha)

    def to_record(self) -> dict:
        return {"alpha": self.alpha}

    @classmethod
    def from_record(cls, rec: dict) -> "PotentialStrength":
        return cls(alpha=float(rec["alpha"]))


@dataclass(frozen=True)
class SigmaOrder:
    """sigma = sqrt(1/4 - alpha) on the branch Re sigma >= 0, sigma = -i zeta above criticality."""

    alpha: float
    sigma: complex
    zeta: float | None

    @property
    def regime(self) -> RegimeName:
        return regime_of(self.alpha)

    @property
    def order(self) -> CylinderOrder:
        return CylinderOrder(self.sigma)

    def to_record(self) -> dict:
        return {
            "alpha": self.alpha,
            "re_sigma": self.sigma.real,
            "im_sigma": self.sigma.imag,
            "zeta": self.zeta,
            "regime": self.regime,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SigmaOrder":
        zeta = rec.get("zeta")
        return cls(
            alpha=float(rec["alpha"]),
            sigma=complex(rec["re_sigma"], rec["im_sigma"]),
            zeta=None if zeta is None else float(zeta),
        )


def sigma_from_alpha(alpha: float, *, closed_form: bool = False) -> SigmaOrder:
    """Characteristic exponent for potential strength ``alpha``.

    With ``closed_form=True`` the band |alpha - 1/4| < 1e-6 is rejected,
    since the Hankel closed forms degenerate there.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    if closed_form and in_critical_band(alpha):
        raise CriticalBandError(f"alpha = {alpha} lies within {CRITICAL_BAND} of 1/4")
    d = ALPHA_CRITICAL - alpha
    if d > 0:
        return SigmaOrder(alpha, complex(math.sqrt(d), 0.0), None)
    if d < 0:
        zeta = math.sqrt(-d)
        return SigmaOrder(alpha, complex(0.0, -zeta), zeta)
    return SigmaOrder(alpha, 0j, None)


def alpha_from_sigma(sigma: complex) -> float:
    a = ALPHA_CRITICAL - complex(sigma) ** 2
    return a.real


def as_sigma(value) -> complex:
    """Accept a SigmaOrder, CylinderOrder or bare number and return sigma."""
    return complex(getattr(value, "sigma", value))


@dataclass(frozen=True)
class ReducedCoupling:
    """Source-bulk coupling lambda at regulator eps and its reduced form Lambda = lambda*eps - 1."""

    lam: complex
    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"regulator must be positive, got {self.eps}")
        object.__setattr__(self, "lam", complex(self.lam))

    @property
    def Lambda(self) -> complex:
        return self.lam * self.eps - 1.0

    @classmethod
    def from_Lambda(cls, Lambda: complex, eps: float) -> "ReducedCoupling":
        return cls(lam=(complex(Lambda) + 1.0) / eps, eps=eps)

    def to_record(self) -> dict:
        L = self.Lambda
        return {
            "re_lambda": self.lam.real,
            "im_lambda": self.lam.imag,
            "epsilon": self.eps,
            "re_Lambda": L.real,
            "im_Lambda": L.imag,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ReducedCoupling":
        return cls(lam=complex(rec["re_lambda"], rec["im_lambda"]), eps=float(rec["epsilon"]))


@dataclass(frozen=True)
class Wavenumber:
    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")

    @property
    def energy(self) -> float:
        return self.k * self.k

    def to_record(self) -> dict:
        return asdict(self)

    @classmethod
    def from_record(cls, rec: dict) -> "Wavenumber":
        return cls(k=float(rec["k"]))


@dataclass(frozen=True)
class ScaleHierarchy:
    """Source size r, regulator eps, observation scale a."""

    r: float
    eps: float
    a: float

    @property
    def is_valid(self) -> bool:
        return 0 < self.r < self.eps / 10 < self.a / 100

    def validate(self) -> "ScaleHierarchy":
        if not self.is_valid:
            raise ValueError(f"need r < eps/10 < a/100, got r={self.r}, eps={self.eps}, a={self.a}")
        return self

    def to_record(self) -> dict:
        return asdict(self)

    @classmethod
    def from_record(cls, rec: dict) -> "ScaleHierarchy":
        return cls(r=float(rec["r"]), eps=float(rec["eps"]), a=float(rec["a"]))


def short_range_solution(alpha: float, C_plus: complex, C_minus: complex, Q: float) -> complex:
    """C+ Q^(1/2+sigma) + C- Q^(1/2-sigma), the zero-energy solution near the origin."""
    if not Q > 0:
        raise ValueError(f"Q must be positive, got {Q}")
    s = sigma_from_alpha(alpha).sigma
    lnq = math.log(Q)
    root = math.sqrt(Q)
    return root * (C_plus * cmath.exp(s * lnq) + C_minus * cmath.exp(-s * lnq))


def intrinsic_length(C_plus: complex, C_minus: complex, sigma) -> float:
    """Length scale fixed by the ratio C+/C-.

    Subcritical: |C+/C-|^(-1/(2 sigma)). Supercritical (sigma = -i zeta): the
    scale at which the two terms are in phase, exp(arg(C+/C-) / (2 zeta)),
    defined modulo the discrete factor exp(pi/zeta).
    """
    if C_plus == 0 or C_minus == 0:
        raise ScaleInvariantError("a vanishing coefficient leaves the solution scale invariant")
    s = as_sigma(sigma)
    ratio = complex(C_plus) / complex(C_minus)
    if s.imag == 0.0:
        if s.real == 0.0:
            raise ValueError("sigma = 0 has no power-law length scale")
        return abs(ratio) ** (-1.0 / (2.0 * s.real))
    zeta = -s.imag
    return math.exp(cmath.phase(ratio) / (2.0 * zeta))

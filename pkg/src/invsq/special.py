"""
Hankel functions of real or purely imaginary order at real positive argument.

Evaluation regimes
------------------
series
    Convergent ascending series of J_{+sigma} and J_{-sigma}, combined as

        H1 = (J_{-s} - exp(-i pi s) J_s) / (i sin(pi s))
        H2 = (exp(i pi s) J_s - J_{-s}) / (i sin(pi s)).

ode-continued
    Adaptive integration of z^2 u'' + z u' + (z^2 - s^2) u = 0 in t = ln z,
    seeded from the series at min(0.5, z/2) (never below the small-z
    threshold).

asymptotic
    Leading large-z form sqrt(2/(pi z)) exp(+-i (z - pi s/2 - pi/4)).

The two-term monomial form (``hankel_small_z``) is kept separate from the
full series: it is the truncation used by the closed-form scattering
relations and is only accurate to O(z^2).

The complex Gamma function is a Lanczos approximation (g = 7, n = 9).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DegenerateOrderError, RegimeError

Kind = Literal["H1", "H2"]
Regime = Literal["series", "ode-continued", "asymptotic"]

# Order magnitude below which sin(pi sigma) -> 0 makes the closed forms unusable.
DEGENERATE_ORDER_BAND = 1e-3

_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma(z: complex) -> complex:
    """Complex Gamma function via the Lanczos approximation.

    Relative accuracy is about 1e-15 for moderate |z|; the reflection formula
    handles Re z < 1/2.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0 and z.real == math.floor(z.real):
        raise ValueError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        s = cmath.sin(math.pi * z)
        return math.pi / (s * gamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, _LANCZOS_G + 2):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gamma_ratio(sigma: complex) -> complex:
    """Gamma(1 - sigma) / Gamma(1 + sigma)."""
    return gamma(1.0 - sigma) / gamma(1.0 + sigma)


@dataclass(frozen=True)
class CylinderOrder:
    """Order of a cylinder function, restricted to the real or imaginary axis.

    A supercritical order is written sigma = -i*zeta; ``zeta`` is then
    positive for the conventional branch. Orders with both a real and an
    imaginary part are rejected.
    """

    sigma: complex

    def __post_init__(self):
        s = complex(self.sigma)
        if not (math.isfinite(s.real) and math.isfinite(s.imag)):
            raise ValueError(f"non-finite order {s}")
        if s.real != 0.0 and s.imag != 0.0:
            scale = max(abs(s.real), abs(s.imag))
            if min(abs(s.real), abs(s.imag)) > 1e-14 * scale:
                raise ValueError(f"order must be real or purely imaginary, got {s}")
            s = complex(s.real, 0.0) if abs(s.real) > abs(s.imag) else complex(0.0, s.imag)
        object.__setattr__(self, "sigma", s)

    @classmethod
    def of(cls, value) -> "CylinderOrder":
        if isinstance(value, CylinderOrder):
            return value
        sigma = getattr(value, "sigma", value)
        return cls(complex(sigma))

    @property
    def is_real(self) -> bool:
        return self.sigma.imag == 0.0

    @property
    def zeta(self) -> float:
        """-Im(sigma); positive on the supercritical branch sigma = -i zeta."""
        return -self.sigma.imag

    @property
    def is_degenerate(self) -> bool:
        s = self.sigma
        if abs(s) < DEGENERATE_ORDER_BAND:
            return True
        return self.is_real and abs(s.real - round(s.real)) < 1e-12


@dataclass(frozen=True)
class CylinderEval:
    kind: Kind
    order: CylinderOrder
    argument: float
    value: complex
    regime: Regime


def _kind(kind) -> Kind:
    if kind in ("H1", 1, "1"):
        return "H1"
    if kind in ("H2", 2, "2"):
        return "H2"
    raise ValueError(f"unknown Hankel kind {kind!r}")


def _check_closed_form(order: CylinderOrder):
    if order.is_degenerate:
        raise DegenerateOrderError(
            f"order {order.sigma} is (near) an integer; the two-term closed forms are singular"
        )


def series_threshold(order) -> float:
    """Largest z for which the series regime is selected."""
    s = abs(CylinderOrder.of(order).sigma)
    return 1e-2 * min(1.0, 1.0 / (1.0 + s))


def asymptotic_threshold(order) -> float:
    """Smallest z for which ``hankel`` selects the leading asymptotic form."""
    s = abs(CylinderOrder.of(order).sigma)
    return 30.0 * (1.0 + s * s)


def asymptotic_floor(order) -> float:
    """Smallest z accepted by a direct ``hankel_asymptotic`` call."""
    s = abs(CylinderOrder.of(order).sigma)
    return 10.0 * (1.0 + s * s)


def hankel_small_z(kind, order, z: float) -> complex:
    """Two-term small-argument monomial form of H1 or H2.

    Parameters
    ----------
    kind : {"H1", "H2"}
    order : CylinderOrder or complex
    z : float
        Positive argument below ``series_threshold(order)``.

    Returns
    -------
    complex
        ``(A (z/2)^-s / Gamma(1-s) - B (z/2)^s / Gamma(1+s)) / (i sin(pi s))``
        with ``(A, B) = (1, exp(-i pi s))`` for H1 and
        ``(-1, -exp(i pi s))`` for H2.
    """
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    _check_closed_form(order)
    if not z > 0:
        raise RegimeError(f"argument must be positive, got {z}")
    if z > series_threshold(order):
        raise RegimeError(f"z = {z} is above the small-z threshold {series_threshold(order):.3g}")
    return _monomials(kind, order.sigma, z)


def _monomials(kind: Kind, s: complex, z: float) -> complex:
    half = math.log(z / 2.0)
    lead = cmath.exp(-s * half) / gamma(1.0 - s)
    sub = cmath.exp(s * half) / gamma(1.0 + s)
    denom = 1j * cmath.sin(math.pi * s)
    if kind == "H1":
        return (lead - cmath.exp(-1j * math.pi * s) * sub) / denom
    return (-lead + cmath.exp(1j * math.pi * s) * sub) / denom


def _bessel_j_series(nu: complex, z: float) -> tuple[complex, complex]:
    """J_nu(z) and dJ_nu/dz from the ascending series."""
    q = -(z * z) / 4.0
    term = cmath.exp(nu * math.log(z / 2.0)) / gamma(1.0 + nu)
    value = term
    deriv = term * nu / z
    m = 0
    while True:
        m += 1
        term = term * q / (m * (m + nu))
        value += term
        deriv += term * (2 * m + nu) / z
        if abs(term) < 1e-17 * abs(value) and m > 2:
            break
        if m > 500:
            raise ConvergenceError(f"Bessel series did not converge at z = {z}")
    return value, deriv


def hankel_series(kind, order, z: float) -> tuple[complex, complex]:
    """H(z) and dH/dz from the full ascending series (any moderate z)."""
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    _check_closed_form(order)
    s = order.sigma
    jp, djp = _bessel_j_series(s, z)
    jm, djm = _bessel_j_series(-s, z)
    denom = 1j * cmath.sin(math.pi * s)
    if kind == "H1":
        ph = cmath.exp(-1j * math.pi * s)
        return (jm - ph * jp) / denom, (djm - ph * djp) / denom
    ph = cmath.exp(1j * math.pi * s)
    return (ph * jp - jm) / denom, (ph * djp - djm) / denom


def hankel_asymptotic(kind, order, z: float) -> complex:
    """Leading large-z form sqrt(2/(pi z)) exp(+-i (z - pi sigma/2 - pi/4))."""
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    if z < asymptotic_floor(order):
        raise RegimeError(
            f"z = {z} is below the asymptotic floor {asymptotic_floor(order):.3g}"
        )
    phase = z - math.pi * order.sigma / 2.0 - math.pi / 4.0
    sign = 1j if kind == "H1" else -1j
    return math.sqrt(2.0 / (math.pi * z)) * cmath.exp(sign * phase)


def _integrate_log(sigma: complex, z_from: float, z_points, u0: complex, du0: complex, rtol: float):
    """Integrate the Hankel ODE in t = ln z; returns (u, du/dz) at z_points."""
    s2 = complex(sigma) ** 2
    t0 = math.log(z_from)
    t_eval = np.log(np.asarray(z_points, dtype=float))

    def rhs(t, y):
        return np.array([y[1], (s2 - math.exp(2.0 * t)) * y[0]])

    y0 = np.array([u0, z_from * du0], dtype=complex)
    scale = max(abs(u0), abs(z_from * du0))
    sol = solve_ivp(
        rhs,
        (t0, float(t_eval[-1])),
        y0,
        method="DOP853",
        t_eval=t_eval,
        rtol=rtol,
        atol=1e-3 * rtol * scale,
    )
    if not sol.success:
        raise ConvergenceError(f"Hankel ODE continuation failed: {sol.message}")
    z_arr = np.exp(sol.t)
    return sol.y[0], sol.y[1] / z_arr


def hankel_ode_continue(
    kind,
    order,
    z_from: float,
    z_to: float,
    seed: tuple[complex, complex] | None = None,
    *,
    rtol: float = 1e-13,
    return_derivative: bool = False,
):
    """Continue H1 or H2 from ``z_from`` to ``z_to`` along the real axis.

    ``seed`` is ``(u, du/dz)`` at ``z_from``; by default it comes from the
    ascending series. Returns the value at ``z_to`` (and the derivative when
    ``return_derivative`` is set).
    """
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    if not 0 < z_from < z_to:
        raise RegimeError(f"need 0 < z_from < z_to, got {z_from}, {z_to}")
    if seed is None:
        seed = hankel_series(kind, order, z_from)
    u, du = _integrate_log(order.sigma, z_from, [z_to], complex(seed[0]), complex(seed[1]), rtol)
    if return_derivative:
        return complex(u[-1]), complex(du[-1])
    return complex(u[-1])


def hankel_path(
    kind,
    order,
    z_from: float,
    z_grid: Sequence[float],
    seed: tuple[complex, complex] | None = None,
    *,
    rtol: float = 1e-13,
) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of an ODE continuation at every point of ``z_grid``."""
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    z_grid = np.asarray(z_grid, dtype=float)
    if z_grid.ndim != 1 or z_grid[0] < z_from or np.any(np.diff(z_grid) <= 0):
        raise RegimeError("z_grid must be increasing and start at or above z_from")
    if seed is None:
        seed = hankel_series(kind, order, z_from)
    return _integrate_log(order.sigma, z_from, z_grid, complex(seed[0]), complex(seed[1]), rtol)


def wronskian_residual(order, z: np.ndarray, h1, dh1, h2, dh2) -> np.ndarray:
    """Relative deviation of H1 H2' - H2 H1' from -4i/(pi z)."""
    z = np.asarray(z, dtype=float)
    expected = -4j / (math.pi * z)
    w = np.asarray(h1) * np.asarray(dh2) - np.asarray(h2) * np.asarray(dh1)
    return np.abs(w - expected) / np.abs(expected)


def reflection_phase(kind, order) -> complex:
    """Factor c with H_kind(exp(+-i pi) z) = c * H_other(z).

    H1(exp(i pi) z) = -exp(-i pi s) H2(z) and
    H2(exp(-i pi) z) = -exp(i pi s) H1(z).
    """
    kind = _kind(kind)
    s = CylinderOrder.of(order).sigma
    if kind == "H1":
        return -cmath.exp(-1j * math.pi * s)
    return -cmath.exp(1j * math.pi * s)


def reflect_negative_argument(kind, order, value_at_z: complex) -> complex:
    """Continue to the negative real axis via the reflection identities.

    ``value_at_z`` is the value of the *other* Hankel function at the real
    argument z: H1(e^{i pi} z) is built from H2(z) and H2(e^{-i pi} z) from
    H1(z).
    """
    return reflection_phase(kind, order) * complex(value_at_z)


def hankel(kind, order, z: float) -> CylinderEval:
    """Evaluate H1 or H2, choosing the regime from the size of z."""
    kind = _kind(kind)
    order = CylinderOrder.of(order)
    if not z > 0:
        raise RegimeError(f"argument must be positive, got {z}")
    z_s = series_threshold(order)
    if z <= z_s:
        value, _ = hankel_series(kind, order, z)
        regime: Regime = "series"
    elif z >= asymptotic_threshold(order):
        value = hankel_asymptotic(kind, order, z)
        regime = "asymptotic"
    else:
        # seed well above the threshold so the recessive part survives for large orders
        z_seed = max(z_s, min(0.5, 0.5 * z))
        value = hankel_ode_continue(kind, order, z_seed, z)
        regime = "ode-continued"
    return CylinderEval(kind=kind, order=order, argument=float(z), value=complex(value), regime=regime)


def half_order_exact(kind, z: float) -> complex:
    """Elementary closed form of H_{1/2}."""
    kind = _kind(kind)
    amp = math.sqrt(2.0 / (math.pi * z))
    if kind == "H1":
        return -1j * amp * cmath.exp(1j * z)
    return 1j * amp * cmath.exp(-1j * z)

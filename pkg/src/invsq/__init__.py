"""
Delta-regulated inverse-square scattering in one dimension.

Modules
-------
special
    Hankel functions of real or imaginary order and the complex Gamma function.
model
    Domain types: potential strength, exponent sigma, couplings, scales.
rgflow
    RG flow of the reduced coupling, fixed points, invariants, portraits.
scattering
    Closed-form reflection and transmission amplitudes.
oracle
    Direct ODE solution of the regulated problem with flux bookkeeping.
verify
    Cross-checks used by the ``invsq verify`` command and the test suite.
"""

from .model import ReducedCoupling, SigmaOrder, sigma_from_alpha
from .oracle import RegulatedProblem, solve_scattering
from .rgflow import fixed_points, flow_analytic, flow_numeric, flow_rhs
from .scattering import ScatteringSolution, scatter

__version__ = "0.1.0"

__all__ = [
    "ReducedCoupling",
    "RegulatedProblem",
    "ScatteringSolution",
    "SigmaOrder",
    "fixed_points",
    "flow_analytic",
    "flow_numeric",
    "flow_rhs",
    "scatter",
    "sigma_from_alpha",
    "solve_scattering",
]

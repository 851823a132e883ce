import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invsq.errors import DegenerateOrderError, RegimeError
from invsq.special import (
    CylinderOrder,
    asymptotic_floor,
    asymptotic_threshold,
    gamma,
    gamma_ratio,
    half_order_exact,
    hankel,
    hankel_asymptotic,
    hankel_ode_continue,
    hankel_path,
    hankel_series,
    hankel_small_z,
    reflect_negative_argument,
    reflection_phase,
    series_threshold,
    wronskian_residual,
)


def mp_hankel(kind, sigma, z):
    f = mp.hankel1 if kind == 1 else mp.hankel2
    return complex(f(mp.mpc(sigma), z))


ORDERS = [0.3, 0.45, 0.1, 1.7, -0.3j, -1j, -3j]


class TestGamma:
    @pytest.mark.parametrize("z", [0.5, 1.0, 3.7, 10.0, 0.2 + 3j, 1 - 1j, -0.3 + 0.2j, -2.5, 20 + 5j])
    def test_matches_mpmath(self, z):
        ref = complex(mp.gamma(mp.mpc(z)))
        assert abs(gamma(z) - ref) <= 1e-13 * abs(ref)

    def test_pole(self):
        with pytest.raises(ValueError):
            gamma(-2.0)

    @given(st.floats(0.0, 5.0))
    def test_ratio_has_unit_modulus_on_imaginary_axis(self, zeta):
        assert abs(abs(gamma_ratio(-1j * zeta)) - 1.0) < 1e-13


class TestCylinderOrder:
    def test_rejects_mixed(self):
        with pytest.raises(ValueError):
            CylinderOrder(0.3 - 0.2j)

    def test_zeta(self):
        assert CylinderOrder(-2j).zeta == 2.0
        assert not CylinderOrder(-2j).is_real

    @pytest.mark.parametrize("s", [0.0, 1e-4, 1.0, 2.0])
    def test_degenerate(self, s):
        assert CylinderOrder(s).is_degenerate

    def test_degenerate_order_rejected_by_closed_forms(self):
        with pytest.raises(DegenerateOrderError):
            hankel_small_z("H1", 1.0, 1e-3)
        with pytest.raises(DegenerateOrderError):
            hankel_series("H2", 0.0, 0.5)


class TestRegimes:
    @pytest.mark.parametrize("sigma", ORDERS)
    @pytest.mark.parametrize("z", [1e-4, 5e-3, 0.3, 2.0, 9.0])
    def test_hankel_matches_mpmath(self, sigma, z):
        for kind in (1, 2):
            ref = mp_hankel(kind, sigma, z)
            got = hankel(kind, sigma, z)
            assert abs(got.value - ref) <= 1e-10 * abs(ref)

    def test_regime_selection(self):
        s = 0.3
        assert hankel("H1", s, 0.5 * series_threshold(s)).regime == "series"
        assert hankel("H1", s, 1.0).regime == "ode-continued"
        assert hankel("H1", s, 2 * asymptotic_threshold(s)).regime == "asymptotic"

    def test_asymptotic_leading_term(self):
        s = 0.3
        z = asymptotic_threshold(s) * 2
        ref = mp_hankel(1, s, z)
        assert abs(hankel_asymptotic("H1", s, z) - ref) < 0.01 * abs(ref)

    def test_asymptotic_floor(self):
        with pytest.raises(RegimeError):
            hankel_asymptotic("H1", 0.3, 0.5 * asymptotic_floor(0.3))

    def test_small_z_threshold(self):
        with pytest.raises(RegimeError):
            hankel_small_z("H1", 0.3, 1.0)

    @pytest.mark.parametrize("sigma", [0.3, -1j])
    def test_small_z_error_is_second_order(self, sigma):
        z = 1e-3
        for kind in (1, 2):
            ref = mp_hankel(kind, sigma, z)
            assert abs(hankel_small_z(kind, sigma, z) - ref) < 5 * z * z * abs(ref)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            hankel(3, 0.3, 1.0)

    def test_nonpositive_argument(self):
        with pytest.raises(RegimeError):
            hankel("H1", 0.3, 0.0)


class TestContinuation:
    def test_half_order_exact(self):
        # seeded from the elementary form at 0.01, carried to 50 through the ODE
        z0 = 0.01
        for kind in ("H1", "H2"):
            v0 = half_order_exact(kind, z0)
            sign = 1j if kind == "H1" else -1j
            d0 = v0 * (sign - 0.5 / z0)
            v = hankel_ode_continue(kind, 0.5, z0, 50.0, seed=(v0, d0))
            ref = half_order_exact(kind, 50.0)
            assert abs(v - ref) < 1e-8 * abs(ref)

    def test_half_order_closed_form_vs_mpmath(self):
        for z in (0.01, 1.0, 30.0):
            assert abs(half_order_exact("H1", z) - mp_hankel(1, 0.5, z)) < 1e-12 * abs(mp_hankel(1, 0.5, z))

    @pytest.mark.parametrize("sigma", [0.3, 0.45, -0.5j, -2j])
    def test_wronskian_along_path(self, sigma):
        z0 = series_threshold(sigma)
        grid = np.geomspace(z0, 40.0, 60)
        h1, dh1 = hankel_path("H1", sigma, z0, grid)
        h2, dh2 = hankel_path("H2", sigma, z0, grid)
        assert np.max(wronskian_residual(sigma, grid, h1, dh1, h2, dh2)) < 1e-8

    def test_path_validation(self):
        with pytest.raises(RegimeError):
            hankel_path("H1", 0.3, 1.0, [0.5, 2.0])
        with pytest.raises(RegimeError):
            hankel_ode_continue("H1", 0.3, 2.0, 1.0)


class TestSymmetry:
    @pytest.mark.parametrize("sigma", [0.3, 0.45])
    @pytest.mark.parametrize("z", [1e-3, 0.5, 3.0])
    def test_real_order_conjugation(self, sigma, z):
        # H2 = conj(H1) for real order and real argument
        assert abs(hankel("H2", sigma, z).value - hankel("H1", sigma, z).value.conjugate()) < 1e-12 * abs(
            hankel("H1", sigma, z).value
        )

    @pytest.mark.parametrize("zeta", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("z", [1e-3, 0.5])
    def test_imaginary_order_conjugation(self, zeta, z):
        # conj(H1_{-i zeta}(z)) = H2_{+i zeta}(z)
        h1 = hankel_series("H1", -1j * zeta, z)[0]
        h2 = hankel_series("H2", 1j * zeta, z)[0]
        assert abs(h1.conjugate() - h2) < 1e-12 * abs(h2)

    @pytest.mark.parametrize("sigma", [0.3, -1j])
    def test_order_reflection(self, sigma):
        # H1_{-s} = exp(i pi s) H1_s, H2_{-s} = exp(-i pi s) H2_s
        z = 0.7
        h1, h1m = hankel("H1", sigma, z).value, hankel("H1", -sigma, z).value
        h2, h2m = hankel("H2", sigma, z).value, hankel("H2", -sigma, z).value
        assert abs(h1m - cmath.exp(1j * math.pi * sigma) * h1) < 1e-10 * abs(h1m)
        assert abs(h2m - cmath.exp(-1j * math.pi * sigma) * h2) < 1e-10 * abs(h2m)

    @pytest.mark.parametrize("sigma", [0.3, -1j])
    def test_negative_argument(self, sigma):
        z = 0.8
        h2 = hankel("H2", sigma, z).value
        ref = complex(mp.hankel1(mp.mpc(sigma), mp.mpf(z) * mp.exp(1j * mp.pi)))
        assert abs(reflect_negative_argument("H1", sigma, h2) - ref) < 1e-10 * abs(ref)
        assert reflection_phase("H2", sigma) == -cmath.exp(1j * math.pi * sigma)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95).filter(lambda s: abs(s - 0.5) > 1e-3), st.floats(1e-3, 3.0))
def test_series_wronskian_property(sigma, z):
    h1, dh1 = hankel_series("H1", sigma, z)
    h2, dh2 = hankel_series("H2", sigma, z)
    assert wronskian_residual(sigma, np.array([z]), [h1], [dh1], [h2], [dh2])[0] < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(1e-3, 3.0))
def test_imaginary_order_wronskian_property(zeta, z):
    s = -1j * zeta
    h1, dh1 = hankel_series("H1", s, z)
    h2, dh2 = hankel_series("H2", s, z)
    assert wronskian_residual(s, np.array([z]), [h1], [dh1], [h2], [dh2])[0] < 1e-9

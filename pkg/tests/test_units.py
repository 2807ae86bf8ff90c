import math

import pytest
from hypothesis import given, strategies as st

from screened_casimir.errors import DomainError
from screened_casimir.units import (
    CONSTANTS,
    ReducedPoint,
    density_to_plasma_frequency,
    dimensional_parameters,
    plasma_frequency_to_density,
    reduce_parameters,
)

C = CONSTANTS


def test_codata_values():
    assert C.c == 299792458.0
    assert C.k_B == 1.380649e-23
    assert C.hbar == pytest.approx(1.054571817e-34, rel=1e-9)
    assert C.hbar_c_MeV_fm == pytest.approx(197.3269804, rel=1e-9)
    assert C.alpha == pytest.approx(1 / 137.035999084, rel=1e-12)
    assert C.zeta3 == pytest.approx(1.2020569031595942, rel=1e-15)


def test_hbar_c_consistent():
    assert C.hbar_c == pytest.approx(C.hbar * C.c, rel=1e-12)
    assert C.hbar_c_MeV_fm == pytest.approx(C.hbar_c / (C.MeV * C.fm), rel=1e-12)


def test_e2_derived():
    assert C.e2 == pytest.approx(C.alpha * C.hbar_c, rel=1e-15)


def test_room_temperature_point():
    # 2 k_B T l / (hbar c) with CODATA constants
    p = reduce_parameters(1e-6, 300.0, 0.0)
    assert p.x == pytest.approx(0.26202, abs=1e-5)
    assert reduce_parameters(1e-5, 300.0, 0.0).x == pytest.approx(2.6202, abs=1e-4)
    assert p.kl == 0.0
    assert p.rho_bar == 0.0


def test_nuclear_point():
    kappa = 0.342074 / C.fm
    p = reduce_parameters(0.5 * C.fm, 3.2e11, kappa * C.c)
    assert p.x == pytest.approx(0.1398, abs=1e-3)
    assert p.kl == pytest.approx(0.17104, rel=1e-4)


def test_zero_temperature_sentinel():
    p = reduce_parameters(1e-6, 0.0, 1e14)
    assert p.x == 0.0 and p.rho_bar == math.inf


@pytest.mark.parametrize("field,args", [
    ("l", (-1e-6, 300.0, 0.0)),
    ("l", (0.0, 300.0, 0.0)),
    ("T", (1e-6, -1.0, 0.0)),
    ("omega_p", (1e-6, 300.0, -1.0)),
    ("T", (1e-6, math.nan, 0.0)),
    ("omega_p", (1e-6, 300.0, math.inf)),
])
def test_reduce_rejects(field, args):
    with pytest.raises(DomainError) as info:
        reduce_parameters(*args)
    assert info.value.field == field


@given(
    st.floats(1e-9, 1e-3),
    st.floats(1e-3, 1e12),
    st.floats(0.0, 1e17),
)
def test_round_trip(l, T, wp):
    p = reduce_parameters(l, T, wp)
    T2, wp2 = dimensional_parameters(p, l)
    assert T2 == pytest.approx(T, rel=1e-12)
    assert wp2 == pytest.approx(wp, rel=1e-12, abs=1e-300)
    assert p.rho_bar * (math.pi * p.x) ** 2 == pytest.approx(p.kl**2, rel=1e-14, abs=1e-300)


def test_density_zero():
    assert density_to_plasma_frequency(0.0) == 0.0


def test_density_from_meson_scale():
    omega_p = 67.5 * C.MeV / C.hbar
    rho = plasma_frequency_to_density(omega_p) * C.fm**3
    assert rho == pytest.approx(3.304e-3, rel=1e-3)


def test_density_rejects_negative():
    with pytest.raises(DomainError) as info:
        density_to_plasma_frequency(-1.0)
    assert info.value.field == "rho"


@given(st.floats(1e10, 1e45))
def test_density_scaling_and_inverse(rho):
    wp = density_to_plasma_frequency(rho)
    assert density_to_plasma_frequency(2 * rho) == pytest.approx(math.sqrt(2) * wp, rel=1e-12)
    assert plasma_frequency_to_density(wp) == pytest.approx(rho, rel=1e-12)


def test_reduced_point_from_x_kl():
    p = ReducedPoint.from_x_kl(2.0, 3.0)
    assert p.rho_bar == pytest.approx((3.0 / (2.0 * math.pi)) ** 2, rel=1e-15)

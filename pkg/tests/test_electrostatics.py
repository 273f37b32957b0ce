import math

import pytest
from hypothesis import given, strategies as st

from casimir_lab.constants import EPS0, MV, PN, UM
from casimir_lab.electrostatics import (ElectrostaticParams, applied_voltage_force,
                                        patch_force, patch_scale_window)
from casimir_lab.errors import DomainError


def test_patch_force_hand_value():
    # -pi eps0 (0.156 m) (5.4 mV)^2 / 7.29 um
    f = patch_force(0.156, 5.4 * MV, 7.29 * UM)
    assert f == pytest.approx(-math.pi * 8.8541878128e-12 * 0.156 * 5.4e-3**2 / 7.29e-6, rel=1e-9, abs=0)
    assert f / PN == pytest.approx(-17.36, abs=0.01)


def test_prefactor_hand_value():
    assert math.pi * EPS0 * 0.156 / (1 * UM) == pytest.approx(4.339e-6, rel=1e-3, abs=0)


@given(st.floats(min_value=1e-3, max_value=1.0), st.floats(min_value=0.0, max_value=0.1),
       st.floats(min_value=1e-8, max_value=1e-4))
def test_patch_force_scaling(R, v, d):
    f = patch_force(R, v, d)
    assert f <= 0
    assert patch_force(R, v, 2 * d) == pytest.approx(f / 2, rel=1e-14, abs=0)
    assert patch_force(2 * R, v, d) == pytest.approx(2 * f, rel=1e-14, abs=0)
    assert patch_force(R, 2 * v, d) == pytest.approx(4 * f, rel=1e-14, abs=0)


def test_applied_voltage_minimised_at_residual():
    p = ElectrostaticParams(V=0.02, V_m=0.02, V_rms=5e-3)
    assert applied_voltage_force(0.156, p, 1 * UM) == pytest.approx(patch_force(0.156, 5e-3, 1 * UM),
                                                                    rel=1e-14, abs=0)
    off = ElectrostaticParams(V=0.03, V_m=0.02, V_rms=5e-3)
    assert applied_voltage_force(0.156, off, 1 * UM) < applied_voltage_force(0.156, p, 1 * UM)


def test_residual_drift():
    p = ElectrostaticParams(V_m=0.01, V_m_slope=100.0)
    assert p.residual(1e-5) == pytest.approx(0.011, rel=1e-14, abs=0)


def test_patch_window():
    rep = patch_scale_window(0.156, 1 * UM)
    assert rep.lambda_lo == 1 * UM
    assert rep.r_eff == pytest.approx(math.sqrt(0.156e-6), rel=1e-14, abs=0)
    assert rep.lambda_lo < rep.lambda_geo < rep.lambda_hi
    assert rep.admits(rep.lambda_geo, margin=5)
    assert not rep.admits(0.5 * UM)


def test_domain_errors():
    with pytest.raises(DomainError):
        patch_force(0.0, 1e-3, 1e-6)
    with pytest.raises(DomainError):
        patch_force(0.1, 1e-3, 0.0)
    with pytest.raises(DomainError):
        patch_scale_window(1e-6, 2e-6)
    with pytest.raises(DomainError):
        ElectrostaticParams(V_rms=-1.0)

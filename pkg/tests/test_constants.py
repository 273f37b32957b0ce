import math

import pytest
from hypothesis import given, strategies as st

from casimir_lab import constants as cst
from casimir_lab.errors import DomainError


def test_constants_positive():
    for name in ("hbar", "c", "k_B", "eps0", "zeta3", "eV_to_rad_per_s"):
        assert getattr(cst.CONST, name) > 0


def test_constants_frozen():
    with pytest.raises(AttributeError):
        cst.CONST.hbar = 1.0


def test_zeta3():
    # partial sum plus Euler-Maclaurin tail
    n = 2000
    s = math.fsum(1.0 / k**3 for k in range(1, n))
    s += 1.0 / (2 * n**2) + 1.0 / (2 * n**3)
    assert cst.ZETA3 == pytest.approx(s, rel=1e-12, abs=0)


def test_ev_conversion_consistent():
    eV_J = 1.602176634e-19
    assert cst.EV == pytest.approx(eV_J / cst.HBAR, rel=1e-10, abs=0)


def test_energy_to_frequency_examples():
    assert cst.convert_energy_to_angular_frequency(0.0) == 0.0
    # 1 eV / hbar = 1.602176634e-19 / 1.054571817e-34
    assert cst.convert_energy_to_angular_frequency(1.0) == pytest.approx(1.519267e15, rel=1e-6, abs=0)
    assert cst.convert_energy_to_angular_frequency(9.0) == pytest.approx(
        9 * cst.convert_energy_to_angular_frequency(1.0), rel=1e-15, abs=0)
    with pytest.raises(DomainError):
        cst.convert_energy_to_angular_frequency(-1.0)


@given(st.floats(min_value=1e-6, max_value=1e3))
def test_round_trips(v):
    assert cst.angular_frequency_to_energy(cst.convert_energy_to_angular_frequency(v)) == pytest.approx(v, rel=1e-12, abs=0)
    for unit in (cst.UM, cst.NM, cst.PN, cst.MV):
        assert (v * unit) / unit == pytest.approx(v, rel=1e-12, abs=0)


@pytest.mark.parametrize("text, metres", [
    ("3um", 3e-6), ("700nm", 7e-7), ("1.5", 1.5e-6), ("2e-6m", 2e-6), ("15.6cm", 0.156),
])
def test_parse_length(text, metres):
    assert cst.parse_length(text) == pytest.approx(metres, rel=1e-12, abs=0)


def test_separation_and_temperature_checks():
    with pytest.raises(DomainError):
        cst.check_separation(0.0)
    with pytest.raises(DomainError):
        cst.check_temperature(-1.0)
    assert cst.check_temperature(0.0) == 0.0

"""Physical constants and unit conversions.

Everything inside the package is SI. The helpers below are only meant for
the ingestion/emission boundaries (CSV files, CLI flags, reports).
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy import constants as _sc

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants used throughout (SI units)."""

    hbar: float = _sc.hbar  # J s
    c: float = _sc.c  # m / s
    k_B: float = _sc.k  # J / K
    eps0: float = _sc.epsilon_0  # F / m
    zeta3: float = 1.2020569031595942  # Riemann zeta(3)
    eV_to_rad_per_s: float = _sc.eV / _sc.hbar  # omega = E / hbar


CONST = PhysicalConstants()

HBAR = CONST.hbar
C = CONST.c
K_B = CONST.k_B
EPS0 = CONST.eps0
ZETA3 = CONST.zeta3
EV = CONST.eV_to_rad_per_s

# boundary unit factors (multiply to get SI)
UM = 1e-6
NM = 1e-9
CM = 1e-2
PN = 1e-12
MV = 1e-3


def convert_energy_to_angular_frequency(e: float) -> float:
    """Angular frequency (rad/s) of a photon with energy ``e`` in eV."""
    if e < 0:
        raise DomainError(f"energy must be non-negative, got {e} eV")
    return e * EV


def angular_frequency_to_energy(omega: float) -> float:
    """Inverse of :func:`convert_energy_to_angular_frequency`."""
    if omega < 0:
        raise DomainError(f"angular frequency must be non-negative, got {omega}")
    return omega / EV


def check_separation(d: float) -> float:
    d = float(d)
    if not d > 0:
        raise DomainError(f"separation must be > 0 m, got {d}")
    return d


def check_temperature(T: float) -> float:
    T = float(T)
    if not T >= 0:
        raise DomainError(f"temperature must be >= 0 K, got {T}")
    return T


def parse_length(text: str, default_unit: str = "um") -> float:
    """Parse ``'3um'``, ``'700nm'``, ``'1.5e-6m'`` or a bare number into metres."""
    units = {"nm": NM, "um": UM, "mm": 1e-3, "cm": CM, "m": 1.0}
    s = str(text).strip().lower().replace("μm", "um")
    for suffix in ("nm", "um", "mm", "cm", "m"):
        if s.endswith(suffix):
            return float(s[: -len(suffix)]) * units[suffix]
    return float(s) * units[default_unit]

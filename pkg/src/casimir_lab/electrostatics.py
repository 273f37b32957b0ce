"""Electrostatic forces between a lens and a plate.

Only large patches (``d << lambda << sqrt(R d)``) are modelled; small
patches (``lambda << d``) give an exponentially small force and count as
zero here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import EPS0, check_separation
from .errors import DomainError


@dataclass(frozen=True)
class ElectrostaticParams:
    """Applied voltage ``V``, residual potential ``V_m`` and patch scale ``V_rms`` (volts).

    ``V_m_slope`` (V/m) is an optional linear drift of ``V_m`` with
    separation; it is off by default.
    """

    V: float = 0.0
    V_m: float = 0.0
    V_rms: float = 0.0
    V_m_slope: float = 0.0

    def __post_init__(self):
        if self.V_rms < 0:
            raise DomainError("V_rms must be >= 0")

    def residual(self, d: float) -> float:
        return self.V_m + self.V_m_slope * d


@dataclass(frozen=True)
class PatchScaleReport:
    """Admissible large-patch sizes ``d << lambda << r_eff`` (all in m)."""

    r_eff: float
    lambda_lo: float
    lambda_hi: float
    lambda_geo: float

    def admits(self, lam: float, margin: float = 1.0) -> bool:
        """True if ``lam`` sits at least ``margin`` times inside both ends."""
        return self.lambda_lo * margin < lam < self.lambda_hi / margin


def _check_radius(R):
    if not R > 0:
        raise DomainError("R must be > 0")


def patch_force(R: float, V_rms: float, d: float) -> float:
    """``-pi eps0 R V_rms**2 / d`` in newtons."""
    _check_radius(R)
    d = check_separation(d)
    return -math.pi * EPS0 * R * V_rms**2 / d


def applied_voltage_force(R: float, params: ElectrostaticParams, d: float) -> float:
    """Force (N) with a voltage ``V`` applied across lens and plate."""
    _check_radius(R)
    d = check_separation(d)
    dv = params.V - params.residual(d)
    return -math.pi * EPS0 * R * (dv * dv / d + params.V_rms**2 / d)


def patch_scale_window(R: float, d: float) -> PatchScaleReport:
    _check_radius(R)
    d = check_separation(d)
    if not R > d:
        raise DomainError(f"patch window needs R > d (R={R}, d={d})")
    r_eff = math.sqrt(R * d)
    return PatchScaleReport(r_eff=r_eff, lambda_lo=d, lambda_hi=r_eff, lambda_geo=math.sqrt(d * r_eff))

"""Dielectric permittivity on the imaginary frequency axis.

Every model exposes ``eps(xi)`` for ``xi > 0`` (rad/s, scalar or array) and
``zero_frequency()`` describing how ``eps(i xi)`` behaves as ``xi -> 0``.
The Lifshitz code needs the latter for the static Matsubara term, where the
Drude and plasma approaches part ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .constants import EV
from .errors import DomainError
from .quadrature import adaptive_panels


@dataclass(frozen=True)
class ZeroFrequency:
    """Small-``xi`` behaviour of ``eps(i xi)``.

    ``kind`` is one of ``"finite"`` (``eps -> coefficient``),
    ``"inverse_xi"`` (``eps ~ coefficient / xi``) or
    ``"inverse_xi_squared"`` (``eps ~ coefficient / xi**2``).
    """

    kind: Literal["finite", "inverse_xi", "inverse_xi_squared"]
    coefficient: float


@dataclass(frozen=True)
class Oscillator:
    """Lorentz oscillator ``g / (omega**2 + xi**2 + gamma * xi)``.

    ``g`` in rad^2/s^2, ``omega`` and ``gamma`` in rad/s.
    """

    g: float
    omega: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.g < 0 or self.omega < 0 or self.gamma < 0:
            raise DomainError(f"oscillator parameters must be >= 0: {self}")

    def term(self, xi):
        return self.g / (self.omega**2 + xi**2 + self.gamma * xi)


def _check_xi(xi):
    arr = np.asarray(xi, dtype=float)
    if not np.all(arr > 0):
        raise DomainError("eps(i xi) requires xi > 0; use zero_frequency() for xi = 0")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


@dataclass(frozen=True)
class Drude:
    omega_p: float
    gamma: float

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError("omega_p must be > 0")
        if not self.gamma > 0:
            raise DomainError("Drude needs gamma > 0 (use Plasma for gamma = 0)")

    def eps(self, xi):
        xi = _check_xi(xi)
        return _out(1.0 + self.omega_p**2 / (xi * (xi + self.gamma)))

    def zero_frequency(self) -> ZeroFrequency:
        return ZeroFrequency("inverse_xi", self.omega_p**2 / self.gamma)


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError("omega_p must be > 0")

    def eps(self, xi):
        xi = _check_xi(xi)
        return _out(1.0 + self.omega_p**2 / xi**2)

    def zero_frequency(self) -> ZeroFrequency:
        return ZeroFrequency("inverse_xi_squared", self.omega_p**2)


@dataclass(frozen=True)
class GeneralizedPlasma:
    """Plasma model plus Lorentz oscillators for the core electrons."""

    omega_p: float
    oscillators: tuple[Oscillator, ...] = ()

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError("omega_p must be > 0")
        object.__setattr__(self, "oscillators", tuple(self.oscillators))

    def eps(self, xi):
        xi = _check_xi(xi)
        out = 1.0 + self.omega_p**2 / xi**2
        for osc in self.oscillators:
            out = out + osc.term(xi)
        return _out(out)

    def zero_frequency(self) -> ZeroFrequency:
        return ZeroFrequency("inverse_xi_squared", self.omega_p**2)


@dataclass(frozen=True)
class DielectricCore:
    """Dielectric described by oscillators, optionally with dc conductivity.

    The dc conductivity enters as ``sigma0 / xi`` with ``sigma0`` in rad/s
    (the Gaussian ``4 pi sigma``).
    """

    oscillators: tuple[Oscillator, ...]
    include_dc: bool = False
    sigma0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "oscillators", tuple(self.oscillators))
        if self.sigma0 < 0:
            raise DomainError("sigma0 must be >= 0")
        if self.include_dc and not self.sigma0 > 0:
            raise DomainError("include_dc requires sigma0 > 0")

    def core(self, xi):
        out = np.ones_like(np.asarray(xi, dtype=float))
        for osc in self.oscillators:
            out = out + osc.term(xi)
        return out

    def static(self) -> float:
        return 1.0 + sum(o.g / o.omega**2 for o in self.oscillators)

    def eps(self, xi):
        xi = _check_xi(xi)
        out = self.core(xi)
        if self.include_dc:
            out = out + self.sigma0 / xi
        return _out(out)

    def zero_frequency(self) -> ZeroFrequency:
        if self.include_dc:
            return ZeroFrequency("inverse_xi", self.sigma0)
        return ZeroFrequency("finite", self.static())


@dataclass(frozen=True, eq=False)
class OpticalDataTable:
    """Imaginary part of eps at real frequencies ``omega`` (rad/s)."""

    omega: np.ndarray
    im_eps: np.ndarray

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float)
        im_eps = np.array(self.im_eps, dtype=float)
        if omega.ndim != 1 or omega.shape != im_eps.shape:
            raise DomainError("omega and im_eps must be 1-D arrays of equal length")
        if omega.size < 2:
            raise DomainError("optical table needs at least 2 rows")
        if not np.all(np.diff(omega) > 0) or omega[0] <= 0:
            raise DomainError("table frequencies must be positive and strictly increasing")
        if np.any(im_eps < 0):
            raise DomainError("Im eps must be >= 0")
        omega.setflags(write=False)
        im_eps.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "im_eps", im_eps)


@dataclass(frozen=True)
class Extrapolation:
    """Low-frequency completion of an optical table.

    ``"drude"`` supplies ``Im eps = omega_p**2 gamma / (omega (omega**2 + gamma**2))``
    below the table; ``"plasma"`` supplies nothing there but adds the
    ``omega_p**2 / xi**2`` contribution of the delta function at zero frequency.
    """

    kind: Literal["drude", "plasma"]
    omega_p: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("drude", "plasma"):
            raise DomainError(f"unknown extrapolation {self.kind!r}")
        if not self.omega_p > 0:
            raise DomainError("omega_p must be > 0")
        if self.kind == "drude" and not self.gamma > 0:
            raise DomainError("drude extrapolation needs gamma > 0")

    def im_eps(self, omega):
        if self.kind == "plasma":
            return np.zeros_like(omega)
        return self.omega_p**2 * self.gamma / (omega * (omega**2 + self.gamma**2))


def kramers_kronig_imaginary_axis(table: OpticalDataTable, extrapolation: Extrapolation,
                                  xi: float, rel_tol: float = 1e-6) -> float:
    """``eps(i xi) = 1 + (2/pi) int_0^inf omega Im eps(omega) / (omega**2 + xi**2) d omega``.

    Im eps is linearly interpolated inside the table, taken from the
    extrapolation below it and set to zero above it. Raises
    :class:`~casimir_lab.errors.ConvergenceError` if the adaptive rule cannot
    meet ``rel_tol``.
    """
    if not xi > 0:
        raise DomainError("xi must be > 0")
    w = table.omega
    lo, hi = w[0], w[-1]

    def table_part(om):
        return om * np.interp(om, w, table.im_eps) / (om**2 + xi**2)

    edges = np.unique(np.concatenate([w, [xi] if lo < xi < hi else []]))
    total, _ = adaptive_panels(table_part, edges, rel_tol=rel_tol * 1e-2)

    if extrapolation.kind == "drude":
        g = extrapolation.gamma

        def tail(om):
            return extrapolation.omega_p**2 * g / ((om**2 + g**2) * (om**2 + xi**2))

        # log-spaced panels resolve the two Lorentzian scales gamma and xi
        start = min(g, xi, lo) * 1e-6
        inner = np.geomspace(start, lo, 60)
        cuts = [c for c in (g, xi) if start < c < lo]
        edges = np.unique(np.concatenate([[0.0], inner, cuts]))
        tail_val, _ = adaptive_panels(tail, edges, rel_tol=rel_tol * 1e-2)
        total += tail_val
    value = 1.0 + 2.0 / np.pi * total
    if extrapolation.kind == "plasma":
        value += extrapolation.omega_p**2 / xi**2
    return float(value)


@dataclass(frozen=True)
class TabulatedOptical:
    data: OpticalDataTable
    extrapolation: Extrapolation
    rel_tol: float = 1e-6

    def eps(self, xi):
        xi = _check_xi(xi)
        flat = [kramers_kronig_imaginary_axis(self.data, self.extrapolation, x, self.rel_tol)
                for x in xi.ravel()]
        return _out(np.asarray(flat).reshape(xi.shape))

    def zero_frequency(self) -> ZeroFrequency:
        ex = self.extrapolation
        if ex.kind == "drude":
            return ZeroFrequency("inverse_xi", ex.omega_p**2 / ex.gamma)
        return ZeroFrequency("inverse_xi_squared", ex.omega_p**2)


PermittivityModel = Union[Drude, Plasma, GeneralizedPlasma, DielectricCore, TabulatedOptical]


def eval_permittivity(model: PermittivityModel, xi):
    """Real permittivity ``eps(i xi)`` of ``model``; ``xi`` in rad/s, > 0."""
    return model.eps(xi)


def zero_frequency_behavior(model: PermittivityModel) -> ZeroFrequency:
    return model.zero_frequency()


# Conventional gold parameters; nothing downstream hardcodes them.
AU_OMEGA_P = 9.0 * EV
AU_GAMMA = 0.035 * EV


def au_preset(approach: str = "drude",
              oscillators: tuple[Oscillator, ...] = ()) -> PermittivityModel:
    """Gold in the Drude, plasma or generalized-plasma approach."""
    approach = approach.lower()
    if approach == "drude":
        return Drude(AU_OMEGA_P, AU_GAMMA)
    if approach == "plasma":
        return Plasma(AU_OMEGA_P)
    if approach in ("gplasma", "generalized_plasma"):
        return GeneralizedPlasma(AU_OMEGA_P, oscillators)
    raise DomainError(f"no gold preset for approach {approach!r}")


def is_metal(model: PermittivityModel) -> bool:
    return model.zero_frequency().kind != "finite"


"""Lifshitz free energy, pressure and entropy between two parallel plates.

Dimensionless variables are used throughout the kernel::

    x = 2 xi d / c          (Matsubara frequency)
    y = 2 q d,  q = sqrt(k**2 + xi**2 / c**2)

so that::

    F(d, T) = k_B T / (8 pi d**2) * sum'_l  int_{x_l}^inf y  sum_a ln(1 - r_a**2 e^{-y}) dy
    P(d, T) = -k_B T / (8 pi d**3) * sum'_l int_{x_l}^inf y**2 sum_a r_a**2 e^{-y} / (1 - r_a**2 e^{-y}) dy

The ``y`` integral is done with composite Gauss-Legendre in ``u = ln y`` on
``[ln x_l, ln(x_l + Y_SPAN)]``. The rule is fixed (not adaptive), so results
are smooth in ``d`` and ``T``, which keeps finite differences such as the
entropy clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, K_B, ZETA3, check_separation, check_temperature
from .errors import ConvergenceError, DomainError
from .permittivity import PermittivityModel, ZeroFrequency
from .quadrature import panel_nodes

Y_SPAN = 50.0  # e^-50 relative truncation of every y integral
Y_FLOOR = 1e-9  # lower end of the static-mode y integral
X_FLOOR = 1e-10  # lower end of the zero-temperature x integral
N_PANELS = 24
ORDER = 12
ORDER_CHECK = 8  # cheaper rule, only used for the error estimate
MIN_X_STOP = 10.0  # never truncate the Matsubara sum before xi_l > 10 c / 2d


@dataclass(frozen=True)
class LifshitzQuery:
    """Separation ``d`` (m), temperature ``T`` (K) and numerical controls."""

    d: float
    T: float
    rel_tol: float = 1e-7
    max_matsubara_terms: int = 1_000_000

    def __post_init__(self):
        check_separation(self.d)
        check_temperature(self.T)
        if not 0 < self.rel_tol <= 1e-2:
            raise DomainError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol}")
        if self.max_matsubara_terms < 10:
            raise DomainError("max_matsubara_terms must be >= 10")


@dataclass(frozen=True)
class LifshitzValue:
    """A Lifshitz result with its absolute numerical error bound.

    ``value`` is J/m^2 for free energies, Pa for pressures and J/(K m^2) for
    entropies. ``n_terms`` counts the Matsubara terms (0 on the T = 0 path).
    """

    value: float
    est_error: float
    n_terms: int = 0


FreeEnergyPerArea = LifshitzValue


def matsubara_frequencies(T: float, count: int) -> np.ndarray:
    """``[xi_1, ..., xi_count]`` with ``xi_l = 2 pi k_B T l / hbar`` (rad/s)."""
    T = check_temperature(T)
    if T == 0:
        raise DomainError("T = 0 has no Matsubara sum; use the zero-temperature path")
    if count < 1:
        raise DomainError("count must be >= 1")
    return 2.0 * math.pi * K_B * T / HBAR * np.arange(1, count + 1, dtype=float)


def _fresnel(eps, x, y):
    """Reflection amplitudes and ``1 - r**2`` in the dimensionless variables.

    Written so that ``eps -> 1`` and ``eps -> inf`` lose no precision.
    """
    a = (eps - 1.0) * x * x  # (eps - 1) xi^2 (2d/c)^2
    k1 = np.sqrt(y * y + a)
    ey = eps * y
    r_tm = (eps - 1.0) * ((eps + 1.0) * y * y - x * x) / (ey + k1) ** 2
    r_te = -a / (y + k1) ** 2
    om_tm = 4.0 * k1 * ey / (ey + k1) ** 2  # 1 - r_tm^2
    om_te = 4.0 * k1 * y / (y + k1) ** 2
    return r_tm, r_te, om_tm, om_te


def reflection_coefficients(eps: float, k: float, xi: float) -> tuple[float, float]:
    """Fresnel ``(r_TM, r_TE)`` on the imaginary axis.

    ``eps`` is the permittivity at ``i xi``, ``k`` the transverse wave
    vector (rad/m) and ``xi`` the frequency (rad/s).
    """
    if eps < 1 or k < 0 or xi < 0 or (k == 0 and xi == 0):
        raise DomainError("need eps >= 1, k >= 0, xi >= 0 and not k = xi = 0")
    if math.isinf(eps):
        return (1.0, -1.0) if xi > 0 else (1.0, 0.0)
    # any length scale works; choose the one making y = 2 q d = 1
    x = xi / math.hypot(k * C, xi)
    r_tm, r_te, _, _ = _fresnel(eps, x, 1.0)
    return float(r_tm), float(r_te)


def _static_fresnel(zero: ZeroFrequency, d: float, y):
    """Fresnel data for the l = 0 term."""
    ones = np.ones_like(y)
    zeros = np.zeros_like(y)
    if zero.kind == "finite":
        e0 = zero.coefficient
        r = (e0 - 1.0) / (e0 + 1.0)
        return r * ones, zeros, (1.0 - r * r) * ones, ones
    if zero.kind == "inverse_xi":
        return ones, zeros, zeros, ones
    w2 = zero.coefficient * (2.0 * d / C) ** 2
    k1 = np.sqrt(y * y + w2)
    return ones, -w2 / (y + k1) ** 2, zeros, 4.0 * k1 * y / (y + k1) ** 2


def _mode_integrals(model: PermittivityModel, d: float, x: np.ndarray, order: int = ORDER):
    """For each ``x`` return ``(I_F, I_P)``, the free-energy and pressure
    ``y`` integrals summed over both polarizations.

    ``x == 0`` selects the static term.
    """
    x = np.asarray(x, dtype=float)
    lower = np.where(x > 0, x, Y_FLOOR)
    u, w = panel_nodes(np.log(lower), np.log(lower + Y_SPAN), N_PANELS, order)
    y = np.exp(u)
    w = w * y  # dy = y du
    ey = np.exp(-y)

    r_tm = np.empty_like(y)
    r_te = np.empty_like(y)
    om_tm = np.empty_like(y)
    om_te = np.empty_like(y)
    dyn = x > 0
    if dyn.any():
        xi = x[dyn] * C / (2.0 * d)
        eps = np.asarray(model.eps(xi), dtype=float)[:, None]
        r_tm[dyn], r_te[dyn], om_tm[dyn], om_te[dyn] = _fresnel(eps, x[dyn, None], y[dyn])
    if (~dyn).any():
        r_tm[~dyn], r_te[~dyn], om_tm[~dyn], om_te[~dyn] = _static_fresnel(
            model.zero_frequency(), d, y[~dyn])

    i_f = np.zeros(x.shape)
    i_p = np.zeros(x.shape)
    for r, om in ((r_tm, om_tm), (r_te, om_te)):
        r2 = r * r
        g = om - r2 * np.expm1(-y)  # 1 - r^2 e^{-y}
        i_f += (y * np.log(g) * w).sum(axis=-1)
        i_p += (y * y * r2 * ey / g * w).sum(axis=-1)
    return i_f, i_p


def _kernel(model, d, x, which, order=ORDER):
    i_f, i_p = _mode_integrals(model, d, x, order)
    return i_f if which == "F" else i_p


def _matsubara_sum(model, q: LifshitzQuery, which: str) -> tuple[float, float, int]:
    """Primed Matsubara sum of the ``which`` kernel ('F' or 'P').

    Returns ``(sum, error_bound, n_terms)`` in dimensionless units.
    """
    d = q.d
    step = 4.0 * math.pi * K_B * q.T * d / (HBAR * C)  # x_1
    block = int(min(max(math.ceil(60.0 / step), 16), 4096))
    if MIN_X_STOP / step > q.max_matsubara_terms:
        # cannot reach the exponential tail within budget; hand back the
        # continuum (Euler-Maclaurin leading order) estimate instead
        integral, _ = _zero_temperature_integral(model, d, which)
        raise ConvergenceError(
            f"Matsubara sum needs about {MIN_X_STOP / step:.3g} terms, "
            f"more than max_matsubara_terms = {q.max_matsubara_terms}",
            estimate=integral / step, error_bound=abs(integral / step) * min(1.0, 10 * step))

    static = _kernel(model, d, np.zeros(1), which)
    static_c = _kernel(model, d, np.zeros(1), which, ORDER_CHECK)
    terms = [0.5 * static[0]]
    quad_err = 0.5 * abs(static[0] - static_c[0])

    start = 1
    prev = None
    while True:
        if start > q.max_matsubara_terms:
            partial = math.fsum(terms)
            raise ConvergenceError(
                f"Matsubara sum not converged after {q.max_matsubara_terms} terms",
                estimate=partial, error_bound=abs(terms[-1]) / max(step, 1e-300))
        stop = min(start + block, q.max_matsubara_terms + 1)
        ls = np.arange(start, stop, dtype=float)
        x = ls * step
        vals = _kernel(model, d, x, which)
        check = _kernel(model, d, x, which, ORDER_CHECK)
        running = math.fsum(terms) + np.cumsum(vals)
        shifted = np.concatenate([[prev if prev is not None else np.nan], vals[:-1]])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(shifted != 0, np.abs(vals / shifted), 1.0)
        ratio = np.clip(np.nan_to_num(ratio, nan=1.0), 0.0, 1.0 - 1e-15)
        ratio = np.maximum(ratio, math.exp(-step))
        tail = np.abs(vals) * ratio / (1.0 - ratio)
        good = (tail < q.rel_tol * np.abs(running)) & (x > MIN_X_STOP)
        if good.any():
            cut = int(np.argmax(good))
            terms.extend(vals[: cut + 1].tolist())
            quad_err += float(np.abs(vals[: cut + 1] - check[: cut + 1]).sum())
            n = start + cut
            return math.fsum(terms), quad_err + float(tail[cut]), n
        terms.extend(vals.tolist())
        quad_err += float(np.abs(vals - check).sum())
        prev = vals[-1]
        start = stop


def _zero_temperature_integral(model, d, which) -> tuple[float, float]:
    """``int_0^inf I(x) dx`` using Gauss-Legendre in ``ln x``."""
    upper = 2.0 * Y_SPAN
    u, w = panel_nodes(math.log(X_FLOOR), math.log(upper), N_PANELS, ORDER)
    x = np.exp(u)
    vals = _kernel(model, d, x, which)
    total = float((vals * w * x).sum())
    uc, wc = panel_nodes(math.log(X_FLOOR), math.log(upper), N_PANELS, ORDER_CHECK)
    xc = np.exp(uc)
    coarse = float((_kernel(model, d, xc, which, ORDER_CHECK) * wc * xc).sum())
    # below X_FLOOR the integrand is flat at its static value
    head = X_FLOOR * float(_kernel(model, d, np.array([X_FLOOR]), which)[0])
    return total + head, abs(total - coarse) + abs(head)


def _scaled_sum(model, q, which, scale):
    """``_matsubara_sum`` whose failure reports carry physical units."""
    try:
        return _matsubara_sum(model, q, which)
    except ConvergenceError as exc:
        est = None if exc.estimate is None else scale * exc.estimate
        bound = None if exc.error_bound is None else abs(scale) * exc.error_bound
        raise ConvergenceError(str(exc), estimate=est, error_bound=bound) from None


def free_energy_per_area(model: PermittivityModel, q: LifshitzQuery) -> LifshitzValue:
    """Casimir free energy per unit area (J/m^2) between two plates of ``model``."""
    d = q.d
    if q.T == 0:
        s, err = _zero_temperature_integral(model, d, "F")
        pref = HBAR * C / (32.0 * math.pi**2 * d**3)
        return LifshitzValue(pref * s, pref * err, 0)
    pref = K_B * q.T / (8.0 * math.pi * d**2)
    s, err, n = _scaled_sum(model, q, "F", pref)
    return LifshitzValue(pref * s, pref * err, n)


def casimir_pressure(model: PermittivityModel, q: LifshitzQuery) -> LifshitzValue:
    """Casimir pressure (Pa, negative = attraction) from the pressure kernel."""
    d = q.d
    if q.T == 0:
        s, err = _zero_temperature_integral(model, d, "P")
        pref = HBAR * C / (32.0 * math.pi**2 * d**4)
        return LifshitzValue(-pref * s, pref * err, 0)
    pref = K_B * q.T / (8.0 * math.pi * d**3)
    s, err, n = _scaled_sum(model, q, "P", -pref)
    return LifshitzValue(-pref * s, pref * err, n)


def static_te_contribution(model: PermittivityModel, d: float, T: float) -> float:
    """Free energy per area (J/m^2) carried by the l = 0 TE term alone."""
    d = check_separation(d)
    zero = model.zero_frequency()
    lower = Y_FLOOR
    u, w = panel_nodes(math.log(lower), math.log(lower + Y_SPAN), N_PANELS, ORDER)
    y = np.exp(u)
    _, r_te, _, om_te = _static_fresnel(zero, d, y)
    g = om_te - r_te**2 * np.expm1(-y)
    integral = float((y * np.log(g) * w * y).sum())
    return 0.5 * K_B * T / (8.0 * math.pi * d**2) * integral


def entropy_per_area(model: PermittivityModel, d: float, T: float, dT: float | None = None,
                     rel_tol: float = 1e-12) -> LifshitzValue:
    """Casimir entropy per unit area, ``-dF/dT`` by central difference.

    The free energies are evaluated at ``rel_tol / 10``. ``est_error`` adds the
    Richardson estimate of the step error to the propagated numerical error.
    """
    d = check_separation(d)
    T = check_temperature(T)
    if dT is None:
        dT = 0.1 * T
    if not T > dT > 0:
        raise DomainError(f"need T > dT > 0, got T={T}, dT={dT}")
    tol = rel_tol / 10.0

    def central(h):
        hi = free_energy_per_area(model, LifshitzQuery(d, T + h, tol))
        lo = free_energy_per_area(model, LifshitzQuery(d, T - h, tol))
        return -(hi.value - lo.value) / (2.0 * h), (hi.est_error + lo.est_error) / (2.0 * h)

    s_h, e_h = central(dT)
    s_half, e_half = central(0.5 * dT)
    step_err = 4.0 / 3.0 * abs(s_h - s_half)
    return LifshitzValue(s_h, float(step_err + e_h + e_half), 0)


def asymptotic_force(approach: str, R: float, d: float, T: float) -> float:
    """Large-separation sphere-plate force (N) for the Drude or plasma approach.

    ``-zeta(3) R k_B T / (8 d**2)`` for Drude and twice that for plasma.
    """
    if not R > 0:
        raise DomainError("R must be > 0")
    d = check_separation(d)
    if not T > 0:
        raise DomainError("T must be > 0")
    base = -ZETA3 * R * K_B * T / (8.0 * d * d)
    approach = approach.lower()
    if approach == "drude":
        return base
    if approach in ("plasma", "gplasma"):
        return 2.0 * base
    raise DomainError(f"unknown approach {approach!r}")


def ideal_metal_free_energy(d: float) -> float:
    """``-pi**2 hbar c / (720 d**3)``, J/m^2."""
    return -math.pi**2 * HBAR * C / (720.0 * d**3)


def ideal_metal_pressure(d: float) -> float:
    """``-pi**2 hbar c / (240 d**4)``, Pa."""
    return -math.pi**2 * HBAR * C / (240.0 * d**4)

"""Sphere (lens) - plate forces from plate free energies.

Simple PFA::

    F(d, T) = 2 pi R F_pp(d, T)

Imperfect lens: the surface is split into patches with curvature-radius
weights ``R_i`` (summing to ``R``), patch ``i`` sitting ``D_i`` farther
from the plate::

    F(d, T) = sum_i 2 pi R_i F_pp(d + D_i, T)

A single bubble of radius ``R1`` at the point of closest approach is the
two-patch case ``[(R - R1, D), (R1, 0)]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .constants import check_separation
from .errors import ConfigurationError, DomainError
from .lifshitz import LifshitzQuery, free_energy_per_area
from .permittivity import PermittivityModel

FreeEnergy = Callable[[float], float]


@dataclass(frozen=True)
class SphereGeometry:
    """Lens of curvature radius ``R`` (m)."""

    R: float
    R_uncertainty: float | None = None

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError("R must be > 0")

    def check_regime(self, d: float) -> None:
        if self.R / d <= 100:
            warnings.warn(f"PFA used outside R >> d (R/d = {self.R / d:.3g})", stacklevel=3)


@dataclass(frozen=True)
class Imperfection:
    """Surface patch of curvature radius ``R1`` offset by ``D`` (both m).

    ``D > 0`` moves the patch away from the plate.
    """

    R1: float
    D: float = 0.0

    def __post_init__(self):
        if not self.R1 >= 0:
            raise DomainError("R1 must be >= 0")


def _lifshitz_energy(model, T, rel_tol):
    def energy(d):
        return free_energy_per_area(model, LifshitzQuery(d, T, rel_tol)).value
    return energy


def pfa_force(geom: SphereGeometry, model: PermittivityModel, d: float, T: float,
              rel_tol: float = 1e-7, energy: FreeEnergy | None = None) -> float:
    """Force (N) on a perfect lens. ``energy`` overrides the Lifshitz free energy."""
    d = check_separation(d)
    geom.check_regime(d)
    energy = energy or _lifshitz_energy(model, T, rel_tol)
    return 2.0 * math.pi * geom.R * energy(d)


def single_bubble(geom: SphereGeometry, R1: float, D: float) -> list[Imperfection]:
    """Patch list for one bubble of radius ``R1``; the rest of the lens is at ``+D``."""
    if not 0 <= R1 <= geom.R:
        raise DomainError("need 0 <= R1 <= R")
    return [Imperfection(geom.R - R1, D), Imperfection(R1, 0.0)]


def pfa_force_imperfect(geom: SphereGeometry, imps: Sequence[Imperfection],
                        model: PermittivityModel, d: float, T: float,
                        rel_tol: float = 1e-7, energy: FreeEnergy | None = None) -> float:
    """Force (N) on a lens described by a list of patches.

    The patch radii must sum to ``geom.R``; each shifted separation
    ``d + D_i`` must stay positive.
    """
    d = check_separation(d)
    total_r = math.fsum(p.R1 for p in imps)
    if not math.isclose(total_r, geom.R, rel_tol=1e-9):
        raise ConfigurationError(f"patch radii sum to {total_r}, expected R = {geom.R}")
    geom.check_regime(d)
    energy = energy or _lifshitz_energy(model, T, rel_tol)
    parts = []
    for p in imps:
        if p.R1 == 0:
            continue
        if not d + p.D > 0:
            raise DomainError(f"d + D = {d + p.D} <= 0")
        parts.append(2.0 * math.pi * p.R1 * energy(d + p.D))
    return math.fsum(parts)


@dataclass(frozen=True)
class MasqueradeResult:
    R1: float
    D: float
    max_rel_dev: float
    matched: bool
    grid: np.ndarray  # separations used (m)
    nuisance: tuple[float, float] | None = None

    def deviation_on(self, target: np.ndarray, candidate: np.ndarray) -> float:
        return float(np.max(np.abs(candidate / target - 1.0)))


def _best_weight(target, near, far, nuisance_basis):
    """Least-squares fraction ``a = (R - R1)/R`` for fixed ``D``.

    The candidate is ``a * far + (1 - a) * near``, linear in ``a``; with the
    nuisance basis the extra columns are fitted jointly.
    """
    scale = 1.0 / target
    cols = [(far - near) * scale]
    if nuisance_basis is not None:
        cols.extend(b * scale for b in nuisance_basis)
    X = np.stack(cols, axis=1)
    rhs = (target - near) * scale
    coef, *_ = np.linalg.lstsq(X, rhs, rcond=None)
    return coef


def find_masquerade(target: np.ndarray, model_b: PermittivityModel, d_grid: Sequence[float],
                    T: float, geom: SphereGeometry, *, rel_tol: float = 1e-7,
                    r1_range=(0.5, 1.0), d_range=(-1e-6, 1e-6), n_grid: int = 60,
                    threshold: float = 0.5, nuisance: bool = False,
                    energy: FreeEnergy | None = None) -> MasqueradeResult:
    """Bubble ``(R1, D)`` making model B's imperfect-lens force mimic ``target``.

    ``target`` holds the forces (N) to reproduce at ``d_grid``. The
    objective is the summed squared relative deviation; the search is a
    ``n_grid x n_grid`` scan over ``R1/R`` and ``D`` followed by
    golden-section refinement in ``D`` (``R1`` is solved in closed form
    because the force is linear in it). ``matched`` is False when the best
    max relative deviation exceeds ``threshold``.

    With ``nuisance=True`` a free ``c1/d + c2`` term, the shape of the patch
    and offset terms of the two-parameter fit, is absorbed before comparing.
    """
    ds = np.array([check_separation(d) for d in d_grid])
    target = np.asarray(target, dtype=float)
    if target.shape != ds.shape:
        raise DomainError("target must align with d_grid")
    energy = energy or _lifshitz_energy(model_b, T, rel_tol)
    R = geom.R
    near = 2.0 * math.pi * R * np.array([energy(d) for d in ds])
    basis = (1.0 / ds, np.ones_like(ds)) if nuisance else None
    a_lo, a_hi = 1.0 - r1_range[1], 1.0 - r1_range[0]
    D_lo = max(d_range[0], -0.99 * ds.min())
    D_hi = d_range[1]
    cache: dict[float, np.ndarray] = {}

    def far(D):
        if D not in cache:
            cache[D] = 2.0 * math.pi * R * np.array([energy(d + D) for d in ds])
        return cache[D]

    def candidate(a, D, coef_rest=()):
        f = a * far(D) + (1.0 - a) * near
        for c, b in zip(coef_rest, basis or ()):
            f = f + c * b
        return f

    def solve(D):
        coef = _best_weight(target, near, far(D), basis)
        a = float(np.clip(coef[0], a_lo, a_hi))
        rest = coef[1:]
        if basis is not None and a != coef[0]:
            # refit nuisance terms with the clipped weight
            resid = (target - candidate(a, D)) / target
            X = np.stack([b / target for b in basis], axis=1)
            rest, *_ = np.linalg.lstsq(X, resid, rcond=None)
        f = candidate(a, D, rest)
        return float(np.sum((f / target - 1.0) ** 2)), a, tuple(float(c) for c in rest)

    # coarse scan
    best = (math.inf, 0.0, 0.0, ())
    for D in np.linspace(D_lo, D_hi, n_grid):
        f_far = far(float(D))
        for a in np.linspace(a_lo, a_hi, n_grid):
            f = a * f_far + (1.0 - a) * near
            rest = ()
            if basis is not None:
                X = np.stack([b / target for b in basis], axis=1)
                rest, *_ = np.linalg.lstsq(X, (target - f) / target, rcond=None)
                f = f + sum(c * b for c, b in zip(rest, basis))
            obj = float(np.sum((f / target - 1.0) ** 2))
            if obj < best[0]:
                best = (obj, float(a), float(D), tuple(rest))

    # golden-section refinement in D around the coarse optimum
    step = (D_hi - D_lo) / (n_grid - 1)
    lo, hi = max(D_lo, best[2] - step), min(D_hi, best[2] + step)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, e = hi - invphi * (hi - lo), lo + invphi * (hi - lo)
    fc, fe = solve(c), solve(e)
    for _ in range(40):
        if fc[0] < fe[0]:
            hi, e, fe = e, c, fc
            c = hi - invphi * (hi - lo)
            fc = solve(c)
        else:
            lo, c, fc = c, e, fe
            e = lo + invphi * (hi - lo)
            fe = solve(e)
    refined = min((fc[0], fc[1], c, fc[2]), (fe[0], fe[1], e, fe[2]), key=lambda t: t[0])
    if refined[0] < best[0]:
        best = refined

    _, a, D, rest = best
    f = candidate(a, D, rest)
    dev = float(np.max(np.abs(f / target - 1.0)))
    return MasqueradeResult(
        R1=(1.0 - a) * R, D=D, max_rel_dev=dev, matched=dev < threshold, grid=ds,
        nuisance=tuple(rest) if nuisance else None)


def masquerade_deviation(result: MasqueradeResult, target: np.ndarray, model_b: PermittivityModel,
                         d_grid: Sequence[float], T: float, geom: SphereGeometry,
                         rel_tol: float = 1e-7) -> float:
    """Max relative deviation of the bubble found earlier on another grid."""
    imps = single_bubble(geom, result.R1, result.D)
    cand = np.array([pfa_force_imperfect(geom, imps, model_b, d, T, rel_tol) for d in d_grid])
    if result.nuisance is not None:
        c1, c2 = result.nuisance
        cand = cand + c1 / np.asarray(d_grid) + c2
    return float(np.max(np.abs(cand / np.asarray(target) - 1.0)))


def thermal_correction(drude: PermittivityModel, plasma: PermittivityModel, d: float,
                       T: float, rel_tol: float = 1e-9) -> dict[str, float]:
    """Relative thermal correction of the Drude-approach PFA force at ``d``.

    Both candidate baselines are reported: the Drude force at ``T = 0``
    and the plasma-approach force at ``T``. The PFA prefactor cancels.
    """
    f_t = free_energy_per_area(drude, LifshitzQuery(d, T, rel_tol)).value
    f_0 = free_energy_per_area(drude, LifshitzQuery(d, 0.0, rel_tol)).value
    f_p = free_energy_per_area(plasma, LifshitzQuery(d, T, rel_tol)).value
    return {"vs_zero_temperature": f_t / f_0 - 1.0, "vs_plasma": f_t / f_p - 1.0}

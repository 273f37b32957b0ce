"""Two-parameter force fits and chi-squared statistics.

The measured total force is modelled as::

    F(d) = F_C(d) - pi eps0 R V_rms**2 / d - a

which is linear in ``beta = (V_rms**2, a)``, so the weighted least-squares
optimum is solved in closed form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import EPS0, PN, UM
from .errors import DataError, DegenerateDesignError, DomainError

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ForceDataset:
    """Measured forces ``F`` (N, attraction negative) with one-sigma errors at ``d`` (m)."""

    d: np.ndarray
    F: np.ndarray
    sigma: np.ndarray
    label: str = ""

    def __post_init__(self):
        d = np.array(self.d, dtype=float)
        F = np.array(self.F, dtype=float)
        sigma = np.array(self.sigma, dtype=float)
        if not (d.ndim == 1 and d.shape == F.shape == sigma.shape):
            raise DataError("d, F and sigma must be 1-D and of equal length")
        if d.size < 3:
            raise DataError(f"need at least 3 points, got {d.size}")
        if not np.all(np.isfinite(d) & np.isfinite(F) & np.isfinite(sigma)):
            raise DataError("non-finite entries in dataset")
        if np.any(d <= 0) or np.any(np.diff(d) <= 0):
            raise DataError("separations must be positive and strictly increasing")
        if np.any(sigma <= 0):
            raise DataError("every sigma must be > 0")
        for arr in (d, F, sigma):
            arr.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "sigma", sigma)

    def __len__(self):
        return self.d.size

    def subset(self, dmin: float | None = None, dmax: float | None = None) -> "ForceDataset":
        mask = np.ones(self.d.shape, dtype=bool)
        if dmin is not None:
            mask &= self.d > dmin
        if dmax is not None:
            mask &= self.d < dmax
        if mask.sum() < 3:
            raise DataError(f"subset keeps {int(mask.sum())} points; at least 3 are needed")
        label = f"{self.label} [{int(mask.sum())} of {len(self)} points]"
        return ForceDataset(self.d[mask], self.F[mask], self.sigma[mask], label)

    def with_systematic(self, sigma_sys: float) -> "ForceDataset":
        """Add a separation-independent instrumental error (N) in quadrature."""
        if sigma_sys < 0:
            raise DomainError("sigma_sys must be >= 0")
        sigma = np.hypot(self.sigma, sigma_sys)
        return ForceDataset(self.d, self.F, sigma, f"{self.label} (+{sigma_sys:g} N systematic)")


@dataclass(frozen=True)
class FitResult:
    V_rms: float  # V, carries the sign of the fitted V_rms**2
    a: float  # N
    chi2: float
    nu: int
    chi2_red: float
    Q: float
    covariance: np.ndarray = field(repr=False)  # of (V_rms**2, a)
    vrms_squared: float = 0.0
    n_points: int = 0
    diagnostics: tuple[str, ...] = ()


def total_force_model(d, casimir, V_rms: float, a: float, R: float):
    """Casimir force plus large-patch term minus constant offset (N)."""
    d = np.asarray(d, dtype=float)
    out = np.asarray(casimir, dtype=float) - math.pi * EPS0 * R * V_rms**2 / d - a
    return float(out) if out.ndim == 0 else out


def _gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by its power series."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(100_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    else:
        raise ArithmeticError("incomplete gamma series did not converge")
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by modified Lentz continued fraction."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    dd = 1.0 / b
    h = dd
    for i in range(1, 100_000):
        an = -i * (i - a)
        b += 2.0
        dd = an * dd + b
        if abs(dd) < tiny:
            dd = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        dd = 1.0 / dd
        delta = dd * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ArithmeticError("incomplete gamma continued fraction did not converge")
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_q(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x) / Gamma(a)."""
    if not a > 0 or x < 0:
        raise DomainError("need a > 0 and x >= 0")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def chi2_tail_probability(chi2: float, nu: int) -> float:
    """Probability that a chi-squared variate with ``nu`` dof exceeds ``chi2``."""
    if chi2 < 0 or nu < 1:
        raise DomainError(f"need chi2 >= 0 and nu >= 1, got {chi2}, {nu}")
    q = regularized_gamma_q(0.5 * nu, 0.5 * chi2)
    return min(1.0, max(0.0, q))


def fit_two_param(data: ForceDataset, casimir_curve, R: float) -> FitResult:
    """Weighted least squares for ``(V_rms**2, a)`` with ``casimir_curve`` fixed."""
    fc = np.asarray(casimir_curve, dtype=float)
    if fc.shape != data.d.shape:
        raise DataError("casimir_curve must align with the dataset")
    if not R > 0:
        raise DomainError("R must be > 0")
    w = 1.0 / data.sigma**2
    k = math.pi * EPS0 * R / data.d  # design column for V_rms^2 (entering with a minus sign)
    y = data.F - fc  # = -k beta1 - beta2
    sw = w.sum()
    k_bar = (w * k).sum() / sw
    y_bar = (w * y).sum() / sw
    skk = (w * (k - k_bar) ** 2).sum()
    if not skk > 1e-14 * (w * k * k).sum():
        raise DegenerateDesignError("normal equations are singular (separations not distinct)")
    beta1 = -(w * (k - k_bar) * (y - y_bar)).sum() / skk
    beta2 = -y_bar - beta1 * k_bar

    resid = y + k * beta1 + beta2
    chi2 = float((w * resid**2).sum())
    nu = len(data) - 2
    cov = np.array([[1.0 / skk, -k_bar / skk],
                    [-k_bar / skk, 1.0 / sw + k_bar**2 / skk]])
    diagnostics = []
    if beta1 < 0:
        msg = f"fitted V_rms^2 = {beta1:.4g} V^2 is negative; V_rms reported as -sqrt(|V_rms^2|)"
        log.warning(msg)
        diagnostics.append(msg)
    v_rms = math.copysign(math.sqrt(abs(beta1)), beta1)
    return FitResult(
        V_rms=v_rms, a=float(beta2), chi2=chi2, nu=nu, chi2_red=chi2 / nu,
        Q=chi2_tail_probability(chi2, nu), covariance=cov, vrms_squared=float(beta1),
        n_points=len(data), diagnostics=tuple(diagnostics))


def relative_errors(data: ForceDataset) -> np.ndarray:
    """``100 * sigma / |F|`` per point; zero-force points come back as nan."""
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 100.0 * data.sigma / np.abs(data.F)
    out[data.F == 0] = np.nan
    if np.isnan(out).any():
        log.warning("relative error undefined at %d zero-force point(s)", int(np.isnan(out).sum()))
    return out


def dataset_from_arrays(d_um, f_pn, sigma_pn, label="", attractive_magnitudes=False) -> ForceDataset:
    """Build a dataset from boundary units (um, pN)."""
    F = np.asarray(f_pn, dtype=float) * PN
    if attractive_magnitudes:
        F = -np.abs(F)
    return ForceDataset(np.asarray(d_um, dtype=float) * UM, F, np.asarray(sigma_pn, dtype=float) * PN, label)

"""Thermal Casimir forces between real metals: Lifshitz theory, PFA,
electrostatic patch forces and two-parameter chi-squared fits."""

__version__ = "0.1.0"

from .constants import CONST, convert_energy_to_angular_frequency  # noqa: E402,F401
from .permittivity import (  # noqa: E402,F401
    DielectricCore, Drude, Extrapolation, GeneralizedPlasma, OpticalDataTable, Oscillator,
    Plasma, TabulatedOptical, au_preset, eval_permittivity, kramers_kronig_imaginary_axis,
    zero_frequency_behavior)
from .lifshitz import (  # noqa: E402,F401
    LifshitzQuery, asymptotic_force, casimir_pressure, entropy_per_area, free_energy_per_area,
    matsubara_frequencies, reflection_coefficients)
from .pfa import (  # noqa: E402,F401
    Imperfection, SphereGeometry, find_masquerade, pfa_force, pfa_force_imperfect)
from .electrostatics import (  # noqa: E402,F401
    ElectrostaticParams, applied_voltage_force, patch_force, patch_scale_window)
from .fitstats import (  # noqa: E402,F401
    FitResult, ForceDataset, chi2_tail_probability, fit_two_param, relative_errors,
    total_force_model)

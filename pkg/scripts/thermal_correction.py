"""Relative thermal correction of the Drude-model force versus separation.

Both baselines are shown: the Drude force at T = 0 and the plasma force
at the same temperature.

    python scripts/thermal_correction.py
"""

import numpy as np

from casimir_lab.constants import UM
from casimir_lab.permittivity import au_preset
from casimir_lab.pfa import thermal_correction

from _common import save


def main():
    drude, plasma = au_preset("drude"), au_preset("plasma")
    rows = []
    for d in np.geomspace(0.2 * UM, 10 * UM, 15):
        tc = thermal_correction(drude, plasma, d, 300.0)
        rows.append([d / UM, 100 * tc["vs_zero_temperature"], 100 * tc["vs_plasma"]])
    save("thermal_correction", ["d_um", "vs_T0_pct", "vs_plasma_pct"], rows, {"temperature_K": 300.0})


if __name__ == "__main__":
    main()

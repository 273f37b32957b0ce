"""Plate-plate Casimir pressure for Au, Drude vs plasma, 162 nm to 746 nm at 300 K.

    python scripts/pressure_curves.py [--points N]
"""

import argparse

import numpy as np

from casimir_lab.constants import NM
from casimir_lab.lifshitz import LifshitzQuery, casimir_pressure
from casimir_lab.permittivity import au_preset

from _common import save


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=30)
    ap.add_argument("--temp", type=float, default=300.0)
    args = ap.parse_args()

    drude, plasma = au_preset("drude"), au_preset("plasma")
    rows = []
    for d in np.linspace(162 * NM, 746 * NM, args.points):
        q = LifshitzQuery(d, args.temp, 1e-8)
        pd, pp = casimir_pressure(drude, q).value, casimir_pressure(plasma, q).value
        rows.append([d / NM, pd * 1e3, pp * 1e3, 100 * (pp / pd - 1)])
    save("pressure_curves", ["d_nm", "P_drude_mPa", "P_plasma_mPa", "plasma_excess_pct"], rows,
         {"temperature_K": args.temp, "models": "Au presets"})


if __name__ == "__main__":
    main()

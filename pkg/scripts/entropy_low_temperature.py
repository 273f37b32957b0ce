"""Casimir entropy per area at 1 um as T falls, Drude vs plasma.

With a temperature-independent relaxation parameter the Drude entropy
stays negative but keeps drifting toward zero below 1 K; the plasma
entropy falls like T**2.

    python scripts/entropy_low_temperature.py [--sep 1um]
"""

import argparse

from casimir_lab.constants import parse_length
from casimir_lab.lifshitz import entropy_per_area
from casimir_lab.permittivity import au_preset

from _common import save

TEMPS = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sep", default="1um")
    args = ap.parse_args()
    d = parse_length(args.sep)
    drude, plasma = au_preset("drude"), au_preset("plasma")
    rows = []
    for T in TEMPS:
        sd = entropy_per_area(drude, d, T)
        sp = entropy_per_area(plasma, d, T)
        rows.append([T, sd.value, sd.est_error, sp.value, sp.est_error])
        print(f"T = {T:g} K done", flush=True)
    save("entropy_low_temperature", ["T_K", "S_drude", "err_drude", "S_plasma", "err_plasma"], rows,
         {"separation_m": d, "units": "J/(K m^2)"})


if __name__ == "__main__":
    main()

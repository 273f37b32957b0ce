"""Sphere-plate forces at large separation against the classical limit.

Prints the full Lifshitz/PFA force for both models, their ratio and the
ratio of each to ``-zeta(3) R k_B T / (8 d^2)`` (doubled for plasma).

    python scripts/large_separation.py
"""

from casimir_lab.constants import CM, PN, UM
from casimir_lab.lifshitz import asymptotic_force
from casimir_lab.permittivity import au_preset
from casimir_lab.pfa import SphereGeometry, pfa_force

from _common import save


def main():
    geom = SphereGeometry(15.6 * CM)
    drude, plasma = au_preset("drude"), au_preset("plasma")
    rows = []
    for d_um in (3, 5, 7, 10, 15, 20):
        d = d_um * UM
        fd = pfa_force(geom, drude, d, 300.0, 1e-9)
        fp = pfa_force(geom, plasma, d, 300.0, 1e-9)
        rows.append([d_um, fd / PN, fp / PN, fp / fd,
                     fd / asymptotic_force("drude", geom.R, d, 300.0),
                     fp / asymptotic_force("plasma", geom.R, d, 300.0)])
    save("large_separation",
         ["d_um", "F_drude_pN", "F_plasma_pN", "ratio", "drude_over_limit", "plasma_over_limit"],
         rows, {"temperature_K": 300.0, "radius_m": geom.R})


if __name__ == "__main__":
    main()

"""Can a bubbled plasma lens imitate a perfect Drude lens?

Searches ``(R1, D)`` over 0.7-3 um, then checks the same bubble over
3-7 um. Run once with pure Casimir curves and once with free patch and
offset terms absorbed, as a two-parameter fit would.

    python scripts/masquerade_scan.py
"""

import numpy as np

from casimir_lab.constants import CM, UM
from casimir_lab.permittivity import au_preset
from casimir_lab.pfa import SphereGeometry, find_masquerade, masquerade_deviation, pfa_force

from _common import save


def main():
    geom = SphereGeometry(15.6 * CM)
    drude, plasma = au_preset("drude"), au_preset("plasma")
    near = np.linspace(0.7 * UM, 3 * UM, 12)
    far = np.linspace(3 * UM, 7 * UM, 9)
    t_near = np.array([pfa_force(geom, drude, d, 300.0) for d in near])
    t_far = np.array([pfa_force(geom, drude, d, 300.0) for d in far])
    rows = []
    for nuisance in (False, True):
        for d_hi in (1 * UM, 5 * UM, 50 * UM):
            res = find_masquerade(t_near, plasma, near, 300.0, geom, r1_range=(0.0, 1.0),
                                  d_range=(-0.6 * UM, d_hi), nuisance=nuisance, threshold=0.10)
            dev_far = masquerade_deviation(res, t_far, plasma, far, 300.0, geom)
            rows.append([nuisance, d_hi / UM, res.R1 / CM, res.D / UM,
                         100 * res.max_rel_dev, 100 * dev_far])
    save("masquerade_scan",
         ["nuisance", "D_max_um", "R1_cm", "D_um", "dev_0.7_3um_pct", "dev_3_7um_pct"], rows,
         {"temperature_K": 300.0, "match_threshold_pct": 10})


if __name__ == "__main__":
    main()

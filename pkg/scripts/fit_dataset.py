"""Two-parameter fits of a force dataset under both models.

Fits the full dataset and the ``d > 3 um`` subset. Defaults to the
bundled example (placeholder rows, see its header).

    python scripts/fit_dataset.py [--data CSV] [--sigma-sys PN]
"""

import argparse
from importlib import resources

import numpy as np

from casimir_lab.constants import CM, MV, PN, UM
from casimir_lab.fitstats import fit_two_param
from casimir_lab.io import read_dataset
from casimir_lab.permittivity import au_preset
from casimir_lab.pfa import SphereGeometry, pfa_force

from _common import save


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--data", default=str(resources.files("casimir_lab") / "data/example_dataset.csv"))
    ap.add_argument("--sigma-sys", type=float, default=0.0, help="pN, added in quadrature")
    args = ap.parse_args()

    geom = SphereGeometry(15.6 * CM)
    data = read_dataset(args.data, attractive_magnitudes=True)
    if args.sigma_sys:
        data = data.with_systematic(args.sigma_sys * PN)
    rows = []
    for label, subset in (("all", data), ("d>3um", data.subset(dmin=3 * UM))):
        for name in ("drude", "plasma"):
            model = au_preset(name)
            fc = np.array([pfa_force(geom, model, d, 300.0) for d in subset.d])
            r = fit_two_param(subset, fc, geom.R)
            rows.append([label, name, len(subset), r.V_rms / MV, r.a / PN, r.chi2_red, r.Q])
    save("fit_dataset", ["subset", "model", "n", "V_rms_mV", "a_pN", "chi2_red", "Q"], rows,
         {"dataset": args.data, "sigma_sys_pN": args.sigma_sys})


if __name__ == "__main__":
    main()

"""Residual of the one-holed torus identity against the length cap."""

import csv
import sys
from dataclasses import dataclass

from hypsurf.holonomy import build_one_holed_torus, torus_from_traces
from hypsurf.identities import mcshane_torus_report


@dataclass
class Config:
    caps: tuple = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0)


def main(cfg: Config):
    surfaces = {
        "traces 3,3,4": torus_from_traces(3.0, 3.0, 4.0),
        "fn cuff 2 twist 0.3 boundary 1": build_one_holed_torus(2.0, 0.3, 1.0),
        "fn cuff 1 twist 0 boundary 3": build_one_holed_torus(1.0, 0.0, 3.0),
    }
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["surface", "cap", "curves", "residual"])
    for name, g in surfaces.items():
        for cap in cfg.caps:
            r = mcshane_torus_report(g, cap)
            w.writerow([name, cap, r.terms_used, repr(r.residual)])


if __name__ == "__main__":
    main(Config())

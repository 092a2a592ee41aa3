"""Family estimates of d(X, Y) and d(Y, X) as the middle cuff of the
asymmetry X-piece contracts from alpha1_x to smaller values."""

import csv
import sys
from dataclasses import dataclass

from hypsurf.arcmetric import thurston_asymmetry


@dataclass
class Config:
    alpha1_x: float = 0.5
    targets: tuple = (0.4, 0.3, 0.2, 0.1, 0.05)
    depth: int = 3
    twist_max: int = 4


def main(cfg: Config):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["alpha1_y", "d_xy", "witness_xy", "d_yx", "witness_yx", "gap"])
    for a in cfg.targets:
        r = thurston_asymmetry(cfg.alpha1_x, a, cfg.depth, cfg.twist_max)
        w.writerow([a, repr(r.d_xy.sup_log_ratio), r.d_xy.witness.label,
                    repr(r.d_yx.sup_log_ratio), r.d_yx.witness.label, repr(r.gap)])


if __name__ == "__main__":
    main(Config())

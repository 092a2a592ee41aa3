"""Residual of the orthospectrum identity against maximal word length."""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from hypsurf.holonomy import build_pants
from hypsurf.identities import basmajian_report


@dataclass
class Config:
    pants: tuple = ((4.0, 4.0, 4.0), (2.0, 3.0, 5.0), (1.0, 1.0, 1.0))
    max_k: int = 10


def main(cfg: Config):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["pants", "source", "k", "terms", "residual", "seconds"])
    for p in cfg.pants:
        g = build_pants(*p)
        for src in g.labels:
            for k in range(1, cfg.max_k + 1):
                t0 = time.perf_counter()
                r = basmajian_report(g, src, k)
                w.writerow([":".join(map(str, p)), src, k, r.terms_used, repr(r.residual),
                            f"{time.perf_counter() - t0:.2f}"])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=Config.max_k)
    main(Config(max_k=ap.parse_args().max_k))

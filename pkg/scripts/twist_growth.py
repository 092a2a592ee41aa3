"""(1/n) l(t^n gamma) against l(alpha) i(alpha, gamma) for transverse arcs."""

import csv
import sys
from dataclasses import dataclass

from hypsurf import words as W
from hypsurf.holonomy import FNSurface, Gluing, build_chain, x_piece
from hypsurf.identities import arc_length


@dataclass
class Config:
    ns: tuple = (1, 2, 4, 8, 16, 32, 64, 128)
    cuffs: tuple = (0.5, 1.0, 2.0, 4.0)


def main(cfg: Config):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["surface", "cuff", "n", "rate", "relative_error"])
    for cuff in cfg.cuffs:
        for name, fn in (("x-piece", x_piece((4.0, 4.0, 4.0, 4.0), cuff)),
                         ("torus", FNSurface([(cuff, cuff, 1.0)], [Gluing((0, 0), (0, 1), 0.0)], {"1": (0, 2)}))):
            g = build_chain(fn)
            tr = g.transversals["c0"]
            for n in cfg.ns:
                word = W.reduce(W.power(g.cuff_words["c0"], n) + tr.word)
                rate = arc_length(g, tr.source, tr.target, word) / n
                w.writerow([name, cuff, n, repr(rate), repr(rate / (cuff * tr.intersection) - 1.0)])


if __name__ == "__main__":
    main(Config())

"""One-line summaries of the distance-to-boundary example families."""

import math
from dataclasses import dataclass

from hypsurf.starcheck import (
    SHIGA_FAMILIES, collar_insert_check, constant_alpha_flute, halving_flute_check, lemma52_bounds,
    polygon_example_check, shiga_check,
)


@dataclass
class Config:
    window: int = 200
    flute_n: int = 40


def main(cfg: Config):
    for name, seq in (("linear", lambda n: n + 1.0), ("log", lambda n: math.log(n + 2.0))):
        r = lemma52_bounds(1.0, seq, cfg.window)
        print(f"hexagon chain ({name}): sup {r.running_sup[-1]:.6f} <= {r.bound:.6f}  {r.passed}")
    t = halving_flute_check(cfg.flute_n)
    print(f"halving flute: total {t.total_with_tail!r}, condition -> {t.condition_values[-1]:.9f}, "
          f"majorant -> {t.majorant_values[-1]:.9f}")
    r = constant_alpha_flute(0.5, lambda n: 1.0 + n, 50)
    print(f"constant-alpha flute: sup {r.running_sup[-1]:.6f} <= {r.bound:.6f}  {r.passed}")
    c = collar_insert_check(1000)
    print(f"collar inserts: mismatch {c.max_mismatch:.1e}, n0 = {c.n0}, l'_1000 = {c.lengths[-1]!r}")
    p = polygon_example_check(range(3, 101))
    print(f"trirectangles: max L {p.running_sup[-1]:.6f} < asinh 2 = {p.bound:.6f}  {p.passed}")
    for name, fam in SHIGA_FAMILIES.items():
        s = shiga_check(fam)
        print(f"{name}: cuffs in [{s.min:.4g}, {s.max:.4g}], bounded {s.bounded}")


if __name__ == "__main__":
    main(Config())

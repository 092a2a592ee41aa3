"""Length functions on curve and arc classes, and family-restricted estimates
of the asymmetric arc metric d(X, Y) = log sup l_c(Y) / l_c(X).

A class is stored combinatorially: a word for closed curves, and a
(source, target, coset witness) triple for arcs. The same class can then be
measured on any surface sharing the marking. Every sup reported here runs over
a finite family and is a lower estimate of the metric.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from . import words as W
from .holonomy import FNSurface, SurfaceGroup, build_chain, curve_length
from .hyptrig import hexagon_opposite
from .identities import arc_length, lift_key, ortho_spectrum

KINDS = ("boundary", "interior-closed", "arc")


class InvalidClassError(ValueError):
    pass


class MarkingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CurveClass:
    kind: str
    label: str
    word: str = ""
    source: str = ""
    target: str = ""
    intersection: int = 0  # with the cuff it was twisted along, when known

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidClassError(f"unknown kind {self.kind!r}")
        if self.kind == "arc" and not (self.source and self.target):
            raise InvalidClassError("an arc needs source and target boundaries")

    @property
    def key(self) -> tuple:
        return (self.kind, self.word, self.source, self.target)


def class_length(g: SurfaceGroup, c: CurveClass) -> float:
    if c.kind == "arc":
        for lab in (c.source, c.target):
            if lab not in g.boundary_words:
                raise InvalidClassError(f"no boundary {lab!r}")
        try:
            return arc_length(g, c.source, c.target, c.word)
        except ValueError as exc:
            raise InvalidClassError(str(exc)) from exc
    if c.kind == "boundary" and c.word not in g.boundary_words.values():
        raise InvalidClassError(f"{c.word!r} is not a boundary word")
    if any(ch.lower() >= W.letter(len(g.generators)) for ch in c.word):
        raise InvalidClassError(f"{c.word!r} uses letters outside the group")
    return curve_length(g, c.word)


def band_word(g: SurfaceGroup, source: str, target: str, word: str) -> str:
    """Closed curve around source, the arc and target: the product of the two
    boundary elements with the smaller |trace|. The other product is a figure eight."""
    s = g.boundary_words[source]
    t = W.reduce(word + g.boundary_words[target] + W.invert(word))
    cands = [W.reduce(s + t), W.reduce(s + W.invert(t))]
    traces = [abs(g.element(w, g.frame_for(w)).trace) for w in cands]
    return cands[0] if traces[0] <= traces[1] else cands[1]


def _self_reverse_dupe(g, t, kept_keys) -> bool:
    if t.source != t.target:
        return False
    d, side, ph = lift_key(g, t.source, t.target, W.invert(t.word))
    period = g.boundary_lengths[t.source]
    for d2, s2, p2 in kept_keys.get(t.source, []):
        dp = abs(ph - p2) % period
        if s2 == side and abs(d - d2) <= 1e-9 * max(1.0, d) and min(dp, period - dp) <= 1e-7:
            return True
    return False


def generate_family(fn: FNSurface, depth: int, twist_max: int) -> list[CurveClass]:
    """Boundaries, decomposition curves, twisted transverse arcs t^n(gamma) for
    n = 0..twist_max with their band curves, and arc classes with witness
    length <= depth. Order is deterministic; each class appears once."""
    if depth < 0 or twist_max < 0:
        raise ValueError("depth and twist_max must be >= 0")
    g = build_chain(fn)
    out: list[CurveClass] = []
    seen: set[tuple] = set()

    def add(c: CurveClass):
        if c.key not in seen:
            seen.add(c.key)
            out.append(c)

    geodesic = [lab for lab in g.labels if g.boundary_lengths[lab] > 0.0]
    for lab in geodesic:
        add(CurveClass("boundary", f"boundary {lab}", g.boundary_words[lab]))
    for cuff, w in g.cuff_words.items():
        add(CurveClass("interior-closed", f"cuff {cuff}", w))
    for cuff, tr in sorted(g.transversals.items()):
        c = g.cuff_words[cuff]
        for n in range(twist_max + 1):
            w = W.reduce(W.power(c, n) + tr.word)
            add(CurveClass("arc", f"twist {n} of arc across {cuff}", w, tr.source, tr.target,
                           tr.intersection))
            add(CurveClass("interior-closed", f"twist {n} of band across {cuff}",
                           band_word(g, tr.source, tr.target, w), intersection=2 * tr.intersection))
    kept_keys: dict[str, list] = {}
    for i, src in enumerate(geodesic):
        for t in ortho_spectrum(g, src, depth):
            if geodesic.index(t.target) < i or _self_reverse_dupe(g, t, kept_keys):
                continue
            if t.source == t.target:
                kept_keys.setdefault(src, []).append(lift_key(g, src, src, t.word))
            add(CurveClass("arc", f"arc {t.source}-{t.target} [{t.word}]", t.word, t.source, t.target))
    return out


@dataclass
class RatioReport:
    sup_log_ratio: float
    witness: CurveClass
    family_size: int
    table: list[dict] = field(default_factory=list)


def _check_marking(x: SurfaceGroup, y: SurfaceGroup):
    if (len(x.generators) != len(y.generators) or x.boundary_words != y.boundary_words
            or x.cuff_words != y.cuff_words):
        raise MarkingMismatchError("surfaces do not share a marking")


def sup_log_ratio(x: SurfaceGroup, y: SurfaceGroup, family: list[CurveClass]) -> RatioReport:
    """max over the family of log(l_c(Y) / l_c(X)); the first maximizer wins ties."""
    _check_marking(x, y)
    if not family:
        raise ValueError("empty family")
    table = []
    best, witness = -math.inf, None
    for c in family:
        lx, ly = class_length(x, c), class_length(y, c)
        if lx <= 0.0 or ly <= 0.0:
            raise InvalidClassError(f"{c.label} has zero length")
        r = math.log(ly / lx)
        table.append({"label": c.label, "kind": c.kind, "length_x": lx, "length_y": ly, "log_ratio": r})
        if r > best:
            best, witness = r, c
    return RatioReport(best, witness, len(family), table)


@dataclass(frozen=True)
class SupSplit:
    sup_AB: float
    sup_AS: float

    @property
    def gap(self) -> float:
        return self.sup_AS - self.sup_AB


def boundary_vs_interior_sup(x: SurfaceGroup, y: SurfaceGroup, family: list[CurveClass]) -> SupSplit:
    """Sup over arcs plus boundaries against sup over arcs plus all closed curves."""
    rep = sup_log_ratio(x, y, family)
    ab = max(r["log_ratio"] for r in rep.table if r["kind"] in ("arc", "boundary"))
    return SupSplit(ab, rep.sup_log_ratio)


def ratio_csv(report: RatioReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "kind", "length_x", "length_y", "log_ratio"])
    for r in report.table:
        w.writerow([r["label"], r["kind"], repr(r["length_x"]), repr(r["length_y"]), repr(r["log_ratio"])])
    return buf.getvalue()


# the asymmetry X-piece

ASYMMETRY_BOUNDARY = 2.0 * math.asinh(1.0)  # sinh(l/2) = 1


def asymmetry_piece(alpha1: float, twist: float = 0.0) -> FNSurface:
    """X-piece with four boundaries of length 2 asinh 1 and middle cuff alpha1.

    Labels: "1", "2" share a pants with the cuff, as do "3", "4". With zero
    twist the seams toward "2" and "3" meet the cuff at the same point, so
    the shortest arc from "2" to "3" is their concatenation.
    """
    l = ASYMMETRY_BOUNDARY
    return FNSurface([(l, l, alpha1), (alpha1, l, l)], [_gluing(twist)],
                     {"1": (0, 1), "2": (0, 0), "3": (1, 1), "4": (1, 2)})


def _gluing(twist):
    from .holonomy import Gluing
    return Gluing((0, 2), (1, 0), twist)


@dataclass(frozen=True)
class AsymmetryCurves:
    alpha1: float
    alpha2: float
    gamma1: float
    gamma2: float
    gamma2_word: str
    alpha2_word: str


def asymmetry_curves(g: SurfaceGroup, depth: int = 4) -> AsymmetryCurves:
    """gamma1: shortest arc 1-2, gamma2: shortest arc 2-3, alpha1: the cuff,
    alpha2: band curve of 2, gamma2 and 3. All measured from the group."""
    spec2 = ortho_spectrum(g, "2", depth)
    g1 = min(t.length for t in spec2 if t.target == "1")
    t2 = min((t for t in spec2 if t.target == "3"), key=lambda t: t.length)
    a2w = band_word(g, "2", "3", t2.word)
    return AsymmetryCurves(curve_length(g, g.cuff_words["c0"]), curve_length(g, a2w), g1, t2.length,
                           t2.word, a2w)


@dataclass
class AsymmetryReport:
    x: AsymmetryCurves
    y: AsymmetryCurves
    d_xy: RatioReport
    d_yx: RatioReport
    eq_x: dict
    inequalities: dict

    @property
    def gap(self) -> float:
        return abs(self.d_xy.sup_log_ratio - self.d_yx.sup_log_ratio)


def thurston_asymmetry(alpha1_x: float, alpha1_y: float, depth: int = 3, twist_max: int = 4) -> AsymmetryReport:
    """Contract the middle cuff from alpha1_x to alpha1_y, keeping the
    boundaries, and estimate d(X, Y) and d(Y, X) over one shared family."""
    fx, fy = asymmetry_piece(alpha1_x), asymmetry_piece(alpha1_y)
    gx, gy = build_chain(fx), build_chain(fy)
    family = generate_family(fx, depth, twist_max)
    cx, cy = asymmetry_curves(gx), asymmetry_curves(gy)
    b = ASYMMETRY_BOUNDARY
    eq = {
        "cosh_gamma1": math.cosh(cx.gamma1),
        "cosh_half_alpha1_plus_2": math.cosh(cx.alpha1 / 2) + 2.0,
        "cosh_quarter_alpha2": math.cosh(cx.alpha2 / 4),
        "sinh_half_beta_sinh_half_gamma2": math.sinh(b / 2) * math.sinh(cx.gamma2 / 2),
    }
    ly2 = class_length(gy, CurveClass("arc", "gamma2", cx.gamma2_word, "2", "3"))
    la2 = class_length(gy, CurveClass("interior-closed", "alpha2", cx.alpha2_word))
    ineq = {
        "gamma2_ratio": ly2 / cx.gamma2,
        "alpha2_ratio": la2 / cx.alpha2,
        "gamma1_ratio": cx.gamma1 / cy.gamma1,
        "alpha1_ratio": cx.alpha1 / cy.alpha1,
    }
    ineq["holds"] = ineq["gamma2_ratio"] <= ineq["alpha2_ratio"] and ineq["gamma1_ratio"] <= ineq["alpha1_ratio"]
    return AsymmetryReport(cx, cy, sup_log_ratio(gx, gy, family), sup_log_ratio(gy, gx, family), eq, ineq)


def seam_length(b1: float, b2: float, cuff: float) -> float:
    """Closed-form seam between cuffs b1, b2 of the pants (b1, b2, cuff)."""
    return hexagon_opposite(cuff / 2, b1 / 2, b2 / 2)

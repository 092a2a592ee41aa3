"""Windowed checks of the distance-to-boundary bounds on the example families.

Every "for all n" statement is evaluated on a finite window. Where a
monotone majorant or a closed-form tail is available it is evaluated as well,
and reports say which of the two a bound rests on.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .holonomy import FNSurface
from .hyptrig import (
    LOG2,
    collar_width,
    cusp_constant,
    equidistant_length,
    hexagon_opposite,
    inverse_cusp_constant,
    lemma_hexagon_distances,
    lemma_hexagon_majorants,
    pentagon_distance,
    right_triangle_leg,
    trirect_solve,
)

LengthSeq = Sequence[float] | Callable[[int], float]


class NonIncreasingError(ValueError):
    pass


class ZeroLengthError(ValueError):
    pass


class UnknownRuleError(ValueError):
    pass


@dataclass
class BoundReport:
    """Per-index values, running sup of their max, and the claimed bound.
    passed is True iff the running sup never exceeds the bound."""

    n_range: list[int]
    values: dict[str, list[float]]
    running_sup: list[float]
    bound: float
    passed: bool
    basis: str  # "window" or "tail-bounded"
    extra: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        keys = list(self.values)
        return [dict(n=n, **{k: self.values[k][i] for k in keys}, running_sup=self.running_sup[i])
                for i, n in enumerate(self.n_range)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        keys = list(self.values)
        w.writerow(["n", *keys, "running_sup"])
        for r in self.rows():
            w.writerow([r["n"], *(repr(r[k]) for k in keys), repr(r["running_sup"])])
        return buf.getvalue()


def _take(seq: LengthSeq, start: int, count: int) -> list[float]:
    if callable(seq):
        return [float(seq(n)) for n in range(start, start + count)]
    vals = [float(x) for x in seq]
    if len(vals) < count:
        raise ValueError(f"need {count} terms, got {len(vals)}")
    return vals[:count]


def _running(cols: dict[str, list[float]]) -> list[float]:
    out, cur = [], -math.inf
    for row in zip(*cols.values()):
        cur = max(cur, *row)
        out.append(cur)
    return out


def lemma52_bounds(l0: float, l_seq: LengthSeq, N: int) -> BoundReport:
    """Vertex distances a_n, b_n, c_n, d_n of the hexagons with alternate sides
    (l0, l_n, l_n), for n = 1..N, with l_seq strictly increasing.

    The claimed bound is the largest majorant from the proof evaluated at l_1.
    The majorants decrease in l_n, so this bound covers every n, not only the window.
    """
    if not l0 > 0.0:
        raise ZeroLengthError("l0 must be positive")
    ls = _take(l_seq, 1, N)
    if ls[0] <= 0.0:
        raise ZeroLengthError("lengths must be positive")
    if any(b <= a for a, b in zip(ls, ls[1:])):
        raise NonIncreasingError("sequence must be strictly increasing")
    cols: dict[str, list[float]] = {"a": [], "b": [], "c": [], "d": []}
    for ln in ls:
        v = lemma_hexagon_distances(l0, ln)
        for k in cols:
            cols[k].append(getattr(v, k))
    maj = lemma_hexagon_majorants(l0, ls[0], ls[0])
    bound = max(maj)
    run = _running(cols)
    d_limit = math.asinh(math.sqrt(2.0 * math.cosh(l0) + 2.0))
    return BoundReport(list(range(1, N + 1)), cols, run, bound, run[-1] <= bound, "tail-bounded",
                       {"majorants_at_l1": maj._asdict(), "d_limit": d_limit})


def prop54_bounds(alpha_half: LengthSeq, beta_half: LengthSeq, N: int,
                  bound: float | None = None) -> BoundReport:
    """Vertex distances of the flute hexagons with alternate sides
    (beta'_n, alpha'_n, alpha'_{n+1}) for n = 0..N-1, where primes are half lengths.

    Also reports the cuff-to-cuff distances d_i and their partial sums. Without
    a claimed bound the window sup is reported and passed means only that it is finite.
    """
    al = _take(alpha_half, 0, N + 1)
    be = _take(beta_half, 0, N)
    if min(al) <= 0.0 or min(be) <= 0.0:
        raise ZeroLengthError("all half lengths must be positive")
    cols: dict[str, list[float]] = {"a": [], "b": [], "c": [], "d": []}
    gaps, sums, total = [], [], 0.0
    for n in range(N):
        a = hexagon_opposite(al[n + 1], al[n], be[n])
        b = hexagon_opposite(al[n], al[n + 1], be[n])
        cols["a"].append(a)
        cols["b"].append(b)
        cols["c"].append(math.asinh(math.sinh(a) * math.cosh(al[n])))
        cols["d"].append(math.asinh(math.sinh(b) * math.cosh(al[n + 1])))
        gap = hexagon_opposite(be[n], al[n], al[n + 1])
        total += gap
        gaps.append(gap)
        sums.append(total)
    run = _running(cols)
    if bound is None:
        return BoundReport(list(range(N)), cols, run, math.inf, math.isfinite(run[-1]), "window",
                           {"cuff_distances": gaps, "cuff_distance_sums": sums})
    return BoundReport(list(range(N)), cols, run, bound, run[-1] <= bound, "window",
                       {"cuff_distances": gaps, "cuff_distance_sums": sums})


def constant_alpha_flute(l0: float, beta_half: LengthSeq, N: int) -> BoundReport:
    """Flute with every alpha'_n = l0 and beta'_n strictly increasing.

    Here a_n = b_n with cosh a_n <= 2 coth(beta'_n) coth(l0), a decreasing
    envelope, so its value at n = 0 bounds every n; the check is per index.
    """
    be = _take(beta_half, 0, N)
    if any(b <= a for a, b in zip(be, be[1:])):
        raise NonIncreasingError("beta'_n must be strictly increasing")
    env = [2.0 / math.tanh(b) / math.tanh(l0) for b in be]
    top = max(math.acosh(env[0]), math.asinh(env[0] * math.cosh(l0)))
    rep = prop54_bounds([l0] * (N + 1), be, N, bound=top)
    per_index = all(math.cosh(a) <= e * (1 + 1e-15) for a, e in zip(rep.values["a"], env))
    rep.extra.update(envelope=env, envelope_holds=per_index)
    rep.basis = "tail-bounded"
    rep.passed = rep.passed and per_index
    return rep


@dataclass
class TightFluteReport:
    lengths: list[float]
    d_seq: list[float]
    total: float
    total_with_tail: float | None
    condition_values: list[float]
    majorant_values: list[float]
    sup: float
    cross_check: float


def tight_flute_check(l_seq: LengthSeq, N: int,
                      tail: Callable[[int], float] | None = None) -> TightFluteReport:
    """Tight flute with a cusp at the start and cuffs l_1, l_2, ...

    d_0 = log 2 + c(l_1) and d_i = c(l_i) + c(l_{i+1}), with c(l) = log coth(l/4).
    `tail(n)` should return sum_{i >= n} c(l_i) in closed form; given it,
    the total and the condition values sinh(sum_{i >= n-1} d_i) cosh(l_n/2)
    for n = 2..N are exact rather than truncated.
    """
    ls = _take(l_seq, 1, N + 1)
    if min(ls) <= 0.0:
        raise ZeroLengthError("cuff lengths must be positive")
    c = [LOG2] + [cusp_constant(l) for l in ls]  # c[i] belongs to l_i, c[0] to the cusp
    d = [c[i] + c[i + 1] for i in range(N)]
    total = math.fsum(d)
    cross = max((abs(d[i] - pentagon_distance(ls[i - 1], ls[i])) for i in range(1, N)), default=0.0)
    if tail is None:
        return TightFluteReport(ls, d, total, None, [], [], math.nan, cross)
    with_tail = total + c[N] + 2.0 * tail(N + 1)
    cond, maj = [], []
    for n in range(2, N + 1):
        # sum_{i >= n-1} d_i = c_{n-1} + 2 sum_{i >= n} c_i, bounded by 2 sum_{i >= n-1} c_i
        s = c[n - 1] + 2.0 * tail(n)
        cond.append(math.sinh(s) * math.cosh(0.5 * ls[n - 1]))
        maj.append(math.sinh(2.0 * tail(n - 1)) * math.cosh(0.5 * ls[n - 1]))
    return TightFluteReport(ls, d, total, with_tail, cond, maj, max(cond), cross)


def halving_flute_lengths(n: int) -> float:
    """Cuff l_n with log coth(l_n/4) = 2^-n."""
    return inverse_cusp_constant(2.0 ** -n)


def halving_flute_tail(n: int) -> float:
    """sum_{i >= n} 2^-i."""
    return 2.0 ** (1 - n)


def halving_flute_check(N: int) -> TightFluteReport:
    return tight_flute_check(halving_flute_lengths, N, halving_flute_tail)


@dataclass
class CollarInsertReport:
    n_range: list[int]
    lengths: list[float]
    closed_form: list[float]
    max_mismatch: float
    n0: int | None
    eps0: float


def collar_insert_check(N: int, eps0: float = 1e-3) -> CollarInsertReport:
    """Equidistant curves at the collar width around geodesics of length 1/(2n).

    Reports l'_n = (1/2n) cosh r_n next to sqrt(1/4n^2 + 4/(4n sinh(1/4n))^2),
    and the first n0 after which 2 - eps0 < l'_n <= 2 + eps0 on the whole window.
    """
    lens, closed = [], []
    for n in range(1, N + 1):
        g = 1.0 / (2 * n)
        lens.append(equidistant_length(g, collar_width(g)))
        closed.append(math.sqrt(1.0 / (4 * n * n) + 4.0 / (4 * n * math.sinh(1.0 / (4 * n))) ** 2))
    mism = max(abs(a - b) for a, b in zip(lens, closed))
    n0 = None
    for k in range(N - 1, -1, -1):
        if not (2.0 - eps0 < lens[k] <= 2.0 + eps0):
            break
        n0 = k + 1
    return CollarInsertReport(list(range(1, N + 1)), lens, closed, mism, n0, eps0)


POLYGON_PIECE_BOUND = math.asinh(2.0)
POLYGON_CONSTANT = 2.0 * math.asinh(2.0)


def polygon_example_check(n_range: Sequence[int]) -> BoundReport:
    """Trirectangles with angle pi/n and sin(theta) cosh(alpha) = 2, n >= 3.

    Per n: cosh a = 2, beta < alpha, sinh L = sin(theta) sinh(beta) < 2 and
    cosh(beta) sinh(a) = sinh(alpha); beta must increase with n. The bound
    is the per-piece arcsinh 2; the glued constant 2 arcsinh 2 is reported.
    """
    ns = list(n_range)
    if not ns or min(ns) < 3:
        raise ValueError("need n >= 3")
    cols: dict[str, list[float]] = {k: [] for k in ("alpha", "a", "b", "beta", "L")}
    worst = {"cosh_a": 0.0, "beta_identity": 0.0, "sinh_b": 0.0}
    ok = True
    for n in ns:
        th = math.pi / n
        alpha = math.acosh(2.0 / math.sin(th))
        t = trirect_solve(th, alpha)
        big_l = right_triangle_leg(th, t.beta)
        for k, v in zip(cols, (alpha, t.a, t.b, t.beta, big_l)):
            cols[k].append(v)
        worst["cosh_a"] = max(worst["cosh_a"], abs(math.cosh(t.a) - 2.0))
        worst["beta_identity"] = max(worst["beta_identity"],
                                     abs(math.cosh(t.beta) * math.sinh(t.a) / math.sinh(alpha) - 1.0))
        worst["sinh_b"] = max(worst["sinh_b"], abs(math.sinh(t.b) - math.cos(th) / math.sqrt(3.0)))
        ok &= t.beta < alpha and math.sinh(big_l) < 2.0
    increasing = all(b > a for a, b in zip(cols["beta"], cols["beta"][1:]))
    run, cur = [], -math.inf
    for v in cols["L"]:
        cur = max(cur, v)
        run.append(cur)
    passed = ok and increasing and worst["cosh_a"] <= 1e-12 and run[-1] < POLYGON_PIECE_BOUND
    return BoundReport(ns, cols, run, POLYGON_PIECE_BOUND, passed, "window",
                       {"worst": worst, "beta_increasing": increasing, "constant": POLYGON_CONSTANT})


# bounded pants decompositions

@dataclass(frozen=True)
class CuffFamily:
    """Cuff lengths of an infinite decomposition given by a rule.

    rule is "constant" (value), "to_infinity" or "to_zero"; `length(n)` gives
    the n-th cuff and is used on the window only.
    """
    name: str
    rule: str
    length: Callable[[int], float]
    window: int = 200


RULES = ("constant", "to_infinity", "to_zero")


@dataclass(frozen=True)
class ShigaReport:
    min: float
    max: float
    bounded: bool
    rule: str


def shiga_check(family: CuffFamily | FNSurface) -> ShigaReport:
    """Whether the cuff lengths stay inside [m, M] with 0 < m <= M < inf.

    For a rule-based family the verdict follows the rule; the window only
    supplies the reported min and max. A finite surface is judged by its cuffs.
    """
    if isinstance(family, FNSurface):
        vals = [family.length(g.first) for g in family.gluings] or [l for p in family.pants for l in p]
        lo, hi = min(vals), max(vals)
        return ShigaReport(lo, hi, lo > 0.0 and math.isfinite(hi), "finite")
    if family.rule not in RULES:
        raise UnknownRuleError(f"unknown rule {family.rule!r}")
    vals = [family.length(n) for n in range(1, family.window + 1)]
    lo, hi = min(vals), max(vals)
    return ShigaReport(lo, hi, family.rule == "constant" and lo > 0.0, family.rule)


SHIGA_FAMILIES = {
    "unit-flute": CuffFamily("unit-flute", "constant", lambda n: 1.0),
    "growing-beta-flute": CuffFamily("growing-beta-flute", "to_infinity", lambda n: 2.0 * (n + 1)),
    "collar-insert-flute": CuffFamily("collar-insert-flute", "to_zero", lambda n: 1.0 / (2 * n)),
}

"""Closed-form hyperbolic trigonometry.

Lengths are plain floats in hyperbolic units. A length of 0 stands for a cusp
wherever a boundary length is expected; each function states whether 0 is legal.
All functions are pure double-precision evaluations.
"""

from __future__ import annotations

import math
from typing import NamedTuple

LOG2 = math.log(2.0)


class DegenerateError(ValueError):
    """A side length that must be positive was zero (a sinh in a denominator vanishes)."""


class DomainError(ValueError):
    """The requested polygon does not exist for the given data."""


def _nonneg(*xs: float) -> None:
    for x in xs:
        if not x >= 0.0:
            raise DomainError(f"length must be nonnegative, got {x!r}")


def _acosh_1p(delta: float) -> float:
    """arccosh(1 + delta), accurate for small delta."""
    return math.log1p(delta + math.sqrt(delta * (delta + 2.0)))


def hexagon_opposite(s1: float, s2: float, s3: float) -> float:
    """Side t of a right-angled hexagon opposite s1, where s1, s2, s3 are pairwise
    non-adjacent: cosh t = (cosh s1 + cosh s2 cosh s3) / (sinh s2 sinh s3)."""
    _nonneg(s1, s2, s3)
    if s2 == 0.0 or s3 == 0.0:
        raise DegenerateError("hexagon sides s2 and s3 must be positive")
    # cosh t - 1 = (cosh s1 + cosh(s2 - s3)) / (sinh s2 sinh s3)
    delta = (math.cosh(s1) + math.cosh(s2 - s3)) / (math.sinh(s2) * math.sinh(s3))
    return _acosh_1p(delta)


def pentagon_distance(l1: float, l2: float) -> float:
    """Distance between two cuffs of lengths l1, l2 across a pants whose third hole is a cusp."""
    _nonneg(l1, l2)
    if l1 == 0.0 or l2 == 0.0:
        raise DegenerateError("both cuff lengths must be positive")
    h1, h2 = 0.5 * l1, 0.5 * l2
    delta = (1.0 + math.cosh(h1 - h2)) / (math.sinh(h1) * math.sinh(h2))
    return _acosh_1p(delta)


def trirect_perp(d: float, h: float) -> float:
    """Length r with sinh r = sinh d cosh h."""
    _nonneg(d, h)
    return math.asinh(math.sinh(d) * math.cosh(h))


def trirect_angle(a: float, b: float) -> float:
    """Acute angle of a trirectangle whose two sides away from it are a and b."""
    _nonneg(a, b)
    p = math.sinh(a) * math.sinh(b)
    if not p < 1.0:
        raise DomainError(f"sinh a sinh b = {p!r} >= 1: no trirectangle")
    return math.acos(p)


class Trirectangle(NamedTuple):
    a: float
    b: float
    beta: float


def trirect_solve(theta: float, alpha: float) -> Trirectangle:
    """Trirectangle with acute angle theta between sides alpha and beta.

    The four edges in order are alpha, b, a, beta. Relations used:
    cosh a = cosh alpha sin theta, cos theta = sinh a sinh b and
    cosh a / cosh b = cosh alpha / cosh beta.
    """
    if not 0.0 < theta < math.pi:
        raise DomainError("angle must lie in (0, pi)")
    _nonneg(alpha)
    ca = math.cosh(alpha) * math.sin(theta)
    if not ca > 1.0:
        raise DomainError(f"cosh(alpha) sin(theta) = {ca!r} <= 1")
    a = math.acosh(ca)
    b = math.asinh(math.cos(theta) / math.sinh(a))
    if b < 0.0:
        raise DomainError("angle must be acute")
    beta = math.acosh(math.cosh(alpha) * math.cosh(b) / ca)
    return Trirectangle(a, b, beta)


def right_triangle_leg(theta: float, beta: float) -> float:
    """Leg L opposite theta in a right triangle with hypotenuse beta: sinh L = sin theta sinh beta."""
    _nonneg(beta)
    return math.asinh(math.sin(theta) * math.sinh(beta))


def collar_width(b: float) -> float:
    """Half-width arcsinh(1/sinh(b/2)) of the standard collar around a geodesic of length b."""
    _nonneg(b)
    if b == 0.0:
        raise DegenerateError("collar of a cusp is not a finite-width annulus")
    return math.asinh(1.0 / math.sinh(0.5 * b))


def equidistant_length(l: float, r: float) -> float:
    """Length of the curve at distance r from a closed geodesic of length l."""
    _nonneg(l, r)
    return l * math.cosh(r)


def _softplus(x: float) -> float:
    """log(1 + e^x) without overflow."""
    return max(x, 0.0) + math.log1p(math.exp(-abs(x)))


def mcshane_D(x1: float, x2: float, x3: float) -> float:
    """2 log((e^{x1/2} + e^{s}) / (e^{-x1/2} + e^{s})), s = (x2 + x3)/2, in stable form.

    Writing the ratio as 1 + t with
    t = e^{x1/2 - s} (1 - e^{-x1}) / (1 + e^{-x1/2 - s}) gives D = 2 log1p(t).
    """
    _nonneg(x1, x2, x3)
    if x1 == 0.0:
        return 0.0
    s = 0.5 * (x2 + x3)
    log_t = 0.5 * x1 - s + math.log(-math.expm1(-x1)) - math.log1p(math.exp(-0.5 * x1 - s))
    return 2.0 * _softplus(log_t)


def _log_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - LOG2


def mcshane_R(x1: float, x2: float, x3: float) -> float:
    """x1 - log((cosh(x2/2) + cosh((x1+x3)/2)) / (cosh(x2/2) + cosh((x1-x3)/2))), stable form.

    The ratio is 1 + q with
    q = 2 sinh(x1/2) sinh(x3/2) / (cosh(x2/2) + cosh((x1-x3)/2)).
    """
    _nonneg(x1, x2, x3)
    if x1 == 0.0 or x3 == 0.0:
        return x1
    a, b = 0.5 * x2, 0.5 * (x1 - x3)
    la, lb = _log_cosh(a), _log_cosh(b)
    log_den = max(la, lb) + math.log1p(math.exp(-abs(la - lb)))
    log_q = _log_sinh(0.5 * x1) + _log_sinh(0.5 * x3) + LOG2 - log_den
    return x1 - _softplus(log_q)


def _log_sinh(x: float) -> float:
    # x > 0
    return x + math.log(-math.expm1(-2.0 * x)) - LOG2


def log_coth(x: float) -> float:
    """log coth x for x > 0, as 2 atanh(e^{-2x})."""
    if not x > 0.0:
        raise DegenerateError("log coth needs a positive argument")
    return 2.0 * math.atanh(math.exp(-2.0 * x))


def cusp_constant(l: float) -> float:
    """log 2 for a cusp (l = 0), log coth(l/4) for a geodesic of length l."""
    _nonneg(l)
    if l == 0.0:
        return LOG2
    return log_coth(0.25 * l)


def inverse_cusp_constant(c: float) -> float:
    """Length l > 0 with log coth(l/4) = c, i.e. l = 2 log((e^c + 1) / (e^c - 1))."""
    if not c > 0.0:
        raise DomainError("constant must be positive")
    return 2.0 * math.log((math.exp(c) + 1.0) / math.expm1(c))


def basmajian_term(d: float) -> float:
    """Shadow 2 log coth(d/2) of an orthogeodesic of length d, as 4 atanh(e^{-d})."""
    if not d > 0.0:
        raise DegenerateError("orthogeodesic length must be positive")
    return 4.0 * math.atanh(math.exp(-d))


def hexagon_tail_limit(x: float) -> float:
    """cosh^2 x (coth^4 x - 1), evaluated as coth^2 x (coth^2 x + 1); tends to 2."""
    if not x > 0.0:
        raise DegenerateError("argument must be positive")
    c2 = 1.0 / math.tanh(x) ** 2
    return c2 * (c2 + 1.0)


def flute_condition_limit(x: float) -> float:
    """sinh(8 log coth(x/4)) cosh(x/2); tends to 8 as x grows."""
    return math.sinh(8.0 * cusp_constant(x)) * math.cosh(0.5 * x)


class HexagonVertexDistances(NamedTuple):
    a: float
    b: float
    c: float
    d: float


def lemma_hexagon_distances(l0: float, ln: float) -> HexagonVertexDistances:
    """The four vertex distances a, b, c, d of the hexagon cut from a pants
    with cuff half-lengths (l0, ln, ln):

        cosh a = (cosh ln + cosh ln cosh l0) / (sinh ln sinh l0)
        cosh b = (cosh l0 + cosh^2 ln) / sinh^2 ln
        sinh c = sinh a cosh l0
        sinh d = sinh b cosh ln

    d is evaluated through the expanded form
    sinh^2 d = cosh^2 l0 coth^2 ln / sinh^2 ln + 2 coth^4 ln cosh l0 + cosh^2 ln (coth^4 ln - 1),
    which stays accurate for large ln. Which vertex each value belongs to is up to the caller.
    """
    _nonneg(l0, ln)
    if l0 == 0.0 or ln == 0.0:
        raise DegenerateError("lengths must be positive")
    a = math.acosh((1.0 + math.cosh(l0)) / (math.tanh(ln) * math.sinh(l0)))
    # cosh^2 = 1 + sinh^2 keeps b accurate once cosh ln and sinh ln agree in floating point
    b = _acosh_1p((math.cosh(l0) + 1.0) / math.sinh(ln) ** 2)
    c = math.asinh(math.sinh(a) * math.cosh(l0))
    d = math.asinh(math.sqrt(_sinh2_d(l0, ln, ln)))
    return HexagonVertexDistances(a, b, c, d)


def _sinh2_d(l0: float, lm: float, ln: float) -> float:
    # lm feeds the first two summands, ln the last; lm = ln gives the exact value,
    # lm = l1 <= ln gives the majorant
    ct = 1.0 / math.tanh(lm)
    return (math.cosh(l0) ** 2 * ct**2 / math.sinh(lm) ** 2
            + 2.0 * ct**4 * math.cosh(l0) + hexagon_tail_limit(ln))


def lemma_hexagon_majorants(l0: float, l1: float, ln: float) -> HexagonVertexDistances:
    """Upper bounds for the distances above, valid whenever ln >= l1 > 0."""
    _nonneg(l0, l1, ln)
    if l0 == 0.0 or l1 == 0.0 or ln < l1:
        raise DomainError("need l0 > 0 and ln >= l1 > 0")
    ct1, ct0 = 1.0 / math.tanh(l1), 1.0 / math.tanh(l0)
    ch_a = ct1 / math.sinh(l0) + ct1 * ct0
    ch_b = math.cosh(l0) / math.sinh(l1) ** 2 + ct1**2
    a, b = math.acosh(ch_a), math.acosh(ch_b)
    c = math.asinh(ch_a * math.cosh(l0))
    d = math.asinh(math.sqrt(_sinh2_d(l0, l1, ln)))
    return HexagonVertexDistances(a, b, c, d)

"""Isometries and geodesics of the upper half-plane.

Ideal points are floats, with ``math.inf`` standing for the point at infinity
(``-inf`` is identified with it). Isometries are stored as unit-determinant
matrices up to sign, with the sign fixed so that a > 0, or b > 0 when a = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import words as W

INF = math.inf
PARABOLIC_TOL = 1e-9
IDENTITY_TOL = 1e-9


class NotHyperbolicError(ValueError):
    pass


class ExplosionError(RuntimeError):
    """Enumeration would exceed its element cap."""


@dataclass(frozen=True)
class Isometry:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        # skip rescaling when det is 1 up to its own rounding error: for large
        # entries the computed det is noisy and rescaling would only add noise
        det_err = 16.0 * 2.220446049250313e-16 * (abs(self.a * self.d) + abs(self.b * self.c))
        if abs(det - 1.0) <= det_err or det_err > 0.25:
            s = 1.0
        elif det > 0.0 and math.isfinite(det):
            s = 1.0 / math.sqrt(det)
        else:
            raise ValueError(f"matrix must have positive finite determinant, got {det!r}")
        a, b, c, d = (float(v * s) + 0.0 for v in (self.a, self.b, self.c, self.d))
        if a < 0.0 or (a == 0.0 and b < 0.0):
            a, b, c, d = -a, -b, -c, -d
        for k, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, k, v)

    @classmethod
    def from_array(cls, m) -> Isometry:
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def dilation(cls, t: float) -> Isometry:
        """z -> e^t z, translation by t along (0, inf)."""
        return cls(math.exp(0.5 * t), 0.0, 0.0, math.exp(-0.5 * t))

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: Isometry) -> Isometry:
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> Isometry:
        return Isometry(self.d, -self.b, -self.c, self.a)

    def conj(self, g: Isometry) -> Isometry:
        """g self g^-1."""
        return g @ self @ g.inverse()

    def __call__(self, x: float) -> float:
        return mobius(self, x)

    def close_to(self, other: Isometry, tol: float = IDENTITY_TOL) -> bool:
        p = (self.a, self.b, self.c, self.d)
        q = (other.a, other.b, other.c, other.d)
        if all(abs(u - v) <= tol for u, v in zip(p, q)):
            return True
        # a = 0 leaves the sign choice sensitive to rounding
        return all(abs(u + v) <= tol for u, v in zip(p, q))


class Kind(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def classify(m: Isometry) -> Kind:
    if m.close_to(Isometry.identity()):
        return Kind.IDENTITY
    t = abs(m.trace)
    if abs(t - 2.0) <= PARABOLIC_TOL:
        return Kind.PARABOLIC
    return Kind.HYPERBOLIC if t > 2.0 else Kind.ELLIPTIC


def translation_length(m: Isometry) -> float:
    t = abs(m.trace)
    if classify(m) is not Kind.HYPERBOLIC:
        raise NotHyperbolicError(f"|trace| = {t!r} is not hyperbolic")
    return 2.0 * math.acosh(0.5 * t)


def mobius(m: Isometry, x: float) -> float:
    """Action of m on an ideal point."""
    if math.isinf(x):
        return m.a / m.c if m.c != 0.0 else INF
    den = m.c * x + m.d
    if den == 0.0:
        return INF
    return (m.a * x + m.b) / den


def mobius_complex(m: Isometry, z: complex) -> complex:
    return (m.a * z + m.b) / (m.c * z + m.d)


# homogeneous coordinates: x <-> (x, 1), inf <-> (1, 0)

def to_vec(x: float) -> np.ndarray:
    if math.isinf(x):
        return np.array([1.0, 0.0])
    return np.array([x, 1.0])


def from_vec(v) -> float:
    v0, v1 = float(v[0]), float(v[1])
    if v1 == 0.0:
        return INF
    return v0 / v1


def _bracket(p, q) -> float:
    return float(p[0] * q[1] - p[1] * q[0])


@dataclass(frozen=True)
class Geodesic:
    """Complete geodesic with ideal endpoints p, q, oriented from p to q."""

    p: float
    q: float

    def __post_init__(self):
        for k in ("p", "q"):
            v = getattr(self, k)
            if math.isnan(v):
                raise ValueError("endpoint is NaN")
            object.__setattr__(self, k, INF if math.isinf(v) else float(v) + 0.0)
        if self.p == self.q:
            raise ValueError("geodesic endpoints must differ")

    def reversed(self) -> Geodesic:
        return Geodesic(self.q, self.p)

    def endpoints(self) -> frozenset:
        return frozenset((self.p, self.q))


def apply(m: Isometry, g: Geodesic) -> Geodesic:
    return Geodesic(mobius(m, g.p), mobius(m, g.q))


def _fixed_vec(m: Isometry, lam: float) -> np.ndarray:
    """Eigenvector of m for eigenvalue lam, taken from the better conditioned row."""
    v1 = np.array([m.b, lam - m.a])
    v2 = np.array([lam - m.d, m.c])
    v = v1 if np.hypot(*v1) >= np.hypot(*v2) else v2
    return v / np.hypot(*v)


def axis_vectors(m: Isometry) -> tuple[np.ndarray, np.ndarray]:
    """Unit homogeneous vectors of the repelling and attracting fixed points."""
    if classify(m) is not Kind.HYPERBOLIC:
        raise NotHyperbolicError("axis is only defined for hyperbolic elements")
    sgn = 1.0 if m.trace > 0 else -1.0
    t = abs(m.trace)
    lam = 0.5 * (t + math.sqrt((t - 2.0) * (t + 2.0)))
    # eigenvalues of the stored matrix are sgn*lam and sgn/lam
    return _fixed_vec(m, sgn / lam), _fixed_vec(m, sgn * lam)


def axis(m: Isometry) -> Geodesic:
    """Axis of m oriented from the repelling to the attracting fixed point."""
    rep, att = axis_vectors(m)
    return Geodesic(from_vec(rep), from_vec(att))


def parabolic_fixed_point(m: Isometry) -> float:
    if classify(m) is not Kind.PARABOLIC:
        raise ValueError("not parabolic")
    sgn = 1.0 if m.trace > 0 else -1.0
    return from_vec(_fixed_vec(m, sgn))


def frame(rep, att) -> Isometry:
    """Orientation-preserving map sending rep to 0 and att to inf.

    Arguments are ideal points or homogeneous vectors.
    """
    r = to_vec(rep) if np.ndim(rep) == 0 else np.asarray(rep, float)
    t = to_vec(att) if np.ndim(att) == 0 else np.asarray(att, float)
    r = r / np.hypot(*r)
    t = t / np.hypot(*t)
    rows = np.array([[r[1], -r[0]], [t[1], -t[0]]])
    if _bracket(r, t) < 0:
        rows[0] = -rows[0]
    return Isometry.from_array(rows)


def axis_frame(m: Isometry) -> Isometry:
    """F with F m F^-1 = z -> e^l z, l the translation length of m."""
    rep, att = axis_vectors(m)
    return frame(rep, att)


class Relation(str, Enum):
    DISJOINT = "disjoint"
    CROSSING = "crossing"
    SHARED_ENDPOINT = "shared-endpoint"
    EQUAL = "equal"


@dataclass(frozen=True)
class GeodesicRelation:
    distance: float
    relation: Relation


def distance_from_cross_ratio(num: float, den: float, gap: float) -> float:
    """2 atanh(sqrt(cr)) with cr = num/den in (0, 1) and 1 - cr = gap/den."""
    return 2.0 * math.log1p(math.sqrt(num / den)) - math.log(gap / den)


def geodesic_distance(g1: Geodesic, g2: Geodesic) -> GeodesicRelation:
    """Length of the common perpendicular of two geodesics, with their relation.

    With homogeneous brackets [p, q] the cross ratio
    cr = [a,c][b,d] / ([a,d][b,c]) is negative for crossing geodesics, 0 for a
    shared endpoint, and otherwise (after swapping c, d to make it < 1) gives
    the distance 2 atanh(sqrt(cr)). The Plucker relation
    [a,d][b,c] - [a,c][b,d] = [a,b][d,c] supplies 1 - cr without cancellation.
    """
    e1, e2 = g1.endpoints(), g2.endpoints()
    if e1 == e2:
        return GeodesicRelation(0.0, Relation.EQUAL)
    if e1 & e2:
        return GeodesicRelation(0.0, Relation.SHARED_ENDPOINT)
    a, b, c, d = (to_vec(x) for x in (g1.p, g1.q, g2.p, g2.q))
    ac, bd, ad, bc = _bracket(a, c), _bracket(b, d), _bracket(a, d), _bracket(b, c)
    num, den = ac * bd, ad * bc
    if num * den < 0.0:
        return GeodesicRelation(0.0, Relation.CROSSING)
    gap = _bracket(a, b) * _bracket(d, c)
    if abs(num) > abs(den):
        num, den = den, num
        gap = -gap
    return GeodesicRelation(distance_from_cross_ratio(num, den, gap), Relation.DISJOINT)


def point_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance between two points of the upper half-plane."""
    num = abs(z - w) ** 2
    return 2.0 * math.asinh(math.sqrt(num / (4.0 * z.imag * w.imag)))


def evaluate_word(generators: list[Isometry], word: str) -> Isometry:
    m = Isometry.identity()
    for ch in word:
        i, inv = W.letter_index(ch)
        g = generators[i]
        m = m @ (g.inverse() if inv else g)
    return m


def enumerate_group(generators: list[Isometry], max_word_length: int,
                    cap: int = 500_000, tol: float = IDENTITY_TOL) -> list[tuple[Isometry, str]]:
    """Distinct non-identity elements given by reduced words up to the length bound.

    Words are visited breadth-first in shortlex order; the first word reaching a
    matrix (up to sign, within tol) is kept as its witness.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if max_word_length < 1:
        raise ValueError("max_word_length must be at least 1")
    n = len(generators)
    alphabet = W.letters(n)
    mats = {}
    for i, g in enumerate(generators):
        mats[W.letter(i)] = g
        mats[W.letter(i, True)] = g.inverse()
    scale = 1e6
    buckets: dict[tuple, list[int]] = {}
    out: list[tuple[Isometry, str]] = []
    ident = Isometry.identity()

    def key_of(m):
        return tuple(int(math.floor(v * scale)) for v in (m.a, m.b, m.c, m.d))

    def seen(m):
        k = key_of(m)
        for da in (0, -1, 1):
            for db in (0, -1, 1):
                for dc in (0, -1, 1):
                    for dd in (0, -1, 1):
                        for j in buckets.get((k[0] + da, k[1] + db, k[2] + dc, k[3] + dd), ()):
                            if out[j][0].close_to(m, tol):
                                return True
        return False

    level: list[tuple[str, Isometry]] = [("", ident)]
    for _ in range(max_word_length):
        nxt = []
        for w, m in level:
            for ch in alphabet:
                if w and w[-1] == ch.swapcase():
                    continue
                mm = m @ mats[ch]
                ww = w + ch
                nxt.append((ww, mm))
                if mm.close_to(ident, tol) or seen(mm):
                    continue
                if len(out) >= cap:
                    raise ExplosionError(f"more than {cap} elements")
                buckets.setdefault(key_of(mm), []).append(len(out))
                out.append((mm, ww))
        level = nxt
    return out

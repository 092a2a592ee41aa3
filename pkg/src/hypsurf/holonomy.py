"""Discrete groups realizing surfaces glued from pairs of pants.

Pants normal form
-----------------
For cuff lengths (l1, l2, l3) put x = 2 cosh(l1/2), y = 2 cosh(l2/2),
z = -2 cosh(l3/2) and let zeta be the root of zeta + 1/zeta = z with |zeta| >= 1.
Then

    A = [[x, -1], [1, 0]],   B = [[0, zeta], [-1/zeta, y]],   C = (AB)^-1

have |tr| = 2 cosh(l_i/2), so their translation lengths are the cuff lengths,
and a cusp gives a parabolic element. The result is conjugated so that, when
l1 > 0, the axis of A is (0, inf) with A(z) = e^{l1} z. With these signs every
boundary axis, oriented from repelling to attracting point, has the other two
on its left: the pants lies to the left of each of its boundary elements.

Gluing and twist convention
---------------------------
Each slot s of a pants has a seam foot: the foot of the common perpendicular
from slot s to slot s + 1 (mod 3) on the axis of slot s. Gluing slot i of P to
slot j of Q with twist 0 identifies the two seam feet and reverses the
orientation of the cuff, so the conjugated Q-element equals X^-1 where X is P's
element. A positive twist t moves Q's foot a distance t along X in X's own
direction. Standing in P and facing the cuff, that direction is to the left,
and the same holds seen from Q, so the sign does not depend on which side of the
gluing is listed first.

Supported topology: a tree of pants, where a pants may also be glued to itself
along two of its slots (a one-holed torus). Anything with a cycle through two
or more pants is rejected.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from . import words as W
from .halfplane import (
    Isometry,
    Kind,
    axis_frame,
    axis_vectors,
    classify,
    evaluate_word,
    from_vec,
    mobius,
    parabolic_fixed_point,
    translation_length,
)

Slot = tuple[int, int]
LENGTH_TOL = 1e-12


class GluingError(ValueError):
    """Gluing data are inconsistent (length mismatch, reused slot, glued cusp)."""


class UnsupportedTopologyError(ValueError):
    pass


class EllipticError(ValueError):
    """A word evaluated to an elliptic element: the marking or group is invalid."""


@dataclass(frozen=True)
class Gluing:
    first: Slot
    second: Slot
    twist: float = 0.0


@dataclass
class FNSurface:
    """Pants decomposition data.

    ``pants[p]`` holds the three cuff lengths of pants p (0 for a cusp).
    ``boundaries`` maps a label to each unglued slot; when omitted, labels
    "1", "2", ... are assigned in (pants, slot) order.
    """

    pants: list[tuple[float, float, float]]
    gluings: list[Gluing] = field(default_factory=list)
    boundaries: dict[str, Slot] | None = None

    def __post_init__(self):
        self.pants = [tuple(float(v) for v in p) for p in self.pants]
        self.gluings = [
            g if isinstance(g, Gluing) else Gluing(tuple(g[0]), tuple(g[1]), float(g[2]) if len(g) > 2 else 0.0)
            for g in self.gluings
        ]
        self.gluings = [Gluing(tuple(g.first), tuple(g.second), float(g.twist)) for g in self.gluings]
        if self.boundaries is None:
            used = {g.first for g in self.gluings} | {g.second for g in self.gluings}
            free = [(p, s) for p in range(len(self.pants)) for s in range(3) if (p, s) not in used]
            self.boundaries = {str(k + 1): slot for k, slot in enumerate(free)}
        else:
            self.boundaries = {str(k): tuple(v) for k, v in self.boundaries.items()}
        self.validate()

    def length(self, slot: Slot) -> float:
        return self.pants[slot[0]][slot[1]]

    def validate(self) -> None:
        if not self.pants:
            raise GluingError("no pants")
        for p in self.pants:
            if len(p) != 3 or not all(v >= 0.0 and math.isfinite(v) for v in p):
                raise GluingError(f"bad pants lengths {p!r}")
        seen: dict[Slot, str] = {}

        def claim(slot, what):
            p, s = slot
            if not (0 <= p < len(self.pants) and 0 <= s < 3):
                raise GluingError(f"slot {slot!r} does not exist")
            if slot in seen:
                raise GluingError(f"slot {slot!r} used by both {seen[slot]} and {what}")
            seen[slot] = what

        for k, g in enumerate(self.gluings):
            claim(g.first, f"gluing {k}")
            claim(g.second, f"gluing {k}")
            l1, l2 = self.length(g.first), self.length(g.second)
            if l1 == 0.0 or l2 == 0.0:
                raise GluingError(f"gluing {k} glues a cusp")
            if abs(l1 - l2) > LENGTH_TOL * max(1.0, l1):
                raise GluingError(f"gluing {k}: lengths {l1} and {l2} differ")
        for label, slot in self.boundaries.items():
            claim(slot, f"boundary {label!r}")
        missing = [(p, s) for p in range(len(self.pants)) for s in range(3) if (p, s) not in seen]
        if missing:
            raise GluingError(f"slots without gluing or label: {missing}")

    # serialization

    def to_dict(self) -> dict:
        return {
            "pants": [list(p) for p in self.pants],
            "gluings": [[list(g.first), list(g.second)] for g in self.gluings],
            "twists": [g.twist for g in self.gluings],
            "boundaries": [{"label": k, "slot": list(v)} for k, v in self.boundaries.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> FNSurface:
        if "pants" not in data:
            raise GluingError("missing 'pants'")
        gl = data.get("gluings", [])
        tw = data.get("twists", [0.0] * len(gl))
        if len(tw) != len(gl):
            raise GluingError("'twists' must have one entry per gluing")
        gluings = [Gluing(tuple(a), tuple(b), float(t)) for (a, b), t in zip(gl, tw)]
        bd = data.get("boundaries")
        boundaries = None if bd is None else {str(e["label"]): tuple(e["slot"]) for e in bd}
        return cls(data["pants"], gluings, boundaries)

    @classmethod
    def from_json(cls, text: str) -> FNSurface:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Transversal:
    """An arc crossing a decomposition curve: from the source lift to word . target lift."""

    source: str
    target: str
    word: str
    intersection: int


@dataclass(frozen=True)
class SurfaceGroup:
    """Generators with labeled boundary and cuff words.

    ``boundary_words`` and ``cuff_words`` give, for each label, the word whose
    axis is the base lift of that curve. ``marking`` describes each generator
    letter. Treat instances as immutable.

    Groups built from pants also carry ``frames``: the generators conjugated
    into the local coordinates of each pants. Far from the base pants the global
    matrices are large, and products of two of them lose digits; evaluating a word
    in a frame near its letters avoids that. ``home`` maps curve labels to
    pants, ``gen_home`` does the same for generators and ``hops`` holds tree
    distances between pants.
    """

    generators: tuple[Isometry, ...]
    boundary_words: dict[str, str]
    boundary_lengths: dict[str, float]
    cuff_words: dict[str, str] = field(default_factory=dict)
    cuff_lengths: dict[str, float] = field(default_factory=dict)
    marking: dict[str, str] = field(default_factory=dict)
    transversals: dict[str, Transversal] = field(default_factory=dict)
    frames: tuple[tuple[Isometry, ...], ...] = ()
    home: dict[str, int] = field(default_factory=dict)
    gen_home: tuple[int, ...] = ()
    hops: tuple[tuple[int, ...], ...] = ()

    def local_generators(self, frame: int | None) -> tuple[Isometry, ...]:
        return self.generators if frame is None or not self.frames else self.frames[frame]

    def element(self, word: str, frame: int | None = None) -> Isometry:
        return evaluate_word(list(self.local_generators(frame)), word)

    def frame_for(self, word: str) -> int | None:
        """Pants closest (in the worst case) to the homes of the word's letters."""
        if not self.frames or not word:
            return None
        idx = [W.letter_index(ch)[0] for ch in word]
        homes = {self.gen_home[i] for i in idx}

        # ties go to the frame where the letters are smallest: less cancellation in products
        def size(p):
            return sum(math.log(max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))) for m in (self.frames[p][i] for i in idx))

        return min(range(len(self.frames)), key=lambda p: (max(self.hops[p][h] for h in homes), size(p), p))

    def label_frame(self, label: str) -> int | None:
        return self.home.get(label) if self.frames else None

    @property
    def labels(self) -> list[str]:
        return list(self.boundary_words)

    @property
    def boundary_reps(self) -> dict[str, Isometry]:
        return {k: self.element(w) for k, w in self.boundary_words.items()}

    def is_cusp(self, label: str) -> bool:
        return self.boundary_lengths[label] == 0.0

    def conjugate(self, g: Isometry) -> SurfaceGroup:
        """The same marked group conjugated by g, without local frames."""
        gi = g.inverse()
        return SurfaceGroup(tuple(g @ x @ gi for x in self.generators), self.boundary_words,
                            self.boundary_lengths, self.cuff_words, self.cuff_lengths,
                            self.marking, self.transversals)


def curve_length(g: SurfaceGroup, word: str) -> float:
    """Translation length of a word, 0 when parabolic."""
    w = W.reduce(word)
    if not w:
        raise ValueError("word reduces to the identity")
    m = g.element(w, g.frame_for(w))
    kind = classify(m)
    if kind is Kind.HYPERBOLIC:
        return translation_length(m)
    if kind is Kind.PARABOLIC:
        return 0.0
    raise EllipticError(f"word {w!r} is {kind.value}")


def _half_trace(l: float) -> float:
    return 2.0 * math.cosh(0.5 * l)


def pants_matrices(l1: float, l2: float, l3: float) -> tuple[Isometry, Isometry, Isometry]:
    """Elements (Y1, Y2, Y3) with Y1 Y2 Y3 = 1 and translation lengths l1, l2, l3."""
    if min(l1, l2, l3) < 0.0:
        raise ValueError("lengths must be nonnegative")
    x, y, z = _half_trace(l1), _half_trace(l2), -_half_trace(l3)
    zeta = 0.5 * (z - math.sqrt((z - 2.0) * (z + 2.0)))  # root of modulus >= 1
    a = Isometry(x, -1.0, 1.0, 0.0)
    b = Isometry(0.0, zeta, -1.0 / zeta, y)
    if l1 > 0.0:
        b = b.conj(axis_frame(a))
        a = Isometry.dilation(l1)
        # center the pants: seam foot from slot 1 toward slot 2 moved to i
        h = _foot_height(Isometry.identity(), b)
        b = b.conj(Isometry.dilation(-math.log(h)))
    return a, b, (a @ b).inverse()


def _foot_height(frame: Isometry, other: Isometry) -> float:
    """Height of the foot of the perpendicular from other's fixed set to (0, inf), in the frame."""
    if classify(other) is Kind.PARABOLIC:
        return abs(mobius(frame, parabolic_fixed_point(other)))
    rep, att = axis_vectors(other)
    u = from_vec(frame.array @ rep)
    v = from_vec(frame.array @ att)
    return math.sqrt(u * v)


def _seam_foot(elements: list[Isometry], s: int) -> tuple[Isometry, float]:
    """Axis frame of slot s and the height of its seam foot toward slot s + 1."""
    f = axis_frame(elements[s])
    return f, _foot_height(f, elements[(s + 1) % 3])


_J = Isometry(0.0, -1.0, 1.0, 0.0)


def _glue_map(x_elems, i, y_elems, j, twist) -> Isometry:
    """M with M y_j M^-1 = x_i^-1, seam feet matched up to the twist."""
    fx, hx = _seam_foot(x_elems, i)
    fy, hy = _seam_foot(y_elems, j)
    shift = math.log(hx * hy) + twist
    return fx.inverse() @ Isometry.dilation(shift) @ _J @ fy


def _third_word(known: dict[int, str]) -> tuple[int, str]:
    """Given words for two slots, the word for the remaining one (slot words multiply to 1 cyclically)."""
    (s, ws), (t, wt) = sorted(known.items())
    k = 3 - s - t
    if (s + 1) % 3 == t:  # order s, t, k
        return k, W.reduce(W.invert(ws + wt))
    return k, W.reduce(W.invert(wt + ws))  # order t, s, k


def _tree_center(n: int, adj) -> int:
    """Pants minimizing the largest tree distance to the others (ties: lowest index)."""
    def ecc(start):
        dist, queue = {start: 0}, deque([start])
        while queue:
            p = queue.popleft()
            for _, g in adj[p]:
                q = g.second[0] if g.first[0] == p else g.first[0]
                if q not in dist:
                    dist[q] = dist[p] + 1
                    queue.append(q)
        return max(dist.values()) if len(dist) == n else math.inf
    return min(range(n), key=lambda p: (ecc(p), p))


def build_chain(fn: FNSurface) -> SurfaceGroup:
    """Realize a tree of pants (with optional self-glued torus pieces) as a group."""
    n = len(fn.pants)
    self_loop: dict[int, tuple[int, Gluing]] = {}
    adj: dict[int, list[tuple[int, Gluing]]] = {p: [] for p in range(n)}
    for k, g in enumerate(fn.gluings):
        p, q = g.first[0], g.second[0]
        if p == q:
            if p in self_loop:
                raise UnsupportedTopologyError(f"pants {p} is glued to itself twice")
            self_loop[p] = (k, g)
        else:
            adj[p].append((k, g))
            adj[q].append((k, g))
    edges = sum(len(v) for v in adj.values()) // 2
    if edges != n - 1:
        raise UnsupportedTopologyError("pants graph (without self-gluings) must be a tree")

    glued = {g.first for g in fn.gluings if g.first[0] != g.second[0]}
    glued |= {g.second for g in fn.gluings if g.first[0] != g.second[0]}
    local = {p: list(pants_matrices(*fn.pants[p])) for p in range(n)}
    gen_local: list[tuple[int, Isometry]] = []  # (home pants, element in its local frame)
    marking: dict[str, str] = {}
    slot_words: dict[Slot, str] = {}
    stable: dict[int, str] = {}

    def new_gen(p: int, m: Isometry, desc: str) -> str:
        if len(gen_local) >= W.MAX_GENERATORS:
            raise UnsupportedTopologyError(f"more than {W.MAX_GENERATORS} generators")
        ch = W.letter(len(gen_local))
        gen_local.append((p, m))
        marking[ch] = desc
        return ch

    def place(p: int, known: dict[int, str]):
        if p in self_loop:
            k, g = self_loop[p]
            i, j = g.first[1], g.second[1]
            if j in known or (i in known and len(known) > 1):
                raise UnsupportedTopologyError("self-glued slot reached from outside")
            if i not in known:
                known[i] = new_gen(p, local[p][i], f"cuff of gluing {k}")
            t = _glue_map(local[p], i, local[p], j, g.twist)
            stable[k] = tch = new_gen(p, t, f"stable letter of gluing {k}")
            known[j] = W.reduce(W.invert(tch) + W.invert(known[i]) + tch)
        else:
            # glued slots become letters, so every cuff word has length one
            free = sorted((s for s in range(3) if s not in known),
                          key=lambda s: ((p, s) not in glued, s))
            for s in free[: 2 - len(known)]:
                known[s] = new_gen(p, local[p][s], f"slot {s} of pants {p}")
        s, w = _third_word(known)
        known[s] = w
        for s in range(3):
            slot_words[(p, s)] = known[s]

    root = _tree_center(n, adj)
    place(root, {})
    # step[q] maps local coordinates of q into those of its tree parent
    step: dict[int, Isometry] = {}
    parent: dict[int, int] = {root: -1}
    snap: dict[int, list[tuple[str, int]]] = {}
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for k, g in adj[p]:
            mine, other = (g.first, g.second) if g.first[0] == p else (g.second, g.first)
            q = other[0]
            if q in parent:
                continue
            parent[q] = p
            step[q] = _glue_map(local[p], mine[1], local[q], other[1], g.twist)
            snap.setdefault(q, []).append((slot_words[mine], other[1]))
            place(q, {other[1]: W.reduce(W.invert(slot_words[mine]))})
            queue.append(q)
    if len(parent) != n:
        raise UnsupportedTopologyError("pants graph is disconnected")

    # generators seen from every pants, composed along tree paths of small maps
    frames = []
    dist = []
    for p in range(n):
        rel = {p: Isometry.identity()}
        hops = {p: 0}
        queue = deque([p])
        while queue:
            r = queue.popleft()
            nbrs = [(q, rel[r] @ step[q]) for q in range(n) if parent.get(q) == r]
            if parent[r] >= 0:
                nbrs.append((parent[r], rel[r] @ step[r].inverse()))
            for q, m in nbrs:
                if q not in rel:
                    rel[q], hops[q] = m, hops[r] + 1
                    queue.append(q)
        mats = [m.conj(rel[h]) for h, m in gen_local]
        # a cuff letter seen from the child pants is that pants' own slot element;
        # use the exact local matrix instead of the conjugated one
        for ch, slot in snap.get(p, []):
            i, inv = W.letter_index(ch)
            mats[i] = local[p][slot] if inv else local[p][slot].inverse()
        frames.append(tuple(mats))
        dist.append(tuple(hops[q] for q in range(n)))

    home = {lab: s[0] for lab, s in fn.boundaries.items()}
    boundary_words = {lab: slot_words[s] for lab, s in fn.boundaries.items()}
    boundary_lengths = {lab: fn.length(s) for lab, s in fn.boundaries.items()}
    cuff_words, cuff_lengths = {}, {}
    for k, g in enumerate(fn.gluings):
        cuff_words[f"c{k}"] = slot_words[g.first]
        cuff_lengths[f"c{k}"] = fn.length(g.first)
        home[f"c{k}"] = g.first[0]
    trans = _transversals(fn, adj, stable, boundary_lengths)
    return SurfaceGroup(frames[root], boundary_words, boundary_lengths, cuff_words, cuff_lengths,
                        marking, trans, tuple(frames), home, tuple(h for h, _ in gen_local),
                        tuple(dist))


def _transversals(fn, adj, stable, boundary_lengths) -> dict[str, Transversal]:
    """One arc per decomposition curve crossing it exactly once.

    For a gluing between two pants, the arc joins base lifts of the nearest
    geodesic boundaries on either side; for a self-gluing it joins a boundary
    lift to its image under the stable letter.
    """
    geodesic = {lab for lab, l in boundary_lengths.items() if l > 0.0}
    by_pants: dict[int, list[str]] = {}
    for lab, (p, s) in sorted(fn.boundaries.items(), key=lambda kv: kv[1]):
        if lab in geodesic:
            by_pants.setdefault(p, []).append(lab)

    def nearest(start: int, banned: int) -> str | None:
        seen, queue = {start}, deque([start])
        while queue:
            p = queue.popleft()
            if by_pants.get(p):
                return by_pants[p][0]
            for k, g in adj[p]:
                if k == banned:
                    continue
                q = g.second[0] if g.first[0] == p else g.first[0]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return None

    out = {}
    for k, g in enumerate(fn.gluings):
        p, q = g.first[0], g.second[0]
        if p == q:
            src = nearest(p, -1)
            if src is not None:
                out[f"c{k}"] = Transversal(src, src, stable[k], 1)
        else:
            a, b = nearest(p, k), nearest(q, k)
            if a is not None and b is not None:
                out[f"c{k}"] = Transversal(a, b, "", 1)
    return out


def build_pants(l1: float, l2: float, l3: float) -> SurfaceGroup:
    """Pants group on generators A, B with boundary words a, b and BA (= (AB)^-1)."""
    return build_chain(FNSurface([(l1, l2, l3)]))


def build_one_holed_torus(cuff: float, twist: float, boundary: float = 0.0) -> SurfaceGroup:
    """One-holed torus from a pants (cuff, cuff, boundary) glued to itself.

    Generator a is the cuff, b crosses it once, and the boundary word is a
    commutator of a and b. boundary = 0 gives the punctured torus.
    """
    if not cuff > 0.0:
        raise ValueError("cuff must be positive")
    fn = FNSurface([(cuff, cuff, boundary)], [Gluing((0, 0), (0, 1), twist)], {"1": (0, 2)})
    return build_chain(fn)


def torus_from_traces(x: float, y: float, z: float) -> SurfaceGroup:
    """One-holed torus with tr A = x, tr B = y, tr AB = z (all > 2).

    Boundary word is the commutator abAB, whose trace is
    x^2 + y^2 + z^2 - xyz - 2 by the Fricke identity.
    """
    if min(x, y, z) <= 2.0:
        raise ValueError("traces must exceed 2")
    kappa = x * x + y * y + z * z - x * y * z - 2.0
    if kappa > -2.0 + 1e-12:
        raise ValueError(f"commutator trace {kappa} is not <= -2: not a one-holed torus")
    zeta = 0.5 * (z + math.sqrt((z - 2.0) * (z + 2.0)))
    a = Isometry(x, -1.0, 1.0, 0.0)
    b = Isometry(0.0, zeta, -1.0 / zeta, y)
    f = axis_frame(a)
    a, b = a.conj(f), b.conj(f)
    boundary = abs(kappa)
    blen = 2.0 * math.acosh(0.5 * boundary) if boundary > 2.0 + 1e-9 else 0.0
    cusp = 2.0 * math.acosh(0.5 * x)
    return SurfaceGroup((a, b), {"1": "abAB"}, {"1": blen}, {"c0": "a"}, {"c0": cusp},
                        {"a": "curve with trace x", "b": "curve with trace y"},
                        {"c0": Transversal("1", "1", "b", 1)} if blen > 0.0 else {})


def x_piece(boundary: tuple[float, float, float, float], cuff: float, twist: float = 0.0) -> FNSurface:
    """Two pants (b1, b2, cuff) and (cuff, b3, b4) glued along the cuff."""
    b1, b2, b3, b4 = boundary
    return FNSurface([(b1, b2, cuff), (cuff, b3, b4)], [Gluing((0, 2), (1, 0), twist)],
                     {"1": (0, 0), "2": (0, 1), "3": (1, 1), "4": (1, 2)})


def flute(alpha: list[float], beta: list[float], twists: list[float] | None = None,
          first_cusp: bool = True) -> FNSurface:
    """Finite flute truncation: pants k has cuffs (alpha[k], beta[k], alpha[k+1]).

    Pants k is glued to pants k+1 along alpha[k+1]. The beta cuffs and the two
    ends are boundaries; alpha[0] = 0 makes the first end a cusp.
    """
    n = len(beta)
    if len(alpha) != n + 1:
        raise ValueError("need len(alpha) == len(beta) + 1")
    twists = twists or [0.0] * (n - 1)
    pants = [(alpha[k], beta[k], alpha[k + 1]) for k in range(n)]
    gl = [Gluing((k, 2), (k + 1, 0), twists[k]) for k in range(n - 1)]
    return FNSurface(pants, gl)


__all__ = [
    "FNSurface", "Gluing", "SurfaceGroup", "Transversal", "GluingError", "UnsupportedTopologyError",
    "EllipticError", "build_pants", "build_one_holed_torus", "build_chain", "torus_from_traces",
    "curve_length", "pants_matrices", "x_piece", "flute",
]

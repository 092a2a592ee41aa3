"""Orthogeodesic spectra and the Basmajian and McShane identities.

Orthogeodesics from a source boundary are indexed by double cosets
<S> g <T>: the lift g.axis(T) of a target boundary seen from the base lift
axis(S) of the source. Words are grown by prepending one generator at a time
in the frame where axis(S) is (0, inf) and S acts as z -> e^l z. Endpoints are
kept as normalized homogeneous vectors, so long words stay well conditioned.

In that frame a disjoint lift with endpoints u, v (same sign) lies at distance
2 atanh(sqrt(min/max)) from the source axis, and its perpendicular meets the
axis at height sqrt(uv). Left multiplication by S rescales the lift by e^l, so
a double coset is identified by (side, target, distance, log sqrt(uv) mod l).
The first witness in shortlex order is kept.

A class from a boundary to itself and its reverse are different double cosets
(g and g^-1) and both are kept: each has its own foot on the source, and the
identity needs both shadows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import words as W
from .halfplane import (
    ExplosionError,
    Isometry,
    Kind,
    axis_frame,
    axis_vectors,
    classify,
    geodesic_distance,
    Geodesic,
    translation_length,
)
from .holonomy import SurfaceGroup, build_pants, curve_length
from .hyptrig import basmajian_term, cusp_constant, mcshane_D

DEFAULT_WORD_CAP = 20_000_000


class CapTooSmallError(ValueError):
    pass


class ParabolicAxisError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoTerm:
    length: float
    source: str
    target: str
    word: str


@dataclass
class IdentityReport:
    target: float
    partial_sums: list[float]
    terms_used: int
    residual: float
    truncation: dict
    terms: list[float] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        return [
            {"term_index": i + 1, "term_value": t, "partial_sum": s, "residual": self.target - s}
            for i, (t, s) in enumerate(zip(self.terms, self.partial_sums))
        ]


def _source_frame(g: SurfaceGroup, source: str):
    if source not in g.boundary_words:
        raise KeyError(f"unknown boundary label {source!r}")
    frame = g.label_frame(source)
    rep = g.element(g.boundary_words[source], frame)
    if classify(rep) is not Kind.HYPERBOLIC:
        raise ParabolicAxisError(f"boundary {source!r} is not a closed geodesic")
    return frame, axis_frame(rep), translation_length(rep)


def _source_basis(g: SurfaceGroup, frame, src_word: str):
    """Generators for the enumeration, as matrices in `frame`, plus the
    substitution taking enumeration letters back to group words.

    If the source word uses some generator exactly once it is primitive, and
    swapping that generator for the source element keeps a free basis in
    which the source is a single letter. Its matrix can then be made exactly
    diagonal in the source frame, which keeps long runs of it from amplifying
    rounding near the ends of the source axis.
    """
    gens = list(g.local_generators(frame))
    n = len(gens)
    back = {ch: ch for ch in W.letters(n)}
    if len(src_word) > 1:
        counts = {}
        for ch in src_word:
            counts[ch.lower()] = counts.get(ch.lower(), 0) + 1
        once = [ch for ch in sorted(counts) if counts[ch] == 1]
        if once:
            x = once[0]
            i = W.letter_index(x)[0]
            gens[i] = g.element(src_word, frame)
            back[x], back[x.upper()] = src_word, W.invert(src_word)
            pos = src_word.lower().index(x)
            u, v = src_word[:pos], src_word[pos + 1:]
            xw = src_word[pos]
            # old letter in new letters: x = u^-1 s v^-1 (or its inverse for X)
            old = W.invert(u) + x + W.invert(v)
            if xw.isupper():
                old = W.invert(old)
            fwd = {ch: ch for ch in W.letters(n)}
            fwd[x], fwd[x.upper()] = old, W.invert(old)
            return gens, back, fwd, x
    fwd = {ch: ch for ch in W.letters(n)}
    return gens, back, fwd, (src_word if len(src_word) == 1 else None)


def _translate(word: str, table: dict) -> str:
    return W.reduce("".join(table[ch] for ch in word))


def _local(gens, f: Isometry, period: float, src_letter: str | None):
    """Letter matrices in the source frame, in the order a, A, b, B, ..."""
    fi = f.inverse()
    mats = []
    for i, x in enumerate(gens):
        y = (f @ x @ fi).array
        if src_letter is not None and W.letter_index(src_letter)[0] == i:
            # exact dilation; the source letter itself may be the inverse one
            big = math.exp(0.5 * period)
            y = np.diag([big, 1.0 / big]) if abs(y[0, 0]) > abs(y[1, 1]) else np.diag([1.0 / big, big])
            if src_letter.isupper():
                y = np.diag([y[1, 1], y[0, 0]])
        mats += [y, np.diag([y[1, 1], y[0, 0]]) if y[0, 1] == 0.0 and y[1, 0] == 0.0
                 else Isometry.from_array(y).inverse().array]
    return np.array(mats)


def _targets(g: SurfaceGroup, frame, f: Isometry, include_cusps: bool = False):
    labels, ends = [], []
    for lab, w in g.boundary_words.items():
        rep = g.element(w, frame)
        if classify(rep) is not Kind.HYPERBOLIC:
            continue
        rep_v, att_v = axis_vectors(rep)
        ends.append([f.array @ rep_v, f.array @ att_v])
        labels.append(lab)
    return labels, np.array(ends)  # (n_targets, 2, 2)


def _step(m, vecs, cross):
    """Apply m to endpoint vectors (..., 2, 2). The determinant of the endpoint
    pair is carried separately so that nearby endpoints keep full precision."""
    v = np.einsum("ij,...ej->...ei", m, vecs)
    n = np.linalg.norm(v, axis=-1)
    return v / n[..., None], cross / (n[..., 0] * n[..., 1])


def _start(ends):
    n = np.linalg.norm(ends, axis=-1)
    v = ends / n[..., None]
    return v, v[..., 0, 0] * v[..., 1, 1] - v[..., 0, 1] * v[..., 1, 0]


def _measure(v, cross, period):
    """Distance, side and foot phase of lifts (..., 2, 2) relative to (0, inf)."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        u = v[..., 0, 0] / v[..., 0, 1]
        w = v[..., 1, 0] / v[..., 1, 1]
        au, aw = np.abs(u), np.abs(w)
        hi = np.maximum(au, aw)
        gap = np.abs(cross / (v[..., 0, 1] * v[..., 1, 1])) / hi
        cr = np.where(gap > 0.5, np.minimum(au, aw) / hi, 1.0 - gap)
        d = 2.0 * np.log1p(np.sqrt(cr)) - np.log(gap)
        ok = (u * w > 0) & np.isfinite(d) & (d > 1e-8)
        phase = np.mod(0.5 * (np.log(au) + np.log(aw)), period)
    return np.where(ok, d, np.nan), np.sign(u), phase


def _dedup(cand, period, rel_tol):
    """Row indices of one representative per class. Columns of cand are
    distance, side, target, phase, rank."""
    if len(cand) == 0:
        return []
    d, side, tgt, ph, rank = (cand[:, i] for i in range(5))
    order = np.lexsort((rank, d, side, tgt))
    ds = d[order]
    tol = 1e-9 + rel_tol * ds
    cut = np.ones(len(order), dtype=bool)
    cut[1:] = (np.diff(ds) > tol[1:]) | (np.diff(tgt[order]) != 0) | (np.diff(side[order]) != 0)
    starts = np.nonzero(cut)[0]
    ends = np.append(starts[1:], len(order))
    keep = list(order[starts[ends - starts == 1]])
    for a, b in zip(starts[ends - starts > 1], ends[ends - starts > 1]):
        reps: list[int] = []
        for k in sorted(order[a:b], key=lambda k: rank[k]):
            p = ph[k]
            if not any(min(abs(p - ph[r]), period - abs(p - ph[r])) <= 1e-7 for r in reps):
                reps.append(k)
        keep += reps
    return keep


def ortho_spectrum(g: SurfaceGroup, source: str, max_word_length: int,
                   max_length: float = math.inf, word_cap: int = DEFAULT_WORD_CAP) -> list[OrthoTerm]:
    """Orthogeodesics from `source` to every geodesic boundary, one per double coset
    with a witness word of length <= max_word_length, sorted by length then witness.

    Terms longer than max_length are not reported (they are still enumerated).
    """
    if max_word_length < 0:
        raise ValueError("max_word_length must be >= 0")
    frame, f, period = _source_frame(g, source)
    src_word = W.reduce(g.boundary_words[source])
    gens, back, fwd, src_letter = _source_basis(g, frame, src_word)
    mats = _local(gens, f, period, src_letter)
    labels, base = _targets(g, frame, f)
    n_letters = len(mats)
    alphabet = W.letters(len(g.generators))
    # words starting with S or S^-1 are left translates of shorter ones:
    # extend them but never report them
    s_new = src_letter if src_letter is not None else src_word
    m_pref = len(s_new)
    radix = n_letters + 1

    def code(word):
        c = 0
        for j, ch in enumerate(word):
            c += (alphabet.index(ch) + 1) * radix ** (m_pref - 1 - j)
        return c

    skip_codes = np.array([code(s_new), code(W.invert(s_new))]) if m_pref <= 10 else np.array([], dtype=np.int64)
    inverse_of = np.array([k ^ 1 for k in range(n_letters)])

    total = 1
    count = 1
    for k in range(max_word_length):
        count = n_letters if k == 0 else count * (n_letters - 1)
        total += count
    if total > word_cap:
        raise ExplosionError(f"{total} words exceed the cap of {word_cap}")

    cand = []          # rows: d, side, target, phase, rank
    where = []         # (level, index) for each candidate row
    levels_first, levels_parent = [], []

    def collect(vecs, cross, level, offset, rank_base, show=None):
        d, side, phase = _measure(vecs, cross, period)
        for t in range(len(labels)):
            dt = d[:, t]
            mask = np.isfinite(dt) & (dt <= max_length)
            if show is not None:
                mask &= show
            ok = np.nonzero(mask)[0]
            if len(ok):
                cand.append(np.column_stack([dt[ok], side[ok, t], np.full(len(ok), t),
                                             phase[ok, t], rank_base + offset + ok]))
                where.append(np.column_stack([np.full(len(ok), level), offset + ok]))

    def word_of(level, idx):
        out = []
        while level > 0:
            out.append(alphabet[levels_first[level][idx]])
            idx = levels_parent[level][idx]
            level -= 1
        return "".join(out)

    target_words = []
    for lab in labels:
        w = _translate(W.reduce(g.boundary_words[lab]), fwd)
        target_words.append((w, W.invert(w)) if len(w) <= 6 else ("",))

    vecs, cross = _start(base[None])
    first = np.array([-1])
    pref = np.zeros(1, dtype=np.int64)
    collect(vecs, cross, 0, 0, 0.0)
    levels_first.append(first)
    levels_parent.append(np.array([-1]))
    rank_base = 1.0
    chunk = 400_000
    for level in range(1, max_word_length + 1):
        last = level == max_word_length
        nxt_first, nxt_parent, nxt_vecs, nxt_cross, nxt_pref = [], [], [], [], []
        offset = 0
        for ltr in range(n_letters):
            allowed = np.nonzero(first != inverse_of[ltr])[0] if level > 1 else np.array([0])
            for s in range(0, len(allowed), chunk):
                par = allowed[s:s + chunk]
                v, c = _step(mats[ltr], vecs[par], cross[par])
                pc = (ltr + 1) * radix ** (m_pref - 1) + pref[par] // radix
                collect(v, c, level, offset, rank_base, ~np.isin(pc, skip_codes))
                if not last:
                    nxt_vecs.append(v)
                    nxt_cross.append(c)
                nxt_parent.append(par)
                nxt_pref.append(pc)
                nxt_first.append(np.full(len(par), ltr, dtype=np.int16))
                offset += len(par)
        rank_base += offset
        first = np.concatenate(nxt_first)
        pref = np.concatenate(nxt_pref)
        levels_first.append(first)
        levels_parent.append(np.concatenate(nxt_parent))
        if not last:
            vecs = np.concatenate(nxt_vecs)
            cross = np.concatenate(nxt_cross)
            # a word ending in the target's own word gives the same lift as a shorter
            # word, and iterating a lift's own stabilizer amplifies rounding; poison
            # those lifts so the whole subtree is dropped
            for t, suffix in enumerate(target_words):
                if len(suffix[0]) == level:
                    ws = [word_of(level, i) for i in range(len(first))]
                    bad = [i for i, w in enumerate(ws) if w in suffix]
                    vecs[bad, t] = np.nan

    if not cand:
        return []
    arr = np.concatenate(cand)
    where = np.concatenate(where)
    keep = _dedup(arr, period, 1e-13)

    terms = []
    for k in keep:
        level, idx = (int(x) for x in where[k])
        terms.append((arr[k, 0], arr[k, 4], OrthoTerm(float(arr[k, 0]), source, labels[int(arr[k, 2])],
                                                      _translate(word_of(level, idx), back))))
    terms.sort(key=lambda t: (t[0], t[1]))
    return [t[2] for t in terms]


def lift_key(g: SurfaceGroup, source: str, target: str, word: str) -> tuple[float, float, float]:
    """(distance, side, foot phase) of word . (base lift of target) seen from the
    base lift of source. Two witnesses of one double coset share the key."""
    frame, f, period = _source_frame(g, source)
    mats = _local(list(g.local_generators(frame)), f, period, None)
    labels, base = _targets(g, frame, f)
    if target not in labels:
        raise ParabolicAxisError(f"target {target!r} is not a closed geodesic")
    v, c = _start(base[labels.index(target)][None, None])
    alphabet = W.letters(len(g.generators))
    for ch in reversed(W.reduce(word)):
        v, c = _step(mats[alphabet.index(ch)], v, c)
    d, side, phase = _measure(v, c, period)
    out = float(d[0, 0])
    if not math.isfinite(out):
        raise ValueError(f"lift {word!r} of {target!r} is not disjoint from {source!r}")
    return out, float(side[0, 0]), float(phase[0, 0])


def arc_length(g: SurfaceGroup, source: str, target: str, word: str) -> float:
    """Distance from the base lift of `source` to word . (base lift of `target`)."""
    return lift_key(g, source, target, word)[0]


def _report(target, values, truncation, meta, floor=1e-15):
    """Partial sums of positive terms given in decreasing order.

    Terms below floor * target cannot move a double-precision sum and would
    break strict monotonicity; they are counted in the metadata instead.
    """
    kept = [v for v in values if v >= floor * target]
    dropped = [v for v in values if v < floor * target]
    partial = list(np.cumsum(kept)) if kept else []
    partial = [float(x) for x in partial]
    meta = dict(meta, dropped_terms=len(dropped), dropped_total=math.fsum(dropped), term_floor=floor)
    last = partial[-1] if partial else 0.0
    return IdentityReport(target, partial, len(kept), target - last, truncation, kept, meta)


def basmajian_report(g: SurfaceGroup, source: str, max_word_length: int,
                     word_cap: int = DEFAULT_WORD_CAP) -> IdentityReport:
    """Partial sums of 2 log coth(d/2) over the orthospectrum of `source`."""
    ell = curve_length(g, g.boundary_words[source])
    cut = math.log(4.0 / (1e-16 * ell))
    terms = ortho_spectrum(g, source, max_word_length, max_length=cut, word_cap=word_cap)
    values = [basmajian_term(t.length) for t in terms]
    cusps = sorted(lab for lab, l in g.boundary_lengths.items() if l == 0.0)
    meta = {"identity": "basmajian", "source": source, "skipped_cusp_targets": cusps,
            "length_cut": cut, "convention": "double cosets; a self-orthogeodesic counts once per orientation"}
    return _report(ell, values, {"max_word_length": max_word_length}, meta)


# one-holed torus


def _torus_traces(g: SurfaceGroup) -> tuple[float, float, float]:
    if len(g.generators) != 2 or len(g.boundary_words) != 1:
        raise ValueError("expected a one-holed torus group on two generators")
    a, b = g.generators
    x, y, z = a.trace, b.trace, (a @ b).trace
    # lifts to SL(2) with positive tr A, tr B force tr AB > 0 for a one-holed torus
    if x < 0:
        x, z = -x, -z
    if y < 0:
        y, z = -y, -z
    return x, y, z


def torus_simple_curves(g: SurfaceGroup, length_cap: float) -> list[tuple[float, str]]:
    """Simple closed curves of a one-holed torus up to the length cap, with words.

    Traces satisfy tr(UV) + tr(U V^-1) = tr U tr V. Each Farey triple
    (U, V, UV) spawns (U, UV, U UV) and (UV, V, UV V); the root (A, B, AB)
    also spawns (A, B^-1, AB^-1). Along the tree traces only grow once they
    exceed both parents, which makes the cap-based pruning exact.
    """
    x, y, z = _torus_traces(g)
    if min(x, y, z) <= 2.0:
        raise ValueError("generators must be hyperbolic with positive traces")
    cap_t = 2.0 * math.cosh(0.5 * length_cap)

    def length(t):
        return 2.0 * math.acosh(0.5 * t)

    found = {"a": x, "b": y, "ab": z}
    w_ = x * y - z  # tr(A B^-1)
    found["aB"] = w_
    stack = [("a", x, "b", y, "ab", z), ("a", x, "B", y, "aB", w_)]
    while stack:
        u, tu, v, tv, uv, tuv = stack.pop()
        for (p, tp), (q, tq) in (((u, tu), (uv, tuv)), ((uv, tuv), (v, tv))):
            # new curve p q, with trace tp tq - t(p q^-1), and p q^-1 is the third vertex
            other = tv if (p, q) == (u, uv) else tu
            t_new = tp * tq - other
            if t_new > cap_t and t_new >= max(tp, tq):
                continue
            w = W.reduce(p + q)
            if w not in found:
                found[w] = t_new
            stack.append((p, tp, q, tq, w, t_new))
    out = [(length(t), w) for w, t in found.items() if t <= cap_t]
    if not out:
        raise CapTooSmallError(f"no simple closed curve of length <= {length_cap}")
    out.sort(key=lambda lw: (lw[0], W.sort_key(lw[1])))
    return out


def torus_scc_lengths(g: SurfaceGroup, length_cap: float) -> list[float]:
    """Lengths of interior simple closed geodesics up to the cap, nondecreasing."""
    return [l for l, _ in torus_simple_curves(g, length_cap)]


def mcshane_torus_report(g: SurfaceGroup, length_cap: float) -> IdentityReport:
    """Partial sums of D(L, l, l) over simple closed curves l of a one-holed torus."""
    label = next(iter(g.boundary_words))
    big_l = curve_length(g, g.boundary_words[label])
    if not big_l > 0.0:
        raise ValueError("boundary must be a closed geodesic")
    lengths = torus_scc_lengths(g, length_cap)
    values = [mcshane_D(big_l, l, l) for l in lengths]
    meta = {"identity": "mcshane-torus", "curves": len(lengths)}
    return _report(big_l, values, {"length_cap": length_cap}, meta)


@dataclass(frozen=True)
class TightPantsCheck:
    lhs: float
    rhs: float
    gap: float


def tight_pants_check(l1: float, l2: float) -> TightPantsCheck:
    """Measured distance between the two geodesic cuffs of the pants (l1, l2, 0)
    against log coth(l1/4) + log coth(l2/4)."""
    if not (l1 > 0.0 and l2 > 0.0):
        raise ParabolicAxisError("both cuffs must be closed geodesics")
    g = build_pants(l1, l2, 0.0)
    a, b = g.generators
    lhs = geodesic_distance(_axis(a), _axis(b)).distance
    rhs = cusp_constant(l1) + cusp_constant(l2)
    return TightPantsCheck(lhs, rhs, abs(lhs - rhs))


def _axis(m: Isometry) -> Geodesic:
    from .halfplane import axis
    return axis(m)


def spectrum_csv(terms: list[OrthoTerm]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length", "source", "target", "word"])
    for t in terms:
        w.writerow([repr(t.length), t.source, t.target, t.word])
    return buf.getvalue()


def report_csv(report: IdentityReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["term_index", "term_value", "partial_sum", "residual"])
    for r in report.rows():
        w.writerow([r["term_index"], repr(r["term_value"]), repr(r["partial_sum"]), repr(r["residual"])])
    return buf.getvalue()

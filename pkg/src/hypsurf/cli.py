"""Command-line front end.

Exit status: 0 when every check of the subcommand passes, 1 when a check
fails (residual above tolerance, bound violated), 2 on usage or input errors.
Reports go to stdout or --output as CSV (default) or JSON. Identical
arguments give byte-identical output.

HYPSURF_THREADS caps the BLAS thread pools (default 1).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

THREADS_ENV = "HYPSURF_THREADS"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    rows: list[dict] = field(default_factory=list)
    columns: list[str] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    passed: bool = True
    summary: list[str] = field(default_factory=list)


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} numbers, got {text!r}")
    return vals


def _load_fn(path: str):
    from .holonomy import FNSurface
    try:
        with open(path, encoding="utf-8") as fh:
            return FNSurface.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad surface file {path}: {exc}") from exc


def _surface_fn(text: str):
    """pants:l1,l2,l3 | xpiece:b1,b2,b3,b4,cuff[,twist] | torus:cuff,twist[,boundary] | path.json"""
    from .holonomy import FNSurface, Gluing, x_piece
    kind, _, rest = text.partition(":")
    if kind == "pants" and rest:
        return FNSurface([tuple(_floats(rest, 3))])
    if kind == "xpiece" and rest:
        v = _floats(rest)
        if len(v) not in (5, 6):
            raise UsageError("xpiece needs b1,b2,b3,b4,cuff[,twist]")
        return x_piece(tuple(v[:4]), v[4], v[5] if len(v) == 6 else 0.0)
    if kind == "torus" and rest:
        v = _floats(rest)
        if len(v) not in (2, 3):
            raise UsageError("torus needs cuff,twist[,boundary]")
        b = v[2] if len(v) == 3 else 0.0
        return FNSurface([(v[0], v[0], b)], [Gluing((0, 0), (0, 1), v[1])], {"1": (0, 2)})
    return _load_fn(text)


def _group(args):
    from .holonomy import build_chain, torus_from_traces
    if getattr(args, "traces", None):
        return torus_from_traces(*_floats(args.traces, 3))
    if args.config:
        fn = _load_fn(args.config)
        if args.pants:
            fn.pants[0] = tuple(_floats(args.pants, 3))
        return build_chain(fn)
    if args.pants:
        return build_chain(_surface_fn("pants:" + args.pants))
    if args.surface:
        return build_chain(_surface_fn(args.surface))
    raise UsageError("give a surface with --pants, --surface or --config")


def _monotone(ps: list[float], target: float) -> bool:
    return all(b > a for a, b in zip(ps, ps[1:])) and (not ps or ps[-1] <= target + 1e-9)


def cmd_basmajian(args) -> RunConfig:
    from .identities import basmajian_report
    g = _group(args)
    if args.boundary not in g.boundary_words:
        raise UsageError(f"no boundary {args.boundary!r}; labels are {g.labels}")
    r = basmajian_report(g, args.boundary, args.max_word_length)
    ok = _monotone(r.partial_sums, r.target) and abs(r.residual) <= args.tol
    meta = dict(r.truncation, **r.metadata, target=r.target, residual=r.residual, tol=args.tol)
    return RunConfig("basmajian", r.rows(), ["term_index", "term_value", "partial_sum", "residual"], meta, ok,
                     [f"boundary length {r.target!r}", f"residual {r.residual!r} after {r.terms_used} terms"])


def cmd_mcshane(args) -> RunConfig:
    from .identities import mcshane_torus_report
    g = _group(args)
    r = mcshane_torus_report(g, args.length_cap)
    ok = _monotone(r.partial_sums, r.target) and abs(r.residual) <= args.tol
    meta = dict(r.truncation, **r.metadata, target=r.target, residual=r.residual, tol=args.tol)
    return RunConfig("mcshane-torus", r.rows(), ["term_index", "term_value", "partial_sum", "residual"], meta, ok,
                     [f"boundary length {r.target!r}", f"residual {r.residual!r} after {r.terms_used} curves"])


def cmd_spectrum(args) -> RunConfig:
    from .identities import ortho_spectrum
    g = _group(args)
    if args.boundary not in g.boundary_words:
        raise UsageError(f"no boundary {args.boundary!r}")
    terms = ortho_spectrum(g, args.boundary, args.max_word_length)
    rows = [{"length": t.length, "source": t.source, "target": t.target, "word": t.word} for t in terms]
    return RunConfig("spectrum", rows, ["length", "source", "target", "word"],
                     {"max_word_length": args.max_word_length, "source": args.boundary})


def cmd_arc_metric(args) -> RunConfig:
    from .arcmetric import boundary_vs_interior_sup, generate_family, sup_log_ratio
    from .holonomy import build_chain
    fx, fy = _surface_fn(args.x), _surface_fn(args.y)
    gx, gy = build_chain(fx), build_chain(fy)
    family = generate_family(fx, args.family_depth, args.twist_max)
    fwd, back = sup_log_ratio(gx, gy, family), sup_log_ratio(gy, gx, family)
    split = boundary_vs_interior_sup(gx, gy, family)
    rows = [{"label": r["label"], "kind": r["kind"], "length_x": r["length_x"], "length_y": r["length_y"],
             "log_ratio": r["log_ratio"]} for r in fwd.table]
    meta = {"family_depth": args.family_depth, "twist_max": args.twist_max, "family_size": len(family),
            "sup_log_ratio_xy": fwd.sup_log_ratio, "witness_xy": fwd.witness.label,
            "sup_log_ratio_yx": back.sup_log_ratio, "witness_yx": back.witness.label,
            "sup_AB": split.sup_AB, "sup_AS": split.sup_AS, "estimate": "lower bound over a finite family"}
    return RunConfig("arc-metric", rows, ["label", "kind", "length_x", "length_y", "log_ratio"], meta,
                     split.sup_AS >= split.sup_AB,
                     [f"d(X,Y) >= {fwd.sup_log_ratio!r} ({fwd.witness.label})",
                      f"d(Y,X) >= {back.sup_log_ratio!r} ({back.witness.label})"])


def cmd_tight_pants(args) -> RunConfig:
    from .identities import tight_pants_check
    if args.lengths:
        pairs = [tuple(_floats(args.lengths, 2))]
    else:
        import numpy as np
        pairs = [tuple(p) for p in np.random.default_rng(args.seed).uniform(0.2, 10.0, (args.random, 2))]
    rows, ok = [], True
    for l1, l2 in pairs:
        c = tight_pants_check(float(l1), float(l2))
        ok &= c.gap <= args.tol * max(1.0, abs(c.rhs))
        rows.append({"l1": float(l1), "l2": float(l2), "distance": c.lhs, "formula": c.rhs, "gap": c.gap})
    return RunConfig("tight-pants", rows, ["l1", "l2", "distance", "formula", "gap"],
                     {"tol": args.tol, "seed": args.seed}, ok)


def _bound_rows(rep) -> tuple[list[dict], list[str]]:
    rows = rep.rows()
    return rows, list(rows[0]) if rows else ["n"]


def cmd_example52(args) -> RunConfig:
    from .starcheck import lemma52_bounds
    seq = (lambda n: n + 1.0) if args.growth == "linear" else (lambda n: math.log(n + 2.0))
    rep = lemma52_bounds(args.l0, seq, args.N)
    rows, cols = _bound_rows(rep)
    meta = {"l0": args.l0, "growth": args.growth, "N": args.N, "bound": rep.bound, "basis": rep.basis,
            "sup": rep.running_sup[-1], **rep.extra}
    return RunConfig("example52", rows, cols, meta, rep.passed,
                     [f"sup {rep.running_sup[-1]!r} <= bound {rep.bound!r}: {rep.passed}"])


def cmd_example53(args) -> RunConfig:
    from .starcheck import halving_flute_check
    from .hyptrig import LOG2, flute_condition_limit
    n = args.n
    t = halving_flute_check(max(n, 2))
    sum_err = abs(t.total_with_tail - (LOG2 + 2.0))
    maj = t.majorant_values[n - 2] if n >= 2 else math.nan
    ok = sum_err <= 1e-12 and abs(maj - 8.0) <= 1e-6 and abs(flute_condition_limit(40.0) - 8.0) <= 1e-6
    rows = [{"n": k + 2, "condition": c, "majorant": m, "d": t.d_seq[k + 1]}
            for k, (c, m) in enumerate(zip(t.condition_values, t.majorant_values))]
    meta = {"n": n, "total_with_tail": t.total_with_tail, "log2_plus_2": LOG2 + 2.0, "sum_error": sum_err,
            "majorant_at_n": maj, "condition_at_n": t.condition_values[n - 2] if n >= 2 else math.nan,
            "pentagon_cross_check": t.cross_check}
    return RunConfig("example53", rows, ["n", "condition", "majorant", "d"], meta, ok,
                     [f"sum d_i = {t.total_with_tail!r} (log 2 + 2 = {LOG2 + 2.0!r})",
                      f"majorant at n = {n}: {maj!r} (limit 8)"])


def cmd_example55(args) -> RunConfig:
    from .starcheck import constant_alpha_flute
    rep = constant_alpha_flute(args.l0, lambda n: args.beta0 + args.beta_step * n, args.N)
    rows, cols = _bound_rows(rep)
    meta = {"l0": args.l0, "N": args.N, "bound": rep.bound, "envelope_holds": rep.extra["envelope_holds"],
            "cuff_distance_sum": rep.extra["cuff_distance_sums"][-1]}
    return RunConfig("example55", rows, cols, meta, rep.passed,
                     [f"sup {rep.running_sup[-1]!r} <= {rep.bound!r}: {rep.passed}"])


def cmd_example56(args) -> RunConfig:
    from .starcheck import collar_insert_check
    r = collar_insert_check(args.N, args.eps0)
    rows = [{"n": n, "length": a, "closed_form": b} for n, a, b in zip(r.n_range, r.lengths, r.closed_form)]
    ok = r.max_mismatch <= 1e-12 and r.n0 is not None
    return RunConfig("example56", rows, ["n", "length", "closed_form"],
                     {"N": args.N, "eps0": r.eps0, "n0": r.n0, "max_mismatch": r.max_mismatch}, ok,
                     [f"n0 = {r.n0} for eps0 = {r.eps0!r}"])


def cmd_example57(args) -> RunConfig:
    from .starcheck import polygon_example_check
    rep = polygon_example_check(range(args.n_min, args.n_max + 1))
    rows, cols = _bound_rows(rep)
    meta = {"bound": rep.bound, **rep.extra}
    return RunConfig("example57", rows, cols, meta, rep.passed,
                     [f"max L {rep.running_sup[-1]!r} < arcsinh 2; constant {rep.extra['constant']!r}"])


def cmd_shiga(args) -> RunConfig:
    from .starcheck import SHIGA_FAMILIES, shiga_check
    if args.config:
        target = _load_fn(args.config)
    elif args.family in SHIGA_FAMILIES:
        target = SHIGA_FAMILIES[args.family]
    else:
        raise UsageError(f"unknown family {args.family!r}; known: {sorted(SHIGA_FAMILIES)}")
    r = shiga_check(target)
    row = {"family": args.family or args.config, "rule": r.rule, "min": r.min, "max": r.max, "bounded": r.bounded}
    want = {"yes": True, "no": False}.get(args.expect)
    ok = want is None or r.bounded == want
    return RunConfig("shiga", [row], list(row), {"expect": args.expect}, ok)


def cmd_thurston(args) -> RunConfig:
    from .arcmetric import thurston_asymmetry
    r = thurston_asymmetry(args.alpha1_x, args.alpha1_y, args.family_depth, args.twist_max)
    e = r.eq_x
    err1 = abs(e["cosh_gamma1"] - e["cosh_half_alpha1_plus_2"])
    err2 = abs(e["cosh_quarter_alpha2"] - e["sinh_half_beta_sinh_half_gamma2"])
    ok = err1 <= 1e-6 and err2 <= 1e-6 and r.gap > 0.1
    rows = [{"label": t["label"], "kind": t["kind"], "length_x": t["length_x"], "length_y": t["length_y"],
             "log_ratio": t["log_ratio"]} for t in r.d_xy.table]
    meta = {"alpha1_x": args.alpha1_x, "alpha1_y": args.alpha1_y, "cosh_gamma1_error": err1,
            "cosh_alpha2_error": err2, "sup_log_ratio_xy": r.d_xy.sup_log_ratio,
            "witness_xy": r.d_xy.witness.label, "sup_log_ratio_yx": r.d_yx.sup_log_ratio,
            "witness_yx": r.d_yx.witness.label, "gap": r.gap,
            "inequalities": {k: v for k, v in r.inequalities.items()}}
    return RunConfig("thurston-asymmetry", rows, ["label", "kind", "length_x", "length_y", "log_ratio"], meta, ok,
                     [f"gap {r.gap!r}", f"relation errors {err1!r}, {err2!r}"])


def _surface_flags(p):
    p.add_argument("--pants", help="cuff lengths l1,l2,l3")
    p.add_argument("--surface", help="pants:..., xpiece:..., torus:... or a JSON surface file")
    p.add_argument("--config", help="JSON surface file; inline flags override it")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hypsurf", description=__doc__.split("\n")[0])
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, helptext):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--tol", type=float, default=1e-9)
        return p

    p = add("basmajian", cmd_basmajian, "orthospectrum identity for one boundary")
    _surface_flags(p)
    p.add_argument("--boundary", default="1")
    p.add_argument("--max-word-length", type=int, default=8)
    p = add("mcshane-torus", cmd_mcshane, "simple-curve identity on a one-holed torus")
    _surface_flags(p)
    p.add_argument("--traces", help="tr A, tr B, tr AB")
    p.add_argument("--length-cap", type=float, default=20.0)
    p = add("spectrum", cmd_spectrum, "orthogeodesics from one boundary")
    _surface_flags(p)
    p.add_argument("--boundary", default="1")
    p.add_argument("--max-word-length", type=int, default=4)
    p = add("arc-metric", cmd_arc_metric, "family estimate of the arc metric")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--family-depth", type=int, default=3)
    p.add_argument("--twist-max", type=int, default=4)
    p = add("tight-pants", cmd_tight_pants, "cuff distance in pants with one cusp")
    p.add_argument("--lengths", help="l1,l2")
    p.add_argument("--random", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p = add("example52", cmd_example52, "hexagon vertex distances for chained X-pieces")
    p.add_argument("--l0", type=float, default=1.0)
    p.add_argument("--N", type=int, default=200)
    p.add_argument("--growth", choices=("linear", "log"), default="linear")
    p = add("example53", cmd_example53, "tight flute with log coth(l_i/4) = 2^-i")
    p.add_argument("--n", type=int, default=30)
    p = add("example55", cmd_example55, "flute with constant alpha and growing beta")
    p.add_argument("--l0", type=float, default=0.5)
    p.add_argument("--beta0", type=float, default=1.0)
    p.add_argument("--beta-step", type=float, default=1.0)
    p.add_argument("--N", type=int, default=50)
    p = add("example56", cmd_example56, "equidistant curves around shrinking inserted cuffs")
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--eps0", type=float, default=1e-3)
    p = add("example57", cmd_example57, "trirectangles with angle pi/n")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=100)
    p = add("shiga", cmd_shiga, "bounded pants decomposition check")
    p.add_argument("--family", default="unit-flute")
    p.add_argument("--config")
    p.add_argument("--expect", choices=("yes", "no", "any"), default="any")
    p = add("thurston-asymmetry", cmd_thurston, "X-piece asymmetry of the arc metric")
    p.add_argument("--alpha1-x", type=float, default=0.5)
    p.add_argument("--alpha1-y", type=float, default=0.1)
    p.add_argument("--family-depth", type=int, default=3)
    p.add_argument("--twist-max", type=int, default=4)
    return top


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def render(cfg: RunConfig, fmt: str, tol: float) -> str:
    from . import __version__
    if fmt == "json":
        doc = {"command": cfg.subcommand, "passed": cfg.passed, "columns": cfg.columns, "rows": cfg.rows,
               "metadata": dict(cfg.metadata, tol=tol, version=__version__)}
        return json.dumps(doc, indent=1, sort_keys=True, default=str) + "\n"
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cfg.columns)
    for r in cfg.rows:
        w.writerow([_fmt(r[c]) for c in cfg.columns])
    return buf.getvalue()


def _set_threads():
    n = os.environ.get(THREADS_ENV, "1")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, n)


def run(argv: list[str] | None = None) -> int:
    _set_threads()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(cfg, args.format, args.tol)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stdout = None
    for line in cfg.summary:
        print(line, file=sys.stderr)
    if not cfg.passed:
        print(f"{cfg.subcommand}: check failed", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())

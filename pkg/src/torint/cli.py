"""Command-line front end.

Each verb parses a JSON document (from --input or stdin), dispatches to
one library operation, and prints a single self-describing JSON report
on stdout.  Reports are deterministic: identical input, options, and
seed produce identical bytes, whatever the worker count.  Wall-clock
timing therefore goes to stderr (`elapsed_ms=...`), never into the
report.

Exit codes: 0 success; 1 for domain errors (a structured error object
is still printed); 2 for unreadable input or bad options.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .curves import ParamCurve, closures, evaluate_point
from .errors import (
    ConstantCurveError,
    DomainError,
    InputFormatError,
    NotOnTorus,
    TorintError,
)
from .lattice import IntLattice, saturate
from .models import (
    check_defect_condition,
    check_pink_form,
    closure_and_defect,
    model_from_doc,
    negative_control_defect,
    optimal_flats,
    pythagorean_lines,
    weakly_optimal_flats,
)
from .polys import Poly
from .scalars import format_cyclorat, parse_cyclorat
from .scan import AtypicalRecord, scan, zp_report
from .torus import (
    GeneralCoset,
    TorsionCoset,
    TorusPoint,
    intersect_torsion_cosets,
    point_closures,
    special_closure_of_coset,
)

_FIXED_SEED = 20260816


# ---- serialization ----


def _frac(x) -> str:
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def _poly_doc(p: Poly) -> dict:
    return {"coefficients": [_frac(c) for c in p.coeffs], "text": str(p)}


def _lattice_rows(lat: IntLattice) -> list:
    return [list(row) for row in lat.basis.entries]


def _coset_doc(c) -> dict:
    g = c.as_general() if isinstance(c, TorsionCoset) else c
    return {
        "ambient": g.ambient_dim,
        "lattice": _lattice_rows(g.lattice),
        "values": [format_cyclorat(v) for v in g.values],
    }


def _record_doc(r: AtypicalRecord) -> dict:
    return {
        "poly": _poly_doc(r.defining_poly),
        "witnesses": [{"vector": list(v), "order": m} for v, m in r.witnesses],
        "lattice": _lattice_rows(r.witnessed_lattice),
        "defect_upper_bound": r.defect_upper_bound,
    }


def _closures_doc(rep) -> dict:
    return {
        "defect": rep.defect,
        "weak_defect": rep.weak_defect,
        "special": rep.is_special,
        "ws_closure": _coset_doc(rep.ws_closure),
        "sp_closure": _coset_doc(rep.sp_closure),
    }


# ---- input documents ----


def _read_document(path: str | None) -> dict:
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise InputFormatError(f"cannot read input: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"input is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputFormatError("input document must be a JSON object")
    return doc


def _curve_from_doc(doc: dict) -> ParamCurve:
    coords = doc.get("coords")
    if not isinstance(coords, list) or not all(isinstance(c, str) for c in coords):
        raise InputFormatError('curve document needs "coords": [<expression>, ...]')
    curve = ParamCurve.from_strings(coords)
    ambient = doc.get("ambient")
    if ambient is not None and int(ambient) != curve.ambient_dim:
        raise InputFormatError("declared ambient dimension differs from coordinate count")
    return curve


def _coset_from_doc(doc: dict) -> GeneralCoset:
    try:
        ambient = int(doc["ambient"])
        rows = [[int(e) for e in row] for row in doc["lattice"]]
        values = tuple(parse_cyclorat(str(v)) for v in doc["values"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"malformed coset document: {e}") from None
    return GeneralCoset(ambient, IntLattice.from_rows(ambient, rows), values)


def _point_from_doc(doc: dict) -> TorusPoint:
    try:
        coords = tuple(parse_cyclorat(str(v)) for v in doc["coords"])
        ambient = int(doc.get("ambient", len(coords)))
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"malformed point document: {e}") from None
    return TorusPoint(ambient, coords)


# ---- verb payloads ----


def _cmd_closure(doc: dict) -> dict:
    curve = _curve_from_doc(doc)
    return {"closures": _closures_doc(closures(curve))}


def _cmd_intersect(doc: dict) -> dict:
    entries = doc.get("cosets")
    if not isinstance(entries, list) or len(entries) != 2:
        raise InputFormatError('intersect needs "cosets": [<coset>, <coset>]')
    a = _coset_from_doc(entries[0]).as_torsion()
    b = _coset_from_doc(entries[1]).as_torsion()
    comps = intersect_torsion_cosets(a, b)
    return {"components": [_coset_doc(c) for c in comps], "count": len(comps)}


def _cmd_point(doc: dict) -> dict:
    p = _point_from_doc(doc)
    cl, defect = point_closures(p)
    return {"closure": _coset_doc(cl), "defect": defect, "torsion": p.is_torsion}


def _cmd_scan(doc: dict, opts) -> dict:
    curve = _curve_from_doc(doc)
    res = scan(curve, opts.B, opts.N, workers=opts.workers)
    return {
        "B": res.bound_B,
        "N": res.bound_N,
        "records": [_record_doc(r) for r in res.records],
        "total_degree": res.total_degree,
    }


def _cmd_zp(doc: dict, opts) -> dict:
    curve = _curve_from_doc(doc)
    rep = zp_report(curve, opts.d, opts.B, opts.N, workers=opts.workers)
    return {
        "d": rep.d,
        "B": rep.bound_B,
        "N": rep.bound_N,
        "closures": _closures_doc(rep.closure_report),
        "records": [_record_doc(r) for r in rep.records],
        "optimal_records": [_record_doc(r) for r in rep.optimal_records],
        "stability": [
            {"B": bb, "N": nn, "records": cnt, "total_degree": deg}
            for bb, nn, cnt, deg in rep.stability
        ],
    }


def _cmd_a5_demo(k: int) -> dict:
    lines = pythagorean_lines(k)
    distinct = len({(t.a, t.b, t.c) for t in lines})
    return {
        "k": k,
        "lines": [[t.a, t.b, t.c] for t in lines],
        "summary": f"A5 fails for C_add: {distinct} distinct weakly special closures",
    }


def _cmd_model_check(doc: dict, d: int) -> dict:
    model = model_from_doc(doc)
    model.validate()
    dc = check_defect_condition(model)
    opt_violations = []
    pink_violations = []
    for f in model.flats:
        wopt = set(weakly_optimal_flats(model, f.name))
        for w in optimal_flats(model, f.name):
            if w not in wopt:
                opt_violations.append([w, f.name])
        pv = check_pink_form(model, f.name, d)
        pink_violations.extend(list(v) for v in pv.violations)
    return {
        "flats": len(model.flats),
        "closures": {
            f.name: {
                "special_closure": (cd := closure_and_defect(model, f.name)).special_closure,
                "ws_closure": cd.ws_closure,
                "defect": cd.defect,
                "weak_defect": cd.weak_defect,
            }
            for f in model.flats
        },
        "defect_condition": {
            "holds": dc.holds,
            "chain": list(dc.chain) if dc.chain else None,
        },
        "optimal_implies_weakly_optimal": {
            "holds": not opt_violations,
            "violations": opt_violations,
        },
        "pink_form": {
            "d": d,
            "holds": not pink_violations,
            "violations": pink_violations,
        },
    }


# ---- the defect-condition fuzz driver ----

_CURVE_SHAPES = [
    ["t", "1 - t"],
    ["t", "t^2", "4*t^3"],
    ["t^2", "t"],
    ["2*t", "t"],
    ["t", "t + 1", "t + 2"],
    ["t", "2 - t", "3*t"],
    ["(t - 1)/(t + 1)", "t"],
    ["t^2 - 1", "t + 1"],
    ["t", "1 - t", "2"],
    ["t^3", "t", "t^2", "5"],
    ["t", "t^2 + 1"],
    ["3*t^2", "t", "t + 3", "abs"],
]


def _random_point_chain(rng: random.Random) -> tuple[int, int]:
    """Defect gaps (outer curve, inner point) for a random admissible
    point on a random curve; the chain is point-in-curve."""
    while True:
        shape = list(rng.choice(_CURVE_SHAPES))
        if "abs" in shape:
            shape = [s for s in shape if s != "abs"]
            shape.append(f"t + {rng.randrange(4, 9)}")
        try:
            curve = ParamCurve.from_strings(shape)
        except ConstantCurveError:  # pragma: no cover - pool is non-constant
            continue
        rep = closures(curve)
        for _ in range(12):
            t0 = Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
            try:
                p = evaluate_point(curve, t0)
            except NotOnTorus:
                continue
            _, point_defect = point_closures(p)
            return rep.defect - rep.weak_defect, point_defect


def _random_coset_chain(rng: random.Random) -> tuple[int, int]:
    """Defect gaps (outer, inner) for a random nested coset pair; any
    coset is weakly special, so the gaps are plain defects."""
    while True:
        n = rng.randrange(2, 5)
        rows_a = [[rng.randrange(-3, 4) for _ in range(n)]
                  for _ in range(rng.randrange(1, n))]
        rows_b = [[rng.randrange(-3, 4) for _ in range(n)]
                  for _ in range(rng.randrange(1, n))]
        inner_lat = saturate(IntLattice.from_rows(n, rows_a + rows_b))[0]
        outer_lat = saturate(IntLattice.from_rows(n, rows_a))[0]
        if inner_lat.rank == outer_lat.rank:
            continue

        def rand_value():
            num = rng.randrange(1, 7)
            den = rng.randrange(1, 7)
            ang = Fraction(rng.randrange(0, 6), rng.choice([1, 2, 3, 4, 6]))
            return parse_cyclorat(f"{num}/{den}@{ang.numerator}/{ang.denominator}")

        inner = GeneralCoset(n, inner_lat,
                             tuple(rand_value() for _ in range(inner_lat.rank)))
        outer = GeneralCoset(n, outer_lat,
                             tuple(inner.value_of(row)
                                   for row in outer_lat.basis.entries))
        outer_gap = special_closure_of_coset(outer).dim - outer.dim
        inner_gap = special_closure_of_coset(inner).dim - inner.dim
        return outer_gap, inner_gap


def defect_condition_fuzz(seed: int = _FIXED_SEED, chains: int = 1000) -> dict:
    """Generate nested chains in small tori and count violations of
    the downward defect-gap inequality; the hand-built violating model
    must be flagged for the run to count as healthy."""
    if chains < 1:
        raise DomainError("chain count must be positive")
    rng = random.Random(seed)
    violations = []
    kinds = {"point_in_curve": 0, "coset_in_coset": 0}
    for i in range(chains):
        if i % 2 == 0:
            outer_gap, inner_gap = _random_point_chain(rng)
            kinds["point_in_curve"] += 1
        else:
            outer_gap, inner_gap = _random_coset_chain(rng)
            kinds["coset_in_coset"] += 1
        if outer_gap > inner_gap:
            violations.append({"index": i, "outer_gap": outer_gap,
                               "inner_gap": inner_gap})
    control = check_defect_condition(negative_control_defect())
    return {
        "seed": seed,
        "chains": chains,
        "kinds": kinds,
        "violations": violations,
        "violation_count": len(violations),
        "negative_control_flagged": not control.holds,
    }


# ---- dispatch ----


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse must not sys.exit on its own
        raise InputFormatError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="torint", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", metavar="verb")

    def add(name, help_text, *, inp=False, B=False, N=None, d=None,
            seed=False, workers=False, k=None):
        p = sub.add_parser(name, help=help_text)
        if inp:
            p.add_argument("--input", default=None,
                           help="path to the JSON input document (default: stdin)")
        if B:
            p.add_argument("--B", type=int, required=True,
                           help="sup-norm bound for exponent vectors")
        if N is not None:
            p.add_argument("--N", type=int, required=N == "required",
                           default=None if N == "required" else N,
                           help="torsion-order bound / iteration count")
        if d is not None:
            p.add_argument("--d", type=int, required=d == "required",
                           default=None if d == "required" else d,
                           help="defect bound")
        if seed:
            p.add_argument("--seed", type=int, default=_FIXED_SEED,
                           help="PRNG seed for the fuzz driver")
        if workers:
            p.add_argument("--workers", type=int, default=1,
                           help="worker process count for the scan")
        if k is not None:
            p.add_argument("--k", type=int, default=k,
                           help="how many Pythagorean lines to emit")
        return p

    add("closure", "closures and defects of a parametrized curve", inp=True)
    add("intersect", "intersect two torsion cosets", inp=True)
    add("point", "special closure and defect of a torus point", inp=True)
    add("scan", "bounded atypical-point scan on a curve", inp=True,
        B=True, N="required", workers=True)
    add("zp", "bounded optimal-singleton report for a curve", inp=True,
        B=True, N="required", d="required", workers=True)
    add("defect-fuzz", "randomized defect-condition property suite",
        seed=True, N=1000)
    add("a5-demo", "emit pairwise non-proportional Pythagorean lines", k=100)
    add("model-check", "validate a flat model and run its checks",
        inp=True, d=0)
    return parser


_NEEDS_INPUT = frozenset({"closure", "intersect", "point", "scan", "zp", "model-check"})


def _dispatch(opts, doc) -> dict:
    verb = opts.verb
    if verb == "closure":
        return _cmd_closure(doc)
    if verb == "intersect":
        return _cmd_intersect(doc)
    if verb == "point":
        return _cmd_point(doc)
    if verb == "scan":
        if opts.workers < 1:
            raise DomainError("worker count must be positive")
        return _cmd_scan(doc, opts)
    if verb == "zp":
        if opts.workers < 1:
            raise DomainError("worker count must be positive")
        return _cmd_zp(doc, opts)
    if verb == "defect-fuzz":
        return defect_condition_fuzz(seed=opts.seed, chains=opts.N)
    if verb == "a5-demo":
        return _cmd_a5_demo(opts.k)
    if verb == "model-check":
        return _cmd_model_check(doc, opts.d)
    raise InputFormatError("missing verb; see --help")


def _echoed_options(opts) -> dict:
    # workers is execution machinery: output must not depend on it
    skip = {"verb", "input", "workers"}
    return {key: value for key, value in sorted(vars(opts).items())
            if key not in skip}


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    started = time.monotonic()
    head = {"tool": "torint", "version": __version__}
    try:
        opts = _build_parser().parse_args(argv)
        if opts.verb is None:
            raise InputFormatError("missing verb; see --help")
        doc = _read_document(opts.input) if opts.verb in _NEEDS_INPUT else None
        payload = _dispatch(opts, doc)
        report = dict(head)
        report["verb"] = opts.verb
        report["options"] = _echoed_options(opts)
        if doc is not None:
            report["input"] = doc
        report["result"] = payload
        _emit(report)
        status = 0
    except InputFormatError as e:
        _emit({**head, "error": {"type": type(e).__name__, "message": str(e)}})
        status = 2
    except TorintError as e:
        _emit({**head, "error": {"type": type(e).__name__, "message": str(e)}})
        status = 1
    print(f"elapsed_ms={int((time.monotonic() - started) * 1000)}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Finite combinatorial models of special-structure lattices.

A FlatModel is an explicit finite poset of "flats", each carrying a
dimension and special / weakly-special flags, together with a partial
table of meet components.  Torus data (curves, points, scan reports)
export to such models, and the checks below test the formal closure
and defect statements on them.  A check passing on a model means
exactly that: the statement holds on this finite structure, nothing
more.  Hand-built violating models keep the checks honest by showing
they are not vacuous.

The A5 failure witness lives here too: the primitive Pythagorean
triples, each naming a line on the cone x^2 + y^2 = z^2 in the
additive group, where those lines form infinitely many distinct
weakly special closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .curves import ParamCurve, closures, evaluate_point
from .errors import DomainError, InputFormatError, ModelInvariantError
from .lattice import saturate
from .scan import ZPReport
from .torus import (
    GeneralCoset,
    contains_point,
    coset_contains,
    full_coset,
    point_closures,
)


@dataclass(frozen=True)
class Flat:
    name: str
    dim: int
    special: bool
    weakly_special: bool


@dataclass(frozen=True)
class ClosureDefect:
    special_closure: str
    ws_closure: str
    defect: int
    weak_defect: int


@dataclass(frozen=True)
class DefectConditionVerdict:
    holds: bool
    # on failure: (inner flat, outer flat) with inner strictly contained
    chain: tuple[str, str] | None = None


@dataclass(frozen=True)
class PinkVerdict:
    holds: bool
    # violations as (subvariety, special flat, meet component) name triples
    violations: tuple[tuple[str, str, str], ...] = ()


class FlatModel:
    """Immutable finite poset of flats with flags and meet data.

    containments are given as (sub, super) name pairs and closed
    transitively on construction; meet_components maps unordered flat
    pairs to the list of their known intersection components.  The
    meet table may be partial: pairs without an entry are simply
    unknown to the model.
    """

    def __init__(self, ambient_dim, flats, containments, meet_components=None):
        self.ambient_dim = int(ambient_dim)
        self.flats = tuple(flats)
        self._by_name = {f.name: f for f in self.flats}
        if len(self._by_name) != len(self.flats):
            raise InputFormatError("duplicate flat names")
        order = {f.name: i for i, f in enumerate(self.flats)}
        pairs = set()
        for sub, sup in containments:
            if sub not in self._by_name or sup not in self._by_name:
                raise InputFormatError(f"containment references unknown flat: {sub!r}, {sup!r}")
            if sub != sup:
                pairs.add((sub, sup))
        # transitive closure (Warshall over the name list)
        changed = True
        while changed:
            changed = False
            for a, b in list(pairs):
                for c, d in list(pairs):
                    if b == c and (a, d) not in pairs and a != d:
                        pairs.add((a, d))
                        changed = True
        self._lt = frozenset(pairs)
        meets = {}
        for key, comps in (meet_components or {}).items():
            a, b = key
            if a not in self._by_name or b not in self._by_name:
                raise InputFormatError("meet table references unknown flat")
            for w in comps:
                if w not in self._by_name:
                    raise InputFormatError("meet component is not a flat of the model")
            k = (a, b) if order[a] <= order[b] else (b, a)
            meets[k] = tuple(comps)
        self._meets = meets
        self._order = order

    def flat(self, name: str) -> Flat:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputFormatError(f"no flat named {name!r}") from None

    def leq(self, sub: str, sup: str) -> bool:
        return sub == sup or (sub, sup) in self._lt

    def meets(self, a: str, b: str) -> tuple[str, ...]:
        k = (a, b) if self._order[a] <= self._order[b] else (b, a)
        return self._meets.get(k, ())

    @property
    def meet_table(self):
        return dict(self._meets)

    def validate(self) -> None:
        """Check the declared model invariants; raise ModelInvariantError."""
        tops = [f for f in self.flats
                if all(self.leq(g.name, f.name) for g in self.flats)]
        if len(tops) != 1:
            raise ModelInvariantError("model needs a unique ambient flat containing all flats")
        top = tops[0]
        if not top.special:
            raise ModelInvariantError("the ambient flat must be special")
        if top.dim != self.ambient_dim:
            raise ModelInvariantError("ambient flat dimension differs from ambient_dim")
        for f in self.flats:
            if f.special and not f.weakly_special:
                raise ModelInvariantError(f"special flat {f.name!r} is not weakly special")
        for a, b in self._lt:
            if (b, a) in self._lt:
                raise ModelInvariantError(f"containment cycle between {a!r} and {b!r}")
            if self._by_name[a].dim >= self._by_name[b].dim:
                raise ModelInvariantError(
                    f"dimension does not increase strictly along {a!r} < {b!r}")
        for (a, b), comps in self._meets.items():
            fa, fb = self._by_name[a], self._by_name[b]
            for w in comps:
                fw = self._by_name[w]
                if fa.weakly_special and fb.weakly_special and not fw.weakly_special:
                    raise ModelInvariantError(
                        f"meet component {w!r} of weakly special flats is not weakly special")
                if fa.special and fb.special and not fw.special:
                    raise ModelInvariantError(
                        f"meet component {w!r} of special flats is not special")


def closure_and_defect(model: FlatModel, name: str) -> ClosureDefect:
    """Smallest special and weakly special flats above the given flat,
    with the dimension-difference defects; raises ModelInvariantError
    when a unique minimum does not exist in the model."""
    f = model.flat(name)

    def smallest(flag):
        ups = [g for g in model.flats if flag(g) and model.leq(name, g.name)]
        if not ups:
            raise ModelInvariantError(f"no {'special' if flag is _sp else 'weakly special'} "
                                      f"flat above {name!r}")
        best = min(ups, key=lambda g: (g.dim, model._order[g.name]))
        for g in ups:
            if not model.leq(best.name, g.name):
                raise ModelInvariantError(
                    f"closure of {name!r} is not unique: {best.name!r} vs {g.name!r}")
        return best

    sp = smallest(_sp)
    ws = smallest(_ws)
    return ClosureDefect(special_closure=sp.name, ws_closure=ws.name,
                         defect=sp.dim - f.dim, weak_defect=ws.dim - f.dim)


def _sp(f: Flat) -> bool:
    return f.special


def _ws(f: Flat) -> bool:
    return f.weakly_special


def check_defect_condition(model: FlatModel) -> DefectConditionVerdict:
    """Exhaustively test that the defect gap never grows downward:
    for every strict chain inner < outer, the outer flat's
    defect - weak_defect must not exceed the inner's."""
    gap = {}
    for f in model.flats:
        cd = closure_and_defect(model, f.name)
        gap[f.name] = cd.defect - cd.weak_defect
    for outer in model.flats:
        for inner in model.flats:
            if inner.name != outer.name and model.leq(inner.name, outer.name):
                if gap[outer.name] > gap[inner.name]:
                    return DefectConditionVerdict(holds=False,
                                                  chain=(inner.name, outer.name))
    return DefectConditionVerdict(holds=True)


def is_optimal(model: FlatModel, w: str, v: str) -> bool:
    """w is optimal for v: every strictly larger flat inside v has
    strictly larger defect."""
    if not model.leq(w, v):
        raise DomainError(f"{w!r} is not contained in {v!r}")
    dw = closure_and_defect(model, w).defect
    for u in model.flats:
        if u.name != w and model.leq(w, u.name) and model.leq(u.name, v):
            if closure_and_defect(model, u.name).defect <= dw:
                return False
    return True


def is_weakly_optimal(model: FlatModel, w: str, v: str) -> bool:
    if not model.leq(w, v):
        raise DomainError(f"{w!r} is not contained in {v!r}")
    dw = closure_and_defect(model, w).weak_defect
    for u in model.flats:
        if u.name != w and model.leq(w, u.name) and model.leq(u.name, v):
            if closure_and_defect(model, u.name).weak_defect <= dw:
                return False
    return True


def optimal_flats(model: FlatModel, v: str) -> list[str]:
    return [f.name for f in model.flats
            if model.leq(f.name, v) and is_optimal(model, f.name, v)]


def weakly_optimal_flats(model: FlatModel, v: str) -> list[str]:
    return [f.name for f in model.flats
            if model.leq(f.name, v) and is_weakly_optimal(model, f.name, v)]


def check_pink_form(model: FlatModel, v: str, d: int) -> PinkVerdict:
    """Every recorded meet component of v with a special flat of small
    enough dimension must sit below a proper optimal flat of defect at
    most d inside v.  Vacuously holds when min(defect(v) - 1, d) < 0."""
    if d < 0:
        raise DomainError("defect bound must be non-negative")
    threshold = min(closure_and_defect(model, v).defect - 1, d)
    if threshold < 0:
        return PinkVerdict(holds=True)
    violations = []
    for s in model.flats:
        if not s.special or s.dim > threshold:
            continue
        for w in model.meets(v, s.name):
            absorbed = any(
                u.name != v
                and model.leq(w, u.name) and model.leq(u.name, v)
                and closure_and_defect(model, u.name).defect <= d
                and is_optimal(model, u.name, v)
                for u in model.flats)
            if not absorbed:
                violations.append((v, s.name, w))
    return PinkVerdict(holds=not violations, violations=tuple(violations))


def pink_form_oracle(model: FlatModel, v: str, d: int) -> PinkVerdict:
    """Brute-force restatement for small models: precompute the full
    set of proper optimal flats of defect at most d inside v, then
    demand each qualifying meet component lies below the union."""
    if d < 0:
        raise DomainError("defect bound must be non-negative")
    if len(model.flats) > 12:
        raise DomainError("exhaustive oracle is limited to models with at most 12 flats")
    threshold = min(closure_and_defect(model, v).defect - 1, d)
    if threshold < 0:
        return PinkVerdict(holds=True)
    absorbers = [u for u in optimal_flats(model, v)
                 if u != v and closure_and_defect(model, u).defect <= d]
    covered = {w.name for w in model.flats
               if any(model.leq(w.name, u) for u in absorbers)}
    violations = []
    for s in model.flats:
        if not s.special or s.dim > threshold:
            continue
        for w in model.meets(v, s.name):
            if w not in covered:
                violations.append((v, s.name, w))
    return PinkVerdict(holds=not violations, violations=tuple(violations))


# ---- torus exporters ----


class _Builder:
    def __init__(self, ambient_dim):
        self.ambient_dim = ambient_dim
        self.names = []
        self.flats = {}
        self.keys = {}
        self.edges = set()
        self.meets = {}

    def add(self, key, name_hint, dim, special, weakly_special) -> str:
        if key in self.keys:
            name = self.keys[key]
            old = self.flats[name]
            self.flats[name] = Flat(name, old.dim,
                                    old.special or special,
                                    old.weakly_special or weakly_special)
            return name
        name = name_hint
        i = 2
        while name in self.flats:
            name = f"{name_hint}{i}"
            i += 1
        self.keys[key] = name
        self.names.append(name)
        self.flats[name] = Flat(name, dim, special, weakly_special)
        return name

    def edge(self, sub, sup):
        if sub != sup:
            self.edges.add((sub, sup))

    def meet(self, a, b, comps):
        self.meets[(a, b)] = list(comps)

    def build(self) -> FlatModel:
        return FlatModel(self.ambient_dim,
                         [self.flats[n] for n in self.names],
                         sorted(self.edges),
                         self.meets)


def model_from_curve_points(curve: ParamCurve, params) -> FlatModel:
    """Export the closure structure of a curve and some of its points:
    ambient torus, the curve with its two closures, each point with
    its special closure.  Only containments verified by the coset
    machinery are recorded."""
    n = curve.ambient_dim
    b = _Builder(n)
    top = b.add(("coset", full_coset(n)), "X", n, True, True)
    rep = closures(curve)
    ws, sp = rep.ws_closure, rep.sp_closure
    c_name = b.add(("curve",), "C", 1, rep.defect == 0, rep.weak_defect == 0)
    cosets = {top: full_coset(n)}
    spg_alias = sp.as_general()
    # a defect-zero curve IS its closure coset; alias the keys so a
    # point closure equal to it reuses the curve flat
    if rep.weak_defect == 0:
        b.keys[("coset", ws)] = c_name
        cosets[c_name] = ws
    if rep.defect == 0:
        b.keys[("coset", spg_alias)] = c_name
        cosets[c_name] = spg_alias

    def add_coset(g: GeneralCoset, hint, special):
        if g.dim == n:
            return top
        name = b.add(("coset", g), hint, g.dim, special, True)
        cosets[name] = g
        b.edge(name, top)
        return name

    ws_name = c_name if ws.dim == 1 else add_coset(ws, "wsC", ws.is_torsion_coset)
    if sp.dim == ws.dim:
        # equal-dimension closures are the same coset; keep one flat
        sp_name = ws_name if ws.dim > 1 else c_name
        if sp_name == ws_name and ws.dim > 1 and ws.dim < n:
            sp_name = b.add(("coset", ws), "wsC", ws.dim, True, True)
    else:
        sp_name = c_name if sp.dim == 1 else add_coset(spg_alias, "spC", True)
    if ws.dim > 1:
        b.edge(c_name, ws_name)
    if sp.dim > 1:
        b.edge(c_name, sp_name)
        if ws.dim > 1 and ws.dim < sp.dim:
            b.edge(ws_name, sp_name)

    points = {}
    for i, t0 in enumerate(params):
        p = evaluate_point(curve, t0)
        cl, _ = point_closures(p)
        clg = cl.as_general()
        p_name = b.add(("point", p), f"p{i}", 0, p.is_torsion, True)
        points[p_name] = p
        b.edge(p_name, c_name)
        b.edge(p_name, top)
        if cl.dim == 0:
            cl_name = p_name
        else:
            cl_name = add_coset(clg, f"clp{i}", True)
            b.edge(p_name, cl_name)
        cosets.setdefault(cl_name, clg)

    # verified cross containments between the recorded cosets and points
    names = list(cosets)
    for a in names:
        for c in names:
            if a != c and coset_contains(cosets[c], cosets[a]):
                b.edge(a, c)
    for p_name, p in points.items():
        for c in names:
            if contains_point(cosets[c], p):
                b.edge(p_name, c)
    return b.build()


def model_from_zp_report(curve: ParamCurve, report: ZPReport) -> FlatModel:
    """Ingest a scan report: each record becomes a dimension-zero flat
    below the curve; records with a positive defect bound also get the
    special flat cut out by their witnessed relations.  Meet entries
    record each component against its witnessing special flat; the
    table is partial knowledge, not a full intersection calculus."""
    n = curve.ambient_dim
    b = _Builder(n)
    top = b.add(("coset", full_coset(n)), "X", n, True, True)
    rep = report.closure_report
    ws, sp = rep.ws_closure, rep.sp_closure
    c_name = b.add(("curve",), "C", 1, rep.defect == 0, rep.weak_defect == 0)
    ws_name = top if ws.dim == n else (c_name if ws.dim == 1 else
                                       b.add(("coset", ws), "wsC", ws.dim,
                                             ws.is_torsion_coset, True))
    spg = sp.as_general()
    if sp.dim == ws.dim:
        sp_name = ws_name
        if ws.dim not in (1, n):
            sp_name = b.add(("coset", ws), "wsC", ws.dim, True, True)
    else:
        sp_name = top if sp.dim == n else (c_name if sp.dim == 1 else
                                           b.add(("coset", spg), "spC", sp.dim, True, True))
    b.edge(c_name, ws_name)
    if ws.dim < sp.dim:
        b.edge(ws_name, sp_name)
    b.edge(c_name, sp_name)
    b.edge(c_name, top)
    b.edge(sp_name, top)
    if ws.dim not in (1, n):
        b.edge(ws_name, top)

    sp_rows = sp.lattice.basis.entries
    for i, rec in enumerate(report.records):
        special_pt = rec.defect_upper_bound == 0
        r_name = b.add(("rec", rec.defining_poly), f"rec{i}", 0, special_pt, True)
        b.edge(r_name, c_name)
        b.edge(r_name, top)
        if special_pt:
            b.meet(c_name, r_name, [r_name])
            continue
        # the witnessed coset sits under the curve's special closure
        # exactly when its relations span the closure relations (angle
        # agreement is automatic: both contain the witness point);
        # otherwise the report does not place it, so no flat is made
        wit = saturate(rec.witnessed_lattice)[0]
        refines = all(wit.contains(row) for row in sp_rows)
        if not refines or rec.defect_upper_bound == sp.dim:
            continue
        a_name = b.add(("aux", rec.defining_poly), f"aux{i}",
                       rec.defect_upper_bound, True, True)
        b.edge(r_name, a_name)
        b.edge(a_name, sp_name)
        b.edge(a_name, top)
        b.meet(c_name, a_name, [r_name])
    return b.build()


# ---- document form ----


def model_to_doc(model: FlatModel) -> dict:
    return {
        "ambient_dim": model.ambient_dim,
        "flats": [{"name": f.name, "dim": f.dim, "special": f.special,
                   "weakly_special": f.weakly_special} for f in model.flats],
        "containments": sorted([a, b] for a, b in model._lt),
        "meets": sorted([a, b, list(comps)] for (a, b), comps in model.meet_table.items()),
    }


def model_from_doc(doc: dict) -> FlatModel:
    try:
        flats = [Flat(str(f["name"]), int(f["dim"]), bool(f["special"]),
                      bool(f["weakly_special"])) for f in doc["flats"]]
        containments = [(a, b) for a, b in doc.get("containments", [])]
        meets = {(a, b): list(comps) for a, b, comps in doc.get("meets", [])}
        ambient = int(doc["ambient_dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"malformed model document: {e}") from None
    return FlatModel(ambient, flats, containments, meets)


# ---- hand-built negative controls ----


def negative_control_defect() -> FlatModel:
    """Valid-looking four-flat model violating the defect condition:
    the middle weakly special flat has defect gap 1 while the special
    point below it has gap 0."""
    flats = [
        Flat("X", 2, True, True),
        Flat("L", 1, True, True),
        Flat("V", 1, False, True),
        Flat("P", 0, True, True),
    ]
    cont = [("L", "X"), ("V", "X"), ("P", "V"), ("P", "X")]
    return FlatModel(2, flats, cont)


def negative_control_pink() -> FlatModel:
    """Model whose meet table names a component that does not sit below
    the subvariety, so no optimal flat inside it can absorb it."""
    flats = [
        Flat("X", 2, True, True),
        Flat("V", 1, False, True),
        Flat("Q", 0, True, True),
        Flat("W", 0, False, True),
    ]
    cont = [("V", "X"), ("Q", "X"), ("W", "X")]
    meets = {("V", "Q"): ["W"]}
    return FlatModel(2, flats, cont, meets)


# ---- the A5 counterexample in the additive group ----


@dataclass(frozen=True)
class PythLine:
    """Primitive Pythagorean triple, a line on the cone x^2+y^2=z^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a ** 2 + self.b ** 2 != self.c ** 2:
            raise DomainError("not a Pythagorean triple")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise DomainError("triple is not primitive")


def pythagorean_lines(k: int) -> list[PythLine]:
    """The k primitive triples with smallest hypotenuse, legs sorted
    ascending, via Euclid's parametrization over coprime m > n of
    opposite parity.  Each names one of the infinitely many pairwise
    non-proportional weakly special line closures on the cone."""
    if k < 0:
        raise DomainError("count must be non-negative")
    if k == 0:
        return []
    m_top = 3
    while True:
        triples = []
        for m in range(2, m_top + 1):
            for n in range(1, m):
                if (m - n) % 2 == 1 and gcd(m, n) == 1:
                    a, bb = m * m - n * n, 2 * m * n
                    triples.append(PythLine(min(a, bb), max(a, bb), m * m + n * n))
        # any triple from m > m_top has hypotenuse above m_top^2
        safe = [t for t in triples if t.c <= m_top * m_top + 1]
        if len(safe) >= k:
            safe.sort(key=lambda t: (t.c, t.a))
            return safe[:k]
        m_top *= 2

"""Rational parametrizations of curves in the multiplicative torus.

A curve is t -> (f_1(t), ..., f_n(t)) with nonzero rational functions
f_i over Q.  Constructing a curve eagerly computes its multiplicative
skeleton: a coprime basis (pairwise-coprime monic polynomials, no
irreducible factorization) through which every coordinate factors as
unit * prod basis^e.  The two closures fall out of that data by pure
lattice algebra:

  weakly special closure  = coset cut by {a : f^a is constant}
  special closure         = its sub-lattice where the constant is torsion

defect = dim(special closure) - 1, weak defect likewise; both
closures contain the curve by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstantCurveError, DimensionMismatch, InputFormatError, NotOnTorus
from .lattice import IntLattice, IntMatrix, kernel
from .polys import Poly
from .scalars import CycloRat, cyclorat_from_fraction
from .torus import GeneralCoset, TorsionCoset, TorusPoint, special_closure_of_coset


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function: coprime numerator/denominator, monic denominator."""

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero:
            raise InputFormatError("zero denominator")
        if num.is_zero:
            raise InputFormatError("zero numerator: coordinates must be units")
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        return RatFunc(num.scale(1 / lc), den.scale(1 / lc))

    @staticmethod
    def from_string(text: str) -> "RatFunc":
        num, den = _parse_expression(text)
        return RatFunc.make(num, den)

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def eval(self, t0: Fraction) -> Fraction:
        d = self.den.eval(t0)
        if d == 0:
            raise NotOnTorus(f"pole at t = {t0}")
        return self.num.eval(t0) / d

    def __str__(self) -> str:
        if self.den == Poly.of(1):
            return str(self.num)
        return f"{_render_factor(self.num)}/{_render_factor(self.den)}"


def _render_factor(p: Poly) -> str:
    s = str(p)
    return s if p.degree <= 0 and "/" not in s and "-" not in s or _is_atomic(s) else f"({s})"


def _is_atomic(s: str) -> bool:
    return re.fullmatch(r"-?\d+|t(\^\d+)?", s) is not None


# ---- expression parser: integers, t, + - * / ^, parentheses ----

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>[t])|(?P<op>[-+*/^()])|(?P<bad>\S))")


def _tokenize(text: str):
    text = text.replace("−", "-")
    out = []
    for m in _TOKEN_RE.finditer(text):
        if m.group("bad"):
            raise InputFormatError(f"unexpected character {m.group('bad')!r} in expression")
        if m.group("int"):
            out.append(("int", int(m.group("int"))))
        elif m.group("sym"):
            out.append(("t", None))
        else:
            out.append(("op", m.group("op")))
    out.append(("end", None))
    return out


class _Parser:
    """Recursive descent over (num, den) polynomial pairs."""

    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            if self.take()[1] == "-":
                sign = -sign
        acc = self.term()
        if sign < 0:
            acc = (-acc[0], acc[1])
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            a, b = acc
            c, d = rhs
            if op == "+":
                acc = (a * d + c * b, b * d)
            else:
                acc = (a * d - c * b, b * d)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.factor()
            a, b = acc
            c, d = rhs
            if op == "*":
                acc = (a * c, b * d)
            else:
                if c.is_zero:
                    raise InputFormatError("division by zero in expression")
                acc = (a * d, b * c)
        return acc

    def factor(self):
        sign = 1
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            if self.take()[1] == "-":
                sign = -sign
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e_sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                e_sign = -1
            kind, val = self.take()
            if kind != "int":
                raise InputFormatError("exponent must be an integer literal")
            e = e_sign * val
            a, b = base
            if e >= 0:
                base = (a ** e, b ** e)
            else:
                if a.is_zero:
                    raise InputFormatError("zero raised to a negative power")
                base = (b ** (-e), a ** (-e))
        if sign < 0:
            base = (-base[0], base[1])
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return (Poly.of(val), Poly.of(1))
        if kind == "t":
            return (Poly.x(), Poly.of(1))
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise InputFormatError("unbalanced parentheses")
            return inner
        raise InputFormatError("expression syntax error")


def _parse_expression(text: str) -> tuple[Poly, Poly]:
    p = _Parser(_tokenize(text))
    num, den = p.expr()
    if p.take()[0] != "end":
        raise InputFormatError("trailing tokens after expression")
    if den.is_zero:
        raise InputFormatError("division by zero in expression")
    return num, den


def coprime_basis(polys: list[Poly]) -> tuple[list[Poly], list[list[int]], list[Fraction]]:
    """Gcd-free basis of a family of nonzero polynomials.

    Returns (basis, exponents, units): basis elements are monic,
    nonconstant, pairwise coprime and sorted; each input factors
    exactly as units[i] * prod basis[j]^exponents[i][j].  No
    irreducible factorization is attempted.
    """
    for p in polys:
        if p.is_zero:
            raise InputFormatError("coprime basis of a zero polynomial")
    basis: list[Poly] = []
    for p in polys:
        m = p.monic()
        if m.degree > 0 and m not in basis:
            basis.append(m)
    # refine until pairwise coprime; each split lowers total degree
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = basis[i].gcd(basis[j])
                if g.degree > 0:
                    replacements = [basis[i] // g, basis[j] // g, g]
                    rest = [b for k, b in enumerate(basis) if k not in (i, j)]
                    for r in replacements:
                        if r.degree > 0 and r not in rest:
                            rest.append(r)
                    basis = rest
                    changed = True
                    break
            if changed:
                break
    basis.sort(key=lambda b: (b.degree, b.coeffs))
    exponents = []
    units = []
    for p in polys:
        row = []
        rem = p.monic()
        for b in basis:
            e = 0
            while rem.degree >= b.degree:
                q, r = rem.divmod(b)
                if not r.is_zero:
                    break
                rem = q
                e += 1
            row.append(e)
        assert rem.degree == 0, "input escaped its coprime basis"
        exponents.append(row)
        units.append(p.lc)
    return basis, exponents, units


@dataclass(frozen=True)
class ClosureReport:
    ws_closure: GeneralCoset
    sp_closure: TorsionCoset
    defect: int
    weak_defect: int

    @property
    def is_special(self) -> bool:
        return self.defect == 0


class ParamCurve:
    """Curve t -> (f_1(t), ..., f_n(t)) with its multiplicative skeleton cached."""

    def __init__(self, coords: list[RatFunc] | tuple[RatFunc, ...]):
        coords = tuple(coords)
        if not coords:
            raise DimensionMismatch("a curve needs at least one coordinate")
        self.ambient_dim = len(coords)
        self.coords = coords
        pool = []
        for f in coords:
            pool.append(f.num)
            pool.append(f.den)
        basis, expo, units = coprime_basis(pool)
        self.basis = tuple(basis)
        rows = []
        self.units: tuple[Fraction, ...] = ()
        unit_list = []
        for i in range(self.ambient_dim):
            num_row, den_row = expo[2 * i], expo[2 * i + 1]
            rows.append([a - b for a, b in zip(num_row, den_row)])
            unit_list.append(units[2 * i] / units[2 * i + 1])
        if not any(any(r) for r in rows):
            raise ConstantCurveError("every coordinate is constant; this is a point")
        self.exponents = IntMatrix.from_rows(rows, len(basis))
        self.units = tuple(unit_list)

    @staticmethod
    def from_strings(exprs: list[str]) -> "ParamCurve":
        return ParamCurve([RatFunc.from_string(s) for s in exprs])

    def unit_monomial(self, vec) -> CycloRat:
        """The constant value of f^vec for vec in the constant-relation lattice."""
        acc = CycloRat.one()
        for u, e in zip(self.units, vec):
            if e:
                acc = acc.mul(cyclorat_from_fraction(u).pow(int(e)))
        return acc

    def constant_relation_lattice(self) -> IntLattice:
        """{a : f^a is a constant function} = kernel of the exponent pairing."""
        return kernel(self.exponents.transpose())


def closures(curve: ParamCurve) -> ClosureReport:
    ws_lat = curve.constant_relation_lattice()
    ws_values = tuple(curve.unit_monomial(row) for row in ws_lat.basis.entries)
    ws = GeneralCoset(curve.ambient_dim, ws_lat, ws_values)
    sp = special_closure_of_coset(ws)
    return ClosureReport(ws_closure=ws, sp_closure=sp,
                         defect=sp.dim - 1, weak_defect=ws.dim - 1)


def evaluate_point(curve: ParamCurve, t0) -> TorusPoint:
    """The curve point at parameter t0; rejects zeros and poles."""
    t0 = Fraction(t0)
    vals = []
    for f in curve.coords:
        v = f.eval(t0)
        if v == 0:
            raise NotOnTorus(f"coordinate vanishes at t = {t0}")
        vals.append(cyclorat_from_fraction(v))
    return TorusPoint(curve.ambient_dim, tuple(vals))

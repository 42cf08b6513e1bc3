"""Exact nonzero scalars: positive rationals times roots of unity.

A scalar is q * e^(2*pi*i*theta) with q a positive rational kept in
fully factored form (prime -> nonzero exponent) and theta a rational
angle in [0, 1).  The group is written multiplicatively; a scalar is
torsion exactly when its factored magnitude is empty.  Rational
input signs fold into the angle as 1/2.

Factoring uses trial division up to a configurable bound; inputs
whose factorization cannot be certified within the bound are
rejected rather than guessed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import DimensionMismatch, FactorBoundExceeded, InputFormatError
from .lattice import IntLattice, IntMatrix, kernel

DEFAULT_FACTOR_BOUND = 10**6

# prime -> exponent maps are carried as tuples sorted by prime so that
# scalars hash and compare structurally
Factorization = tuple[tuple[int, int], ...]


def _factor_int(n: int, bound: int) -> dict[int, int]:
    """Factor n >= 1 by trial division with divisors up to bound.

    Complete and certified: any cofactor left once d*d > n is prime.
    If certification would need a divisor beyond the bound, the input
    is rejected instead of being factored heuristically.
    """
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorBoundExceeded(
                f"factoring {n} needs trial divisors above {bound}; raise the bound")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def normalize_angle(theta) -> Fraction:
    return Fraction(theta) % 1


@dataclass(frozen=True)
class CycloRat:
    """q * e^(2*pi*i*angle) with q > 0 rational, held factored."""

    magnitude: Factorization
    angle: Fraction

    def __post_init__(self):
        assert all(e != 0 and p >= 2 for p, e in self.magnitude)
        assert tuple(sorted(p for p, _ in self.magnitude)) == tuple(p for p, _ in self.magnitude)
        assert 0 <= self.angle < 1

    @staticmethod
    def from_rational(value, bound: int = DEFAULT_FACTOR_BOUND) -> "CycloRat":
        return cyclorat_from_fraction(Fraction(value), bound=bound)

    @staticmethod
    def root_of_unity(theta) -> "CycloRat":
        return CycloRat((), normalize_angle(theta))

    @staticmethod
    def one() -> "CycloRat":
        return CycloRat((), Fraction(0))

    @property
    def is_torsion(self) -> bool:
        return not self.magnitude

    @property
    def is_one(self) -> bool:
        return not self.magnitude and self.angle == 0

    def magnitude_fraction(self) -> Fraction:
        q = Fraction(1)
        for p, e in self.magnitude:
            q *= Fraction(p) ** e
        return q

    def mul(self, other: "CycloRat") -> "CycloRat":
        mag = dict(self.magnitude)
        for p, e in other.magnitude:
            e2 = mag.get(p, 0) + e
            if e2:
                mag[p] = e2
            else:
                mag.pop(p, None)
        return CycloRat(tuple(sorted(mag.items())), normalize_angle(self.angle + other.angle))

    def pow(self, k: int) -> "CycloRat":
        if k == 0:
            return CycloRat.one()
        return CycloRat(tuple((p, e * k) for p, e in self.magnitude),
                        normalize_angle(self.angle * k))

    def inv(self) -> "CycloRat":
        return self.pow(-1)

    def __str__(self) -> str:
        return format_cyclorat(self)


def cyclorat_from_fraction(q: Fraction, bound: int = DEFAULT_FACTOR_BOUND) -> CycloRat:
    if q == 0:
        raise InputFormatError("0 is not a unit scalar")
    sign, mag = factor_rational(q.numerator, q.denominator, bound=bound)
    return CycloRat(mag, Fraction(0) if sign > 0 else Fraction(1, 2))


def factor_rational(num: int, den: int = 1,
                    bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, Factorization]:
    """(sign, sorted (prime, exponent) pairs) with num/den = sign * product."""
    if num == 0 or den == 0:
        raise InputFormatError("factor_rational expects a nonzero rational")
    sign = 1 if (num > 0) == (den > 0) else -1
    num, den = abs(num), abs(den)
    g = gcd(num, den)
    num //= g
    den //= g
    f = _factor_int(num, bound)
    for p, e in _factor_int(den, bound).items():
        f[p] = f.get(p, 0) - e
    return sign, tuple(sorted((p, e) for p, e in f.items() if e))


def monomial_eval(coords: tuple[CycloRat, ...], exponents) -> CycloRat:
    """prod coords[i] ** exponents[i]."""
    if len(coords) != len(exponents):
        raise DimensionMismatch("monomial exponent length differs from point dimension")
    acc = CycloRat.one()
    for c, e in zip(coords, exponents):
        e = int(e)
        if e:
            acc = acc.mul(c.pow(e))
    return acc


def relation_lattices(scalars: tuple[CycloRat, ...] | list[CycloRat]) -> tuple[IntLattice, IntLattice]:
    """Multiplicative relation lattices of a scalar tuple.

    Returns (exact, torsion): torsion = {a : prod s_i^a_i is a root of
    unity}, exact = {a : prod s_i^a_i = 1}.  The torsion lattice is a
    kernel, hence saturated; the exact lattice sits inside it with
    finite index determined by the angle congruences.
    """
    scalars = tuple(scalars)
    k = len(scalars)
    primes = sorted({p for s in scalars for p, _ in s.magnitude})
    rows = [[dict(s.magnitude).get(p, 0) for s in scalars] for p in primes]
    torsion = kernel(IntMatrix.from_rows(rows, k))

    r = torsion.rank
    if r == 0:
        return IntLattice.from_rows(k, []), torsion
    basis_angles = [monomial_eval(scalars, row).angle for row in torsion.basis.entries]
    lcm = 1
    for th in basis_angles:
        lcm = lcm * th.denominator // gcd(lcm, th.denominator)
    scaled = [int(th * lcm) for th in basis_angles]
    # {c : sum c_j * scaled_j = 0 mod lcm}: kernel of [scaled | lcm], first r coords
    cong = kernel(IntMatrix.from_rows([scaled + [lcm]], r + 1))
    exact_rows = []
    for w in cong.basis.entries:
        exact_rows.append(torsion.member_from_coords(w[:r]))
    return IntLattice.from_rows(k, exact_rows), torsion


# ---- text form: "num/den@a/b", sign folded into the angle ----

_CYCLO_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?P<num>\d+)\s*(?:/\s*(?P<den>\d+))?\s*"
    r"(?:@\s*(?P<anum>-?\d+)\s*(?:/\s*(?P<aden>\d+))?)?\s*$")


def format_cyclorat(s: CycloRat) -> str:
    q = s.magnitude_fraction()
    return f"{q.numerator}/{q.denominator}@{s.angle.numerator}/{s.angle.denominator}"


def parse_cyclorat(text: str, bound: int = DEFAULT_FACTOR_BOUND) -> CycloRat:
    m = _CYCLO_RE.match(text)
    if not m:
        raise InputFormatError(f"unreadable scalar {text!r}; expected num/den@a/b")
    num = int(m.group("num"))
    den = int(m.group("den") or 1)
    if num == 0 or den == 0:
        raise InputFormatError(f"scalar {text!r} is not a unit")
    angle = normalize_angle(Fraction(int(m.group("anum") or 0), int(m.group("aden") or 1)))
    if m.group("sign") == "-":
        angle = normalize_angle(angle + Fraction(1, 2))
    _, mag = factor_rational(num, den, bound=bound)
    return CycloRat(mag, angle)

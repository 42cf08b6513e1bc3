"""Dense univariate polynomials, exact throughout.

Two layers share this module.  Poly carries Fraction coefficients
(ascending, trimmed) and is the representation used by rational
functions and curve bookkeeping.  The zp_* functions work on plain
int tuples for the scan's hot path: primitive-PRS gcds, squarefree
parts, cyclotomic polynomials, and a one-prime modular gcd degree
used purely as a sound skip-filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial over Q; coeffs ascending, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(_trim(Fraction(c) for c in coeffs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly.of(c)

    @staticmethod
    def x() -> "Poly":
        return Poly.of(0, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(_trim(out))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(_trim(out))

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly(())
        return Poly(tuple(x * c for x in self.coeffs))

    def __pow__(self, k: int) -> "Poly":
        assert k >= 0
        result = Poly.of(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, den: "Poly") -> tuple["Poly", "Poly"]:
        if den.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(den.coeffs) + 1)
        rem = list(self.coeffs)
        dl = den.degree
        dlc = den.lc
        for i in range(len(rem) - 1, dl - 1, -1):
            if rem[i]:
                f = rem[i] / dlc
                q[i - dl] = f
                for j, c in enumerate(den.coeffs):
                    rem[i - dl + j] -= f * c
        return Poly(_trim(q)), Poly(_trim(rem))

    def __floordiv__(self, den: "Poly") -> "Poly":
        return self.divmod(den)[0]

    def __mod__(self, den: "Poly") -> "Poly":
        return self.divmod(den)[1]

    def monic(self) -> "Poly":
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(1 / self.lc)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "Poly":
        return Poly(_trim(c * i for i, c in enumerate(self.coeffs) if i))

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def eval(self, t0) -> Fraction:
        t0 = Fraction(t0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = _frac_str(abs(c))
            else:
                mag = "" if abs(c) == 1 else _frac_str(abs(c)) + "*"
                term = f"{mag}t" if i == 1 else f"{mag}t^{i}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---- integer-coefficient layer (ascending tuples of int) ----

IntPoly = tuple[int, ...]


def zp_from_poly(p: Poly) -> IntPoly:
    """Primitive integer model of a rational polynomial, lc > 0.

    Only root sets survive this normalization; callers must not rely
    on the dropped constant.
    """
    if p.is_zero:
        return ()
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    return zp_primitive(tuple(ints))


def zp_to_monic_poly(f: IntPoly) -> Poly:
    if not f:
        return Poly(())
    lc = f[-1]
    return Poly(tuple(Fraction(c, lc) for c in f))


def zp_trim(f) -> IntPoly:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return tuple(f)


def zp_content(f: IntPoly) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def zp_primitive(f: IntPoly) -> IntPoly:
    f = zp_trim(f)
    if not f:
        return ()
    g = zp_content(f)
    if f[-1] < 0:
        g = -g
    return tuple(c // g for c in f) if g != 1 else f


def zp_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def zp_sub(f: IntPoly, g: IntPoly) -> IntPoly:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] -= c
    return zp_trim(out)


def zp_scale(f: IntPoly, c: int) -> IntPoly:
    return tuple(x * c for x in f) if c else ()


def zp_pow(f: IntPoly, k: int) -> IntPoly:
    result = (1,)
    base = f
    while k:
        if k & 1:
            result = zp_mul(result, base)
        base = zp_mul(base, base)
        k >>= 1
    return result


def zp_pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder of f by g over Z (f scaled by powers of lc(g))."""
    assert g
    dg = len(g) - 1
    rem = list(f)
    glc = g[-1]
    while True:
        while rem and not rem[-1]:
            rem.pop()
        dr = len(rem) - 1
        if dr < dg:
            return tuple(rem)
        c = rem[-1]
        for j in range(len(rem)):
            rem[j] *= glc
        off = dr - dg
        for j in range(dg + 1):
            rem[off + j] -= c * g[j]
        rem.pop()  # leading term cancelled exactly


def _primes_from(start: int, count: int) -> tuple[int, ...]:
    out = []
    n = start if start % 2 else start + 1
    while len(out) < count:
        d = 3
        while d * d <= n and n % d:
            d += 2
        if d * d > n:
            out.append(n)
        n += 2
    return tuple(out)


_MODGCD_PRIMES = _primes_from(1000003, 25)


def _monic_modp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd over F_p of trimmed nonzero coefficient lists."""
    a = a[:]
    b = b[:]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        inv = pow(b[-1], p - 2, p)
        body = [c * inv % p for c in b[:-1]]
        lb = len(b)
        while len(a) >= lb:
            c = a[-1]
            if c:
                k = len(a) - lb
                a[k:] = [(x - c * y) % p for x, y in zip(a[k:-1], body)]
            else:
                del a[-1]
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def zp_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z of the primitive parts, leading coefficient
    positive.

    Modular approach: the monic gcd is computed modulo machine-word
    primes and lifted by CRT with centered coefficients until the
    candidate divides both inputs (a certificate, since the mod-p gcd
    degree can only overshoot).  Falls back to the primitive
    pseudo-remainder sequence if the prime supply runs out.
    """
    a, b = zp_primitive(f), zp_primitive(g)
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 or len(b) == 1:
        return (1,)
    lead = gcd(a[-1], b[-1])
    modulus = 0
    lifted: list[int] = []
    deg_best = -1
    for p in _MODGCD_PRIMES:
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        gp = _monic_modp_gcd([c % p for c in a], [c % p for c in b], p)
        d = len(gp) - 1
        if d == 0:
            return (1,)
        scaled = [lead * c % p for c in gp]
        if deg_best < 0 or d < deg_best:
            # first usable prime, or all earlier primes were unlucky
            deg_best = d
            modulus = p
            lifted = [c - p if 2 * c > p else c for c in scaled]
        elif d == deg_best:
            inv = pow(modulus % p, p - 2, p)
            mp = modulus * p
            nxt = []
            for hc, gc in zip(lifted, scaled):
                x = hc + modulus * ((gc - hc) * inv % p)
                x %= mp
                if 2 * x > mp:
                    x -= mp
                nxt.append(x)
            lifted = nxt
            modulus = mp
        else:
            continue  # deg > deg_best: unlucky prime
        cand = zp_primitive(tuple(lifted))
        if cand and len(cand) <= min(len(a), len(b)):
            if not zp_pseudo_rem(a, cand) and not zp_pseudo_rem(b, cand):
                return cand
    while b:
        r = zp_primitive(zp_pseudo_rem(a, b))
        a, b = b, r
    return zp_primitive(a)


def zp_divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient f / g; f must be divisible by g over Q."""
    assert g, "division by zero polynomial"
    num = Poly(tuple(Fraction(c) for c in f))
    den = Poly(tuple(Fraction(c) for c in g))
    q, r = num.divmod(den)
    assert r.is_zero, "zp_divexact called on a non-multiple"
    return zp_primitive(zp_from_poly(q))


def zp_derivative(f: IntPoly) -> IntPoly:
    return zp_trim(tuple(i * c for i, c in enumerate(f))[1:]) if f else ()


def zp_squarefree(f: IntPoly) -> IntPoly:
    f = zp_primitive(f)
    if len(f) <= 2:
        return f
    d = zp_trim(tuple(i * c for i, c in enumerate(f))[1:])
    g = zp_gcd(f, d)
    if len(g) == 1:
        return f
    return zp_divexact(f, g)


def zp_eval_fraction(f: IntPoly, t0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * t0 + c
    return acc


def zp_divides(f: IntPoly, g: IntPoly) -> bool:
    """True if f divides g over Q (zero polynomial divides only itself)."""
    if not f:
        return not g
    if not g:
        return True
    if len(f) == 1:
        return True
    if len(g) < len(f):
        return False
    return not zp_pseudo_rem(g, zp_primitive(f))


# gcd degree modulo a prime: a sound filter for rational gcds.
# If p divides neither leading coefficient, gcd_Q(f, g) reduces mod p
# to a divisor of gcd_p(f, g), so gcd_p of degree 0 proves coprimality.
_FILTER_PRIMES = _MODGCD_PRIMES[:5]


def modp_reduce(f: IntPoly, p: int) -> list[int]:
    """f mod p as a trimmed coefficient list (assumes p does not divide
    the leading coefficient, so no trim is needed)."""
    return [c % p for c in f]


def modp_gcd_floor_degree(a: list[int], b: list[int], p: int, floor: int = 0) -> int:
    """Degree of gcd(a, b) over F_p, or -1 as soon as the remainder
    chain proves the gcd degree is below floor.

    The gcd divides every element of the Euclidean chain, so once a
    nonzero remainder has degree < floor the exact answer cannot reach
    floor and the caller may stop caring.  Inputs are trimmed nonzero
    coefficient lists mod p; they are not modified.
    """
    a = a[:]
    b = b[:]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if floor and len(b) <= floor:
            return -1
        if len(b) == 1:
            return 0
        inv = pow(b[-1], p - 2, p)
        body = [c * inv % p for c in b[:-1]]
        lb = len(b)
        while len(a) >= lb:
            c = a[-1]
            if c:
                k = len(a) - lb
                a[k:] = [(x - c * y) % p for x, y in zip(a[k:-1], body)]
            else:
                del a[-1]
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    return len(a) - 1


def zp_modp_gcd_degree(f: IntPoly, g: IntPoly) -> int | None:
    """Degree of gcd(f mod p, g mod p) for the first good filter prime.

    Returns None when every filter prime divides a leading coefficient
    (callers must then fall back to the exact gcd).
    """
    for p in _FILTER_PRIMES:
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        return modp_gcd_floor_degree(modp_reduce(f, p), modp_reduce(g, p), p)
    return None


_CYCLOTOMIC_CACHE: dict[int, IntPoly] = {}


def cyclotomic(m: int) -> IntPoly:
    """m-th cyclotomic polynomial as an int tuple (ascending)."""
    assert m >= 1
    got = _CYCLOTOMIC_CACHE.get(m)
    if got is not None:
        return got
    # x^m - 1 divided by the product of proper-divisor cyclotomics
    f: IntPoly = tuple([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            f = zp_divexact(f, cyclotomic(d))
    _CYCLOTOMIC_CACHE[m] = f
    return f


def euler_phi(m: int) -> int:
    out = m
    d = 2
    mm = m
    while d * d <= mm:
        if mm % d == 0:
            out -= out // d
            while mm % d == 0:
                mm //= d
        d += 1
    if mm > 1:
        out -= out // mm
    return out

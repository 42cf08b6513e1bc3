"""Scan for atypical torsion points on a parametrized torus curve.

A parameter value t0 is atypical when two multiplicatively
independent character monomials of the curve both become roots of
unity at t0; the point then lies on an algebraic subgroup of
codimension at least 2.  The certificate for the order-m relation on
the exponent vector a is the polynomial p_a^m - q_a^m where
f^a = p_a/q_a in lowest terms; common roots of two certificates with
independent vectors witness atypicality.

The scan enumerates primitive vectors of sup-norm at most B outside
the constant-relation lattice and torsion orders up to N.  Instead
of gcd-ing the raw order-m certificates pairwise, each relation
locus is split by exact torsion order through cyclotomic transforms
(q^phi(m) * Phi_m(p/q)); root sets and the resulting records are
identical, degrees stay small, and two sound prefilters (a shared
root forces phi(lcm(m1, m2)) to fit under both degrees, and a gcd
modulo one good prime bounds the rational gcd) keep the pair loop
fast.  All reported data is exact; completeness is only ever claimed
relative to the bounds (B, N).

Results merge into pairwise-coprime squarefree defining polynomials
via gcd refinement, each carrying the saturated lattice spanned by
every witnessing vector; n - rank of that lattice is an upper bound
for the defect of the record's points (the true lattice may be
larger).  Records never factor into irreducibles.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .curves import ClosureReport, ParamCurve, closures
from .errors import DomainError, RelationInClosureError
from .lattice import IntLattice, saturate
from .polys import (
    _FILTER_PRIMES,
    IntPoly,
    Poly,
    cyclotomic,
    euler_phi,
    modp_gcd_floor_degree,
    modp_reduce,
    zp_divexact,
    zp_from_poly,
    zp_gcd,
    zp_modp_gcd_degree,
    zp_mul,
    zp_primitive,
    zp_scale,
    zp_squarefree,
    zp_sub,
    zp_to_monic_poly,
)


@dataclass(frozen=True)
class RelationPoly:
    """Order-m torsion certificate for the exponent vector a."""

    vector: tuple[int, ...]
    order: int
    poly: Poly  # p_a^order - q_a^order, identically nonzero


@dataclass(frozen=True)
class AtypicalRecord:
    """A squarefree, domain-coprime bundle of atypical parameter values.

    defining_poly may bundle several Galois orbits; witnessed_lattice
    is spanned by all witnessing vectors (saturated), so
    defect_upper_bound = ambient - rank is only an upper bound for the
    true defect of each bundled point.
    """

    defining_poly: Poly
    witnesses: tuple[tuple[tuple[int, ...], int], ...]  # ((vector, order), ...)
    witnessed_lattice: IntLattice
    defect_upper_bound: int


@dataclass(frozen=True)
class ScanResult:
    bound_B: int
    bound_N: int
    records: tuple[AtypicalRecord, ...]

    @property
    def total_degree(self) -> int:
        return sum(r.defining_poly.degree for r in self.records)


@dataclass(frozen=True)
class ZPReport:
    """Bounded optimal-singleton report for one curve."""

    d: int
    bound_B: int
    bound_N: int
    closure_report: ClosureReport
    records: tuple[AtypicalRecord, ...]
    optimal_records: tuple[AtypicalRecord, ...]
    stability: tuple[tuple[int, int, int, int], ...]  # (B, N, record_count, total_degree)


def _reduced_pair(curve: ParamCurve, vector) -> tuple[Poly, Poly]:
    """(p, q) with f^vector = p/q in lowest terms over Q."""
    num = Poly.of(1)
    den = Poly.of(1)
    for f, e in zip(curve.coords, vector):
        e = int(e)
        if e > 0:
            num = num * f.num ** e
            den = den * f.den ** e
        elif e < 0:
            num = num * f.den ** (-e)
            den = den * f.num ** (-e)
    g = num.gcd(den)
    if g.degree > 0:
        num, den = num // g, den // g
    return num, den


def relation_poly(curve: ParamCurve, vector, order: int) -> RelationPoly:
    """The certificate p_a^m - q_a^m for a primitive vector outside the
    constant-relation lattice; vanishes exactly where f^a has torsion
    of order dividing m (away from coordinate zeros and poles)."""
    vector = tuple(int(x) for x in vector)
    if len(vector) != curve.ambient_dim:
        raise DomainError("vector length differs from curve dimension")
    if order < 1:
        raise DomainError("torsion order must be positive")
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g != 1:
        raise DomainError("vector must be primitive")
    if curve.constant_relation_lattice().contains(vector):
        raise RelationInClosureError(
            "f^a is constant: the vector lies in the constant-relation lattice")
    p, q = _reduced_pair(curve, vector)
    r = p ** order - q ** order
    assert not r.is_zero
    return RelationPoly(vector, order, r)


def _integer_model(p: Poly, q: Poly) -> tuple[IntPoly, IntPoly, int, int]:
    """(P, Q, e, g) with p/q = (e*P)/(g*Q), P, Q primitive, g > 0."""
    ip = zp_from_poly(p)
    iq = zp_from_poly(q)
    scale = (p.lc / ip[-1]) / (q.lc / iq[-1])
    return ip, iq, scale.numerator, scale.denominator


def _order_factor(ip: IntPoly, iq: IntPoly, e: int, g: int, m: int) -> IntPoly:
    """Primitive integer poly whose roots are exactly the parameters
    where (e*P)/(g*Q) is a primitive m-th root of unity."""
    cyc = cyclotomic(m)
    k = len(cyc) - 1  # = phi(m)
    ep = [(1,)]
    gq = [(1,)]
    for _ in range(k):
        ep.append(zp_mul(ep[-1], zp_scale(ip, e)))
        gq.append(zp_mul(gq[-1], zp_scale(iq, g)))
    acc: IntPoly = ()
    for i, c in enumerate(cyc):
        if c:
            acc = zp_sub(acc, zp_scale(zp_mul(ep[i], gq[k - i]), -c))
    return zp_primitive(acc)


def _primitive_vectors(n: int, bound: int):
    """Primitive vectors with sup-norm <= bound, first nonzero entry
    positive, in lexicographic order."""
    for vec in product(range(-bound, bound + 1), repeat=n):
        g = 0
        for x in vec:
            g = gcd(g, x)
        if g != 1:
            continue
        lead = next(x for x in vec if x)
        if lead < 0:
            continue
        yield vec


# worker state inherited via fork: (transform polys, mod-p images or None, prime)
_PAIR_STATE: tuple | None = None


def _pair_gcd_chunk(chunk) -> list[tuple[int, int, IntPoly]]:
    """Exact gcds for one chunk of candidate (i, j, floor) pairs.

    floor is phi(lcm of every order attached to either transform): a
    shared root makes all those relations hold at once, so it generates
    the lcm-th cyclotomic field and every irreducible common factor has
    degree at least floor.  The mod-p chain may therefore certify
    coprimality early.  Returns (i, j, gcd) per surviving pair.
    """
    polys, images, prime = _PAIR_STATE
    out = []
    for i, j, floor in chunk:
        if images is not None:
            if modp_gcd_floor_degree(images[i], images[j], prime, floor) < floor:
                continue
        elif zp_modp_gcd_degree(polys[i], polys[j]) == 0:
            continue
        g = zp_gcd(polys[i], polys[j])
        if len(g) <= 1:
            continue
        # degree-floor argument again, now for the exact gcd
        if len(g) - 1 < floor:
            continue
        out.append((i, j, g))
    return out


def _merge_certificates(n: int, certs) -> list[tuple[IntPoly, frozenset]]:
    """Gcd-refine certificates into pairwise-coprime squarefree records,
    accumulating witness sets across splits."""
    records: list[tuple[IntPoly, frozenset]] = []
    for poly, wit in certs:
        g = poly
        out = []
        for h, s in records:
            if len(g) <= 1:
                out.append((h, s))
                continue
            d = zp_gcd(g, h)
            if len(d) <= 1:
                out.append((h, s))
                continue
            h2 = zp_divexact(h, d)
            if len(h2) > 1:
                out.append((h2, s))
            out.append((d, s | wit))
            g = zp_divexact(g, d)
        if len(g) > 1:
            out.append((g, wit))
        records = out
    return records


def scan(curve: ParamCurve, bound_B: int, bound_N: int, workers: int = 1) -> ScanResult:
    """All atypical parameter bundles witnessed by vector pairs with
    sup-norm <= B and torsion orders <= N.

    Complete relative to the bounds: a parameter whose torsion-relation
    lattice contains two independent vectors of sup-norm <= B whose
    monomials have orders <= N is a root of some record.  Output is
    independent of the worker count.
    """
    if bound_B < 1 or bound_N < 1:
        raise DomainError("scan bounds must be positive")
    n = curve.ambient_dim
    ws_lat = curve.constant_relation_lattice()
    vectors = [v for v in _primitive_vectors(n, bound_B) if not ws_lat.contains(v)]

    # domain polynomial: all numerator/denominator factors of the coordinates
    domain: IntPoly = (1,)
    for b in curve.basis:
        domain = zp_mul(domain, zp_from_poly(b))
    domain = zp_squarefree(domain)

    # distinct transforms, each carrying every (vector, order) it certifies;
    # identical polynomials have identical root loci, so all their
    # relations hold at once at any shared root
    index_of: dict[IntPoly, int] = {}
    polys: list[IntPoly] = []
    groups: list[list[tuple[tuple[int, ...], int]]] = []
    for vec in vectors:
        p, q = _reduced_pair(curve, vec)
        ip, iq, e, g = _integer_model(p, q)
        for m in range(1, bound_N + 1):
            f = _order_factor(ip, iq, e, g, m)
            if len(f) <= 1:
                continue
            idx = index_of.get(f)
            if idx is None:
                idx = len(polys)
                index_of[f] = idx
                polys.append(f)
                groups.append([])
            groups[idx].append((vec, m))

    vecsets = [frozenset(v for v, _ in grp) for grp in groups]
    order_lcms = []
    for grp in groups:
        acc = 1
        for _, m in grp:
            acc = acc * m // gcd(acc, m)
        order_lcms.append(acc)

    # candidate pairs of transforms: some cross pair of witnessing
    # vectors must be distinct (normalized primitives are pairwise
    # independent), and the combined cyclotomic degree phi(lcm of all
    # orders) must fit under both degrees, else no common root exists
    survivors: list[tuple[int, int, int]] = []
    phi_cache: dict[int, int] = {}
    for i in range(len(polys)):
        di = len(polys[i]) - 1
        li = order_lcms[i]
        vsi = vecsets[i]
        for j in range(i + 1, len(polys)):
            if len(vsi) == 1 and vsi == vecsets[j]:
                continue
            dj = len(polys[j]) - 1
            lc = li * order_lcms[j] // gcd(li, order_lcms[j])
            ph = phi_cache.get(lc)
            if ph is None:
                ph = euler_phi(lc)
                phi_cache[lc] = ph
            if ph > di or ph > dj:
                continue
            survivors.append((i, j, ph))

    # one filter prime good for every leading coefficient, or None to
    # fall back to per-pair prime selection
    prime = None
    images = None
    for p in _FILTER_PRIMES:
        if all(f[-1] % p for f in polys):
            prime = p
            images = [modp_reduce(f, p) for f in polys]
            break

    global _PAIR_STATE
    _PAIR_STATE = (polys, images, prime)
    try:
        if workers > 1 and len(survivors) > 64:
            chunk_count = workers * 4
            size = (len(survivors) + chunk_count - 1) // chunk_count
            chunks = [survivors[k:k + size] for k in range(0, len(survivors), size)]
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(workers) as pool:
                parts = pool.map(_pair_gcd_chunk, chunks)
            hits = [h for part in parts for h in part]
        else:
            hits = _pair_gcd_chunk(survivors)
    finally:
        _PAIR_STATE = None

    # a transform witnessed by two distinct vectors is atypical on its own
    self_hits = [(i, i, polys[i]) for i in range(len(polys)) if len(vecsets[i]) > 1]

    # dedupe raw gcd hits before the expensive squarefree/strip steps,
    # then dedupe stripped certificates; witness sets accumulate
    raw: dict[IntPoly, set] = {}
    for i, j, g in self_hits + hits:
        wits = set(groups[i])
        if j != i:
            wits |= set(groups[j])
        seen = raw.get(g)
        if seen is None:
            raw[g] = wits
        else:
            seen |= wits
    stripped: dict[IntPoly, set] = {}
    for g, wits in raw.items():
        sf = zp_squarefree(g)
        d = zp_gcd(sf, domain)
        if len(d) > 1:
            sf = zp_divexact(sf, d)
        if len(sf) <= 1:
            continue
        seen = stripped.get(sf)
        if seen is None:
            stripped[sf] = wits
        else:
            seen |= wits
    certs = [(sf, frozenset(wits)) for sf, wits in stripped.items()]

    merged = _merge_certificates(n, certs)
    records = []
    for h, wits in merged:
        vecs = sorted({w[0] for w in wits})
        lat, _ = saturate(IntLattice.from_rows(n, [list(v) for v in vecs]))
        assert lat.rank >= 2
        records.append(AtypicalRecord(
            defining_poly=zp_to_monic_poly(h),
            witnesses=tuple(sorted(wits)),
            witnessed_lattice=lat,
            defect_upper_bound=n - lat.rank,
        ))
    records.sort(key=lambda r: (r.defining_poly.degree, r.defining_poly.coeffs))
    return ScanResult(bound_B, bound_N, tuple(records))


def zp_report(curve: ParamCurve, d: int, bound_B: int, bound_N: int, workers: int = 1) -> ZPReport:
    """Optimal-singleton report: scan records filtered to those that can
    be optimal inside the curve, plus a bound-growth stability stanza.

    A singleton bundle is kept iff its defect upper bound is at most
    min(d, defect(curve) - 1): a proper singleton is optimal exactly
    when its defect is strictly below the curve's.
    """
    if d < 0:
        raise DomainError("defect bound must be non-negative")
    rep = closures(curve)
    base = scan(curve, bound_B, bound_N, workers=workers)
    threshold = min(d, rep.defect - 1)
    optimal = tuple(r for r in base.records if r.defect_upper_bound <= threshold)
    stability = []
    for bb, nn in ((bound_B, bound_N), (bound_B, 2 * bound_N), (bound_B + 1, bound_N)):
        if (bb, nn) == (bound_B, bound_N):
            res = base
        else:
            res = scan(curve, bb, nn, workers=workers)
        stability.append((bb, nn, len(res.records), res.total_degree))
    return ZPReport(d=d, bound_B=bound_B, bound_N=bound_N, closure_report=rep,
                    records=base.records, optimal_records=optimal,
                    stability=tuple(stability))

"""Exact polynomial arithmetic over Q and the integer (primitive) layer."""

import random
from fractions import Fraction

from torint.polys import (
    Poly,
    cyclotomic,
    euler_phi,
    zp_divexact,
    zp_divides,
    zp_from_poly,
    zp_gcd,
    zp_modp_gcd_degree,
    zp_mul,
    zp_primitive,
    zp_pseudo_rem,
    zp_squarefree,
    zp_to_monic_poly,
    zp_trim,
)


def _p(*coeffs):
    return Poly.of(*coeffs)


def test_poly_arithmetic():
    f = _p(-1, 0, 1)          # t^2 - 1
    g = _p(-1, 1)             # t - 1
    q, r = f.divmod(g)
    assert q == _p(1, 1) and r.is_zero
    assert f // g == _p(1, 1)
    assert (g * _p(1, 1)) == f
    assert f - f == Poly.of()
    assert f.eval(Fraction(3)) == 8
    assert str(f) == "t^2 - 1"
    assert str(_p(Fraction(1, 2), -2, 0, 1)) == "t^3 - 2*t + 1/2"


def test_poly_gcd_monic():
    f = _p(-1, 0, 1) * _p(7, 0, 0, 1)
    g = _p(-1, 0, 1) * _p(5, 1)
    assert f.gcd(g) == _p(-1, 0, 1)
    assert _p(2, 4).gcd(_p(3, 6)) == _p(Fraction(1, 2), 1)  # monic normalization


def test_poly_pow_and_derivative():
    f = _p(1, 1)
    assert f ** 3 == _p(1, 3, 3, 1)
    assert f ** 0 == _p(1)
    assert (_p(0, 0, 3)).derivative() == _p(0, 6)


def test_squarefree_part():
    f = _p(-1, 1) ** 3 * _p(1, 1)
    sf = f.squarefree_part()
    assert sf == _p(-1, 1) * _p(1, 1) or sf == (_p(-1, 1) * _p(1, 1)).monic()
    assert sf.gcd(sf.derivative()).degree == 0


def test_cyclotomic_oracles():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(2) == (1, 1)
    assert cyclotomic(3) == (1, 1, 1)
    assert cyclotomic(4) == (1, 0, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert cyclotomic(12) == (1, 0, -1, 0, 1)
    # product over divisors reconstructs x^m - 1
    for m in (1, 2, 6, 12, 15):
        prod = (1,)
        for d in range(1, m + 1):
            if m % d == 0:
                prod = zp_mul(prod, cyclotomic(d))
        assert prod == zp_trim([-1] + [0] * (m - 1) + [1])


def test_euler_phi():
    assert [euler_phi(m) for m in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_zp_layer_round_trip():
    f = _p(Fraction(1, 2), Fraction(-3, 4), 1)
    zf = zp_from_poly(f)
    assert zf == (2, -3, 4)
    back = zp_to_monic_poly(zf)
    assert back == f.monic()


def test_zp_gcd_properties():
    rng = random.Random(11)
    for _ in range(150):
        def rand_poly(max_deg):
            deg = rng.randint(1, max_deg)
            c = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
            return zp_trim(c)

        f, g, h = rand_poly(4), rand_poly(4), rand_poly(3)
        d = zp_gcd(zp_mul(f, h), zp_mul(g, h))
        # common factor h divides the gcd; gcd divides both products
        assert zp_divides(zp_primitive(h), d) or zp_divides(d, zp_mul(f, h))
        assert zp_divides(zp_primitive(h), d)
        assert zp_divides(d, zp_mul(f, h)) and zp_divides(d, zp_mul(g, h))
        assert d[-1] > 0


def test_zp_gcd_matches_prs_on_random_pairs():
    rng = random.Random(13)
    for _ in range(200):
        f = zp_trim([rng.randint(-9, 9) for _ in range(rng.randint(2, 7))])
        g = zp_trim([rng.randint(-9, 9) for _ in range(rng.randint(2, 7))])
        if not f or not g:
            continue
        d = zp_gcd(f, g)
        assert zp_divides(d, f) and zp_divides(d, g)
        # cofactors after dividing out the gcd are coprime
        cf = zp_divexact(zp_primitive(f), d)
        cg = zp_divexact(zp_primitive(g), d)
        assert len(zp_gcd(cf, cg)) == 1


def test_pseudo_rem_zero_iff_divides():
    f = (6, -7, 2)           # (2t-1)(3t-... ) actually 2t^2 -7t +6 = (2t-3)(t-2)
    assert zp_pseudo_rem(zp_mul(f, (1, 1)), f) == ()
    assert zp_pseudo_rem((1, 0, 1), (1, 1)) != ()


def test_modp_filter_is_sound():
    rng = random.Random(17)
    for _ in range(300):
        f = zp_trim([rng.randint(-20, 20) for _ in range(rng.randint(2, 6))])
        g = zp_trim([rng.randint(-20, 20) for _ in range(rng.randint(2, 6))])
        if not f or not g:
            continue
        d = zp_modp_gcd_degree(f, g)
        if d == 0:
            assert len(zp_gcd(f, g)) == 1
        else:
            # mod-p degree never undershoots the exact degree
            assert d is None or d >= len(zp_gcd(f, g)) - 1


def test_zp_squarefree():
    f = zp_mul(zp_mul((-1, 1), (-1, 1)), (2, 3))
    sf = zp_squarefree(f)
    assert zp_divides(sf, f)
    assert len(zp_gcd(sf, zp_trim(tuple(i * c for i, c in enumerate(sf))[1:]))) == 1
    assert zp_divides((-1, 1), sf) and zp_divides((2, 3), sf)
    assert len(sf) == 3

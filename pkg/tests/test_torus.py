"""Cosets, torsion cosets, closures, and monomial maps on the n-torus."""

import random
from fractions import Fraction

import pytest

from torint.errors import DimensionMismatch, DomainError
from torint.lattice import IntLattice, lattice_sum, saturate
from torint.scalars import CycloRat, cyclorat_from_fraction, monomial_eval
from torint.torus import (
    GeneralCoset,
    MonomialMap,
    TorsionCoset,
    TorusPoint,
    contains_point,
    coset_contains,
    full_coset,
    intersect_torsion_cosets,
    monomial_image,
    monomial_preimage,
    point_as_coset,
    point_closures,
    special_closure_of_coset,
)

F = Fraction


def _pt(*vals):
    coords = tuple(cyclorat_from_fraction(F(v)) if not isinstance(v, CycloRat) else v
                   for v in vals)
    return TorusPoint(len(coords), coords)


def _tc(n, rows, angles):
    return TorsionCoset(n, IntLattice.from_rows(n, rows), tuple(F(a) for a in angles))


def test_contains_point_oracles():
    x_is_1 = _tc(2, [[1, 0]], [0])
    assert contains_point(x_is_1, _pt(1, 5))
    assert not contains_point(x_is_1, _pt(2, 1))
    xy_inv_neg = _tc(2, [[1, -1]], [F(1, 2)])
    assert contains_point(xy_inv_neg, _pt(-1, 1))


def test_contains_point_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contains_point(_tc(2, [[1, 0]], [0]), _pt(1, 1, 1))


def test_intersect_transverse():
    a = _tc(2, [[1, 0]], [0])
    b = _tc(2, [[0, 1]], [F(1, 2)])
    comps = intersect_torsion_cosets(a, b)
    assert len(comps) == 1
    c = comps[0]
    assert c.dim == 0
    assert contains_point(c, _pt(1, -1))


def test_intersect_with_index_two():
    a = _tc(2, [[1, 1]], [0])   # x*y = 1
    b = _tc(2, [[1, -1]], [0])  # x/y = 1
    comps = intersect_torsion_cosets(a, b)
    assert len(comps) == 2
    pts = [_pt(1, 1), _pt(-1, -1)]
    for p in pts:
        assert sum(contains_point(c, p) for c in comps) == 1
    # count equals the saturation index of the lattice sum
    total = lattice_sum(a.lattice, b.lattice)
    _, index = saturate(total)
    assert len(comps) == index == 2


def test_intersect_contradictory_empty():
    a = _tc(2, [[1, 0]], [0])
    b = _tc(2, [[1, 0]], [F(1, 2)])
    assert intersect_torsion_cosets(a, b) == []


def _brute_membership(coset, angles12):
    # angles12: tuple of Fractions k/12 representing a torsion point
    for row, eps in zip(coset.lattice.basis.entries, coset.angles):
        s = sum((c * th for c, th in zip(row, angles12)), F(0))
        if (s - eps) % 1 != 0:
            return False
    return True


def test_intersection_vs_brute_force_small():
    rng = random.Random(3)
    denoms = [1, 2, 3, 4, 6]
    grid = [F(k, 12) for k in range(12)]
    for _ in range(25):
        n = rng.randint(1, 3)
        def mk():
            rows = [[rng.randint(-2, 2) for _ in range(n)]
                    for _ in range(rng.randint(1, n))]
            lat, _ = saturate(IntLattice.from_rows(n, rows))
            if lat.rank == 0:
                return full_coset(n)
            angles = tuple(F(rng.randint(0, 5), rng.choice(denoms)) % 1
                           for _ in range(lat.rank))
            return TorsionCoset(n, lat, angles)
        c1, c2 = mk(), mk()
        comps = intersect_torsion_cosets(c1, c2)
        import itertools
        for angles12 in itertools.product(grid, repeat=n):
            in_both = _brute_membership(c1, angles12) and _brute_membership(c2, angles12)
            hits = sum(_brute_membership(c, angles12) for c in comps)
            assert hits == (1 if in_both else 0), (c1, c2, angles12)


def test_special_closure_oracles():
    two = cyclorat_from_fraction(F(2))
    minus_one = cyclorat_from_fraction(F(-1))
    lat = IntLattice.from_rows(2, [[1, -1]])
    # {(2t, t)}: relation value 2 is not torsion, closure is everything
    c = GeneralCoset(2, lat, (two,))
    assert special_closure_of_coset(c).dim == 2
    # {(-t, t)}: relation value -1 is torsion, closure is the coset itself
    c2 = GeneralCoset(2, lat, (minus_one,))
    cl = special_closure_of_coset(c2)
    assert cl.lattice == lat and cl.angles == (F(1, 2),)
    # torsion cosets are fixed points of the closure
    t = _tc(2, [[1, 0]], [F(1, 3)])
    assert special_closure_of_coset(t.as_general()) == t


def test_special_closure_idempotent_monotone():
    rng = random.Random(9)
    pool = [F(2), F(3), F(-1), F(1, 2), F(6)]
    for _ in range(40):
        n = rng.randint(1, 3)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, n))]
        lat, _ = saturate(IntLattice.from_rows(n, rows))
        if lat.rank == 0:
            continue
        vals = tuple(cyclorat_from_fraction(rng.choice(pool)) for _ in range(lat.rank))
        c = GeneralCoset(n, lat, vals)
        cl = special_closure_of_coset(c)
        assert coset_contains(cl.as_general(), c)
        assert special_closure_of_coset(cl.as_general()) == cl  # idempotent


def test_point_closures_oracles():
    cl, defect = point_closures(_pt(1, -1))
    assert defect == 0 and cl.dim == 0
    assert contains_point(cl, _pt(1, -1))

    cl, defect = point_closures(_pt(2, 3))
    assert defect == 2 and cl.lattice.is_trivial

    cl, defect = point_closures(_pt(4, 2))
    assert defect == 1
    assert cl.lattice == IntLattice.from_rows(2, [[1, -2]])
    assert cl.angles == (F(0),)


def test_monomial_image_oracles():
    # (x, y) -> x*y collapses the diagonal coset {(t, t)} onto everything
    phi = MonomialMap.of([[1, 1]])
    diag = _tc(2, [[1, -1]], [0])
    img = monomial_image(phi, diag)
    assert img.ambient_dim == 1 and img.dim == 1

    ident = MonomialMap.of([[1, 0], [0, 1]])
    c = _tc(2, [[1, 0]], [F(1, 2)])
    assert monomial_image(ident, c).lattice == c.lattice

    proj = MonomialMap.of([[1, 0]])
    img = monomial_image(proj, _tc(2, [[1, 0]], [0]))
    assert img.ambient_dim == 1 and img.dim == 0
    assert contains_point(img, _pt(1))


def test_monomial_preimage_oracles():
    mul = MonomialMap.of([[1, 1]])
    one = _tc(1, [[1]], [0])
    comps = monomial_preimage(mul, one)
    assert len(comps) == 1
    assert comps[0].lattice == IntLattice.from_rows(2, [[1, 1]])
    assert comps[0].angles == (F(0),)

    sq = MonomialMap.of([[2]])
    comps = monomial_preimage(sq, one)
    assert len(comps) == 2
    assert sorted(c.angles[0] for c in comps) == [F(0), F(1, 2)]

    proj = MonomialMap.of([[1, 0]])
    minus = _tc(1, [[1]], [F(1, 2)])
    comps = monomial_preimage(proj, minus)
    assert len(comps) == 1
    assert comps[0].lattice == IntLattice.from_rows(2, [[1, 0]])
    assert comps[0].angles == (F(1, 2),)


def test_image_preimage_round_trip():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        phi = MonomialMap.of(rows)
        lrows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))]
        lat, _ = saturate(IntLattice.from_rows(n, lrows))
        angles = tuple(F(rng.randint(0, 3), rng.choice([1, 2, 4])) % 1
                       for _ in range(lat.rank))
        c = TorsionCoset(n, lat, angles)
        img = monomial_image(phi, c)
        back = monomial_preimage(phi, img if isinstance(img, TorsionCoset) else img.as_torsion())
        assert any(coset_contains(comp.as_general(), c.as_general()) for comp in back)


def test_image_dim_constant_on_torsion_translates():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        phi = MonomialMap.of([[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)])
        lrows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))]
        lat, _ = saturate(IntLattice.from_rows(n, lrows))
        angles = tuple(F(rng.randint(0, 3), 4) % 1 for _ in range(lat.rank))
        c = TorsionCoset(n, lat, angles)
        base_dim = monomial_image(phi, c).dim
        tau = [F(rng.randint(0, 5), 6) % 1 for _ in range(n)]
        shifted_angles = tuple(
            (a + sum((b * t for b, t in zip(row, tau)), F(0))) % 1
            for a, row in zip(c.angles, c.lattice.basis.entries))
        shifted = TorsionCoset(n, lat, shifted_angles)
        assert monomial_image(phi, shifted).dim == base_dim


def test_monomial_map_apply_with_torsion_translation():
    phi = MonomialMap.of([[1, 1]], translation_angles=[F(1, 2)])
    p = _pt(2, 3)
    q = phi.apply(p)
    assert q.ambient_dim == 1
    assert q.coords[0] == cyclorat_from_fraction(F(-6))


def test_point_as_coset_membership():
    p = _pt(2, -3)
    c = point_as_coset(p)
    assert c.dim == 0
    assert contains_point(c, p)
    assert not contains_point(c, _pt(2, 3))

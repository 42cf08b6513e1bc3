"""Exact scalar arithmetic: factored rationals with a root-of-unity phase."""

import random
from fractions import Fraction

import pytest

from torint.errors import DomainError, FactorBoundExceeded, InputFormatError
from torint.lattice import IntLattice
from torint.scalars import (
    CycloRat,
    cyclorat_from_fraction,
    factor_rational,
    format_cyclorat,
    monomial_eval,
    parse_cyclorat,
    relation_lattices,
)


def test_factor_rational_oracles():
    assert factor_rational(12, 5) == (1, ((2, 2), (3, 1), (5, -1)))
    assert factor_rational(1, 1) == (1, ())
    assert factor_rational(-8, 27) == (-1, ((2, 3), (3, -3)))


def test_factor_signs_fold_into_angle():
    s = cyclorat_from_fraction(Fraction(-8, 27))
    assert s.magnitude == ((2, 3), (3, -3))
    assert s.angle == Fraction(1, 2)
    t = cyclorat_from_fraction(Fraction(12, 5))
    assert t.angle == 0


def test_factor_bound():
    # 1009 * 1013: no divisor at or below 1000, certification impossible
    with pytest.raises(FactorBoundExceeded):
        factor_rational(1009 * 1013, 1, bound=1000)
    # primes below bound^2 are certified by exhausting divisors <= bound
    assert factor_rational(999983, 1, bound=1000) == (1, ((999983, 1),))
    assert factor_rational(1000003, 1, bound=1000) == (1, ((1000003, 1),))


def test_factor_rejects_zero():
    with pytest.raises(InputFormatError):
        factor_rational(0, 3)
    with pytest.raises(InputFormatError):
        factor_rational(3, 0)


def test_monomial_eval_oracles():
    two = cyclorat_from_fraction(Fraction(2))
    three = cyclorat_from_fraction(Fraction(3))
    four = cyclorat_from_fraction(Fraction(4))
    assert monomial_eval((two, three), (1, -1)).magnitude_fraction() == Fraction(2, 3)
    assert monomial_eval((two, three), (1, -1)).angle == 0

    i = CycloRat((), Fraction(1, 4))
    sq = monomial_eval((i,), (2,))
    assert sq.is_torsion and sq.angle == Fraction(1, 2)

    assert monomial_eval((four, two), (1, -2)).is_one


def test_monomial_eval_length_mismatch():
    two = cyclorat_from_fraction(Fraction(2))
    with pytest.raises(DomainError):
        monomial_eval((two,), (1, 2))


def test_monomial_eval_homomorphism():
    rng = random.Random(7)
    pool = [
        cyclorat_from_fraction(Fraction(2)),
        cyclorat_from_fraction(Fraction(-3, 5)),
        CycloRat((), Fraction(1, 3)),
        CycloRat(((2, 1),), Fraction(5, 6)),
    ]
    for _ in range(100):
        s = tuple(rng.choice(pool) for _ in range(3))
        a = tuple(rng.randint(-5, 5) for _ in range(3))
        b = tuple(rng.randint(-5, 5) for _ in range(3))
        ab = tuple(x + y for x, y in zip(a, b))
        assert monomial_eval(s, ab) == monomial_eval(s, a).mul(monomial_eval(s, b))


def test_relation_lattices_oracles():
    mk = cyclorat_from_fraction
    exact, torsion = relation_lattices((mk(Fraction(2)), mk(Fraction(4)), mk(Fraction(8))))
    expect = IntLattice.from_rows(3, [[2, -1, 0], [3, 0, -1]])
    assert exact == expect and torsion == expect
    assert torsion.rank == 2

    exact, torsion = relation_lattices((mk(Fraction(2)), mk(Fraction(3))))
    assert exact.is_trivial and torsion.is_trivial

    exact, torsion = relation_lattices((mk(Fraction(-1)), mk(Fraction(2))))
    assert torsion == IntLattice.from_rows(2, [[1, 0]])
    assert exact == IntLattice.from_rows(2, [[2, 0]])


def _random_scalar(rng, torsion_only=False):
    angle = Fraction(rng.randint(0, 11), rng.choice([1, 2, 3, 4, 6, 12]))
    if torsion_only:
        return CycloRat((), angle % 1)
    mag = cyclorat_from_fraction(Fraction(rng.choice([1, 2, 3, 4, 6]), rng.choice([1, 2, 5])))
    return CycloRat(mag.magnitude, (mag.angle + angle) % 1)


def test_relation_lattice_properties():
    from torint.lattice import saturate

    rng = random.Random(21)
    for _ in range(120):
        n = rng.randint(1, 4)
        scalars = tuple(_random_scalar(rng) for _ in range(n))
        exact, torsion = relation_lattices(scalars)
        sat, index = saturate(torsion)
        assert sat == torsion  # torsion lattice is saturated
        # exact sits inside torsion with finite index
        for row in exact.basis.entries:
            assert torsion.contains(row)
            assert monomial_eval(scalars, row).is_one
        for row in torsion.basis.entries:
            assert monomial_eval(scalars, row).is_torsion


def test_exact_index_divides_angle_lcm_power():
    from math import lcm

    from torint.lattice import saturate

    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(1, 3)
        scalars = tuple(_random_scalar(rng, torsion_only=True) for _ in range(n))
        exact, torsion = relation_lattices(scalars)
        assert torsion == IntLattice.full(n)
        denoms = lcm(*(s.angle.denominator for s in scalars))
        # index of exact in torsion divides lcm(angle denominators)^rank
        _, index = saturate(exact)
        sat, _ = saturate(exact)
        assert sat == torsion
        assert denoms ** torsion.rank % index == 0


def test_text_round_trip():
    cases = ["2/3@1/2", "5@0", "1@1/3", "7/2@5/6", "-3@0"]
    for text in cases:
        s = parse_cyclorat(text)
        assert parse_cyclorat(format_cyclorat(s)) == s
    assert format_cyclorat(parse_cyclorat("4/2@0")) == "2/1@0/1"
    assert parse_cyclorat("-2@0") == parse_cyclorat("2@1/2")
    with pytest.raises(InputFormatError):
        parse_cyclorat("abc")
    with pytest.raises(InputFormatError):
        parse_cyclorat("0@1/2")


def test_inverse_and_pow():
    s = parse_cyclorat("2/3@1/6")
    assert s.mul(s.inv()).is_one
    assert s.pow(0).is_one
    assert s.pow(3) == s.mul(s).mul(s)
    assert s.pow(-2) == s.inv().mul(s.inv())

"""Points, cosets, and monomial maps on the multiplicative torus.

A coset of codimension r in the n-torus is cut out by a saturated
rank-r character lattice together with one target value per basis
row: torsion cosets carry angles (values on the unit circle), general
cosets carry arbitrary unit scalars.  Keeping lattices saturated
makes every coset irreducible and gives each a unique normal form,
so dataclass equality is geometric equality.

The intersection and preimage routines reduce to one solver: given
character generators with torsion targets, find every extension of
the target assignment to the saturation of the generated lattice.
Solvability is decided by the Smith form over Z with right-hand
sides in Q/Z; the only obstruction is a zero row demanding a nonzero
angle, and the number of solutions equals the saturation index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DimensionMismatch, DomainError
from .lattice import IntLattice, IntMatrix, kernel, lattice_sum, saturate, snf
from .scalars import CycloRat, monomial_eval, normalize_angle, relation_lattices


@dataclass(frozen=True)
class TorusPoint:
    """A point of the n-torus with exact unit-scalar coordinates."""

    ambient_dim: int
    coords: tuple[CycloRat, ...]

    def __post_init__(self):
        if len(self.coords) != self.ambient_dim:
            raise DimensionMismatch("point coordinate count differs from ambient dimension")

    @property
    def is_torsion(self) -> bool:
        return all(c.is_torsion for c in self.coords)


def _check_saturated(lat: IntLattice):
    sat, index = saturate(lat)
    if index != 1 or sat != lat:
        raise DomainError("coset lattices must be saturated")


@dataclass(frozen=True)
class TorsionCoset:
    """Irreducible torsion coset: saturated lattice + one angle per basis row."""

    ambient_dim: int
    lattice: IntLattice
    angles: tuple[Fraction, ...]

    def __post_init__(self):
        if self.lattice.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("lattice lives in a different ambient dimension")
        if len(self.angles) != self.lattice.rank:
            raise DimensionMismatch("one angle per lattice basis row required")
        assert all(0 <= a < 1 for a in self.angles)
        _check_saturated(self.lattice)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.lattice.rank

    def angle_of(self, vec) -> Fraction:
        """Angle of the character vec on this coset (vec must lie in the lattice)."""
        c = self.lattice.coords_of(vec)
        if c is None:
            raise DomainError("character does not lie in the coset lattice")
        return normalize_angle(sum((k * a for k, a in zip(c, self.angles)), Fraction(0)))

    def as_general(self) -> "GeneralCoset":
        return GeneralCoset(self.ambient_dim, self.lattice,
                            tuple(CycloRat.root_of_unity(a) for a in self.angles))


@dataclass(frozen=True)
class GeneralCoset:
    """Irreducible coset: saturated lattice + one unit-scalar value per basis row."""

    ambient_dim: int
    lattice: IntLattice
    values: tuple[CycloRat, ...]

    def __post_init__(self):
        if self.lattice.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("lattice lives in a different ambient dimension")
        if len(self.values) != self.lattice.rank:
            raise DimensionMismatch("one value per lattice basis row required")
        _check_saturated(self.lattice)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.lattice.rank

    @property
    def is_torsion_coset(self) -> bool:
        return all(v.is_torsion for v in self.values)

    def value_of(self, vec) -> CycloRat:
        c = self.lattice.coords_of(vec)
        if c is None:
            raise DomainError("character does not lie in the coset lattice")
        return monomial_eval(self.values, c)

    def as_torsion(self) -> TorsionCoset:
        if not self.is_torsion_coset:
            raise DomainError("coset has non-torsion character values")
        return TorsionCoset(self.ambient_dim, self.lattice,
                            tuple(v.angle for v in self.values))


def full_coset(ambient_dim: int) -> TorsionCoset:
    """The whole torus as the unique codimension-0 torsion coset."""
    return TorsionCoset(ambient_dim, IntLattice.from_rows(ambient_dim, []), ())


def point_as_coset(p: TorusPoint) -> GeneralCoset:
    lat = IntLattice.full(p.ambient_dim)
    return GeneralCoset(p.ambient_dim, lat,
                        tuple(monomial_eval(p.coords, row) for row in lat.basis.entries))


def contains_point(coset: TorsionCoset | GeneralCoset, p: TorusPoint) -> bool:
    if coset.ambient_dim != p.ambient_dim:
        raise DimensionMismatch("point and coset in different ambient dimensions")
    if isinstance(coset, TorsionCoset):
        for row, angle in zip(coset.lattice.basis.entries, coset.angles):
            v = monomial_eval(p.coords, row)
            if not v.is_torsion or v.angle != angle:
                return False
        return True
    for row, val in zip(coset.lattice.basis.entries, coset.values):
        if monomial_eval(p.coords, row) != val:
            return False
    return True


def coset_contains(outer: GeneralCoset | TorsionCoset, inner: GeneralCoset | TorsionCoset) -> bool:
    """Containment of cosets: outer's characters restrict consistently to inner."""
    if outer.ambient_dim != inner.ambient_dim:
        raise DimensionMismatch("cosets in different ambient dimensions")
    o = outer.as_general() if isinstance(outer, TorsionCoset) else outer
    i = inner.as_general() if isinstance(inner, TorsionCoset) else inner
    for row, val in zip(o.lattice.basis.entries, o.values):
        if i.lattice.coords_of(row) is None:
            return False
        if i.value_of(row) != val:
            return False
    return True


def torsion_cosets_from_characters(ambient_dim: int, gen_rows, target_angles) -> list[TorsionCoset]:
    """All torsion cosets satisfying x^g = e(t_g) for the given generators.

    The solution set {x : x^g = e(t_g) for all g} is a finite disjoint
    union of irreducible torsion cosets, all sharing the saturation of
    the generated lattice; they are enumerated in canonical (angle
    lexicographic) order.  Returns [] exactly when the constraints are
    inconsistent.
    """
    gen_rows = [tuple(int(x) for x in r) for r in gen_rows]
    targets = [normalize_angle(t) for t in target_angles]
    assert len(gen_rows) == len(targets)
    span = IntLattice.from_rows(ambient_dim, gen_rows)
    sat, _ = saturate(span)
    r = sat.rank
    if r == 0:
        if any(targets):
            return []
        return [full_coset(ambient_dim)]
    coeff_rows = []
    for g in gen_rows:
        c = sat.coords_of(g)
        assert c is not None
        coeff_rows.append(list(c))
    n_mat = IntMatrix.from_rows(coeff_rows, r)
    d, u, v = snf(n_mat)
    # beta = U * targets in Q/Z
    beta = [normalize_angle(sum((Fraction(u.entries[i][k]) * targets[k]
                                 for k in range(len(targets))), Fraction(0)))
            for i in range(n_mat.rows)]
    # zero rows of D must carry zero right-hand sides
    for i in range(r, n_mat.rows):
        if beta[i]:
            return []
    choices = []
    for i in range(r):
        di = d.entries[i][i]
        assert di > 0, "generator matrix must have full column rank over its saturation"
        choices.append([normalize_angle(Fraction(beta[i] + k, 1) / di) for k in range(di)])
    out = []
    for combo in product(*choices):
        # angles on the saturation basis: x = V * y
        x = tuple(normalize_angle(sum((Fraction(v.entries[j][i]) * combo[i]
                                       for i in range(r)), Fraction(0)))
                  for j in range(r))
        out.append(TorsionCoset(ambient_dim, sat, x))
    out.sort(key=lambda c: c.angles)
    return out


def intersect_torsion_cosets(a: TorsionCoset, b: TorsionCoset) -> list[TorsionCoset]:
    """Irreducible components of the intersection, canonically ordered.

    The component count equals the index of the character-lattice sum
    inside its saturation; the empty list signals an empty intersection.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cosets in different ambient dimensions")
    gens = list(a.lattice.basis.entries) + list(b.lattice.basis.entries)
    targets = list(a.angles) + list(b.angles)
    return torsion_cosets_from_characters(a.ambient_dim, gens, targets)


def special_closure_of_coset(coset: GeneralCoset) -> TorsionCoset:
    """Smallest torsion coset containing the given coset.

    Its lattice is the part of the coset's lattice where the character
    value is torsion: the kernel of the magnitude map, hence saturated
    whenever the input lattice is.
    """
    r = coset.lattice.rank
    if r == 0:
        return full_coset(coset.ambient_dim)
    primes = sorted({p for v in coset.values for p, _ in v.magnitude})
    rows = [[dict(v.magnitude).get(p, 0) for v in coset.values] for p in primes]
    coeff_kernel = kernel(IntMatrix.from_rows(rows, r))
    lat_rows = [coset.lattice.member_from_coords(c) for c in coeff_kernel.basis.entries]
    lat = IntLattice.from_rows(coset.ambient_dim, lat_rows)
    angles = []
    for row in lat.basis.entries:
        v = coset.value_of(row)
        assert v.is_torsion
        angles.append(v.angle)
    return TorsionCoset(coset.ambient_dim, lat, tuple(angles))


def point_closures(p: TorusPoint) -> tuple[TorsionCoset, int]:
    """Special closure of a singleton and its defect.

    The closure's lattice is the torsion-relation lattice of the
    coordinates; the defect is the closure's dimension (the singleton
    has dimension 0).
    """
    _, torsion = relation_lattices(p.coords)
    angles = tuple(monomial_eval(p.coords, row).angle for row in torsion.basis.entries)
    coset = TorsionCoset(p.ambient_dim, torsion, angles)
    return coset, coset.dim


@dataclass(frozen=True)
class MonomialMap:
    """x -> translation * x^matrix, a distinguished self-map family of tori.

    matrix is m x n (one character row per target coordinate); the
    translation is a torsion point of the target torus.
    """

    matrix: IntMatrix
    translation: TorusPoint

    def __post_init__(self):
        if self.translation.ambient_dim != self.matrix.rows:
            raise DimensionMismatch("translation lives in the target torus")
        if not self.translation.is_torsion:
            raise DomainError("monomial-map translations must be torsion points")

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    @staticmethod
    def of(rows, translation_angles=None) -> "MonomialMap":
        m = IntMatrix.from_rows([list(r) for r in rows])
        if translation_angles is None:
            translation_angles = [0] * m.rows
        tau = TorusPoint(m.rows, tuple(CycloRat.root_of_unity(Fraction(a)) for a in translation_angles))
        return MonomialMap(m, tau)

    def apply(self, p: TorusPoint) -> TorusPoint:
        if p.ambient_dim != self.source_dim:
            raise DimensionMismatch("point dimension differs from map source")
        coords = []
        for j in range(self.target_dim):
            coords.append(self.translation.coords[j].mul(
                monomial_eval(p.coords, self.matrix.entries[j])))
        return TorusPoint(self.target_dim, tuple(coords))


def _row_times_matrix(row, m: IntMatrix) -> tuple[int, ...]:
    return tuple(sum(row[k] * m.entries[k][j] for k in range(m.rows)) for j in range(m.cols))


def monomial_image(phi: MonomialMap, coset: GeneralCoset | TorsionCoset) -> GeneralCoset | TorsionCoset:
    """Closure of the image of a coset under a monomial map.

    The image lattice is the full preimage {b : b.A in L} of the input
    lattice under pullback of characters, so it is saturated and the
    result is again an irreducible coset of the same kind.
    """
    was_torsion = isinstance(coset, TorsionCoset)
    c = coset.as_general() if was_torsion else coset
    if c.ambient_dim != phi.source_dim:
        raise DimensionMismatch("coset dimension differs from map source")
    m, n = phi.target_dim, phi.source_dim
    stacked = IntMatrix.from_rows(
        [list(phi.matrix.entries[j]) for j in range(m)]
        + [list(r) for r in c.lattice.basis.entries], n)
    rel = kernel(stacked.transpose())  # {(b, -c) : b.A = c.B}
    image_lat = IntLattice.from_rows(m, [w[:m] for w in rel.basis.entries])
    values = []
    for b in image_lat.basis.entries:
        pulled = _row_times_matrix(b, phi.matrix)
        val = c.value_of(pulled)
        tau_part = monomial_eval(phi.translation.coords, b)
        values.append(tau_part.mul(val))
    out = GeneralCoset(m, image_lat, tuple(values))
    return out.as_torsion() if was_torsion else out


def monomial_preimage(phi: MonomialMap, coset: TorsionCoset) -> list[TorsionCoset]:
    """Irreducible components of the preimage of a torsion coset.

    Pulling back each defining character b of the target gives the
    generator b.A with target angle(coset at b) - angle(translation^b);
    components correspond to extensions of that assignment to the
    saturation.  Empty list iff no point maps into the coset.
    """
    if coset.ambient_dim != phi.target_dim:
        raise DimensionMismatch("coset dimension differs from map target")
    gens = []
    targets = []
    for row, angle in zip(coset.lattice.basis.entries, coset.angles):
        gens.append(_row_times_matrix(row, phi.matrix))
        tau_part = monomial_eval(phi.translation.coords, row)
        targets.append(normalize_angle(angle - tau_part.angle))
    return torsion_cosets_from_characters(phi.source_dim, gens, targets)

"""Exact integer matrices and sublattices of Z^n.

Everything here runs on arbitrary-precision Python ints.  The
canonical basis form is the row-style Hermite normal form: pivots
positive, entries above each pivot reduced into [0, pivot), zero
rows dropped.  Two lattices are equal iff their canonical bases are
equal, so dataclass equality is lattice equality.

Kernels are computed through the left-kernel of a transpose and are
always saturated; saturation itself is a double kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DimensionMismatch


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix (rows or cols may be 0)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: list[list[int]] | list[tuple[int, ...]], cols: int | None = None) -> "IntMatrix":
        if rows:
            width = len(rows[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
        return IntMatrix(len(rows), width, tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = self.entries[i]
            out.append(tuple(sum(row[k] * other.entries[k][j] for k in range(self.cols))
                             for j in range(other.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def row_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _row_vec_mul(vec: tuple[int, ...] | list[int], m: IntMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    if len(vec) != m.rows:
        raise ValueError("shape mismatch in vector-matrix product")
    return tuple(sum(vec[k] * m.entries[k][j] for k in range(m.rows)) for j in range(m.cols))


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with H = U*m, U unimodular, pivots of H positive,
    entries above each pivot in [0, pivot), and zero rows at the
    bottom.  H has the same shape as m.
    """
    a = m.row_list()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).row_list()
    piv = 0
    for col in range(nc):
        if piv == nr:
            break
        # Chase the column gcd into one row using minimal-|entry| pivoting.
        while True:
            nz = [i for i in range(piv, nr) if a[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][col]))
            if best != piv:
                a[piv], a[best] = a[best], a[piv]
                u[piv], u[best] = u[best], u[piv]
            done = True
            for i in range(piv + 1, nr):
                if a[i][col] == 0:
                    continue
                q = a[i][col] // a[piv][col]
                if q:
                    for j in range(nc):
                        a[i][j] -= q * a[piv][j]
                    for j in range(nr):
                        u[i][j] -= q * u[piv][j]
                if a[i][col] != 0:
                    done = False
            if done:
                break
        if a[piv][col] == 0:
            continue
        if a[piv][col] < 0:
            a[piv] = [-x for x in a[piv]]
            u[piv] = [-x for x in u[piv]]
        p = a[piv][col]
        for i in range(piv):
            q = a[i][col] // p  # floor division leaves a[i][col] in [0, p)
            if q:
                for j in range(nc):
                    a[i][j] -= q * a[piv][j]
                for j in range(nr):
                    u[i][j] -= q * u[piv][j]
        piv += 1
    h = IntMatrix(nr, nc, tuple(tuple(r) for r in a))
    return h, IntMatrix(nr, nr, tuple(tuple(r) for r in u))


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with D = U*m*V.

    D is diagonal with non-negative invariant factors in a
    divisibility chain d1 | d2 | ...; U and V are unimodular.
    """
    a = m.row_list()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).row_list()
    v = IntMatrix.identity(nc).row_list()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        for j in range(nc):
            a[dst][j] += q * a[src][j]
        for j in range(nr):
            u[dst][j] += q * u[src][j]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    t = 0
    while t < min(nr, nc):
        # Find a nonzero pivot in the trailing submatrix.
        pr = pc = -1
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        while True:
            # Clear column t below the pivot.
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        # restart: pivot shrank
            if any(a[i][t] for i in range(t + 1, nr)):
                continue
            # Clear row t to the right of the pivot.
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue
            # Enforce divisibility of the whole trailing block by the pivot.
            offender = None
            p = a[t][t]
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = IntMatrix(nr, nc, tuple(tuple(r) for r in a))
    return d, IntMatrix(nr, nr, tuple(tuple(r) for r in u)), IntMatrix(nc, nc, tuple(tuple(r) for r in v))


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.row_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^n, held by its canonical (HNF) basis.

    basis is r x n with no zero rows; rank 0 is the trivial lattice.
    canonical is always True for lattices built through from_rows.
    """

    ambient_dim: int
    basis: IntMatrix
    canonical: bool = True

    @staticmethod
    def from_rows(ambient_dim: int, rows: list | tuple) -> "IntLattice":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(
                    f"lattice row of length {len(r)} in ambient dimension {ambient_dim}")
        if not rows:
            return IntLattice(ambient_dim, IntMatrix(0, ambient_dim, ()))
        h, _ = hnf(IntMatrix.from_rows(rows, ambient_dim))
        kept = tuple(r for r in h.entries if any(r))
        return IntLattice(ambient_dim, IntMatrix(len(kept), ambient_dim, kept))

    @staticmethod
    def full(ambient_dim: int) -> "IntLattice":
        return IntLattice(ambient_dim, IntMatrix.identity(ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def is_trivial(self) -> bool:
        return self.basis.rows == 0

    def coords_of(self, vec) -> tuple[int, ...] | None:
        """Coordinates of vec in the canonical basis, or None if outside."""
        v = [int(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector/lattice dimension mismatch")
        coords = []
        for row in self.basis.entries:
            pc = next(j for j, x in enumerate(row) if x)
            q, r = divmod(v[pc], row[pc])
            if r:
                return None
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(coords) if not any(v) else None

    def contains(self, vec) -> bool:
        return self.coords_of(vec) is not None

    def member_from_coords(self, coords) -> tuple[int, ...]:
        return _row_vec_mul(tuple(int(c) for c in coords), self.basis) if self.rank else tuple([0] * self.ambient_dim)


def kernel(m: IntMatrix) -> IntLattice:
    """Integer kernel {a in Z^cols : m*a = 0}; always saturated."""
    h, u = hnf(m.transpose())
    rows = [u.entries[i] for i in range(h.rows) if not any(h.entries[i])]
    return IntLattice.from_rows(m.cols, rows)


def saturate(lat: IntLattice) -> tuple[IntLattice, int]:
    """Smallest saturated overlattice (QL intersect Z^n) and its index over L."""
    if lat.is_trivial:
        return lat, 1
    comp = kernel(lat.basis)            # {c : B c = 0}
    sat = kernel(comp.basis)            # {x : x . c = 0 for all c} = QL cap Z^n
    t_rows = []
    for row in lat.basis.entries:
        c = sat.coords_of(row)
        assert c is not None, "basis row escaped its own saturation"
        t_rows.append(list(c))
    t = IntMatrix.from_rows(t_rows, sat.rank)
    d, _, _ = snf(t)
    index = 1
    for i in range(min(d.rows, d.cols)):
        if d.entries[i][i]:
            index *= d.entries[i][i]
    return sat, index


def lattice_sum(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("lattice sum in different ambient dimensions")
    return IntLattice.from_rows(a.ambient_dim, list(a.basis.entries) + list(b.basis.entries))


def lattice_intersect(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("lattice intersection in different ambient dimensions")
    if a.is_trivial or b.is_trivial:
        return IntLattice.from_rows(a.ambient_dim, [])
    stacked = IntMatrix.from_rows(list(a.basis.entries) + [tuple(-x for x in r) for r in b.basis.entries],
                                  a.ambient_dim)
    relations = kernel(stacked.transpose())  # {(u, v) : u*Ba = v*Bb}
    rows = []
    for w in relations.basis.entries:
        rows.append(_row_vec_mul(w[:a.rank], a.basis))
    return IntLattice.from_rows(a.ambient_dim, rows)


def primitive_vector(vec) -> tuple[int, ...]:
    """Divide out the content and normalize the first nonzero entry positive."""
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in vec)
    out = [int(x) // g for x in vec]
    lead = next(x for x in out if x)
    if lead < 0:
        out = [-x for x in out]
    return tuple(out)

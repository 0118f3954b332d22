"""Exact integer and rational linear algebra.

Scalars are Python Fractions throughout: the geometry restricts the
paper-level real coefficients to rationals so that every predicate in the
library is decidable.  Lattices are canonicalized by Hermite normal form,
making equality structural.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import kernel
from .errors import NotSublattice, RankMismatch, ZeroVector

Rational = Fraction


def rational_to_str(q):
    """Serialize as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def rational_from_str(s):
    return Fraction(s)


def vec(vals):
    return tuple(Fraction(v) for v in vals)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    c = Fraction(c)
    return tuple(c * x for x in a)


def vec_dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vec(a):
    return all(x == 0 for x in a)


def clear_denominators(v):
    """Smallest positive multiple of v with integer entries, as int tuple."""
    v = vec(v)
    mult = lcm(*[x.denominator for x in v]) if v else 1
    return tuple(int(x * mult) for x in v)


def rational_rref(rows):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns);
    zero rows are dropped."""
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return [], []
    cols = len(a[0])
    pivots = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == len(a):
            break
    return [tuple(row) for row in a[:r]], pivots


def solve_affine(eq_rows):
    """One rational solution of the system {a . x = b} given as rows
    [a..., b], or None if inconsistent.  Free variables are set to 0."""
    if not eq_rows:
        return None
    n = len(eq_rows[0]) - 1
    red, pivots = rational_rref(eq_rows)
    x = [Fraction(0)] * n
    for row, j in zip(red, pivots):
        if j == n:
            return None  # row 0 = 1
        x[j] = row[n]
    return tuple(x)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank with HNF-canonical basis rows."""

    ambient_rank: int
    basis: tuple

    @staticmethod
    def standard(n):
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return Lattice(n, ident)

    @staticmethod
    def from_generators(ambient_rank, gens):
        rows = [list(map(int, g)) for g in gens]
        hnf = kernel.mat_hnf(rows)
        return Lattice(ambient_rank, tuple(tuple(r) for r in hnf))

    @property
    def rank(self):
        return len(self.basis)

    def is_standard(self):
        return self == Lattice.standard(self.ambient_rank)

    def coords_rational(self, v):
        """Coordinates of v in the basis over Q, or None if v is outside
        the rational span."""
        v = vec(v)
        if len(v) != self.ambient_rank:
            raise ValueError("ambient rank mismatch")
        if not self.basis:
            return () if is_zero_vec(v) else None
        # back-substitute against the HNF pivot structure
        coords = []
        rem = list(v)
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x != 0)
            c = rem[j] / row[j]
            coords.append(c)
            for k in range(len(rem)):
                rem[k] -= c * row[k]
        if any(x != 0 for x in rem):
            return None
        return tuple(coords)

    def coords_integer(self, v):
        """Integer coordinates of v in the basis, or None."""
        c = self.coords_rational(v)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def contains(self, v):
        return self.coords_integer(v) is not None

    def saturation(self):
        """Smallest saturated sublattice containing this one."""
        if not self.basis:
            return self
        ortho = kernel.mat_kernel([list(r) for r in self.basis])
        sat = kernel.mat_kernel(ortho) if ortho else \
            [list(r) for r in Lattice.standard(self.ambient_rank).basis]
        return Lattice(self.ambient_rank, tuple(tuple(r) for r in kernel.mat_hnf(sat)))


def smith_normal_form(m):
    """(left, diag, right) with left*m*right = diag, transforms unimodular,
    diagonal entries nonnegative with d1 | d2 | ..."""
    rows = [list(map(int, r)) for r in m]
    left, diag, right = kernel.mat_snf(rows)
    return left, diag, right


def lattice_index(sub, sup):
    """[sup : sub] for sub a finite-index sublattice of sup."""
    if sub.rank != sup.rank:
        raise RankMismatch("ranks %d and %d differ" % (sub.rank, sup.rank))
    change = []
    for v in sub.basis:
        c = sup.coords_integer(v)
        if c is None:
            raise NotSublattice("generator %r is not in the larger lattice" % (v,))
        change.append(list(c))
    d = kernel.det_bareiss(change) if change else 1
    if d == 0:
        raise RankMismatch("degenerate change of basis")
    return abs(d)


def primitive_vector(v, lattice=None):
    """The lattice point of content 1 on the ray spanned by v."""
    v = vec(v)
    if is_zero_vec(v):
        raise ZeroVector("no primitive vector on the zero ray")
    if lattice is None or lattice.is_standard():
        ints = clear_denominators(v)
        return kernel.vec_gcd_reduce(list(ints))
    c = lattice.coords_rational(v)
    if c is None:
        raise ValueError("vector lies outside the lattice span")
    prim = kernel.vec_gcd_reduce(list(clear_denominators(c)))
    out = [0] * lattice.ambient_rank
    for coef, row in zip(prim, lattice.basis):
        for k in range(lattice.ambient_rank):
            out[k] += coef * row[k]
    return tuple(out)


def _unimodular_inverse(v):
    """Exact inverse of a unimodular integer matrix, via the adjugate."""
    n = len(v)
    d = kernel.det_bareiss([list(r) for r in v])
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[v[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            x = kernel.det_bareiss(minor) if minor else 1
            if (i + j) % 2 == 1:
                x = -x
            row.append(x * d)
        inv.append(tuple(row))
    return tuple(inv)


@dataclass(frozen=True)
class QuotientLattice:
    """ambient / kernel with a chosen splitting.

    Row-vector convention: project(x) = x . projection for x a row vector
    in ambient coordinates; section(y) = y . section_matrix lifts quotient
    coordinates back.  projection o section = identity.
    """

    ambient: Lattice
    kernel_lattice: Lattice
    projection: tuple  # ambient_rank x quotient_rank
    section: tuple     # quotient_rank x ambient_rank

    @property
    def rank(self):
        return self.ambient.rank - self.kernel_lattice.rank

    def project(self, v):
        v = vec(v)
        return tuple(sum((v[i] * self.projection[i][j] for i in range(len(v))),
                         Fraction(0)) for j in range(self.rank))

    def lift(self, y):
        y = vec(y)
        return tuple(sum((y[i] * self.section[i][j] for i in range(len(y))),
                         Fraction(0)) for j in range(self.ambient.ambient_rank))


def quotient_by_span(ambient, cone_generators):
    """Quotient of the ambient lattice by the saturation of the span of the
    given vectors, with an integral splitting."""
    n = ambient.ambient_rank
    if not ambient.is_standard():
        raise ValueError("quotients are taken in standard ambient lattices")
    gens = [list(map(int, g)) for g in cone_generators if any(x != 0 for x in g)]
    if not gens:
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return QuotientLattice(ambient, Lattice(n, ()), ident, ident)
    sat = Lattice.from_generators(n, gens).saturation()
    r = sat.rank
    srows = [list(b) for b in sat.basis]
    left, diag, right = kernel.mat_snf(srows)
    # saturated lattice: all elementary divisors are 1, so the last n-r
    # columns of right, resp. rows of right^{-1}, split the quotient
    for t in range(r):
        if diag[t][t] != 1:
            raise AssertionError("saturation failed")
    rinv = _unimodular_inverse(tuple(tuple(row) for row in right))
    proj = tuple(tuple(right[i][j] for j in range(r, n)) for i in range(n))
    sect = tuple(tuple(rinv[i][j] for j in range(n)) for i in range(r, n))
    return QuotientLattice(ambient, sat, proj, sect)

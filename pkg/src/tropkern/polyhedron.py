"""Rational polyhedra with exact double-description conversion.

A polyhedron is stored in both canonical representations at once:

* H-rep: irredundant facet inequalities ``a . x >= b`` plus the affine
  hull as equalities ``a . x = b``.  Inequality normals are jointly
  primitive integer vectors reduced modulo the equality row space, so the
  H-rep of a polyhedron is unique and equality is structural.
* V-rep: the vertices, extreme rays and lineality space.  Rays are
  primitive and, together with the vertices, reduced modulo the lineality
  space, again making the representation unique.

Conversion both ways runs through one engine for pointed cones
(kernel.cone_rays) after substituting out equalities and splitting off
the lineality space; unbounded and lower-dimensional input needs no
special casing.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernel
from .errors import EmptyPolyhedron, HasLineality
from .exactlin import (Lattice, clear_denominators, is_zero_vec,
                       quotient_by_span, rational_rref, vec, vec_add,
                       vec_dot, vec_scale, vec_sub)
from .linprog import relint_feasible


def _integer_row(row):
    """Scale a rational row to a jointly primitive integer tuple (positive
    multiplier, so inequality orientation is preserved)."""
    ints = clear_denominators(row)
    return kernel.vec_gcd_reduce(list(ints))


def _cone_engine(ineq_rows, eq_rows, d):
    """Extreme rays and lineality of {z in Q^d : ineq . z >= 0, eq . z = 0},
    as primitive integer vectors."""
    ineq_rows = [r for r in ineq_rows if not is_zero_vec(r)]
    eq_rows = [r for r in eq_rows if not is_zero_vec(r)]
    if eq_rows:
        para = kernel.mat_kernel([list(_integer_row(r)) for r in eq_rows])
        if not para:
            return [], []
        m = len(para)
        sub = [tuple(vec_dot(vec(k), vec(r)) for k in para) for r in ineq_rows]
        sub = [r for r in sub if not is_zero_vec(r)]
    else:
        para = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        m = d
        sub = [vec(r) for r in ineq_rows]
    sub = [_integer_row(r) for r in sub]
    if not sub:
        rays_z, lin_z = [], [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    else:
        lin_z = kernel.mat_kernel([list(r) for r in sub])
        if lin_z:
            q = quotient_by_span(Lattice.standard(m), lin_z)
            desc = []
            for a in sub:
                desc.append(tuple(sum(q.section[i][j] * a[j] for j in range(m))
                                  for i in range(q.rank)))
            desc = [r for r in desc if not is_zero_vec(r)]
            rays_q = kernel.cone_rays([tuple(r) for r in desc], q.rank) if desc else []
            rays_z = [[int(x) for x in q.lift(w)] for w in rays_q]
        else:
            rays_z = [list(r) for r in kernel.cone_rays([tuple(r) for r in sub], m)]
    back = lambda z: tuple(sum(z[i] * para[i][j] for i in range(m)) for j in range(d))
    rays = [kernel.vec_gcd_reduce(list(back(z))) for z in rays_z]
    lin = [kernel.vec_gcd_reduce(list(back(z))) for z in lin_z]
    return rays, lin


def _reduce_mod_rows(v, rref_rows, pivots):
    """Subtract the unique combination of the RREF rows that zeroes the
    pivot coordinates of v."""
    v = list(vec(v))
    for row, j in zip(rref_rows, pivots):
        if v[j] != 0:
            f = v[j]
            for k in range(len(v)):
                v[k] -= f * row[k]
    return tuple(v)


@dataclass(frozen=True)
class Polyhedron:
    """Canonical dual description of a rational polyhedron."""

    ambient_dim: int
    ineqs: tuple      # ((a, b), ...): a . x >= b
    eqs: tuple        # ((a, b), ...): a . x = b
    vertices: tuple   # rational points
    rays: tuple       # primitive integer vectors
    lineality: tuple  # HNF basis rows

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def dim(self):
        if self.is_empty:
            return -1
        return self.ambient_dim - len(self.eqs)

    def contains(self, x):
        x = vec(x)
        if self.is_empty:
            return False
        return all(vec_dot(vec(a), x) == b for a, b in self.eqs) and \
            all(vec_dot(vec(a), x) >= b for a, b in self.ineqs)

    def interior_point(self):
        """A point in the relative interior (average of canonical
        generators pushed off the boundary)."""
        if self.is_empty:
            raise EmptyPolyhedron("no interior point")
        k = len(self.vertices)
        p = vec_scale(Fraction(1, k),
                      tuple(sum(v[i] for v in self.vertices) for i in range(self.ambient_dim)))
        for r in self.rays:
            p = vec_add(p, vec(r))
        return p

    def __str__(self):
        if self.is_empty:
            return "Polyhedron(empty, ambient=%d)" % self.ambient_dim
        return "Polyhedron(dim=%d, ambient=%d, %d vertices, %d rays, lineality %d)" % (
            self.dim, self.ambient_dim, len(self.vertices), len(self.rays),
            len(self.lineality))


def empty_polyhedron(n):
    zero = tuple([0] * n)
    return Polyhedron(n, ((zero, 1),), (), (), (), ())


_empty = empty_polyhedron


def _canonical_vrep(vertices, rays, lineality, n):
    lin_hnf = kernel.mat_hnf([list(map(int, l)) for l in lineality]) if lineality else []
    rref, piv = rational_rref(lin_hnf)
    verts = sorted({_reduce_mod_rows(v, rref, piv) for v in vertices})
    red_rays = set()
    for r in rays:
        rr = _reduce_mod_rows(r, rref, piv)
        if not is_zero_vec(rr):
            red_rays.add(_integer_row(rr))
    return tuple(verts), tuple(sorted(red_rays)), tuple(tuple(r) for r in lin_hnf)


def _canonical_hrep(ineqs, eqs):
    eq_hnf = kernel.mat_hnf([list(_integer_row(tuple(a) + (-Fraction(b),)))
                             for a, b in eqs]) if eqs else []
    rref, piv = rational_rref(eq_hnf)
    out_ineqs = set()
    for a, b in ineqs:
        row = _reduce_mod_rows(tuple(a) + (-Fraction(b),), rref, piv)
        if is_zero_vec(row):
            continue
        row = _integer_row(row)
        out_ineqs.add((row[:-1], -row[-1]))
    out_eqs = tuple((tuple(r[:-1]), -r[-1]) for r in eq_hnf)
    return tuple(sorted(out_ineqs)), out_eqs


def _hrep_to_vrep(ineqs, eqs, n):
    """Generators of {x : ineqs, eqs} via the homogenization cone in
    dimension n+1 (coordinates (x, t), polyhedron at t = 1)."""
    hom_ineqs = [tuple(a) + (-Fraction(b),) for a, b in ineqs]
    hom_ineqs.append(tuple([0] * n) + (1,))  # t >= 0
    hom_eqs = [tuple(a) + (-Fraction(b),) for a, b in eqs]
    gens, lin = _cone_engine(hom_ineqs, hom_eqs, n + 1)
    vertices, rays = [], []
    for g in gens:
        t = g[n]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in g[:n]))
        else:
            rays.append(g[:n])
    lineality = [l[:n] for l in lin]
    return vertices, rays, lineality


def _vrep_to_hrep(vertices, rays, lineality, n):
    """Facets and affine hull from generators, by computing the extreme rays
    of the dual of the homogenization cone."""
    ineq_rows = [tuple(v) + (1,) for v in vertices]
    ineq_rows += [tuple(r) + (0,) for r in rays]
    eq_rows = [tuple(l) + (0,) for l in lineality]
    dual_rays, dual_lin = _cone_engine(ineq_rows, eq_rows, n + 1)
    ineqs, eqs = [], []
    for w in dual_rays:
        a, c = w[:n], w[n]
        if not is_zero_vec(a):
            ineqs.append((a, -c))
    for w in dual_lin:
        a, c = w[:n], w[n]
        if not is_zero_vec(a):
            eqs.append((a, -c))
    return ineqs, eqs


def from_hrep(ineqs, eqs, n):
    """Polyhedron {x in Q^n : a . x >= b for (a, b) in ineqs,
    a . x = b for (a, b) in eqs}."""
    vertices, rays, lineality = _hrep_to_vrep(list(ineqs), list(eqs), n)
    if not vertices:
        return _empty(n)
    ineqs2, eqs2 = _vrep_to_hrep(vertices, rays, lineality, n)
    v3 = _canonical_vrep(vertices, rays, lineality, n)
    h3 = _canonical_hrep(ineqs2, eqs2)
    return Polyhedron(n, h3[0], h3[1], v3[0], v3[1], v3[2])


def from_vrep(vertices, rays, lineality, n):
    """Polyhedron conv(vertices) + cone(rays) + span(lineality)."""
    vertices = [vec(v) for v in vertices]
    rays = [vec(r) for r in rays if not is_zero_vec(r)]
    lineality = [vec(l) for l in lineality if not is_zero_vec(l)]
    if not vertices:
        return _empty(n)
    ineqs, eqs = _vrep_to_hrep(vertices, rays, lineality, n)
    v2, r2, l2 = _hrep_to_vrep(ineqs, eqs, n)
    h3 = _canonical_hrep(ineqs, eqs)
    v3 = _canonical_vrep(v2, r2, l2, n)
    return Polyhedron(n, h3[0], h3[1], v3[0], v3[1], v3[2])


def point(x):
    x = vec(x)
    return from_vrep([x], [], [], len(x))


def intersect(p, q):
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if p.is_empty or q.is_empty:
        return _empty(p.ambient_dim)
    return from_hrep(list(p.ineqs) + list(q.ineqs),
                     list(p.eqs) + list(q.eqs), p.ambient_dim)


@lru_cache(maxsize=None)
def recession_cone(p):
    if p.is_empty:
        raise EmptyPolyhedron("empty polyhedron has no recession cone")
    zero = tuple([0] * p.ambient_dim)
    return from_vrep([zero], p.rays, p.lineality, p.ambient_dim)


def minkowski_sum(p, q):
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if p.is_empty or q.is_empty:
        return _empty(p.ambient_dim)
    verts = [vec_add(v, w) for v in p.vertices for w in q.vertices]
    return from_vrep(verts, list(p.rays) + list(q.rays),
                     list(p.lineality) + list(q.lineality), p.ambient_dim)


def translate(p, v):
    v = vec(v)
    if p.is_empty:
        return p
    return from_vrep([vec_add(x, v) for x in p.vertices], p.rays, p.lineality,
                     p.ambient_dim)


def linear_image(p, mat, target_dim):
    """Image of p under x -> x . mat (mat: ambient_dim x target_dim rows)."""
    if p.is_empty:
        return _empty(target_dim)

    def apply(x):
        return tuple(sum((Fraction(x[i]) * mat[i][j] for i in range(p.ambient_dim)),
                         Fraction(0)) for j in range(target_dim))

    return from_vrep([apply(v) for v in p.vertices],
                     [apply(r) for r in p.rays],
                     [apply(l) for l in p.lineality], target_dim)


def is_simplicial(p):
    """Is p a (possibly unbounded) simplex: affinely independent vertices
    and linearly independent rays, in minimal number?"""
    if p.is_empty:
        raise EmptyPolyhedron("simpliciality of the empty polyhedron")
    if p.lineality:
        raise HasLineality("polyhedron has a nontrivial lineality space")
    return len(p.vertices) + len(p.rays) == p.dim + 1


@lru_cache(maxsize=None)
def faces(p):
    """All nonempty faces of p, including p itself, as a tuple ordered by
    decreasing dimension."""
    if p.is_empty:
        raise EmptyPolyhedron("faces of the empty polyhedron")
    gens = [("v", v) for v in p.vertices] + [("r", r) for r in p.rays]
    full = frozenset(range(len(gens)))
    facet_sets = []
    for a, b in p.ineqs:
        tight = set()
        for i, (kind, g) in enumerate(gens):
            val = vec_dot(vec(a), vec(g))
            if (kind == "v" and val == b) or (kind == "r" and val == 0):
                tight.add(i)
        facet_sets.append(frozenset(tight))
    seen = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for f in facet_sets:
                t = s & f
                if t and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    out = []
    for s in seen:
        verts = [gens[i][1] for i in s if gens[i][0] == "v"]
        if not verts:
            continue
        rays = [gens[i][1] for i in s if gens[i][0] == "r"]
        out.append(from_vrep(verts, rays, p.lineality, p.ambient_dim))
    out.sort(key=lambda f: (-f.dim, f.ineqs, f.eqs))
    return tuple(out)


def facets(p):
    return [f for f in faces(p) if f.dim == p.dim - 1]


def relint_meets(a, b):
    """Does the relative interior of a meet b?"""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if a.is_empty or b.is_empty:
        return False
    return relint_feasible(list(a.ineqs), list(b.ineqs),
                           list(a.eqs) + list(b.eqs), a.ambient_dim)


def contains_polyhedron(p, q):
    """Is q a subset of p?  (Both nonempty; checked on generators.)"""
    if q.is_empty:
        return True
    if p.is_empty:
        return False

    def on_rec(a, g):
        return vec_dot(vec(a), vec(g))

    for v in q.vertices:
        if not p.contains(v):
            return False
    for a, b in p.ineqs:
        for r in q.rays:
            if on_rec(a, r) < 0:
                return False
        for l in q.lineality:
            if on_rec(a, l) != 0:
                return False
    for a, b in p.eqs:
        for r in q.rays:
            if on_rec(a, r) != 0:
                return False
        for l in q.lineality:
            if on_rec(a, l) != 0:
                return False
    return True


def affine_hull_eqs(p):
    return p.eqs


def normalized_volume(p):
    """Lattice-normalized volume of a bounded polyhedron: a unimodular
    simplex of the polyhedron's own dimension counts 1 (so dim! times the
    Euclidean volume inside the saturated direction lattice).  A point has
    volume 1, the empty polyhedron 0."""
    if p.is_empty:
        return Fraction(0)
    if p.rays or p.lineality:
        raise ValueError("normalized volume needs a bounded polyhedron")
    if p.dim == 0:
        return Fraction(1)
    v0 = vec(p.vertices[0])
    dirs = [clear_denominators(vec_sub(vec(v), v0)) for v in p.vertices[1:]]
    lat = Lattice.from_generators(p.ambient_dim,
                                  [list(w) for w in dirs]).saturation()
    coords = [lat.coords_rational(vec_sub(vec(v), v0)) for v in p.vertices]
    return _nvol_full(coords, p.dim)


def _nvol_full(verts, d):
    """Normalized volume of the full-dimensional polytope conv(verts) in
    Q^d with respect to Z^d, by pyramids over the facets away from a base
    vertex: volume = lattice height times facet volume, recursively."""
    if d == 0:
        return Fraction(1)
    p = from_vrep(verts, [], [], d)
    v0 = vec(p.vertices[0])
    total = Fraction(0)
    for a, b in p.ineqs:
        prim = kernel.vec_gcd_reduce(list(a))
        scale = next(Fraction(x, y) for x, y in zip(a, prim) if y != 0)
        height = abs(vec_dot(vec(prim), v0) - Fraction(b, scale))
        if height == 0:
            continue
        fverts = [vec(v) for v in p.vertices if vec_dot(vec(a), vec(v)) == b]
        basis = kernel.mat_kernel([list(prim)])
        flat = Lattice(d, tuple(tuple(r) for r in basis))
        w0 = fverts[0]
        fcoords = [flat.coords_rational(vec_sub(v, w0)) for v in fverts]
        total += height * _nvol_full(fcoords, d - 1)
    return total


def dd_convert(ineqs, eqs, n):
    """Half-space to generator representation: minimal (vertices, rays,
    lineality) of the given system."""
    p = from_hrep(ineqs, eqs, n)
    return p.vertices, p.rays, p.lineality


def dd_convert_back(vertices, rays, lineality, n):
    """Generator to half-space representation: irredundant (ineqs, eqs)."""
    p = from_vrep(vertices, rays, lineality, n)
    return p.ineqs, p.eqs

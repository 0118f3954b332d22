"""Finite polyhedral complexes in a compactified space, and subdivisions.

A complex is a face-closed finite set of cells (polyhedra-with-sedentarity,
interpreted as their closures) whose pairwise intersections are common
faces.  The module provides

* ``complex_from_closures``: the complex of all faces of all closures of a
  complete complex of ordinary polyhedra, when every closure is constant
  towards the boundary;
* ``simplicial_refine``: the inductive stellar refinement that leaves
  every already-simplicial cell untouched and keeps recession cones inside
  the reference fan;
* ``regular_subdivision``: the subdivision of a polyhedron into the
  projections of the graph faces of the hypograph of the minimal concave
  function dominating finitely many point values and ray slopes;
* ``subdivide_for_family``: a simplicial complex adapted to a finite
  family of closed polyhedra (each member becomes a union of cells),
  via intersection with the base complex, thickening of boundary members
  into the open stratum, and one regular subdivision per member;
* ``common_refinement``: pairwise intersections of two complexes.

Only finite complexes are supported; the locally-finite theory is out of
scope by design.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from . import polyhedron as poly
from . import tropictoric as tt
from .errors import (EmptyPolyhedron, FanNotSimplicial, HasLineality,
                     NotAComplex, NotComplete, NotConstantTowardsBoundary,
                     RecessionNotInFan, UnboundedMinimalFunction)
from .exactlin import rational_rref, vec, vec_add, vec_dot, vec_scale, vec_sub
from .polyhedron import Polyhedron
from .tropictoric import Fan, TropicalPolyhedron


def cell_key(c):
    """Deterministic sort key for cells of a complex."""
    return (c.sedentarity, -c.finite_part.dim, c.finite_part.eqs,
            c.finite_part.ineqs)


def _poly_key(p):
    return (-p.dim, p.eqs, p.ineqs)


def trivial_fan(rank):
    """The fan consisting of the zero cone only (no compactification)."""
    return Fan.from_cones(rank, [])


def _whole_space(n):
    ident = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return poly.from_vrep([tuple([0] * n)], [], ident, n)


def _bounding_box(p):
    """Per-coordinate (lower, upper) bounds, None meaning unbounded."""
    n = p.ambient_dim
    lo = [min(v[i] for v in p.vertices) for i in range(n)]
    hi = [max(v[i] for v in p.vertices) for i in range(n)]
    for g in list(p.rays) + list(p.lineality):
        for i in range(n):
            if g[i] > 0:
                hi[i] = None
            elif g[i] < 0:
                lo[i] = None
    for l in p.lineality:
        for i in range(n):
            if l[i] != 0:
                lo[i] = hi[i] = None
    return lo, hi


def _boxes_meet(box_a, box_b):
    lo_a, hi_a = box_a
    lo_b, hi_b = box_b
    for i in range(len(lo_a)):
        if hi_a[i] is not None and lo_b[i] is not None and hi_a[i] < lo_b[i]:
            return False
        if hi_b[i] is not None and lo_a[i] is not None and hi_b[i] < lo_a[i]:
            return False
    return True


def _in_halfspace(q, a, b):
    """Is the polyhedron contained in {x : a . x >= b}?  Generator check."""
    av = vec(a)
    return (all(vec_dot(av, vec(v)) >= b for v in q.vertices)
            and all(vec_dot(av, vec(r)) >= 0 for r in q.rays)
            and all(vec_dot(av, vec(l)) == 0 for l in q.lineality))


def covered_by_cells(p, cells):
    """Exact test that p is contained in the union of the given (closed)
    polyhedra, by iterated polyhedral difference: carve p by each cell and
    keep only the full-dimensional remainders (sound because the union of
    the cells is closed)."""
    if p.is_empty:
        return True
    target_dim = p.dim
    pending = [p]
    for c in cells:
        if not pending:
            return True
        if c.is_empty:
            continue
        nxt = []
        for q in pending:
            inside = poly.intersect(q, c)
            if inside.is_empty or inside.dim < q.dim:
                nxt.append(q)
                continue
            cons = list(c.ineqs)
            for a, b in c.eqs:
                cons.append((a, b))
                cons.append((tuple(-x for x in a), -b))
            cur = q
            for a, b in cons:
                if _in_halfspace(cur, a, b):
                    continue
                outside = poly.from_hrep(
                    list(cur.ineqs) + [(tuple(-x for x in a), -b)],
                    list(cur.eqs), p.ambient_dim)
                if not outside.is_empty and outside.dim == target_dim:
                    nxt.append(outside)
                cur = poly.from_hrep(list(cur.ineqs) + [(a, b)],
                                     list(cur.eqs), p.ambient_dim)
                if cur.is_empty:
                    break
        pending = nxt
    return not pending


def _ctb_stratum(c, tau_id):
    """Stratum of the closure of a constant-towards-boundary cell at a
    coface of its sedentarity, via the containment criterion (no linear
    programs)."""
    fan = c.fan
    q = tt.stratum_quotient(fan, c.sedentarity)
    qt = tt.stratum_quotient(fan, tau_id)
    tau_img = poly.linear_image(fan.cones[tau_id], q.projection, q.rank)
    rec = poly.recession_cone(c.finite_part)
    if not poly.contains_polyhedron(rec, tau_img):
        return poly.empty_polyhedron(qt.rank)
    m = tt.stratum_map(fan, c.sedentarity, tau_id)
    return poly.linear_image(c.finite_part, m, qt.rank)


@dataclass(frozen=True)
class PolyhedralComplex:
    """A finite face-closed set of cells with common-face intersections."""

    fan: Fan
    cells: tuple

    @staticmethod
    def from_cells(fan, cells, validate=True):
        uniq = {}
        for c in cells:
            if isinstance(c, Polyhedron):
                c = TropicalPolyhedron(fan, 0, c)
            if c.fan != fan:
                raise ValueError("cell lives on a different fan")
            if c.is_empty:
                continue
            uniq[c] = True
        out = PolyhedralComplex(fan, tuple(sorted(uniq, key=cell_key)))
        if validate:
            out.validate()
        return out

    @property
    def dim(self):
        return max((c.finite_part.dim for c in self.cells), default=-1)

    def cells_of_dim(self, d):
        return [c for c in self.cells if c.finite_part.dim == d]

    def sedentarities(self):
        return sorted({c.sedentarity for c in self.cells})

    def index_of(self, c):
        return self.cells.index(c)

    def all_ctb(self):
        return all(tt.is_constant_towards_boundary(c) for c in self.cells)

    def cell_faces(self, c):
        """The faces of a cell's closure that the complex must contain:
        across all strata when the cell is constant towards the boundary,
        within its own stratum otherwise."""
        if tt.is_constant_towards_boundary(c):
            return tt.trop_faces(c)
        return [TropicalPolyhedron(self.fan, c.sedentarity, f)
                for f in poly.faces(c.finite_part)]

    def top_cells(self):
        """Cells that are not proper faces of another cell."""
        proper = set()
        for c in self.cells:
            for f in self.cell_faces(c):
                if f != c:
                    proper.add(f)
        return [c for c in self.cells if c not in proper]

    def face_relation(self):
        """Map from cell index to the sorted indices of its faces present
        in the complex (including itself)."""
        pos = {c: i for i, c in enumerate(self.cells)}
        rel = {}
        for i, c in enumerate(self.cells):
            rel[i] = tuple(sorted(pos[f] for f in self.cell_faces(c)))
        return rel

    def is_simplicial_complex(self):
        return all(is_simplicial_cell(c) for c in self.cells)

    def validate(self):
        """Check face closure and the common-face intersection condition.
        Cross-stratum intersections are checked for pairs of cells that are
        constant towards the boundary (for others the closure is not a
        union of strata polyhedra and no check is meaningful)."""
        cellset = set(self.cells)
        fin_faces = {}
        for c in self.cells:
            fin_faces[c] = poly.faces(c.finite_part)
            for f in fin_faces[c]:
                if TropicalPolyhedron(self.fan, c.sedentarity, f) not in cellset:
                    raise NotAComplex("a face of a cell is missing: %s of %s"
                                      % (f, c.finite_part))
        ctb = {c: tt.is_constant_towards_boundary(c) for c in self.cells}
        boxes = {c: _bounding_box(c.finite_part) for c in self.cells}
        tfaces = {}
        for c in self.cells:
            if ctb[c]:
                tfaces[c] = frozenset(tt.trop_faces(c))
        for i, a in enumerate(self.cells):
            for b in self.cells[:i]:
                if a.sedentarity == b.sedentarity:
                    if not _boxes_meet(boxes[a], boxes[b]):
                        continue
                    meet = poly.intersect(a.finite_part, b.finite_part)
                    if meet.is_empty:
                        continue
                    if meet not in fin_faces[a] or meet not in fin_faces[b]:
                        raise NotAComplex(
                            "cells meet outside a common face: %s and %s"
                            % (a.finite_part, b.finite_part))
                else:
                    if not (ctb[a] and ctb[b]):
                        continue
                    rho = tt.minimal_common_coface(self.fan, a.sedentarity,
                                                   b.sedentarity)
                    if rho is None:
                        continue
                    meet = poly.intersect(_ctb_stratum(a, rho),
                                          _ctb_stratum(b, rho))
                    if meet.is_empty:
                        continue
                    mt = TropicalPolyhedron(self.fan, rho, meet)
                    if mt not in cellset or mt not in tfaces[a] or \
                            mt not in tfaces[b]:
                        raise NotAComplex(
                            "closures meet outside a common face "
                            "(sedentarities %d, %d)"
                            % (a.sedentarity, b.sedentarity))


def is_simplicial_cell(c):
    """A cell is simplicial when its finite part is a (possibly unbounded)
    simplex whose recession cone belongs to the star fan of its
    sedentarity."""
    fin = c.finite_part
    if fin.is_empty:
        return True
    if fin.lineality:
        return False
    if not poly.is_simplicial(fin):
        return False
    sfan, _ = tt.star_fan(c.fan, c.sedentarity)
    return poly.recession_cone(fin) in sfan.cones


def _sed0_polyhedra(pi, fan):
    """Normalize complex-like input to a list of ordinary polyhedra."""
    if isinstance(pi, PolyhedralComplex):
        cells = []
        for c in pi.cells:
            if c.sedentarity != 0:
                raise ValueError("expected a complex of sedentarity-zero cells")
            cells.append(c.finite_part)
        return cells
    out = []
    for t in pi:
        if isinstance(t, TropicalPolyhedron):
            if t.sedentarity != 0:
                raise ValueError("expected sedentarity-zero cells")
            t = t.finite_part
        if t.ambient_dim != fan.rank:
            raise ValueError("cell does not live in the fan's space")
        if not t.is_empty:
            out.append(t)
    return out


def _face_closure(cells):
    closed = {}
    for t in cells:
        for f in poly.faces(t):
            closed[f] = True
    return sorted(closed, key=_poly_key)


def _check_stratum_complex(cells):
    """Pairwise common-face condition for ordinary polyhedra."""
    face_lists = {t: poly.faces(t) for t in cells}
    boxes = {t: _bounding_box(t) for t in cells}
    for i, a in enumerate(cells):
        for b in cells[:i]:
            if not _boxes_meet(boxes[a], boxes[b]):
                continue
            meet = poly.intersect(a, b)
            if meet.is_empty:
                continue
            if meet not in face_lists[a] or meet not in face_lists[b]:
                raise NotAComplex("cells meet outside a common face: "
                                  "%s and %s" % (a, b))


def complex_from_closures(pi, fan, validate=True):
    """The complex of all faces of all closures of a complete complex of
    ordinary polyhedra, each of whose closures is constant towards the
    boundary."""
    base = _face_closure(_sed0_polyhedra(pi, fan))
    if not base:
        raise NotComplete("empty input cannot cover the space")
    if validate:
        _check_stratum_complex(base)
    if not covered_by_cells(_whole_space(fan.rank), base):
        raise NotComplete("the input complex does not cover the whole space")
    out = {}
    for t in base:
        d = TropicalPolyhedron(fan, 0, t)
        if not tt.is_constant_towards_boundary(d):
            raise NotConstantTowardsBoundary(
                "closure of %s is not constant towards the boundary" % (t,))
        for f in tt.trop_faces(d):
            out[f] = True
    return PolyhedralComplex.from_cells(fan, out, validate=validate)


@dataclass(frozen=True)
class LiftedCone:
    """The homogenization of a pointed polyhedron: the cone over its
    vertices at height one and its rays at height zero."""

    base: Polyhedron
    cone: Polyhedron

    @staticmethod
    def over(t):
        if t.is_empty:
            raise EmptyPolyhedron("cannot lift the empty polyhedron")
        if t.lineality:
            raise HasLineality("cannot lift a polyhedron with lineality")
        n = t.ambient_dim
        gens = [tuple(p) + (Fraction(1),) for p in t.vertices]
        gens += [tuple(r) + (0,) for r in t.rays]
        cone = poly.from_vrep([tuple([0] * (n + 1))], gens, [], n + 1)
        return LiftedCone(t, cone)

    def slice_height_one(self):
        """The height-one slice, which must recover the base polyhedron."""
        n = self.base.ambient_dim
        unit = tuple([0] * n) + (1,)
        sl = poly.from_hrep(list(self.cone.ineqs),
                            list(self.cone.eqs) + [(unit, 1)], n + 1)
        proj = tuple(tuple(1 if i == j else 0 for j in range(n))
                     for i in range(n + 1))
        return poly.linear_image(sl, proj, n)

    def apex(self):
        """The canonical relative-interior ray of the lifted cone: the
        vertex barycenter at height one plus the sum of the rays."""
        w = self.base.interior_point()
        return tuple(w) + (Fraction(1),)


def _join(d, w, n):
    """Convex join of a polyhedron with one extra point."""
    return poly.from_vrep(list(d.vertices) + [tuple(w)], d.rays, [], n)


def simplicial_refine(pi, fan, validate=True):
    """Refine a complex of ordinary polyhedra into a simplicial one by the
    inductive stellar construction: cells are processed by increasing
    dimension; a non-simplicial cell is replaced by the joins of its
    refined boundary (and of the faces of its recession cone) with the
    canonical interior point taken from the lifted-cone apex.  Simplicial
    cells pass through unchanged, and every output cell keeps its recession
    cone inside the fan."""
    n = fan.rank
    cells = _face_closure(_sed0_polyhedra(pi, fan))
    if validate:
        _check_stratum_complex(cells)
    for t in cells:
        if poly.recession_cone(t) not in fan.cones:
            raise RecessionNotInFan(
                "recession cone of %s is not a cone of the fan" % (t,))
    decomp = {}
    out = {}
    for t in sorted(cells, key=lambda c: (c.dim,) + _poly_key(c)[1:]):
        proper = poly.faces(t)[1:]
        if poly.is_simplicial(t):
            pieces = {t}
            for f in proper:
                pieces |= decomp[f]
        else:
            apex = LiftedCone.over(t).apex()
            w = apex[:-1]
            boundary = set()
            for f in proper:
                boundary |= decomp[f]
            pieces = set(boundary)
            for d in boundary:
                pieces.add(_join(d, w, n))
            for f in poly.faces(poly.recession_cone(t)):
                pieces.add(poly.from_vrep([tuple(w)], f.rays, [], n))
        decomp[t] = pieces
        for d in pieces:
            out[d] = True
    return PolyhedralComplex.from_cells(fan, out, validate=validate)


def _hypograph(n, point_bounds, ray_bounds):
    verts = [tuple(vec(p)) + (Fraction(b),) for p, b in point_bounds]
    rays = [tuple(vec(r)) + (Fraction(s),) for r, s in ray_bounds]
    rays.append(tuple([0] * n) + (-1,))
    return poly.from_vrep(verts, rays, [], n + 1)


def _graph_cells(h, n):
    """Projections of the faces of the hypograph that lie on the graph of
    the induced concave function (the faces without the downward
    direction in their recession cone)."""
    down = tuple([0] * n) + (-1,)
    proj = tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n + 1))
    cells = []
    for f in poly.faces(h):
        if poly.recession_cone(f).contains(down):
            continue
        cells.append(poly.linear_image(f, proj, n))
    return cells


def _regular_cells(point_bounds, ray_bounds, n):
    """Cells of the regular subdivision induced by the minimal concave
    function dominating the given point values and ray slopes."""
    h = _hypograph(n, point_bounds, ray_bounds)
    up = tuple([0] * n) + (1,)
    if poly.recession_cone(h).contains(up):
        raise UnboundedMinimalFunction(
            "the slope constraints force the minimal concave function "
            "to be +infinity")
    return _graph_cells(h, n)


def regular_subdivision(t, point_bounds, ray_bounds=(), fan=None,
                        validate=True):
    """Subdivision of the polyhedron t into the linearity domains of the
    minimal concave function phi with phi(p) >= b for the given points and
    asymptotic slope >= s along the given rays; the cells are t-restricted
    projections of the graph faces of the hypograph of phi."""
    if t.is_empty:
        raise EmptyPolyhedron("cannot subdivide the empty polyhedron")
    if t.lineality:
        raise HasLineality("regular subdivision needs a pointed polyhedron")
    n = t.ambient_dim
    point_bounds = list(point_bounds)
    ray_bounds = list(ray_bounds)
    if fan is None:
        fan = trivial_fan(n)
    cells0 = _regular_cells(point_bounds, ray_bounds, n)
    domain = poly.from_vrep([vec(p) for p, _ in point_bounds],
                            [vec(r) for r, _ in ray_bounds], [], n)
    if not poly.contains_polyhedron(domain, t):
        raise UnboundedMinimalFunction(
            "the minimal concave function is -infinity outside the convex "
            "hull of the constrained points and rays")
    if domain == t:
        cells = cells0
    else:
        cells = []
        for c in cells0:
            for g in poly.faces(t):
                meet = poly.intersect(c, g)
                if not meet.is_empty:
                    cells.append(meet)
    return PolyhedralComplex.from_cells(fan, cells, validate=validate)


def _fan_pl_ray_values(fan, sigma_id):
    """Values at the primitive ray generators of the canonical conewise
    linear function that is zero on the given cone and negative outside:
    0 on the cone's rays, -1 on every other ray."""
    vals = {}
    sigma = fan.cones[sigma_id]
    for rid in fan.ray_ids():
        g = fan.ray_generator(rid)
        vals[g] = Fraction(0) if sigma.contains(g) else Fraction(-1)
    return vals


def _subdivide_once(fan, cells, lam):
    """One step of the family subdivision: refine the (simplicial,
    face-closed) set of cells so that each intersection with the
    sedentarity-zero polyhedron lam becomes a cell, using the regular
    subdivision from the minimal concave function of the proof."""
    vals = _fan_pl_ray_values(fan, fan.index_of(poly.recession_cone(lam)))
    out = {}
    for t in cells:
        meet = poly.intersect(t, lam)
        if meet.is_empty:
            out[t] = True
            continue
        pbs = [(q, Fraction(0)) for q in meet.vertices]
        pbs += [(p, Fraction(-1)) for p in t.vertices]
        rbs = [(r, vals[r]) for r in t.rays]
        for piece in _regular_cells(pbs, rbs, fan.rank):
            out[piece] = True
    return sorted(out, key=_poly_key)


def _solve_matrix(a_rows, b_rows):
    """Solve A X = B for square invertible rational A (row lists)."""
    m = len(a_rows)
    width = len(b_rows[0]) if b_rows else 0
    aug = [list(vec(a_rows[i])) + list(vec(b_rows[i])) for i in range(m)]
    rref, piv = rational_rref(aug)
    if piv != list(range(m)):
        raise ValueError("matrix is singular")
    x = [None] * m
    for row, j in zip(rref, piv):
        x[j] = tuple(row[m:m + width])
    return x


def thicken(d, reference_scale=None):
    """Push a boundary polyhedron into the open stratum: the thickening is
    the Minkowski sum of an adapted lift of the finite part with the
    sedentarity cone shifted by M times the sum of its primitive
    generators.  The lift is chosen so that the recession cone of the
    result is the fan cone inducing the recession cone of the finite part,
    so the thickening satisfies the same stratumwise recession-cone
    condition and has the original polyhedron as a face of its closure."""
    fan = d.fan
    sed = d.sedentarity
    if sed == 0:
        return d.finite_part
    n = fan.rank
    q = tt.stratum_quotient(fan, sed)
    sigma = fan.cones[sed]
    sfan, to_orig = tt.star_fan(fan, sed)
    rec = poly.recession_cone(d.finite_part)
    try:
        tau_id = to_orig[sfan.index_of(rec)]
    except ValueError:
        raise RecessionNotInFan(
            "thickening needs the recession cone of the finite part to be "
            "a cone of the star fan")
    tau = fan.cones[tau_id]
    u_rays = [r for r in tau.rays if r not in sigma.rays]
    basis_rows = [tuple(q.project(u)) for u in u_rays]
    image_rows = [tuple(u) for u in u_rays]
    for i in range(q.rank):
        e = tuple(1 if k == i else 0 for k in range(q.rank))
        trial = [list(map(int, r)) for r in basis_rows] + [list(e)]
        if kernel.mat_rank(trial) > len(basis_rows):
            basis_rows.append(e)
            image_rows.append(tuple(q.lift(e)))
    section_rows = _solve_matrix(basis_rows, image_rows)
    lifted = poly.linear_image(d.finite_part, tuple(section_rows), n)
    coords = [abs(x) for v in lifted.vertices for x in v]
    coords += [abs(Fraction(x)) for r in lifted.rays for x in r]
    m_shift = 1 + max(coords, default=Fraction(0))
    shift = tuple([Fraction(0)] * n)
    for w in sigma.rays:
        shift = vec_add(shift, vec(w))
    shifted_cone = poly.from_vrep([vec_scale(m_shift, shift)],
                                  list(sigma.rays), [], n)
    return poly.minkowski_sum(lifted, shifted_cone)


def subdivide_for_family(family, fan, start=None, validate=True):
    """A simplicial complex in the compactified space, with stratumwise
    recession cones in the fan, in which every member of the finite family
    of constant-towards-boundary polyhedra is a finite union of cells.

    The steps follow the finite case of the subdivision theorem: start
    from a complete simplicial complex (the fan itself when complete),
    intersect the members with the cells of its closure complex, thicken
    the boundary pieces into the open stratum, then for each piece perform
    the regular subdivision driven by the minimal concave function and
    restore simpliciality, and finally take the complex of closures."""
    if not fan.is_simplicial_fan():
        raise FanNotSimplicial("family subdivision needs a simplicial fan")
    members = []
    for lam in family:
        if isinstance(lam, Polyhedron):
            lam = TropicalPolyhedron(fan, 0, lam)
        if lam.fan != fan:
            raise ValueError("family member lives on a different fan")
        if lam.is_empty:
            continue
        if not tt.is_constant_towards_boundary(lam):
            raise NotConstantTowardsBoundary(
                "every family member must be constant towards the boundary")
        members.append(lam)
    if start is None:
        if not fan.is_complete():
            raise NotComplete(
                "the fan is not complete; supply a complete starting "
                "complex via start=")
        base = [c for c in fan.cones]
    else:
        base = _face_closure(_sed0_polyhedra(start, fan))
        _check_stratum_complex(base)
        if not covered_by_cells(_whole_space(fan.rank), base):
            raise NotComplete("the starting complex does not cover the space")
        base = [c.finite_part for c in
                simplicial_refine(base, fan, validate=False).cells]
    closures = complex_from_closures(base, fan, validate=False)
    cellset = set(closures.cells)
    pieces = {}
    for lam in members:
        for cell in closures.cells:
            x = tt.intersect_ctb(lam, cell)
            if not x.is_empty and x not in cellset:
                pieces[x] = True
    flat = {}
    for x in sorted(pieces, key=cell_key):
        flat[thicken(x)] = True
    cells = sorted(_face_closure(base), key=_poly_key)
    for lam0 in sorted(flat, key=_poly_key):
        cells = _subdivide_once(fan, cells, lam0)
        cells = [c.finite_part for c in
                 simplicial_refine(cells, fan, validate=False).cells]
    return complex_from_closures(cells, fan, validate=validate)


def common_refinement(a, b):
    """The complex of all pairwise closure intersections of the cells of
    two complexes (reduced to one side when the other is empty)."""
    if a.fan != b.fan:
        raise ValueError("complexes live on different fans")
    if not b.cells:
        return a
    if not a.cells:
        return b
    for c in list(a.cells) + list(b.cells):
        if not tt.is_constant_towards_boundary(c):
            raise NotConstantTowardsBoundary(
                "common refinement needs both complexes constant towards "
                "the boundary")
    out = {}
    for ca in a.cells:
        for cb in b.cells:
            x = tt.intersect_ctb(ca, cb)
            if x.is_empty:
                continue
            for f in tt.trop_faces(x):
                out[f] = True
    return PolyhedralComplex.from_cells(a.fan, out)


def is_union_of_cells(lam, cx):
    """Is the closed polyhedron lam exactly the union of the cells of the
    complex contained in it?  Checked stratum by stratum with the exact
    covering test."""
    fan = cx.fan
    if lam.is_empty:
        return True
    inside = [c for c in cx.cells if tt.intersect_ctb(c, lam) == c]
    for tau in fan.coface_ids(lam.sedentarity):
        target = tt.closure_stratum(lam, tau)
        if target.is_empty:
            continue
        strata = []
        for c in inside:
            if c.sedentarity in fan.face_ids(tau):
                s = tt.closure_stratum(c, tau)
                if not s.is_empty:
                    strata.append(s)
        if not covered_by_cells(target, strata):
            return False
    return True

"""Tropical cycles: weighted polyhedral cells with balancing.

A cycle is a finite formal sum of weighted cells of one common dimension.
Cells may sit in different boundary strata of the compactified space; the
cycle is balanced when, stratum by stratum, the weighted primitive normal
vectors around every interior codimension-one face sum to a vector of the
face's own direction lattice.  Boundary (stratum-jumping) faces carry no
balancing condition: a cycle with cells in a stratum is the closure of a
balanced cycle there.

Weights are integers; an optional positive rational ``weight_scale``
carries non-unit lattice normalizations of derived cells ("1" for the
classical case).  Normalization merges duplicate cells over the combined
rational coefficient and drops zeros.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from . import polyhedron as poly
from . import tropictoric as tt
from .complexes import PolyhedralComplex, _in_halfspace, cell_key
from .errors import MixedDimension, NotAComplex, NotZeroDimensional
from .exactlin import (Lattice, clear_denominators, is_zero_vec,
                       lattice_index, quotient_by_span, vec, vec_add,
                       vec_dot, vec_scale, vec_sub)
from .tropictoric import TropicalPolyhedron

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedCell:
    """A cell with an integer weight and a positive rational scale."""

    cell: TropicalPolyhedron
    weight: int
    weight_scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.weight_scale <= 0:
            raise ValueError("weight scale must be positive")

    @property
    def coefficient(self):
        return self.weight * self.weight_scale


@dataclass(frozen=True)
class TropicalCycle:
    """A pure-dimensional weighted cell sum, normalized and sorted."""

    fan: tt.Fan
    dimension: int
    sedentarity: int
    cells: tuple


def _normalize_coefficient(c):
    """Split a rational coefficient into (integer weight, positive scale)."""
    if c.denominator == 1:
        return int(c), Fraction(1)
    return c.numerator, Fraction(1, c.denominator)


def make_cycle(fan, weighted_cells, dimension=None, sedentarity=0):
    """Build a normalized cycle: drop empty and zero-weight cells, merge
    duplicate cells over their combined coefficient, check purity of
    dimension, and order cells canonically."""
    merged = {}
    for wc in weighted_cells:
        if isinstance(wc, tuple):
            wc = WeightedCell(wc[0], wc[1],
                              Fraction(wc[2]) if len(wc) > 2 else Fraction(1))
        if wc.cell.fan != fan:
            raise ValueError("cell lives on a different fan")
        if wc.cell.is_empty or wc.weight == 0:
            continue
        merged[wc.cell] = merged.get(wc.cell, Fraction(0)) + wc.coefficient
    cells = []
    for cell in sorted(merged, key=cell_key):
        coeff = merged[cell]
        if coeff == 0:
            continue
        w, s = _normalize_coefficient(coeff)
        cells.append(WeightedCell(cell, w, s))
    dims = {wc.cell.finite_part.dim for wc in cells}
    if len(dims) > 1:
        raise MixedDimension("cycle cells have dimensions %s"
                             % sorted(dims))
    if dims:
        d = dims.pop()
        if dimension is not None and dimension != d:
            raise MixedDimension(
                "cells have dimension %d, declared %d" % (d, dimension))
        dimension = d
    elif dimension is None:
        dimension = -1
    for wc in cells:
        if sedentarity not in fan.face_ids(wc.cell.sedentarity):
            raise ValueError(
                "cell sedentarity is not a coface of the cycle's home cone")
    return TropicalCycle(fan, dimension, sedentarity, tuple(cells))


def zero_cycle(fan, dimension, sedentarity=0):
    return TropicalCycle(fan, dimension, sedentarity, ())


def validate_support(c):
    """Check that same-stratum cells of the cycle meet in common faces."""
    by_sed = {}
    for wc in c.cells:
        by_sed.setdefault(wc.cell.sedentarity, []).append(wc.cell.finite_part)
    for cells in by_sed.values():
        face_lists = {t: poly.faces(t) for t in cells}
        for i, a in enumerate(cells):
            for b in cells[:i]:
                meet = poly.intersect(a, b)
                if meet.is_empty:
                    continue
                if meet not in face_lists[a] or meet not in face_lists[b]:
                    raise NotAComplex(
                        "cycle cells meet outside a common face: %s and %s"
                        % (a, b))


def as_complex(c, validate=True):
    """The polyhedral complex spanned by the cycle's cells and their
    faces (closure faces for cells constant towards the boundary)."""
    cells = []
    for wc in c.cells:
        if tt.is_constant_towards_boundary(wc.cell):
            cells.extend(tt.trop_faces(wc.cell))
        else:
            cells.extend(TropicalPolyhedron(c.fan, wc.cell.sedentarity, f)
                         for f in poly.faces(wc.cell.finite_part))
    return PolyhedralComplex.from_cells(c.fan, cells, validate=validate)


def direction_lattice(p):
    """The saturated lattice of directions along a polyhedron: all integer
    vectors of the linear space parallel to its affine hull."""
    if p.is_empty:
        raise ValueError("empty polyhedron has no direction lattice")
    v0 = vec(p.vertices[0])
    gens = [clear_denominators(vec_sub(vec(v), v0)) for v in p.vertices[1:]]
    gens += [tuple(r) for r in p.rays]
    gens += [tuple(l) for l in p.lineality]
    gens = [g for g in gens if any(x != 0 for x in g)]
    return Lattice.from_generators(p.ambient_dim, gens).saturation()


def normal_vector(delta, tau):
    """The canonical primitive normal vector of a polyhedron relative to a
    codimension-one face: the lattice vector of the polyhedron's direction
    lattice generating the rank-one quotient modulo the face's directions,
    oriented to point from the face into the polyhedron."""
    ld = direction_lattice(delta)
    lt = direction_lattice(tau)
    rel = []
    for b in lt.basis:
        co = ld.coords_integer(b)
        if co is None:
            raise ValueError("face directions do not embed in the cell's")
        rel.append(co)
    q = quotient_by_span(Lattice.standard(ld.rank), rel)
    if q.rank != 1:
        raise ValueError("not a codimension-one face")
    coords = q.lift((1,))
    n = tuple(sum(int(coords[i]) * ld.basis[i][k] for i in range(ld.rank))
              for k in range(ld.ambient_rank))
    for a, b in delta.ineqs:
        if all(vec_dot(vec(a), vec(v)) == b for v in tau.vertices) and \
                all(vec_dot(vec(a), vec(r)) == 0 for r in tau.rays) and \
                all(vec_dot(vec(a), vec(l)) == 0 for l in tau.lineality):
            s = vec_dot(vec(a), vec(n))
            if s == 0:
                continue
            return n if s > 0 else tuple(-x for x in n)
    raise ValueError("no facet inequality separates the face")


def _codim1_faces(c):
    """Map (sedentarity, face polyhedron) -> list of (top cell, coefficient)
    over the finite-part facets of the cycle's cells."""
    out = {}
    for wc in c.cells:
        fin = wc.cell.finite_part
        if fin.dim == 0:
            continue
        for f in poly.facets(fin):
            out.setdefault((wc.cell.sedentarity, f), []).append(
                (fin, wc.coefficient))
    return out


def check_balanced(c):
    """Balancing test: returns (verdict, witness) where the witness is the
    first violated interior codimension-one face (as a tropical polyhedron)
    or None.  Cells are assumed to form a complex stratum by stratum; only
    finite-part faces are tested."""
    faces = _codim1_faces(c)
    for (sed, f) in sorted(
            faces, key=lambda k: (k[0], -k[1].dim, k[1].eqs, k[1].ineqs)):
        total = None
        for delta, coeff in faces[(sed, f)]:
            n = vec_scale(coeff, vec(normal_vector(delta, f)))
            total = n if total is None else vec_add(total, n)
        if is_zero_vec(total):
            continue
        if not direction_lattice(f).contains(clear_denominators(total)):
            return False, TropicalPolyhedron(c.fan, sed, f)
    return True, None


def add_cycles(a, b):
    """Sum of two cycles on the same fan.  The supports must already be
    compatible (cells meeting in common faces); otherwise refine first."""
    if a.fan != b.fan:
        raise ValueError("cycles live on different fans")
    if a.cells and b.cells and a.dimension != b.dimension:
        raise MixedDimension("cannot add cycles of dimensions %d and %d"
                             % (a.dimension, b.dimension))
    dim = a.dimension if a.cells else b.dimension
    sed = a.sedentarity
    if a.sedentarity != b.sedentarity:
        common = [s for s in a.fan.face_ids(a.sedentarity)
                  if s in a.fan.face_ids(b.sedentarity)]
        sed = min(common, key=lambda s: a.fan.cones[s].dim)
    out = make_cycle(a.fan, list(a.cells) + list(b.cells), dimension=dim,
                     sedentarity=sed)
    validate_support(out)
    return out


def scale_cycle(c, k):
    k = Fraction(k)
    if k == 0:
        return zero_cycle(c.fan, c.dimension, c.sedentarity)
    cells = [WeightedCell(wc.cell, wc.weight, wc.weight_scale * abs(k))
             if k > 0 else
             WeightedCell(wc.cell, -wc.weight, wc.weight_scale * abs(k))
             for wc in c.cells]
    return make_cycle(c.fan, cells, dimension=c.dimension,
                      sedentarity=c.sedentarity)


def degree(c):
    """Sum of the coefficients of a zero-dimensional cycle, across all
    sedentarities; the empty cycle has degree 0."""
    if c.cells and c.dimension != 0:
        raise NotZeroDimensional("degree of a %d-cycle" % c.dimension)
    total = sum((wc.coefficient for wc in c.cells), Fraction(0))
    return int(total) if total.denominator == 1 else total


def push_forward(f, c):
    """Push a cycle along an equivariant map: each cell maps to its image
    cell with weight multiplied by the index of the pushed direction
    lattice inside the image cell's direction lattice; cells whose image
    drops dimension are reported and contribute nothing."""
    if c.fan != f.source_fan:
        raise ValueError("cycle lives on a different fan")
    collapsed = 0
    images = {}
    for wc in c.cells:
        img = tt.apply_equivariant(f, wc.cell)
        if img.finite_part.dim < wc.cell.finite_part.dim:
            collapsed += 1
            continue
        mat = tt.stratum_linear(f, wc.cell.sedentarity, img.sedentarity)
        src = direction_lattice(wc.cell.finite_part)
        pushed = Lattice.from_generators(
            len(mat[0]) if mat else img.finite_part.ambient_dim,
            [tuple(sum(b[i] * mat[i][k] for i in range(len(b)))
                   for k in range(len(mat[0]))) for b in src.basis]
            if mat else [])
        idx = lattice_index(pushed, direction_lattice(img.finite_part))
        images[img] = images.get(img, Fraction(0)) + wc.coefficient * idx
    if collapsed:
        log.info("push-forward dropped %d cell(s) whose image collapses "
                 "in dimension", collapsed)
    out = make_cycle(f.target_fan,
                     [WeightedCell(cell, *_normalize_coefficient(coeff))
                      for cell, coeff in images.items() if coeff != 0],
                     dimension=c.dimension,
                     sedentarity=f._image_cone(c.sedentarity))
    validate_support(out)
    return out


def _carve_outside(q, cell, target_dim):
    """Full-dimensional closures of the parts of q outside the cell."""
    pieces = []
    cons = list(cell.ineqs)
    for a, b in cell.eqs:
        cons.append((a, b))
        cons.append((tuple(-x for x in a), -b))
    cur = q
    for a, b in cons:
        if _in_halfspace(cur, a, b):
            continue
        neg = (tuple(-x for x in a), -b)
        outside = poly.from_hrep(list(cur.ineqs) + [neg], list(cur.eqs),
                                 q.ambient_dim)
        if not outside.is_empty and outside.dim == target_dim:
            pieces.append(outside)
        cur = poly.from_hrep(list(cur.ineqs) + [(a, b)], list(cur.eqs),
                             q.ambient_dim)
        if cur.is_empty:
            break
    return pieces, cur


def _weight_at(cells, point):
    return sum((coeff for fin, coeff in cells if fin.contains(point)),
               Fraction(0))


def cycles_equal(a, b):
    """Equality of cycles up to subdivision: carve the union of supports
    into pieces on which both weight functions are constant and compare
    them at a relative interior point of every full-dimensional piece."""
    if a.fan != b.fan:
        raise ValueError("cycles live on different fans")
    if not a.cells and not b.cells:
        return True
    if a.cells and b.cells and a.dimension != b.dimension:
        z = zero_cycle(a.fan, -1)
        return cycles_equal(a, z) and cycles_equal(b, z)
    d = a.dimension if a.cells else b.dimension
    seds = {wc.cell.sedentarity for wc in a.cells} | \
        {wc.cell.sedentarity for wc in b.cells}
    for sed in sorted(seds):
        acells = [(wc.cell.finite_part, wc.coefficient) for wc in a.cells
                  if wc.cell.sedentarity == sed]
        bcells = [(wc.cell.finite_part, wc.coefficient) for wc in b.cells
                  if wc.cell.sedentarity == sed]
        support = [fin for fin, _ in acells] + [fin for fin, _ in bcells]
        for start in support:
            pieces = [start]
            for cell in support:
                if cell == start:
                    continue
                nxt = []
                for q in pieces:
                    inside = poly.intersect(q, cell)
                    if inside.is_empty or inside.dim < d:
                        nxt.append(q)
                        continue
                    outs, inner = _carve_outside(q, cell, d)
                    nxt.extend(outs)
                    if not inner.is_empty and inner.dim == d:
                        nxt.append(inner)
                pieces = nxt
            for q in pieces:
                pt = q.interior_point()
                if _weight_at(acells, pt) != _weight_at(bcells, pt):
                    return False
    return True

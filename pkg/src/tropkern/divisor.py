"""Piecewise affine functions, conewise linear functions, and their
intersection with cycles.

A piecewise affine function is given by a complete polyhedral decomposition
of the open stratum together with an integer slope covector and a rational
constant on each top cell, continuous across shared faces.  A conewise
linear function on the fan plays the role of a toric divisor: its local
data on a maximal cone is the negated linear form.

Two intersection operators act on cycles:

* ``corner_locus``: the divisor of a piecewise affine function on a
  balanced cycle of sedentarity zero.  Its finite-stratum weights measure
  the break of the slopes around a codimension-one face; its boundary
  weights at a stratum collect, for every top cell escaping to that
  stratum along a ray, the slope along the ray's primitive generator times
  a lattice index.
* ``toric_intersect``: the intersection with the boundary divisor of a
  conewise linear function.  It is supported purely at infinity, with
  weights given by the function's value on the escape direction.  For a
  cycle living in a boundary stratum the divisor is first restricted to
  the star fan (possible when no ray of the stratum's cone carries the
  function away from zero), intersected there, and carried back along the
  stratum inclusion.

Both outputs are mixed-sedentarity cycles of dimension one less.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import polyhedron as poly
from . import tropictoric as tt
from .complexes import PolyhedralComplex, _whole_space, covered_by_cells, \
    subdivide_for_family
from .cycle import (direction_lattice, make_cycle, normal_vector,
                    push_forward, validate_support)
from .errors import (CycleInUnboundedLocus, NotComplete,
                     NotConstantTowardsBoundary, NotSedentarityZero,
                     UnboundedDifference)
from .exactlin import Lattice, lattice_index, vec, vec_dot
from .tropictoric import EquivariantMap, Fan, TropicalPolyhedron

# --- piecewise affine functions ---------------------------------------------


@dataclass(frozen=True)
class AffinePiece:
    """One linearity domain: the function is slope . x + constant on it."""

    cell: poly.Polyhedron
    slope: tuple
    constant: Fraction


@dataclass(frozen=True)
class PiecewiseAffineFunction:
    """A continuous function on the open stratum, affine with integer slope
    on each top cell of a complete decomposition."""

    fan: Fan
    pieces: tuple

    @property
    def rank(self):
        return self.fan.rank


def make_pa(fan, data, validate=True):
    """Build a piecewise affine function from (cell, slope, constant)
    triples.  The cells must cover the space and the data must agree on
    every shared face."""
    pieces = []
    for cell, slope, constant in data:
        if isinstance(cell, TropicalPolyhedron):
            if cell.sedentarity != 0:
                raise NotSedentarityZero(
                    "function data lives on the open stratum")
            cell = cell.finite_part
        if cell.is_empty or cell.dim < fan.rank:
            continue
        slope = tuple(int(s) for s in slope)
        if len(slope) != fan.rank:
            raise ValueError("slope covector has the wrong length")
        pieces.append(AffinePiece(cell, slope, Fraction(constant)))
    pieces.sort(key=lambda p: (p.cell.eqs, p.cell.ineqs))
    phi = PiecewiseAffineFunction(fan, tuple(pieces))
    if validate:
        _validate_pa(phi)
    return phi


def _agree_on(p, q, region):
    """Do two affine pieces take equal values on a region (checked on its
    canonical generators)?"""
    ds = vec_sub_int(p.slope, q.slope)
    dc = p.constant - q.constant
    for v in region.vertices:
        if vec_dot(vec(ds), vec(v)) + dc != 0:
            return False
    for r in list(region.rays) + list(region.lineality):
        if vec_dot(vec(ds), vec(r)) != 0:
            return False
    return True


def vec_sub_int(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _validate_pa(phi):
    cells = [p.cell for p in phi.pieces]
    if not covered_by_cells(_whole_space(phi.rank), cells):
        raise NotComplete(
            "the linearity domains do not cover the whole space")
    for i, p in enumerate(phi.pieces):
        for q in phi.pieces[:i]:
            meet = poly.intersect(p.cell, q.cell)
            if meet.is_empty:
                continue
            if not _agree_on(p, q, meet):
                raise ValueError(
                    "discontinuous data: pieces disagree on a shared face")


def max_of_affine(fan, terms):
    """The pointwise maximum of finitely many affine functions
    slope . x + constant, with its natural linearity decomposition."""
    terms = [(tuple(int(s) for s in slope), Fraction(c))
             for slope, c in terms]
    if not terms:
        raise ValueError("need at least one affine term")
    n = fan.rank
    data = []
    for i, (si, ci) in enumerate(terms):
        ineqs = [(vec_sub_int(si, sj), cj - ci)
                 for j, (sj, cj) in enumerate(terms) if j != i]
        cell = poly.from_hrep(ineqs, [], n)
        data.append((cell, si, ci))
    return make_pa(fan, data, validate=False)


def pa_value(phi, x):
    """Evaluate the function at a point of the open stratum."""
    for p in phi.pieces:
        if p.cell.contains(x):
            return vec_dot(vec(p.slope), vec(x)) + p.constant
    raise ValueError("point outside the function's domain")


def domain_complex(phi):
    """The linearity domains and their finite faces as a complex."""
    cells = []
    for p in phi.pieces:
        cells.extend(poly.faces(p.cell))
    return PolyhedralComplex.from_cells(phi.fan, cells)


def refine_pa(phi, validate=True):
    """An equal function whose linearity domains are constant towards the
    boundary with stratumwise recession cones in the fan, obtained by the
    family subdivision of the original domains."""
    cells = [TropicalPolyhedron(phi.fan, 0, p.cell) for p in phi.pieces]
    cx = subdivide_for_family(cells, phi.fan, validate=validate)
    data = []
    for c in cx.cells_of_dim(phi.rank):
        if c.sedentarity != 0:
            continue
        owner = next(p for p in phi.pieces
                     if poly.contains_polyhedron(p.cell, c.finite_part))
        data.append((c.finite_part, owner.slope, owner.constant))
    return make_pa(phi.fan, data, validate=False)


# --- conewise linear functions (toric divisors) -----------------------------


@dataclass(frozen=True)
class PLOnFan:
    """A conewise linear function: one integer covector per maximal cone,
    agreeing on shared faces."""

    fan: Fan
    values: tuple  # aligned with fan.maximal_ids()


def make_pl(fan, values, validate=True):
    """Build a conewise linear function from covectors per maximal cone,
    given either as a mapping from maximal cone id or as a sequence
    aligned with the fan's maximal cone ids."""
    maximal = fan.maximal_ids()
    if isinstance(values, dict):
        if sorted(values) != sorted(maximal):
            raise ValueError("need exactly one covector per maximal cone")
        aligned = [values[i] for i in maximal]
    else:
        aligned = list(values)
        if len(aligned) != len(maximal):
            raise ValueError("need exactly one covector per maximal cone")
    aligned = [tuple(int(x) for x in k) for k in aligned]
    for k in aligned:
        if len(k) != fan.rank:
            raise ValueError("covector has the wrong length")
    psi = PLOnFan(fan, tuple(aligned))
    if validate:
        for (i, si), (j, sj) in combinations(enumerate(maximal), 2):
            meet = poly.intersect(fan.cones[si], fan.cones[sj])
            gens = list(meet.rays) + list(meet.lineality)
            for g in gens:
                if vec_dot(vec(aligned[i]), vec(g)) != \
                        vec_dot(vec(aligned[j]), vec(g)):
                    raise ValueError(
                        "conewise data disagrees on a shared face")
    return psi


def pl_value(psi, v):
    """Evaluate the conewise linear function at a vector of the support."""
    fan = psi.fan
    gamma = fan.cone_containing(v)
    if gamma is None:
        raise ValueError("vector outside the fan's support")
    maximal = fan.maximal_ids()
    for pos, sigma in enumerate(maximal):
        if sigma in fan.coface_ids(gamma):
            return vec_dot(vec(psi.values[pos]), vec(v))
    raise ValueError("no maximal cone above the containing cone")


def pl_slope(psi, sigma_id):
    """The covector of the function on (any maximal cone above) a cone."""
    maximal = psi.fan.maximal_ids()
    for pos, sigma in enumerate(maximal):
        if sigma in psi.fan.coface_ids(sigma_id):
            return psi.values[pos]
    raise ValueError("cone has no maximal coface")


@dataclass(frozen=True)
class ToricCartierDivisor:
    """The boundary divisor determined by a conewise linear function; its
    local datum on a maximal cone is the negated covector."""

    psi: PLOnFan

    @property
    def fan(self):
        return self.psi.fan

    def local_data(self):
        return tuple(tuple(-x for x in k) for k in self.psi.values)


def unbounded_locus(d):
    """Ids of the fan rays where the divisor's function is nonzero: the
    closed boundary strata of these rays form the divisor's support."""
    psi = d.psi if isinstance(d, ToricCartierDivisor) else d
    out = []
    for rid in psi.fan.ray_ids():
        if pl_value(psi, psi.fan.ray_generator(rid)) != 0:
            out.append(rid)
    return tuple(out)


def stratum_in_support(d, tau_id):
    """Does the stratum of this cone lie inside the divisor's support?"""
    rays = set(unbounded_locus(d))
    fan = d.psi.fan if isinstance(d, ToricCartierDivisor) else d.fan
    return any(rid in rays for rid in fan.face_ids(tau_id)
               if fan.cones[rid].dim == 1)


def recession_function(phi):
    """The conewise linear function tracking a piecewise affine function
    at infinity: on each maximal cone it equals the slope of any linearity
    domain whose recession cone contains that cone, and the difference
    from the function is bounded.

    Requires every linearity domain to be constant towards the boundary
    (refine_pa produces such a decomposition); raises UnboundedDifference
    when no conewise linear function stays at bounded distance."""
    fan = phi.fan
    cells = [TropicalPolyhedron(fan, 0, p.cell) for p in phi.pieces]
    for c in cells:
        if not tt.is_constant_towards_boundary(c):
            raise NotConstantTowardsBoundary(
                "recession function needs domains constant towards the "
                "boundary; refine the decomposition first")
    recs = [poly.recession_cone(p.cell) for p in phi.pieces]
    for r in recs:
        if not tt.covered_by_fan(r, fan):
            raise UnboundedDifference(
                "a linearity domain recedes outside the fan's support")
    values = {}
    for sigma in fan.maximal_ids():
        owner = next((i for i, r in enumerate(recs)
                      if poly.contains_polyhedron(r, fan.cones[sigma])), None)
        if owner is None:
            raise UnboundedDifference(
                "no linearity domain is asymptotically linear on a maximal "
                "cone")
        values[sigma] = phi.pieces[owner].slope
    psi = make_pl(fan, values, validate=False)
    for gamma_id, gamma in enumerate(fan.cones):
        gens = list(gamma.rays) + list(gamma.lineality) + \
            [tuple(-x for x in l) for l in gamma.lineality]
        owners = [i for i, r in enumerate(recs)
                  if poly.contains_polyhedron(r, gamma)]
        for g in gens:
            vals = {vec_dot(vec(phi.pieces[i].slope), vec(g))
                    for i in owners}
            vals.add(pl_value(psi, g))
            if len(vals) > 1:
                raise UnboundedDifference(
                    "asymptotic slopes disagree along a fan direction")
    return psi


# --- intersection with cycles -----------------------------------------------


def _refine_weighted_cells(wcells, carvers, d):
    """Intersect weighted cells with a covering family, keeping the
    full-dimensional pieces with their carver index.  A cell inside a
    shared face of two carvers yields the same piece twice; it is kept
    once (the slope data of either carver restricts to the same affine
    function on it)."""
    out = []
    for wc in wcells:
        seen = set()
        for idx, g in enumerate(carvers):
            piece = poly.intersect(wc.cell.finite_part, g)
            if piece.is_empty or piece.dim != d or piece in seen:
                continue
            seen.add(piece)
            out.append((piece, wc.coefficient, idx))
    return out


def _boundary_contributions(fan, pieces, slope_of, d):
    """Closure-stratum cells of dimension d-1 with their weights: for each
    piece escaping to a stratum along a ray, weight = coefficient times
    the lattice index of the projected direction lattice times the slope
    along the ray's primitive generator."""
    acc = {}
    for piece, coeff, idx in pieces:
        tp = TropicalPolyhedron(fan, 0, piece)
        rec = poly.recession_cone(piece)
        np_lat = direction_lattice(piece)
        for tau_id in range(len(fan.cones)):
            if fan.cones[tau_id].dim == 0:
                continue
            f = tt.closure_stratum(tp, tau_id)
            if f.is_empty or f.dim != d - 1:
                continue
            rho = poly.intersect(rec, fan.cones[tau_id])
            if rho.dim != 1 or rho.lineality:
                raise RuntimeError(
                    "internal invariant violated: a cell escapes to a "
                    "stratum along a non-ray; refine the cycle first")
            omega = rho.rays[0]
            q = tt.stratum_quotient(fan, tau_id)
            img = Lattice.from_generators(
                q.rank, [tuple(q.project(b)) for b in np_lat.basis])
            index = lattice_index(img, direction_lattice(f))
            s = slope_of(idx)
            w = coeff * index * vec_dot(vec(s), vec(omega))
            key = (tau_id, f)
            acc[key] = acc.get(key, Fraction(0)) + w
    return [(TropicalPolyhedron(fan, tau_id, f), w)
            for (tau_id, f), w in acc.items() if w != 0]


def _require_sed0(c):
    if c.sedentarity != 0 or any(wc.cell.sedentarity != 0 for wc in c.cells):
        raise NotSedentarityZero(
            "this operation acts on cycles of sedentarity zero")


def corner_locus(phi, c):
    """The divisor of a piecewise affine function on a balanced cycle of
    sedentarity zero: a cycle of dimension one less with finite parts where
    the slopes break and boundary parts where the cells escape to strata.

    The cycle is first refined by the function's linearity domains (and by
    the maximal fan cones), so the function is affine on every cell."""
    if phi.fan != c.fan:
        raise ValueError("function and cycle live on different fans")
    _require_sed0(c)
    validate_support(c)
    fan = phi.fan
    d = c.dimension
    if not c.cells:
        return make_cycle(fan, [], dimension=d - 1)
    carvers = []
    for p in phi.pieces:
        for sigma in fan.maximal_ids():
            g = poly.intersect(p.cell, fan.cones[sigma])
            if not g.is_empty and g.dim == fan.rank:
                carvers.append((g, p.slope))
    if not fan.is_complete():
        carvers = [(p.cell, p.slope) for p in phi.pieces]
    pieces = _refine_weighted_cells(c.cells, [g for g, _ in carvers], d)
    slope_of = lambda idx: carvers[idx][1]

    facets = {}
    for piece, coeff, idx in pieces:
        if piece.dim == 0:
            continue
        for f in poly.facets(piece):
            facets.setdefault(f, []).append((piece, coeff, carvers[idx][1]))
    finite = []
    for f in sorted(facets, key=lambda p: (-p.dim, p.eqs, p.ineqs)):
        adj = facets[f]
        total = None
        first = Fraction(0)
        for piece, coeff, slope in adj:
            n = normal_vector(piece, f)
            first += coeff * vec_dot(vec(slope), vec(n))
            step = tuple(coeff * x for x in vec(n))
            total = step if total is None else \
                tuple(a + b for a, b in zip(total, step))
        second = {vec_dot(vec(slope), vec(total)) for _, _, slope in adj}
        if len(second) > 1:
            raise RuntimeError(
                "corner weight is ill defined on a face; the input cycle "
                "is not balanced there")
        w = -first + second.pop()
        if w != 0:
            finite.append((TropicalPolyhedron(fan, 0, f), w))

    boundary = _boundary_contributions(fan, pieces, slope_of, d)
    out = make_cycle(fan, [(cell, *_coeff_pair(w))
                           for cell, w in finite + boundary],
                     dimension=d - 1, sedentarity=0)
    validate_support(out)
    return out


def _coeff_pair(w):
    w = Fraction(w)
    if w.denominator == 1:
        return (int(w), Fraction(1))
    return (w.numerator, Fraction(1, w.denominator))


def _toric_intersect_pure(div, c, extra=None):
    """Intersection with a pure sedentarity-zero cycle: boundary
    contributions weighted by the divisor's local datum (the negated
    function) on the escape direction, matching the classical multiplicity
    of the ray's boundary stratum in the divisor.

    ``extra`` optionally refines the carving (cone intersected with each
    extra cell) so the output cells align with another computation carved
    by the same family; the extra cells must cover the space."""
    fan = div.fan
    d = c.dimension
    local = div.local_data()
    carvers = []
    data = []
    for pos, s in enumerate(fan.maximal_ids()):
        cone = fan.cones[s]
        if extra is None:
            carvers.append(cone)
            data.append(local[pos])
            continue
        for x in extra:
            g = poly.intersect(cone, x)
            if not g.is_empty and g.dim == fan.rank:
                carvers.append(g)
                data.append(local[pos])
    pieces = _refine_weighted_cells(c.cells, carvers, d)
    cells = _boundary_contributions(
        fan, [(p, w, i) for p, w, i in pieces],
        lambda idx: data[idx], d)
    return make_cycle(fan, [(cell, *_coeff_pair(w)) for cell, w in cells],
                      dimension=d - 1, sedentarity=0)


def _restrict_divisor(div, sigma_id):
    """The divisor restricted to the closure of a boundary stratum, as a
    conewise linear function on the star fan; defined when the function
    vanishes on the stratum's cone."""
    fan = div.fan
    for rid in fan.face_ids(sigma_id):
        if fan.cones[rid].dim == 1 and \
                pl_value(div.psi, fan.ray_generator(rid)) != 0:
            raise CycleInUnboundedLocus(
                "the cycle's stratum lies in the divisor's support")
    sfan, to_orig = tt.star_fan(fan, sigma_id)
    q = tt.stratum_quotient(fan, sigma_id)
    values = {}
    for pos, sid in enumerate(sfan.maximal_ids()):
        tau_id = to_orig[sid]
        k = pl_slope(div.psi, tau_id)
        values[sid] = tuple(vec_dot(vec(k), vec(row)) for row in q.section)
    return ToricCartierDivisor(make_pl(sfan, values, validate=False)), sfan, q


def toric_intersect(div, c, extra_carvers=None):
    """Intersection of the boundary divisor with a cycle of any
    sedentarity: cells in a boundary stratum are intersected inside the
    stratum's own compactified space (after restricting the divisor, which
    requires the stratum to avoid the divisor's support) and carried back.

    ``extra_carvers`` refines the carving of sedentarity-zero cells (see
    ``_toric_intersect_pure``); the result is the same cycle, subdivided."""
    if div.fan != c.fan:
        raise ValueError("divisor and cycle live on different fans")
    fan = div.fan
    if not fan.is_complete():
        raise NotComplete("toric intersection needs a complete fan")
    d = c.dimension
    groups = {}
    for wc in c.cells:
        groups.setdefault(wc.cell.sedentarity, []).append(wc)
    parts = []
    for sed in sorted(groups):
        pure = make_cycle(fan, groups[sed], dimension=d, sedentarity=sed)
        if sed == 0:
            parts.extend(
                _toric_intersect_pure(div, pure, extra_carvers).cells)
            continue
        rdiv, sfan, q = _restrict_divisor(div, sed)
        star_cycle = make_cycle(
            sfan, [(TropicalPolyhedron(sfan, 0, wc.cell.finite_part),
                    wc.weight, wc.weight_scale) for wc in groups[sed]],
            dimension=d, sedentarity=0)
        res = _toric_intersect_pure(rdiv, star_cycle)
        inclusion = EquivariantMap(
            sfan, fan, tuple(tuple(int(x) for x in row)
                             for row in q.section),
            translation_sed=sed)
        parts.extend(push_forward(inclusion, res).cells)
    out = make_cycle(fan, parts, dimension=d - 1,
                     sedentarity=c.sedentarity)
    validate_support(out)
    return out


def properly_intersects(divisors, c):
    """Do the divisor supports meet the cycle's closure properly: for every
    nonempty subset, the common support meets the cycle in dimension at
    most the cycle's dimension minus the subset's size?"""
    fan = c.fan
    divisors = list(divisors)
    for div in divisors:
        if div.fan != fan:
            raise ValueError("divisor and cycle live on different fans")
    hit_rays = [set(unbounded_locus(div)) for div in divisors]
    for size in range(1, len(divisors) + 1):
        for subset in combinations(range(len(divisors)), size):
            worst = -1
            for tau_id in range(len(fan.cones)):
                rays = [rid for rid in fan.face_ids(tau_id)
                        if fan.cones[rid].dim == 1]
                if not all(any(r in hit_rays[i] for r in rays)
                           for i in subset):
                    continue
                for wc in c.cells:
                    if wc.cell.sedentarity not in fan.face_ids(tau_id):
                        continue
                    f = tt.closure_stratum(wc.cell, tau_id)
                    worst = max(worst, f.dim)
            if worst > c.dimension - size:
                return False
    return True


def check_commutativity(div_a, div_b, c):
    """Do two boundary divisors commute on the cycle, up to subdivision?"""
    from .cycle import cycles_equal
    ab = toric_intersect(div_a, toric_intersect(div_b, c))
    ba = toric_intersect(div_b, toric_intersect(div_a, c))
    return cycles_equal(ab, ba)


def pull_back(f, div):
    """Pull a boundary divisor back along a translation-free equivariant
    map: on each maximal source cone the covector is the function's
    covector over the image cone composed with the linear part."""
    if div.fan != f.target_fan:
        raise ValueError("divisor lives on a different fan than the "
                         "map's target")
    if f.translation_sed != 0 or any(x != 0 for x in f.translation):
        raise ValueError("divisors pull back along maps without boundary "
                         "translation")
    values = []
    for sigma in f.source_fan.maximal_ids():
        tau = f._image_cone(sigma)
        k = pl_slope(div.psi, tau)
        values.append(tuple(int(vec_dot(vec(k), vec(row)))
                            for row in f.linear))
    return ToricCartierDivisor(make_pl(f.source_fan, values, validate=True))


def pl_from_ray_values(fan, values):
    """The conewise linear function taking prescribed values on the fan's
    primitive ray generators, one value per ``fan.ray_ids()`` entry.
    Every maximal cone must be simplicial of full rank, so its covector
    is determined by solving against the generators; the covectors must
    be integral and agree on shared faces."""
    from .exactlin import solve_affine
    rids = fan.ray_ids()
    values = [Fraction(v) for v in values]
    if len(values) != len(rids):
        raise ValueError("need exactly one value per fan ray")
    val = dict(zip(rids, values))
    covectors = []
    for sigma in fan.maximal_ids():
        rays_of = [r for r in fan.face_ids(sigma)
                   if fan.cones[r].dim == 1]
        gens = [fan.ray_generator(r) for r in rays_of]
        if len(gens) != fan.rank or fan.cones[sigma].dim != fan.rank:
            raise ValueError("ray values determine the function only on "
                             "full simplicial cones")
        rows = [tuple(g) + (val[r],) for g, r in zip(gens, rays_of)]
        k = solve_affine(rows)
        if k is None:
            raise ValueError("inconsistent ray values on a cone")
        if any(x.denominator != 1 for x in k):
            raise ValueError("the ray values do not give an integral "
                             "function on this fan")
        covectors.append(tuple(int(x) for x in k))
    return make_pl(fan, covectors, validate=True)


def divisor_from_ray_values(fan, values):
    """The boundary divisor pairing to the given value on each fan ray:
    its underlying function takes the negated value on the primitive
    generator, so intersecting the ambient space yields each ray's
    stratum with the prescribed weight."""
    return ToricCartierDivisor(
        pl_from_ray_values(fan, [-Fraction(v) for v in values]))

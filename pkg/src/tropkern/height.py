"""Green functions of piecewise affine type and their height machinery:
first-Chern cycles, Monge-Ampere measures, star products, local heights.

A Green function is a piecewise affine function paired with the boundary
divisor of its negated recession function; near a boundary stratum the
function differs from the divisor's local slope by a bounded function, so
after subtracting that slope it extends continuously to the stratum.

The first-Chern cycle of a Green function on a cycle is the boundary
intersection with its divisor minus the corner locus of the function; for
a globally affine function the two parts cancel exactly, which pins every
sign in this module.  Iterating first-Chern cycles down to dimension zero
yields the Monge-Ampere measure, whose total mass is an intersection
degree (a mixed volume of slope polytopes).

Local heights follow an induction: integrate the first Green function
against the Monge-Ampere measure of the rest, then recurse on the
boundary intersection with the first divisor.  The star product tracks
the same computation as a pair (cycle, accumulated function/support
terms); evaluating a fully reduced pair reproduces the height, and
``expanded_height`` unrolls the induction into one explicit sum.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from . import polyhedron as poly
from . import tropictoric as tt
from .cycle import (TropicalCycle, add_cycles, degree, make_cycle,
                    push_forward, scale_cycle)
from .divisor import (AffinePiece, PiecewiseAffineFunction,
                      ToricCartierDivisor, corner_locus, make_pa, make_pl,
                      pa_value, pl_slope, properly_intersects,
                      recession_function, stratum_in_support, toric_intersect,
                      vec_sub_int)
from .errors import (GreenUndefinedAtPoint, ImproperIntersection,
                     NotConstantTowardsBoundary, NotZeroDimensional)
from .exactlin import vec, vec_dot
from .tropictoric import EquivariantMap, TropicalPolyhedron

# --- green functions --------------------------------------------------------


@dataclass(frozen=True)
class GreenFunction:
    """A piecewise affine function paired with the boundary divisor of its
    negated recession function.  The divisor's local datum on a maximal
    cone equals the asymptotic slope of the function there."""

    phi: PiecewiseAffineFunction
    divisor: ToricCartierDivisor

    @property
    def fan(self):
        return self.phi.fan


def green_from_pa(phi):
    """Pair a piecewise affine function with its boundary divisor.  The
    linearity domains must be constant towards the boundary and the
    function must stay at bounded distance from a conewise linear one
    (refine the decomposition first if needed)."""
    psi = recession_function(phi)
    div = ToricCartierDivisor(make_pl(
        phi.fan, [tuple(-x for x in k) for k in psi.values], validate=False))
    return GreenFunction(phi, div)


def green_refined(phi):
    """A Green function from a piecewise affine function, refining its
    linearity domains first when the raw domains are not constant towards
    the boundary."""
    from .divisor import refine_pa
    try:
        return green_from_pa(phi)
    except NotConstantTowardsBoundary:
        return green_from_pa(refine_pa(phi))


def green_max(fan, terms):
    """The Green function of a maximum of affine functions, refining the
    natural linearity decomposition first when it is not constant towards
    the boundary."""
    from .divisor import max_of_affine
    return green_refined(max_of_affine(fan, terms))


def _local_datum(div, sigma_id):
    """The divisor's local datum on (any maximal cone above) a cone."""
    return tuple(-x for x in pl_slope(div.psi, sigma_id))


def _shift_slopes(phi, m):
    """The function minus the globally affine function m . x."""
    return PiecewiseAffineFunction(phi.fan, tuple(
        AffinePiece(p.cell, vec_sub_int(p.slope, m), p.constant)
        for p in phi.pieces))


def _stratum_value(phi, sed, pt):
    """Value at a boundary point of the continuous extension of a
    piecewise affine function that is eventually constant towards the
    point's stratum.  Candidate values come from the linearity domains
    receding into the stratum's cone whose closures cover the point;
    their slopes must kill the cone's directions and the values must
    agree."""
    fan = phi.fan
    cone = fan.cones[sed]
    gens = list(cone.rays) + list(cone.lineality)
    q = tt.stratum_quotient(fan, sed)
    lift = q.lift(pt)
    values = set()
    for p in phi.pieces:
        rec = poly.recession_cone(p.cell)
        if not poly.relint_meets(cone, rec):
            continue
        shadow = tt.closure_stratum(TropicalPolyhedron(fan, 0, p.cell), sed)
        if shadow.is_empty or not shadow.contains(pt):
            continue
        for direction in gens:
            if vec_dot(vec(p.slope), vec(direction)) != 0:
                raise GreenUndefinedAtPoint(
                    "the function grows linearly towards the point's "
                    "stratum")
        values.add(vec_dot(vec(p.slope), vec(lift)) + p.constant)
    if not values:
        raise GreenUndefinedAtPoint(
            "no linearity domain reaches the point's stratum")
    if len(values) > 1:
        raise GreenUndefinedAtPoint(
            "the continuous extensions along different domains disagree")
    return values.pop()


def green_value(g, point):
    """Value of a Green function at a point of the compactified space,
    given either as a coordinate tuple (open stratum) or a
    zero-dimensional cell.  At a boundary stratum inside the divisor's
    support the local slope is subtracted first; the value is the
    continuous extension of the bounded remainder and must not depend on
    the maximal cone used to regularize."""
    if isinstance(point, TropicalPolyhedron):
        if point.finite_part.dim != 0:
            raise NotZeroDimensional("can only evaluate at points")
        sed = point.sedentarity
        pt = point.finite_part.vertices[0]
    else:
        sed = 0
        pt = tuple(point)
    if sed == 0:
        return pa_value(g.phi, pt)
    fan = g.fan
    if not stratum_in_support(g.divisor, sed):
        return _stratum_value(g.phi, sed, pt)
    values = set()
    local = g.divisor.local_data()
    for pos, sigma in enumerate(fan.maximal_ids()):
        if sigma not in fan.coface_ids(sed):
            continue
        values.add(_stratum_value(_shift_slopes(g.phi, local[pos]), sed, pt))
    if len(values) > 1:
        raise GreenUndefinedAtPoint(
            "the point lies in the divisor's support and the regularized "
            "value depends on the chart")
    return values.pop()


def restrict_green(g, sigma_id):
    """The Green function induced on the boundary stratum of a cone: the
    continuous extension of the function minus the divisor's local slope,
    as a piecewise affine function on the stratum's star fan.  Off the
    divisor's support no slope is subtracted (the function extends as it
    is); on the support, different maximal cones above the stratum change
    the result by a globally linear function only, which every
    first-Chern cycle kills."""
    fan = g.fan
    if sigma_id == 0:
        return g
    if stratum_in_support(g.divisor, sigma_id):
        m = _local_datum(g.divisor, sigma_id)
    else:
        m = (0,) * fan.rank
    cone = fan.cones[sigma_id]
    gens = list(cone.rays) + list(cone.lineality)
    q = tt.stratum_quotient(fan, sigma_id)
    sfan, _ = tt.star_fan(fan, sigma_id)
    data = []
    for p in g.phi.pieces:
        rec = poly.recession_cone(p.cell)
        if not poly.relint_meets(cone, rec):
            continue
        shifted = vec_sub_int(p.slope, m)
        for direction in gens:
            if vec_dot(vec(shifted), vec(direction)) != 0:
                raise GreenUndefinedAtPoint(
                    "the function minus the local slope still grows "
                    "towards the stratum")
        cell = tt.closure_stratum(TropicalPolyhedron(fan, 0, p.cell),
                                  sigma_id)
        if cell.is_empty:
            continue
        slope = tuple(int(vec_dot(vec(shifted), vec(row)))
                      for row in q.section)
        data.append((cell, slope, p.constant))
    phi = make_pa(sfan, data)
    return green_from_pa(phi)


# --- first-Chern cycles and measures ----------------------------------------


def _chern_sed0(g, c):
    carvers = [p.cell for p in g.phi.pieces]
    t = toric_intersect(g.divisor, c, extra_carvers=carvers)
    co = corner_locus(g.phi, c)
    return add_cycles(t, scale_cycle(co, -1))


def chern_cycle(g, c):
    """The first-Chern cycle of a Green function on a cycle: the boundary
    intersection with its divisor minus the corner locus of the function.
    Cells sitting in a boundary stratum are handled by restricting the
    Green function to that stratum and carrying the result back along the
    stratum inclusion."""
    if g.fan != c.fan:
        raise ValueError("green function and cycle live on different fans")
    fan = c.fan
    d = c.dimension
    groups = {}
    for wc in c.cells:
        groups.setdefault(wc.cell.sedentarity, []).append(wc)
    parts = []
    for sed in sorted(groups):
        if sed == 0:
            pure = make_cycle(fan, groups[sed], dimension=d, sedentarity=0)
            parts.extend(_chern_sed0(g, pure).cells)
            continue
        rg = restrict_green(g, sed)
        sfan = rg.fan
        q = tt.stratum_quotient(fan, sed)
        star_cycle = make_cycle(
            sfan, [(TropicalPolyhedron(sfan, 0, wc.cell.finite_part),
                    wc.weight, wc.weight_scale) for wc in groups[sed]],
            dimension=d, sedentarity=0)
        res = _chern_sed0(rg, star_cycle)
        inclusion = EquivariantMap(
            sfan, fan,
            tuple(tuple(int(x) for x in row) for row in q.section),
            translation_sed=sed)
        parts.extend(push_forward(inclusion, res).cells)
    return make_cycle(fan, parts, dimension=d - 1,
                      sedentarity=c.sedentarity)


def ma_measure(greens, c):
    """The Monge-Ampere measure of Green functions on a cycle: the
    zero-dimensional cycle of iterated first-Chern cycles, applying the
    last function first.  With no functions the cycle is returned as is,
    so on a zero-dimensional cycle this is the identity."""
    greens = list(greens)
    if len(greens) != max(c.dimension, 0):
        raise ValueError(
            "need exactly one green function per cycle dimension")
    out = c
    for g in reversed(greens):
        out = chern_cycle(g, out)
    return out


# --- star products and local heights ----------------------------------------


@dataclass(frozen=True)
class HeightAccumulator:
    """The current part of a star product in normal form: (green function,
    support cycle) terms, each standing for the function integrated
    against its support."""

    terms: tuple = ()


@dataclass(frozen=True)
class NeronPair:
    """A cycle together with the accumulated current terms of the star
    products applied to it so far."""

    cycle: TropicalCycle
    accumulator: HeightAccumulator = field(default_factory=HeightAccumulator)


def star_product(g, pair):
    """One star-product step: the cycle is intersected with the divisor
    at the boundary, the function is recorded against the incoming cycle,
    and every previously recorded support is refined by the first-Chern
    cycle of the incoming function.  The divisor must meet the cycle and
    every recorded support properly."""
    if not properly_intersects([g.divisor], pair.cycle):
        raise ImproperIntersection(
            "the divisor meets the cycle in excess dimension")
    for _, z in pair.accumulator.terms:
        if not properly_intersects([g.divisor], z):
            raise ImproperIntersection(
                "the divisor meets a recorded support in excess dimension")
    new_terms = [(g, pair.cycle)]
    for gj, zj in pair.accumulator.terms:
        new_terms.append((gj, chern_cycle(g, zj)))
    return NeronPair(toric_intersect(g.divisor, pair.cycle),
                     HeightAccumulator(tuple(new_terms)))


def _integrate(g, mu):
    """Integral of a Green function against a zero-dimensional cycle."""
    total = Fraction(0)
    for wc in mu.cells:
        total += wc.coefficient * green_value(g, wc.cell)
    return total


def pair_value(pair):
    """Evaluate a fully reduced pair: the remaining cycle must be empty
    and every support zero-dimensional; the value is the sum of the
    integrals of the recorded terms."""
    if pair.cycle.cells:
        raise ValueError("the pair still carries a positive-dimensional "
                         "cycle; apply more star products")
    total = Fraction(0)
    for g, z in pair.accumulator.terms:
        if z.cells and z.dimension != 0:
            raise ValueError("a recorded support is not zero-dimensional")
        total += _integrate(g, z)
    return total


def local_height(greens, c):
    """The local height of a cycle against one Green function per
    dimension plus one: integrate the first function against the
    Monge-Ampere measure of the others, then recurse on the boundary
    intersection with the first divisor.  The empty cycle has height 0."""
    greens = list(greens)
    if not c.cells:
        return Fraction(0)
    if len(greens) != c.dimension + 1:
        raise ValueError("need dimension-plus-one green functions")
    g0, rest = greens[0], greens[1:]
    mu = ma_measure(rest, c)
    total = _integrate(g0, mu)
    if rest:
        total += local_height(rest, toric_intersect(g0.divisor, c))
    return total


def expanded_height(greens, c):
    """The same height as one explicit sum: the j-th term integrates the
    j-th function against the measure of the later functions on the cycle
    already intersected with the earlier divisors."""
    greens = list(greens)
    if not c.cells:
        return Fraction(0)
    if len(greens) != c.dimension + 1:
        raise ValueError("need dimension-plus-one green functions")
    total = Fraction(0)
    cur = c
    for j, g in enumerate(greens):
        if not cur.cells:
            break
        mu = ma_measure(greens[j + 1:], cur)
        total += _integrate(g, mu)
        if j < len(greens) - 1:
            cur = toric_intersect(g.divisor, cur)
    return total


def height_breakdown(greens, c):
    """The expanded height together with its per-step report: a list with
    one (integral, measure mass) pair per Green function, in induction
    order.  The sum of the integrals is the local height."""
    greens = list(greens)
    if not c.cells:
        return Fraction(0), []
    if len(greens) != c.dimension + 1:
        raise ValueError("need dimension-plus-one green functions")
    steps = []
    total = Fraction(0)
    cur = c
    for j, g in enumerate(greens):
        if not cur.cells:
            steps.append((Fraction(0), Fraction(0)))
            continue
        mu = ma_measure(greens[j + 1:], cur)
        val = _integrate(g, mu)
        steps.append((val, Fraction(degree(mu))))
        total += val
        if j < len(greens) - 1:
            cur = toric_intersect(g.divisor, cur)
    return total, steps


def height_via_star(greens, c):
    """The same height through the star-product bookkeeping: fold the
    Green functions into a pair in the given order and evaluate.  Star
    products enforce proper position at every step, so this route is
    stricter than the induction."""
    pair = NeronPair(c)
    for g in greens:
        pair = star_product(g, pair)
    return pair_value(pair)


def check_reciprocity(greens, c):
    """Is the local height invariant under every ordering of the Green
    functions?"""
    values = {local_height(list(p), c) for p in permutations(greens)}
    return len(values) == 1


def direct_image_pair(f, pair):
    """Push a pair along an equivariant map: the cycle and every recorded
    support are pushed forward.  The recorded functions are kept as they
    are; this is the bookkeeping move matching functions pulled back
    along the same map."""
    terms = tuple((g, push_forward(f, z)) for g, z in pair.accumulator.terms)
    return NeronPair(push_forward(f, pair.cycle), HeightAccumulator(terms))


def pull_back_green(f, g):
    """The composition of a Green function with a translation-free
    equivariant map: linearity domains pull back to their preimages and
    slopes compose with the linear part."""
    if f.translation_sed != 0 or any(x != 0 for x in f.translation):
        raise ValueError("green functions pull back along maps without "
                         "boundary translation")
    data = []
    for p in g.phi.pieces:
        ineqs = [(tuple(int(vec_dot(vec(a), vec(row))) for row in f.linear),
                  b) for a, b in p.cell.ineqs]
        eqs = [(tuple(int(vec_dot(vec(a), vec(row))) for row in f.linear), b)
               for a, b in p.cell.eqs]
        cell = poly.from_hrep(ineqs, eqs, f.source_fan.rank)
        slope = tuple(int(vec_dot(vec(p.slope), vec(row)))
                      for row in f.linear)
        data.append((cell, slope, p.constant))
    phi = make_pa(f.source_fan, data)
    return green_from_pa(phi)

"""Piecewise affine functions, conewise linear functions, corner loci,
and toric boundary intersections."""

from fractions import Fraction

import pytest

from tropkern import polyhedron as poly
from tropkern import tropictoric as tt
from tropkern.cycle import (add_cycles, check_balanced, cycles_equal, degree,
                            make_cycle, scale_cycle, zero_cycle)
from tropkern.divisor import (AffinePiece, ToricCartierDivisor, corner_locus,
                              check_commutativity, domain_complex, make_pa,
                              make_pl, max_of_affine, pa_value, pl_slope,
                              pl_value, properly_intersects,
                              recession_function, refine_pa,
                              stratum_in_support, toric_intersect,
                              unbounded_locus)
from tropkern.errors import (CycleInUnboundedLocus, NotComplete,
                             NotConstantTowardsBoundary, NotSedentarityZero,
                             UnboundedDifference)
from tropkern.tropictoric import Fan, TropicalPolyhedron

from common import fan_line, fan_plane, fan_square, ray_cone_id


def space_cycle(fan, weight=1):
    cell = TropicalPolyhedron(fan, 0, poly.from_hrep([], [], fan.rank))
    return make_cycle(fan, [(cell, weight)])


def boundary_divisor(fan, ray_dir, coeff=1):
    """The divisor with multiplicity coeff on the stratum of the given ray
    and zero on every other ray."""
    vals = {}
    for s in fan.maximal_ids():
        gens = fan.cones[s].rays
        found = None
        rng = range(-3 * abs(coeff), 3 * abs(coeff) + 1)
        for a in rng:
            for b in (rng if fan.rank == 2 else [0]):
                k = (a, b)[:fan.rank]
                if all(sum(x * y for x, y in zip(k, g)) ==
                       (-coeff if tuple(g) == tuple(ray_dir) else 0)
                       for g in gens):
                    found = k
        assert found is not None
        vals[s] = found
    return ToricCartierDivisor(make_pl(fan, vals))


def line_cycle(fan):
    """The standard tropical line: rays e1, e2, -e1-e2 with weight one."""
    zero = (0, 0)
    cells = [poly.from_vrep([zero], [r], [], 2)
             for r in [(1, 0), (0, 1), (-1, -1)]]
    return make_cycle(fan, [(TropicalPolyhedron(fan, 0, c), 1)
                            for c in cells])


# --- piecewise affine functions ---------------------------------------------


def test_max_of_affine_drops_dominated_terms():
    fan = fan_line()
    phi = max_of_affine(fan, [((0,), 0), ((1,), 0), ((1,), -1)])
    assert len(phi.pieces) == 2
    assert pa_value(phi, (5,)) == 5
    assert pa_value(phi, (-3,)) == 0
    assert pa_value(phi, (0,)) == 0


def test_pa_value_on_the_plane():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    assert pa_value(phi, (5, 3)) == 5
    assert pa_value(phi, (-1, -2)) == 0
    assert pa_value(phi, (3, 7)) == 7
    assert pa_value(phi, (Fraction(1, 2), Fraction(1, 3))) == Fraction(1, 2)


def test_make_pa_rejects_noncovering_domains():
    fan = fan_line()
    half = poly.from_hrep([((1,), 0)], [], 1)
    with pytest.raises(NotComplete):
        make_pa(fan, [(half, (1,), 0)])


def test_make_pa_rejects_discontinuous_data():
    fan = fan_line()
    left = poly.from_hrep([((-1,), 0)], [], 1)
    right = poly.from_hrep([((1,), 0)], [], 1)
    with pytest.raises(ValueError):
        make_pa(fan, [(left, (0,), 0), (right, (0,), 1)])
    # a jump of the slope along a shared face of positive dimension
    fan2 = fan_square()
    upper = poly.from_hrep([((0, 1), 0)], [], 2)
    lower = poly.from_hrep([((0, -1), 0)], [], 2)
    with pytest.raises(ValueError):
        make_pa(fan2, [(upper, (1, 0), 0), (lower, (0, 0), 0)])
    # slope break at the shared point is continuous, hence fine
    phi = make_pa(fan, [(left, (-1,), 0), (right, (0,), 0)])
    assert pa_value(phi, (-2,)) == 2


def test_make_pa_rejects_boundary_cells():
    fan = fan_line()
    ray_id = ray_cone_id(fan, (1,))
    cell = TropicalPolyhedron(fan, ray_id, poly.from_hrep([], [], 0))
    with pytest.raises(NotSedentarityZero):
        make_pa(fan, [(cell, (), 0)])


def test_domain_complex_of_a_max():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    cx = domain_complex(phi)
    assert len(cx.cells_of_dim(2)) == 3
    assert len(cx.cells_of_dim(1)) == 3
    assert len(cx.cells_of_dim(0)) == 1


def test_refine_pa_splits_halfplane_domains_along_the_fan():
    fan = fan_square()
    upper = poly.from_hrep([((0, 1), 0)], [], 2)
    lower = poly.from_hrep([((0, -1), 0)], [], 2)
    phi = make_pa(fan, [(upper, (0, 1), 0), (lower, (0, 0), 0)])
    fine = refine_pa(phi)
    assert len(fine.pieces) >= 4
    for p in fine.pieces:
        rec = poly.recession_cone(p.cell)
        assert rec in fan.cones
    for x in [(3, 2), (-1, 5), (-2, -7), (4, -1), (0, 0)]:
        assert pa_value(fine, x) == pa_value(phi, x)


def test_refine_pa_rejects_domains_not_constant_towards_boundary():
    fan = fan_square()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 1), 0)])
    with pytest.raises(NotConstantTowardsBoundary):
        refine_pa(phi)


# --- conewise linear functions ----------------------------------------------


def test_make_pl_from_dict_and_sequence():
    fan = fan_line()
    ids = fan.maximal_ids()
    vals = {s: ((0,) if fan.cones[s].contains((1,)) else (1,)) for s in ids}
    psi = make_pl(fan, vals)
    assert pl_value(psi, (4,)) == 0
    assert pl_value(psi, (-2,)) == -2
    same = make_pl(fan, [vals[s] for s in ids])
    assert same.values == psi.values


def test_make_pl_rejects_disagreeing_covectors():
    fan = fan_plane()
    with pytest.raises(ValueError):
        make_pl(fan, [(1, 0), (0, 0), (0, 0)])
    with pytest.raises(ValueError):
        make_pl(fan, [(0, 0), (0, 0)])


def test_pl_value_outside_support():
    quadrant = Fan.from_ray_lists(2, [[(1, 0), (0, 1)]])
    psi = make_pl(quadrant, [(1, 2)])
    assert pl_value(psi, (3, 4)) == 11
    with pytest.raises(ValueError):
        pl_value(psi, (-1, 0))


def test_pl_slope_on_lower_cones():
    fan = fan_plane()
    vals = {}
    for s in fan.maximal_ids():
        gens = fan.cones[s].rays
        vals[s] = (0, 0) if all(g in [(1, 0), (0, 1)] for g in gens) else \
            next(k for k in [(1, 0), (0, 1), (1, 1)]
                 if all(sum(a * b for a, b in zip(k, g)) <= 0 for g in gens))
    # simpler: use the recession function of a concrete green function
    g = max_of_affine(fan, [((0, 0), 0), ((-1, 0), 0), ((0, -1), 0)])
    psi = recession_function(g)
    rid = ray_cone_id(fan, (0, 1))
    k = pl_slope(psi, rid)
    assert sum(a * b for a, b in zip(k, (0, 1))) == pl_value(psi, (0, 1))


def test_recession_function_of_a_cone_adapted_max():
    fan = fan_plane()
    g = max_of_affine(fan, [((0, 0), 0), ((-1, 0), 0), ((0, -1), 0)])
    psi = recession_function(g)
    for v in [(1, 0), (0, 1), (-1, -1), (-3, -5), (2, 7), (4, -9)]:
        assert pl_value(psi, v) == max(0, -v[0], -v[1])


def test_recession_function_ignores_bounded_shifts():
    fan = fan_plane()
    g = max_of_affine(fan, [((0, 0), 7), ((-1, 0), Fraction(-3, 2)),
                            ((0, -1), 11)])
    psi = recession_function(g)
    for v in [(1, 1), (-2, -2), (-5, 1), (1, -4)]:
        assert pl_value(psi, v) == max(0, -v[0], -v[1])


def test_recession_function_of_an_affine_function():
    fan = fan_plane()
    phi = make_pa(fan, [(poly.from_hrep([], [], 2), (2, -3), Fraction(5))])
    psi = recession_function(phi)
    assert psi.values == ((2, -3),) * 3


def test_recession_function_needs_adapted_domains():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(NotConstantTowardsBoundary):
        recession_function(phi)


def test_recession_function_escaping_the_support():
    trivial = Fan.from_ray_lists(1, [[]])
    phi = max_of_affine(trivial, [((1,), 0), ((-1,), 0)])
    with pytest.raises(UnboundedDifference):
        recession_function(phi)


def test_recession_function_on_the_adapted_refinement():
    # max(0, x+y) is not trackable on the quadrant fan, but it is on the
    # fan refined along the break line x + y = 0.
    refined = Fan.from_ray_lists(2, [
        [(1, 0), (0, 1)], [(1, 0), (1, -1)], [(0, 1), (-1, 1)],
        [(-1, 0), (-1, 1)], [(-1, 0), (0, -1)], [(0, -1), (1, -1)]])
    phi = max_of_affine(refined, [((0, 0), 0), ((1, 1), 0)])
    psi = recession_function(phi)
    for v in [(1, 0), (0, 1), (1, -1), (-1, 1), (-1, 0), (0, -1), (2, 3),
              (-4, -1), (3, -2)]:
        assert pl_value(psi, v) == max(0, v[0] + v[1])


def test_unbounded_locus_and_stratum_support():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    rz = ray_cone_id(fan, (-1, -1))
    rx = ray_cone_id(fan, (1, 0))
    assert unbounded_locus(dz) == (rz,)
    assert stratum_in_support(dz, rz)
    assert not stratum_in_support(dz, rx)
    for sigma in fan.maximal_ids():
        if rz in fan.face_ids(sigma):
            assert stratum_in_support(dz, sigma)


# --- corner locus -----------------------------------------------------------


def test_corner_locus_of_the_tropical_polynomial_max():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    cl = corner_locus(phi, space_cycle(fan))
    finite = [wc for wc in cl.cells if wc.cell.sedentarity == 0]
    bound = [wc for wc in cl.cells if wc.cell.sedentarity != 0]
    assert sorted(wc.cell.finite_part.rays[0] for wc in finite) == \
        [(-1, 0), (0, -1), (1, 1)]
    assert all(wc.coefficient == -1 for wc in finite)
    assert all(wc.cell.finite_part.vertices == ((Fraction(0), Fraction(0)),)
               for wc in finite)
    # the function grows linearly towards the e1 and e2 strata and is
    # eventually constant towards the diagonal stratum
    rx, ry = ray_cone_id(fan, (1, 0)), ray_cone_id(fan, (0, 1))
    assert sorted({wc.cell.sedentarity for wc in bound}) == sorted([rx, ry])
    assert all(wc.coefficient == 1 for wc in bound)
    ok, _ = check_balanced(cl)
    assert ok


def test_corner_locus_of_the_dual_max_on_a_line_cycle():
    fan = fan_plane()
    g = max_of_affine(fan, [((0, 0), 0), ((-1, 0), 0), ((0, -1), 0)])
    cl = corner_locus(g, line_cycle(fan))
    rz = ray_cone_id(fan, (-1, -1))
    assert len(cl.cells) == 2
    by_sed = {wc.cell.sedentarity: wc for wc in cl.cells}
    assert by_sed[0].coefficient == -1
    assert by_sed[0].cell.finite_part.vertices == \
        ((Fraction(0), Fraction(0)),)
    assert by_sed[rz].coefficient == 1
    assert degree(cl) == 0
    ok, _ = check_balanced(cl)
    assert ok


def test_corner_locus_is_linear_in_the_cycle():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    c = space_cycle(fan)
    doubled = corner_locus(phi, scale_cycle(c, 2))
    assert cycles_equal(doubled, scale_cycle(corner_locus(phi, c), 2))
    half = corner_locus(phi, scale_cycle(c, Fraction(1, 2)))
    assert cycles_equal(half, scale_cycle(corner_locus(phi, c), Fraction(1, 2)))


def test_corner_locus_independent_of_the_decomposition():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    # same function, redundant extra term
    psi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0), ((0, 1), 0),
                              ((1, 0), -5)])
    c = space_cycle(fan)
    assert cycles_equal(corner_locus(phi, c), corner_locus(psi, c))


def test_corner_locus_of_an_affine_function_is_purely_boundary():
    fan = fan_plane()
    phi = make_pa(fan, [(poly.from_hrep([], [], 2), (1, 2), Fraction(3))])
    cl = corner_locus(phi, space_cycle(fan))
    assert all(wc.cell.sedentarity != 0 for wc in cl.cells)
    ok, _ = check_balanced(cl)
    assert ok


def test_corner_locus_rejects_boundary_cycles():
    fan = fan_plane()
    phi = max_of_affine(fan, [((0, 0), 0), ((1, 0), 0)])
    rx = ray_cone_id(fan, (1, 0))
    cell = TropicalPolyhedron(fan, rx, poly.from_hrep([], [], 1))
    c = make_cycle(fan, [(cell, 1)], sedentarity=rx)
    with pytest.raises(NotSedentarityZero):
        corner_locus(phi, c)


def test_corner_locus_requires_matching_fans():
    phi = max_of_affine(fan_plane(), [((0, 0), 0), ((1, 0), 0)])
    with pytest.raises(ValueError):
        corner_locus(phi, space_cycle(fan_square()))


def test_corner_weight_two_from_a_doubled_slope():
    # max(0, 2x) on the line breaks with multiplicity two at the origin
    fan = fan_line()
    phi = max_of_affine(fan, [((0,), 0), ((2,), 0)])
    cl = corner_locus(phi, space_cycle(fan))
    finite = [wc for wc in cl.cells if wc.cell.sedentarity == 0]
    assert len(finite) == 1
    assert finite[0].coefficient == -2
    assert finite[0].cell.finite_part.vertices == ((Fraction(0),),)
    bound = [wc for wc in cl.cells if wc.cell.sedentarity != 0]
    assert [(wc.cell.sedentarity, wc.coefficient) for wc in bound] == \
        [(ray_cone_id(fan, (1,)), 2)]


# --- toric boundary intersection --------------------------------------------


def test_toric_intersection_on_the_line():
    fan = fan_line()
    d = boundary_divisor(fan, (-1,))
    res = toric_intersect(d, space_cycle(fan))
    rminus = ray_cone_id(fan, (-1,))
    assert len(res.cells) == 1
    assert res.cells[0].cell.sedentarity == rminus
    assert res.cells[0].coefficient == 1
    assert degree(res) == 1


def test_toric_intersection_weight_scales_with_multiplicity():
    fan = fan_line()
    d = boundary_divisor(fan, (-1,), coeff=3)
    res = toric_intersect(d, space_cycle(fan, weight=2))
    assert degree(res) == 6


def test_toric_intersection_of_a_product_divisor():
    fan = fan_square()
    d = boundary_divisor(fan, (-1, 0))
    res = toric_intersect(d, space_cycle(fan))
    rid = ray_cone_id(fan, (-1, 0))
    assert {wc.cell.sedentarity for wc in res.cells} == {rid}
    assert all(wc.coefficient == 1 for wc in res.cells)
    ok, _ = check_balanced(res)
    assert ok
    # a second, distinct boundary divisor cuts the boundary line in the
    # fixed point of the common quadrant
    dy = boundary_divisor(fan, (0, -1))
    pt = toric_intersect(dy, res)
    assert degree(pt) == 1
    (wc,) = pt.cells
    assert set(fan.cones[wc.cell.sedentarity].rays) == {(-1, 0), (0, -1)}


def test_toric_intersection_misses_a_transverse_stratum():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    # the boundary line at the e1 stratum meets the diagonal divisor in
    # the deep point of the cone spanned by e1 and the diagonal ray
    dx = boundary_divisor(fan, (1, 0))
    lx = toric_intersect(dx, space_cycle(fan))
    pt = toric_intersect(dz, lx)
    assert degree(pt) == 1
    (wc,) = pt.cells
    assert set(fan.cones[wc.cell.sedentarity].rays) == {(1, 0), (-1, -1)}


def test_toric_intersection_rejects_cycles_inside_the_support():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    lz = toric_intersect(dz, space_cycle(fan))
    with pytest.raises(CycleInUnboundedLocus):
        toric_intersect(dz, lz)


def test_toric_intersection_needs_a_complete_fan():
    quadrant = Fan.from_ray_lists(2, [[(1, 0), (0, 1)]])
    psi = make_pl(quadrant, [(0, 0)])
    cell = TropicalPolyhedron(quadrant, 0, poly.from_hrep([], [], 2))
    c = make_cycle(quadrant, [(cell, 1)])
    with pytest.raises(NotComplete):
        toric_intersect(ToricCartierDivisor(psi), c)


def test_toric_intersection_is_additive_in_the_cycle():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    c = space_cycle(fan)
    both = toric_intersect(dz, add_cycles(c, scale_cycle(c, 2)))
    assert cycles_equal(both, scale_cycle(toric_intersect(dz, c), 3))


def test_toric_minus_corner_vanishes_for_affine_functions():
    fan = fan_plane()
    for slope, const in [((2, -3), Fraction(5)), ((0, 0), 0), ((1, 1), -2)]:
        phi = make_pa(fan, [(poly.from_hrep([], [], 2), slope,
                             Fraction(const))])
        psi = recession_function(phi)
        d = ToricCartierDivisor(make_pl(
            fan, [tuple(-x for x in k) for k in psi.values]))
        t = toric_intersect(d, space_cycle(fan))
        co = corner_locus(phi, space_cycle(fan))
        assert cycles_equal(add_cycles(t, scale_cycle(co, -1)),
                            zero_cycle(fan, 1))


def test_commutativity_of_boundary_divisors():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    dx = boundary_divisor(fan, (1, 0))
    dy = boundary_divisor(fan, (0, 1))
    c = space_cycle(fan)
    assert check_commutativity(dz, dx, c)
    assert check_commutativity(dx, dy, c)
    assert check_commutativity(dy, dz, c)
    # a divisor cannot be intersected with its own boundary output, whose
    # stratum lies inside the divisor's support
    with pytest.raises(CycleInUnboundedLocus):
        check_commutativity(dz, dz, c)


def test_proper_intersection_predicate():
    fan = fan_plane()
    dz = boundary_divisor(fan, (-1, -1))
    dx = boundary_divisor(fan, (1, 0))
    c = space_cycle(fan)
    lz = toric_intersect(dz, c)
    lx = toric_intersect(dx, c)
    assert properly_intersects([dz], c)
    assert properly_intersects([dz, dx], c)
    assert not properly_intersects([dz, dz], c)
    assert properly_intersects([dz], lx)
    assert not properly_intersects([dz], lz)
    assert properly_intersects([], c)

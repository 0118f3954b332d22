"""Polyhedron engine: dual-description round trips, faces, recession cones,
relative-interior queries.  Frozen examples plus randomized cross-checks
between the LP path and a purely combinatorial oracle."""

import itertools
import os
import random
from fractions import Fraction

import pytest

from tropkern import polyhedron as P
from tropkern.errors import EmptyPolyhedron, HasLineality
from tropkern.exactlin import vec, vec_dot

SEED = int(os.environ.get("TROPKERN_SEED", "0"))


def square():
    return P.from_hrep([((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)], [], 2)


def test_dd_quadrant():
    verts, rays, lin = P.dd_convert([((1, 0), 0), ((0, 1), 0)], [], 2)
    assert verts == ((Fraction(0), Fraction(0)),)
    assert sorted(rays) == [(0, 1), (1, 0)]
    assert lin == ()


def test_dd_segment_with_equality():
    p = P.from_vrep([(0, 0), (1, 2)], [], [], 2)
    assert len(p.ineqs) == 2 and len(p.eqs) == 1
    # incidence oracle: every vertex satisfies every constraint, each
    # inequality is tight at exactly one vertex (facets of a segment)
    for a, b in p.eqs:
        for v in p.vertices:
            assert vec_dot(vec(a), vec(v)) == b
    for a, b in p.ineqs:
        tight = [v for v in p.vertices if vec_dot(vec(a), vec(v)) == b]
        assert len(tight) == 1
        assert all(vec_dot(vec(a), vec(v)) >= b for v in p.vertices)
    assert p.contains((Fraction(1, 2), 1))
    assert not p.contains((Fraction(1, 2), Fraction(3, 2)))


def test_dd_infeasible():
    p = P.from_hrep([((1,), 1), ((-1,), 0)], [], 1)
    assert p.is_empty and p.dim == -1


def test_round_trip_random():
    rng = random.Random(SEED + 20)
    for _ in range(40):
        n = rng.randint(1, 5)
        nv = rng.randint(1, 4)
        verts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                       for _ in range(n)) for _ in range(nv)]
        rays = [tuple(rng.randint(-3, 3) for _ in range(n))
                for _ in range(rng.randint(0, 2))]
        lin = [tuple(rng.randint(-2, 2) for _ in range(n))
               for _ in range(rng.randint(0, 1))]
        p = P.from_vrep(verts, rays, lin, n)
        q = P.from_hrep(p.ineqs, p.eqs, n)
        assert p == q
        # mutual containment with the generating data
        for v in verts:
            assert p.contains(v)
        assert P.contains_polyhedron(p, P.from_vrep(verts, rays, lin, n))


def test_recession_examples():
    half_diag = P.from_vrep([(0, 0)], [(1, 1)], [], 2)
    assert P.recession_cone(half_diag).rays == ((1, 1),)
    tri = P.from_vrep([(0, 0), (1, 0), (0, 1)], [], [], 2)
    rc = P.recession_cone(tri)
    assert rc.rays == () and rc.vertices == ((Fraction(0), Fraction(0)),)
    oct3 = P.from_hrep([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)], [], 3)
    assert P.recession_cone(oct3) == oct3
    with pytest.raises(EmptyPolyhedron):
        P.recession_cone(P.from_hrep([((1,), 1), ((-1,), 0)], [], 1))


def test_recession_translation_invariant():
    rng = random.Random(SEED + 21)
    for _ in range(20):
        n = rng.randint(1, 3)
        p = P.from_vrep([tuple(rng.randint(-3, 3) for _ in range(n))
                         for _ in range(rng.randint(1, 3))],
                        [tuple(rng.randint(-2, 2) for _ in range(n))
                         for _ in range(rng.randint(0, 2))], [], n)
        v = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n))
        assert P.recession_cone(P.translate(p, v)) == P.recession_cone(p)


def faces_oracle(p):
    """All nonempty faces as intersections of facet-hyperplane subsets."""
    out = {p}
    m = len(p.ineqs)
    for k in range(1, m + 1):
        for subset in itertools.combinations(range(m), k):
            extra = [(p.ineqs[i][0], p.ineqs[i][1]) for i in subset]
            f = P.from_hrep(list(p.ineqs), list(p.eqs) + extra, p.ambient_dim)
            if not f.is_empty:
                out.add(f)
    return out


def test_faces_square():
    fs = P.faces(square())
    dims = sorted(f.dim for f in fs)
    assert dims == [0, 0, 0, 0, 1, 1, 1, 1, 2]
    assert set(fs) == faces_oracle(square())


def test_faces_ray():
    ray = P.from_vrep([(0, 0)], [(2, 1)], [], 2)
    fs = P.faces(ray)
    assert sorted(f.dim for f in fs) == [0, 1]
    assert P.point((0, 0)) in fs


def test_faces_triangle_oracle():
    tri = P.from_vrep([(0, 0), (1, 0), (0, 1)], [], [], 2)
    fs = P.faces(tri)
    assert sorted(f.dim for f in fs) == [0, 0, 0, 1, 1, 1, 2]
    assert set(fs) == faces_oracle(tri)


def test_faces_closed_under_intersection():
    rng = random.Random(SEED + 22)
    for _ in range(15):
        n = rng.randint(1, 3)
        p = P.from_vrep([tuple(rng.randint(-2, 2) for _ in range(n))
                         for _ in range(rng.randint(1, 4))],
                        [tuple(rng.randint(-1, 1) for _ in range(n))
                         for _ in range(rng.randint(0, 1))], [], n)
        fs = P.faces(p)
        fset = set(fs)
        for a, b in itertools.combinations(fs, 2):
            meet = P.intersect(a, b)
            if not meet.is_empty:
                assert meet in fset
        for f in fs:
            if f != p:
                assert f.dim < p.dim


def relint_meets_oracle(a, b):
    """relint(a) meets b iff a∩b is nonempty and not inside any facet of a."""
    meet = P.intersect(a, b)
    if meet.is_empty:
        return False
    for a_row, b_row in a.ineqs:
        facet = P.from_hrep(list(a.ineqs), list(a.eqs) + [(a_row, b_row)],
                            a.ambient_dim)
        if P.contains_polyhedron(facet, meet):
            return False
    return True


def test_relint_examples():
    quad = P.from_hrep([((1, 0), 0), ((0, 1), 0)], [], 2)
    diag = P.from_vrep([(0, 0)], [(1, 1)], [], 2)
    assert P.relint_meets(diag, quad)
    ex = P.from_vrep([(0, 0)], [(1, 0)], [], 2)
    ey = P.from_vrep([(0, 0)], [(0, 1)], [], 2)
    assert not P.relint_meets(ex, ey)
    seg = P.from_vrep([(0, 0), (2, 2)], [], [], 2)
    assert P.relint_meets(seg, P.point((1, 1)))
    assert not P.relint_meets(seg, P.point((2, 2)))


def test_relint_self():
    assert P.relint_meets(square(), square())
    em = P.from_hrep([((1,), 1), ((-1,), 0)], [], 1)
    assert not P.relint_meets(em, em)


def test_relint_random_vs_oracle():
    rng = random.Random(SEED + 23)
    agree = 0
    for _ in range(60):
        n = rng.randint(1, 3)

        def rand_poly():
            return P.from_vrep(
                [tuple(rng.randint(-2, 2) for _ in range(n))
                 for _ in range(rng.randint(1, 3))],
                [tuple(rng.randint(-1, 1) for _ in range(n))
                 for _ in range(rng.randint(0, 1))], [], n)

        a, b = rand_poly(), rand_poly()
        got = P.relint_meets(a, b)
        assert got == relint_meets_oracle(a, b)
        agree += got
    assert 0 < agree < 60  # both outcomes exercised


def test_is_simplicial():
    tri = P.from_vrep([(0, 0), (1, 0), (0, 1)], [], [], 2)
    assert P.is_simplicial(tri)
    assert not P.is_simplicial(square())
    wedge = P.from_vrep([(0, 0, 0)], [(1, 0, 0), (0, 1, 0)], [], 3)
    assert P.is_simplicial(wedge)
    strip = P.from_vrep([(0, 0)], [], [(1, 0)], 2)
    with pytest.raises(HasLineality):
        P.is_simplicial(strip)


def support_value(p, direction):
    """sup <direction, x> over p, or None if unbounded in that direction."""
    d = vec(direction)
    for r in p.rays:
        if vec_dot(d, vec(r)) > 0:
            return None
    for l in p.lineality:
        if vec_dot(d, vec(l)) != 0:
            return None
    return max(vec_dot(d, vec(v)) for v in p.vertices)


def test_minkowski_sum():
    sq = square()
    seg = P.from_vrep([(0, 0), (1, 2)], [], [], 2)
    s = P.minkowski_sum(sq, seg)
    rng = random.Random(SEED + 24)
    for _ in range(30):
        d = (rng.randint(-4, 4), rng.randint(-4, 4))
        hs, ha, hb = support_value(s, d), support_value(sq, d), support_value(seg, d)
        assert hs == (None if ha is None or hb is None else ha + hb)
    assert P.minkowski_sum(sq, P.point((0, 0))) == sq
    half = P.from_vrep([(0, 0)], [(0, 1)], [(1, 0)], 2)
    line = P.from_vrep([(0, 0)], [], [(1, 0)], 2)
    assert P.minkowski_sum(half, line) == half


def test_faces_on_empty_raises():
    em = P.from_hrep([((1,), 1), ((-1,), 0)], [], 1)
    with pytest.raises(EmptyPolyhedron):
        P.faces(em)


def test_interior_point():
    rng = random.Random(SEED + 25)
    for _ in range(25):
        n = rng.randint(1, 3)
        p = P.from_vrep([tuple(rng.randint(-3, 3) for _ in range(n))
                         for _ in range(rng.randint(1, 4))],
                        [tuple(rng.randint(-2, 2) for _ in range(n))
                         for _ in range(rng.randint(0, 2))], [], n)
        x = p.interior_point()
        assert P.relint_meets(p, P.point(x))

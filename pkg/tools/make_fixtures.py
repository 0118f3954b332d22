"""Regenerate the bundled fixture documents under src/tropkern/fixtures.

Every fixture is produced through the library and the canonical writer,
so regeneration is byte-identical; expected output documents are the
actual operation results, asserted here against their independently
verified values before being written.  The manifest lists one entry per
command-line example with its expected exit code and checks; the test
suite replays it.
"""

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from tropkern import complexes as cxm          # noqa: E402
from tropkern import cycle as cym              # noqa: E402
from tropkern import divisor as dvm            # noqa: E402
from tropkern import height as ht              # noqa: E402
from tropkern import io, plot                  # noqa: E402
from tropkern import polyhedron as poly        # noqa: E402
from tropkern import tropictoric as tt         # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "tropkern",
                   "fixtures")

MANIFEST = []


def write(name, doc):
    with open(os.path.join(OUT, name), "wb") as handle:
        handle.write(io.dumps(doc).encode("utf-8"))


def expect(description, command, **checks):
    MANIFEST.append({"description": description, "command": list(command),
                     "expect": checks})


def space_cycle(fan):
    cell = tt.TropicalPolyhedron(fan, 0, poly.from_hrep([], [], fan.rank))
    return cym.make_cycle(fan, [(cell, 1)])


def greens_doc(fan, term_lists):
    return {"format": io.FORMAT, "kind": "greens", "fan": io.fan_body(fan),
            "greens": [io.max_terms_body(terms) for terms in term_lists]}


def build_greens(fan, term_lists):
    return [ht.green_max(fan, terms) for terms in term_lists]


def main():
    os.makedirs(OUT, exist_ok=True)
    for old in os.listdir(OUT):
        if old.endswith(".json"):
            os.remove(os.path.join(OUT, old))

    # --- fans ---------------------------------------------------------------
    fan_line = tt.Fan.from_ray_lists(1, [[(1,)], [(-1,)]])
    fan_plane = tt.Fan.from_ray_lists(
        2, [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])
    fan_square = tt.Fan.from_ray_lists(
        2, [[(1, 0), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)],
            [(0, -1), (1, 0)]])
    fan_p3 = tt.Fan.from_ray_lists(
        3, [[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
            [(1, 0, 0), (0, 1, 0), (-1, -1, -1)],
            [(1, 0, 0), (0, 0, 1), (-1, -1, -1)],
            [(0, 1, 0), (0, 0, 1), (-1, -1, -1)]])
    fan_quadrant = tt.Fan.from_ray_lists(2, [[(1, 0), (0, 1)]])
    fan_wall = tt.Fan.from_ray_lists(3, [[(1, 1, 1), (1, 1, -1)]])
    for name, fan in (("fan_line", fan_line), ("fan_plane", fan_plane),
                      ("fan_square", fan_square), ("fan_p3", fan_p3),
                      ("fan_quadrant", fan_quadrant),
                      ("fan_wall", fan_wall)):
        write(name + ".json", io.document("fan", fan))

    # --- ambient space cycles ----------------------------------------------
    line = space_cycle(fan_line)
    plane = space_cycle(fan_plane)
    square = space_cycle(fan_square)
    p3 = space_cycle(fan_p3)
    write("cycle_line.json", io.document("cycle", line))
    write("cycle_plane.json", io.document("cycle", plane))
    write("cycle_square.json", io.document("cycle", square))
    write("cycle_p3.json", io.document("cycle", p3))

    # --- the weight-2 broken line (an unbalanced cycle on purpose) ----------
    pos = tt.TropicalPolyhedron(fan_line, 0,
                                poly.from_hrep([((1,), 0)], [], 1))
    neg = tt.TropicalPolyhedron(fan_line, 0,
                                poly.from_hrep([((-1,), 0)], [], 1))
    broken = cym.make_cycle(fan_line, [(pos, 2), (neg, 1)])
    write("cycle_broken_line.json", io.document("cycle", broken))
    expect("the weight-2 broken line fails the balancing test at the origin",
           ["check-balanced", "cycle_broken_line.json"],
           exit=0, fields={"balanced": False, "verdict": "UNBALANCED"},
           witness_cell_ids=[0, 1])

    # --- a smooth conic: corner locus of a generic-height dual polytope -----
    conic_terms = [((0, 0), 0), ((1, 0), 0), ((0, 1), 0),
                   ((2, 0), -1), ((1, 1), -1), ((0, 2), -1)]
    phi_conic = dvm.max_of_affine(fan_plane, conic_terms)
    conic = dvm.corner_locus(phi_conic, plane)
    assert cym.check_balanced(conic)[0]
    write("cycle_conic.json", io.document("cycle", conic))
    write("function_conic.json", io.document("function", phi_conic))
    expect("the tropical conic is balanced",
           ["check-balanced", "cycle_conic.json"],
           exit=0, fields={"balanced": True, "verdict": "BALANCED"})
    expect("rank-two objects render as SVG pictures",
           ["plot", "cycle_conic.json"], exit=0)

    # --- corner locus of max(0, x, y) on the plane --------------------------
    phi_xy = dvm.max_of_affine(fan_plane,
                               [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)])
    write("function_plane_max0xy.json", io.document("function", phi_xy))
    corner = dvm.corner_locus(phi_xy, plane)
    finite = [wc for wc in corner.cells if wc.cell.sedentarity == 0]
    assert len(finite) == 3 and all(wc.weight == -1 for wc in finite)
    assert cym.check_balanced(corner)[0]
    write("out_corner_max0xy.json", io.document("cycle", corner))
    expect("the corner locus of max(0,x,y): three finite rays against "
           "four boundary pieces",
           ["corner-locus", "function_plane_max0xy.json",
            "cycle_plane.json"],
           exit=0, output="out_corner_max0xy.json")

    # --- toric divisors -----------------------------------------------------
    def rv(fan, coeffs):
        vals = []
        for i in fan.ray_ids():
            gen = tuple(int(x) for x in fan.ray_generator(i))
            vals.append(Fraction(coeffs.get(gen, 0)))
        return dvm.divisor_from_ray_values(fan, vals)

    d_line = rv(fan_line, {(-1,): 1})
    d10 = rv(fan_square, {(-1, 0): 1})
    d01 = rv(fan_square, {(0, -1): 1})
    d_plane = rv(fan_plane, {(-1, -1): 1})
    write("divisor_line_o1.json", io.document("divisor", d_line))
    write("divisor_square_o10.json", io.document("divisor", d10))
    write("divisor_square_o01.json", io.document("divisor", d01))
    write("divisor_plane_o1.json", io.document("divisor", d_plane))

    hit = dvm.toric_intersect(d_line, line)
    assert cym.degree(hit) == 1
    write("out_intersect_line_o1.json", io.document("cycle", hit))
    expect("a degree-one divisor meets the line in one boundary point",
           ["intersect", "divisor_line_o1.json", "cycle_line.json"],
           exit=0, output="out_intersect_line_o1.json")

    wall10 = dvm.toric_intersect(d10, square)
    assert wall10.dimension == 1
    write("out_intersect_square_o10.json", io.document("cycle", wall10))
    expect("a bidegree-(1,0) divisor cuts the boundary line at x = infinity",
           ["intersect", "divisor_square_o10.json", "cycle_square.json"],
           exit=0, output="out_intersect_square_o10.json")
    corner_pt = dvm.toric_intersect(d01, wall10)
    assert cym.degree(corner_pt) == 1

    # --- Green function families and measures -------------------------------
    gl_o1 = [[((0,), 0), ((-1,), 0)]]
    write("greens_line_o1.json", greens_doc(fan_line, gl_o1))
    mu = ht.ma_measure(build_greens(fan_line, gl_o1), line)
    assert cym.degree(mu) == 1
    expect("the measure of the canonical degree-one function on the line "
           "has mass one",
           ["ma", "greens_line_o1.json", "cycle_line.json"],
           exit=0, fields={"total_mass": "1"})

    gz = [((0, 0), 0), ((-1, 0), 0), ((0, -1), 0)]
    g2z = [((0, 0), 0), ((-2, 0), 0), ((0, -2), 0)]
    write("greens_plane_o1_sq.json", greens_doc(fan_plane, [gz, gz]))
    write("greens_plane_o2_sq.json", greens_doc(fan_plane, [g2z, g2z]))
    assert cym.degree(ht.ma_measure(build_greens(fan_plane, [gz, gz]),
                                    plane)) == 1
    assert cym.degree(ht.ma_measure(build_greens(fan_plane, [g2z, g2z]),
                                    plane)) == 4
    expect("two degree-one functions on the plane give a unit mass",
           ["ma", "greens_plane_o1_sq.json", "cycle_plane.json"],
           exit=0, fields={"total_mass": "1"})
    expect("doubling the slopes multiplies the mass by four",
           ["ma", "greens_plane_o2_sq.json", "cycle_plane.json"],
           exit=0, fields={"total_mass": "4"})

    h11 = [((0, 0), 0), ((-1, 0), 0), ((0, -1), 0), ((-1, -1), 0)]
    write("greens_square_o11_sq.json", greens_doc(fan_square, [h11, h11]))
    mu2 = ht.ma_measure(build_greens(fan_square, [h11, h11]), square)
    assert cym.degree(mu2) == 2
    write("out_measure_square_o11.json", io.document("measure", mu2))
    expect("the bidegree-(1,1) square of the doubled space has mass two",
           ["ma", "greens_square_o11_sq.json", "cycle_square.json"],
           exit=0, fields={"total_mass": "2"},
           output="out_measure_square_o11.json")

    g3 = [((0, 0, 0), 0), ((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0)]
    write("greens_p3_o1_cube.json", greens_doc(fan_p3, [g3, g3, g3]))
    assert cym.degree(ht.ma_measure(build_greens(fan_p3, [g3, g3, g3]),
                                    p3)) == 1
    expect("three degree-one functions in rank three give a unit mass",
           ["ma", "greens_p3_o1_cube.json", "cycle_p3.json"],
           exit=0, fields={"total_mass": "1"})

    # --- local heights ------------------------------------------------------
    gx = [((1, 0), 0), ((0, 0), 0), ((1, -1), 0)]
    gy = [((0, 1), 0), ((0, 0), 0), ((-1, 1), 0)]
    gzp = [((0, 0), 2), ((-1, 0), 0), ((0, -1), -1)]
    write("greens_plane_triple.json", greens_doc(fan_plane, [gx, gy, gz]))
    write("greens_plane_triple_pert.json",
          greens_doc(fan_plane, [gx, gy, gzp]))
    write("greens_plane_triple_pert_perm.json",
          greens_doc(fan_plane, [gzp, gx, gy]))
    assert ht.local_height(build_greens(fan_plane, [gx, gy, gz]),
                           plane) == 0
    assert ht.local_height(build_greens(fan_plane, [gx, gy, gzp]),
                           plane) == 2
    assert ht.local_height(build_greens(fan_plane, [gzp, gx, gy]),
                           plane) == 2
    expect("the canonical coordinate triple has height zero",
           ["height", "greens_plane_triple.json", "cycle_plane.json"],
           exit=0, fields={"height": "0"})
    expect("a constant-perturbed triple has height two",
           ["height", "greens_plane_triple_pert.json", "cycle_plane.json"],
           exit=0, fields={"height": "2"})
    expect("permuting the functions leaves the height string unchanged",
           ["height", "greens_plane_triple_pert_perm.json",
            "cycle_plane.json"],
           exit=0, fields={"height": "2"})

    hx = [((1, 0), 0), ((0, 0), 0)]
    hy = [((0, 1), 0), ((0, 0), 0)]
    hmxp = [((-1, 0), 1), ((0, 0), 0)]
    write("greens_square_triple_pert.json",
          greens_doc(fan_square, [hx, hy, hmxp]))
    write("greens_square_triple_pert_perm.json",
          greens_doc(fan_square, [hmxp, hx, hy]))
    assert ht.local_height(build_greens(fan_square, [hx, hy, hmxp]),
                           square) == 1
    assert ht.local_height(build_greens(fan_square, [hmxp, hx, hy]),
                           square) == 1
    expect("a shifted coordinate triple on the doubled space has height one",
           ["height", "greens_square_triple_pert.json",
            "cycle_square.json"],
           exit=0, fields={"height": "1"})
    expect("the same height after permuting the shifted triple",
           ["height", "greens_square_triple_pert_perm.json",
            "cycle_square.json"],
           exit=0, fields={"height": "1"})

    write("greens_line_pair.json", greens_doc(fan_line, [gl_o1[0],
                                                         gl_o1[0]]))
    assert ht.local_height(build_greens(fan_line, [gl_o1[0], gl_o1[0]]),
                           line) == 0
    expect("the canonical pair on the line has height zero",
           ["height", "greens_line_pair.json", "cycle_line.json"],
           exit=0, fields={"height": "0"})

    # --- complexes for refinement -------------------------------------------
    sq = poly.from_vrep([(0, 0), (1, 0), (0, 1), (1, 1)], [], [], 2)
    cells = [tt.TropicalPolyhedron(fan_plane, 0, f) for f in poly.faces(sq)]
    cx_sq = cxm.PolyhedralComplex.from_cells(fan_plane, cells)
    write("complex_square_unit.json", io.document("complex", cx_sq))
    refined = cxm.simplicial_refine(cx_sq, fan_plane)
    assert refined.is_simplicial_complex()
    write("out_refine_square.json", io.document("complex", refined))
    expect("the unit square refines into triangles",
           ["refine-simplicial", "complex_square_unit.json"],
           exit=0, output="out_refine_square.json")

    pyramid = poly.minkowski_sum(
        poly.from_vrep([(0, 0), (1, 0), (0, 1)], [], [], 2),
        poly.from_vrep([(0, 0)], [(1, 0), (0, 1)], [], 2))
    cells = [tt.TropicalPolyhedron(fan_quadrant, 0, f)
             for f in poly.faces(pyramid)]
    cx_pyr = cxm.PolyhedralComplex.from_cells(fan_quadrant, cells)
    write("complex_pyramid.json", io.document("complex", cx_pyr))
    ref_pyr = cxm.simplicial_refine(cx_pyr, fan_quadrant)
    assert ref_pyr.is_simplicial_complex()
    write("out_refine_pyramid.json", io.document("complex", ref_pyr))
    expect("an unbounded base cell refines with recession cones kept in "
           "the fan",
           ["refine-simplicial", "complex_pyramid.json"],
           exit=0, output="out_refine_pyramid.json")

    # --- families for subdivision -------------------------------------------
    s1 = tt.TropicalPolyhedron(fan_plane, 0,
                               poly.from_vrep([(-1, 0), (1, 0)], [], [], 2))
    s2 = tt.TropicalPolyhedron(fan_plane, 0,
                               poly.from_vrep([(0, -1), (0, 1)], [], [], 2))
    write("family_crossing.json", io.family_document([s1, s2]))
    cx_cross = cxm.subdivide_for_family([s1, s2], fan_plane)
    write("out_subdivide_crossing.json", io.document("complex", cx_cross))
    expect("two crossing segments subdivide into halves meeting at the "
           "crossing",
           ["subdivide", "family_crossing.json"],
           exit=0, output="out_subdivide_crossing.json")

    tri_big = tt.TropicalPolyhedron(
        fan_plane, 0, poly.from_vrep([(0, 0), (4, 0), (0, 4)], [], [], 2))
    tri_in = tt.TropicalPolyhedron(
        fan_plane, 0, poly.from_vrep([(1, 1), (2, 1), (1, 2)], [], [], 2))
    write("family_triangles.json", io.family_document([tri_big, tri_in]))
    cx_tri = cxm.subdivide_for_family([tri_big, tri_in], fan_plane)
    assert cxm.is_union_of_cells(tri_in, cx_tri)
    write("out_subdivide_triangles.json", io.document("complex", cx_tri))
    expect("a nested triangle becomes a union of cells of the subdivision",
           ["subdivide", "family_triangles.json"],
           exit=0, output="out_subdivide_triangles.json")

    rx = next(i for i in fan_square.ray_ids()
              if tuple(int(x) for x in fan_square.ray_generator(i))
              == (1, 0))
    bpt = tt.TropicalPolyhedron(
        fan_square, rx, poly.from_hrep([], [((1,), Fraction(3))], 1))
    write("family_boundary_point.json", io.family_document([bpt]))
    cx_bpt = cxm.subdivide_for_family([bpt], fan_square)
    assert any(c.sedentarity == rx and c.finite_part.dim == 0
               and c.finite_part.contains((Fraction(3),))
               for c in cx_bpt.cells)
    write("out_subdivide_boundary_point.json",
          io.document("complex", cx_bpt))
    expect("a boundary point is thickened into a cell of its stratum",
           ["subdivide", "family_boundary_point.json"],
           exit=0, output="out_subdivide_boundary_point.json")

    # --- pathologies that must be refused -----------------------------------
    diag = tt.TropicalPolyhedron(
        fan_quadrant, 0, poly.from_vrep([(0, 0)], [(1, 1)], [], 2))
    write("family_diagonal_pathology.json", io.family_document([diag]))
    expect("the diagonal halfline in the quadrant is not constant towards "
           "the boundary",
           ["subdivide", "family_diagonal_pathology.json"],
           exit=3, error="NotConstantTowardsBoundary")

    octant = tt.TropicalPolyhedron(
        fan_wall, 0,
        poly.from_hrep([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)],
                       [], 3))
    write("family_octant_pathology.json", io.family_document([octant]))
    expect("the positive octant meets the wall cone's interior without "
           "containing it",
           ["subdivide", "family_octant_pathology.json"],
           exit=3, error="NotConstantTowardsBoundary")

    r12 = tt.TropicalPolyhedron(
        fan_quadrant, 0, poly.from_vrep([(0, 0)], [(1, 2)], [], 2))
    r21 = tt.TropicalPolyhedron(
        fan_quadrant, 0, poly.from_vrep([(0, 0)], [(2, 1)], [], 2))
    write("family_skew_rays_pathology.json", io.family_document([r12, r21]))
    expect("two skew rays into the same quadrant cannot be tracked",
           ["subdivide", "family_skew_rays_pathology.json"],
           exit=3, error="NotConstantTowardsBoundary")

    # --- manifest -----------------------------------------------------------
    manifest = {"format": io.FORMAT, "kind": "manifest",
                "entries": MANIFEST}
    with open(os.path.join(OUT, "manifest.json"), "wb") as handle:
        handle.write((json.dumps(manifest, sort_keys=True, indent=2,
                                 separators=(",", ": ")) + "\n")
                     .encode("utf-8"))
    print("wrote %d fixtures and %d manifest entries"
          % (len(os.listdir(OUT)), len(MANIFEST)))


if __name__ == "__main__":
    main()

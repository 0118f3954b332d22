"""Partial compactifications of Q^n along a fan, as stratified spaces.

The space attached to a fan S in N = Z^n is the disjoint union of the
quotient strata N(s) = N_Q / span(s) over the cones s of S.  A
"tropical polyhedron" here is the closure-with-sedentarity datum: an
ordinary polyhedron living in one stratum, together with the fan, from
which all boundary strata of its closure are computed.

Strata are identified with Q^(n - dim s) through an integral splitting
(exactlin.QuotientLattice); all projections between strata are integer
matrices acting on row vectors.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import polyhedron as poly
from .errors import (EmptyPolyhedron, IncompatibleMap, NotAFaceRelation,
                     NotConstantTowardsBoundary)
from .exactlin import Lattice, quotient_by_span, vec, vec_add
from .polyhedron import Polyhedron


def _origin(n):
    return poly.point(tuple([0] * n))


@dataclass(frozen=True)
class Fan:
    """A fan of pointed rational cones, closed under faces, containing the
    zero cone.  Cones are indexed by their position; index 0 is {0}."""

    rank: int
    cones: tuple

    @staticmethod
    def from_cones(rank, cones):
        """Build a fan from a list of cones (closing under faces) and check
        that all pairwise intersections are common faces."""
        seen = {}
        for c in cones:
            if c.is_empty or c.vertices != (tuple([Fraction(0)] * rank),):
                raise ValueError("fan cones must be pointed at the origin")
            if c.lineality:
                raise ValueError("fan cones must be strictly convex")
            for f in poly.faces(c):
                seen[f] = True
        seen[_origin(rank)] = True
        ordered = sorted(seen, key=lambda c: (c.dim, c.ineqs, c.eqs))
        fan = Fan(rank, tuple(ordered))
        fan._validate()
        return fan

    @staticmethod
    def from_ray_lists(rank, ray_lists):
        """Fan generated by cones given as lists of ray generators."""
        zero = tuple([0] * rank)
        return Fan.from_cones(rank, [poly.from_vrep([zero], rays, [], rank)
                                     for rays in ray_lists])

    def _validate(self):
        for i, a in enumerate(self.cones):
            for b in self.cones[:i]:
                meet = poly.intersect(a, b)
                if meet not in self.cones:
                    raise ValueError("cone intersection is not a common face")
                if not (self.is_face(meet, a) and self.is_face(meet, b)):
                    raise ValueError("cones meet outside a common face")

    @staticmethod
    def is_face(f, c):
        return f in poly.faces(c)

    def index_of(self, cone):
        try:
            return self.cones.index(cone)
        except ValueError:
            raise ValueError("not a cone of the fan")

    def face_ids(self, i):
        return [j for j, c in enumerate(self.cones)
                if c.dim <= self.cones[i].dim and Fan.is_face(c, self.cones[i])]

    def coface_ids(self, i):
        """The star: cones having cone i as a face (including i)."""
        return [j for j, c in enumerate(self.cones)
                if Fan.is_face(self.cones[i], c)]

    def maximal_ids(self):
        out = []
        for i in range(len(self.cones)):
            if all(i == j or not Fan.is_face(self.cones[i], self.cones[j])
                   for j in range(len(self.cones))):
                out.append(i)
        return out

    def ray_ids(self):
        return [i for i, c in enumerate(self.cones) if c.dim == 1]

    def ray_generator(self, i):
        c = self.cones[i]
        if c.dim != 1:
            raise ValueError("not a ray")
        return c.rays[0]

    def cone_containing(self, x):
        """The minimal cone containing the point x, or None."""
        best = None
        for i, c in enumerate(self.cones):
            if c.contains(x) and (best is None or c.dim < self.cones[best].dim):
                best = i
        return best

    def is_complete(self):
        n = self.rank
        space = poly.from_vrep([tuple([0] * n)], [],
                               [tuple(1 if i == j else 0 for j in range(n))
                                for i in range(n)], n)
        return covered_by_fan(space, self)

    def is_simplicial_fan(self):
        return all(len(c.rays) == c.dim for c in self.cones)


def covered_by_fan(p, fan):
    """Exact containment p subset-of |fan|: cut p by every supporting
    hyperplane of every cone, then test one relative-interior point of each
    full-dimensional piece for membership in some cone."""
    if p.is_empty:
        return True
    normals = set()
    for c in fan.cones:
        for a, _ in c.ineqs:
            normals.add(a)
        for a, _ in c.eqs:
            normals.add(a)
    pieces = [p]
    for a in normals:
        nxt = []
        for q in pieces:
            for sign in (1, -1):
                half = poly.from_hrep(list(q.ineqs) + [(tuple(sign * x for x in a), 0)],
                                      list(q.eqs), p.ambient_dim)
                if not half.is_empty and half.dim == p.dim:
                    nxt.append(half)
        pieces = list(dict.fromkeys(nxt))
    for q in pieces:
        x = q.interior_point()
        if fan.cone_containing(x) is None:
            return False
    return True


@lru_cache(maxsize=None)
def stratum_quotient(fan, cone_id):
    """QuotientLattice presenting N(s) for the cone with this id."""
    c = fan.cones[cone_id]
    gens = list(c.rays) + list(c.lineality)
    return quotient_by_span(Lattice.standard(fan.rank), gens)


@lru_cache(maxsize=None)
def stratum_map(fan, sigma_id, tau_id):
    """Integer matrix of the projection N(sigma) -> N(tau) for sigma a face
    of tau, acting as x . M on row vectors."""
    if sigma_id not in fan.face_ids(tau_id):
        raise NotAFaceRelation("source cone is not a face of the target cone")
    qs = stratum_quotient(fan, sigma_id)
    qt = stratum_quotient(fan, tau_id)
    rows = []
    for i in range(qs.rank):
        basis = tuple(1 if k == i else 0 for k in range(qs.rank))
        rows.append(tuple(int(x) for x in qt.project(qs.lift(basis))))
    return tuple(rows)


def _apply_matrix(x, m, target_dim):
    x = vec(x)
    return tuple(sum((x[i] * m[i][j] for i in range(len(x))), Fraction(0))
                 for j in range(target_dim))


@lru_cache(maxsize=None)
def star_fan(fan, sigma_id):
    """The fan of images of the cones of star(sigma) in N(sigma), plus the
    correspondence star-cone-id -> original cone id."""
    q = stratum_quotient(fan, sigma_id)
    images = {}
    for tau_id in fan.coface_ids(sigma_id):
        img = poly.linear_image(fan.cones[tau_id], q.projection, q.rank)
        images[tau_id] = img
    out = Fan.from_cones(q.rank, list(images.values()))
    to_orig = {}
    for tau_id, img in images.items():
        to_orig[out.index_of(img)] = tau_id
    if len(to_orig) != len(images):
        raise AssertionError("star cones are not in bijection with the star")
    return out, to_orig


@dataclass(frozen=True)
class TropicalPolyhedron:
    """A polyhedron in the stratum N(sedentarity), determining its closure
    in the compactified space."""

    fan: Fan
    sedentarity: int
    finite_part: Polyhedron

    @staticmethod
    def empty(fan):
        return TropicalPolyhedron(fan, 0, poly.empty_polyhedron(fan.rank))

    @property
    def is_empty(self):
        return self.finite_part.is_empty

    @property
    def dim(self):
        return self.finite_part.dim

    def stratum_rank(self):
        return stratum_quotient(self.fan, self.sedentarity).rank


def closure_stratum(d, tau_id):
    """The stratum at tau of the closure of d: the projection of the finite
    part when its recession cone meets relint of the image of tau, else the
    empty polyhedron in N(tau)."""
    fan = d.fan
    sigma = d.sedentarity
    if sigma not in fan.face_ids(tau_id):
        raise NotAFaceRelation("sedentarity is not a face of the given cone")
    q = stratum_quotient(fan, sigma)
    qt = stratum_quotient(fan, tau_id)
    if d.is_empty:
        return poly.empty_polyhedron(qt.rank)
    tau_img = poly.linear_image(fan.cones[tau_id], q.projection, q.rank)
    rec = poly.recession_cone(d.finite_part)
    if not poly.relint_meets(tau_img, rec):
        return poly.empty_polyhedron(qt.rank)
    m = stratum_map(fan, sigma, tau_id)
    return poly.linear_image(d.finite_part, m, qt.rank)


@lru_cache(maxsize=None)
def is_constant_towards_boundary(d):
    """True iff every star-fan cone either lies inside rec(finite part) or
    has relative interior disjoint from it."""
    if d.is_empty:
        raise EmptyPolyhedron("predicate undefined on the empty polyhedron")
    rec = poly.recession_cone(d.finite_part)
    sfan, _ = star_fan(d.fan, d.sedentarity)
    for c in sfan.cones:
        if poly.contains_polyhedron(rec, c):
            continue
        if poly.relint_meets(c, rec):
            return False
    return True


def is_compact(d):
    """True iff the closure is compact: the recession cone of the finite
    part is covered by the star fan."""
    if d.is_empty:
        raise EmptyPolyhedron("predicate undefined on the empty polyhedron")
    rec = poly.recession_cone(d.finite_part)
    sfan, _ = star_fan(d.fan, d.sedentarity)
    return covered_by_fan(rec, sfan)


def minimal_common_coface(fan, sigma_id, tau_id):
    """The unique minimal cone having both given cones as faces, or None."""
    common = [i for i in fan.coface_ids(sigma_id) if i in fan.coface_ids(tau_id)]
    if not common:
        return None
    best = min(common, key=lambda i: fan.cones[i].dim)
    for i in common:
        if best not in fan.face_ids(i):
            raise AssertionError("no unique minimal common coface")
    return best


def intersect_ctb(a, b):
    """Intersection of the closures of two polyhedra that are constant
    towards the boundary; the result is again of that kind."""
    if a.fan != b.fan:
        raise ValueError("different fans")
    fan = a.fan
    if a.is_empty or b.is_empty:
        return TropicalPolyhedron.empty(fan)
    if not is_constant_towards_boundary(a) or not is_constant_towards_boundary(b):
        raise NotConstantTowardsBoundary(
            "closure intersection requires both sides constant towards the boundary")
    rho = minimal_common_coface(fan, a.sedentarity, b.sedentarity)
    if rho is None:
        return TropicalPolyhedron.empty(fan)
    meet = poly.intersect(closure_stratum(a, rho), closure_stratum(b, rho))
    if meet.is_empty:
        return TropicalPolyhedron.empty(fan)
    return TropicalPolyhedron(fan, rho, meet)


@lru_cache(maxsize=None)
def trop_faces(d):
    """All faces of the closure of d, across all sedentarities: for each
    cone tau of the star and each face F of the finite part whose recession
    cone contains the image of tau, the closure of the projected face."""
    if d.is_empty:
        return ()
    if not is_constant_towards_boundary(d):
        raise NotConstantTowardsBoundary("face enumeration needs the closure "
                                         "to be a union of strata polyhedra")
    fan = d.fan
    sigma = d.sedentarity
    q = stratum_quotient(fan, sigma)
    out = []
    for tau_id in fan.coface_ids(sigma):
        tau_img = poly.linear_image(fan.cones[tau_id], q.projection, q.rank)
        m = stratum_map(fan, sigma, tau_id)
        qt = stratum_quotient(fan, tau_id)
        for f in poly.faces(d.finite_part):
            if poly.contains_polyhedron(poly.recession_cone(f), tau_img):
                out.append(TropicalPolyhedron(
                    fan, tau_id, poly.linear_image(f, m, qt.rank)))
    return tuple(out)


@dataclass(frozen=True)
class EquivariantMap:
    """A map of compactified spaces: x -> translation + x . linear on the
    open stratum, extended continuously.  The translation may sit in a
    boundary stratum of the target (given by its sedentarity cone id)."""

    source_fan: Fan
    target_fan: Fan
    linear: tuple              # source_rank x target_rank integer rows
    translation_sed: int = 0
    translation: tuple = None

    def __post_init__(self):
        if self.translation is None:
            qt = stratum_quotient(self.target_fan, self.translation_sed)
            object.__setattr__(self, "translation",
                               tuple([Fraction(0)] * qt.rank))

    def check(self):
        """Each source cone must map into some target cone (modulo the
        translation's sedentarity)."""
        for i in range(len(self.source_fan.cones)):
            self._image_cone(i)

    def _image_cone(self, sigma_id):
        """Minimal target cone tau >= translation_sed whose image in
        N(translation_sed) contains the image of the source cone."""
        qs = stratum_quotient(self.target_fan, self.translation_sed)
        src = self.source_fan.cones[sigma_id]
        img = poly.linear_image(src, self.linear, self.target_fan.rank)
        img_q = poly.linear_image(img, qs.projection, qs.rank)
        best = None
        for tau_id in self.target_fan.coface_ids(self.translation_sed):
            tau_img = poly.linear_image(self.target_fan.cones[tau_id],
                                        qs.projection, qs.rank)
            if poly.contains_polyhedron(tau_img, img_q):
                if best is None or self.target_fan.cones[tau_id].dim < \
                        self.target_fan.cones[best].dim:
                    best = tau_id
        if best is None:
            raise IncompatibleMap("a source cone maps outside the target fan")
        return best


@lru_cache(maxsize=None)
def stratum_linear(f, source_sed, target_sed):
    """Matrix of the map N(source_sed) -> N(target_sed) induced by the
    linear part of an equivariant map: lift, apply, project."""
    q_src = stratum_quotient(f.source_fan, source_sed)
    q_tau = stratum_quotient(f.target_fan, target_sed)
    rows = []
    for i in range(q_src.rank):
        e = tuple(1 if k == i else 0 for k in range(q_src.rank))
        amb = _apply_matrix(q_src.lift(e), f.linear, f.target_fan.rank)
        rows.append(tuple(int(x) for x in q_tau.project(amb)))
    return tuple(rows)


def apply_equivariant(f, d):
    """Image of a tropical polyhedron under an equivariant map."""
    if d.fan != f.source_fan:
        raise ValueError("polyhedron lives on a different fan")
    if d.is_empty:
        return TropicalPolyhedron.empty(f.target_fan)
    tau_id = f._image_cone(d.sedentarity)
    q_tau = stratum_quotient(f.target_fan, tau_id)
    rows = stratum_linear(f, d.sedentarity, tau_id)
    img = poly.linear_image(d.finite_part, rows, q_tau.rank)
    tmap = stratum_map(f.target_fan, f.translation_sed, tau_id)
    t0 = _apply_matrix(f.translation, tmap, q_tau.rank)
    return TropicalPolyhedron(f.target_fan, tau_id, poly.translate(img, t0))

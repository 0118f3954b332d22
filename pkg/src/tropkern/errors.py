"""Exceptions raised by the geometric preconditions of the library.

Every error here names a mathematical precondition that failed, not a
programming mistake.  Callers that feed validated input never see them.
"""


class TropkernError(Exception):
    """Base class for all library errors."""


# exact linear algebra

class RankMismatch(TropkernError):
    """Lattice index requested between lattices of different rank."""


class NotSublattice(TropkernError):
    """Lattice index requested but the containment sub <= sup fails."""


class ZeroVector(TropkernError):
    """Primitive vector of the zero vector is undefined."""


# polyhedra

class EmptyPolyhedron(TropkernError):
    """Operation undefined on the empty polyhedron."""


class HasLineality(TropkernError):
    """Simpliciality is only defined for pointed polyhedra."""


# tropical toric geometry

class NotAFaceRelation(TropkernError):
    """A cone was used as a coface of a sedentarity it does not contain."""


class NotConstantTowardsBoundary(TropkernError):
    """Input fails the constant-towards-boundary hypothesis; the requested
    construction can produce a non-polyhedral set, so we refuse."""


class IncompatibleMap(TropkernError):
    """A lattice map does not carry every source cone into a target cone."""


# complexes and subdivisions

class NotComplete(TropkernError):
    """A complete complex (support = whole space) was required."""


class RecessionNotInFan(TropkernError):
    """A cell's recession cone is not a cone of the reference fan."""


class UnboundedMinimalFunction(TropkernError):
    """The minimal concave function for the given constraints is +infinity
    somewhere on its domain; no regular subdivision exists."""


class FanNotSimplicial(TropkernError):
    """The family subdivision algorithm needs a simplicial fan."""


class NotAComplex(TropkernError):
    """Cells do not intersect in common faces."""


# cycles

class MixedDimension(TropkernError):
    """Cells of a single cycle component must share one dimension."""


class DimensionCollapse(TropkernError):
    """A cell's image under push-forward dropped dimension.  Reported in
    the push-forward summary, contributing weight zero; never fatal."""


class NotZeroDimensional(TropkernError):
    """Degree is only defined for 0-dimensional cycles."""


# divisors and intersection products

class NotSedentarityZero(TropkernError):
    """The corner locus acts on cycles of sedentarity zero; use the
    Cartier intersection for general sedentarity."""


class CycleInUnboundedLocus(TropkernError):
    """The cycle's stratum lies inside the unbounded locus of the divisor,
    so the restriction of the divisor to that stratum is undefined."""


class UnboundedDifference(TropkernError):
    """A piecewise affine function differs from every conewise linear
    function on the fan by an unbounded amount."""


# heights

class ImproperIntersection(TropkernError):
    """The proper-intersection dimension bound fails."""


class GreenUndefinedAtPoint(TropkernError):
    """A Green function was evaluated at a boundary point inside its
    unbounded locus."""


# input validation (CLI)

class ValidationError(TropkernError):
    """Malformed input document.  Carries a JSON-pointer style path."""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__("%s: %s" % (path or "/", message))

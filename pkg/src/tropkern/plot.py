"""Deterministic SVG pictures of rank-two objects.

Finite parts are drawn in the plane, clipped to a square frame.  Each
ray of the reference fan contributes a margin band outside the frame
carrying the cells of that boundary stratum (the band is the quotient
line, drawn perpendicular to the ray), and rank-two sedentarities show
up as corner dots beyond the bands.  Coordinates are formatted with a
fixed precision, so equal objects render to byte-identical files.
"""

import math
from fractions import Fraction

from . import polyhedron as poly
from . import tropictoric as tt
from .errors import ValidationError
from .exactlin import rational_to_str

_CANVAS = 640.0
_FINITE_FILL = "#cfe2f3"
_BAND_FILL = "#eeeeee"
_EDGE = "#1f4e79"
_BOUNDARY = "#8b0000"


def _fmt(x):
    return ("%.2f" % (x + 0.0)).replace("-0.00", "0.00")


class _Board:
    """World-to-canvas transform plus an element buffer."""

    def __init__(self, world_radius):
        self.w = world_radius
        self.elements = []

    def pt(self, x, y):
        s = _CANVAS / (2.0 * self.w)
        return ((float(x) + self.w) * s, (self.w - float(y)) * s)

    def add(self, element):
        self.elements.append(element)

    def polygon(self, pts, fill, stroke, width=1.0, opacity=1.0):
        coords = " ".join("%s,%s" % (_fmt(a), _fmt(b))
                          for a, b in (self.pt(x, y) for x, y in pts))
        self.add('<polygon points="%s" fill="%s" fill-opacity="%s" '
                 'stroke="%s" stroke-width="%s"/>'
                 % (coords, fill, _fmt(opacity), stroke, _fmt(width)))

    def segment(self, a, b, stroke, width):
        (x1, y1), (x2, y2) = self.pt(*a), self.pt(*b)
        self.add('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" '
                 'stroke-width="%s" stroke-linecap="round"/>'
                 % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2), stroke,
                    _fmt(width)))

    def dot(self, a, fill, radius=3.5):
        x, y = self.pt(*a)
        self.add('<circle cx="%s" cy="%s" r="%s" fill="%s"/>'
                 % (_fmt(x), _fmt(y), _fmt(radius), fill))

    def label(self, a, text, dx=6.0, dy=-6.0):
        x, y = self.pt(*a)
        self.add('<text x="%s" y="%s" font-size="13" '
                 'font-family="monospace" fill="#111111">%s</text>'
                 % (_fmt(x + dx), _fmt(y + dy), text))

    def svg(self):
        head = ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" '
                'height="%d" viewBox="0 0 %d %d">'
                % (int(_CANVAS), int(_CANVAS), int(_CANVAS), int(_CANVAS)))
        body = "\n".join("  " + e for e in self.elements)
        return head + "\n" + body + "\n</svg>\n"


def _unit(v):
    n = math.hypot(float(v[0]), float(v[1]))
    return (float(v[0]) / n, float(v[1]) / n)


def _box(r):
    one = Fraction(1)
    return poly.from_hrep([((one, 0), -r), ((-one, 0), -r),
                           ((0, one), -r), ((0, -one), -r)], [], 2)


def _ordered_vertices(p):
    """Vertices of a bounded planar polytope in angular order."""
    pts = [(float(v[0]), float(v[1])) for v in p.vertices]
    cx = sum(a for a, _ in pts) / len(pts)
    cy = sum(b for _, b in pts) / len(pts)
    return sorted(pts, key=lambda q: (math.atan2(q[1] - cy, q[0] - cx), q))


def _gather(kind, obj):
    """Split an object into (fan, [(cell, label)]) drawing items."""
    if kind == "fan":
        cells = [(tt.TropicalPolyhedron(obj, 0, obj.cones[i]), None)
                 for i in obj.maximal_ids()]
        return obj, cells
    if kind in ("complex", "family"):
        cells = list(obj.cells) if kind == "complex" else list(obj)
        fan = obj.fan if kind == "complex" else (cells[0].fan if cells
                                                 else None)
        return fan, [(c, None) for c in cells]
    if kind in ("cycle", "measure"):
        return obj.fan, [(wc.cell, rational_to_str(wc.coefficient))
                         for wc in obj.cells]
    if kind == "function":
        return obj.fan, [(tt.TropicalPolyhedron(obj.fan, 0, p.cell), None)
                         for p in obj.pieces]
    raise ValidationError("/kind", "objects of kind %r have no picture"
                          % kind)


def _world_radius(items):
    extent = 1.0
    for cell, _ in items:
        if cell.sedentarity != 0:
            continue
        for v in cell.finite_part.vertices:
            extent = max(extent, abs(float(v[0])), abs(float(v[1])))
    return extent * 1.3 + 1.0


def render_svg(kind, obj):
    """The SVG document for a rank-two object."""
    fan, items = _gather(kind, obj)
    if fan is None or fan.rank != 2:
        raise ValidationError(
            "", "pictures need an ambient of rank 2, got rank %s"
            % ("none" if fan is None else fan.rank))
    r = _world_radius(items)
    board = _Board(r * 1.75)
    clip = _box(Fraction(r).limit_denominator(1000))

    frame = [(-r, -r), (r, -r), (r, r), (-r, r)]
    board.polygon(frame, "#ffffff", "#999999", 1.0)

    bands = _draw_bands(board, fan, r)
    _draw_finite(board, items, clip)
    _draw_boundary(board, fan, items, bands, r)
    return board.svg()


def _draw_finite(board, items, clip):
    by_dim = {2: [], 1: [], 0: []}
    for cell, label in items:
        if cell.sedentarity != 0:
            continue
        part = poly.intersect(cell.finite_part, clip)
        if part.is_empty:
            continue
        by_dim[max(part.dim, 0)].append((part, label, cell.finite_part))
    for part, label, _ in by_dim[2]:
        board.polygon(_ordered_vertices(part), _FINITE_FILL, _EDGE, 1.2,
                      opacity=0.55)
    for part, label, _ in by_dim[2]:
        if label is not None:
            cx = sum(float(v[0]) for v in part.vertices) / len(part.vertices)
            cy = sum(float(v[1]) for v in part.vertices) / len(part.vertices)
            board.label((cx, cy), label, dx=0.0, dy=0.0)
    for part, label, _ in by_dim[1]:
        pts = [(float(v[0]), float(v[1])) for v in part.vertices]
        if len(pts) == 1:
            pts = pts * 2
        board.segment(pts[0], pts[-1], _EDGE, 2.2)
        if label is not None:
            mid = ((pts[0][0] + pts[-1][0]) / 2, (pts[0][1] + pts[-1][1]) / 2)
            board.label(mid, label)
    for part, label, _ in by_dim[0]:
        a = (float(part.vertices[0][0]), float(part.vertices[0][1]))
        board.dot(a, _EDGE)
        if label is not None:
            board.label(a, label)


def _draw_bands(board, fan, r):
    """One margin band per fan ray; returns placement data keyed by the
    ray's cone id."""
    bands = {}
    for rid in fan.ray_ids():
        u = _unit(fan.ray_generator(rid))
        perp = (-u[1], u[0])
        center = (u[0] * r * 1.22, u[1] * r * 1.22)
        half, width = r * 0.85, r * 0.05
        corners = []
        for sa, sb in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
            corners.append((center[0] + sa * half * perp[0]
                            + sb * width * u[0],
                            center[1] + sa * half * perp[1]
                            + sb * width * u[1]))
        board.polygon(corners, _BAND_FILL, "#bbbbbb", 0.8)
        bands[rid] = (center, perp, half)
    return bands


def _band_point(band, lift):
    center, perp, half = band
    s = float(lift[0]) * perp[0] + float(lift[1]) * perp[1]
    s = max(-half, min(half, s))
    return (center[0] + s * perp[0], center[1] + s * perp[1])


def _draw_boundary(board, fan, items, bands, r):
    for cell, label in items:
        sed = cell.sedentarity
        if sed == 0:
            continue
        cone = fan.cones[sed]
        if cone.dim == 1:
            rid = sed
            q = tt.stratum_quotient(fan, sed)
            band = bands[rid]
            part = cell.finite_part
            if part.dim >= 1:
                along = [float(q.lift(v)[0]) * band[1][0]
                         + float(q.lift(v)[1]) * band[1][1]
                         for v in part.vertices]
                lo, hi = min(along), max(along)
                if part.rays:
                    for ray in part.rays:
                        d = (float(q.lift(ray)[0]) * band[1][0]
                             + float(q.lift(ray)[1]) * band[1][1])
                        if d > 0:
                            hi = band[2]
                        elif d < 0:
                            lo = -band[2]
                if part.lineality:
                    lo, hi = -band[2], band[2]
                lo = max(-band[2], min(band[2], lo))
                hi = max(-band[2], min(band[2], hi))
                a = (band[0][0] + lo * band[1][0], band[0][1] + lo * band[1][1])
                b = (band[0][0] + hi * band[1][0], band[0][1] + hi * band[1][1])
                board.segment(a, b, _BOUNDARY, 3.0)
                if label is not None:
                    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                    board.label(mid, label)
            else:
                q0 = q.lift(part.vertices[0])
                a = _band_point(band, q0)
                board.dot(a, _BOUNDARY)
                if label is not None:
                    board.label(a, label)
        else:
            u = (0.0, 0.0)
            for ray in cone.rays:
                w = _unit(ray)
                u = (u[0] + w[0], u[1] + w[1])
            u = _unit(u)
            a = (u[0] * r * 1.5, u[1] * r * 1.5)
            board.dot(a, "#333333", 4.0)
            if label is not None:
                board.label(a, label)

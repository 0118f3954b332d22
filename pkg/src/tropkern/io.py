"""Strict JSON interchange for geometry objects.

Every document carries ``"format": "tropkern/1"`` and a ``"kind"``
naming the object it holds.  Reading is strict: unknown fields anywhere
in a document are rejected, and every failure raises
:class:`~tropkern.errors.ValidationError` carrying a JSON-pointer path
to the offending value.  Writing is canonical: keys are sorted, cells
appear in the library's normalized order, and rationals render as
``"p/q"`` strings, so equal objects serialize to byte-identical files.

Object documents other than fans either embed their reference fan under
a ``"fan"`` field or rely on a fan supplied separately (the ``--fan``
flag of the command line tool).  A :class:`Workspace` collects named
objects and enforces that they all share one reference fan.
"""

import json
from fractions import Fraction

from . import complexes as cxm
from . import cycle as cym
from . import divisor as dvm
from . import polyhedron as poly
from . import tropictoric as tt
from .errors import TropkernError, ValidationError
from .exactlin import rational_from_str, rational_to_str

FORMAT = "tropkern/1"


# --- JSON-pointer bookkeeping and scalar checks -----------------------------


def _join(path, token):
    token = str(token).replace("~", "~0").replace("/", "~1")
    return path + "/" + token


def _need_obj(v, path, required=(), optional=()):
    if not isinstance(v, dict):
        raise ValidationError(path, "expected an object")
    for key in sorted(v):
        if key not in required and key not in optional:
            raise ValidationError(_join(path, key), "unknown field")
    for key in required:
        if key not in v:
            raise ValidationError(path, "missing required field %r" % key)
    return v


def _need_list(v, path):
    if not isinstance(v, list):
        raise ValidationError(path, "expected an array")
    return v


def _need_int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(path, "expected an integer")
    return v


def _need_str(v, path):
    if not isinstance(v, str):
        raise ValidationError(path, "expected a string")
    return v


def _need_rat(v, path):
    if isinstance(v, bool):
        raise ValidationError(path, "expected a rational number")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return rational_from_str(v)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(path, "not a rational 'p/q' string: %r" % v)
    raise ValidationError(path, "expected an integer or a 'p/q' string")


def _int_vec(v, path, length):
    v = _need_list(v, path)
    if len(v) != length:
        raise ValidationError(
            path, "expected %d entries, got %d" % (length, len(v)))
    return tuple(_need_int(x, _join(path, i)) for i, x in enumerate(v))


def _rat_vec(v, path, length):
    v = _need_list(v, path)
    if len(v) != length:
        raise ValidationError(
            path, "expected %d entries, got %d" % (length, len(v)))
    return tuple(_need_rat(x, _join(path, i)) for i, x in enumerate(v))


def _rebadge(path, exc):
    """Re-raise a construction failure as a validation error at path."""
    if isinstance(exc, ValidationError):
        raise exc
    raise ValidationError(path, str(exc))


# --- fans -------------------------------------------------------------------


def fan_body(fan):
    return {
        "rank": fan.rank,
        "cones": [[[int(x) for x in r] for r in fan.cones[i].rays]
                  for i in fan.maximal_ids()],
    }


def parse_fan_body(v, path):
    _need_obj(v, path, required=("rank", "cones"))
    rank = _need_int(v["rank"], _join(path, "rank"))
    if rank < 0:
        raise ValidationError(_join(path, "rank"), "rank must be nonnegative")
    cones = _need_list(v["cones"], _join(path, "cones"))
    ray_lists = []
    for i, rays in enumerate(cones):
        cp = _join(_join(path, "cones"), i)
        rays = _need_list(rays, cp)
        ray_lists.append([_int_vec(r, _join(cp, j), rank)
                          for j, r in enumerate(rays)])
    try:
        return tt.Fan.from_ray_lists(rank, ray_lists)
    except ValidationError:
        raise
    except (ValueError, TropkernError) as exc:
        _rebadge(_join(path, "cones"), exc)


# --- polyhedra and cells ----------------------------------------------------


def poly_body(p):
    def rows(items):
        return [{"normal": [rational_to_str(a) for a in row],
                 "rhs": rational_to_str(b)} for row, b in items]
    return {"ambient": p.ambient_dim,
            "ineqs": rows(p.ineqs),
            "eqs": rows(p.eqs)}


def parse_poly_body(v, path):
    _need_obj(v, path, required=("ambient",), optional=("ineqs", "eqs"))
    n = _need_int(v["ambient"], _join(path, "ambient"))
    if n < 0:
        raise ValidationError(
            _join(path, "ambient"), "ambient dimension must be nonnegative")

    def rows(key):
        out = []
        if key not in v:
            return out
        lst = _need_list(v[key], _join(path, key))
        for i, row in enumerate(lst):
            rp = _join(_join(path, key), i)
            _need_obj(row, rp, required=("normal", "rhs"))
            normal = _rat_vec(row["normal"], _join(rp, "normal"), n)
            rhs = _need_rat(row["rhs"], _join(rp, "rhs"))
            out.append((normal, rhs))
        return out

    ineqs, eqs = rows("ineqs"), rows("eqs")
    try:
        return poly.from_hrep(ineqs, eqs, n)
    except (ValueError, TropkernError) as exc:
        _rebadge(path, exc)


def _sed_rays(fan, sed_id):
    return [[int(x) for x in r] for r in fan.cones[sed_id].rays]


def _resolve_cone(fan, v, path):
    rays = _need_list(v, path)
    gens = [_int_vec(r, _join(path, i), fan.rank) for i, r in enumerate(rays)]
    zero = tuple([0] * fan.rank)
    try:
        cone = poly.from_vrep([zero], gens, [], fan.rank)
        return fan.index_of(cone)
    except ValidationError:
        raise
    except (ValueError, TropkernError):
        raise ValidationError(path, "not a cone of the reference fan")


def cell_body(tc):
    return {"sedentarity": _sed_rays(tc.fan, tc.sedentarity),
            "polyhedron": poly_body(tc.finite_part)}


def parse_cell_body(v, path, fan):
    _need_obj(v, path, required=("sedentarity", "polyhedron"),
              optional=("weight", "scale"))
    sid = _resolve_cone(fan, v["sedentarity"], _join(path, "sedentarity"))
    p = parse_poly_body(v["polyhedron"], _join(path, "polyhedron"))
    qrank = tt.stratum_quotient(fan, sid).rank
    if p.ambient_dim != qrank:
        raise ValidationError(
            _join(_join(path, "polyhedron"), "ambient"),
            "ambient dimension %d does not match the stratum rank %d"
            % (p.ambient_dim, qrank))
    return tt.TropicalPolyhedron(fan, sid, p)


# --- cycles -----------------------------------------------------------------


def cycle_body(c):
    cells = []
    for wc in c.cells:
        entry = cell_body(wc.cell)
        entry["weight"] = wc.weight
        entry["scale"] = rational_to_str(wc.weight_scale)
        cells.append(entry)
    return {"dimension": c.dimension,
            "base_sedentarity": _sed_rays(c.fan, c.sedentarity),
            "cells": cells}


def parse_cycle_body(v, path, fan):
    _need_obj(v, path, required=("dimension", "cells"),
              optional=("base_sedentarity", "fan", "format", "kind"))
    dim = _need_int(v["dimension"], _join(path, "dimension"))
    base = 0
    if "base_sedentarity" in v:
        base = _resolve_cone(fan, v["base_sedentarity"],
                             _join(path, "base_sedentarity"))
    weighted = []
    for i, entry in enumerate(_need_list(v["cells"], _join(path, "cells"))):
        cp = _join(_join(path, "cells"), i)
        cell = parse_cell_body(entry, cp, fan)
        if "weight" not in entry:
            raise ValidationError(cp, "missing required field 'weight'")
        w = _need_int(entry["weight"], _join(cp, "weight"))
        scale = _need_rat(entry.get("scale", 1), _join(cp, "scale"))
        if scale <= 0:
            raise ValidationError(_join(cp, "scale"),
                                  "weight scale must be positive")
        weighted.append((cell, w, scale))
    try:
        return cym.make_cycle(fan, weighted, dimension=(dim if dim >= 0
                                                        else None),
                              sedentarity=base)
    except ValidationError:
        raise
    except (ValueError, TropkernError) as exc:
        _rebadge(_join(path, "cells"), exc)


# --- complexes and families -------------------------------------------------


def complex_body(cx):
    return {"cells": [cell_body(c) for c in cx.cells]}


def parse_complex_body(v, path, fan):
    _need_obj(v, path, required=("cells",),
              optional=("fan", "format", "kind"))
    cells = [parse_cell_body(entry, _join(_join(path, "cells"), i), fan)
             for i, entry in enumerate(_need_list(v["cells"],
                                                  _join(path, "cells")))]
    try:
        return cxm.PolyhedralComplex.from_cells(fan, cells, validate=True)
    except ValidationError:
        raise
    except (ValueError, TropkernError) as exc:
        _rebadge(_join(path, "cells"), exc)


def family_body(members):
    return {"members": [cell_body(c) for c in members]}


def parse_family_body(v, path, fan):
    _need_obj(v, path, required=("members",),
              optional=("fan", "format", "kind"))
    return tuple(
        parse_cell_body(entry, _join(_join(path, "members"), i), fan)
        for i, entry in enumerate(_need_list(v["members"],
                                             _join(path, "members"))))


# --- piecewise affine functions and divisors --------------------------------


def function_body(phi):
    return {"pieces": [{"cell": poly_body(p.cell),
                        "slope": [int(s) for s in p.slope],
                        "constant": rational_to_str(p.constant)}
                       for p in phi.pieces]}


def max_terms_body(terms):
    return {"max_terms": [{"slope": [int(s) for s in slope],
                           "constant": rational_to_str(Fraction(c))}
                          for slope, c in terms]}


def parse_function_body(v, path, fan):
    _need_obj(v, path, optional=("pieces", "max_terms",
                                 "fan", "format", "kind"))
    has_pieces, has_terms = "pieces" in v, "max_terms" in v
    if has_pieces == has_terms:
        raise ValidationError(
            path, "expected exactly one of 'pieces' or 'max_terms'")
    if has_terms:
        terms = []
        for i, entry in enumerate(_need_list(v["max_terms"],
                                             _join(path, "max_terms"))):
            tp = _join(_join(path, "max_terms"), i)
            _need_obj(entry, tp, required=("slope",), optional=("constant",))
            slope = _int_vec(entry["slope"], _join(tp, "slope"), fan.rank)
            const = _need_rat(entry.get("constant", 0),
                              _join(tp, "constant"))
            terms.append((slope, const))
        try:
            return dvm.max_of_affine(fan, terms)
        except ValidationError:
            raise
        except (ValueError, TropkernError) as exc:
            _rebadge(_join(path, "max_terms"), exc)
    data = []
    for i, entry in enumerate(_need_list(v["pieces"],
                                         _join(path, "pieces"))):
        pp = _join(_join(path, "pieces"), i)
        _need_obj(entry, pp, required=("cell", "slope", "constant"))
        cell = parse_poly_body(entry["cell"], _join(pp, "cell"))
        if cell.ambient_dim != fan.rank:
            raise ValidationError(_join(_join(pp, "cell"), "ambient"),
                                  "ambient dimension %d does not match the "
                                  "fan rank %d" % (cell.ambient_dim,
                                                   fan.rank))
        slope = _int_vec(entry["slope"], _join(pp, "slope"), fan.rank)
        const = _need_rat(entry["constant"], _join(pp, "constant"))
        data.append((cell, slope, const))
    try:
        return dvm.make_pa(fan, data, validate=True)
    except ValidationError:
        raise
    except (ValueError, TropkernError) as exc:
        _rebadge(_join(path, "pieces"), exc)


def divisor_body(d):
    return {"covectors": [[int(x) for x in k] for k in d.psi.values]}


def parse_divisor_body(v, path, fan):
    _need_obj(v, path, optional=("covectors", "ray_values",
                                 "fan", "format", "kind"))
    has_cov, has_rays = "covectors" in v, "ray_values" in v
    if has_cov == has_rays:
        raise ValidationError(
            path, "expected exactly one of 'covectors' or 'ray_values'")
    if has_cov:
        cov = _need_list(v["covectors"], _join(path, "covectors"))
        values = [_int_vec(k, _join(_join(path, "covectors"), i), fan.rank)
                  for i, k in enumerate(cov)]
        try:
            return dvm.ToricCartierDivisor(
                dvm.make_pl(fan, values, validate=True))
        except ValidationError:
            raise
        except (ValueError, TropkernError) as exc:
            _rebadge(_join(path, "covectors"), exc)
    ray_ids = fan.ray_ids()
    position = {tuple(int(x) for x in fan.ray_generator(i)): pos
                for pos, i in enumerate(ray_ids)}
    values = [None] * len(ray_ids)
    for i, entry in enumerate(_need_list(v["ray_values"],
                                         _join(path, "ray_values"))):
        rp = _join(_join(path, "ray_values"), i)
        _need_obj(entry, rp, required=("ray", "value"))
        ray = _int_vec(entry["ray"], _join(rp, "ray"), fan.rank)
        if ray not in position:
            raise ValidationError(_join(rp, "ray"),
                                  "not a primitive ray generator of the fan")
        pos = position[ray]
        if values[pos] is not None:
            raise ValidationError(_join(rp, "ray"),
                                  "ray listed more than once")
        values[pos] = _need_rat(entry["value"], _join(rp, "value"))
    if any(val is None for val in values):
        raise ValidationError(_join(path, "ray_values"),
                              "a value is needed for every ray of the fan")
    try:
        return dvm.divisor_from_ray_values(fan, values)
    except ValidationError:
        raise
    except (ValueError, TropkernError) as exc:
        _rebadge(_join(path, "ray_values"), exc)


def greens_body(entries):
    """Entries may be piecewise affine functions or objects carrying a
    ``phi`` attribute (Green functions)."""
    bodies = []
    for g in entries:
        phi = getattr(g, "phi", g)
        bodies.append(function_body(phi))
    return {"greens": bodies}


def parse_greens_body(v, path, fan):
    _need_obj(v, path, required=("greens",),
              optional=("fan", "format", "kind"))
    return tuple(
        parse_function_body(entry, _join(_join(path, "greens"), i), fan)
        for i, entry in enumerate(_need_list(v["greens"],
                                             _join(path, "greens"))))


# --- measures (zero-cycles with a recorded total mass) ----------------------


def measure_body(mu):
    total = cym.degree(mu)
    return {"cycle": cycle_body(mu),
            "total_mass": rational_to_str(Fraction(total))}


def parse_measure_body(v, path, fan):
    _need_obj(v, path, required=("cycle", "total_mass"),
              optional=("fan", "format", "kind"))
    mu = parse_cycle_body(v["cycle"], _join(path, "cycle"), fan)
    total = _need_rat(v["total_mass"], _join(path, "total_mass"))
    if Fraction(cym.degree(mu)) != total:
        raise ValidationError(_join(path, "total_mass"),
                              "recorded mass differs from the cycle degree")
    return mu


# --- document envelopes -----------------------------------------------------


_BODY_WRITERS = {
    "fan": lambda obj: fan_body(obj),
    "complex": lambda obj: complex_body(obj),
    "cycle": lambda obj: cycle_body(obj),
    "function": lambda obj: function_body(obj),
    "divisor": lambda obj: divisor_body(obj),
    "greens": lambda obj: greens_body(obj),
    "measure": lambda obj: measure_body(obj),
}

_FAN_OF = {
    "fan": lambda obj: obj,
    "complex": lambda obj: obj.fan,
    "cycle": lambda obj: obj.fan,
    "function": lambda obj: obj.fan,
    "divisor": lambda obj: obj.psi.fan,
    "family": lambda obj: obj[0].fan if obj else None,
    "greens": lambda obj: obj[0].fan if obj else None,
    "measure": lambda obj: obj.fan,
}


def object_fan(kind, obj):
    """The reference fan of a loaded object, or None when it has none."""
    getter = _FAN_OF.get(kind)
    return getter(obj) if getter else None


def document(kind, obj, embed_fan=True):
    """The JSON-ready dictionary for one object."""
    if kind not in _BODY_WRITERS:
        raise ValueError("cannot serialize objects of kind %r" % kind)
    doc = {"format": FORMAT, "kind": kind}
    doc.update(_BODY_WRITERS[kind](obj))
    fan = object_fan(kind, obj)
    if embed_fan and kind != "fan" and fan is not None:
        doc["fan"] = fan_body(fan)
    return doc


def family_document(members, embed_fan=True):
    doc = {"format": FORMAT, "kind": "family"}
    doc.update(family_body(members))
    if embed_fan and members:
        doc["fan"] = fan_body(members[0].fan)
    return doc


def dumps(doc):
    """Canonical text of a JSON-ready dictionary: sorted keys, two-space
    indentation, one trailing newline.  Equal documents give equal bytes."""
    return json.dumps(doc, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def _parse_fan_doc(v, fan):
    _need_obj(v, "", required=("rank", "cones"), optional=("format", "kind"))
    return parse_fan_body({"rank": v["rank"], "cones": v["cones"]}, "")


_BODY_PARSERS = {
    "fan": _parse_fan_doc,
    "complex": parse_complex_body,
    "cycle": parse_cycle_body,
    "function": parse_function_body,
    "divisor": parse_divisor_body,
    "family": parse_family_body,
    "greens": parse_greens_body,
    "measure": parse_measure_body,
}


def loads(text, fan=None):
    """Parse one document.  Returns (kind, object).  Non-fan documents use
    their embedded fan when present (it must agree with a provided
    reference fan), else the provided reference fan."""
    try:
        v = json.loads(text)
    except ValueError as exc:
        raise ValidationError("", "invalid JSON: %s" % exc)
    if not isinstance(v, dict):
        raise ValidationError("", "expected a JSON object")
    if v.get("format") != FORMAT:
        raise ValidationError("/format", "expected the string %r" % FORMAT)
    kind = v.get("kind")
    if kind not in _BODY_PARSERS:
        raise ValidationError(
            "/kind", "expected one of %s" % ", ".join(sorted(_BODY_PARSERS)))
    if kind == "fan":
        return kind, _parse_fan_doc(v, fan)
    if "fan" in v:
        embedded = parse_fan_body(v["fan"], "/fan")
        if fan is not None and embedded != fan:
            raise ValidationError(
                "/fan", "embedded fan differs from the reference fan")
        fan = embedded
    if fan is None:
        raise ValidationError(
            "", "document has no 'fan' field and no reference fan was given")
    return kind, _BODY_PARSERS[kind](v, "", fan)


def load_path(filename, fan=None):
    with open(filename, "r", encoding="utf-8") as handle:
        return loads(handle.read(), fan=fan)


# --- workspaces -------------------------------------------------------------


class Workspace:
    """Named geometry objects sharing one reference fan.

    Objects are grouped by kind; adding an object whose fan differs from
    the workspace's reference fan is a referential integrity error."""

    _GROUPS = ("fans", "complexes", "cycles", "functions", "divisors",
               "families", "greens", "measures")
    _GROUP_OF = {"fan": "fans", "complex": "complexes", "cycle": "cycles",
                 "function": "functions", "divisor": "divisors",
                 "family": "families", "greens": "greens",
                 "measure": "measures"}

    def __init__(self, fan=None):
        self.fan = fan
        for group in self._GROUPS:
            setattr(self, group, {})

    def add(self, name, kind, obj):
        if kind not in self._GROUP_OF:
            raise ValidationError("/kind", "unknown kind %r" % kind)
        fan = object_fan(kind, obj)
        if fan is not None:
            if self.fan is None:
                self.fan = fan
            elif fan != self.fan:
                raise ValidationError(
                    "/fan", "object %r lives on a different fan than the "
                    "rest of the workspace" % name)
        group = getattr(self, self._GROUP_OF[kind])
        if name in group:
            raise ValidationError("", "duplicate object name %r" % name)
        group[name] = obj
        return obj

    def load(self, filename, name=None):
        """Load a document from a file into the workspace; the object name
        defaults to the file's base name without extension."""
        if name is None:
            base = str(filename).replace("\\", "/").rsplit("/", 1)[-1]
            name = base.rsplit(".", 1)[0]
        kind, obj = load_path(filename, fan=self.fan)
        return kind, self.add(name, kind, obj)

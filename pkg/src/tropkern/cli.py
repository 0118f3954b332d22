"""Command line front end.

Each subcommand loads one or two geometry documents, runs one library
operation, and writes the result as a canonical JSON document (or an
SVG picture) to stdout or ``--out``.  Canonical output means equal
results always serialize to identical bytes.

Exit codes: 0 on success (including a negative verdict), 2 for a
malformed input (the message carries a JSON-pointer path into the
offending document), 3 for a violated mathematical precondition (the
message starts with the library error name).  Expected failures never
print stack traces.

The ``TROPKERN_SEED`` environment variable fixes the seeds of the
randomized property tests shipped with the package; the tool itself
uses no randomness.
"""

import argparse
import sys
from fractions import Fraction

from . import complexes as cxm
from . import cycle as cym
from . import divisor as dvm
from . import height as ht
from . import io
from . import plot as plotmod
from . import polyhedron as poly
from . import tropictoric as tt
from .errors import (NotConstantTowardsBoundary, TropkernError,
                     ValidationError)
from .exactlin import rational_to_str

_PLOTTABLE = ("fan", "complex", "family", "cycle", "measure", "function")


# --- input plumbing ---------------------------------------------------------


def _fill_slots(args, slots):
    """Resolve the input paths for the declared slots, allowing --input to
    stand in for the first missing positional."""
    paths = []
    spare = args.input
    for slot in slots:
        value = getattr(args, slot)
        if value is None and spare is not None:
            value, spare = spare, None
        if value is None:
            raise ValidationError(
                "", "missing input: give %s positionally or via --input"
                % slot.upper())
        paths.append(value)
    if spare is not None:
        raise ValidationError(
            "", "--input was given but every input slot is already filled")
    return paths


def _workspace(args):
    ws = io.Workspace()
    if args.fan:
        kind, obj = io.load_path(args.fan)
        if kind != "fan":
            raise ValidationError(
                "/kind", "the --fan file must hold a fan document")
        ws.add("reference-fan", kind, obj)
    return ws


def _load_inputs(args, slots, wants):
    """Load each input slot, checking document kinds; returns the
    workspace and the loaded (path, kind, object) triples."""
    ws = _workspace(args)
    loaded = []
    for path, want in zip(_fill_slots(args, slots), wants):
        kind, obj = ws.load(path, name=path)
        if kind not in want:
            raise ValidationError(
                "/kind", "%s: expected a document of kind %s, got %r"
                % (path, " or ".join(want), kind))
        loaded.append((path, kind, obj))
    return ws, loaded


# --- invariant suite (--check) ----------------------------------------------


def _invariants(kind, obj):
    if kind == "fan":
        return [("fan cones meet in common faces", obj._validate)]
    if kind == "complex":
        return [("cells meet in common faces stratum by stratum",
                 obj.validate)]
    if kind in ("cycle", "measure"):
        return [("cycle cells meet in common faces",
                 lambda: cym.validate_support(obj))]
    if kind == "function":
        return [("linearity domains cover the space and agree on overlaps",
                 lambda: dvm.make_pa(obj.fan,
                                     [(p.cell, p.slope, p.constant)
                                      for p in obj.pieces], validate=True))]
    if kind == "divisor":
        return [("conewise data agrees on shared faces",
                 lambda: dvm.make_pl(obj.psi.fan, obj.psi.values,
                                     validate=True))]
    if kind == "greens":
        return [("entry %d is a Green function (trackable recession)" % i,
                 lambda phi=phi: ht.green_refined(phi))
                for i, phi in enumerate(obj)]
    if kind == "family":
        def probe(cell):
            if not tt.is_constant_towards_boundary(cell):
                raise NotConstantTowardsBoundary(
                    "family member is not constant towards the boundary")
        return [("member %d is constant towards the boundary" % i,
                 lambda c=c: probe(c)) for i, c in enumerate(obj)]
    return []


def _run_check(args, loaded):
    checks = []
    for path, kind, obj in loaded:
        for name, probe in _invariants(kind, obj):
            probe()
            checks.append({"input": path, "invariant": name, "ok": True})
    doc = {"format": io.FORMAT, "kind": "report", "checks": checks}
    _emit(args, doc)
    return 0


# --- output plumbing --------------------------------------------------------


def _emit(args, payload):
    text = io.dumps(payload) if isinstance(payload, dict) else payload
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _emit_object(args, kind, obj, default_format="json"):
    fmt = args.format or default_format
    if fmt == "svg":
        _emit(args, plotmod.render_svg(kind, obj))
    else:
        _emit(args, io.document(kind, obj))


# --- subcommands ------------------------------------------------------------


def cmd_check_balanced(args):
    ws, loaded = _load_inputs(args, ("cycle_file",),
                              [("cycle", "measure")])
    if args.check:
        return _run_check(args, loaded)
    c = loaded[0][2]
    ok, witness = cym.check_balanced(c)
    doc = {"format": io.FORMAT, "kind": "verdict",
           "balanced": ok, "verdict": "BALANCED" if ok else "UNBALANCED",
           "witness": None}
    if witness is not None:
        ids = sorted(
            i for i, wc in enumerate(c.cells)
            if wc.cell.sedentarity == witness.sedentarity
            and poly.contains_polyhedron(wc.cell.finite_part,
                                         witness.finite_part))
        entry = io.cell_body(witness)
        entry["cell_ids"] = ids
        doc["witness"] = entry
    _emit(args, doc)
    return 0


def cmd_refine_simplicial(args):
    ws, loaded = _load_inputs(args, ("complex_file",), [("complex",)])
    if args.check:
        return _run_check(args, loaded)
    refined = cxm.simplicial_refine(loaded[0][2], ws.fan)
    _emit_object(args, "complex", refined)
    return 0


def cmd_subdivide(args):
    ws, loaded = _load_inputs(args, ("family_file",), [("family",)])
    if args.check:
        return _run_check(args, loaded)
    out = cxm.subdivide_for_family(list(loaded[0][2]), ws.fan)
    _emit_object(args, "complex", out)
    return 0


def cmd_corner_locus(args):
    ws, loaded = _load_inputs(args, ("function_file", "cycle_file"),
                              [("function",), ("cycle", "measure")])
    if args.check:
        return _run_check(args, loaded)
    out = dvm.corner_locus(loaded[0][2], loaded[1][2])
    _emit_object(args, "cycle", out)
    return 0


def cmd_intersect(args):
    ws, loaded = _load_inputs(args, ("divisor_file", "cycle_file"),
                              [("divisor",), ("cycle", "measure")])
    if args.check:
        return _run_check(args, loaded)
    out = dvm.toric_intersect(loaded[0][2], loaded[1][2])
    _emit_object(args, "cycle", out)
    return 0


def cmd_ma(args):
    ws, loaded = _load_inputs(args, ("greens_file", "cycle_file"),
                              [("greens",), ("cycle", "measure")])
    if args.check:
        return _run_check(args, loaded)
    greens = [ht.green_refined(phi) for phi in loaded[0][2]]
    mu = ht.ma_measure(greens, loaded[1][2])
    _emit_object(args, "measure", mu)
    return 0


def cmd_height(args):
    ws, loaded = _load_inputs(args, ("greens_file", "cycle_file"),
                              [("greens",), ("cycle", "measure")])
    if args.check:
        return _run_check(args, loaded)
    greens = [ht.green_refined(phi) for phi in loaded[0][2]]
    c = loaded[1][2]
    total, steps = ht.height_breakdown(greens, c)
    mass = steps[0][1] if steps else Fraction(0)
    doc = {"format": io.FORMAT, "kind": "height",
           "height": rational_to_str(total),
           "ma_total_mass": rational_to_str(mass),
           "per_term_breakdown": [
               {"term": j, "integral": rational_to_str(v),
                "measure_mass": rational_to_str(m)}
               for j, (v, m) in enumerate(steps)]}
    _emit(args, doc)
    return 0


def cmd_plot(args):
    ws, loaded = _load_inputs(args, ("object_file",), [_PLOTTABLE])
    if args.check:
        return _run_check(args, loaded)
    path, kind, obj = loaded[0]
    _emit_object(args, kind, obj, default_format="svg")
    return 0


# --- parser -----------------------------------------------------------------


_COMMANDS = (
    ("check-balanced", cmd_check_balanced, ("cycle_file",),
     "test the balancing condition and report a verdict with a witness"),
    ("refine-simplicial", cmd_refine_simplicial, ("complex_file",),
     "refine a polyhedral complex into a simplicial one"),
    ("subdivide", cmd_subdivide, ("family_file",),
     "build a simplicial complex containing every family member as a "
     "union of cells"),
    ("corner-locus", cmd_corner_locus, ("function_file", "cycle_file"),
     "intersect a piecewise affine function with a cycle"),
    ("intersect", cmd_intersect, ("divisor_file", "cycle_file"),
     "intersect a toric divisor with a cycle"),
    ("ma", cmd_ma, ("greens_file", "cycle_file"),
     "the Monge-Ampere measure of Green functions on a cycle"),
    ("height", cmd_height, ("greens_file", "cycle_file"),
     "the local height of a cycle against Green functions"),
    ("plot", cmd_plot, ("object_file",),
     "render a rank-two object as an SVG picture"),
)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="tropkern",
        description="Exact computations with tropical cycles in "
                    "compactified toric spaces.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    for name, func, slots, help_text in _COMMANDS:
        p = sub.add_parser(name, help=help_text, description=help_text)
        for slot in slots:
            p.add_argument(slot, nargs="?", metavar=slot.upper(),
                           help="path to the %s document"
                           % slot.replace("_file", "").replace("_", " "))
        p.add_argument("--input", metavar="PATH",
                       help="fill the first missing input slot")
        p.add_argument("--fan", metavar="PATH",
                       help="reference fan document for inputs that do "
                       "not embed one")
        p.add_argument("--out", metavar="PATH",
                       help="write the result to this file instead of "
                       "stdout")
        p.add_argument("--format", choices=("json", "svg"),
                       help="output format (default json; plot defaults "
                       "to svg)")
        p.add_argument("--check", action="store_true",
                       help="run the invariant suite on the inputs and "
                       "exit without running the operation")
        p.set_defaults(func=func, slots=slots)
    return ap


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValidationError as exc:
        print("validation error at %s: %s" % (exc.path or "/", exc.message),
              file=sys.stderr)
        return 2
    except TropkernError as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 3
    except ValueError as exc:
        print("validation error at /: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("cannot read or write a file: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

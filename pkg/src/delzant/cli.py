"""Command-line front end: JSON in/out, subcommand dispatch, SVG rendering.

Exit codes: 0 success/affirmative, 1 negative verdict (Distinct, not
Delzant, infeasible, ...), 2 usage or parse error, 3 inconclusive.
Scalars on the command line and in files use the grammar
``INT | INT/INT | RAT+RAT√D | RAT-RAT√D`` (``sqrt`` is accepted for ``√``);
windows are comma-separated ``lo..hi`` ranges with ``*`` for unbounded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import chekanov, lattice, monodromy, orbit, probe, reduction, spaces
from .errors import (
    DelzantError,
    DimensionMismatch,
    HitsLowerFace,
    InfeasibleEmpty,
    LengthMismatch,
    NonPositiveEntry,
    NormalsDoNotSpan,
    NotAdmissible,
    NotDelzant,
    NotEquivalent,
    NotInterior,
    NotOnProbe,
    NotPlanar,
    NotPrimitive,
    NotReductionType,
    NotTransverse,
    ParseError,
    SliceInsideFacet,
    SliceMissesPolytope,
    UnboundedRay,
    UnknownPreset,
    ValidationError,
    WordSearchExhausted,
)
from .lattice import ExactScalar
from .polytope import DelzantPolytope
from .reduction import AffineSlice

_USAGE_ERRORS = (
    ParseError,
    ValidationError,
    UnknownPreset,
    NotInterior,
    DimensionMismatch,
    NotPrimitive,
    NonPositiveEntry,
    LengthMismatch,
    InfeasibleEmpty,
    NotPlanar,
    NotOnProbe,
)
_NEGATIVE_ERRORS = (
    NotDelzant,
    UnboundedRay,
    HitsLowerFace,
    NotTransverse,
    NotAdmissible,
    SliceMissesPolytope,
    SliceInsideFacet,
    NormalsDoNotSpan,
    NotReductionType,
    NotEquivalent,
)

_SCALAR_RE = re.compile(
    r"^(?P<rat>-?\d+(?:/\d+)?)"
    r"(?:(?P<sign>[+-])(?P<quad>\d+(?:/\d+)?)(?:√|sqrt)(?P<disc>\d+))?$"
)


def parse_scalar(text: str, field_disc: int = 1) -> ExactScalar:
    m = _SCALAR_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad scalar {text!r}")
    rat = Fraction(m.group("rat"))
    if m.group("quad") is None:
        return ExactScalar(rat)
    quad = Fraction(m.group("quad"))
    if m.group("sign") == "-":
        quad = -quad
    disc = int(m.group("disc"))
    if disc != field_disc:
        raise ParseError(
            f"scalar {text!r} lives in Q(sqrt({disc})) but the session field"
            f" is Q(sqrt({field_disc}))"
        )
    return ExactScalar(rat, quad, disc)


def parse_point(text: str, field_disc: int = 1):
    return tuple(parse_scalar(part, field_disc) for part in text.split(","))


def parse_window(text: str, field_disc: int = 1):
    out = []
    for part in text.split(","):
        if ".." not in part:
            raise ParseError(f"bad window range {part!r}, expected lo..hi")
        lo, hi = part.split("..", 1)
        out.append(
            (
                None if lo in ("*", "") else parse_scalar(lo, field_disc),
                None if hi in ("*", "") else parse_scalar(hi, field_disc),
            )
        )
    return tuple(out)


def parse_polytope(source: str) -> DelzantPolytope:
    """A polytope from a `preset:` URI or a JSON file path."""
    if source.startswith("preset:"):
        return spaces.preset(source[len("preset:"):])
    try:
        with open(source) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source} is not valid JSON: {exc}")
    return polytope_from_data(data, source)


def polytope_from_data(data, source="<data>") -> DelzantPolytope:
    try:
        dim = int(data["dim"])
        disc = int(data.get("field", {}).get("D", 1))
        facets = []
        for i, entry in enumerate(data["facets"]):
            normal = tuple(int(c) for c in entry["normal"])
            offset = entry["offset"]
            offset = (
                parse_scalar(offset, disc)
                if isinstance(offset, str)
                else ExactScalar.of(offset)
            )
            facets.append((normal, offset))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{source}: malformed polytope data ({exc})")
    return DelzantPolytope(dim, facets, disc)


def _orbit_params(args, poly):
    window = parse_window(args.window, poly.field_disc) if args.window else None
    if window is not None and len(window) != poly.dim:
        raise ParseError("window does not match the polytope dimension")
    return orbit.OrbitParams(
        max_norm=args.max_norm,
        max_points=args.max_points,
        max_depth=args.max_depth,
        window=window,
    )


# ---------------------------------------------------------------------------
# Subcommand handlers: return (exit_code, payload).
# ---------------------------------------------------------------------------


def _cmd_check(args):
    poly = parse_polytope(args.polytope)
    try:
        vertices = poly.check_delzant()
    except NotDelzant as exc:
        return 1, {
            "delzant": False,
            "vertex": [str(c) for c in exc.vertex],
            "det": exc.det,
            "reason": str(exc),
        }
    return 0, {
        "delzant": True,
        "vertices": [
            {
                "point": [str(c) for c in v.point],
                "active": list(v.active),
                "det": v.det,
            }
            for v in vertices
        ],
    }


def _cmd_invariants(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.point, poly.field_disc)
    inv = poly.invariants(x)
    d, active = poly.de_germ(x)
    return 0, {
        "invariants": inv.to_json(),
        "ell": [str(v) for v in poly.ell(x)],
        "de_germ": {"d": str(d), "active": list(active)},
        "reduction_type": poly.normals_span(),
    }


def _cmd_probes(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.point, poly.field_disc)
    probes = probe.enumerate_probes(poly, x, args.max_norm)
    return 0, {"count": len(probes), "probes": [s.to_json() for s in probes]}


def _cmd_partner(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.point, poly.field_disc)
    v = tuple(int(c) for c in args.dir.split(","))
    sigma = probe.shoot(poly, x, v)
    y = probe.partner(sigma, x)
    return 0, {
        "probe": sigma.to_json(),
        "partner": [str(c) for c in y],
        "involution": [list(r) for r in probe.involution(sigma)],
    }


def _cmd_orbit(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.point, poly.field_disc)
    graph = orbit.explore(poly, x, _orbit_params(args, poly))
    return 0, graph.to_json()


def _cmd_monodromy(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.point, poly.field_disc)
    graph = orbit.explore(poly, x, _orbit_params(args, poly))
    group = monodromy.holonomy_group(graph, x, cap=args.cap)
    return 0, {"orbit_size": len(graph.nodes), "group": group.to_json()}


def _cmd_ambient(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.source, poly.field_disc)
    y = parse_point(args.target, poly.field_disc)
    outcome = monodromy.solve_ambient(poly, x, y, bound=args.bound)
    code = {"solutions": 0, "infeasible": 1, "inconclusive": 3}[outcome.kind]
    return code, outcome.to_json()


def _cmd_equivalent(args):
    poly = parse_polytope(args.polytope)
    x = parse_point(args.source, poly.field_disc)
    y = parse_point(args.target, poly.field_disc)
    verdict = orbit.decide(poly, x, y, _orbit_params(args, poly))
    code = {"equivalent": 0, "distinct": 1, "unknown": 3}[verdict.kind]
    return code, verdict.to_json()


def _cmd_reduce(args):
    poly = parse_polytope(args.polytope)
    try:
        data = json.loads(args.slice)
        sl = AffineSlice(
            [parse_scalar(str(c), poly.field_disc) for c in data["base"]],
            data["dirs"],
        )
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad slice {args.slice!r}: {exc}")
    result = reduction.reduce(poly, sl)
    return 0, result.to_json()


def _cmd_lift(args):
    poly = parse_polytope(args.polytope)
    lift = reduction.delzant_lift(poly)
    payload = lift.to_json()
    if args.point:
        x = parse_point(args.point, poly.field_disc)
        payload["lifted_point"] = [str(v) for v in lift.lift_point(x)]
    return 0, payload


def _cmd_chekanov(args):
    disc = args.field
    a = parse_point(args.tuple, disc)
    red = chekanov.reduce(a)
    payload = {"reduced": red.to_json(), "gamma": chekanov.gamma(a).to_json()}
    if not args.to:
        return 0, payload
    b = parse_point(args.to, disc)
    eq = chekanov.equivalent(a, b)
    payload["equivalent"] = eq
    if not eq:
        return 1, payload
    try:
        word = chekanov.probe_word(a, b)
        payload["word"] = word.to_json()
        payload["replay"] = [str(v) for v in chekanov.replay(a, word)]
    except WordSearchExhausted as exc:
        payload["word"] = None
        payload["note"] = str(exc)
        return 3, payload
    return 0, payload


def _cmd_render(args):
    poly = parse_polytope(args.polytope)
    window = parse_window(args.window, poly.field_disc)
    if len(window) != 2 or any(lo is None or hi is None for lo, hi in window):
        raise ParseError("render needs a bounded 2-coordinate window")
    layers = {"probes": [], "orbits": [], "labels": args.labels}
    if args.probes_at:
        x = parse_point(args.probes_at, poly.field_disc)
        layers["probes"] = probe.enumerate_probes(poly, x, args.max_norm)
    if args.orbit_of:
        for idx, text in enumerate(args.orbit_of):
            x = parse_point(text, poly.field_disc)
            params = orbit.OrbitParams(
                max_norm=args.max_norm,
                max_points=args.max_points,
                max_depth=args.max_depth,
                window=window,
            )
            layers["orbits"].append(orbit.explore(poly, x, params).nodes)
    return 0, render_svg(poly, window, layers)


def _cmd_preset_list(args):
    out = []
    for name in spaces.PRESET_NAMES:
        sample = name if name != "cn(n)" else "cn(3)"
        poly = spaces.preset(sample)
        out.append(
            {
                "id": name,
                "example": f"preset:{sample}",
                "dim": poly.dim,
                "facets": poly.nfacets,
            }
        )
    return 0, {"presets": out}


# ---------------------------------------------------------------------------
# SVG rendering (dimension 2 only).
# ---------------------------------------------------------------------------


def _facet_segment(poly, index, window):
    """Endpoints of facet(index) within the polytope and the window."""
    f = poly.facets[index]
    n1, n2 = f.normal
    norm2 = n1 * n1 + n2 * n2
    base = (
        ExactScalar.of(Fraction(-n1, norm2)) * f.offset,
        ExactScalar.of(Fraction(-n2, norm2)) * f.offset,
    )
    d = (-n2, n1)
    lo, hi = None, None
    rows = [(g.normal, g.offset) for j, g in enumerate(poly.facets) if j != index]
    (wx, wy) = window
    rows.append(((1, 0), -wx[0]))
    rows.append(((-1, 0), wx[1]))
    rows.append(((0, 1), -wy[0]))
    rows.append(((0, -1), wy[1]))
    for normal, offset in rows:
        slope = lattice.dot(d, normal)
        const = lattice.dot(base, normal) + offset
        slope = ExactScalar.of(slope)
        if slope.sign() > 0:
            bound = -const / slope
            lo = bound if lo is None or bound > lo else lo
        elif slope.sign() < 0:
            bound = -const / slope
            hi = bound if hi is None or bound < hi else hi
        elif ExactScalar.of(const).sign() < 0:
            return None
    if lo is None or hi is None or lo > hi:
        return None
    p = lambda t: (float(base[0] + t * d[0]), float(base[1] + t * d[1]))
    return p(lo), p(hi)


_PALETTE = ("#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085")


def render_svg(poly: DelzantPolytope, window, layers=None) -> str:
    """An SVG panel: facet lines clipped to the window, probes, orbit dots."""
    if poly.dim != 2:
        raise NotPlanar(f"rendering needs dimension 2, got {poly.dim}")
    layers = layers or {}
    (x0, x1), (y0, y1) = (
        (float(window[0][0]), float(window[0][1])),
        (float(window[1][0]), float(window[1][1])),
    )
    scale = 100.0
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale
    tx = lambda p: ((p[0] - x0) * scale, (y1 - p[1]) * scale)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}"'
        f' height="{height:.0f}" viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<defs><clipPath id="win"><rect x="0" y="0" width="{width:.2f}"'
        f' height="{height:.2f}"/></clipPath></defs>',
        '<g clip-path="url(#win)">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}"'
        ' fill="#fdfdfd"/>',
    ]
    for i in range(poly.nfacets):
        seg = _facet_segment(poly, i, window)
        if seg is None:
            continue
        (ax, ay), (bx, by) = tx(seg[0]), tx(seg[1])
        parts.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}"'
            ' stroke="#222" stroke-width="2"/>'
        )
    for sigma in layers.get("probes", ()):
        a = tx((float(sigma.entry_point[0]), float(sigma.entry_point[1])))
        e = sigma.exit_point
        b = tx((float(e[0]), float(e[1])))
        parts.append(
            f'<line x1="{a[0]:.2f}" y1="{a[1]:.2f}" x2="{b[0]:.2f}"'
            f' y2="{b[1]:.2f}" stroke="#888" stroke-width="1"'
            ' stroke-dasharray="6 3"/>'
        )
    for idx, points in enumerate(layers.get("orbits", ())):
        color = _PALETTE[idx % len(_PALETTE)]
        for p in points:
            cx, cy = tx((float(p[0]), float(p[1])))
            parts.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="{color}"/>'
            )
            if layers.get("labels"):
                label = ",".join(str(c) for c in p)
                parts.append(
                    f'<text x="{cx + 6:.2f}" y="{cy - 6:.2f}" font-size="10">'
                    f"{label}</text>"
                )
    parts.append("</g></svg>")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# Dispatch.
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="delzant",
        description="Exact toric moment-polytope and probe-equivalence toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("check", _cmd_check, help="verify the Delzant vertex condition")
    p.add_argument("polytope")

    p = add("invariants", _cmd_invariants, help="Chekanov invariants of a fibre")
    p.add_argument("polytope")
    p.add_argument("--point", required=True)

    p = add("probes", _cmd_probes, help="enumerate symmetric probes through a point")
    p.add_argument("polytope")
    p.add_argument("--point", required=True)
    p.add_argument("--max-norm", type=int, required=True)

    p = add("partner", _cmd_partner, help="partner point along one probe")
    p.add_argument("polytope")
    p.add_argument("--point", required=True)
    p.add_argument("--dir", required=True)

    for name, handler in (("orbit", _cmd_orbit), ("monodromy", _cmd_monodromy)):
        p = add(name, handler, help=f"{name} of a fibre under probe moves")
        p.add_argument("polytope")
        p.add_argument("--point", required=True)
        p.add_argument("--max-norm", type=int, required=True)
        p.add_argument("--window")
        p.add_argument("--max-points", type=int, default=500)
        p.add_argument("--max-depth", type=int, default=32)
        if name == "monodromy":
            p.add_argument("--cap", type=int, default=64)

    p = add("ambient", _cmd_ambient, help="solve the ambient monodromy constraints")
    p.add_argument("polytope")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--bound", type=int, default=3)

    p = add("equivalent", _cmd_equivalent, help="decide fibre equivalence")
    p.add_argument("polytope")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--max-norm", type=int, default=3)
    p.add_argument("--window")
    p.add_argument("--max-points", type=int, default=500)
    p.add_argument("--max-depth", type=int, default=16)

    p = add("reduce", _cmd_reduce, help="toric reduction along a slice")
    p.add_argument("polytope")
    p.add_argument("--slice", required=True, help='JSON {"base": [...], "dirs": [[...]]}')

    p = add("lift", _cmd_lift, help="present the polytope as an orthant reduction")
    p.add_argument("polytope")
    p.add_argument("--point")

    p = add("chekanov", _cmd_chekanov, help="product-torus classification")
    p.add_argument("--tuple", required=True)
    p.add_argument("--to")
    p.add_argument("--field", type=int, default=1, help="square-free D of Q(sqrt D)")

    p = add("render", _cmd_render, help="SVG of a planar polytope")
    p.add_argument("polytope")
    p.add_argument("--window", required=True)
    p.add_argument("--probes-at")
    p.add_argument("--orbit-of", action="append")
    p.add_argument("--max-norm", type=int, default=2)
    p.add_argument("--max-points", type=int, default=200)
    p.add_argument("--max-depth", type=int, default=16)
    p.add_argument("--labels", action="store_true")

    add("preset-list", _cmd_preset_list, help="list the preset polytopes")
    return parser


_VALUE_FLAGS = frozenset(
    {
        "--point", "--dir", "--from", "--to", "--window", "--slice", "--tuple",
        "--probes-at", "--orbit-of",
    }
)


def _normalize_argv(argv):
    """Glue values onto their flags so leading-dash values parse.

    Lets invocations like ``--point -1/2,-1/5`` or
    ``--window -3..3,-1..1`` through argparse unchanged.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        code, payload = args.handler(args)
    except _NEGATIVE_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True))
        return 1
    except _USAGE_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return 2
    except DelzantError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return 2
    except Exception as exc:  # never a traceback on user input
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return 2
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Figure-style SVG panels: a polytope, its probes, and an orbit.

Writes half_strip_orbit.svg next to this script: the half-strip with all
probes through (0, 1/2) and the two-coloured orbits of (0, 1/2) and
(1/5, 1/2).
"""

import pathlib
from fractions import Fraction

from delzant import OrbitParams, explore, preset
from delzant.cli import render_svg
from delzant.probe import enumerate_probes

poly = preset("c_x_s2")
window = ((Fraction(-3, 2), 6), (Fraction(-3, 2), Fraction(3, 2)))
params = OrbitParams(max_norm=3, window=((-1, 6), (-1, 1)), max_points=60)

layers = {
    "probes": enumerate_probes(poly, (0, Fraction(1, 2)), 2),
    "orbits": [
        explore(poly, (0, Fraction(1, 2)), params).nodes,
        explore(poly, (Fraction(1, 5), Fraction(1, 2)), params).nodes,
    ],
    "labels": False,
}
svg = render_svg(poly, window, layers)
out = pathlib.Path(__file__).with_name("half_strip_orbit.svg")
out.write_text(svg)
print(f"wrote {out} ({len(svg)} bytes, "
      f"{svg.count('<circle')} orbit points, {svg.count('<line')} segments)")

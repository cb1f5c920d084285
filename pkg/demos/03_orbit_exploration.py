#!/usr/bin/env python3
"""Closing a fibre under probe moves, and deciding equivalence.

The explorer computes the breadth-first closure of a base point under all
partner moves; exact dedup makes the node set sound, windows and caps keep
it finite.  The decision procedure combines the invariant obstruction, the
path search, and the ambient integer solver.
"""

from fractions import Fraction

from delzant import OrbitParams, decide, explore, preset
from delzant.orbit import replay_path

h = Fraction(1, 2)

print("== monotone S2 x S2 ==")
s2s2 = preset("s2s2_monotone")
for x in ((Fraction(1, 5), h), (h, h), (0, h), (0, 0)):
    graph = explore(s2s2, x, OrbitParams(max_norm=2))
    pts = sorted(tuple(str(c) for c in p) for p in graph.nodes)
    print(f"  orbit of {tuple(str(Fraction(c)) for c in x)}: {len(pts)} points")
print("  (sizes 8 / 4 / 4 / 1: the square's symmetries, nothing more)")

print("\n== the strip: infinitely many probes, windowed exploration ==")
graph = explore(
    preset("ts1_x_s2"), (0, h),
    OrbitParams(max_norm=3, window=((-3, 3), (-1, 1))),
)
print(f"  |x1| <= 3 slice of the orbit: {len(graph.nodes)} points, "
      f"truncated = {graph.truncated}")

print("\n== accumulation in the 3d orthant ==")
graph = explore(
    preset("cn(3)"), (1, 2, 3),
    OrbitParams(max_norm=1, window=((0, 10),) * 3, max_points=200),
)
print(f"  orbit of (1,2,3) keeps {len(graph.nodes)} points inside [0,10]^3")
sample = [p for p in graph.nodes if p[0] == 1 and p[1] == 2][:8]
print(f"  among them: {[tuple(str(c) for c in p) for p in sample]}")

print("\n== decisions ==")
verdict = decide(preset("cn(2)"), (1, 3), (3, 1), OrbitParams(max_norm=1))
print(f"  T(1,3) vs T(3,1): {verdict.kind} via {len(verdict.path)} move(s)")
print(f"  replay confirms: {[str(c) for c in replay_path((1, 3), verdict.path)]}")

verdict = decide(
    preset("cp2"), (Fraction(-1, 2), Fraction(-1, 5)),
    (Fraction(-1, 2), Fraction(1, 10)),
    OrbitParams(max_norm=2, max_points=40),
)
print(f"  the equal-invariant projective-plane pair: {verdict.kind}")
print(f"    reason: {verdict.reason}")

verdict = decide(
    preset("c2_x_ts1"), (1, 2, 0), (1, 2, h),
    OrbitParams(max_norm=1, window=((0, 4), (0, 4), (-2, 2)), max_points=40),
)
print(f"  a non-orthant-reducible space stays honest: {verdict.kind}")
print(f"    reason: {verdict.reason}")

#!/usr/bin/env python3
"""Monodromy: holonomy of orbit graphs and ambient integer constraints.

Probe involutions composed around orbit-graph cycles generate the fibre's
monodromy group.  Independently, any ambient equivalence must solve an
integer system on the disk basis (distinguished classes permute, Maslov
two per column, areas transform to areas, second homology fixed); integer
infeasibility is certified exactly.
"""

from fractions import Fraction

from delzant import OrbitParams, explore, preset
from delzant.monodromy import check_ambient, holonomy_group, solve_ambient

h = Fraction(1, 2)
s2s2 = preset("s2s2_monotone")

print("== holonomy groups over the square ==")
for x, label in (((0, 0), "centre"), ((h, h), "diagonal"), ((0, h), "axis"),
                 ((Fraction(1, 5), h), "generic")):
    graph = explore(s2s2, x, OrbitParams(max_norm=2))
    group = holonomy_group(graph, x, cap=64)
    print(f"  {label:8s}: order {len(group.elements)}  {group.elements}")

print("\n== an infinite group, reported truncated ==")
graph = explore(preset("c_x_s2"), (1, 0),
                OrbitParams(max_norm=3, window=((-1, 6), (-1, 1))))
group = holonomy_group(graph, (1, 0), cap=20)
print(f"  truncated: {group.truncated}; sample elements:")
for m in group.elements[:5]:
    print(f"    {m}")
print("  (every element has the shape [[1,0],[2k,+-1]])")

print("\n== the ambient solver as an obstruction engine ==")
out = solve_ambient(s2s2, (0, 0), (0, 0), bound=3)
print(f"  self-maps of the monotone fibre: {out.kind}, induced maps "
      f"{sorted(set(s.induced for s in out.solutions))}")

out = solve_ambient(s2s2, (Fraction(1, 5), h), (Fraction(3, 10), h), bound=4)
print(f"  (1/5,1/2) -> (3/10,1/2): {out.kind}")
print(f"    certificate: {out.certificates[0]}")

cp2 = preset("cp2")
out = solve_ambient(cp2, (Fraction(-1, 2), Fraction(-1, 5)),
                    (Fraction(-1, 2), Fraction(1, 10)), bound=5)
print(f"  the projective-plane pair: {out.kind}")
print(f"    certificate: {out.certificates[0]}")

print("\n== checking one matrix against the four constraints ==")
A = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
report = check_ambient(s2s2, (0, 0), (0, 0), A)
print(f"  swapping two adjacent disks at the centre: "
      f"distinguished={report.distinguished}, maslov={report.maslov}, "
      f"area={report.area}, h2={report.h2}")
print("  (it fails exactly the fixed-second-homology constraint)")

#!/usr/bin/env python3
"""Symmetric probes: segments hitting two facet interiors transversely.

A probe through an interior point yields (a) a partner point whose fibre
is Hamiltonian isotopic and (b) an involution on the fibre's first
homology when the point is the midpoint.
"""

from fractions import Fraction

from delzant import preset
from delzant.errors import HitsLowerFace, NotTransverse, UnboundedRay
from delzant.probe import enumerate_probes, involution, partner, shoot

c2 = preset("cn(2)")
print("== the swap probe of the plane orthant ==")
sigma = shoot(c2, (1, 3), (1, -1))
print(f"  entry {[str(c) for c in sigma.entry_point]} on facet "
      f"{sigma.entry_facet}, exit {[str(c) for c in sigma.exit_point]} on "
      f"facet {sigma.exit_facet}, length {sigma.length}")
print(f"  partner of (1,3): {[str(c) for c in partner(sigma, (1, 3))]}")
print(f"  the midpoint (2,2) is fixed: "
      f"{[str(c) for c in partner(sigma, (2, 2))]}")

print("\n== rejections are exact decisions ==")
for v, exc in (((1, 0), UnboundedRay), ((1, 1), None)):
    try:
        shoot(c2, (1, 3), v)
        print(f"  direction {v}: valid")
    except (UnboundedRay, HitsLowerFace, NotTransverse) as e:
        print(f"  direction {v}: rejected ({type(e).__name__})")

s2s2 = preset("s2s2_monotone")
try:
    shoot(s2s2, (0, 0), (1, 1))
except HitsLowerFace as e:
    print(f"  main diagonal through the centre: rejected ({type(e).__name__})")

print("\n== homology involutions ==")
print(f"  horizontal probe at the centre: {involution(shoot(s2s2, (0, 0), (1, 0)))}")
x = (Fraction(1, 3), Fraction(1, 3))
print(f"  anti-diagonal at (1/3,1/3):     {involution(shoot(s2s2, x, (1, -1)))}")
cxs2 = preset("c_x_s2")
print(f"  shear probe in the half-strip:  {involution(shoot(cxs2, (1, 0), (-1, 1)))}")

print("\n== enumeration up to a direction cap ==")
probes = enumerate_probes(preset("ts1_x_s2"), (0, Fraction(1, 2)), 3)
print(f"  strip directions (|k| <= 3): {[p.direction for p in probes]}")

print("\n== the three-coordinate move of the 3d orthant ==")
c3 = preset("cn(3)")
sigma = shoot(c3, (1, 2, 3), (1, 1, -1))
print(f"  probe from {[str(c) for c in sigma.entry_point]} to "
      f"{[str(c) for c in sigma.exit_point]}")
print(f"  T(1,2,3) ~ T{tuple(str(c) for c in partner(sigma, (1, 2, 3)))}")

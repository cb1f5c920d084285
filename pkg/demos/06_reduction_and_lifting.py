#!/usr/bin/env python3
"""Toric reduction along slices, and presenting spaces as orthant quotients.

Restricting the facet functionals to an admissible affine slice produces
the moment polytope of the reduced space; a probe is exactly a
one-dimensional admissible slice and reduces to an interval of its length.
Conversely the distance map embeds any spanning-normal polytope into an
orthant, lifting fibres to product tori.
"""

from fractions import Fraction

from delzant import AffineSlice, preset
from delzant.chekanov import reduce as reduce_tuple
from delzant.reduction import admissible, delzant_lift, interval_length, reduce
from delzant.reduction import strip_width

print("== a probe is a 1-dimensional admissible slice ==")
c2 = preset("cn(2)")
sl = AffineSlice((1, 3), [(1, -1)])
report = admissible(c2, sl)
print(f"  admissible: {report.ok}; per-face certificates:")
for face in report.faces:
    print(f"    facets {face.active}: face basis {face.face_basis}, "
          f"generates = {face.generates}")
result = reduce(c2, sl)
print(f"  reduced polytope: interval of length "
      f"{interval_length(result.reduced)} (the probe's integral length)")

print("\n== an inadmissible slice, certified ==")
report = admissible(preset("s2s2_monotone"), AffineSlice((0, 0), [(1, 1)]))
print(f"  square diagonal admissible: {report.ok}")
for face in report.faces:
    if not face.generates:
        print(f"    corner {face.active} fails the lattice condition")

print("\n== the strip as a reduction of C^2 x T*S^1 ==")
result = reduce(
    preset("c2_x_ts1"), AffineSlice((1, 1, 0), [(0, 0, 1), (-1, 1, 0)])
)
print(f"  slice x1 + x2 = 2 reduces to a strip of integral width "
      f"{strip_width(result.reduced)}")
print(f"  the strip preset has width {strip_width(preset('ts1_x_s2'))}: "
      "same polytope up to relabeling")
t = (Fraction(7, 2), Fraction(1, 3))
print(f"  lifting {tuple(str(Fraction(c)) for c in t)} gives "
      f"{[str(c) for c in result.lift(t)]}")

print("\n== orthant lifts ==")
for name in ("cp2", "c_x_s2"):
    lift = delzant_lift(preset(name))
    print(f"  {name}: reduction kernel {lift.kernel}")
x = (Fraction(-1, 2), Fraction(-1, 5))
lift = delzant_lift(preset("cp2"))
lifted = lift.lift_point(x)
print(f"  the fibre over (-1/2,-1/5) lifts to the product torus "
      f"T({', '.join(str(v) for v in lifted)})")
inv = preset("cp2").invariants(x)
up = reduce_tuple(lifted)
print(f"  invariants downstairs (d={inv.d}, mult={inv.count}) equal the "
      f"lifted torus data (d={up.d}, mult={up.mult})")

try:
    delzant_lift(preset("ts1_x_s2"))
except Exception as exc:
    print(f"\n  the strip itself admits no orthant lift: {type(exc).__name__}")

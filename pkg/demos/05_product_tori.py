#!/usr/bin/env python3
"""Product tori in the orthant: complete invariants and constructive words.

Two positive tuples are equivalent iff their minimum, its multiplicity and
the subgroup generated by the excesses agree.  In the rational case an
explicit word of swap / three-coordinate moves is constructed by
subtractive Euclid on the excesses; every move replays as a probe.
"""

from fractions import Fraction

from delzant import chekanov, scalar

print("== invariants ==")
for a in ((1, 2, 3), (1, 1, 1), (Fraction(1, 2), Fraction(4, 5), Fraction(17, 10))):
    r = chekanov.reduce(a)
    print(f"  {tuple(str(Fraction(v)) for v in a)}: d={r.d}, mult={r.mult}, "
          f"excesses={[str(e) for e in r.entries]}")

print("\n== equivalences ==")
print(f"  T(1,2,3) ~ T(1,2,5): {chekanov.equivalent((1, 2, 3), (1, 2, 5))}")
print(f"  T(1,2,3) ~ T(1,3,5): {chekanov.equivalent((1, 2, 3), (1, 3, 5))} "
      "(excess subgroups Z vs 2Z)")

print("\n== integral affine length (rank-one classes) ==")
print(f"  (2,4)        -> {chekanov.integral_affine_length((2, 4))}")
print(f"  (3/10, 6/5)  -> "
      f"{chekanov.integral_affine_length((Fraction(3, 10), Fraction(6, 5)))}")
s2 = scalar(0, 1, 2)
print(f"  (sqrt2, 2sqrt2) -> {chekanov.integral_affine_length((s2, 2 * s2))}")

print("\n== constructive words ==")
word = chekanov.probe_word((1, 2, 3), (1, 2, 7))
print(f"  word for T(1,2,3) -> T(1,2,7): {word.to_json()}")
state = (1, 2, 3)
print(f"    {tuple(str(Fraction(c)) for c in state)}")
for move in word.moves:
    state = chekanov.replay(state, chekanov.ProbeWord((move,)))
    print(f"    -> {tuple(str(c) for c in state)}   after {move.to_json()}")

print("\n== a quadratic-field example ==")
a = (1, 1 + s2, 3)
b = (1, 1 + s2, 3 + s2)
print(f"  T(1, 1+sqrt2, 3) ~ T(1, 1+sqrt2, 3+sqrt2): {chekanov.equivalent(a, b)}")
word = chekanov.probe_word(a, b)
print(f"  realized by {len(word)} moves; replay gives "
      f"{[str(c) for c in chekanov.replay(a, word)]}")
print("  (rank-two excess subgroups have no finite normal form, so such")
print("   words come from bounded search and may be refused honestly)")

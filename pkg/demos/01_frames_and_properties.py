"""Build finite Boolean frames and test the ten equational properties.

A Boolean frame is a powerset Boolean algebra plus one arbitrary unary
operation.  Wheel frames (an n-cycle with tolerance-1 adjacency and a hub
world related to everything) are the workhorse finite examples: normal,
unit-preserving, additive, extensive, and symmetric, but not idempotent.
"""

from cep_lab import (EXHAUSTIVE, PROPERTIES, check_property, identity_frame,
                     negation_frame, wheel)

w5 = wheel(5)
print(f"wheel(5): {w5.alg.size} elements on {w5.alg.atom_count} atoms")

hub = w5.alg.element(1 << 5)
print(f"f({{hub}}) = {w5.apply(hub)}  (the hub sees every world)")
one_world = w5.alg.element(1)
print(f"f({{0}})  = {w5.apply(one_world)}  (its two neighbours plus the hub)")
print(f"f(f({{0}})) = {w5.apply(w5.apply(one_world))}  (tops out in two steps)")
print()

print("property profile of wheel(5):")
for prop in PROPERTIES:
    verdict = check_property(w5, prop, EXHAUSTIVE)
    print(f"  {prop:18s} {verdict.status}")
print()

print("counterexamples come back with the least witness:")
v = check_property(negation_frame(1), "monotone", EXHAUSTIVE)
print(f"  complement frame, monotone: {v.status} at "
      f"x={v.witness['x'].bits}, y={v.witness['y'].bits}")

v = check_property(identity_frame(3), "extensive", EXHAUSTIVE)
print(f"  identity frame, extensive: {v.status}")

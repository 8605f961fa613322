"""Congruence lattices, simplicity, and congruence-extension checking.

In a finite Boolean frame, congruences correspond to the "congruential"
carrier elements, so the whole lattice is computable by one scan per
element, and simplicity needs only a decreasing fixpoint per coatom.
"""

from cep_lab import (cep_check_full, complex_algebra, congruence_lattice,
                     identity_frame, is_congruential, is_simple, KripkeFrame,
                     largest_congruential_below, negation_frame, neg_op,
                     wheel)
from cep_lab.cli import export_lattice

four_corner = identity_frame(2)
lat = congruence_lattice(four_corner)
print(f"identity frame on 2 atoms: {len(lat)} congruences, "
      f"{len(lat.nontrivial())} non-trivial")
print("its congruence order, as DOT:")
print(export_lattice(four_corner, None))

w5 = wheel(5)
coatom = w5.alg.coatoms()[0]
print(f"wheel(5): largest congruential element below a coatom = "
      f"{largest_congruential_below(w5, coatom).bits:#x}")
print(f"wheel(5) simple: {is_simple(w5)}")
print(f"wheel(5) congruences: {[hex(e.bits) for e in congruence_lattice(w5).elements]}")
print()

print("additive frames always extend congruences:")
k = KripkeFrame((0, 1, 2), frozenset({(0, 1), (1, 2), (2, 0)}))
frame = complex_algebra(k)
print(f"  3-world complex algebra: cep_check_full -> "
      f"{'holds' if cep_check_full(frame).holds else 'fails'}")
print(f"  complement frame:        cep_check_full -> "
      f"{'holds' if cep_check_full(negation_frame(2)).holds else 'fails'}")
print()

print("replacing f by its pointwise complement keeps every congruence:")
anti = neg_op(frame)
same = congruence_lattice(frame).elements == congruence_lattice(anti).elements
print(f"  same congruential elements: {same}")
print(f"  is_congruential(frame, 0): {is_congruential(frame, frame.alg.zero)}")

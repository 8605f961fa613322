"""The sharp construction: a semi-complemented square of a wheel frame.

Border pairs map through f (or its complement conjugate); interior pairs
land on the bottom or top pair under a complement-symmetric pattern, so
the result satisfies f(-x) = -f(x) everywhere.  Because a wheel tops out
in two steps, identities of the wheel correspond to transfer clauses of
the sharp frame, and the sharp frame is simple without the CEP.
"""

from cep_lab import (Subalgebra, check_clause, check_identity,
                     check_property, cep_refute, is_simple, make_clause,
                     parse_identity, sharp, wheel)

w5 = wheel(5)
sh = sharp(w5)
print(f"sharp(wheel 5): {sh.alg.size} elements")
print(f"  semi-complemented: {check_property(sh, 'semi_complemented').status}")
print(f"  normal/unit:       {check_property(sh, 'normal').status} / "
      f"{check_property(sh, 'unit_preserving').status}")
print(f"  simple:            {is_simple(sh)}")

low = (1 << 6) - 1
corners = Subalgebra(frozenset(sh.alg.element(b)
                               for b in (0, low, low << 6, sh.alg.mask)))
refute = cep_refute(sh, corners, sh.alg.element(low))
print(f"  corner congruence refuted: {refute.refuted} "
      f"(witness {refute.witness.bits:#x})")
print()

print("identities of the wheel match k=2 transfer clauses of the sharp frame:")
for text in ("x & f(x) = x", "f(x) = x", "f(-x) = -f(x)"):
    e = parse_identity(text)
    base = check_identity(w5, e).holds
    lifted = check_clause(sh, make_clause("psi", e, 2)).holds
    marker = "==" if base == lifted else "!="
    print(f"  {text:18s} wheel={base!s:5s} {marker} sharp-clause={lifted!s:5s}")
print()

sh7 = sharp(wheel(7))
print(f"sharp(wheel 7): {sh7.alg.size} elements; simple: {is_simple(sh7)}")

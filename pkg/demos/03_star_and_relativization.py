"""The star construction: square a frame, send interior pairs to the top.

Whenever the base frame has two nonzero elements with disjoint operation
images, the squared frame is simple, yet its four-corner subalgebra has
two nontrivial congruences; those cannot extend, so the congruence
extension property fails.  Identities survive the construction exactly,
via relativization to a mixed corner.
"""

from cep_lab import (check_identity, congruence_lattice, cep_check_full,
                     cep_refute, fix_variable, frame_product,
                     generate_subalgebra, identity_frame, is_simple,
                     parse_identity, relativize_identity, star,
                     subalgebra_frame, wheel)

base = frame_product(identity_frame(1), identity_frame(1))
st = star(base)
print(f"star of the 2-atom identity frame: {st.alg.size} elements")
print(f"  simple: {is_simple(st)}")

corners = generate_subalgebra(st, (st.alg.element(0b1100),))
small, _ = subalgebra_frame(st, corners)
lat = congruence_lattice(small)
print(f"  four-corner subalgebra: {len(lat)} congruences, "
      f"{len(lat.nontrivial())} non-trivial")

verdict = cep_check_full(st)
print(f"  full CEP check: {'holds' if verdict.holds else 'fails'} "
      f"(witness {verdict.witness.bits:#x})")
refute = cep_refute(st, corners, st.alg.element(0b0011))
print(f"  corner congruence at <0,1>: refuted={refute.refuted}, "
      f"witness <1,0> = {refute.witness.bits:#06b}")
print()

print("identities transfer through relativization at a mixed corner:")
w5 = wheel(5)
stw = star(w5)
corner = stw.alg.element(((1 << 6) - 1) << 6)   # <1,0>
for text in ("f(0) = 0", "f(x) = x", "f(x | y) = f(x) | f(y)"):
    e = parse_identity(text)
    base_holds = check_identity(w5, e).holds
    rel = fix_variable(relativize_identity(e, "relv"), "relv", corner)
    lifted = check_identity(stw, rel).holds
    print(f"  {text:28s} base={base_holds!s:5s} relativized={lifted!s:5s}")

"""Exact arithmetic on eventually periodic sets and the three infinite
frame families over the powerset of the naturals.

Family A is extensive, family B contractive, family C subadditive; each is
parameterized by a set X, and a single ground identity per n reads X back
off the algebra, which is what separates the generated varieties.
"""

from cep_lab import (EVENS, MULT4, NATS, Sampled, check_identity,
                     check_property, classify, co_singleton_set, ep_join,
                     ep_neg, eval_term, family_frame, finite_set,
                     make_periodic, nbar, parse_identity)

e_no_2_plus_5 = make_periodic(2, (0,), {2: False, 5: True})
print("classify recognises the structural shapes the frame rules branch on:")
for s in (finite_set((0, 1, 2)), MULT4, co_singleton_set(3), e_no_2_plus_5, NATS):
    print(f"  {s!r:40s} -> {classify(s).variant}")
print()

fa = family_frame("A", finite_set((1, 3)))
print("extensive family with X = {1, 3}:")
print(f"  f(empty) = {fa.apply(finite_set(()))!r}")
print(f"  f(2E)    = {fa.apply(MULT4)!r}")
print(f"  sampled extensiveness: "
      f"{check_property(fa, 'extensive', Sampled(5000, 0)).status}")
for n in range(5):
    ident = parse_identity(f"f(-({'f(' * (n + 1)}0{')' * (n + 1)})) = 1")
    print(f"  n={n}: f(-f^{n + 1}(0)) = 1 is {check_identity(fa, ident).status}"
          f"   (in X: {n in (1, 3)})")
print()

fc = family_frame("C", finite_set((3, 5)))
print("subadditive family with X = {3, 5}:")
print(f"  sampled subadditivity: "
      f"{check_property(fc, 'subadditive', Sampled(5000, 0)).status}")
print(f"  the singleton macro: nbar(4) evaluates to {eval_term(fc, nbar(4), {})!r}")
for n in (3, 4, 5):
    ident = parse_identity(f"g(-(nbar {n})) = -(nbar {n})")
    print(f"  n={n}: g(-nbar) fixed is {check_identity(fc, ident).status}"
          f"   (in X: {n in (3, 5)})")
print()

fb = family_frame("B", finite_set((2,)))
print("contractive family: h(N) =", repr(fb.apply(NATS)))
print("union of evens and odds round-trips:",
      ep_join(EVENS, ep_neg(EVENS)) == NATS)

"""Forcing traces: machine-checked CEP refutations for infinite frames.

The infinite family frames cannot be searched exhaustively, so their CEP
failures are witnessed by replayable derivations: starting from generator
pairs inside the evens-generated subalgebra (with biconditionals in the
infinitely-many-odds filter), each step applies a sound congruence rule,
and the chain ends by collapsing the whole algebra.  The checker validates
every side condition and rejects any corrupted step.
"""

from cep_lab import (BUILTIN_TRACES, TraceStep, family_frame, finite_set,
                     four_block_predicate, infinite_odds_filter, replay_trace)

x = finite_set((1, 3))
for name, (family, make) in sorted(BUILTIN_TRACES.items()):
    frame = family_frame(family, x)
    trace = make()
    report = replay_trace(frame, four_block_predicate, infinite_odds_filter,
                          trace)
    print(f"trace {name!r} on family {family}: "
          f"{'valid' if report.valid else 'invalid'} ({len(trace)} steps)")
    for i, step in enumerate(trace, start=1):
        refs = f" <- {list(step.refs)}" if step.refs else ""
        op = f" [{step.op}]" if step.op else ""
        elems = " ".join(repr(e) for e in step.elements)
        print(f"    {i}. {step.kind}{op} {elems}{refs}")
    print()

print("corrupting a premise reference is caught at the right step:")
bad = list(BUILTIN_TRACES["ext2"][1]())
bad[2] = TraceStep("fstep", (), (9,))
report = replay_trace(family_frame("A", x), four_block_predicate,
                      infinite_odds_filter, tuple(bad))
print(f"  -> valid={report.valid}, step={report.step}, reason={report.reason!r}")

"""Congruence lattices, simplicity, subalgebras, and CEP checking.

Congruences of a finite Boolean frame correspond to congruential elements
(principal filters whose filter is compatible with the operation), so the
whole congruence lattice is a subset of the carrier.  Deciding simplicity
runs one decreasing fixpoint per coatom; full CEP checking enumerates
subalgebras only on tiny carriers; for the infinite symbolic frames, CEP
failure is witnessed by replaying a checked forcing trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Element, ResourceLimitError, UsageError, ValidationError
from .frames import FiniteFrame, SymbolicFrame
from .periodic import (EMPTY, EVENS, MULT4, NATS, ODDS, EPSet,
                       co_initial_segment_set, ep_bicond, ep_join, ep_leq,
                       ep_meet, ep_neg, finite_set)

CEP_FULL_CAP = 16       # carrier cap for full subalgebra enumeration
LATTICE_CAP = 4096      # carrier cap for whole-lattice computation


def is_congruential(frame: FiniteFrame, a: Element) -> bool:
    """True iff the principal filter at `a` is compatible with the
    operation: f(x) and f(x meet a) agree below a, for every x."""
    frame.alg._own(a)
    t = frame.table
    ab = np.uint32(a.bits)
    xs = np.arange(frame.alg.size, dtype=np.uint32)
    return bool(((t & ab) == (t[xs & ab] & ab)).all())


def largest_congruential_below(frame: FiniteFrame, c: Element) -> Element:
    """Greatest congruential element below `c`: the limit of
    a -> a meet AND_x (f(x) <-> f(x meet a)), starting at c."""
    frame.alg._own(c)
    t = frame.table
    mask = np.uint32(frame.alg.mask)
    xs = np.arange(frame.alg.size, dtype=np.uint32)
    a = c.bits
    while True:
        agree = mask ^ (t ^ t[xs & np.uint32(a)])
        new = a & int(np.bitwise_and.reduce(agree))
        if new == a:
            return Element(a, frame.alg.atom_count)
        a = new


@dataclass(frozen=True)
class CongruenceLattice:
    """All congruential elements, ascending by encoding.  Smaller element =
    larger congruence: 1 is the diagonal, 0 the total congruence."""

    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)

    def nontrivial(self) -> list[Element]:
        return [e for e in self.elements if not (e.is_zero or e.is_one)]


def congruence_lattice(frame: FiniteFrame) -> CongruenceLattice:
    if frame.alg.size > LATTICE_CAP:
        raise ResourceLimitError(
            f"carrier {frame.alg.size} above lattice cap {LATTICE_CAP}; "
            "use is_simple or cep_refute instead"
        )
    t = frame.table
    xs = np.arange(frame.alg.size, dtype=np.uint32)
    n = frame.alg.atom_count
    out = []
    for a in range(frame.alg.size):
        ua = np.uint32(a)
        if bool(((t & ua) == (t[xs & ua] & ua)).all()):
            out.append(Element(a, n))
    return CongruenceLattice(tuple(out))


def is_simple(frame: FiniteFrame) -> bool:
    """Only trivial congruences exist.  Sound and complete: any nontrivial
    congruential element lies below some coatom, and the fixpoint finds the
    largest one below each."""
    for c in frame.alg.coatoms():
        if largest_congruential_below(frame, c).bits != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Subalgebras


@dataclass(frozen=True)
class Subalgebra:
    """Universe of a subframe: contains 0 and 1, closed under meet,
    complement, and the frame operation.  `complete` is False when a
    bounded symbolic closure stopped before reaching a fixpoint."""

    elements: frozenset
    complete: bool = True

    def __len__(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=lambda e: e.bits)


def _close(start, neg, meet, f, bound):
    elems = dict.fromkeys(start)
    queue = list(elems)
    complete = True
    while queue:
        u = queue.pop(0)
        candidates = [neg(u), f(u)]
        candidates.extend(meet(u, v) for v in list(elems))
        for c in candidates:
            if c not in elems:
                if len(elems) >= bound:
                    complete = False
                    return elems, complete
                elems[c] = None
                queue.append(c)
    return elems, complete


def generate_subalgebra(frame, gens, bound: int | None = None) -> Subalgebra:
    """Closure of gens plus {0, 1} under meet, complement, and f.

    Finite frames always reach the fixpoint.  Symbolic closures stop after
    `bound` elements (default 512) and flag the result as incomplete.
    """
    if isinstance(frame, FiniteFrame):
        alg = frame.alg
        start = [alg.zero, alg.one, *gens]
        for g in gens:
            alg._own(g)
        elems, complete = _close(
            start, lambda u: Element(u.bits ^ alg.mask, alg.atom_count),
            lambda u, v: Element(u.bits & v.bits, alg.atom_count),
            frame.apply, bound if bound is not None else alg.size)
        return Subalgebra(frozenset(elems), complete)
    if isinstance(frame, SymbolicFrame):
        for g in gens:
            if not isinstance(g, EPSet):
                raise UsageError("symbolic generators must be EPSets")
        elems, complete = _close([EMPTY, NATS, *gens], ep_neg, ep_meet,
                                 frame.apply, bound if bound is not None else 512)
        return Subalgebra(frozenset(elems), complete)
    raise UsageError(f"not a frame: {frame!r}")


def _validate_closed(frame: FiniteFrame, sub: Subalgebra) -> None:
    bits = {e.bits for e in sub.elements}
    if 0 not in bits or frame.alg.mask not in bits:
        raise ValidationError("subalgebra must contain 0 and 1")
    for e in sub.elements:
        if (e.bits ^ frame.alg.mask) not in bits:
            raise ValidationError(f"subalgebra not closed under complement at {e}")
        if int(frame.table[e.bits]) not in bits:
            raise ValidationError(f"subalgebra not closed under f at {e}")
        for g in sub.elements:
            if (e.bits & g.bits) not in bits:
                raise ValidationError("subalgebra not closed under meet")


def subalgebra_frame(frame: FiniteFrame, sub: Subalgebra):
    """Re-atomize a subalgebra as a standalone frame.

    Returns (small frame, mapping from big elements to small ones); the
    mapping is a Boolean-frame isomorphism onto the subalgebra.
    """
    _validate_closed(frame, sub)
    elems = sub.sorted_elements()
    nonzero = [e for e in elems if e.bits]
    sub_atoms = [e for e in nonzero
                 if not any(g.bits and g.bits != e.bits
                            and g.bits & e.bits == g.bits for g in nonzero)]
    k = len(sub_atoms)
    if len(elems) != 1 << k:
        raise ValidationError("subalgebra size is not a power of two")
    from .core import FiniteAlgebra  # local to avoid import noise at top

    small = FiniteAlgebra(k)
    iso = {}
    for e in elems:
        bits = 0
        for i, atom in enumerate(sub_atoms):
            if atom.bits & e.bits == atom.bits:
                bits |= 1 << i
        iso[e] = Element(bits, k)
    table = np.zeros(small.size, dtype=np.uint32)
    for e in elems:
        image = Element(int(frame.table[e.bits]), frame.alg.atom_count)
        table[iso[e].bits] = iso[image].bits
    return FiniteFrame(small, table, f"sub[{len(elems)}] of {frame.name}"), iso


def all_subalgebras(frame: FiniteFrame) -> list[Subalgebra]:
    """Every subalgebra, by closure-system search (tiny carriers only)."""
    if frame.alg.size > CEP_FULL_CAP:
        raise ResourceLimitError(
            f"carrier {frame.alg.size} above cap {CEP_FULL_CAP} for full "
            "subalgebra enumeration; use cep_refute on a chosen subalgebra"
        )
    minimal = generate_subalgebra(frame, ())
    seen = {minimal.elements}
    queue = [minimal]
    out = []
    while queue:
        sub = queue.pop(0)
        out.append(sub)
        inside = sub.elements
        for e in sorted((x for x in map(frame.alg.element, range(frame.alg.size))
                         if x not in inside), key=lambda x: x.bits):
            bigger = generate_subalgebra(frame, tuple(inside) + (e,))
            if bigger.elements not in seen:
                seen.add(bigger.elements)
                queue.append(bigger)
    out.sort(key=lambda s: (len(s.elements),
                            tuple(e.bits for e in s.sorted_elements())))
    return out


def congruential_in_subalgebra(frame: FiniteFrame, sub: Subalgebra,
                               a: Element) -> bool:
    """Congruential relative to the subframe: the defining scan quantifies
    over subalgebra members only."""
    ab = a.bits
    t = frame.table
    for x in sub.elements:
        if int(t[x.bits]) & ab != int(t[x.bits & ab]) & ab:
            return False
    return True


@dataclass(frozen=True)
class CepVerdict:
    holds: bool
    subalgebra: Subalgebra | None = None
    element: Element | None = None
    witness: Element | None = None


def _restriction_witness(frame: FiniteFrame, sub: Subalgebra, a: Element):
    """Largest b in the subalgebra above the minimal extension's element but
    not above a; its existence shows no extension restricts back exactly."""
    a_star = largest_congruential_below(frame, a)
    for b in sorted(sub.elements, key=lambda e: -e.bits):
        if b.bits & a_star.bits == a_star.bits and b.bits & a.bits != a.bits:
            return a_star, b
    return a_star, None


def cep_check_full(frame: FiniteFrame) -> CepVerdict:
    """Decide the congruence extension property by enumerating every
    subalgebra and every congruence of it (carriers up to 2**4)."""
    for sub in all_subalgebras(frame):
        for a in sub.sorted_elements():
            if not congruential_in_subalgebra(frame, sub, a):
                continue
            _, witness = _restriction_witness(frame, sub, a)
            if witness is not None:
                return CepVerdict(False, sub, a, witness)
    return CepVerdict(True)


@dataclass(frozen=True)
class RefuteVerdict:
    refuted: bool
    witness: Element | None
    restriction_bound: Element


def cep_refute(frame: FiniteFrame, sub: Subalgebra, a: Element) -> RefuteVerdict:
    """Refute CEP at one subalgebra congruence.

    The congruence generated by `a` inside the subalgebra extends, at best,
    to the congruence of the largest congruential element below a; if some
    subalgebra element sits above that bound but not above a, the
    restriction is strictly larger and CEP fails here.
    """
    if a not in sub.elements:
        raise UsageError("the congruence element must belong to the subalgebra")
    _validate_closed(frame, sub)
    if not congruential_in_subalgebra(frame, sub, a):
        raise UsageError("element is not congruential in the subalgebra")
    a_star, witness = _restriction_witness(frame, sub, a)
    return RefuteVerdict(witness is not None, witness, a_star)


# ---------------------------------------------------------------------------
# Forcing traces: machine-checkable collapse derivations for the symbolic
# frames.  A valid trace shows that any congruence of the full algebra
# containing the generator pairs identifies N with the empty set, while the
# generating filter stays proper on the subalgebra, so the subalgebra
# congruence admits no exact extension.


@dataclass(frozen=True)
class TraceStep:
    kind: str                 # gen | below | fstep | bool | trans | conclude
    elements: tuple = ()
    refs: tuple = ()          # 1-based indices of earlier steps
    op: str | None = None


@dataclass(frozen=True)
class ReplayReport:
    valid: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def four_block_predicate(s: EPSet) -> bool:
    """Membership in the subalgebra generated by the evens: finite or
    cofinite, or a finite modification of the evens or of the odds."""
    if s.is_finite or s.is_cofinite:
        return True
    return (ep_neg(ep_bicond(s, EVENS)).is_finite
            or ep_neg(ep_bicond(s, ODDS)).is_finite)


def infinite_odds_filter(s: EPSet) -> bool:
    """The generating filter: sets containing infinitely many odd numbers."""
    return not ep_meet(s, ODDS).is_finite


_BOOL_OPS = {"neg": 1, "meet": 2, "join": 2, "bicond": 2}
_BOOL_FN = {"meet": ep_meet, "join": ep_join, "bicond": ep_bicond}


def replay_trace(frame: SymbolicFrame, b_pred, filter_pred, trace) -> ReplayReport:
    """Validate a forcing trace step by step; invalid at the first unsound
    step.  The conclusion must be the pair (N, empty), and the filter must
    be proper (it may not contain the biconditional of N and empty)."""
    if not isinstance(frame, SymbolicFrame):
        raise UsageError("trace replay runs on symbolic frames")
    steps = list(trace)
    pairs: list[tuple[EPSet, EPSet] | None] = []

    def bad(i, reason):
        return ReplayReport(False, i, reason)

    def premise(i, j):
        if not 1 <= j < i or pairs[j - 1] is None:
            return None
        return pairs[j - 1]

    concluded = False
    for i, step in enumerate(steps, start=1):
        if concluded:
            return bad(i, "steps after the conclusion")
        if step.kind == "gen":
            if len(step.elements) != 2:
                return bad(i, "gen needs two elements")
            x, y = step.elements
            if not (b_pred(x) and b_pred(y)):
                return bad(i, "generator pair outside the subalgebra")
            if not filter_pred(ep_bicond(x, y)):
                return bad(i, "generator biconditional outside the filter")
            pairs.append((x, y))
        elif step.kind == "below":
            if len(step.elements) != 1 or len(step.refs) != 1:
                return bad(i, "below needs one element and one premise")
            got = premise(i, step.refs[0])
            if got is None:
                return bad(i, "premise is not a derived pair")
            u, v = got
            if v == EMPTY:
                big = u
            elif u == EMPTY:
                big = v
            else:
                return bad(i, "below premise must identify something with empty")
            x = step.elements[0]
            if not ep_leq(x, big):
                return bad(i, "below element is not below the premise")
            pairs.append((x, EMPTY))
        elif step.kind == "fstep":
            if len(step.refs) != 1:
                return bad(i, "fstep needs one premise")
            got = premise(i, step.refs[0])
            if got is None:
                return bad(i, "premise is not a derived pair")
            pairs.append((frame.apply(got[0]), frame.apply(got[1])))
        elif step.kind == "bool":
            arity = _BOOL_OPS.get(step.op or "")
            if arity is None:
                return bad(i, f"unknown Boolean op {step.op!r}")
            if len(step.refs) != arity:
                return bad(i, f"{step.op} needs {arity} premise(s)")
            got = [premise(i, j) for j in step.refs]
            if any(g is None for g in got):
                return bad(i, "premise is not a derived pair")
            if arity == 1:
                (u, v), = got
                pairs.append((ep_neg(u), ep_neg(v)))
            else:
                (u1, v1), (u2, v2) = got
                fn = _BOOL_FN[step.op]
                pairs.append((fn(u1, u2), fn(v1, v2)))
        elif step.kind == "trans":
            if len(step.refs) != 2:
                return bad(i, "trans needs two premises")
            p1 = premise(i, step.refs[0])
            p2 = premise(i, step.refs[1])
            if p1 is None or p2 is None:
                return bad(i, "premise is not a derived pair")
            a, b = p1
            c, d = p2
            if a == c:
                pairs.append((b, d))
            elif a == d:
                pairs.append((b, c))
            elif b == c:
                pairs.append((a, d))
            elif b == d:
                pairs.append((a, c))
            else:
                return bad(i, "trans premises share no element")
        elif step.kind == "conclude":
            if not pairs or pairs[-1] is None:
                return bad(i, "nothing to conclude from")
            if set(pairs[-1]) != {NATS, EMPTY}:
                return bad(i, "conclusion is not the pair (N, empty)")
            if filter_pred(ep_bicond(NATS, EMPTY)):
                return bad(i, "filter is improper: it contains the collapse pair")
            pairs.append(None)
            concluded = True
        else:
            return bad(i, f"unknown step kind {step.kind!r}")
    if not concluded:
        return ReplayReport(False, None, "trace has no conclusion")
    return ReplayReport(True)


def ext2_trace() -> tuple:
    """Collapse derivation for the extensive family: identify the evens with
    the empty set, push down to the doubled evens, apply f, and close."""
    return (
        TraceStep("gen", (EVENS, EMPTY)),
        TraceStep("below", (MULT4,), (1,)),
        TraceStep("fstep", (), (2,)),
        TraceStep("gen", (finite_set((0,)), EMPTY)),
        TraceStep("trans", (), (3, 4)),
        TraceStep("conclude"),
    )


def cont_trace() -> tuple:
    """Collapse derivation for the contractive family: the dual route goes
    through the complement of the doubled evens."""
    return (
        TraceStep("gen", (EVENS, EMPTY)),
        TraceStep("below", (MULT4,), (1,)),
        TraceStep("bool", (), (2,), op="neg"),
        TraceStep("fstep", (), (3,)),
        TraceStep("gen", (co_initial_segment_set(0), NATS)),
        TraceStep("trans", (), (4, 5)),
        TraceStep("conclude"),
    )


def subadd_trace() -> tuple:
    """Collapse derivation for the subadditive family; the same chain as the
    extensive case applies verbatim."""
    return ext2_trace()


BUILTIN_TRACES = {
    "ext2": ("A", ext2_trace),
    "cont": ("B", cont_trace),
    "subadd": ("C", subadd_trace),
}

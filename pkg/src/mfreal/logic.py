"""Three-valued verdicts, resource budgets and the quantifier engine.

Every semantic question is answered with a `Verdict`.  Holds and Fails are
exact; Unknown records which bound stopped the search.  Raising a budget can
turn Unknown into Holds or Fails but never flips a decided answer.

Quantifiers over the naturals are settled in two phases.  First the body is
run on a fresh symbolic natural, splitting it into exhaustive shapes
(zero/successor, pair, empty/cons) whenever the body needs to know more;
when every shape gives a decided answer the quantifier is decided exactly.
Otherwise the body is run on the numerals up to the enumeration bound, which
can refute a universal or confirm an existential but not the converse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .pca import NeedsConcrete, Sym, shapes, substitute_sym, symbols_of

HOLDS_S, FAILS_S, UNKNOWN_S = "Holds", "Fails", "Unknown"
REASONS = ("fuel", "enum_bound", "depth", "non-enumerable-domain")


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str | None = None
    note: str | None = field(default=None, compare=False)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS_S

    @property
    def fails(self) -> bool:
        return self.status == FAILS_S

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN_S

    def __str__(self) -> str:
        if self.unknown:
            return f"Unknown({self.reason})"
        return self.status

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.note:
            out["note"] = self.note
        return out


HOLDS = Verdict(HOLDS_S)
FAILS = Verdict(FAILS_S)


def unknown(reason: str, note: str | None = None) -> Verdict:
    if reason not in REASONS:
        raise ValueError(reason)
    return Verdict(UNKNOWN_S, reason, note)


def of_bool(b: bool) -> Verdict:
    return HOLDS if b else FAILS


@dataclass
class Budget:
    """Resource bounds for one semantic check, plus usage counters."""

    fuel: int = 100_000
    enum_bound: int = 64
    depth: int = 32
    splits: int = 64
    steps: int = 0
    evaluations: int = 0

    def resources(self) -> dict:
        return {"steps": self.steps, "evaluations": self.evaluations}


class DepthExceeded(Exception):
    pass


Thunk = Callable[[], Verdict]


def conj(*parts: Thunk) -> Verdict:
    pending = None
    for part in parts:
        v = part()
        if v.fails:
            return v
        if v.unknown and pending is None:
            pending = v
    return pending or HOLDS


def disj(*parts: Thunk) -> Verdict:
    pending = None
    for part in parts:
        v = part()
        if v.holds:
            return v
        if v.unknown and pending is None:
            pending = v
    return pending or FAILS


def neg(v: Verdict) -> Verdict:
    if v.holds:
        return FAILS
    if v.fails:
        return HOLDS
    return v


def implies(a: Thunk, b: Thunk) -> Verdict:
    va = a()
    if va.fails:
        return HOLDS
    vb = b()
    if vb.holds or va.holds:
        return vb
    return va if vb.fails else vb


def iff(a: Thunk, b: Thunk) -> Verdict:
    va, vb = a(), b()
    if va.unknown:
        return va
    if vb.unknown:
        return vb
    return of_bool(va.holds == vb.holds)


def _symbolic(body: Callable[[object], Verdict], budget: Budget, universal: bool):
    """Settle the quantifier by case splitting, or return None.

    Only symbols introduced by this quantifier are split here; a request
    about any other symbol is passed to the quantifier that owns it.
    """
    root = Sym()
    owned = {root}
    work: list = [root]
    leaves = 0
    while work:
        pattern = work.pop()
        try:
            v = body(pattern)
        except NeedsConcrete as e:
            if e.sym is None:
                return None
            target, other = e.sym, e.other
            if target not in owned:
                if e.kind == "eq" and isinstance(other, Sym) and other in owned:
                    target, other = other, target
                else:
                    raise
            leaves += 1
            if leaves > budget.splits:
                return None
            options = shapes(target, e.kind, other)
            if options is None:
                return None
            for shape in options:
                owned |= symbols_of(shape) - symbols_of(other)
            work.extend(reversed([substitute_sym(pattern, target, sh) for sh in options]))
            continue
        except DepthExceeded:
            return None
        if v.unknown:
            return None
        if universal and v.fails:
            return FAILS
        if not universal and v.holds:
            return HOLDS
    return HOLDS if universal else FAILS


def forall(body: Callable[[object], Verdict], budget: Budget,
           extra: Iterable[int] = ()) -> Verdict:
    """For all naturals x, body(x)."""
    v = _symbolic(body, budget, universal=True)
    if v is not None:
        return v
    for n in _candidates(budget, extra):
        r = body(n)
        if r.fails:
            return Verdict(FAILS_S, note=f"counterexample {n}")
    return unknown("enum_bound")


def exists(body: Callable[[object], Verdict], budget: Budget,
           extra: Iterable[int] = ()) -> Verdict:
    """There is a natural x with body(x)."""
    v = _symbolic(body, budget, universal=False)
    if v is not None:
        return v
    for n in _candidates(budget, extra):
        r = body(n)
        if r.holds:
            return Verdict(HOLDS_S, note=f"witness {n}")
    return unknown("enum_bound")


def forall_in(items: Iterable, body: Callable[[object], Verdict]) -> Verdict:
    """Exact universal over an explicitly listed finite domain.

    An instance that needs a concrete value is postponed: a failing
    instance elsewhere settles the universal without it.
    """
    return _finite(items, body, FAILS_S, HOLDS)


def exists_in(items: Iterable, body: Callable[[object], Verdict]) -> Verdict:
    return _finite(items, body, HOLDS_S, FAILS)


def _finite(items, body, decisive: str, default: Verdict) -> Verdict:
    pending = postponed = None
    for x in items:
        try:
            v = body(x)
        except NeedsConcrete as exc:
            postponed = postponed or exc
            continue
        if v.status == decisive:
            return v
        if v.unknown and pending is None:
            pending = v
    if postponed is not None:
        raise postponed
    return pending or default


def _candidates(budget: Budget, extra: Iterable[int]):
    seen = set()
    for n in list(range(budget.enum_bound + 1)) + list(extra):
        if n not in seen:
            seen.add(n)
            yield n

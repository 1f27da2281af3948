"""Codes for small sets and propositions.

A code is a pair <tag, payload>.  The predicates Set(n), t ε̄ n, t ∉̄ n,
t ≡_n s and t ≢_n s form the least fixpoint of clauses obtained from the
realizability clauses of each constructor by the positivity transformation.
Each predicate is computed by recursion on the clauses, memoised on concrete
arguments, with a depth bound: a query that revisits itself (or runs out of
depth) is answered Unknown(depth).

    tag  1  N0 / N1 / N        <1, 0 | 1 | 2>
    tag  2  Pi                 <2, <a, b>>        b a family over a
    tag  3  Sigma              <3, <a, b>>
    tag  4  +                  <4, <a, a'>>
    tag  5  List               <5, a>
    tag  6  falsum             <6, 0>
    tag  7  and, 8 or, 9 implies   <tag, <c, c'>>
    tag 10  exists, 11 forall  <tag, <a, d>>
    tag 12  Id                 <12, <a, <e, f>>>
"""

from __future__ import annotations

from functools import lru_cache

from . import logic, pca
from .clauses import (
    UNDEF,
    And,
    Arith,
    Atom,
    CodeRef,
    Evaluator,
    ForallF,
    Formula,
    Iff,
    Lemma,
    Not,
    Or,
    _OutOfFuel,
    app,
    lit,
    member_clause,
    overline,
    p1,
    p2,
    plus,
    sim_clause,
    var,
)
from .logic import FAILS, Budget, Verdict, of_bool

KINDS = {
    2: "Pi", 3: "Sigma", 4: "Plus", 5: "List", 6: "Bot", 7: "And", 8: "Or",
    9: "Imp", 10: "Exists", 11: "Forall", 12: "Id",
}
NUMERAL_KINDS = ("N0", "N1", "N")
PROP_TAGS = frozenset({6, 7, 8, 9, 10, 11, 12})


def kind_of(tag: int, payload: int) -> str | None:
    if tag == 1:
        return NUMERAL_KINDS[payload] if isinstance(payload, int) and payload < 3 else None
    return KINDS.get(tag)


# ---------------------------------------------------------------------------
# Clauses


class _Refs:
    """Component references for a code held in formula variable `c`."""

    def __init__(self, tag: int):
        pay = p2(var("c"))
        self.self = CodeRef(var("c"))
        self.A = self.A2 = self.phi = self.phi2 = None
        self.t = self.s = None
        self._fam = None
        if tag in (2, 3, 10, 11):
            self.A = CodeRef(p1(pay))
            self._fam = p2(pay)
        elif tag == 4:
            self.A, self.A2 = CodeRef(p1(pay)), CodeRef(p2(pay))
        elif tag == 5:
            self.A = CodeRef(pay)
        elif tag in (7, 8, 9):
            self.phi, self.phi2 = CodeRef(p1(pay)), CodeRef(p2(pay))
        elif tag == 12:
            self.A = CodeRef(p1(pay))
            self.t, self.s = p1(p2(pay)), p2(p2(pay))

    def fam(self, x):
        return CodeRef(app(self._fam, x))


def _set(e) -> Formula:
    return Atom("set", (e,))


def _mem(t, c, negated=False, dual=False) -> Formula:
    return Atom("mem", (t, c), negated, dual)


def _eqv(t, s, c, negated=False, dual=False) -> Formula:
    return Atom("eq", (t, s, c), negated, dual)


def family(m, n) -> Formula:
    """Fam(m, n): {m} is an extensional family of codes over the code n."""
    t, s, j, k = var("t"), var("s"), var("j"), var("k")
    mt, ms = app(m, t), app(m, s)
    p1_ = Lemma("coincide", (mt, ms), ForallF("j", And(
        Or(_mem(j, mt, True, True), _mem(j, ms)),
        Or(_mem(j, ms, True, True), _mem(j, mt)))))
    p2_ = Lemma("coincide", (mt, ms), ForallF("j", ForallF("k", And(
        Or(_eqv(j, k, mt, True, True), _eqv(j, k, ms)),
        Or(_eqv(j, k, ms, True, True), _eqv(j, k, mt))))))
    return And(
        _set(n),
        ForallF("t", Or(_mem(t, n, True, True), _set(mt))),
        ForallF("t", ForallF("s", Or(_eqv(t, s, n, True, True), And(p1_, p2_)))))


@lru_cache(maxsize=None)
def cond(tag: int) -> Formula:
    """Cond(tag): the condition on the payload for <tag, payload> to be a code."""
    pay = p2(var("c"))
    a, b = p1(pay), p2(pay)
    if tag == 1:
        return Arith("<", pay, lit(3))
    if tag == 6:
        return Arith("=", pay, lit(0))
    if tag in (2, 3):
        return family(b, a)
    if tag == 4:
        return And(_set(a), _set(b))
    if tag == 5:
        return _set(pay)
    if tag in (7, 8, 9):
        return And(_set(a), _set(b), Arith(">", p1(a), lit(5)), Arith(">", p1(b), lit(5)))
    if tag in (10, 11):
        x = var("x")
        return And(family(b, a), ForallF("x", Or(_mem(x, a, True, True),
                                                 Arith(">", p1(app(b, x)), lit(5)))))
    if tag == 12:
        return And(_set(a), _mem(p1(b), a), _mem(p2(b), a))
    raise ValueError(tag)


@lru_cache(maxsize=None)
def member_formula(tag: int, kind: str, negated: bool) -> Formula:
    f = plus(member_clause(kind, var("n"), _Refs(tag)))
    return overline(f) if negated else f


@lru_cache(maxsize=None)
def equiv_formula(tag: int, kind: str, negated: bool) -> Formula:
    f = plus(sim_clause(kind, var("n"), var("m"), _Refs(tag)))
    return overline(f) if negated else f


# ---------------------------------------------------------------------------
# Evaluation

_MEMO: dict = {}
_MEMO_LIMIT = 500_000


def _remember(key, v: Verdict) -> Verdict:
    if not v.unknown:
        if len(_MEMO) > _MEMO_LIMIT:
            _MEMO.clear()
        _MEMO[key] = v
    return v


def clear_cache() -> None:
    _MEMO.clear()


class CodeSemantics(Evaluator):
    """Evaluator with the fixpoint predicates on codes."""

    def __init__(self, budget: Budget | None = None):
        super().__init__(budget)
        self.active: set = set()
        self.undecided: dict = {}  # Unknown answers, valid for this budget only

    # lemmas -----------------------------------------------------------------
    def sufficient(self, name: str, args: list) -> bool:
        # both conditions are consequences of complementarity of the code
        if name == "coincide":
            return args[0] == args[1] and self.code_complementary(args[0]).holds
        if name == "complementary":
            return self.code_complementary(args[0]).holds
        return False

    def code_complementary(self, c: int) -> Verdict:
        """Complementarity of ε̄/∉̄ and ≡/≢ on the code c.

        For +, List and Σ with a constant fiber it follows from complementarity
        of the components (the clauses are built from theirs by bounded
        connectives); other codes are checked from the definition.
        """
        return self._guarded(("compl", c), lambda: self._complementary(c))

    def _complementary(self, c: int) -> Verdict:
        tag, pay = pca.unpair(c)
        if tag == 5:
            return self.code_complementary(pay)
        if tag == 4:
            a, b = pca.unpair(pay)
            return logic.conj(lambda: self.code_complementary(a),
                              lambda: self.code_complementary(b))
        if tag == 3:
            a, b = pca.unpair(pay)
            fiber = _constant_fiber(b, self.budget.fuel)
            if fiber is not None:
                return logic.conj(lambda: self.code_complementary(a),
                                  lambda: self.code_complementary(fiber))
        return self.holds(complementarity(lit(c)))

    # atoms ------------------------------------------------------------------
    def atom(self, f: Atom, env: dict) -> Verdict:
        try:
            args = [self.expr(a, env) for a in f.args]
        except _OutOfFuel:
            return logic.unknown("fuel")
        if any(a is UNDEF for a in args):
            return of_bool(f.dual)
        if f.pred == "set":
            return self.is_set(args[0])
        if f.pred == "mem":
            return self.member(args[0], args[1], f.negated)
        return self.equiv(args[0], args[1], args[2], f.negated)

    def _guarded(self, key, compute, concrete: bool | None = None) -> Verdict:
        if concrete is None:
            concrete = all(isinstance(k, (int, str, bool)) for k in key)
        if concrete:
            hit = _MEMO.get(key) or self.undecided.get(key)
            if hit is not None:
                return hit
            if key in self.active:
                return logic.unknown("depth")
        if self.level >= self.budget.depth:
            return logic.unknown("depth")
        self.level += 1
        if concrete:
            self.active.add(key)
        try:
            v = compute()
        finally:
            self.level -= 1
            if concrete:
                self.active.discard(key)
        if not concrete:
            return v
        if v.unknown and v.reason != "depth":
            self.undecided[key] = v
        return _remember(key, v)

    def _split(self, c):
        return _small(pca.n_p1(c), 12), pca.n_p2(c)

    def is_set(self, c) -> Verdict:
        def compute():
            tag, pay = self._split(c)
            if kind_of(tag, _concrete_small(pay) if tag == 1 else pay) is None:
                return FAILS
            return self.eval(cond(tag), {"c": c})
        return self._guarded(("set", c), compute)

    def member(self, t, c, negated: bool = False) -> Verdict:
        def compute():
            tag, pay = self._split(c)
            kind = kind_of(tag, _concrete_small(pay) if tag == 1 else pay)
            if kind is None:
                return FAILS
            env = {"c": c, "n": t}
            return logic.conj(lambda: self.is_set(c),
                              lambda: self.eval(member_formula(tag, kind, negated), env))
        return self._guarded(("mem", negated, t, c), compute)

    def equiv(self, t, s, c, negated: bool = False) -> Verdict:
        def compute():
            tag, pay = self._split(c)
            kind = kind_of(tag, _concrete_small(pay) if tag == 1 else pay)
            if kind is None:
                return FAILS
            env = {"c": c, "n": t, "m": s}
            return logic.conj(lambda: self.is_set(c),
                              lambda: self.eval(equiv_formula(tag, kind, negated), env))
        return self._guarded(("eq", negated, t, s, c), compute)

    # numerical codes ----------------------------------------------------------
    def numerical(self, guard, env) -> bool:
        if not isinstance(guard, Atom):
            return False
        try:
            c = self.expr(guard.args[2], env)
        except (_OutOfFuel, pca.NeedsConcrete):
            return False
        return self.numerical_code(c)

    def numerical_code(self, c) -> bool:
        """Provably: Set(c) holds and equivalence on c is equality."""
        if not isinstance(c, int) or not self._shape_numerical(c, 0):
            return False
        return self.is_set(c).holds

    def _shape_numerical(self, c, level) -> bool:
        if not isinstance(c, int) or level > self.budget.depth:
            return False
        tag, pay = pca.unpair(c)
        if tag == 1:
            return pay < 3
        if tag == 4:
            a, b = pca.unpair(pay)
            return self._shape_numerical(a, level + 1) and self._shape_numerical(b, level + 1)
        if tag == 5:
            return self._shape_numerical(pay, level + 1)
        if tag == 3:
            a, b = pca.unpair(pay)
            if not self._shape_numerical(a, level + 1):
                return False
            fiber = _constant_fiber(b, self.budget.fuel)
            return fiber is not None and self._shape_numerical(fiber, level + 1)
        return False


def _constant_fiber(b: int, fuel: int):
    """The value of {b}(x) if it does not depend on x, else None."""
    try:
        r = pca.apply(b, pca.Sym(), fuel)
    except pca.NeedsConcrete:
        return None
    if isinstance(r, pca.Converged) and isinstance(r.value, int):
        return r.value
    return None


def _small(v, limit: int):
    """v itself if it is at most `limit`, otherwise limit + 1 (forces symbols)."""
    if isinstance(v, int):
        return v if v <= limit else limit + 1
    for k in range(limit + 1):
        if pca.n_eq(v, k):
            return k
    return limit + 1


def _concrete_small(v):
    return _small(v, 2)


# ---------------------------------------------------------------------------
# Public API


def _semantics(budget: Budget | None) -> CodeSemantics:
    return CodeSemantics(budget or Budget())


def is_set(n: int, budget: Budget | None = None) -> Verdict:
    """Set(n)."""
    return _safe(lambda s: s.is_set(n), budget)


def member(t: int, n: int, budget: Budget | None = None) -> Verdict:
    """t ε̄ n."""
    return _safe(lambda s: s.member(t, n, False), budget)


def not_member(t: int, n: int, budget: Budget | None = None) -> Verdict:
    """t ∉̄ n."""
    return _safe(lambda s: s.member(t, n, True), budget)


def equiv(t: int, s: int, n: int, budget: Budget | None = None) -> Verdict:
    """t ≡_n s."""
    return _safe(lambda sem: sem.equiv(t, s, n, False), budget)


def not_equiv(t: int, s: int, n: int, budget: Budget | None = None) -> Verdict:
    """t ≢_n s."""
    return _safe(lambda sem: sem.equiv(t, s, n, True), budget)


def _safe(f, budget):
    sem = _semantics(budget)
    try:
        return f(sem)
    except _OutOfFuel:
        return logic.unknown("fuel")
    except pca.NeedsConcrete:
        return logic.unknown("non-enumerable-domain")


def fam(m: int, n: int, budget: Budget | None = None) -> Verdict:
    """Fam(m, n)."""
    sem = _semantics(budget)
    return sem.holds(family(var("m"), var("n")), {"m": m, "n": n})


is_set_code = is_set
code_member = member
code_not_member = not_member
code_eq = equiv
code_neq = not_equiv


def complementary(n: int, budget: Budget | None = None) -> Verdict:
    """Do ε̄/∉̄ and ≡/≢ split the naturals exactly for the code n?"""
    return _semantics(budget).code_complementary(n)


def complementarity(c) -> Formula:
    """∀t(t ε̄ c ↔ ¬ t ∉̄ c) ∧ ∀t∀s(t ≡_c s ↔ ¬ t ≢_c s)."""
    t, s = var("t"), var("s")
    return And(
        ForallF("t", Iff(_mem(t, c), Not(_mem(t, c, True)))),
        ForallF("t", ForallF("s", Iff(_eqv(t, s, c), Not(_eqv(t, s, c, True))))))


def describe(n: int, level: int = 0) -> str:
    """A readable rendering of a code (families shown by their code)."""
    if level > 8:
        return "…"
    tag, pay = pca.unpair(n)
    a, b = pca.unpair(pay)
    kind = kind_of(tag, pay)
    if kind is None:
        return f"<{tag}, {pay}>?"
    if kind in NUMERAL_KINDS:
        return kind
    if kind == "Bot":
        return "⊥"
    if kind in ("Pi", "Sigma", "Exists", "Forall"):
        sym = {"Pi": "Π", "Sigma": "Σ", "Exists": "∃", "Forall": "∀"}[kind]
        fiber = _constant_fiber(b, 10_000)
        inner = describe(fiber, level + 1) if fiber is not None else f"{{{b}}}(x)"
        return f"{sym}(x ε {describe(a, level + 1)}) {inner}"
    if kind == "Plus":
        return f"({describe(a, level + 1)} + {describe(b, level + 1)})"
    if kind == "List":
        return f"List({describe(pay, level + 1)})"
    if kind in ("And", "Or", "Imp"):
        op = {"And": "∧", "Or": "∨", "Imp": "→"}[kind]
        return f"({describe(a, level + 1)} {op} {describe(b, level + 1)})"
    e, f = pca.unpair(b)
    return f"Id({describe(a, level + 1)}, {e}, {f})"

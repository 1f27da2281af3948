"""A small arithmetic formula language and its three-valued evaluator.

The realizability clauses for the set constructors are written once, as
formula templates over abstract references to the component sets (`Ref`).
The semantic checker evaluates them with references resolved to types; the
set-code fixpoint obtains its clauses from the same templates through the
positivity transformation `plus` and the dual `overline`.

Terms of the language are natural-number expressions that may be undefined
(Kleene application can diverge or get stuck).  An atom mentioning an
undefined term is false, except for atoms produced by `overline`: these
stand for the negation of a formula in which the bracket terms abbreviate
existential statements, so an undefined term makes them true.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import logic, pca
from .logic import FAILS, HOLDS, Budget, Verdict, conj, disj, neg, of_bool

# ---------------------------------------------------------------------------
# Expressions


class Expr:
    pass


@dataclass(frozen=True)
class EVar(Expr):
    name: str


@dataclass(frozen=True)
class ELit(Expr):
    value: object


@dataclass(frozen=True)
class EApp(Expr):
    """Kleene application {f}(x)."""

    f: Expr
    x: Expr


@dataclass(frozen=True)
class EOp(Expr):
    op: str  # p1 | p2 | lh | comp
    args: tuple


@dataclass(frozen=True)
class ETerm(Expr):
    """The value of I(term) with the term's free variables bound by env."""

    term: object
    env: tuple


def p1(e: Expr) -> Expr:
    return EOp("p1", (e,))


def p2(e: Expr) -> Expr:
    return EOp("p2", (e,))


def app(f: Expr, x: Expr) -> Expr:
    return EApp(f, x)


def var(name: str) -> Expr:
    return EVar(name)


def lit(v) -> Expr:
    return ELit(v)


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    pass


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class Arith(Formula):
    op: str  # '=', '<', '>'
    a: Expr
    b: Expr
    negated: bool = False


@dataclass(frozen=True)
class Atom(Formula):
    """Fixpoint atom: 'set' (c), 'mem' (t, c) or 'eq' (t, s, c).

    `negated` selects the primitive complement (t not-in c, t not-equiv s);
    `dual` marks atoms that came from `overline` (true on undefined terms).
    """

    pred: str
    args: tuple
    negated: bool = False
    dual: bool = False


@dataclass(frozen=True)
class J(Formula):
    """t belongs to the interpretation of the referenced set or collection."""

    t: Expr
    ref: object


@dataclass(frozen=True)
class Sim(Formula):
    t: Expr
    s: Expr
    ref: object


@dataclass(frozen=True)
class AndF(Formula):
    parts: tuple


@dataclass(frozen=True)
class OrF(Formula):
    parts: tuple


@dataclass(frozen=True)
class Imp(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Iff(Formula):
    a: Formula
    b: Formula


@dataclass(frozen=True)
class Not(Formula):
    a: Formula


@dataclass(frozen=True)
class ForallF(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsF(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Let(Formula):
    var: str
    value: Expr
    body: Formula


@dataclass(frozen=True)
class Lemma(Formula):
    """`formula`, together with a named sufficient condition on `args`.

    The evaluator tries the condition first and falls back to `formula`.
    """

    name: str
    args: tuple
    formula: Formula


def And(*parts) -> Formula:
    return AndF(tuple(parts))


def Or(*parts) -> Formula:
    return OrF(tuple(parts))


def eq(a, b) -> Formula:
    return Arith("=", a, b)


def neq(a, b) -> Formula:
    return Arith("=", a, b, negated=True)


# ---------------------------------------------------------------------------
# References to component sets


@dataclass(frozen=True)
class CodeRef:
    """A set given by (an expression for) its code."""

    expr: Expr


@dataclass(frozen=True)
class SelfRef:
    """The set whose clause is being written."""


# ---------------------------------------------------------------------------
# Clause templates
#
# R provides: R.A, R.A2, R.phi, R.phi2 (references), R.fam(expr) (reference
# to the family member at expr), R.t, R.s (expressions for Id), R.self.

SETS = ("N0", "N1", "N", "Pi", "Sigma", "Plus", "List")
PROPS = ("Bot", "And", "Or", "Imp", "Exists", "Forall", "Id")


def member_clause(kind: str, n: Expr, R) -> Formula:
    x, y, j = var("x"), var("y"), var("j")
    if kind in ("N0", "Bot"):
        return FalseF()
    if kind == "N1":
        return eq(n, lit(0))
    if kind == "N":
        return eq(n, n)
    if kind == "Pi":
        return And(
            ForallF("x", Imp(J(x, R.A), J(app(n, x), R.fam(x)))),
            ForallF("x", ForallF("y", Imp(Sim(x, y, R.A), Sim(app(n, x), app(n, y), R.fam(x))))))
    if kind == "Sigma":
        return And(J(p1(n), R.A),
                   ForallF("x", Imp(Sim(x, p1(n), R.A), J(p2(n), R.fam(x)))))
    if kind == "Plus":
        return Or(And(eq(p1(n), lit(0)), J(p2(n), R.A)),
                  And(eq(p1(n), lit(1)), J(p2(n), R.A2)))
    if kind == "List":
        return ForallF("j", Imp(Arith("<", j, EOp("lh", (n,))), J(EOp("comp", (n, j)), R.A)))
    if kind == "And":
        return And(J(p1(n), R.phi), J(p2(n), R.phi2))
    if kind == "Or":
        return Or(And(eq(p1(n), lit(0)), J(p2(n), R.phi)),
                  And(neq(p1(n), lit(0)), J(p2(n), R.phi2)))
    if kind == "Imp":
        return ForallF("x", Imp(J(x, R.phi), J(app(n, x), R.phi2)))
    if kind == "Exists":
        return And(J(p1(n), R.A), J(p2(n), R.fam(p1(n))))
    if kind == "Forall":
        return ForallF("x", Imp(J(x, R.A), J(app(n, x), R.fam(x))))
    if kind == "Id":
        return Sim(R.t, R.s, R.A)
    raise ValueError(kind)


def sim_clause(kind: str, n: Expr, m: Expr, R) -> Formula:
    x, j = var("x"), var("j")
    if kind == "N0":
        return FalseF()
    if kind == "N1":
        return And(eq(n, lit(0)), eq(n, m))
    if kind == "N":
        return eq(n, m)
    both = (J(n, R.self), J(m, R.self))
    if kind == "Pi":
        return And(*both, ForallF("x", Imp(J(x, R.A), Sim(app(n, x), app(m, x), R.fam(x)))))
    if kind == "Sigma":
        return And(*both, Sim(p1(n), p1(m), R.A),
                   ForallF("x", Imp(Sim(x, p1(n), R.A), Sim(p2(n), p2(m), R.fam(x)))))
    if kind == "Plus":
        return And(*both, eq(p1(n), p1(m)),
                   Or(And(eq(p1(n), lit(0)), Sim(p2(n), p2(m), R.A)),
                      And(eq(p1(n), lit(1)), Sim(p2(n), p2(m), R.A2))))
    if kind == "List":
        ln = EOp("lh", (n,))
        return And(*both, eq(ln, EOp("lh", (m,))),
                   ForallF("j", Imp(Arith("<", j, ln),
                                    Sim(EOp("comp", (n, j)), EOp("comp", (m, j)), R.A))))
    if kind in PROPS:
        return And(*both)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# Positivity transformation


def plus(f: Formula) -> Formula:
    """(phi)^+ : replace J/Sim by fixpoint atoms, implications by overline-or."""
    k = type(f)
    if k in (TrueF, FalseF, Arith, Atom):
        return f
    if k is J:
        return Atom("mem", (f.t, _code(f.ref)))
    if k is Sim:
        return Atom("eq", (f.t, f.s, _code(f.ref)))
    if k is AndF:
        return AndF(tuple(plus(p) for p in f.parts))
    if k is OrF:
        return OrF(tuple(plus(p) for p in f.parts))
    if k is Imp:
        return Or(overline(plus(f.a)), plus(f.b))
    if k is ForallF:
        return ForallF(f.var, plus(f.body))
    if k is ExistsF:
        return ExistsF(f.var, plus(f.body))
    if k is Let:
        return Let(f.var, f.value, plus(f.body))
    if k is Lemma:
        return Lemma(f.name, f.args, plus(f.formula))
    raise TypeError(f"no positive form for {f!r}")


def _code(ref) -> Expr:
    if isinstance(ref, CodeRef):
        return ref.expr
    raise TypeError(f"reference {ref!r} has no code")


def overline(f: Formula) -> Formula:
    k = type(f)
    if k is TrueF:
        return FalseF()
    if k is FalseF:
        return TrueF()
    if k is Arith:
        return replace(f, negated=not f.negated)
    if k is Atom:
        if f.pred == "set":
            raise TypeError("Set has no primitive complement")
        return replace(f, negated=not f.negated, dual=not f.dual)
    if k is AndF:
        return OrF(tuple(overline(p) for p in f.parts))
    if k is OrF:
        return AndF(tuple(overline(p) for p in f.parts))
    if k is ForallF:
        return ExistsF(f.var, overline(f.body))
    if k is ExistsF:
        return ForallF(f.var, overline(f.body))
    if k is Let:
        return Let(f.var, f.value, overline(f.body))
    if k is Lemma:
        return overline(f.formula)
    raise TypeError(f"overline is only defined on positive formulas: {f!r}")


# ---------------------------------------------------------------------------
# Printing


def show_expr(e: Expr) -> str:
    if isinstance(e, EVar):
        return e.name
    if isinstance(e, ELit):
        return str(e.value) if isinstance(e.value, int) else "?"
    if isinstance(e, EApp):
        return "{" + show_expr(e.f) + "}(" + show_expr(e.x) + ")"
    if isinstance(e, EOp):
        if e.op == "comp":
            return f"({show_expr(e.args[0])})_{show_expr(e.args[1])}"
        return f"{e.op}({', '.join(show_expr(a) for a in e.args)})"
    if isinstance(e, ETerm):
        from .syntax import show
        return f"I({show(e.term)})"
    return repr(e)


def show_ref(ref) -> str:
    if isinstance(ref, CodeRef):
        return show_expr(ref.expr)
    if hasattr(ref, "show"):
        return ref.show()
    return repr(ref)


def show_formula(f: Formula) -> str:
    k = type(f)
    if k is TrueF:
        return "⊤"
    if k is FalseF:
        return "⊥"
    if k is Arith:
        a, b = show_expr(f.a), show_expr(f.b)
        if f.negated:
            return f"¬({a} {f.op} {b})" if f.op != "=" else f"{a} ≠ {b}"
        return f"{a} {f.op} {b}"
    if k is Atom:
        args = [show_expr(a) for a in f.args]
        if f.pred == "set":
            return f"Set({args[0]})"
        if f.pred == "mem":
            rel = "∉̄" if f.negated else "ε̄"
            return f"{args[0]} {rel} {args[1]}"
        rel = "≢" if f.negated else "≡"
        return f"{args[0]} {rel}_{args[2]} {args[1]}"
    if k is J:
        return f"{show_expr(f.t)} ε J({show_ref(f.ref)})"
    if k is Sim:
        return f"{show_expr(f.t)} ~_{show_ref(f.ref)} {show_expr(f.s)}"
    if k is AndF:
        return "(" + " ∧ ".join(show_formula(p) for p in f.parts) + ")" if f.parts else "⊤"
    if k is OrF:
        return "(" + " ∨ ".join(show_formula(p) for p in f.parts) + ")" if f.parts else "⊥"
    if k is Imp:
        return f"({show_formula(f.a)} → {show_formula(f.b)})"
    if k is Iff:
        return f"({show_formula(f.a)} ↔ {show_formula(f.b)})"
    if k is Not:
        return f"¬{show_formula(f.a)}"
    if k is ForallF:
        return f"∀{f.var} {show_formula(f.body)}"
    if k is ExistsF:
        return f"∃{f.var} {show_formula(f.body)}"
    if k is Let:
        return f"{show_formula(f.body)}[{show_expr(f.value)}/{f.var}]"
    if k is Lemma:
        return show_formula(f.formula)
    return repr(f)


# ---------------------------------------------------------------------------
# Evaluation


class Undefined:
    """Marker for a term with no value (the run is stuck)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEF"


UNDEF = Undefined()


class _OutOfFuel(Exception):
    pass


def _mentions(f, name: str) -> bool:
    """Does formula or expression `f` mention variable `name` (free)?"""
    if isinstance(f, EVar):
        return f.name == name
    if isinstance(f, ELit):
        return False
    if isinstance(f, ETerm):
        return any(isinstance(v, Expr) and _mentions(v, name) for _, v in f.env)
    if isinstance(f, EApp):
        return _mentions(f.f, name) or _mentions(f.x, name)
    if isinstance(f, EOp):
        return any(_mentions(a, name) for a in f.args)
    if isinstance(f, (ForallF, ExistsF)):
        return f.var != name and _mentions(f.body, name)
    if isinstance(f, Let):
        return _mentions(f.value, name) or (f.var != name and _mentions(f.body, name))
    if isinstance(f, (AndF, OrF)):
        return any(_mentions(p, name) for p in f.parts)
    if isinstance(f, (Imp, Iff)):
        return _mentions(f.a, name) or _mentions(f.b, name)
    if isinstance(f, Not):
        return _mentions(f.a, name)
    if isinstance(f, Arith):
        return _mentions(f.a, name) or _mentions(f.b, name)
    if isinstance(f, Atom):
        return any(_mentions(a, name) for a in f.args)
    if isinstance(f, J):
        return _mentions(f.t, name) or _ref_mentions(f.ref, name)
    if isinstance(f, Sim):
        return _mentions(f.t, name) or _mentions(f.s, name) or _ref_mentions(f.ref, name)
    if isinstance(f, Lemma):
        return _mentions(f.formula, name)
    return False


def _ref_mentions(ref, name: str) -> bool:
    if isinstance(ref, CodeRef):
        return _mentions(ref.expr, name)
    return ref.mentions(name) if hasattr(ref, "mentions") else False


class Evaluator:
    """Evaluates formulas; subclasses give meaning to atoms."""

    def __init__(self, budget: Budget | None = None):
        self.budget = budget or Budget()
        self.level = 0

    # expressions ----------------------------------------------------------
    def expr(self, e: Expr, env: dict):
        k = type(e)
        if k is EVar:
            return env[e.name]
        if k is ELit:
            return e.value
        if k is EOp:
            vals = [self.expr(a, env) for a in e.args]
            if any(v is UNDEF for v in vals):
                return UNDEF
            if e.op == "p1":
                return pca.n_p1(vals[0])
            if e.op == "p2":
                return pca.n_p2(vals[0])
            if e.op == "lh":
                return pca.n_lh(vals[0])
            if e.op == "comp":
                r = pca.n_comp(vals[0], vals[1])
                return UNDEF if r is None else r
            raise ValueError(e.op)
        if k is EApp:
            f, x = self.expr(e.f, env), self.expr(e.x, env)
            if f is UNDEF or x is UNDEF:
                return UNDEF
            return self.run(pca.App(pca.Const(f), pca.Const(x)))
        if k is ETerm:
            from .interp import program_in_env
            values = {x: (self.expr(v, env) if isinstance(v, Expr) else v) for x, v in e.env}
            if any(v is UNDEF for v in values.values()):
                return UNDEF
            return self.run(program_in_env(e.term, values))
        raise TypeError(e)

    def run(self, prog: pca.Program):
        b = self.budget
        b.evaluations += 1
        machine = pca.Machine(b.fuel)
        try:
            r = machine.run(prog)
        finally:
            b.steps += machine.steps
        if isinstance(r, pca.Converged):
            return r.value
        if r.stuck:
            return UNDEF
        raise _OutOfFuel()

    # formulas -------------------------------------------------------------
    def holds(self, f: Formula, env: dict | None = None) -> Verdict:
        try:
            return self.eval(f, env or {})
        except _OutOfFuel:
            return logic.unknown("fuel")
        except pca.NeedsConcrete:
            return logic.unknown("non-enumerable-domain")

    def eval(self, f: Formula, env: dict) -> Verdict:
        k = type(f)
        if k is TrueF:
            return HOLDS
        if k is FalseF:
            return FAILS
        if k is AndF:
            return self.connective(f.parts, env, conj, FAILS)
        if k is OrF:
            return self.connective(f.parts, env, disj, HOLDS)
        if k is Imp:
            return self.implication(f, env)
        if k is Iff:
            return logic.iff(lambda: self.eval(f.a, env), lambda: self.eval(f.b, env))
        if k is Not:
            return neg(self.eval(f.a, env))
        if k is Let:
            v = self.guarded_expr(f.value, env)
            if isinstance(v, Verdict):
                return v
            return self.eval(f.body, {**env, f.var: v})
        if k is Arith:
            return self.arith(f, env)
        if k is ForallF:
            return self.forall(f, env)
        if k is ExistsF:
            return self.exists(f, env)
        if k is Atom:
            return self.atom(f, env)
        if k is J:
            return self.j(f, env)
        if k is Sim:
            return self.sim(f, env)
        if k is Lemma:
            return self.lemma(f, env)
        raise TypeError(f)

    def connective(self, parts, env: dict, combine, decisive: Verdict) -> Verdict:
        """conj/disj, where a part needing a concrete value is postponed.

        If some other part already decides the whole (a failing conjunct, a
        holding disjunct) the postponed part is never needed.
        """
        postponed = None
        done = []
        for p in parts:
            try:
                v = self.eval(p, env)
            except pca.NeedsConcrete as exc:
                postponed = postponed or exc
                continue
            if v.status == decisive.status:
                return v
            done.append(v)
        if postponed is not None:
            raise postponed
        return combine(*(lambda v=v: v for v in done))

    def implication(self, f: Imp, env: dict) -> Verdict:
        try:
            va = self.eval(f.a, env)
        except pca.NeedsConcrete as exc:
            try:
                vb = self.eval(f.b, env)
            except pca.NeedsConcrete:
                raise exc from None
            if vb.holds:
                return vb
            raise
        return logic.implies(lambda: va, lambda: self.eval(f.b, env))

    def lemma(self, f: Lemma, env: dict) -> Verdict:
        try:
            args = [self.expr(a, env) for a in f.args]
        except (_OutOfFuel, pca.NeedsConcrete):
            args = None
        if args is not None and all(isinstance(a, int) for a in args):
            if self.sufficient(f.name, args):
                return HOLDS
        return self.eval(f.formula, env)

    def sufficient(self, name: str, args: list) -> bool:
        return False

    def guarded_expr(self, e: Expr, env: dict):
        try:
            return self.expr(e, env)
        except _OutOfFuel:
            return logic.unknown("fuel")

    def arith(self, f: Arith, env: dict) -> Verdict:
        try:
            a, b = self.expr(f.a, env), self.expr(f.b, env)
        except _OutOfFuel:
            return logic.unknown("fuel")
        if a is UNDEF or b is UNDEF:
            return of_bool(f.negated)
        if f.op == "=":
            r = pca.n_eq(a, b)
        elif f.op == "<":
            r = pca.n_lt(a, b)
        elif f.op == ">":
            r = pca.n_lt(b, a)
        else:
            raise ValueError(f.op)
        return of_bool(r != f.negated)

    # quantifiers ------------------------------------------------------------
    def forall(self, f: ForallF, env: dict) -> Verdict:
        spread = distribute(f)
        if spread is not f:
            return self.eval(spread, env)
        shortcut = self.restrict_forall(f, env)
        if shortcut is not None:
            return self.eval(shortcut, env)
        bounded = self.bounded(f, env, universal=True)
        if bounded is not None:
            return bounded
        dom = self.finite_domain(f.var, f.body, env, True)
        if dom is not None:
            return logic.forall_in(dom, lambda v: self.eval(f.body, {**env, f.var: v}))
        return logic.forall(lambda v: self.eval(f.body, {**env, f.var: v}), self.budget,
                            self.candidates())

    def exists(self, f: ExistsF, env: dict) -> Verdict:
        spread = distribute(f)
        if spread is not f:
            return self.eval(spread, env)
        shortcut = self.restrict_exists(f, env)
        if shortcut is not None:
            return self.eval(shortcut, env)
        bounded = self.bounded(f, env, universal=False)
        if bounded is not None:
            return bounded
        dom = self.finite_domain(f.var, f.body, env, False)
        if dom is not None:
            return logic.exists_in(dom, lambda v: self.eval(f.body, {**env, f.var: v}))
        return logic.exists(lambda v: self.eval(f.body, {**env, f.var: v}), self.budget,
                            self.candidates())

    def candidates(self):
        return ()

    def bounded(self, f, env, universal: bool):
        """Quantifiers guarded by j < lh(n) with a concrete bound."""
        body = f.body
        if universal:
            if isinstance(body, Imp) and isinstance(body.a, Arith) and not body.a.negated:
                guard, rest = body.a, body.b
            elif (isinstance(body, OrF) and body.parts and isinstance(body.parts[0], Arith)
                  and body.parts[0].negated):
                guard, rest = body.parts[0], OrF(body.parts[1:])
            else:
                return None
        else:
            if (isinstance(body, AndF) and body.parts and isinstance(body.parts[0], Arith)
                    and not body.parts[0].negated):
                guard, rest = body.parts[0], AndF(body.parts[1:])
            else:
                return None
        if guard.op != "<" or guard.a != EVar(f.var) or _mentions(guard.b, f.var):
            return None
        try:
            bound = self.expr(guard.b, env)
        except (_OutOfFuel, pca.NeedsConcrete):
            return None
        if not isinstance(bound, int):
            return None
        run = logic.forall_in if universal else logic.exists_in
        return run(range(bound), lambda v: self.eval(rest, {**env, f.var: v}))

    def restrict_forall(self, f: ForallF, env: dict):
        """Rewrite quantifiers over a numerical equivalence to the diagonal."""
        x, body = f.var, f.body
        # forall x forall y (x ~ y -> Q)
        if isinstance(body, ForallF):
            y = body.var
            guard, rest = _universal_guard(body.body)
            if (guard is not None and _is_pair_guard(guard, x, y)
                    and self.numerical(guard, env)):
                return ForallF(x, _rebuild_universal(_member_guard(guard, EVar(x)),
                                                     Let(y, EVar(x), rest)))
        # forall x (x ~ e -> Q), e not mentioning x
        guard, rest = _universal_guard(body)
        if guard is not None and _is_point_guard(guard, x) and self.numerical(guard, env):
            e = _guard_other(guard)
            return _rebuild_universal(_member_guard(guard, e), Let(x, e, rest))
        return None

    def restrict_exists(self, f: ExistsF, env: dict):
        x, body = f.var, f.body
        if isinstance(body, ExistsF):
            y = body.var
            guard, rest = _existential_guard(body.body)
            if (guard is not None and _is_pair_guard(guard, x, y)
                    and self.numerical(guard, env)):
                return ExistsF(x, And(_member_guard(guard, EVar(x)), Let(y, EVar(x), rest)))
        guard, rest = _existential_guard(body)
        if guard is not None and _is_point_guard(guard, x) and self.numerical(guard, env):
            e = _guard_other(guard)
            return And(_member_guard(guard, e), Let(x, e, rest))
        return None

    # hooks ------------------------------------------------------------------
    def numerical(self, guard, env) -> bool:
        return False

    def finite_domain(self, x: str, body, env: dict, universal: bool):
        """The exact list of values satisfying the quantifier's guard, if known."""
        return None

    def atom(self, f: Atom, env: dict) -> Verdict:
        raise TypeError("fixpoint atoms are not available here")

    def j(self, f: J, env: dict) -> Verdict:
        raise TypeError("type membership is not available here")

    def sim(self, f: Sim, env: dict) -> Verdict:
        raise TypeError("type equivalence is not available here")


def distribute(f):
    """Push a block of like quantifiers through a conjunction (disjunction).

    forall x forall y (A and B) becomes forall x forall y A and forall x forall y B,
    so that each conjunct can be matched against the guard patterns.
    Returns `f` itself when nothing changes.
    """
    q, join = (ForallF, AndF) if isinstance(f, ForallF) else (ExistsF, OrF)
    inner = f.body
    if isinstance(inner, q):
        inner = distribute(inner)
    if isinstance(inner, join) and len(inner.parts) > 1:
        return join(tuple(q(f.var, p) if not isinstance(p, join) else distribute(q(f.var, p))
                          for p in inner.parts))
    return f


def _universal_guard(body):
    """Split `guard -> rest` (either as Imp or as overline(guard) or rest)."""
    if isinstance(body, Imp) and isinstance(body.a, Sim):
        return body.a, body.b
    if (isinstance(body, OrF) and len(body.parts) >= 2 and isinstance(body.parts[0], Atom)
            and body.parts[0].pred == "eq" and body.parts[0].negated):
        rest = body.parts[1] if len(body.parts) == 2 else OrF(body.parts[1:])
        return body.parts[0], rest
    return None, None


def _existential_guard(body):
    if (isinstance(body, AndF) and len(body.parts) >= 2 and isinstance(body.parts[0], Atom)
            and body.parts[0].pred == "eq" and not body.parts[0].negated):
        rest = body.parts[1] if len(body.parts) == 2 else AndF(body.parts[1:])
        return body.parts[0], rest
    return None, None


def _guard_terms(guard):
    if isinstance(guard, Sim):
        return guard.t, guard.s
    return guard.args[0], guard.args[1]


def _is_pair_guard(guard, x: str, y: str) -> bool:
    a, b = _guard_terms(guard)
    if a != EVar(x) or b != EVar(y):
        return False
    ref = guard.ref if isinstance(guard, Sim) else CodeRef(guard.args[2])
    return not _ref_mentions(ref, x) and not _ref_mentions(ref, y)


def _is_point_guard(guard, x: str) -> bool:
    a, b = _guard_terms(guard)
    if a != EVar(x) or _mentions(b, x):
        return False
    ref = guard.ref if isinstance(guard, Sim) else CodeRef(guard.args[2])
    return not _ref_mentions(ref, x)


def _guard_other(guard):
    return _guard_terms(guard)[1]


def _member_guard(guard, e: Expr) -> Formula:
    """The membership formula matching an equivalence guard, at e."""
    if isinstance(guard, Sim):
        return J(e, guard.ref)
    return Atom("mem", (e, guard.args[2]), negated=guard.negated, dual=guard.dual)


def _rebuild_universal(member: Formula, rest: Formula) -> Formula:
    if isinstance(member, J):
        return Imp(member, rest)
    return Or(member, rest)

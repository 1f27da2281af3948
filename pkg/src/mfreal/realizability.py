"""Realizability semantics: n ⊩ φ, n ε J(A) and n ∼_{I(A)} m.

Types are interpreted relative to an environment giving naturals (possibly
symbolic) for their free variables.  Sets and propositions use the
constructor clauses shared with the set codes; the collections Set, prop_s
and A -> prop_s, and the small propositions τ(p), have clauses of their own
that consult the set-code predicates.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import logic, pca
from . import syntax as S
from .clauses import (
    UNDEF,
    And,
    Arith,
    Atom,
    ETerm,
    Expr,
    ForallF,
    Formula,
    Iff,
    Imp,
    J,
    Lemma,
    Sim,
    _OutOfFuel,
    _mentions,
    app,
    lit,
    member_clause,
    p1,
    sim_clause,
    var,
)
from .logic import HOLDS, Budget, Verdict
from .setcodes import CodeSemantics, complementarity

# ---------------------------------------------------------------------------
# References to types under an environment


def _restrict(env: dict, node: S.Node) -> tuple:
    free = S.free_vars(node)
    missing = free - env.keys()
    if missing:
        raise ValueError(f"unbound variables {sorted(missing)} in {S.show(node)}")
    return tuple(sorted(((x, env[x]) for x in free), key=lambda kv: kv[0]))


@dataclass(frozen=True)
class TypeRef:
    """A type with values for its free variables.

    A value may be a formula expression, evaluated when the reference is
    used (this is how open contexts bind type variables to quantified ones).
    """

    A: S.TypeExpr
    env: tuple

    @classmethod
    def of(cls, A: S.TypeExpr, env: dict) -> "TypeRef":
        return cls(A, _restrict(env, A))

    def show(self) -> str:
        return S.show(self.A)

    def mentions(self, name: str) -> bool:
        return any(isinstance(v, Expr) and _mentions(v, name) for _, v in self.env)


@dataclass(frozen=True)
class FamRef:
    """B[arg/y] for a family B over the variable y; arg is a formula expression."""

    y: str
    B: S.TypeExpr
    env: tuple
    arg: object

    def show(self) -> str:
        return f"{S.show(self.B)}[{self.y}]"

    def mentions(self, name: str) -> bool:
        return _mentions(self.arg, name) or any(
            isinstance(v, Expr) and _mentions(v, name) for _, v in self.env)


@dataclass(frozen=True)
class Doteq(Formula):
    """I(A) ≐ I(B): the two equivalence relations coincide."""

    left: TypeRef
    right: TypeRef


def _term(t: S.Term, env: dict) -> ETerm:
    return ETerm(t, _restrict(env, t))


class _Refs:
    def __init__(self, A: S.TypeExpr, env: dict):
        self.self = TypeRef.of(A, env)
        self.A = self.A2 = self.phi = self.phi2 = None
        self.t = self.s = None
        self._family = None
        if isinstance(A, (S.Pi, S.Sigma, S.Exists, S.Forall)):
            self.A = TypeRef.of(A.A, env)
            inner = {k: v for k, v in env.items() if k != A.y}
            self._family = (A.y, A.B, tuple(sorted(
                ((x, inner[x]) for x in S.free_vars(A.B) - {A.y}), key=lambda kv: kv[0])))
        elif isinstance(A, S.Plus):
            self.A, self.A2 = TypeRef.of(A.A, env), TypeRef.of(A.B, env)
        elif isinstance(A, S.ListT):
            self.A = TypeRef.of(A.A, env)
        elif isinstance(A, (S.And, S.Or, S.Imp)):
            self.phi, self.phi2 = TypeRef.of(A.A, env), TypeRef.of(A.B, env)
        elif isinstance(A, S.Id):
            self.A = TypeRef.of(A.A, env)
            self.t, self.s = _term(A.t, env), _term(A.t2, env)

    def fam(self, x):
        y, B, env = self._family
        return FamRef(y, B, env, x)


_KIND = {
    S.N0: "N0", S.N1: "N1", S.Nat: "N", S.Pi: "Pi", S.Sigma: "Sigma", S.Plus: "Plus",
    S.ListT: "List", S.Bot: "Bot", S.And: "And", S.Or: "Or", S.Imp: "Imp",
    S.Exists: "Exists", S.Forall: "Forall", S.Id: "Id",
}


def is_numerical(A: S.TypeExpr) -> bool:
    """Built from N0, N1, N by Σ, + and List: equivalence is equality."""
    if isinstance(A, (S.N0, S.N1, S.Nat)):
        return True
    if isinstance(A, (S.Sigma, S.Plus)):
        return is_numerical(A.A) and is_numerical(A.B)
    if isinstance(A, S.ListT):
        return is_numerical(A.A)
    return False


# ---------------------------------------------------------------------------
# Collection clauses


def _mem(t, c, negated=False):
    return Atom("mem", (t, c), negated)


def _eqv(t, s, c, negated=False):
    return Atom("eq", (t, s, c), negated)


def _set_member(n) -> Formula:
    return And(Atom("set", (n,)), Lemma("complementary", (n,), complementarity(n)))


_SET = TypeRef(S.SetU(), ())
_PROPS = TypeRef(S.PropS(), ())


def collection_member(A: S.TypeExpr, n, env: dict) -> Formula:
    t, s = var("t"), var("s")
    if isinstance(A, S.SetU):
        return _set_member(n)
    if isinstance(A, S.PropS):
        return And(J(n, _SET), Arith(">", p1(n), lit(5)),
                   ForallF("t", ForallF("s", Iff(And(_mem(t, n), _mem(s, n)), _eqv(t, s, n)))))
    if isinstance(A, S.FunPropS):
        dom = TypeRef.of(A.A, env)
        return ForallF("t", ForallF("s", Imp(Sim(t, s, dom), Sim(app(n, t), app(n, s), _PROPS))))
    if isinstance(A, S.Tau):
        return _mem(n, _term(A.t, env))
    raise TypeError(S.show(A))


def collection_equiv(A: S.TypeExpr, n, m, env: dict) -> Formula:
    t, s = var("t"), var("s")
    me = TypeRef.of(A, env)
    both = (J(n, me), J(m, me))
    if isinstance(A, S.SetU):
        return And(*both, ForallF("t", Iff(_mem(t, n), _mem(t, m))),
                   ForallF("t", ForallF("s", Iff(_eqv(t, s, n), _eqv(t, s, m)))))
    if isinstance(A, S.PropS):
        return And(*both, ForallF("t", Iff(_mem(t, n), _mem(t, m))))
    if isinstance(A, S.FunPropS):
        dom = TypeRef.of(A.A, env)
        return And(*both, ForallF("t", Imp(J(t, dom), Sim(app(n, t), app(m, t), _PROPS))))
    if isinstance(A, S.Tau):
        return And(*both)
    raise TypeError(S.show(A))


def member_formula(A: S.TypeExpr, env: dict) -> Formula:
    """The clause for n ε J(A), with n the formula variable 'n'."""
    kind = _KIND.get(type(A))
    if kind is None:
        return collection_member(A, var("n"), env)
    return member_clause(kind, var("n"), _Refs(A, env))


def equiv_formula(A: S.TypeExpr, env: dict) -> Formula:
    kind = _KIND.get(type(A))
    if kind is None:
        return collection_equiv(A, var("n"), var("m"), env)
    return sim_clause(kind, var("n"), var("m"), _Refs(A, env))


# ---------------------------------------------------------------------------
# Carriers


@dataclass(frozen=True)
class Carrier:
    kind: str  # empty | finite | numeric | opaque
    elements: tuple = ()
    numerical: bool = False

    @property
    def finite(self) -> bool:
        return self.kind in ("empty", "finite")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "numerical": self.numerical}
        if self.finite:
            out["elements"] = [str(e) for e in self.elements]
        return out


_FINITE_LIMIT = 4096


def classify_carrier(A: S.TypeExpr, env: dict | None = None,
                     budget: Budget | None = None) -> Carrier:
    """Enumerability of J(A); finite carriers are listed exactly."""
    env = env or {}
    numerical = is_numerical(A)
    elems = _finite_elements(A, env, budget or Budget())
    if elems is not None:
        return Carrier("empty" if not elems else "finite", tuple(elems), numerical)
    if numerical:
        return Carrier("numeric", (), True)
    return Carrier("opaque")


def _finite_elements(A, env, budget):
    if isinstance(A, (S.N0, S.Bot)):
        return []
    if isinstance(A, S.N1):
        return [0]
    if isinstance(A, S.Plus):
        a, b = _finite_elements(A.A, env, budget), _finite_elements(A.B, env, budget)
        if a is None or b is None:
            return None
        return [pca.pair(0, x) for x in a] + [pca.pair(1, x) for x in b]
    if isinstance(A, S.Sigma) and is_numerical(A):
        firsts = _finite_elements(A.A, env, budget)
        if firsts is None:
            return None
        out = []
        for x in firsts:
            fiber = _finite_elements(A.B, {**env, A.y: x}, budget)
            if fiber is None:
                return None
            out.extend(pca.pair(x, y) for y in fiber)
            if len(out) > _FINITE_LIMIT:
                return None
        return out
    if isinstance(A, S.ListT):
        inner = _finite_elements(A.A, env, budget)
        return [0] if inner == [] else None
    if isinstance(A, S.And):
        a, b = _finite_elements(A.A, env, budget), _finite_elements(A.B, env, budget)
        if a == [] or b == []:
            return []
        return None
    if isinstance(A, S.Id):
        v = member(0, A, env, budget)
        return [] if v.fails else None
    return None


# ---------------------------------------------------------------------------
# The evaluator


class Semantics(CodeSemantics):
    """Formula evaluator for realizability and the set-code predicates."""

    def _values(self, pairs, env: dict) -> dict:
        return {k: (self.expr(v, env) if isinstance(v, Expr) else v) for k, v in pairs}

    def resolve(self, ref, env: dict):
        if isinstance(ref, TypeRef):
            return ref.A, self._values(ref.env, env)
        if isinstance(ref, FamRef):
            x = self.expr(ref.arg, env)
            return ref.B, {**self._values(ref.env, env), ref.y: x}
        raise TypeError(ref)

    def eval(self, f, env: dict) -> Verdict:
        if type(f) is Doteq:
            return self.doteq(f, env)
        return super().eval(f, env)

    def doteq(self, f: Doteq, env: dict) -> Verdict:
        try:
            A, aenv = self.resolve(f.left, env)
            B, benv = self.resolve(f.right, env)
        except _OutOfFuel:
            return logic.unknown("fuel")
        if S.alpha_eq(_instantiate(A, aenv), _instantiate(B, benv)):
            return HOLDS
        t, s = var("t"), var("s")
        body = ForallF("t", ForallF("s", Iff(Sim(t, s, TypeRef.of(A, aenv)),
                                             Sim(t, s, TypeRef.of(B, benv)))))
        return self.eval(body, {})

    def j(self, f: J, env: dict) -> Verdict:
        try:
            A, tenv = self.resolve(f.ref, env)
            try:
                v = self.expr(f.t, env)
            except pca.NeedsConcrete:
                if self.refuted_for_all(A, tenv):
                    return logic.FAILS
                raise
            if v is UNDEF:
                return logic.FAILS
        except _OutOfFuel:
            return logic.unknown("fuel")
        return self.type_member(v, A, tenv)

    def refuted_for_all(self, A: S.TypeExpr, env: dict) -> bool:
        """Is J(A) empty for a reason that does not look at the element?"""
        if isinstance(A, (S.Bot, S.N0)):
            return True
        if isinstance(A, S.Id):
            return self.type_equiv_terms(A, env).fails
        return False

    def type_equiv_terms(self, A: S.Id, env: dict) -> Verdict:
        return self.eval(Sim(_term(A.t, env), _term(A.t2, env), TypeRef.of(A.A, env)), {})

    def sim(self, f: Sim, env: dict) -> Verdict:
        try:
            v, w = self.expr(f.t, env), self.expr(f.s, env)
            if v is UNDEF or w is UNDEF:
                return logic.FAILS
            A, tenv = self.resolve(f.ref, env)
        except _OutOfFuel:
            return logic.unknown("fuel")
        return self.type_equiv(v, w, A, tenv)

    def _key(self, tag, values, A, tenv):
        items = tuple(sorted(((x, tenv[x]) for x in S.free_vars(A)), key=lambda kv: kv[0]))
        concrete = all(isinstance(v, int) for v in values) and all(
            isinstance(v, int) for _, v in items)
        return (tag, *values, S.alpha_key(A), items), concrete

    def type_member(self, v, A: S.TypeExpr, tenv: dict) -> Verdict:
        key, concrete = self._key("J", (v,), A, tenv)
        return self._guarded(key, lambda: self.eval(member_formula(A, tenv), {"n": v}),
                             concrete)

    def type_equiv(self, v, w, A: S.TypeExpr, tenv: dict) -> Verdict:
        key, concrete = self._key("Sim", (v, w), A, tenv)
        return self._guarded(key, lambda: self.eval(equiv_formula(A, tenv), {"n": v, "m": w}),
                             concrete)

    def numerical(self, guard, env) -> bool:
        if isinstance(guard, Sim):
            try:
                A, _ = self.resolve(guard.ref, env)
            except (_OutOfFuel, pca.NeedsConcrete):
                return False
            return is_numerical(A)
        return super().numerical(guard, env)

    def finite_domain(self, x: str, body, env: dict, universal: bool):
        guard = None
        if universal and isinstance(body, Imp) and isinstance(body.a, J):
            guard = body.a
        elif not universal and hasattr(body, "parts") and body.parts and isinstance(
                body.parts[0], J):
            guard = body.parts[0]
        if guard is None or guard.t != var(x):
            return None
        try:
            A, tenv = self.resolve(guard.ref, env)
        except (_OutOfFuel, pca.NeedsConcrete):
            return None
        if S.free_vars(A) - tenv.keys():
            return None
        if not all(isinstance(v, int) for v in tenv.values()):
            return None
        elems = _finite_elements(A, tenv, self.budget)
        return elems


# ---------------------------------------------------------------------------
# Public API


def _run(f, budget: Budget | None) -> Verdict:
    sem = Semantics(budget or Budget())
    try:
        return f(sem)
    except _OutOfFuel:
        return logic.unknown("fuel")
    except pca.NeedsConcrete:
        return logic.unknown("non-enumerable-domain")


def member(n, A: S.TypeExpr, env: dict | None = None, budget: Budget | None = None) -> Verdict:
    """n ε J(A)."""
    return _run(lambda sem: sem.type_member(n, A, dict(env or {})), budget)


def equiv(n, m, A: S.TypeExpr, env: dict | None = None,
          budget: Budget | None = None) -> Verdict:
    """n ∼_{I(A)} m."""
    return _run(lambda sem: sem.type_equiv(n, m, A, dict(env or {})), budget)


def realizes(n, phi: S.TypeExpr, env: dict | None = None,
             budget: Budget | None = None) -> Verdict:
    """n ⊩ φ for a (small) proposition φ."""
    if S.stratum_of(phi) not in ("props", "prop"):
        raise ValueError(f"{S.show(phi)} is not a proposition")
    return member(n, phi, env, budget)


def member_funtoprops(n, A: S.TypeExpr, env: dict | None = None,
                      budget: Budget | None = None) -> Verdict:
    """n ε J(A -> prop_s)."""
    return member(n, S.FunPropS(A), env, budget)


def _instantiate(A: S.TypeExpr, env: dict) -> S.TypeExpr:
    """A with its free variables replaced by the values in env."""
    return S.substitute_many(A, {x: S.Num(env[x]) for x in S.free_vars(A) if x in env})


def type_equal(A: S.TypeExpr, B: S.TypeExpr, env: dict | None = None,
               env2: dict | None = None, budget: Budget | None = None) -> Verdict:
    """I(A) ≐ I(B).  `env2`, when given, interprets B (to compare A[x] with A[y])."""
    env = dict(env or {})
    env2 = env if env2 is None else dict(env2)
    f = Doteq(TypeRef.of(A, env), TypeRef.of(B, env2))
    return _run(lambda sem: sem.holds(f), budget)


def formula_holds(f: Formula, env: dict | None = None, budget: Budget | None = None) -> Verdict:
    return _run(lambda sem: sem.holds(f, env or {}), budget)

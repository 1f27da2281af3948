"""Realizers for extensionality, choice and Church's thesis, and the
comparison of the model with Kleene realizability on arithmetic.

Every principle comes with the natural number realizing it and a validation
routine.  The propositions quantify over function codes, so a realizer is
validated on an instance matrix: sampled members (or premise realizers) are
plugged in and the remaining, bounded, statement is decided by the
realizability evaluator.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from . import interp, logic, pca
from . import realizability as R
from . import syntax as S
from .clauses import (
    And,
    Arith,
    Evaluator,
    FalseF,
    ForallF,
    Formula,
    Imp,
    Let,
    Or,
    app,
    eq,
    lit,
    p1,
    p2,
    var,
)
from .logic import FAILS, HOLDS, Budget, Verdict
from .pca import App, Const, Lam, Prim
from .pca import Var as PVar

# ---------------------------------------------------------------------------
# First-order arithmetic


class HaTerm:
    pass


@dataclass(frozen=True)
class HVar(HaTerm):
    name: str


@dataclass(frozen=True)
class HZero(HaTerm):
    pass


@dataclass(frozen=True)
class HSucc(HaTerm):
    t: HaTerm


@dataclass(frozen=True)
class HFun(HaTerm):
    """A primitive recursive function symbol applied to arguments."""

    name: str
    args: tuple


class HaFormula:
    pass


@dataclass(frozen=True)
class HEq(HaFormula):
    t: HaTerm
    s: HaTerm


@dataclass(frozen=True)
class HBot(HaFormula):
    pass


@dataclass(frozen=True)
class HAnd(HaFormula):
    a: HaFormula
    b: HaFormula


@dataclass(frozen=True)
class HOr(HaFormula):
    a: HaFormula
    b: HaFormula


@dataclass(frozen=True)
class HImp(HaFormula):
    a: HaFormula
    b: HaFormula


@dataclass(frozen=True)
class HForall(HaFormula):
    x: str
    body: HaFormula


@dataclass(frozen=True)
class HExists(HaFormula):
    x: str
    body: HaFormula


def ha_numeral(n: int) -> HaTerm:
    t: HaTerm = HZero()
    for _ in range(n):
        t = HSucc(t)
    return t


def ha_free_vars(x) -> frozenset:
    if isinstance(x, HVar):
        return frozenset({x.name})
    if isinstance(x, HZero | HBot):
        return frozenset()
    if isinstance(x, HSucc):
        return ha_free_vars(x.t)
    if isinstance(x, HFun):
        return frozenset().union(*(ha_free_vars(a) for a in x.args))
    if isinstance(x, HEq):
        return ha_free_vars(x.t) | ha_free_vars(x.s)
    if isinstance(x, HAnd | HOr | HImp):
        return ha_free_vars(x.a) | ha_free_vars(x.b)
    if isinstance(x, HForall | HExists):
        return ha_free_vars(x.body) - {x.x}
    raise TypeError(x)


def ha_closed(phi: HaFormula) -> bool:
    return not ha_free_vars(phi)


# Primitive recursive function symbols: arity, meaning, and the recursion
# they are defined by (used for both translations).

def _monus(a, b):
    return max(a - b, 0)


FUNCTIONS = {
    "add": (2, lambda a, b: a + b),
    "mul": (2, lambda a, b: a * b),
    "pred": (1, lambda a: max(a - 1, 0)),
    "sub": (2, _monus),
}


def ha_value(t: HaTerm, env: dict | None = None) -> int:
    env = env or {}
    if isinstance(t, HZero):
        return 0
    if isinstance(t, HSucc):
        return ha_value(t.t, env) + 1
    if isinstance(t, HVar):
        return env[t.name]
    if isinstance(t, HFun):
        _, f = _function(t.name, len(t.args))
        return f(*(ha_value(a, env) for a in t.args))
    raise TypeError(t)


def _function(name: str, arity: int):
    if name not in FUNCTIONS:
        raise ValueError(f"{name} is not a known primitive recursive function")
    if FUNCTIONS[name][0] != arity:
        raise ValueError(f"{name} takes {FUNCTIONS[name][0]} arguments")
    return FUNCTIONS[name]


def ha_show(x) -> str:
    if isinstance(x, HZero):
        return "0"
    if isinstance(x, HSucc):
        return f"succ({ha_show(x.t)})"
    if isinstance(x, HVar):
        return x.name
    if isinstance(x, HFun):
        return f"{x.name}({', '.join(ha_show(a) for a in x.args)})"
    if isinstance(x, HEq):
        return f"{ha_show(x.t)} = {ha_show(x.s)}"
    if isinstance(x, HBot):
        return "Bot"
    if isinstance(x, HAnd):
        return f"({ha_show(x.a)} & {ha_show(x.b)})"
    if isinstance(x, HOr):
        return f"({ha_show(x.a)} | {ha_show(x.b)})"
    if isinstance(x, HImp):
        return f"({ha_show(x.a)} -> {ha_show(x.b)})"
    if isinstance(x, HForall):
        return f"(forall {x.x}. {ha_show(x.body)})"
    if isinstance(x, HExists):
        return f"(exists {x.x}. {ha_show(x.body)})"
    raise TypeError(x)


_HA_TOKEN = re.compile(r"\s*(?:(->|\d+|[A-Za-z_][A-Za-z0-9_]*|[().,=&|])|(\S))")


def parse_ha(text: str) -> HaFormula:
    """Parse `forall x. exists y. (y = succ(x) | Bot) -> add(x, 0) = x` style text."""
    toks = []
    for m in _HA_TOKEN.finditer(text):
        if m.group(2):
            raise S.ParseError(f"unexpected {m.group(2)!r} in {text!r}")
        if m.group(1):
            toks.append(m.group(1))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise S.ParseError(f"expected {expected or 'more input'} in {text!r}, found {tok!r}")
        pos += 1
        return tok

    def formula():
        a = disjunction()
        if peek() == "->":
            take()
            return HImp(a, formula())
        return a

    def disjunction():
        a = conjunction()
        if peek() == "|":
            take()
            return HOr(a, disjunction())
        return a

    def conjunction():
        a = unary()
        if peek() == "&":
            take()
            return HAnd(a, conjunction())
        return a

    def unary():
        tok = peek()
        if tok in ("forall", "exists"):
            take()
            x = take()
            take(".")
            body = formula()
            return HForall(x, body) if tok == "forall" else HExists(x, body)
        if tok == "Bot":
            take()
            return HBot()
        if tok == "(":
            save = pos
            try:
                take()
                f = formula()
                take(")")
                return f
            except S.ParseError:
                _reset(save)
        t = term()
        take("=")
        return HEq(t, term())

    def _reset(p):
        nonlocal pos
        pos = p

    def term():
        tok = take()
        if tok.isdigit():
            return ha_numeral(int(tok))
        if tok == "succ":
            take("(")
            t = term()
            take(")")
            return HSucc(t)
        if tok == "(":
            t = term()
            take(")")
            return t
        if peek() == "(":
            take()
            args = [term()]
            while peek() == ",":
                take()
                args.append(term())
            take(")")
            _function(tok, len(args))
            return HFun(tok, tuple(args))
        if not re.match(r"[A-Za-z_]", tok):
            raise S.ParseError(f"unexpected {tok!r} in {text!r}")
        return HVar(tok)

    phi = formula()
    if peek() is not None:
        raise S.ParseError(f"trailing input {peek()!r} in {text!r}")
    return phi


# ---------------------------------------------------------------------------
# Embedding arithmetic into the type theory


def _rec(counter: S.Term, base: S.Term, step) -> S.Term:
    y, z = "_y", "_z"
    return S.ElN(counter, base, y, z, step(S.Var(y), S.Var(z)))


def embed_ha_term(t: HaTerm) -> S.Term:
    """The mTT term for t: 0 and succ directly, function symbols via El_N."""
    if isinstance(t, HZero):
        return S.Zero()
    if isinstance(t, HSucc):
        return S.Succ(embed_ha_term(t.t))
    if isinstance(t, HVar):
        return S.Var(t.name)
    if isinstance(t, HFun):
        _function(t.name, len(t.args))
        args = [embed_ha_term(a) for a in t.args]
        return _EMBED[t.name](*args)
    raise TypeError(t)


def _embed_add(a, b):
    return _rec(b, a, lambda y, z: S.Succ(z))


def _embed_pred(a):
    return _rec(a, S.Zero(), lambda y, z: y)


def _embed_mul(a, b):
    # the step mentions a, so its binders must avoid a's variables
    y, z = S.fresh_name("_y", S.free_vars(a)), S.fresh_name("_z", S.free_vars(a))
    return S.ElN(b, S.Zero(), y, z, _embed_add(S.Var(z), a))


def _embed_sub(a, b):
    return _rec(b, a, lambda y, z: _embed_pred(z))


_EMBED = {"add": _embed_add, "mul": _embed_mul, "pred": _embed_pred, "sub": _embed_sub}


def embed_ha(phi: HaFormula) -> S.TypeExpr:
    """The proposition φ̄."""
    if isinstance(phi, HBot):
        return S.Bot()
    if isinstance(phi, HEq):
        return S.Id(S.Nat(), embed_ha_term(phi.t), embed_ha_term(phi.s))
    if isinstance(phi, HAnd):
        return S.And(embed_ha(phi.a), embed_ha(phi.b))
    if isinstance(phi, HOr):
        return S.Or(embed_ha(phi.a), embed_ha(phi.b))
    if isinstance(phi, HImp):
        return S.Imp(embed_ha(phi.a), embed_ha(phi.b))
    if isinstance(phi, HForall):
        return S.Forall(phi.x, S.Nat(), embed_ha(phi.body))
    if isinstance(phi, HExists):
        return S.Exists(phi.x, S.Nat(), embed_ha(phi.body))
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# Kleene realizability
#
# HA terms are read in the PCA directly: each function symbol is a program
# built from the rec primitive, independently of the El_N translation.


def _ha_program(t: HaTerm, scope: list) -> pca.Program:
    if isinstance(t, HZero):
        return Const(0)
    if isinstance(t, HSucc):
        return App(Prim(pca.SUCC), _ha_program(t.t, scope))
    if isinstance(t, HVar):
        return PVar(len(scope) - 1 - scope.index(t.name))
    args = [_ha_program(a, scope) for a in t.args]
    _function(t.name, len(args))
    return _PCA[t.name](*args)


def _prec(base, step, counter):
    return pca.apps(Prim(pca.REC), base, step, counter)


def _step(body):
    """Λy.Λz.body, where body may use z as Var(0) and y as Var(1)."""
    return Lam(Lam(body))


def _pca_add(a, b):
    return _prec(a, _step(App(Prim(pca.SUCC), PVar(0))), b)


def _pca_pred(a):
    return _prec(Const(0), _step(PVar(1)), a)


def _pca_mul(a, b):
    return _prec(Const(0), _step(_pca_add(PVar(0), pca.shift(a, 2))), b)


def _pca_sub(a, b):
    return _prec(a, _step(_pca_pred(PVar(0))), b)


_PCA = {"add": _pca_add, "mul": _pca_mul, "pred": _pca_pred, "sub": _pca_sub}


def ha_expr(t: HaTerm):
    """t as a formula expression over its free variables."""
    names = sorted(ha_free_vars(t))
    body = _ha_program(t, names)
    if not names:
        r = pca.run(body)
        return lit(r.value)
    for _ in names:
        body = Lam(body)
    e = lit(body.code)
    for x in names:
        e = app(e, var(x))
    return e


def _defined(e) -> Formula:
    return Arith("=", e, e)


def kleene_formula(n, phi: HaFormula, level: int = 0) -> Formula:
    """n ⊩_k φ as a formula (n an expression)."""
    if isinstance(phi, HEq):
        return eq(ha_expr(phi.t), ha_expr(phi.s))
    if isinstance(phi, HBot):
        return FalseF()
    if isinstance(phi, HAnd):
        return And(kleene_formula(p1(n), phi.a, level), kleene_formula(p2(n), phi.b, level))
    if isinstance(phi, HOr):
        return Or(And(eq(p1(n), lit(0)), kleene_formula(p2(n), phi.a, level)),
                  And(Arith("=", p1(n), lit(0), negated=True),
                      kleene_formula(p2(n), phi.b, level)))
    if isinstance(phi, HImp):
        m = f"_m{level}"
        fm = app(n, var(m))
        return ForallF(m, Imp(kleene_formula(var(m), phi.a, level + 1),
                              And(_defined(fm), kleene_formula(fm, phi.b, level + 1))))
    if isinstance(phi, HForall):
        fx = app(n, var(phi.x))
        return ForallF(phi.x, And(_defined(fx), kleene_formula(fx, phi.body, level)))
    if isinstance(phi, HExists):
        return Let(phi.x, p1(n), kleene_formula(p2(n), phi.body, level))
    raise TypeError(phi)


def kleene_realizes(n, phi: HaFormula, budget: Budget | None = None) -> Verdict:
    """n ⊩_k φ for closed φ."""
    if not ha_closed(phi):
        raise ValueError("kleene_realizes needs a closed formula")
    return Evaluator(budget or Budget()).holds(kleene_formula(lit(n), phi))


def _closed_terms(x):
    if isinstance(x, HaTerm):
        if not ha_free_vars(x):
            yield x
        return
    if isinstance(x, HEq):
        yield from _closed_terms(x.t)
        yield from _closed_terms(x.s)
    elif isinstance(x, HAnd | HOr | HImp):
        yield from _closed_terms(x.a)
        yield from _closed_terms(x.b)
    elif isinstance(x, HForall | HExists):
        yield from _closed_terms(x.body)


DEFAULT_SAMPLES = tuple(range(0, 21)) + tuple(pca.pair(a, b) for a in range(4) for b in range(3))


def lemma_realiz_check(phi: HaFormula, samples=None, budget: Budget | None = None) -> Verdict:
    """I(t̄) = t for the closed terms of φ, and n ⊩_k φ ⇔ n ⊩ φ̄ on samples.

    Fails on a decided disagreement; Unknown if no sample was decided on
    both sides.
    """
    budget = budget or Budget()
    if not ha_closed(phi):
        raise ValueError("lemma_realiz_check needs a closed formula")
    for t in _closed_terms(phi):
        r = interp.evaluate(embed_ha_term(t), {}, budget.fuel)
        if not isinstance(r, pca.Converged):
            return logic.unknown("fuel")
        if r.value != ha_value(t):
            return Verdict(logic.FAILS_S, note=f"I({ha_show(t)}) = {r.value}")
    target = embed_ha(phi)
    decided = 0
    for n in (DEFAULT_SAMPLES if samples is None else samples):
        k = kleene_realizes(n, phi, budget)
        m = R.realizes(n, target, {}, budget)
        if k.unknown or m.unknown:
            continue
        if k.holds != m.holds:
            return Verdict(logic.FAILS_S, note=f"{n}: kleene {k}, model {m}")
        decided += 1
    return HOLDS if decided else logic.unknown("enum_bound")


class HaGen:
    """Random closed arithmetic formulas."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def term(self, scope: list, depth: int) -> HaTerm:
        rng = self.rng
        k = rng.randrange(6 if depth > 0 else 3)
        if k == 0 or (k == 2 and not scope):
            return ha_numeral(rng.randint(0, 3))
        if k == 1:
            return HSucc(self.term(scope, depth - 1)) if depth > 0 else HZero()
        if k == 2:
            return HVar(rng.choice(scope))
        name = rng.choice(sorted(FUNCTIONS))
        arity = FUNCTIONS[name][0]
        return HFun(name, tuple(self.term(scope, depth - 1) for _ in range(arity)))

    def formula(self, scope: list | None = None, depth: int = 3) -> HaFormula:
        rng = self.rng
        scope = scope or []
        k = rng.randrange(8 if depth > 0 else 2)
        if k == 0:
            return HEq(self.term(scope, 2), self.term(scope, 2))
        if k == 1:
            return HBot() if rng.random() < 0.3 else HEq(self.term(scope, 1), self.term(scope, 1))
        if k == 2:
            return HAnd(self.formula(scope, depth - 1), self.formula(scope, depth - 1))
        if k == 3:
            return HOr(self.formula(scope, depth - 1), self.formula(scope, depth - 1))
        if k == 4:
            return HImp(self.formula(scope, depth - 1), self.formula(scope, depth - 1))
        x = f"x{len(scope)}"
        body = self.formula(scope + [x], depth - 1)
        return HForall(x, body) if k == 5 else HExists(x, body)


def run_lemma_suite(seed: int = 0, count: int = 200, budget: Budget | None = None) -> dict:
    budget = budget or Budget(enum_bound=16)
    rng = random.Random(f"{seed}:lemma-realiz")
    gen = HaGen(rng)
    rows, disagreements, decided = [], 0, 0
    for i in range(count):
        phi = gen.formula()
        v = lemma_realiz_check(phi, None, budget)
        disagreements += v.fails
        decided += not v.unknown
        rows.append({"index": i, "formula": ha_show(phi), "verdict": v.to_json()})
    return {"total": count, "decided": decided, "disagreements": disagreements, "formulas": rows}


# ---------------------------------------------------------------------------
# Realizers

def _code(p: pca.Program) -> int:
    return p.code


def _pair(a, b):
    return pca.apps(Prim(pca.PAIR), a, b)


def _p1(a):
    return App(Prim(pca.P1), a)


def _p2(a):
    return App(Prim(pca.P2), a)


def extfun_realizer() -> int:
    """Λf.Λg.Λr.0"""
    return _code(Lam(Lam(Lam(Const(0)))))


def ac_realizer() -> int:
    """Λr.⟨Λn.π1({r}(n)), Λn.π2({r}(n))⟩"""
    rn = App(PVar(1), PVar(0))
    return _code(Lam(_pair(Lam(_p1(rn)), Lam(_p2(rn)))))


def ac_unique_realizer() -> int:
    """Λr.⟨Λn.π1(π1({r}(n))), Λn.π2(π1({r}(n)))⟩: the ∃ part of each premise."""
    rn = _p1(App(PVar(1), PVar(0)))
    return _code(Lam(_pair(Lam(_p1(rn)), Lam(_p2(rn)))))


def trace_realizer() -> int:
    """The numeral r with {r}(f, x) = ⟨u, 0⟩ for u the trace of {f}(x).

    When {f}(x) converges, u satisfies T(f, x, u), so ⟨u, 0⟩ realizes
    ∃u T(f, x, u) (an atomic formula is realized by anything when true).
    """
    return _code(Lam(Lam(_pair(pca.apps(Prim(pca.TRACE), PVar(1), PVar(0)), Const(0)))))


def ct_lambda_realizer() -> int:
    """Λf.⟨f, Λx.⟨π1({r}(f,x)), ⟨π2({r}(f,x)), 0⟩⟩⟩ with r = trace_realizer().

    {r}(f,x) is computed once and bound, so the trace is only built once.
    """
    rfx = pca.apps(Const(trace_realizer()), PVar(1), PVar(0))
    split = Lam(_pair(_p1(PVar(0)), _pair(_p2(PVar(0)), Const(0))))
    return _code(Lam(_pair(PVar(0), Lam(App(split, rfx)))))


def ct_realizer() -> int:
    """AC_{N,N} followed by CT_λ on the chosen function.

    Λr. let ⟨F, G⟩ = {ac}(r), ⟨e, h⟩ = {ctλ}(F)
        in ⟨e, Λx.⟨π1({h}(x)), ⟨π1(π2({h}(x))), {G}(x)⟩⟩⟩
    """
    choice = App(Const(ac_realizer()), PVar(0))
    church = App(Const(ct_lambda_realizer()), _p1(choice))

    def under(p):  # the same value one binder deeper
        return pca.shift(p, 1)

    hx = App(_p2(under(church)), PVar(0))
    gx = App(_p2(under(choice)), PVar(0))
    return _code(Lam(_pair(_p1(church), Lam(_pair(_p1(hx), _pair(_p1(_p2(hx)), gx))))))


PRINCIPLES = {
    "extfun": extfun_realizer,
    "ac": ac_realizer,
    "ac-unique": ac_unique_realizer,
    "ct-lambda": ct_lambda_realizer,
    "ct": ct_realizer,
}


def realizer(name: str) -> int:
    return PRINCIPLES[name]()


# ---------------------------------------------------------------------------
# Propositions

def _pi(A, B):
    return S.Pi("x", A, B)


def extfun_proposition(A: S.TypeExpr, B: S.TypeExpr) -> S.TypeExpr:
    F = _pi(A, B)
    f, g = S.Var("f"), S.Var("g")
    return S.Forall("f", F, S.Forall("g", F, _extfun_body(A, B, f, g)))


def _extfun_body(A, B, f, g):
    x = S.Var("x")
    return S.Imp(S.Forall("x", A, S.Id(B, S.Ap(f, x), S.Ap(g, x))), S.Id(_pi(A, B), f, g))


def ac_proposition(A, B, rho: S.TypeExpr) -> S.TypeExpr:
    """ρ has free x (in A) and y (in B)."""
    premise = S.Forall("x", A, S.Exists("y", B, rho))
    return S.Imp(premise, ac_conclusion(A, B, rho))


def ac_conclusion(A, B, rho):
    chosen = S.substitute(rho, "y", S.Ap(S.Var("f"), S.Var("x")))
    return S.Exists("f", _pi(A, B), S.Forall("x", A, chosen))


def exists_unique(y: str, B: S.TypeExpr, rho: S.TypeExpr) -> S.TypeExpr:
    """(∃y∈B)ρ ∧ (∀y∈B)(∀y'∈B)(ρ ∧ ρ[y'/y] → Id(B, y, y'))."""
    y2 = S.fresh_name(y + "'", S.free_vars(rho) | {y})
    both = S.And(rho, S.substitute(rho, y, S.Var(y2)))
    unique = S.Forall(y, B, S.Forall(y2, B, S.Imp(both, S.Id(B, S.Var(y), S.Var(y2)))))
    return S.And(S.Exists(y, B, rho), unique)


def ac_unique_proposition(A, B, rho):
    premise = S.Forall("x", A, exists_unique("y", B, rho))
    return S.Imp(premise, ac_conclusion(A, B, rho))


# ---------------------------------------------------------------------------
# Validation on instance matrices


@dataclass
class PrincipleReport:
    principle: str
    realizer: int
    instances: list

    @property
    def verdict(self) -> Verdict:
        return logic.conj(*(lambda v=row["verdict"]: v for row in self.instances))

    def to_json(self) -> dict:
        return {
            "principle": self.principle,
            "realizer": str(self.realizer),
            "program": pca.pretty(pca.decode(self.realizer)),
            "verdict": self.verdict.to_json(),
            "instances": [{**row, "verdict": row["verdict"].to_json()} for row in self.instances],
        }


def _value(src: str) -> int:
    return interp.evaluate(S.parse_term(src)).value


FUNCTION_SAMPLES = (
    "lam w. 0", "lam w. 1", "lam w. w", "lam w. succ(w)", "lam w. elN1(w, 0)",
    "lam w. elN1(w, 1)", "lam w. pair(0, 0)", "lam w. elPlus(w, (a) pair(1, 0), (b) pair(0, 0))",
    "lam w. elPlus(w, (a) 0, (b) 1)", "lam w. star",
)

EXTFUN_MATRIX = (("N1", "N"), ("N1", "N1"), ("N0", "N"), ("N1 + N1", "N"),
                 ("N1", "N1 + N1"), ("N1 + N1", "N1 + N1"), ("N1 + N1", "N1"))


def _members(values, A, budget) -> list:
    return [v for v in values if R.member(v, A, {}, budget).holds]


def validate_extfun(budget: Budget | None = None, matrix=EXTFUN_MATRIX) -> PrincipleReport:
    """For every pair f, g of sampled members of (Πx∈A)B, {{{e}(f)}(g)} realizes
    (∀x∈A)Id(B, Ap(f,x), Ap(g,x)) → Id((Πx∈A)B, f, g)."""
    budget = budget or Budget()
    e = extfun_realizer()
    rows = []
    for a_src, b_src in matrix:
        A, B = S.parse_type(a_src), S.parse_type(b_src)
        fs = _members([_value(src) for src in FUNCTION_SAMPLES], _pi(A, B), budget)
        pairs = 0
        verdict = HOLDS
        for f in fs:
            for g in fs:
                r = pca.apply(e, [f, g], budget.fuel)
                if not isinstance(r, pca.Converged):
                    verdict = FAILS
                    continue
                body = _extfun_body(A, B, S.Num(f), S.Num(g))
                v = R.realizes(r.value, body, {}, budget)
                pairs += 1
                verdict = logic.conj(lambda: verdict, lambda: v)
        if not fs:
            verdict = HOLDS  # (Πx∈A)B has no sampled member: vacuous
        rows.append({"A": a_src, "B": b_src, "pairs": pairs, "verdict": verdict})
    return PrincipleReport("extfun", e, rows)


def _apply_value(f: int, x, budget: Budget):
    r = pca.apply(f, x, budget.fuel)
    return r.value if isinstance(r, pca.Converged) else None


def _implication_instance(realizer: int, premise, conclusion, r: int, budget: Budget,
                          samples=None) -> tuple[str, Verdict]:
    """How `realizer` fares on the premise realizer r: vacuous, or its output checked."""
    pv = sampled_member(r, premise, budget, samples)
    if pv.fails:
        return "vacuous", HOLDS
    out = _apply_value(realizer, r, budget)
    if out is None:
        return "diverges", FAILS if pv.holds else logic.unknown("fuel")
    cv = sampled_member(out, conclusion, budget, samples)
    if pv.holds:
        return "checked", cv
    return "checked", cv if not cv.fails else logic.unknown("enum_bound")


def sampled_member(n, A: S.TypeExpr, budget: Budget, samples=None) -> Verdict:
    """n ε J(A), with quantifiers over N replaced by their instances on samples.

    For closed A without Π/∀ over N this is exactly member; otherwise a Holds
    means "holds at every sampled argument".
    """
    if samples is None:
        return R.member(n, A, {}, budget)
    if isinstance(A, (S.Pi, S.Forall)) and isinstance(A.A, S.Nat):
        def at(k):
            fk = _apply_value(n, k, budget) if isinstance(n, int) else None
            if fk is None:
                return FAILS
            return sampled_member(fk, S.substitute(A.B, A.y, S.Num(k)), budget, samples)
        exact = R.member(n, A, {}, budget)
        if not exact.unknown:
            return exact
        return logic.conj(*(lambda k=k: at(k) for k in samples))
    if isinstance(A, (S.Sigma, S.Exists)):
        a, b = pca.unpair(n)
        return logic.conj(lambda: R.member(a, A.A, {}, budget),
                          lambda: sampled_member(b, S.substitute(A.B, A.y, S.Num(a)),
                                                 budget, samples))
    if isinstance(A, S.And):
        a, b = pca.unpair(n)
        return logic.conj(lambda: sampled_member(a, A.A, budget, samples),
                          lambda: sampled_member(b, A.B, budget, samples))
    return R.member(n, A, {}, budget)


AC_MATRIX = (
    # (A, B, ρ, premise realizers as terms over nothing)
    ("N", "N", "Id(N, x, y)", ("lam n. pair(n, 0)", "lam n. pair(succ(n), 0)", "0")),
    ("N", "N1", "Id(N1, y, y)", ("lam n. pair(0, 0)", "lam n. pair(n, 0)")),
    ("N", "N", "Id(N, y, succ(x))", ("lam n. pair(succ(n), 7)", "lam n. pair(n, 7)")),
    ("N", "N + N", "Id(N, 0, 0)", ("lam n. pair(pair(1, n), 0)",)),
    ("N", "N", "Bot", ("lam n. pair(n, 0)", "0", "lam n. n")),
    ("N1", "N", "Id(N, y, 3)", ("lam n. pair(3, 0)", "lam n. pair(2, 0)")),
    ("N1 + N1", "N1 + N1", "Id(N1 + N1, x, y)", ("lam n. pair(n, 0)",)),
)

SAMPLE_ARGS = tuple(range(8))


def validate_ac(budget: Budget | None = None, matrix=AC_MATRIX) -> PrincipleReport:
    """AC on numerical domains, instance by instance."""
    budget = budget or Budget()
    e = ac_realizer()
    rows = []
    for a_src, b_src, rho_src, premises in matrix:
        A, B, rho = S.parse_type(a_src), S.parse_type(b_src), S.parse_type(rho_src)
        premise = S.Forall("x", A, S.Exists("y", B, rho))
        conclusion = ac_conclusion(A, B, rho)
        for src in premises:
            r = _value(src)
            how, v = _implication_instance(e, premise, conclusion, r, budget, SAMPLE_ARGS)
            rows.append({"A": a_src, "B": b_src, "rho": rho_src, "premise": src,
                         "case": how, "verdict": v})
    return PrincipleReport("ac", e, rows)


def ac_counterexample(budget: Budget | None = None) -> dict:
    """The naive choice realizer on a proof-irrelevant domain.

    A = (∃z∈N) Id(N, z, z) has members ⟨z, q⟩ for every z, all equivalent.
    The premise (∀x∈A)(∃y∈N) Id(N, 0, 0) is realized by Λn.⟨π1 n, 0⟩, but
    the chosen function Λn.π1(n) does not respect the equivalence of A.
    """
    budget = budget or Budget()
    A = S.parse_type("Exists z : N. Id(N, z, z)")
    B, rho = S.Nat(), S.parse_type("Id(N, 0, 0)")
    r = _value("lam n. pair(elEx(n, (a, b) a), 0)")
    premise = S.Forall("x", A, S.Exists("y", B, rho))
    out = _apply_value(ac_realizer(), r, budget)
    return {
        "A": S.show(A), "premise_realizer": str(r),
        "premise": R.member(r, premise, {}, budget).to_json(),
        "conclusion": R.member(out, ac_conclusion(A, B, rho), {}, budget).to_json(),
        "function_member": R.member(pca.proj1(out), _pi(A, B), {}, budget).to_json(),
    }


AC_UNIQUE_MATRIX = (
    ("N1", "N", "Id(N, y, 0)", 0),
    ("N1", "N", "Bot", 0),
    ("N1 + N1", "N1", "Id(N1, y, y)", 0),
    ("N1 + N1", "N", "Id(N, y, 2)", 2),
    ("N1", "N1 + N1", "Id(N1 + N1, y, pair(1, 0))", pca.pair(1, 0)),
)


def ac_unique_check(instance, budget: Budget | None = None) -> Verdict:
    """AC_! for one (A, B, ρ, witness) instance with finite A.

    The premise realizers tried are the canonical one built from the witness
    and a few arbitrary numbers; each either fails the premise (vacuous) or
    its image must realize the conclusion.
    """
    budget = budget or Budget()
    a_src, b_src, rho_src, witness = instance
    A, B, rho = (S.parse_type(s) if isinstance(s, str) else s for s in (a_src, b_src, rho_src))
    premise = S.Forall("x", A, exists_unique("y", B, rho))
    conclusion = ac_conclusion(A, B, rho)
    canonical = _value(f"lam n. pair(pair({witness}, 0), lam a. lam b. lam c. 0)")
    e = ac_unique_realizer()
    verdicts = [_implication_instance(e, premise, conclusion, r, budget)[1]
                for r in (canonical, 0, 5, _value("lam n. n"))]
    return logic.conj(*(lambda v=v: v for v in verdicts))


def validate_ac_unique(budget: Budget | None = None, matrix=AC_UNIQUE_MATRIX) -> PrincipleReport:
    rows = [{"A": a, "B": b, "rho": rho, "witness": str(w),
             "verdict": ac_unique_check((a, b, rho, w), budget)} for a, b, rho, w in matrix]
    return PrincipleReport("ac-unique", ac_unique_realizer(), rows)


# Closed function terms of type (Πx∈N)N.
CT_FUNCTIONS = (
    "lam x. x",
    "lam x. succ(x)",
    "lam x. 7",
    "lam x. elN(x, 0, (y, z) succ(succ(z)))",
    "lam x. elN(x, 0, (y, z) y)",
    "lam x. succ(succ(succ(x)))",
    "lam x. elN(x, 0, (y, z) elN(z, 1, (a, b) 0))",
    "lam x. ap(lam y. succ(y), succ(x))",
    "lam x. elN1(star, x)",
    "lam x. elSigma(pair(x, 5), (a, b) b)",
)


def check_ct_witness(e: int, f: int, h: int, x: int, budget: Budget) -> Verdict:
    """{e}(x) agrees with {f}(x), and {h}(x) = ⟨u, ⟨_, _⟩⟩ with T(e, x, u), U(u) = {f}(x)."""
    want = _apply_value(f, x, budget)
    got = _apply_value(e, x, budget)
    hx = _apply_value(h, x, budget)
    if want is None or got is None or hx is None:
        return logic.unknown("fuel")
    u = pca.proj1(hx)
    ok = got == want and pca.kleene_T(e, x, u, budget.fuel) and pca.kleene_U(u) == want
    return logic.of_bool(ok)


def validate_ct_lambda(budget: Budget | None = None, functions=CT_FUNCTIONS,
                       xs=range(51)) -> PrincipleReport:
    budget = budget or Budget()
    c = ct_lambda_realizer()
    rows = []
    for src in functions:
        f = _value(src)
        member = R.member(f, _pi(S.Nat(), S.Nat()), {}, budget)
        out = _apply_value(c, f, budget)
        if out is None:
            rows.append({"function": src, "verdict": FAILS})
            continue
        e, h = pca.unpair(out)
        v = logic.conj(lambda: member if not member.unknown else HOLDS,
                       *(lambda x=x: check_ct_witness(e, f, h, x, budget) for x in xs))
        rows.append({"function": src, "code": str(e), "verdict": v})
    return PrincipleReport("ct-lambda", c, rows)


CT_MATRIX = (
    ("Id(N, y, x)", "lam x. pair(x, 0)"),
    ("Id(N, y, succ(x))", "lam x. pair(succ(x), 0)"),
    ("Id(N, y, elN(x, 0, (a, b) succ(succ(b))))", "lam x. pair(elN(x, 0, (a, b) succ(succ(b))), 3)"),
    ("Bot", "lam x. pair(x, 0)"),
)


def validate_ct(budget: Budget | None = None, matrix=CT_MATRIX, xs=range(21)) -> PrincipleReport:
    """CT end to end: the extracted index computes the chosen function with
    valid traces, and the last component realizes ρ(x, U(u))."""
    budget = budget or Budget()
    c = ct_realizer()
    rows = []
    for rho_src, premise_src in matrix:
        rho = S.parse_type(rho_src)
        r = _value(premise_src)
        premise = S.Forall("x", S.Nat(), S.Exists("y", S.Nat(), rho))
        pv = sampled_member(r, premise, budget, tuple(xs))
        if pv.fails:
            rows.append({"rho": rho_src, "premise": premise_src, "case": "vacuous",
                         "verdict": HOLDS})
            continue
        out = _apply_value(c, r, budget)
        e, h = pca.unpair(out)
        f = pca.proj1(_apply_value(ac_realizer(), r, budget))

        def at(x):
            w = check_ct_witness(e, f, h, x, budget)
            if not w.holds:
                return w
            hx = _apply_value(h, x, budget)
            u, rr = pca.proj1(hx), pca.proj2(pca.proj2(hx))
            inst = S.substitute_many(rho, {"x": S.Num(x), "y": S.Num(pca.kleene_U(u))})
            return R.member(rr, inst, {}, budget)

        v = logic.conj(lambda: pv, *(lambda x=x: at(x) for x in xs))
        rows.append({"rho": rho_src, "premise": premise_src, "case": "checked", "verdict": v})
    return PrincipleReport("ct", c, rows)


VALIDATORS = {
    "extfun": validate_extfun,
    "ac": validate_ac,
    "ac-unique": validate_ac_unique,
    "ct-lambda": validate_ct_lambda,
    "ct": validate_ct,
}

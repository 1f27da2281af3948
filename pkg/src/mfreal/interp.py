"""Interpretation of terms as programs of the Kleene model.

`interpret(t, scope)` maps a term whose free variables lie in `scope` to a
program with de Bruijn variables; the innermost (last) scope entry is
variable 0.  Closing that program over the scope gives the numeral that
interprets a term in context.

The disjunctive eliminators select a branch with the `ite` primitive.  The
machine is call-by-value, so both branches are wrapped in a dummy abstraction
and only the chosen one is run; otherwise a branch that makes no sense for the
actual injection (and so diverges or gets stuck) would make the whole term
undefined and break the conversion laws.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import pca
from . import syntax as S
from .pca import Const, Prim, apps

_P = Prim(pca.PAIR)


class UnboundVariable(ValueError):
    pass


def _pair(a: pca.Program, b: pca.Program) -> pca.Program:
    return apps(_P, a, b)


def _tagged(tag: int, payload: pca.Program) -> pca.Program:
    return _pair(Const(tag), payload)


@lru_cache(maxsize=100_000)
def interpret(t: S.Term, scope: tuple | None = None) -> pca.Program:
    """The program I(t) over `scope` (default: sorted free variables)."""
    if scope is None:
        scope = tuple(sorted(S.free_vars(t)))
    return _I(t, tuple(scope))


def _lam(body: S.Term, scope: tuple, *names: str) -> pca.Program:
    prog = _I(body, scope + names)
    for name in reversed(names):
        prog = pca.Lam(prog, name)
    return prog


def _I(t: S.Term, scope: tuple) -> pca.Program:
    k = type(t)
    if k is S.Var:
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == t.name:
                return pca.Var(len(scope) - 1 - i)
        raise UnboundVariable(f"variable {t.name} is not in scope {list(scope)}")
    if k is S.Num:
        return Const(t.value)
    if k in (S.Emp0, S.R0, S.Star, S.Zero, S.Eps, S.IdIntro):
        return Const(0)
    if k is S.ElN1:
        return _I(t.t2, scope)
    if k is S.Succ:
        return pca.App(Prim(pca.SUCC), _I(t.t, scope))
    if k is S.ElN:
        return apps(Prim(pca.REC), _I(t.t2, scope), _lam(t.r, scope, t.y, t.z), _I(t.t, scope))
    if k in (S.Lam, S.LamImp, S.LamAll):
        return _lam(t.s, scope, t.y)
    if k in (S.Ap, S.ApImp, S.ApAll):
        return pca.App(_I(t.t, scope), _I(t.t2, scope))
    if k in (S.Pair, S.AndPair, S.ExPair):
        return _pair(_I(t.t, scope), _I(t.t2, scope))
    if k in (S.ElSigma, S.ElEx):
        it = _I(t.t, scope)
        return apps(_lam(t.r, scope, t.y, t.z), pca.App(Prim(pca.P1), it),
                    pca.App(Prim(pca.P2), it))
    if k is S.Pi1:
        return pca.App(Prim(pca.P1), _I(t.t, scope))
    if k is S.Pi2:
        return pca.App(Prim(pca.P2), _I(t.t, scope))
    if k in (S.Inl, S.InlOr):
        return _pair(Const(0), _I(t.t, scope))
    if k in (S.Inr, S.InrOr):
        return _pair(Const(1), _I(t.t, scope))
    if k in (S.ElPlus, S.ElOr):
        it = _I(t.t, scope)
        right = pca.App(Prim(pca.P2), it)
        # branches are delayed behind an abstraction over an unused variable
        left_br = pca.Lam(pca.shift(pca.App(_lam(t.s, scope, t.y), right), 1), "_")
        right_br = pca.Lam(pca.shift(pca.App(_lam(t.s2, scope, t.y2), right), 1), "_")
        chosen = apps(Prim(pca.ITE), pca.App(Prim(pca.P1), it), left_br, right_br)
        return pca.App(chosen, Const(0))
    if k is S.Cons:
        return apps(Prim(pca.CNC), _I(t.t, scope), _I(t.t2, scope))
    if k is S.ElList:
        return apps(Prim(pca.LISTREC), _I(t.t2, scope), _lam(t.q, scope, t.y, t.z, t.u),
                    _I(t.t, scope))
    if k is S.ElId:
        return pca.App(_lam(t.s, scope, t.y), _I(t.t, scope))
    if k is S.N0Hat:
        return _tagged(1, Const(0))
    if k is S.N1Hat:
        return _tagged(1, Const(1))
    if k is S.NHat:
        return _tagged(1, Const(2))
    if k is S.BotHat:
        return _tagged(6, Const(0))
    if k in _FAMILY_TAGS:
        return _tagged(_FAMILY_TAGS[k], _pair(_I(S.hat(t.A), scope), _lam(t.s, scope, t.y)))
    if k in _BINARY_TAGS:
        return _tagged(_BINARY_TAGS[k], _pair(_I(t.t, scope), _I(t.t2, scope)))
    if k is S.ListHat:
        return _tagged(5, _I(t.t, scope))
    if k is S.IdHat:
        return _tagged(12, _pair(_I(S.hat(t.A), scope),
                                 _pair(_I(t.t, scope), _I(t.t2, scope))))
    raise TypeError(f"cannot interpret {t!r}")


_FAMILY_TAGS = {S.PiHat: 2, S.SigmaHat: 3, S.ExistsHat: 10, S.ForallHat: 11}
_BINARY_TAGS = {S.PlusHat: 4, S.AndHat: 7, S.OrHat: 8, S.ImpHat: 9}
CODE_TAGS = {"N": 1, "Pi": 2, "Sigma": 3, "Plus": 4, "List": 5, "Bot": 6, "And": 7,
             "Or": 8, "Imp": 9, "Exists": 10, "Forall": 11, "Id": 12}


def closed_program(t: S.Term, xs) -> pca.Program:
    """Lambda x1 ... Lambda xn. I(t)."""
    xs = tuple(xs)
    prog = interpret(t, xs)
    for name in reversed(xs):
        prog = pca.Lam(prog, name)
    return prog


def interpret_in_context(t: S.Term, xs) -> int:
    """The numeral interpreting t[x1, ..., xn].

    For a non-empty context this is the code of the abstraction, which is
    always defined; applying it to n arguments behaves like evaluating I(t)
    in that environment.  For the empty context it is the code of the closed
    program I(t) itself.
    """
    return closed_program(t, xs).code


def program_in_env(t: S.Term, env: dict) -> pca.Program:
    scope = tuple(env)
    return pca.instantiate(interpret(t, scope), [env[x] for x in scope])


def evaluate(t: S.Term, env: dict | None = None, fuel: int = 100_000) -> pca.EvalResult:
    """Run I(t) with its free variables bound by `env`."""
    return pca.run(program_in_env(t, env or {}), fuel)


def pca_substitute(prog: pca.Program, scope: tuple, values: dict) -> pca.Program:
    """prog[values[x]/x] for programs over `scope` (closed replacements)."""
    for name in reversed(scope):
        if name not in values:
            raise ValueError(f"no replacement for {name}")
        prog = pca.subst(prog, 0, values[name])
    return prog


# ---------------------------------------------------------------------------
# The seventeen conversion laws


@dataclass(frozen=True)
class ConversionSchema:
    """I(lhs) should agree with `rhs_program` (a substitution in the model).

    `parts` maps metavariables to terms: t, t1, t2 closed; s, s2 with y free;
    r with y, z free; q with y, z, u free.  `contractum` is the term-level
    right-hand side used by the conversion rules.
    """

    index: int
    name: str
    metavars: tuple
    lhs: Callable
    contractum: Callable
    rhs_program: Callable


def _sub1(body: S.Term, names: tuple, values: tuple) -> pca.Program:
    prog = interpret(body, names)
    return pca_substitute(prog, names, {n: interpret(v, ()) for n, v in zip(names, values)})


def _term_sub(body: S.Term, names: tuple, values: tuple) -> S.Term:
    return S.substitute_many(body, dict(zip(names, values)))


def _eln(p):
    return S.ElN(p["t1"], p["t"], "y", "z", p["r"])


def _ellist(p):
    return S.ElList(p["t1"], p["t"], "y", "z", "u", p["q"])


CONVERSIONS: tuple = (
    ConversionSchema(1, "El_N1(star, t)", ("t",),
                     lambda p: S.ElN1(S.Star(), p["t"]),
                     lambda p: p["t"],
                     lambda p: interpret(p["t"], ())),
    ConversionSchema(2, "El_N(0, t, (y,z)r)", ("t", "r"),
                     lambda p: S.ElN(S.Zero(), p["t"], "y", "z", p["r"]),
                     lambda p: p["t"],
                     lambda p: interpret(p["t"], ())),
    ConversionSchema(3, "El_N(succ(t1), t, (y,z)r)", ("t", "t1", "r"),
                     lambda p: S.ElN(S.Succ(p["t1"]), p["t"], "y", "z", p["r"]),
                     lambda p: _term_sub(p["r"], ("y", "z"), (p["t1"], _eln(p))),
                     lambda p: _sub1(p["r"], ("y", "z"), (p["t1"], _eln(p)))),
    ConversionSchema(4, "Ap(lam y.s, t)", ("s", "t"),
                     lambda p: S.Ap(S.Lam("y", p["s"]), p["t"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(5, "Ap_imp(lam_imp y.s, t)", ("s", "t"),
                     lambda p: S.ApImp(S.LamImp("y", p["s"]), p["t"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(6, "Ap_all(lam_all y.s, t)", ("s", "t"),
                     lambda p: S.ApAll(S.LamAll("y", p["s"]), p["t"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(7, "El_Sigma(<t,t1>, (y,z)r)", ("t", "t1", "r"),
                     lambda p: S.ElSigma(S.Pair(p["t"], p["t1"]), "y", "z", p["r"]),
                     lambda p: _term_sub(p["r"], ("y", "z"), (p["t"], p["t1"])),
                     lambda p: _sub1(p["r"], ("y", "z"), (p["t"], p["t1"]))),
    ConversionSchema(8, "El_Ex(<t,t1>_ex, (y,z)r)", ("t", "t1", "r"),
                     lambda p: S.ElEx(S.ExPair(p["t"], p["t1"]), "y", "z", p["r"]),
                     lambda p: _term_sub(p["r"], ("y", "z"), (p["t"], p["t1"])),
                     lambda p: _sub1(p["r"], ("y", "z"), (p["t"], p["t1"]))),
    ConversionSchema(9, "pi1(<t,t1>_and)", ("t", "t1"),
                     lambda p: S.Pi1(S.AndPair(p["t"], p["t1"])),
                     lambda p: p["t"],
                     lambda p: interpret(p["t"], ())),
    ConversionSchema(10, "pi2(<t,t1>_and)", ("t", "t1"),
                     lambda p: S.Pi2(S.AndPair(p["t"], p["t1"])),
                     lambda p: p["t1"],
                     lambda p: interpret(p["t1"], ())),
    ConversionSchema(11, "El_+(inl(t), (y)s, (y)s2)", ("t", "s", "s2"),
                     lambda p: S.ElPlus(S.Inl(p["t"]), "y", p["s"], "y", p["s2"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(12, "El_+(inr(t), (y)s, (y)s2)", ("t", "s", "s2"),
                     lambda p: S.ElPlus(S.Inr(p["t"]), "y", p["s"], "y", p["s2"]),
                     lambda p: _term_sub(p["s2"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s2"], ("y",), (p["t"],))),
    ConversionSchema(13, "El_or(inl_or(t), (y)s, (y)s2)", ("t", "s", "s2"),
                     lambda p: S.ElOr(S.InlOr(p["t"]), "y", p["s"], "y", p["s2"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(14, "El_or(inr_or(t), (y)s, (y)s2)", ("t", "s", "s2"),
                     lambda p: S.ElOr(S.InrOr(p["t"]), "y", p["s"], "y", p["s2"]),
                     lambda p: _term_sub(p["s2"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s2"], ("y",), (p["t"],))),
    ConversionSchema(15, "El_Id(t, t, id(t), (y)s)", ("t", "s"),
                     lambda p: S.ElId(p["t"], p["t"], S.IdIntro(p["t"]), "y", p["s"]),
                     lambda p: _term_sub(p["s"], ("y",), (p["t"],)),
                     lambda p: _sub1(p["s"], ("y",), (p["t"],))),
    ConversionSchema(16, "El_List(eps, t, (y,z,u)q)", ("t", "q"),
                     lambda p: S.ElList(S.Eps(), p["t"], "y", "z", "u", p["q"]),
                     lambda p: p["t"],
                     lambda p: interpret(p["t"], ())),
    ConversionSchema(17, "El_List(cons(t1,t2), t, (y,z,u)q)", ("t", "t1", "t2", "q"),
                     lambda p: S.ElList(S.Cons(p["t1"], p["t2"]), p["t"], "y", "z", "u", p["q"]),
                     lambda p: _term_sub(p["q"], ("y", "z", "u"), (p["t1"], p["t2"], _ellist(p))),
                     lambda p: _sub1(p["q"], ("y", "z", "u"), (p["t1"], p["t2"], _ellist(p)))),
)


def conversion_pairs() -> tuple:
    return CONVERSIONS

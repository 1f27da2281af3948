"""Regenerate the shipped corpus of derivable judgements.

Each judgement is built with the forward rule builders of mfreal.rules, so
its derivation exists by construction.  The script writes

    src/mfreal/data/corpus.txt   one judgement per line with its expected verdict
    src/mfreal/data/corpus.der   one checking derivation per corpus line

and refuses to write anything if a derivation fails to check or a judgement
Fails semantically.  Run it from the repository root:

    python3 tools/make_corpus.py
"""

from __future__ import annotations

import sys
from pathlib import Path

from mfreal import rules as R, syntax as S
from mfreal.judgements import check_judgement
from mfreal.realizability import Budget

P = S.parse_term
T = S.parse_type

LIFT = {("props", "prop"): ["props-into-prop"], ("props", "set"): ["props-into-set"],
        ("set", "col"): ["set-into-col"], ("prop", "col"): ["prop-into-col"],
        ("props", "col"): ["props-into-prop", "prop-into-col"]}
LIFT_EQ = {("props", "prop"): ["props-into-prop-eq"], ("props", "set"): ["props-into-set-eq"],
           ("set", "col"): ["set-into-col-eq"], ("prop", "col"): ["prop-into-col-eq"],
           ("props", "col"): ["props-into-prop-eq", "prop-into-col-eq"]}


# types for the scrutinees of the eliminator examples, which do not infer
HINTS = {"inl(3)": "N + N1", "pair(1, star)": "Sigma x : N. N1",
         "expair(star, id(star))": "Exists x : N1. Id(N1, x, star)",
         "inlor(id(0))": "Id(N, 0, 0) | Bot"}


# judgements whose check stops at the enumeration bound, with the reason
_ALL_CODES = "quantifies over every code of a function on the domain (enum_bound)"
UNKNOWN = {"Forallhat(x : N1, Idhat(N1, x, star))": "a universal code " + _ALL_CODES,
           "Pihat(x : N1, Nhat)": "a product code " + _ALL_CODES}


class Builder:
    """Type-directed construction of derivations for a small fragment."""

    def cont(self, ctx) -> R.Derivation:
        if not ctx:
            return R.empty_context()
        *gamma, (x, A) = ctx
        return R.extend(self.wf(A, tuple(gamma)), x)

    def lift(self, d: R.Derivation, target: str) -> R.Derivation:
        have = d.conclusion.stratum
        if have == target:
            return d
        table = LIFT if d.conclusion.kind == "type" else LIFT_EQ
        for name in table[(have, target)]:
            d = R.infer(name, d)
        return d

    def wf(self, A, ctx=(), stratum=None) -> R.Derivation:
        d = self._wf(A, tuple(ctx))
        return d if stratum is None else self.lift(d, stratum)

    def _wf(self, A, ctx):
        leaf = {S.N0: "F-Em", S.N1: "S", S.Nat: "F-N", S.Bot: "F-Fs", S.PropS: "F-Pr",
                S.SetU: "F-Se"}
        if type(A) in leaf:
            return R.infer(leaf[type(A)], context=ctx)
        if isinstance(A, S.ListT):
            return R.infer("F-list", self.wf(A.A, ctx, "set"))
        if isinstance(A, S.Plus):
            return R.infer("F-+", self.wf(A.A, ctx, "set"), self.wf(A.B, ctx, "set"))
        if isinstance(A, S.FunPropS):
            return R.infer("F-Fun", self.wf(A.A, ctx, "set"))
        if isinstance(A, S.Tau):
            return R.infer("T-Pr", self.check(A.t, S.PropS(), ctx))
        if isinstance(A, (S.And, S.Or, S.Imp)):
            name = {S.And: "F-And", S.Or: "F-Or", S.Imp: "F-Imp"}[type(A)]
            return R.infer(name, self.wf(A.A, ctx, "prop"), self.wf(A.B, ctx, "prop"))
        if isinstance(A, S.Id):
            return R.infer("F-Id", self.wf(A.A, ctx, "col"), self.check(A.t, A.A, ctx),
                           self.check(A.t2, A.A, ctx))
        inner = ctx + ((A.y, A.A),)
        if isinstance(A, S.Pi):
            return R.infer("F-Pi", self.wf(A.B, inner, "set"), self.wf(A.A, ctx, "set"))
        if isinstance(A, S.Sigma):
            if S.fits(S.stratum_of(A.A), "set") and S.fits(S.stratum_of(A.B), "set"):
                return R.infer("F-Sigma_s", self.wf(A.B, inner, "set"), self.wf(A.A, ctx, "set"))
            return R.infer("F-Sigma", self.wf(A.B, inner, "col"))
        if isinstance(A, (S.Exists, S.Forall)):
            name = "F-Ex" if isinstance(A, S.Exists) else "F-All"
            return R.infer(name, self.wf(A.B, inner, "prop"))
        raise ValueError(f"no formation rule for {S.show(A)}")

    # terms ------------------------------------------------------------------
    def check(self, t, A, ctx=()) -> R.Derivation:
        ctx = tuple(ctx)
        d = self._check(t, A, ctx)
        if not S.alpha_eq(d.conclusion.A, A):
            raise ValueError(f"{S.show(t)} has type {S.show(d.conclusion.A)}, not {S.show(A)}")
        return d

    def _check(self, t, A, ctx):
        if isinstance(t, S.Pair) and isinstance(A, S.Sigma):
            B = S.substitute(A.B, A.y, t.t)
            return R.infer("I-Sigma", self.check(t.t, A.A, ctx), self.check(t.t2, B, ctx),
                           self.wf(A.B, ctx + ((A.y, A.A),), "col"))
        if isinstance(t, (S.Inl, S.Inr)) and isinstance(A, S.Plus):
            part = A.A if isinstance(t, S.Inl) else A.B
            return R.infer("I1-+" if isinstance(t, S.Inl) else "I2-+", self.check(t.t, part, ctx),
                           self.wf(A.A, ctx, "set"), self.wf(A.B, ctx, "set"))
        if isinstance(t, (S.InlOr, S.InrOr)) and isinstance(A, S.Or):
            part = A.A if isinstance(t, S.InlOr) else A.B
            return R.infer("I1-Or" if isinstance(t, S.InlOr) else "I2-Or",
                           self.check(t.t, part, ctx), self.wf(A.A, ctx, "prop"),
                           self.wf(A.B, ctx, "prop"))
        if isinstance(t, S.Eps) and isinstance(A, S.ListT):
            return R.infer("I1-list", self.wf(A, ctx))
        if isinstance(t, S.Cons) and isinstance(A, S.ListT):
            return R.infer("I2-list", self.check(t.t, A, ctx), self.check(t.t2, A.A, ctx))
        if isinstance(t, S.Lam) and isinstance(A, S.Pi):
            inner = ctx + ((t.y, A.A),)
            C = S.substitute(A.B, A.y, S.Var(t.y))
            return R.infer("I-Pi", self.check(t.s, C, inner), self.wf(C, inner, "set"),
                           self.wf(A.A, ctx, "set"))
        if isinstance(t, S.Lam) and isinstance(A, S.FunPropS):
            inner = ctx + ((t.y, A.A),)
            return R.infer("I-Fun", self.check(t.s, S.PropS(), inner), self.wf(A.A, ctx, "set"))
        if isinstance(t, S.LamImp) and isinstance(A, S.Imp):
            inner = ctx + ((t.y, A.A),)
            return R.infer("I-Imp", self.check(t.s, A.B, inner), self.wf(A.A, ctx, "prop"),
                           self.wf(A.B, ctx, "prop"))
        if isinstance(t, S.LamAll) and isinstance(A, S.Forall):
            inner = ctx + ((t.y, A.A),)
            C = S.substitute(A.B, A.y, S.Var(t.y))
            return R.infer("I-All", self.check(t.s, C, inner), self.wf(C, inner, "prop"))
        if isinstance(t, S.AndPair) and isinstance(A, S.And):
            return R.infer("I-And", self.check(t.t, A.A, ctx), self.check(t.t2, A.B, ctx),
                           self.wf(A.A, ctx, "prop"), self.wf(A.B, ctx, "prop"))
        if isinstance(t, S.ExPair) and isinstance(A, S.Exists):
            B = S.substitute(A.B, A.y, t.t)
            return R.infer("I-Ex", self.check(t.t, A.A, ctx), self.check(t.t2, B, ctx),
                           self.wf(A.B, ctx + ((A.y, A.A),), "prop"))
        if isinstance(t, S.IdIntro) and isinstance(A, S.Id):
            return R.infer("I-Id", self.check(t.t, A.A, ctx))
        if isinstance(t, S.R0):
            return R.infer("E-Fs", self.check(t.t, S.Bot(), ctx), self.wf(A, ctx, "prop"))
        if isinstance(t, S.Emp0):
            z = S.fresh_name("z", {x for x, _ in ctx})
            return R.infer("E-Em", self.check(t.t, S.N0(), ctx),
                           self.wf(A, ctx + ((z, S.N0()),), "col"))
        if isinstance(A, S.PropS):
            return self.small(t, ctx)
        if isinstance(A, S.SetU):
            return self.code(t, ctx)
        return self.infer(t, ctx)

    def small(self, t, ctx):
        binary = {S.OrHat: "Pr2", S.ImpHat: "Pr3", S.AndHat: "Pr4"}
        if isinstance(t, S.BotHat):
            return R.infer("Pr1", context=ctx)
        if type(t) in binary:
            return R.infer(binary[type(t)], self.check(t.t, S.PropS(), ctx),
                           self.check(t.t2, S.PropS(), ctx))
        if isinstance(t, S.IdHat):
            return R.infer("Pr5", self.wf(t.A, ctx, "set"), self.check(t.t, t.A, ctx),
                           self.check(t.t2, t.A, ctx))
        if isinstance(t, (S.ExistsHat, S.ForallHat)):
            name = "Pr6" if isinstance(t, S.ExistsHat) else "Pr7"
            return R.infer(name, self.check(t.s, S.PropS(), ctx + ((t.y, t.A),)),
                           self.wf(t.A, ctx, "set"))
        return self.infer(t, ctx)

    def code(self, t, ctx):
        leaf = {S.N0Hat: "Se_e", S.N1Hat: "Se_s", S.NHat: "Se_n"}
        if type(t) in leaf:
            return R.infer(leaf[type(t)], context=ctx)
        if isinstance(t, S.ListHat):
            return R.infer("Se_l", self.check(t.t, S.SetU(), ctx))
        if isinstance(t, S.PlusHat):
            return R.infer("Se_u", self.check(t.t, S.SetU(), ctx), self.check(t.t2, S.SetU(), ctx))
        if isinstance(t, (S.SigmaHat, S.PiHat)):
            name = "Se_Sigma" if isinstance(t, S.SigmaHat) else "Se_Pi"
            return R.infer(name, self.check(t.s, S.SetU(), ctx + ((t.y, t.A),)),
                           self.wf(t.A, ctx, "set"))
        return R.infer("sp-i-p", self.check(t, S.PropS(), ctx))

    def infer(self, t, ctx=()) -> R.Derivation:
        ctx = tuple(ctx)
        hint = HINTS.get(S.show(t))
        if hint is not None:
            return self.check(t, T(hint), ctx)
        if isinstance(t, S.Var):
            return R.variable(self.cont(ctx), t.name)
        if isinstance(t, S.Zero):
            return R.infer("I1-N", context=ctx)
        if isinstance(t, S.Succ):
            return R.infer("I2-N", self.check(t.t, S.Nat(), ctx))
        if isinstance(t, S.Star):
            return R.infer("I-S", context=ctx)
        if isinstance(t, S.IdIntro):
            return R.infer("I-Id", self.infer(t.t, ctx))
        if isinstance(t, S.Cons):
            c = self.infer(t.t2, ctx)
            return R.infer("I2-list", self.check(t.t, S.ListT(c.conclusion.A), ctx), c)
        if isinstance(t, S.AndPair):
            a, b = self.infer(t.t, ctx), self.infer(t.t2, ctx)
            return R.infer("I-And", a, b, self.wf(a.conclusion.A, ctx, "prop"),
                           self.wf(b.conclusion.A, ctx, "prop"))
        if isinstance(t, (S.BotHat, S.OrHat, S.ImpHat, S.AndHat, S.IdHat, S.ExistsHat,
                          S.ForallHat)):
            return self.small(t, ctx)
        if isinstance(t, S.Ap):
            f = self.head(t.t, t.t2, ctx)
            A = f.conclusion.A
            if isinstance(A, S.FunPropS):
                return R.infer("E-Fun", self.check(t.t2, A.A, ctx), f)
            return R.infer("E-Pi", self.check(t.t2, A.A, ctx), f)
        if isinstance(t, S.ApImp):
            f = self.head(t.t, t.t2, ctx)
            return R.infer("E-Imp", self.check(t.t2, f.conclusion.A.A, ctx), f)
        if isinstance(t, S.ApAll):
            f = self.head(t.t, t.t2, ctx)
            return R.infer("E-All", self.check(t.t2, f.conclusion.A.A, ctx), f)
        if isinstance(t, (S.Pi1, S.Pi2)):
            return R.infer("E1-And" if isinstance(t, S.Pi1) else "E2-And", self.infer(t.t, ctx))
        if isinstance(t, S.ElN1):
            c = self.infer(t.t2, ctx)
            return R.infer("E-S", self.check(t.t, S.N1(), ctx),
                           self.motive(c.conclusion.A, S.N1(), ctx), c)
        if isinstance(t, S.ElN):
            a = self.infer(t.t2, ctx)
            L = a.conclusion.A
            body = self.check(t.r, L, ctx + ((t.y, S.Nat()), (t.z, L)))
            return R.infer("E-N", self.motive(L, S.Nat(), ctx), self.check(t.t, S.Nat(), ctx),
                           a, body)
        if isinstance(t, S.ElList):
            s = self.infer(t.t, ctx)
            a = self.infer(t.t2, ctx)
            L, LC = a.conclusion.A, s.conclusion.A
            body = self.check(t.q, L, ctx + ((t.y, LC), (t.z, LC.A), (t.u, L)))
            return R.infer("E-list", self.motive(L, LC, ctx), s, a, body)
        if isinstance(t, (S.ElPlus, S.ElOr)):
            w = self.infer(t.t, ctx)
            W = w.conclusion.A
            f = self.infer(t.s, ctx + ((t.y, W.A),))
            g = self.check(t.s2, f.conclusion.A, ctx + ((t.y2, W.B),))
            if isinstance(t, S.ElOr):
                return R.infer("E-Or", self.wf(f.conclusion.A, ctx, "prop"), w, f, g)
            return R.infer("E-+", self.motive(f.conclusion.A, W, ctx), w, f, g)
        if isinstance(t, (S.ElSigma, S.ElEx)):
            d = self.infer(t.t, ctx)
            D = d.conclusion.A
            inner = ctx + ((t.y, D.A), (t.z, S.substitute(D.B, D.y, S.Var(t.y))))
            m = self.infer(t.r, inner)
            if isinstance(t, S.ElEx):
                return R.infer("E-Ex", self.wf(m.conclusion.A, ctx, "prop"), d, m)
            return R.infer("E-Sigma", self.motive(m.conclusion.A, D, ctx), d, m)
        if isinstance(t, S.ElId):
            p = self.infer(t.t3, ctx)
            I = p.conclusion.A
            c = self.infer(t.s, ctx + ((t.y, I.A),))
            P = c.conclusion.A
            names = {x for x, _ in ctx}
            u = S.fresh_name("u", names)
            v = S.fresh_name("v", names | {u})
            motive = self.wf(P, ctx + ((u, I.A), (v, I.A)), "prop")
            return R.infer("E-Id", motive, self.check(t.t, I.A, ctx), self.check(t.t2, I.A, ctx),
                           p, c)
        raise ValueError(f"cannot infer a type for {S.show(t)}")

    def head(self, f, arg, ctx):
        """The function of an application; a bare abstraction takes its domain from `arg`."""
        if not isinstance(f, (S.Lam, S.LamImp, S.LamAll)):
            return self.infer(f, ctx)
        dom = self.infer(arg, ctx).conclusion.A
        C = self.infer(f.s, ctx + ((f.y, dom),)).conclusion.A
        if isinstance(f, S.LamImp):
            return self.check(f, S.Imp(dom, C), ctx)
        if isinstance(f, S.LamAll):
            return self.check(f, S.Forall(f.y, dom, C), ctx)
        if isinstance(C, S.PropS):
            return self.check(f, S.FunPropS(dom), ctx)
        return self.check(f, S.Pi(f.y, dom, C), ctx)

    def motive(self, L, over, ctx):
        """A constant family L over `over`, as `L col [z : over]`."""
        z = S.fresh_name("z", {x for x, _ in ctx} | S.free_vars(L))
        return self.wf(L, ctx + ((z, over),), "col")


B = Builder()


def judge(text: str) -> R.Derivation:
    """Derive a plain membership or formation judgement by the builder."""
    j = S.parse_judgement(text)
    if j.kind == "term":
        return B.check(j.t, j.A, j.context)
    if j.kind == "type":
        return B.wf(j.A, j.context, j.stratum)
    if j.kind == "cont":
        return B.cont(j.context)
    raise ValueError(text)


def constant(z, L, over, ctx=()):
    return B.wf(T(L), tuple(ctx) + ((z, T(over)),), "col")


def corpus() -> list:
    """(derivation, expected, note) triples."""
    out = []

    def add(d, expected="Holds", note=""):
        for stem, why in UNKNOWN.items():
            if stem in S.show_judgement(d.conclusion):
                expected, note = "Unknown", why
        out.append((d, expected, note))

    # contexts and formation
    for text in ["|- cont", "x : N |- cont", "x : N, y : N1 |- cont",
                 "|- N0 set", "|- N1 set", "|- N set", "|- Bot prop", "|- props col",
                 "|- Set col", "|- N -> props col", "|- List(N1) set", "|- N + N1 set",
                 "|- N1 + N0 set", "|- Pi x : N1. N set", "|- Sigma x : N. N1 set",
                 "|- Pi x : N0. N0 set", "|- Id(N, 0, 0) prop", "|- Id(N1, star, star) prop",
                 "|- Bot -> Bot prop", "|- Bot & Bot -> Bot prop", "|- Bot | Bot -> Bot prop",
                 "|- Exists x : N1. Id(N1, x, star) prop",
                 "|- Forall x : N1. Id(N1, x, x) prop",
                 "|- Forall x : N0. Bot prop",
                 "|- tau(Bothat) props", "|- tau(Idhat(N1, star, star)) prop",
                 "|- Sigma x : N1. N + N1 col", "|- List(N) set",
                 "|- Sigma x : props. tau(x) col"]:
        add(judge(text))

    # members
    for text in ["|- star in N1", "|- 0 in N", "|- 3 in N", "|- inl(2) in N + N1",
                 "|- inr(star) in N + N1", "|- eps in List(N)", "|- cons(cons(eps, 1), 2) in List(N)",
                 "|- pair(0, star) in Sigma x : N. N1", "|- lam x. x in Pi x : N. N",
                 "|- lam x. succ(x) in Pi x : N. N", "|- lam x. star in Pi x : N0. N1",
                 "|- lam x. emp0(x) in Pi x : N0. N", "|- id(0) in Id(N, 0, 0)",
                 "|- id(star) in Id(N1, star, star)",
                 "|- lamimp x. x in Bot -> Bot", "|- lamimp x. r0(x) in Bot -> Id(N, 0, 1)",
                 "|- lamimp x. pi1(x) in Bot & Id(N, 0, 0) -> Bot",
                 "|- andpair(id(0), id(star)) in Id(N, 0, 0) & Id(N1, star, star)",
                 "|- inlor(id(0)) in Id(N, 0, 0) | Bot", "|- inror(id(1)) in Bot | Id(N, 1, 1)",
                 "|- expair(star, id(star)) in Exists x : N1. Id(N1, x, star)",
                 "|- expair(2, id(2)) in Exists x : N. Id(N, x, 2)",
                 "|- lamall x. id(x) in Forall x : N1. Id(N1, x, x)",
                 "|- lamall x. id(x) in Forall x : N. Id(N, x, x)",
                 "|- ap(lam x. succ(x), 1) in N", "|- apimp(lamimp x. x, id(0)) in Id(N, 0, 0)",
                 "|- apall(lamall x. id(x), star) in Id(N1, star, star)",
                 "|- elN1(star, 0) in N", "|- elN(2, 0, (y, z) succ(succ(z))) in N",
                 "|- elList(cons(eps, star), 0, (x, y, z) succ(z)) in N",
                 "|- elPlus(inl(3), (x) x, (y) 0) in N",
                 "|- elSigma(pair(1, star), (x, y) x) in N",
                 "|- elEx(expair(star, id(star)), (x, y) id(0)) in Id(N, 0, 0)",
                 "|- elOr(inlor(id(0)), (x) x, (y) id(0)) in Id(N, 0, 0)",
                 "|- elId(0, 0, id(0), (x) id(star)) in Id(N1, star, star)",
                 "|- pi2(andpair(id(0), id(1))) in Id(N, 1, 1)",
                 "|- Bothat in props", "|- Idhat(N, 0, 1) in props",
                 "|- Andhat(Bothat, Idhat(N1, star, star)) in props",
                 "|- Orhat(Bothat, Bothat) in props", "|- Imphat(Bothat, Bothat) in props",
                 "|- Existshat(x : N, Idhat(N, x, 0)) in props",
                 "|- Forallhat(x : N1, Idhat(N1, x, star)) in props",
                 "|- lam x. Idhat(N, x, x) in N -> props",
                 "|- ap(lam x. Idhat(N, x, 0), 0) in props",
                 "|- N0hat in Set", "|- N1hat in Set", "|- Nhat in Set",
                 "|- Listhat(N1hat) in Set", "|- Plushat(Nhat, N1hat) in Set",
                 "|- Sigmahat(x : N, N1hat) in Set", "|- Pihat(x : N1, Nhat) in Set",
                 "|- Bothat in Set", "|- Idhat(N, 2, 2) in Set",
                 "|- pair(Bothat, star) in Sigma x : props. N1",
                 "x : N |- succ(x) in N",
                 "x : N1 |- elN1(x, 0) in N", "x : N0 |- emp0(x) in Bot"]:
        add(judge(text))

    # conversions
    star, zero = B.infer(S.Star()), B.infer(S.Zero())
    one = B.check(P("1"), S.Nat())
    add(R.infer("C-S", constant("z", "N", "N1"), zero))
    add(R.infer("C1-N", constant("z", "N", "N"), one,
                B.check(P("succ(z)"), S.Nat(), (("y", S.Nat()), ("z", S.Nat())))))
    add(R.infer("C2-N", constant("z", "N", "N"), one, zero,
                B.check(P("succ(z)"), S.Nat(), (("y", S.Nat()), ("z", S.Nat())))))
    lc = (("x", T("List(N1)")), ("y", T("N1")), ("z", T("N")))
    add(R.infer("C1-list", constant("w", "N", "List(N1)"), zero, B.check(P("succ(z)"), T("N"), lc)))
    add(R.infer("C2-list", constant("w", "N", "List(N1)"), judge("|- eps in List(N1)"), star, zero,
                B.check(P("succ(z)"), T("N"), lc)))
    branches = (B.check(P("x"), T("N"), (("x", T("N")),)), B.check(P("0"), T("N"), (("y", T("N1")),)))
    add(R.infer("C1-+", constant("z", "N", "N + N1"), one, *branches))
    add(R.infer("C2-+", constant("z", "N", "N + N1"), star, *branches))
    add(R.infer("C-Sigma", constant("w", "N", "Sigma x : N. N1"), one, star,
                B.check(P("x"), T("N"), (("x", T("N")), ("y", T("N1"))))))
    body = B.check(P("succ(x)"), T("N"), (("x", T("N")),))
    add(R.infer("betaC-Pi", one, body, judge("x : N |- N set"), judge("|- N set")))
    idz = judge("|- id(0) in Id(N, 0, 0)")
    add(R.infer("beta1C-And", idz, judge("|- id(1) in Id(N, 1, 1)"),
                judge("|- Id(N, 0, 0) prop"), judge("|- Id(N, 1, 1) prop")))
    add(R.infer("beta2C-And", idz, judge("|- id(1) in Id(N, 1, 1)"),
                judge("|- Id(N, 0, 0) prop"), judge("|- Id(N, 1, 1) prop")))
    add(R.infer("betaC-Imp", idz, B.check(P("x"), T("Id(N, 0, 0)"), (("x", T("Id(N, 0, 0)")),)),
                judge("|- Id(N, 0, 0) prop"), judge("|- Id(N, 0, 0) prop")))
    xn = (("x", T("N")),)
    add(R.infer("betaC-All", one, B.check(P("id(x)"), T("Id(N, x, x)"), xn),
                judge("x : N |- Id(N, x, x) prop")))
    add(R.infer("C-Ex", judge("|- Id(N, 0, 0) prop"), judge("x : N |- Id(N, x, x) prop"), one,
                judge("|- id(1) in Id(N, 1, 1)"),
                B.check(P("id(0)"), T("Id(N, 0, 0)"), (("x", T("N")), ("y", T("Id(N, x, x)"))))))
    add(R.infer("C-Id", judge("u : N, v : N |- Id(N1, star, star) prop"),
                zero, B.check(P("id(star)"), T("Id(N1, star, star)"), xn)))
    add(R.infer("betaC-Fun", zero, B.check(P("Idhat(N, x, x)"), S.PropS(), xn), judge("|- N set")))
    idp = judge("|- id(0) in Id(N, 0, 0)")
    orb = judge("x : Id(N, 0, 0) |- x in Id(N, 0, 0)")
    add(R.infer("C1-Or", judge("|- Id(N, 0, 0) prop"), judge("|- Id(N, 0, 0) prop"),
                judge("|- Bot prop"), idp, orb, judge("y : Bot |- r0(y) in Id(N, 0, 0)")))

    # small propositions and their decoding
    add(R.infer("eq-Pr1"))
    pq = (judge("|- Bothat in props"), judge("|- Idhat(N, 0, 0) in props"))
    add(R.infer("eq-Pr2", *pq))
    add(R.infer("eq-Pr3", *pq))
    add(R.infer("eq-Pr4", *pq))
    add(R.infer("eq-Pr5", judge("|- N set"), zero, one))
    add(R.infer("eq-Pr6", B.check(P("Idhat(N, x, 1)"), S.PropS(), xn), judge("|- N set")))
    add(R.infer("eq-Pr7", B.check(P("Idhat(N1, x, star)"), S.PropS(), (("x", S.N1()),)),
                judge("|- N1 set")))
    e5 = R.infer("eq-Pr5", judge("|- N set"), zero, zero)
    flip = R.infer("sym-T", R.infer("props-into-prop-eq", e5))
    add(R.infer("conv", idz, flip))
    add(R.infer("props-eq1", R.infer("ref-T", judge("|- tau(Bothat) props"))))
    add(R.infer("props-into-set-eq", R.infer("eq-Pr1")))

    # equality rules
    add(R.infer("ref", judge("|- 2 in N")))
    beta = R.infer("betaC-Pi", one, body, judge("x : N |- N set"), judge("|- N set"))
    add(R.infer("sym", beta))
    beta2 = R.infer("betaC-Pi", B.check(P("ap(lam x. succ(x), 1)"), T("N")), body,
                    judge("x : N |- N set"), judge("|- N set"))
    add(R.infer("tra", beta2, R.substitution("sub", body, beta)))
    add(R.infer("ref-T", judge("|- List(N) set")))
    add(R.infer("tra-T", R.infer("sym-T", R.infer("eq-Pr1")), R.infer("eq-Pr1")))
    ref2 = R.infer("ref", judge("|- 2 in N"))
    add(R.substitution("subT", judge("x : N |- Id(N, x, x) prop"), ref2))
    add(R.substitution("subT_m", judge("x : N |- Id(N, x, 0) prop"), judge("|- 2 in N"),
                       judge("|- 2 in N"), ref2))
    add(R.substitution("sub_m", B.check(P("id(x)"), T("Id(N, x, x)"), xn),
                       judge("x : N |- Id(N, x, x) prop"), judge("|- 2 in N"), judge("|- 2 in N"),
                       ref2))
    add(R.infer("eq-list", R.infer("ref-T", judge("|- N1 set"))))
    add(R.infer("eq-+", R.infer("ref-T", judge("|- N set")), R.infer("ref-T", judge("|- N1 set"))))
    add(R.infer("eq-Pi", R.infer("ref-T", judge("x : N |- N1 set")),
                R.infer("ref-T", judge("|- N set"))))
    add(R.infer("eq-Id", R.infer("ref-T", judge("|- N col")), R.infer("ref", one),
                R.infer("ref", one)))
    add(R.infer("E-Pi_m", judge("x : N |- N set"), judge("|- N set"), one,
                judge("|- lam x. succ(x) in Pi x : N. N")))
    return out


def main(argv=None) -> int:
    root = Path(__file__).resolve().parent.parent / "src" / "mfreal" / "data"
    lines, ders, bad = [], [], 0
    header = "# judgement ;; expected verdict ;; note\n"
    for i, (d, expected, note) in enumerate(corpus()):
        res = R.check_derivation(d)
        if not res.ok:
            print(f"entry {i}: {res}", file=sys.stderr)
            bad += 1
            continue
        v = check_judgement(d.conclusion, Budget())
        if v.status == "Fails" or (v.status == "Unknown" and expected != "Unknown"):
            print(f"entry {i}: {S.show_judgement(d.conclusion)} is {v.status}", file=sys.stderr)
            bad += 1
        text = S.show_judgement(d.conclusion)
        lines.append(f"{text} ;; {expected}" + (f" ;; {note}" if note else ""))
        comment = f";; {expected}: {note}\n" if note else ""
        ders.append(f"; {len(ders)}\n{comment}{R.show_derivation(d)}\n")
    if bad:
        print(f"{bad} bad entries; nothing written", file=sys.stderr)
        return 1
    (root / "corpus.txt").write_text(header + "\n".join(lines) + "\n", encoding="utf-8")
    (root / "corpus.der").write_text("\n".join(ders), encoding="utf-8")
    print(f"wrote {len(lines)} judgements")
    return 0


if __name__ == "__main__":
    sys.exit(main())

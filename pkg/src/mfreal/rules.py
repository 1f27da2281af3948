"""The rules of mTT^s and a checker for derivation trees.

Rules are written as schemas in the surface syntax, extended with
metavariables.  An identifier that is not bound inside the schema is a
metavariable; uppercase ones stand for types and lowercase ones for terms.
A metavariable may be applied to bound variables, `C(x)`, which is how the
higher-order premises of the Appendix (`C(x) set [x : B]`) are encoded.
A premise may extend the implicit context with `[x : B, ...]`.  The stratum
`type` ranges over props, set, prop and col, with one choice per rule.

Matching is first order up to alpha-equivalence: a metavariable applied to
distinct bound variables is solved by abstraction, and every other
occurrence must agree with its solution after substitution.  No matching
modulo conversion happens; conversions enter a derivation only through the
conv rules.

Derivations are read and written as s-expressions

    (I-Pi "|- lam x. x in Pi x : N. N"
      (var "x : N |- x in N" ...)
      ...)

with the conclusion quoted and the premises following in schema order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields
from typing import Callable

from . import syntax as S

# ---------------------------------------------------------------------------
# Pattern syntax


@dataclass(frozen=True)
class MetaTerm(S.Term):
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class MetaType(S.TypeExpr):
    name: str
    args: tuple = ()


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def _is_meta_token(tok) -> bool:
    return tok is not None and bool(_IDENT.fullmatch(tok)) and tok not in S.KEYWORDS


class _PatternParser(S._Parser):
    def meta_args(self) -> tuple:
        if self.peek() != "(":
            return ()
        self.take("(")
        args = [self.term()]
        while self.peek() == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def type_atom(self):
        if _is_meta_token(self.peek()):
            return MetaType(self.take(), self.meta_args())
        return super().type_atom()

    def term_atom(self):
        if _is_meta_token(self.peek()) and self.peek(1) == "(":
            return MetaTerm(self.take(), self.meta_args())
        return super().term_atom()


@dataclass(frozen=True)
class Pattern:
    """A judgement schema; `ext` extends the implicit context."""

    kind: str
    ext: tuple = ()
    A: S.TypeExpr | None = None
    B: S.TypeExpr | None = None
    t: S.Term | None = None
    s: S.Term | None = None
    stratum: str | None = None
    text: str = ""


def parse_pattern(text: str) -> Pattern:
    body, ext = text.strip(), ()
    if body.endswith("]"):
        cut = body.rindex("[")
        p = _PatternParser(body[cut + 1:-1])
        ext = p.context()
        p.done()
        body = body[:cut].strip()
    if body == "cont":
        return Pattern("cont", ext, text=text)
    p = _PatternParser(body)
    if any(tok == "in" for tok, _ in p.toks):
        t = p.term()
        s = None
        if p.peek() == "=":
            p.take()
            s = p.term()
        p.take("in")
        A = p.type_()
        p.done()
        return Pattern("term" if s is None else "term_eq", ext, A=A, t=t, s=s, text=text)
    stratum = p.toks[-1][0]
    if stratum not in S.STRATA and stratum != "type":
        raise S.ParseError("a type judgement must end with a stratum", len(body), body)
    p.toks = p.toks[:-1]
    A = p.type_()
    B = None
    if p.peek() == "=":
        p.take()
        B = p.type_()
    p.done()
    return Pattern("type" if B is None else "type_eq", ext, A=A, B=B, stratum=stratum, text=text)


# ---------------------------------------------------------------------------
# Matching


class _Defer(Exception):
    """A metavariable is needed before it can be solved."""


class Matcher:
    """Solutions of metavariables, shared by all judgements of one rule instance."""

    def __init__(self, given: dict | None = None):
        # name -> (parameter names, body); "$type" -> stratum; "@x" -> preferred name
        self.meta: dict = dict(given or {})

    # nodes ------------------------------------------------------------------
    def match(self, pat, act, loc: dict) -> bool:
        if isinstance(pat, (MetaTerm, MetaType)) or (type(pat) is S.Var and pat.name not in loc):
            want = S.TypeExpr if isinstance(pat, MetaType) else S.Term
            if not isinstance(act, want):
                return False
            args = getattr(pat, "args", ())
            return self.solve(pat.name, [self.inst(a, loc) for a in args], act, loc)
        if type(pat) is S.Var:
            return type(act) is S.Var and act.name == loc[pat.name]
        if type(pat) is not type(act):
            return False
        binds = pat._binds
        binders = {n for ns in binds.values() for n in ns}
        for f in fields(pat):
            if f.name in binders:
                continue
            pv, av = getattr(pat, f.name), getattr(act, f.name)
            if isinstance(pv, S.Node):
                inner = dict(loc)
                for b in binds.get(f.name, ()):
                    inner[getattr(pat, b)] = getattr(act, b)
                if not self.match(pv, av, inner):
                    return False
            elif pv != av:
                return False
        return True

    def solve(self, name: str, args: list, act, loc: dict) -> bool:
        hit = self.meta.get(name)
        if hit is not None:
            params, body = hit
            if len(params) != len(args):
                raise ValueError(f"metavariable {name} used with different arities")
            return S.alpha_eq(_apply(params, body, args), act)
        names = [a.name for a in args if type(a) is S.Var]
        if len(names) != len(args) or len(set(names)) != len(names):
            raise _Defer(name)
        # the solution may only mention the bound variables it is applied to
        if S.free_vars(act) & (set(loc.values()) - set(names)):
            return False
        self.meta[name] = (tuple(names), act)
        return True

    def inst(self, pat, loc: dict):
        """The node a pattern denotes under the current solutions."""
        if isinstance(pat, (MetaTerm, MetaType)) or (type(pat) is S.Var and pat.name not in loc):
            hit = self.meta.get(pat.name)
            if hit is None:
                raise _Defer(pat.name)
            args = [self.inst(a, loc) for a in getattr(pat, "args", ())]
            return _apply(hit[0], hit[1], args)
        if type(pat) is S.Var:
            return S.Var(loc[pat.name])
        binds = pat._binds
        binders = {n for ns in binds.values() for n in ns}
        values = {}
        renames = {}
        for f in fields(pat):
            if f.name in binders:
                continue
            pv = getattr(pat, f.name)
            if not isinstance(pv, S.Node):
                values[f.name] = pv
                continue
            inner = dict(loc)
            for b in binds.get(f.name, ()):
                pname = getattr(pat, b)
                temp = f"{pname}§{id(pat)}"
                inner[pname] = temp
                renames[b] = (pname, temp)
            values[f.name] = self.inst(pv, inner)
        for b, (pname, temp) in renames.items():
            values[b] = temp
        node = type(pat)(**values)
        return _tidy_binders(node, renames, self.meta)

    # judgements ---------------------------------------------------------------
    def judgement(self, pat: Pattern, act: S.Judgement, gamma: tuple) -> str | None:
        """None when `act` instantiates `pat` over the context gamma, else the slot."""
        if act.kind != pat.kind:
            return f"expected a {pat.kind} judgement, found {act.kind}"
        if pat.stratum == "type":
            chosen = self.meta.setdefault("$type", act.stratum)
            if chosen != act.stratum:
                return f"stratum {act.stratum} differs from {chosen} used elsewhere in the rule"
        elif pat.stratum is not None and pat.stratum != act.stratum:
            return f"stratum: expected {pat.stratum}, found {act.stratum}"
        n = len(gamma)
        if len(act.context) != n + len(pat.ext) or \
                S.ctx_alpha_key(act.context[:n]) != S.ctx_alpha_key(gamma):
            return "context: expected the conclusion's context" + (
                f" extended by [{S.show_context(pat.ext)}]" if pat.ext else "")
        loc: dict = {}
        for (pname, ptype), (aname, atype) in zip(pat.ext, act.context[n:]):
            if not self.match(ptype, atype, loc):
                return f"context entry {aname}: {S.show(atype)} does not fit `{pat.text}`"
            loc[pname] = aname
            self.meta.setdefault("@" + pname, aname)
        for part in ("t", "s", "A", "B"):
            pv = getattr(pat, part)
            if pv is not None and not self.match(pv, getattr(act, part), loc):
                return f"{_SLOT[part]} {S.show(getattr(act, part))} does not fit `{pat.text}`"
        return None

    def instantiate(self, pat: Pattern, gamma: tuple) -> S.Judgement:
        loc: dict = {}
        ctx = list(gamma)
        for pname, ptype in pat.ext:
            aname = self.meta.get("@" + pname, pname)
            ctx.append((aname, self.inst(ptype, loc)))
            loc[pname] = aname
        parts = {k: (None if getattr(pat, k) is None else self.inst(getattr(pat, k), loc))
                 for k in ("A", "B", "t", "s")}
        stratum = self.meta.get("$type") if pat.stratum == "type" else pat.stratum
        if pat.stratum == "type" and stratum is None:
            raise _Defer("type")
        return S.Judgement(pat.kind, tuple(ctx), stratum=stratum, **parts)


_SLOT = {"t": "term", "s": "right-hand term", "A": "type", "B": "right-hand type"}


def _apply(params: tuple, body, args: list):
    return S.substitute_many(body, dict(zip(params, args))) if params else body


def _tidy_binders(node, renames: dict, meta: dict):
    """Replace the temporary binder names of an instantiated node by readable ones."""
    from dataclasses import replace
    for b, (pname, temp) in renames.items():
        binds = node._binds
        scope = [f for f, names in binds.items() if b in names]
        inside = set()
        for f in scope:
            inside |= S.free_vars(getattr(node, f))
        inside.discard(temp)
        want = meta.get("@" + pname, pname)
        nice = want if want not in inside else S.fresh_name(want, inside)
        changes = {b: nice}
        for f in scope:
            changes[f] = S.substitute(getattr(node, f), temp, S.Var(nice))
        node = replace(node, **changes)
    return node


# ---------------------------------------------------------------------------
# Rules


@dataclass(frozen=True)
class Rule:
    name: str
    display: str
    premises: tuple
    conclusion: Pattern | None
    group: str
    note: str = ""
    check: Callable | None = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int | None:
        return None if self.check is not None and self.conclusion is None else len(self.premises)

    def schema(self) -> str:
        if self.conclusion is None:
            return self.note
        if not self.premises:
            return self.conclusion.text
        return "  ".join(p.text for p in self.premises) + "  ==>  " + self.conclusion.text


def _rule(name, display, premises, conclusion, group, note=""):
    return Rule(name, display, tuple(parse_pattern(p) for p in premises),
                parse_pattern(conclusion), group, note)


_SCHEMAS = [
    # embeddings
    ("set-into-col", "set-into-col", ["A set"], "A col", "embedding"),
    ("prop-into-col", "prop-into-col", ["A prop"], "A col", "embedding"),
    ("props-into-prop", "prop_s-into-prop", ["A props"], "A prop", "embedding"),
    ("props-into-set", "prop_s-into-set", ["A props"], "A set", "embedding"),
    ("set-into-col-eq", "set-into-col eq", ["A = B set"], "A = B col", "embedding"),
    ("prop-into-col-eq", "prop-into-col eq", ["A = B prop"], "A = B col", "embedding"),
    ("props-into-prop-eq", "prop_s-into-prop eq", ["A = B props"], "A = B prop", "embedding"),
    ("props-into-set-eq", "prop_s-into-set eq", ["A = B props"], "A = B set", "embedding"),
    ("props-eq1", "prop_s eq1", ["tau(p) = tau(q) props"], "p = q in props", "embedding",
     "codes a la Tarski: the small propositions are tau(p) and tau(q)"),
    ("props-eq2", "prop_s eq2", ["p = q in props"], "tau(p) = tau(q) props", "embedding"),

    # strong indexed sum of collections
    ("F-Sigma", "F-Σ", ["C(x) col [x : B]"], "Sigma x : B. C(x) col", "Sigma"),
    ("F-Sigma_m", "F-Σ (modified)", ["B col", "C(x) col [x : B]"], "Sigma x : B. C(x) col",
     "Sigma"),
    ("I-Sigma", "I-Σ", ["b in B", "c in C(b)", "C(x) col [x : B]"],
     "pair(b, c) in Sigma x : B. C(x)", "Sigma"),
    ("E-Sigma", "E-Σ", ["M(z) col [z : Sigma x : B. C(x)]", "d in Sigma x : B. C(x)",
                        "m(x, y) in M(pair(x, y)) [x : B, y : C(x)]"],
     "elSigma(d, (x, y) m(x, y)) in M(d)", "Sigma"),
    ("C-Sigma", "C-Σ", ["M(z) col [z : Sigma x : B. C(x)]", "b in B", "c in C(b)",
                        "m(x, y) in M(pair(x, y)) [x : B, y : C(x)]"],
     "elSigma(pair(b, c), (x, y) m(x, y)) = m(b, c) in M(pair(b, c))", "Sigma"),
    ("F-Sigma_s", "F-Σs", ["C(x) set [x : B]", "B set"], "Sigma x : B. C(x) set", "Sigma"),

    # empty set, singleton
    ("F-Em", "F-Em", [], "N0 set", "N0"),
    ("E-Em", "E-Em", ["a in N0", "A(x) col [x : N0]"], "emp0(a) in A(a)", "N0"),
    ("S", "S", [], "N1 set", "N1"),
    ("I-S", "I-S", [], "star in N1", "N1"),
    ("E-S", "E-S", ["t in N1", "M(z) col [z : N1]", "c in M(star)"], "elN1(t, c) in M(t)", "N1"),
    ("C-S", "C-S", ["M(z) col [z : N1]", "c in M(star)"], "elN1(star, c) = c in M(star)", "N1"),

    # natural numbers, read as List(N1)
    ("F-N", "F-N", [], "N set", "N",
     "natural numbers are List(N1) with 0 = eps and succ(t) = cons(t, star)"),
    ("I1-N", "I₁-N", [], "0 in N", "N"),
    ("I2-N", "I₂-N", ["t in N"], "succ(t) in N", "N"),
    ("E-N", "E-N", ["L(z) col [z : N]", "t in N", "a in L(0)",
                    "l(y, z) in L(succ(y)) [y : N, z : L(y)]"],
     "elN(t, a, (y, z) l(y, z)) in L(t)", "N"),
    ("C1-N", "C₁-N", ["L(z) col [z : N]", "a in L(0)",
                      "l(y, z) in L(succ(y)) [y : N, z : L(y)]"],
     "elN(0, a, (y, z) l(y, z)) = a in L(0)", "N"),
    ("C2-N", "C₂-N", ["L(z) col [z : N]", "t in N", "a in L(0)",
                      "l(y, z) in L(succ(y)) [y : N, z : L(y)]"],
     "elN(succ(t), a, (y, z) l(y, z)) = l(t, elN(t, a, (y, z) l(y, z))) in L(succ(t))", "N"),

    # lists
    ("F-list", "F-list", ["C set"], "List(C) set", "List"),
    ("I1-list", "I₁-list", ["List(C) set"], "eps in List(C)", "List"),
    ("I2-list", "I₂-list", ["s in List(C)", "c in C"], "cons(s, c) in List(C)", "List"),
    ("E-list", "E-list", ["L(z) col [z : List(C)]", "s in List(C)", "a in L(eps)",
                          "l(x, y, z) in L(cons(x, y)) [x : List(C), y : C, z : L(x)]"],
     "elList(s, a, (x, y, z) l(x, y, z)) in L(s)", "List"),
    ("C1-list", "C₁-list", ["L(z) col [z : List(C)]", "a in L(eps)",
                            "l(x, y, z) in L(cons(x, y)) [x : List(C), y : C, z : L(x)]"],
     "elList(eps, a, (x, y, z) l(x, y, z)) = a in L(eps)", "List"),
    ("C2-list", "C₂-list", ["L(z) col [z : List(C)]", "s in List(C)", "c in C", "a in L(eps)",
                            "l(x, y, z) in L(cons(x, y)) [x : List(C), y : C, z : L(x)]"],
     "elList(cons(s, c), a, (x, y, z) l(x, y, z)) = "
     "l(s, c, elList(s, a, (x, y, z) l(x, y, z))) in L(cons(s, c))", "List"),

    # disjoint sum
    ("F-+", "F-+", ["B set", "C set"], "B + C set", "Plus"),
    ("I1-+", "I₁-+", ["b in B", "B set", "C set"], "inl(b) in B + C", "Plus"),
    ("I2-+", "I₂-+", ["c in C", "B set", "C set"], "inr(c) in B + C", "Plus"),
    ("E-+", "E-+", ["A(z) col [z : B + C]", "w in B + C", "f(x) in A(inl(x)) [x : B]",
                    "g(y) in A(inr(y)) [y : C]"],
     "elPlus(w, (x) f(x), (y) g(y)) in A(w)", "Plus"),
    ("C1-+", "C₁-+", ["A(z) col [z : B + C]", "b in B", "f(x) in A(inl(x)) [x : B]",
                      "g(y) in A(inr(y)) [y : C]"],
     "elPlus(inl(b), (x) f(x), (y) g(y)) = f(b) in A(inl(b))", "Plus"),
    ("C2-+", "C₂-+", ["A(z) col [z : B + C]", "c in C", "f(x) in A(inl(x)) [x : B]",
                      "g(y) in A(inr(y)) [y : C]"],
     "elPlus(inr(c), (x) f(x), (y) g(y)) = g(c) in A(inr(c))", "Plus"),

    # dependent product
    ("F-Pi", "F-Π", ["C(x) set [x : B]", "B set"], "Pi x : B. C(x) set", "Pi"),
    ("I-Pi", "I-Π", ["c(x) in C(x) [x : B]", "C(x) set [x : B]", "B set"],
     "lam x. c(x) in Pi x : B. C(x)", "Pi"),
    ("E-Pi", "E-Π", ["b in B", "f in Pi x : B. C(x)"], "ap(f, b) in C(b)", "Pi"),
    ("E-Pi_m", "E-Πm", ["C(x) set [x : B]", "C(b) set", "b in B", "f in Pi x : B. C(x)"],
     "ap(f, b) in C(b)", "Pi"),
    ("betaC-Pi", "βC-Π", ["b in B", "c(x) in C(x) [x : B]", "C(x) set [x : B]", "B set"],
     "ap(lam x. c(x), b) = c(b) in C(b)", "Pi"),

    # falsum
    ("F-Fs", "F-Fs", [], "Bot prop", "Bot"),
    ("E-Fs", "E-Fs", ["a in Bot", "P prop"], "r0(a) in P", "Bot"),

    # disjunction
    ("F-Or", "F-∨", ["P prop", "Q prop"], "P | Q prop", "Or"),
    ("I1-Or", "I₁-∨", ["b in P", "P prop", "Q prop"], "inlor(b) in P | Q", "Or"),
    ("I2-Or", "I₂-∨", ["c in Q", "P prop", "Q prop"], "inror(c) in P | Q", "Or"),
    ("E-Or", "E-∨", ["R prop", "w in P | Q", "f(x) in R [x : P]", "g(y) in R [y : Q]"],
     "elOr(w, (x) f(x), (y) g(y)) in R", "Or"),
    ("C1-Or", "C₁-∨", ["R prop", "P prop", "Q prop", "b in P", "f(x) in R [x : P]",
                       "g(y) in R [y : Q]"],
     "elOr(inlor(b), (x) f(x), (y) g(y)) = f(b) in R", "Or"),
    ("C2-Or", "C₂-∨", ["R prop", "P prop", "Q prop", "c in Q", "f(x) in R [x : P]",
                       "g(y) in R [y : Q]"],
     "elOr(inror(c), (x) f(x), (y) g(y)) = g(c) in R", "Or"),

    # conjunction
    ("F-And", "F-∧", ["P prop", "Q prop"], "P & Q prop", "And"),
    ("I-And", "I-∧", ["b in P", "c in Q", "P prop", "Q prop"], "andpair(b, c) in P & Q", "And"),
    ("E1-And", "E₁-∧", ["d in P & Q"], "pi1(d) in P", "And"),
    ("E2-And", "E₂-∧", ["d in P & Q"], "pi2(d) in Q", "And"),
    ("beta1C-And", "β₁C-∧", ["b in P", "c in Q", "P prop", "Q prop"],
     "pi1(andpair(b, c)) = b in P", "And"),
    ("beta2C-And", "β₂C-∧", ["b in P", "c in Q", "P prop", "Q prop"],
     "pi2(andpair(b, c)) = c in Q", "And"),

    # implication
    ("F-Imp", "F-→", ["P prop", "Q prop"], "P -> Q prop", "Imp"),
    ("I-Imp", "I-→", ["c(x) in Q [x : P]", "P prop", "Q prop"],
     "lamimp x. c(x) in P -> Q", "Imp"),
    ("E-Imp", "E-→", ["b in P", "f in P -> Q"], "apimp(f, b) in Q", "Imp"),
    ("betaC-Imp", "βC-→", ["b in P", "c(x) in Q [x : P]", "P prop", "Q prop"],
     "apimp(lamimp x. c(x), b) = c(b) in Q", "Imp"),

    # existential quantification
    ("F-Ex", "F-∃", ["P(x) prop [x : B]"], "Exists x : B. P(x) prop", "Exists"),
    ("F-Ex_m", "F-∃ (modified)", ["B col", "P(x) prop [x : B]"], "Exists x : B. P(x) prop",
     "Exists"),
    ("I-Ex", "I-∃", ["b in B", "c in P(b)", "P(x) prop [x : B]"],
     "expair(b, c) in Exists x : B. P(x)", "Exists"),
    ("E-Ex", "E-∃", ["R prop", "d in Exists x : B. P(x)", "m(x, y) in R [x : B, y : P(x)]"],
     "elEx(d, (x, y) m(x, y)) in R", "Exists"),
    ("C-Ex", "C-∃", ["R prop", "P(x) prop [x : B]", "b in B", "c in P(b)",
                     "m(x, y) in R [x : B, y : P(x)]"],
     "elEx(expair(b, c), (x, y) m(x, y)) = m(b, c) in R", "Exists"),

    # universal quantification
    ("F-All", "F-∀", ["P(x) prop [x : B]"], "Forall x : B. P(x) prop", "Forall"),
    ("F-All_m", "F-∀ (modified)", ["B col", "P(x) prop [x : B]"], "Forall x : B. P(x) prop",
     "Forall"),
    ("I-All", "I-∀", ["c(x) in P(x) [x : B]", "P(x) prop [x : B]"],
     "lamall x. c(x) in Forall x : B. P(x)", "Forall"),
    ("E-All", "E-∀", ["b in B", "f in Forall x : B. P(x)"], "apall(f, b) in P(b)", "Forall"),
    ("E-All_m", "E-∀m", ["P(x) prop [x : B]", "P(b) prop", "b in B",
                         "f in Forall x : B. P(x)"], "apall(f, b) in P(b)", "Forall"),
    ("betaC-All", "βC-∀", ["b in B", "c(x) in P(x) [x : B]", "P(x) prop [x : B]"],
     "apall(lamall x. c(x), b) = c(b) in P(b)", "Forall"),

    # propositional equality
    ("F-Id", "F-Id", ["A col", "a in A", "b in A"], "Id(A, a, b) prop", "Id"),
    ("I-Id", "I-Id", ["a in A"], "id(a) in Id(A, a, a)", "Id"),
    ("E-Id", "E-Id", ["P(x, y) prop [x : A, y : A]", "a in A", "b in A", "p in Id(A, a, b)",
                      "c(x) in P(x, x) [x : A]"],
     "elId(a, b, p, (x) c(x)) in P(a, b)", "Id"),
    ("C-Id", "C-Id", ["P(x, y) prop [x : A, y : A]", "a in A", "c(x) in P(x, x) [x : A]"],
     "elId(a, a, id(a), (x) c(x)) = c(a) in P(a, a)", "Id"),

    # small propositions
    ("F-Pr", "F-Pr", [], "props col", "props"),
    ("T-Pr", "τ-Pr", ["p in props"], "tau(p) props", "props"),
    ("Pr1", "Pr₁", [], "Bothat in props", "props"),
    ("Pr2", "Pr₂", ["p in props", "q in props"], "Orhat(p, q) in props", "props"),
    ("Pr3", "Pr₃", ["p in props", "q in props"], "Imphat(p, q) in props", "props"),
    ("Pr4", "Pr₄", ["p in props", "q in props"], "Andhat(p, q) in props", "props"),
    ("Pr5", "Pr₅", ["A set", "a in A", "b in A"], "Idhat(A, a, b) in props", "props"),
    ("Pr6", "Pr₆", ["p(x) in props [x : B]", "B set"], "Existshat(x : B, p(x)) in props",
     "props"),
    ("Pr7", "Pr₇", ["p(x) in props [x : B]", "B set"], "Forallhat(x : B, p(x)) in props",
     "props"),
    ("eq-Pr1", "eq-Pr₁", [], "tau(Bothat) = Bot props", "props"),
    ("eq-Pr2", "eq-Pr₂", ["p in props", "q in props"],
     "tau(Orhat(p, q)) = tau(p) | tau(q) props", "props"),
    ("eq-Pr3", "eq-Pr₃", ["p in props", "q in props"],
     "tau(Imphat(p, q)) = tau(p) -> tau(q) props", "props"),
    ("eq-Pr4", "eq-Pr₄", ["p in props", "q in props"],
     "tau(Andhat(p, q)) = tau(p) & tau(q) props", "props"),
    ("eq-Pr5", "eq-Pr₅", ["A set", "a in A", "b in A"],
     "tau(Idhat(A, a, b)) = Id(A, a, b) props", "props"),
    ("eq-Pr6", "eq-Pr₆", ["p(x) in props [x : B]", "B set"],
     "tau(Existshat(x : B, p(x))) = Exists x : B. tau(p(x)) props", "props"),
    ("eq-Pr7", "eq-Pr₇", ["p(x) in props [x : B]", "B set"],
     "tau(Forallhat(x : B, p(x))) = Forall x : B. tau(p(x)) props", "props"),

    # set codes (no elimination and no conversion)
    ("F-Se", "F-Se", [], "Set col", "Set"),
    ("Se_e", "Se_e", [], "N0hat in Set", "Set"),
    ("Se_s", "Se_s", [], "N1hat in Set", "Set"),
    ("Se_n", "Se_n", [], "Nhat in Set", "Set",
     "the code of N, with N read as List(N1)"),
    ("Se_l", "Se_l", ["a in Set"], "Listhat(a) in Set", "Set"),
    ("Se_u", "Se_u", ["a in Set", "b in Set"], "Plushat(a, b) in Set", "Set"),
    ("Se_Sigma", "Se_Σ", ["a(x) in Set [x : B]", "B set"], "Sigmahat(x : B, a(x)) in Set", "Set"),
    ("Se_Pi", "Se_Π", ["a(x) in Set [x : B]", "B set"], "Pihat(x : B, a(x)) in Set", "Set"),
    ("sp-i-p", "sp-i-p", ["p in props"], "p in Set", "Set"),

    # propositional functions
    ("F-Fun", "F-Fun", ["B set"], "B -> props col", "Fun"),
    ("I-Fun", "I-Fun", ["c(x) in props [x : B]", "B set"], "lam x. c(x) in B -> props", "Fun"),
    ("E-Fun", "E-Fun", ["b in B", "f in B -> props"], "ap(f, b) in props", "Fun"),
    ("betaC-Fun", "βC-Fun", ["b in B", "c(x) in props [x : B]", "B set"],
     "ap(lam x. c(x), b) = c(b) in props", "Fun"),

    # equality of types
    ("ref-T", "ref (types)", ["A type"], "A = A type", "equality"),
    ("sym-T", "sym (types)", ["A = B type"], "B = A type", "equality"),
    ("tra-T", "tra (types)", ["A = B type", "B = C type"], "A = C type", "equality"),
    # equality of terms
    ("ref", "ref", ["a in A"], "a = a in A", "equality"),
    ("sym", "sym", ["a = b in A"], "b = a in A", "equality"),
    ("tra", "tra", ["a = b in A", "b = c in A"], "a = c in A", "equality"),
    ("conv", "conv", ["a in A", "A = B type"], "a in B", "equality"),
    ("conv-eq", "conv-eq", ["a = b in A", "A = B type"], "a = b in B", "equality"),

    # congruences of type constructors
    ("eq-Sigma-col", "eq-Σ (col)", ["C(x) = D(x) col [x : B]", "B = E col"],
     "Sigma x : B. C(x) = Sigma x : E. D(x) col", "equality"),
    ("eq-Pi-col", "eq-Π (col)", ["C(x) = D(x) col [x : B]", "B = E col"],
     "Pi x : B. C(x) = Pi x : E. D(x) col", "equality"),
    ("eq-list", "eq-list", ["C = D set"], "List(C) = List(D) set", "equality"),
    ("eq-Sigma", "eq-Σ", ["C(x) = D(x) set [x : B]", "B = E set"],
     "Sigma x : B. C(x) = Sigma x : E. D(x) set", "equality"),
    ("eq-+", "eq-+", ["B = E set", "C = D set"], "B + C = E + D set", "equality"),
    ("eq-Pi", "eq-Π", ["C(x) = D(x) set [x : B]", "B = E set"],
     "Pi x : B. C(x) = Pi x : E. D(x) set", "equality"),
    ("eq-Or", "eq-∨", ["P = R prop", "Q = U prop"], "P | Q = R | U prop", "equality"),
    ("eq-Imp", "eq-→", ["P = R prop", "Q = U prop"], "P -> Q = R -> U prop", "equality"),
    ("eq-And", "eq-∧", ["P = R prop", "Q = U prop"], "P & Q = R & U prop", "equality"),
    ("eq-Id", "eq-Id", ["A = E col", "a = e in A", "b = c in A"],
     "Id(A, a, b) = Id(E, e, c) prop", "equality"),
    ("eq-Ex", "eq-∃", ["P(x) = Q(x) prop [x : B]", "B = E col"],
     "Exists x : B. P(x) = Exists x : E. Q(x) prop", "equality",
     "the domains are compared as collections"),
    ("eq-All", "eq-∀", ["P(x) = Q(x) prop [x : B]", "B = E col"],
     "Forall x : B. P(x) = Forall x : E. Q(x) prop", "equality",
     "the domains are compared as collections"),
]


# contexts, variables and the substitution rules are not first-order schemas


def _check_empty_context(premises, conclusion) -> str | None:
    if premises:
        return "expects no premises"
    if conclusion.kind != "cont" or conclusion.context:
        return "conclusion must be the empty context"
    return None


def _check_fc(premises, conclusion) -> str | None:
    if len(premises) != 1:
        return "expects one premise"
    if conclusion.kind != "cont" or not conclusion.context:
        return "conclusion must be a non-empty context"
    (x, A), gamma = conclusion.context[-1], conclusion.context[:-1]
    p = premises[0]
    if p.kind != "type":
        return "premise 1: expected a type judgement"
    if S.ctx_alpha_key(p.context) != S.ctx_alpha_key(gamma):
        return "premise 1: context must be the conclusion's context without its last entry"
    if not S.alpha_eq(p.A, A):
        return f"premise 1: type {S.show(p.A)} differs from the declared {S.show(A)}"
    if any(y == x for y, _ in gamma):
        return f"variable {x} is already declared"
    return None


def _check_var(premises, conclusion) -> str | None:
    if len(premises) != 1:
        return "expects one premise"
    p = premises[0]
    if p.kind != "cont" or S.ctx_alpha_key(p.context) != S.ctx_alpha_key(conclusion.context):
        return "premise 1: expected the conclusion's context to be well formed"
    if conclusion.kind != "term" or type(conclusion.t) is not S.Var:
        return "conclusion must type a variable"
    x = conclusion.t.name
    declared = [A for y, A in conclusion.context if y == x]
    if not declared:
        return f"variable {x} is not declared"
    if not S.alpha_eq(declared[-1], conclusion.A):
        return f"{x} is declared of type {S.show(declared[-1])}"
    return None


def _subst_rule(kind: str, modified: bool):
    """subT / sub and their modified forms, for any number of variables."""

    def check(premises, conclusion) -> str | None:
        head = 2 if (kind == "term" and modified) else 1
        per = 3 if modified else 1
        rest = len(premises) - head
        if rest <= 0 or rest % per:
            return "wrong number of premises"
        n = rest // per
        base = premises[0]
        want = "type" if kind == "type" else "term"
        if base.kind != want:
            return f"premise 1: expected a {want} judgement"
        gamma = conclusion.context
        if len(base.context) != len(gamma) + n or \
                S.ctx_alpha_key(base.context[:len(gamma)]) != S.ctx_alpha_key(gamma):
            return f"premise 1: context must extend the conclusion's by {n} variables"
        xs = [x for x, _ in base.context[len(gamma):]]
        types = [A for _, A in base.context[len(gamma):]]
        if modified and kind == "term":
            ty = premises[1]
            if ty.kind != "type" or S.ctx_alpha_key(ty.context) != S.ctx_alpha_key(base.context) \
                    or not S.alpha_eq(ty.A, base.A):
                return "premise 2: expected the type of premise 1 to be a type in its context"
        eqs = premises[head + (2 * n if modified else 0):]
        a = [e.t for e in eqs]
        b = [e.s for e in eqs]
        for i, e in enumerate(eqs):
            slot = head + (2 * n if modified else 0) + i + 1
            if e.kind != "term_eq" or S.ctx_alpha_key(e.context) != S.ctx_alpha_key(gamma):
                return f"premise {slot}: expected a term equality in the conclusion's context"
            Ai = S.substitute_many(types[i], dict(zip(xs[:i], a[:i])))
            if not S.alpha_eq(e.A, Ai):
                return f"premise {slot}: type should be {S.show(Ai)}"
        if modified:
            for side, vals, offset in (("a", a, head), ("b", b, head + n)):
                for i in range(n):
                    j = premises[offset + i]
                    Ai = S.substitute_many(types[i], dict(zip(xs[:i], vals[:i])))
                    if j.kind != "term" or S.ctx_alpha_key(j.context) != S.ctx_alpha_key(gamma) \
                            or not S.alpha_eq(j.t, vals[i]) or not S.alpha_eq(j.A, Ai):
                        return f"premise {offset + i + 1}: expected {S.show(vals[i])} in {S.show(Ai)}"
        sa, sb = dict(zip(xs, a)), dict(zip(xs, b))
        if kind == "type":
            if conclusion.kind != "type_eq" or conclusion.stratum != base.stratum:
                return f"conclusion must be a type equality in stratum {base.stratum}"
            if not S.alpha_eq(conclusion.A, S.substitute_many(base.A, sa)):
                return "conclusion: left type is not the premise's type at a"
            if not S.alpha_eq(conclusion.B, S.substitute_many(base.A, sb)):
                return "conclusion: right type is not the premise's type at b"
            return None
        if conclusion.kind != "term_eq":
            return "conclusion must be a term equality"
        if not S.alpha_eq(conclusion.t, S.substitute_many(base.t, sa)):
            return "conclusion: left term is not the premise's term at a"
        if not S.alpha_eq(conclusion.s, S.substitute_many(base.t, sb)):
            return "conclusion: right term is not the premise's term at b"
        if not S.alpha_eq(conclusion.A, S.substitute_many(base.A, sa)):
            return "conclusion: type is not the premise's type at a"
        return None

    return check


_SPECIAL = [
    ("emp-c", "∅ cont", "context", "|- cont", _check_empty_context),
    ("F-c", "F-c", "context", "A type [Γ]  ==>  Γ, x : A cont   (x not in Γ)", _check_fc),
    ("var", "var", "context", "Γ, x : A, Δ cont  ==>  x in A [Γ, x : A, Δ]", _check_var),
    ("subT", "subT", "equality",
     "C type [x1 : A1 .. xn : An]  a1 = b1 in A1 .. an = bn in An(a1..)  ==>  "
     "C(a) = C(b) type", _subst_rule("type", False)),
    ("sub", "sub", "equality",
     "c in C [x1 : A1 .. xn : An]  a1 = b1 in A1 ..  ==>  c(a) = c(b) in C(a)",
     _subst_rule("term", False)),
    ("subT_m", "subT_m", "equality",
     "C type [x1 : A1 ..]  a1 in A1 ..  b1 in A1 ..  a1 = b1 in A1 ..  ==>  C(a) = C(b) type",
     _subst_rule("type", True)),
    ("sub_m", "sub_m", "equality",
     "c in C [x1 : A1 ..]  C type [x1 : A1 ..]  a1 in A1 ..  b1 in A1 ..  a1 = b1 in A1 ..  "
     "==>  c(a) = c(b) in C(a)", _subst_rule("term", True)),
]


def _build_table() -> dict:
    table = {}
    for entry in _SCHEMAS:
        name, display, premises, conclusion, group, *note = entry
        table[name] = _rule(name, display, premises, conclusion, group, *note)
    for name, display, group, text, check in _SPECIAL:
        table[name] = Rule(name, display, (), None, group, text, check)
    return table


RULES = _build_table()
_ALIASES = {r.display: r.name for r in RULES.values()}


def rule_table() -> list:
    """Every rule, in a fixed order."""
    return list(RULES.values())


def find_rule(name: str) -> Rule | None:
    """Look a rule up by its name or by its display name (`Pr₅`, `Se_Π`)."""
    return RULES.get(name) or RULES.get(_ALIASES.get(name, ""))


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: S.Judgement
    premises: tuple = ()

    def __str__(self) -> str:
        return show_derivation(self)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def nodes(self, path: tuple = ()):
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i + 1,))


@dataclass(frozen=True)
class DerivationCheck:
    ok: bool
    path: tuple = ()
    rule: str = ""
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def where(self) -> str:
        return "root" + "".join(f".{i}" for i in self.path)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"error at {self.where()} ({self.rule}): {self.message}"

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out.update(path=self.where(), rule=self.rule, message=self.message)
        return out


def check_rule(rule: Rule, premises: list, conclusion: S.Judgement) -> str | None:
    """None when `conclusion` follows from `premises` by `rule`, else what is wrong."""
    if rule.check is not None:
        return rule.check(premises, conclusion)
    if len(premises) != len(rule.premises):
        return f"expects {len(rule.premises)} premises, got {len(premises)}"
    m = Matcher()
    gamma = conclusion.context
    pending = [(f"premise {i + 1}", p, a) for i, (p, a) in enumerate(zip(rule.premises, premises))]
    pending.append(("conclusion", rule.conclusion, conclusion))
    while pending:
        later = []
        for slot, pat, act in pending:
            try:
                err = m.judgement(pat, act, gamma)
            except _Defer:
                later.append((slot, pat, act))
                continue
            if err is not None:
                return f"{slot}: {err}"
        if len(later) == len(pending):
            return "the premises do not determine the schema's metavariables"
        pending = later
    return None


def check_derivation(d: Derivation) -> DerivationCheck:
    """ok, or the first node (depth first, premises before their conclusion) that fails."""
    for path, node in _postorder(d):
        rule = find_rule(node.rule)
        if rule is None:
            return DerivationCheck(False, path, node.rule, "no such rule")
        err = check_rule(rule, [p.conclusion for p in node.premises], node.conclusion)
        if err is not None:
            return DerivationCheck(False, path, rule.name, err)
    return DerivationCheck(True)


def _postorder(d: Derivation, path: tuple = ()):
    for i, p in enumerate(d.premises):
        yield from _postorder(p, path + (i + 1,))
    yield path, d


# building ------------------------------------------------------------------


class RuleError(ValueError):
    pass


def infer(rule_name: str, *premises: Derivation, context=None, **given) -> Derivation:
    """Apply a schema forwards: the conclusion is computed from the premises.

    Metavariables that the premises leave open (the A of I-Id, say) are
    passed as keyword arguments in surface syntax; `context` is the implicit
    context when there are no premises to take it from.
    """
    rule = find_rule(rule_name)
    if rule is None:
        raise RuleError(f"no rule {rule_name}")
    if rule.check is not None:
        raise RuleError(f"{rule_name} is not a schema; use the dedicated builder")
    if len(premises) != len(rule.premises):
        raise RuleError(f"{rule_name} expects {len(rule.premises)} premises")
    m = Matcher({k: ((), _parse_given(k, v)) for k, v in given.items() if not k.startswith("_")})
    if "_stratum" in given:
        m.meta["$type"] = given["_stratum"]
    if context is not None:
        gamma = tuple(context) if not isinstance(context, str) else S.parse_context(context)
    elif premises:
        first = premises[0].conclusion
        gamma = first.context[:len(first.context) - len(rule.premises[0].ext)]
    else:
        gamma = ()
    pending = list(zip(rule.premises, (p.conclusion for p in premises)))
    for i, (pat, act) in enumerate(pending):
        if pat.ext:
            for (pname, _), (aname, _) in zip(pat.ext, act.context[len(gamma):]):
                m.meta.setdefault("@" + pname, aname)
    while pending:
        later = []
        for pat, act in pending:
            try:
                err = m.judgement(pat, act, gamma)
            except _Defer:
                later.append((pat, act))
                continue
            if err is not None:
                raise RuleError(f"{rule_name}: {err}")
        if len(later) == len(pending):
            raise RuleError(f"{rule_name}: premises do not determine the metavariables")
        pending = later
    try:
        conclusion = m.instantiate(rule.conclusion, gamma)
    except _Defer as e:
        raise RuleError(f"{rule_name}: metavariable {e} must be given") from None
    return Derivation(rule.name, conclusion, tuple(premises))


def _parse_given(name: str, value):
    if not isinstance(value, str):
        return value
    return S.parse_type(value) if name[:1].isupper() else S.parse_term(value)


def empty_context() -> Derivation:
    return Derivation("emp-c", S.cont(()))


def extend(type_derivation: Derivation, name: str) -> Derivation:
    j = type_derivation.conclusion
    return Derivation("F-c", S.cont(j.context + ((name, j.A),)), (type_derivation,))


def variable(cont_derivation: Derivation, name: str) -> Derivation:
    ctx = cont_derivation.conclusion.context
    declared = [A for y, A in ctx if y == name]
    if not declared:
        raise RuleError(f"{name} is not declared")
    return Derivation("var", S.term_of(S.Var(name), declared[-1], ctx), (cont_derivation,))


def substitution(rule_name: str, base: Derivation, *rest: Derivation) -> Derivation:
    """subT / sub / subT_m / sub_m; the equalities are the last premises."""
    modified = rule_name.endswith("_m")
    kind = "type" if rule_name.startswith("subT") else "term"
    head = 2 if (kind == "term" and modified) else 1
    eqs = (base, *rest)[head + (2 * ((len(rest) + 1 - head) // 3) if modified else 0):]
    n = len(eqs)
    j = base.conclusion
    gamma = j.context[:len(j.context) - n]
    xs = [x for x, _ in j.context[len(gamma):]]
    sa = dict(zip(xs, (e.conclusion.t for e in eqs)))
    sb = dict(zip(xs, (e.conclusion.s for e in eqs)))
    if kind == "type":
        concl = S.type_eq(S.substitute_many(j.A, sa), S.substitute_many(j.A, sb), j.stratum, gamma)
    else:
        concl = S.term_eq(S.substitute_many(j.t, sa), S.substitute_many(j.t, sb),
                          S.substitute_many(j.A, sa), gamma)
    d = Derivation(rule_name, concl, (base, *rest))
    err = check_rule(RULES[rule_name], [p.conclusion for p in d.premises], concl)
    if err is not None:
        raise RuleError(f"{rule_name}: {err}")
    return d


# ---------------------------------------------------------------------------
# Text format

_SEXP_TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"([^"]*)"|([^\s()";]+))')


class DerivationSyntaxError(ValueError):
    pass


def _sexp_tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                return
            raise DerivationSyntaxError(f"unexpected character at offset {pos}")
        pos = m.end()
        comment, lp, rp, quoted, atom = m.groups()
        if comment is not None:
            yield ("comment", comment, m.start(1))
        elif lp:
            yield ("(", lp, m.start(2))
        elif rp:
            yield (")", rp, m.start(3))
        elif quoted is not None:
            yield ("str", quoted, m.start(4))
        elif atom is not None:
            yield ("atom", atom, m.start(5))


@dataclass
class AnnotatedDerivation:
    derivation: Derivation
    annotations: list


def parse_derivations(text: str) -> list:
    """All top-level derivations of a file, with the `;;` comments before each."""
    tokens = list(_sexp_tokens(text))
    out = []
    notes: list = []
    i = 0

    def node(i):
        if tokens[i][0] != "(":
            raise DerivationSyntaxError(f"expected '(' at offset {tokens[i][2]}")
        i += 1
        while tokens[i][0] == "comment":
            i += 1
        kind, rule, pos = tokens[i]
        if kind != "atom":
            raise DerivationSyntaxError(f"expected a rule name at offset {pos}")
        i += 1
        while tokens[i][0] == "comment":
            i += 1
        kind, text_, pos = tokens[i]
        if kind != "str":
            raise DerivationSyntaxError(f"expected a quoted judgement at offset {pos}")
        try:
            j = S.parse_judgement(text_)
        except S.ParseError as e:
            raise DerivationSyntaxError(f"bad judgement at offset {pos}: {e}") from None
        i += 1
        premises = []
        while True:
            if i >= len(tokens):
                raise DerivationSyntaxError("unbalanced parentheses")
            kind = tokens[i][0]
            if kind == "comment":
                i += 1
            elif kind == ")":
                return Derivation(rule, j, tuple(premises)), i + 1
            else:
                p, i = node(i)
                premises.append(p)

    try:
        while i < len(tokens):
            kind, value, _ = tokens[i]
            if kind == "comment":
                if value.startswith(";;"):
                    notes.append(value[2:].strip())
                i += 1
                continue
            d, i = node(i)
            out.append(AnnotatedDerivation(d, notes))
            notes = []
    except IndexError:
        raise DerivationSyntaxError("unexpected end of input") from None
    return out


def parse_derivation(text: str) -> Derivation:
    items = parse_derivations(text)
    if len(items) != 1:
        raise DerivationSyntaxError(f"expected one derivation, found {len(items)}")
    return items[0].derivation


def show_derivation(d: Derivation, indent: int = 0) -> str:
    pad = "  " * indent
    head = f'{pad}({d.rule} "{S.show_judgement(d.conclusion)}"'
    if not d.premises:
        return head + ")"
    body = "\n".join(show_derivation(p, indent + 1) for p in d.premises)
    return f"{head}\n{body})"

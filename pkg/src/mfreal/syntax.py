"""Abstract syntax of the extended intensional level, with parser and printer.

Terms, types and judgements are frozen dataclasses.  Every node knows which
of its name fields bind which sub-expression (`_binds`), so free variables,
capture-avoiding substitution and alpha-equivalence are written once.

Concrete grammar (ASCII):

    judgement  ::= [ctx] '|-' body
    ctx        ::= x ':' type (',' x ':' type)*
    body       ::= 'cont' | type STRATUM | type '=' type STRATUM
                 | term 'in' type | term '=' term 'in' type
    STRATUM    ::= 'set' | 'col' | 'prop' | 'props'

    type  ::= Pi x : type. type | Sigma ... | Exists ... | Forall ...
            | type -> type | type -> props | type '|' type | type & type
            | type + type | N0 | N1 | N | Bot | Set | props
            | tau(term) | List(type) | Id(type, term, term) | (type)

Terms use function-call syntax (`ap(f, a)`, `elN(n, b, (y, z) r)`, ...),
`lam x. t` style binders, numerals as sugar for `succ(...(0))`, and `#n` for
a literal natural (a value from the model, used when closing terms).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from typing import ClassVar, Iterable

STRATA = ("props", "set", "prop", "col")


class Node:
    _binds: ClassVar[dict] = {}

    def __str__(self) -> str:
        return show(self)


class Term(Node):
    pass


class TypeExpr(Node):
    pass


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Num(Term):
    """A natural number of the model, quoted as a term."""

    value: object


@dataclass(frozen=True)
class Emp0(Term):
    t: Term


@dataclass(frozen=True)
class Star(Term):
    pass


@dataclass(frozen=True)
class ElN1(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    t: Term


@dataclass(frozen=True)
class ElN(Term):
    t: Term
    t2: Term
    y: str
    z: str
    r: Term
    _binds: ClassVar[dict] = {"r": ("y", "z")}


@dataclass(frozen=True)
class Lam(Term):
    y: str
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class Ap(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class Pair(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ElSigma(Term):
    t: Term
    y: str
    z: str
    r: Term
    _binds: ClassVar[dict] = {"r": ("y", "z")}


@dataclass(frozen=True)
class Inl(Term):
    t: Term


@dataclass(frozen=True)
class Inr(Term):
    t: Term


@dataclass(frozen=True)
class ElPlus(Term):
    t: Term
    y: str
    s: Term
    y2: str
    s2: Term
    _binds: ClassVar[dict] = {"s": ("y",), "s2": ("y2",)}


@dataclass(frozen=True)
class Eps(Term):
    pass


@dataclass(frozen=True)
class Cons(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ElList(Term):
    t: Term
    t2: Term
    y: str
    z: str
    u: str
    q: Term
    _binds: ClassVar[dict] = {"q": ("y", "z", "u")}


@dataclass(frozen=True)
class R0(Term):
    t: Term


@dataclass(frozen=True)
class AndPair(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class Pi1(Term):
    t: Term


@dataclass(frozen=True)
class Pi2(Term):
    t: Term


@dataclass(frozen=True)
class InlOr(Term):
    t: Term


@dataclass(frozen=True)
class InrOr(Term):
    t: Term


@dataclass(frozen=True)
class ElOr(Term):
    t: Term
    y: str
    s: Term
    y2: str
    s2: Term
    _binds: ClassVar[dict] = {"s": ("y",), "s2": ("y2",)}


@dataclass(frozen=True)
class LamImp(Term):
    y: str
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class ApImp(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ExPair(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ElEx(Term):
    t: Term
    y: str
    z: str
    r: Term
    _binds: ClassVar[dict] = {"r": ("y", "z")}


@dataclass(frozen=True)
class LamAll(Term):
    y: str
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class ApAll(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class IdIntro(Term):
    t: Term


@dataclass(frozen=True)
class ElId(Term):
    t: Term
    t2: Term
    t3: Term
    y: str
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


# code constructors


@dataclass(frozen=True)
class N0Hat(Term):
    pass


@dataclass(frozen=True)
class N1Hat(Term):
    pass


@dataclass(frozen=True)
class NHat(Term):
    pass


@dataclass(frozen=True)
class PiHat(Term):
    y: str
    A: TypeExpr
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class SigmaHat(Term):
    y: str
    A: TypeExpr
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class PlusHat(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ListHat(Term):
    t: Term


@dataclass(frozen=True)
class BotHat(Term):
    pass


@dataclass(frozen=True)
class AndHat(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class OrHat(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ImpHat(Term):
    t: Term
    t2: Term


@dataclass(frozen=True)
class ExistsHat(Term):
    y: str
    A: TypeExpr
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class ForallHat(Term):
    y: str
    A: TypeExpr
    s: Term
    _binds: ClassVar[dict] = {"s": ("y",)}


@dataclass(frozen=True)
class IdHat(Term):
    A: TypeExpr
    t: Term
    t2: Term


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class Bot(TypeExpr):
    pass


@dataclass(frozen=True)
class Tau(TypeExpr):
    t: Term


@dataclass(frozen=True)
class And(TypeExpr):
    A: TypeExpr
    B: TypeExpr


@dataclass(frozen=True)
class Or(TypeExpr):
    A: TypeExpr
    B: TypeExpr


@dataclass(frozen=True)
class Imp(TypeExpr):
    A: TypeExpr
    B: TypeExpr


@dataclass(frozen=True)
class Exists(TypeExpr):
    y: str
    A: TypeExpr
    B: TypeExpr
    _binds: ClassVar[dict] = {"B": ("y",)}


@dataclass(frozen=True)
class Forall(TypeExpr):
    y: str
    A: TypeExpr
    B: TypeExpr
    _binds: ClassVar[dict] = {"B": ("y",)}


@dataclass(frozen=True)
class Id(TypeExpr):
    A: TypeExpr
    t: Term
    t2: Term


@dataclass(frozen=True)
class N0(TypeExpr):
    pass


@dataclass(frozen=True)
class N1(TypeExpr):
    pass


@dataclass(frozen=True)
class Nat(TypeExpr):
    pass


@dataclass(frozen=True)
class Pi(TypeExpr):
    y: str
    A: TypeExpr
    B: TypeExpr
    _binds: ClassVar[dict] = {"B": ("y",)}


@dataclass(frozen=True)
class Sigma(TypeExpr):
    """Strong sum; over collections it is the collection Sigma."""

    y: str
    A: TypeExpr
    B: TypeExpr
    _binds: ClassVar[dict] = {"B": ("y",)}


@dataclass(frozen=True)
class Plus(TypeExpr):
    A: TypeExpr
    B: TypeExpr


@dataclass(frozen=True)
class ListT(TypeExpr):
    A: TypeExpr


@dataclass(frozen=True)
class SetU(TypeExpr):
    pass


@dataclass(frozen=True)
class PropS(TypeExpr):
    pass


@dataclass(frozen=True)
class FunPropS(TypeExpr):
    """A -> prop_s."""

    A: TypeExpr


SigmaCol = Sigma

# ---------------------------------------------------------------------------
# Contexts and judgements

Context = tuple  # of (name, TypeExpr)


@dataclass(frozen=True)
class Judgement:
    """kind is one of 'cont', 'type', 'type_eq', 'term', 'term_eq'."""

    kind: str
    context: tuple = ()
    A: TypeExpr | None = None
    B: TypeExpr | None = None
    t: Term | None = None
    s: Term | None = None
    stratum: str | None = None

    @property
    def is_closed(self) -> bool:
        return not self.context

    def __str__(self) -> str:
        return show_judgement(self)


def cont(context) -> Judgement:
    return Judgement("cont", tuple(context))


def type_wf(A, stratum, context=()) -> Judgement:
    return Judgement("type", tuple(context), A=A, stratum=stratum)


def type_eq(A, B, stratum, context=()) -> Judgement:
    return Judgement("type_eq", tuple(context), A=A, B=B, stratum=stratum)


def term_of(t, A, context=()) -> Judgement:
    return Judgement("term", tuple(context), A=A, t=t)


def term_eq(t, s, A, context=()) -> Judgement:
    return Judgement("term_eq", tuple(context), A=A, t=t, s=s)


# ---------------------------------------------------------------------------
# Generic traversal


def _parts(node: Node):
    """(field name, sub-node, bound names) for every sub-expression."""
    binds = node._binds
    for f in fields(node):
        v = getattr(node, f.name)
        if isinstance(v, Node):
            yield f.name, v, tuple(getattr(node, n) for n in binds.get(f.name, ()))


def free_vars(node: Node) -> frozenset:
    if isinstance(node, Var):
        return frozenset((node.name,))
    out: set = set()
    for _, sub, bound in _parts(node):
        out |= free_vars(sub) - set(bound)
    return frozenset(out)


def judgement_free_vars(j: Judgement) -> frozenset:
    out: set = set()
    for part in (j.A, j.B, j.t, j.s):
        if part is not None:
            out |= free_vars(part)
    return frozenset(out)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    stem = base.rstrip("'0123456789") or "v"
    if base not in avoid:
        return base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def substitute(node: Node, x: str, t: Term) -> Node:
    """node[t/x], renaming bound variables to avoid capture."""
    return substitute_many(node, {x: t})


def substitute_many(node: Node, sub: dict) -> Node:
    if not sub:
        return node
    if isinstance(node, Var):
        return sub.get(node.name, node)
    changes = {}
    for fname, child, bound in _parts(node):
        inner = {k: v for k, v in sub.items() if k not in bound}
        if not inner:
            continue
        if bound:
            incoming = set()
            for v in inner.values():
                incoming |= free_vars(v)
            clash = [b for b in bound if b in incoming and _occurs_free_any(child, inner)]
            if clash:
                avoid = set(incoming) | free_vars(child) | set(inner) | set(bound)
                renames = {}
                for b in clash:
                    nb = fresh_name(b, avoid)
                    avoid.add(nb)
                    renames[b] = nb
                child = substitute_many(child, {b: Var(nb) for b, nb in renames.items()})
                binds = node._binds[fname]
                for name_field in binds:
                    old = getattr(node, name_field)
                    if old in renames:
                        changes[name_field] = renames[old]
        changes[fname] = substitute_many(child, inner)
    return replace(node, **changes) if changes else node


def _occurs_free_any(node: Node, sub: dict) -> bool:
    fv = free_vars(node)
    return any(k in fv for k in sub)


def alpha_key(node: Node, env: tuple = ()):
    """A name-free key: alpha-equivalent nodes have equal keys."""
    if isinstance(node, Var):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == node.name:
                return ("#", len(env) - 1 - i)
        return ("v", node.name)
    items: list = [type(node).__name__]
    binds = node._binds
    for f in fields(node):
        v = getattr(node, f.name)
        if isinstance(v, Node):
            names = tuple(getattr(node, n) for n in binds.get(f.name, ()))
            items.append(alpha_key(v, env + names))
        elif f.name not in {n for ns in binds.values() for n in ns}:
            items.append(v if isinstance(v, (int, str)) else ("sym", id(v)))
    return tuple(items)


def alpha_eq(a: Node | None, b: Node | None) -> bool:
    if a is None or b is None:
        return a is b
    return alpha_key(a) == alpha_key(b)


def ctx_alpha_key(context) -> tuple:
    """Key for a context; variable names matter (they are referenced)."""
    return tuple((x, alpha_key(A)) for x, A in context)


def judgement_alpha_eq(j1: Judgement, j2: Judgement) -> bool:
    if j1.kind != j2.kind or j1.stratum != j2.stratum:
        return False
    if ctx_alpha_key(j1.context) != ctx_alpha_key(j2.context):
        return False
    return all(alpha_eq(getattr(j1, f), getattr(j2, f)) for f in ("A", "B", "t", "s"))


# ---------------------------------------------------------------------------
# Strata and codes of sets

_ORDER = {"props": {"props", "set", "prop", "col"}, "set": {"set", "col"},
          "prop": {"prop", "col"}, "col": {"col"}}


def fits(least: str | None, stratum: str) -> bool:
    return least is not None and stratum in _ORDER[least]


def stratum_of(A: TypeExpr) -> str | None:
    """The least stratum of A, or None when A is not well-stratified."""
    if isinstance(A, (Bot, Tau)):
        return "props"
    if isinstance(A, Id):
        s = stratum_of(A.A)
        if s is None:
            return None
        return "props" if fits(s, "set") else "prop"
    if isinstance(A, (And, Or, Imp)):
        a, b = stratum_of(A.A), stratum_of(A.B)
        if a == "props" and b == "props":
            return "props"
        if fits(a, "prop") and fits(b, "prop"):
            return "prop"
        return None
    if isinstance(A, (Exists, Forall)):
        d, b = stratum_of(A.A), stratum_of(A.B)
        if d is None:
            return None
        if fits(d, "set") and b == "props":
            return "props"
        if fits(b, "prop"):
            return "prop"
        return None
    if isinstance(A, (N0, N1, Nat)):
        return "set"
    if isinstance(A, Pi):
        if fits(stratum_of(A.A), "set") and fits(stratum_of(A.B), "set"):
            return "set"
        return None
    if isinstance(A, Sigma):
        a, b = stratum_of(A.A), stratum_of(A.B)
        if fits(a, "set") and fits(b, "set"):
            return "set"
        if a is not None and b is not None:
            return "col"
        return None
    if isinstance(A, (Plus,)):
        if fits(stratum_of(A.A), "set") and fits(stratum_of(A.B), "set"):
            return "set"
        return None
    if isinstance(A, ListT):
        return "set" if fits(stratum_of(A.A), "set") else None
    if isinstance(A, (SetU, PropS)):
        return "col"
    if isinstance(A, FunPropS):
        return "col" if fits(stratum_of(A.A), "set") else None
    return None


def hat(A: TypeExpr) -> Term:
    """The code term of a set (small propositions included)."""
    if isinstance(A, N0):
        return N0Hat()
    if isinstance(A, N1):
        return N1Hat()
    if isinstance(A, Nat):
        return NHat()
    if isinstance(A, Bot):
        return BotHat()
    if isinstance(A, Tau):
        return A.t
    if isinstance(A, Pi):
        return PiHat(A.y, A.A, hat(A.B))
    if isinstance(A, Sigma):
        return SigmaHat(A.y, A.A, hat(A.B))
    if isinstance(A, Plus):
        return PlusHat(hat(A.A), hat(A.B))
    if isinstance(A, ListT):
        return ListHat(hat(A.A))
    if isinstance(A, And):
        return AndHat(hat(A.A), hat(A.B))
    if isinstance(A, Or):
        return OrHat(hat(A.A), hat(A.B))
    if isinstance(A, Imp):
        return ImpHat(hat(A.A), hat(A.B))
    if isinstance(A, Exists):
        return ExistsHat(A.y, A.A, hat(A.B))
    if isinstance(A, Forall):
        return ForallHat(A.y, A.A, hat(A.B))
    if isinstance(A, Id):
        return IdHat(A.A, A.t, A.t2)
    raise ValueError(f"{show(A)} has no code: not a set")


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> int | None:
    n = 0
    while isinstance(t, Succ):
        t = t.t
        n += 1
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------------------
# Printing

_UNARY = {Emp0: "emp0", Succ: "succ", Inl: "inl", Inr: "inr", R0: "r0", Pi1: "pi1",
          Pi2: "pi2", InlOr: "inlor", InrOr: "inror", IdIntro: "id", ListHat: "Listhat"}
_BINARY = {ElN1: "elN1", Ap: "ap", Pair: "pair", Cons: "cons", AndPair: "andpair",
           ApImp: "apimp", ExPair: "expair", ApAll: "apall", PlusHat: "Plushat",
           AndHat: "Andhat", OrHat: "Orhat", ImpHat: "Imphat"}
_CONST = {Star: "star", Zero: "0", Eps: "eps", N0Hat: "N0hat", N1Hat: "N1hat",
          NHat: "Nhat", BotHat: "Bothat"}
_LAMS = {Lam: "lam", LamImp: "lamimp", LamAll: "lamall"}
_HATBINDERS = {PiHat: "Pihat", SigmaHat: "Sigmahat", ExistsHat: "Existshat",
               ForallHat: "Forallhat"}
_TYPE_CONST = {Bot: "Bot", N0: "N0", N1: "N1", Nat: "N", SetU: "Set", PropS: "props"}
_TYPE_BINDERS = {Pi: "Pi", Sigma: "Sigma", Exists: "Exists", Forall: "Forall"}
_INFIX = {Imp: ("->", 1), Or: ("|", 2), And: ("&", 3), Plus: ("+", 4)}


def show(node: Node) -> str:
    if isinstance(node, TypeExpr):
        return _show_type(node, 0)
    return _show_term(node)


def _show_term(t: Term) -> str:
    k = type(t)
    if k is Var:
        return t.name
    if k is Num:
        return f"#{t.value}" if isinstance(t.value, int) else "#?"
    if k in _CONST:
        return _CONST[k]
    if k is Succ:
        n = numeral_value(t)
        if n is not None:
            return str(n)
    if k in _UNARY:
        return f"{_UNARY[k]}({_show_term(t.t)})"
    if k in _BINARY:
        return f"{_BINARY[k]}({_show_term(t.t)}, {_show_term(t.t2)})"
    if k in _LAMS:
        return f"{_LAMS[k]} {t.y}. {_show_term(t.s)}"
    if k is ElN:
        return f"elN({_show_term(t.t)}, {_show_term(t.t2)}, ({t.y}, {t.z}) {_show_term(t.r)})"
    if k is ElSigma or k is ElEx:
        name = "elSigma" if k is ElSigma else "elEx"
        return f"{name}({_show_term(t.t)}, ({t.y}, {t.z}) {_show_term(t.r)})"
    if k is ElPlus or k is ElOr:
        name = "elPlus" if k is ElPlus else "elOr"
        return (f"{name}({_show_term(t.t)}, ({t.y}) {_show_term(t.s)}, "
                f"({t.y2}) {_show_term(t.s2)})")
    if k is ElList:
        return (f"elList({_show_term(t.t)}, {_show_term(t.t2)}, "
                f"({t.y}, {t.z}, {t.u}) {_show_term(t.q)})")
    if k is ElId:
        return (f"elId({_show_term(t.t)}, {_show_term(t.t2)}, {_show_term(t.t3)}, "
                f"({t.y}) {_show_term(t.s)})")
    if k in _HATBINDERS:
        return f"{_HATBINDERS[k]}({t.y} : {_show_type(t.A, 0)}, {_show_term(t.s)})"
    if k is IdHat:
        return f"Idhat({_show_type(t.A, 0)}, {_show_term(t.t)}, {_show_term(t.t2)})"
    raise TypeError(f"not a term: {t!r}")


def _show_type(A: TypeExpr, prec: int) -> str:
    k = type(A)
    if k in _TYPE_CONST:
        return _TYPE_CONST[k]
    if k is Tau:
        return f"tau({_show_term(A.t)})"
    if k is ListT:
        return f"List({_show_type(A.A, 0)})"
    if k is Id:
        return f"Id({_show_type(A.A, 0)}, {_show_term(A.t)}, {_show_term(A.t2)})"
    if k is FunPropS:
        out = f"{_show_type(A.A, 2)} -> props"
        return f"({out})" if prec > 1 else out
    if k in _TYPE_BINDERS:
        out = f"{_TYPE_BINDERS[k]} {A.y} : {_show_type(A.A, 0)}. {_show_type(A.B, 0)}"
        return f"({out})" if prec > 0 else out
    if k in _INFIX:
        op, p = _INFIX[k]
        if k is Imp:
            out = f"{_show_type(A.A, p + 1)} {op} {_show_type(A.B, p)}"
        else:
            out = f"{_show_type(A.A, p)} {op} {_show_type(A.B, p + 1)}"
        return f"({out})" if prec > p else out
    raise TypeError(f"not a type: {A!r}")


def show_context(context) -> str:
    return ", ".join(f"{x} : {_show_type(A, 0)}" for x, A in context)


def show_judgement(j: Judgement) -> str:
    ctx = show_context(j.context)
    head = f"{ctx} |- " if ctx else "|- "
    if j.kind == "cont":
        return head + "cont"
    if j.kind == "type":
        return head + f"{_show_type(j.A, 0)} {j.stratum}"
    if j.kind == "type_eq":
        return head + f"{_show_type(j.A, 0)} = {_show_type(j.B, 0)} {j.stratum}"
    if j.kind == "term":
        return head + f"{_show_term(j.t)} in {_show_type(j.A, 0)}"
    if j.kind == "term_eq":
        return head + f"{_show_term(j.t)} = {_show_term(j.s)} in {_show_type(j.A, 0)}"
    raise ValueError(j.kind)


def pretty_print(x) -> str:
    if isinstance(x, Judgement):
        return show_judgement(x)
    return show(x)


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\|-|->|#\d+|\d+|[A-Za-z_][A-Za-z0-9_']*|[():,.=&|+\[\]])|(\S))")

_TERM_UNARY = {v: k for k, v in _UNARY.items()}
_TERM_BINARY = {v: k for k, v in _BINARY.items()}
_TERM_CONST = {v: k for k, v in _CONST.items() if v != "0"}
_TERM_LAMS = {v: k for k, v in _LAMS.items()}
_TERM_HATB = {v: k for k, v in _HATBINDERS.items()}
_TYPE_KW = {v: k for k, v in _TYPE_CONST.items()}
_TYPE_BIND_KW = {v: k for k, v in _TYPE_BINDERS.items()}
KEYWORDS = (set(_TERM_UNARY) | set(_TERM_BINARY) | set(_TERM_CONST) | set(_TERM_LAMS)
            | set(_TERM_HATB) | set(_TYPE_KW) | set(_TYPE_BIND_KW)
            | {"elN", "elSigma", "elEx", "elPlus", "elOr", "elList", "elId", "Idhat",
               "tau", "List", "Id", "in", "cont", "set", "col", "prop"})


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or (m.group(1) is None and m.group(2) is None):
            if text[pos:].strip() == "":
                break
            raise ParseError("bad character", pos, text)
        if m.group(2) is not None:
            raise ParseError(f"unexpected {m.group(2)!r}", m.start(2), text)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # helpers
    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j][0] if j < len(self.toks) else None

    def error(self, msg: str):
        pos = self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, pos, self.text)

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            self.error(f"expected {expected or 'more input'}")
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.take("identifier") if self.peek() is None else self.peek()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) or tok in KEYWORDS:
            self.error(f"expected a variable name, found {tok!r}")
        self.i += 1
        return tok

    def done(self):
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r}")

    # types
    def type_(self) -> TypeExpr:
        tok = self.peek()
        if tok in _TYPE_BIND_KW:
            self.take()
            y = self.ident()
            self.take(":")
            A = self.type_()
            self.take(".")
            B = self.type_()
            return _TYPE_BIND_KW[tok](y, A, B)
        left = self.or_()
        if self.peek() == "->":
            self.take()
            if self.peek() == "props" and self.peek(1) in (None, ")", ",", ".", "=", "set",
                                                          "col", "prop", "props", "]"):
                self.take()
                return FunPropS(left)
            return Imp(left, self.type_())
        return left

    def or_(self) -> TypeExpr:
        left = self.and_()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.and_())
        return left

    def and_(self) -> TypeExpr:
        left = self.plus()
        while self.peek() == "&":
            self.take()
            left = And(left, self.plus())
        return left

    def plus(self) -> TypeExpr:
        left = self.type_atom()
        while self.peek() == "+":
            self.take()
            left = Plus(left, self.type_atom())
        return left

    def type_atom(self) -> TypeExpr:
        tok = self.peek()
        if tok in _TYPE_KW:
            self.take()
            return _TYPE_KW[tok]()
        if tok in _TYPE_BIND_KW:
            return self.type_()
        if tok == "tau":
            self.take()
            self.take("(")
            t = self.term()
            self.take(")")
            return Tau(t)
        if tok == "List":
            self.take()
            self.take("(")
            A = self.type_()
            self.take(")")
            return ListT(A)
        if tok == "Id":
            self.take()
            self.take("(")
            A = self.type_()
            self.take(",")
            t = self.term()
            self.take(",")
            s = self.term()
            self.take(")")
            return Id(A, t, s)
        if tok == "(":
            self.take()
            A = self.type_()
            self.take(")")
            return A
        self.error(f"expected a type, found {tok!r}")

    # terms
    def term(self) -> Term:
        tok = self.peek()
        if tok in _TERM_LAMS:
            self.take()
            y = self.ident()
            self.take(".")
            return _TERM_LAMS[tok](y, self.term())
        return self.term_atom()

    def args(self, n: int) -> list:
        self.take("(")
        out = [self.term()]
        for _ in range(n - 1):
            self.take(",")
            out.append(self.term())
        self.take(")")
        return out

    def abstraction(self, arity: int):
        self.take("(")
        names = [self.ident()]
        for _ in range(arity - 1):
            self.take(",")
            names.append(self.ident())
        self.take(")")
        return names, self.term()

    def term_atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            self.error("expected a term")
        if tok.isdigit():
            self.take()
            return numeral(int(tok))
        if tok.startswith("#"):
            self.take()
            return Num(int(tok[1:]))
        if tok in _TERM_CONST:
            self.take()
            return _TERM_CONST[tok]()
        if tok in _TERM_UNARY:
            self.take()
            return _TERM_UNARY[tok](*self.args(1))
        if tok in _TERM_BINARY:
            self.take()
            return _TERM_BINARY[tok](*self.args(2))
        if tok in ("elN", "elList"):
            self.take()
            self.take("(")
            t = self.term()
            self.take(",")
            t2 = self.term()
            self.take(",")
            names, body = self.abstraction(2 if tok == "elN" else 3)
            self.take(")")
            return ElN(t, t2, *names, body) if tok == "elN" else ElList(t, t2, *names, body)
        if tok in ("elSigma", "elEx"):
            self.take()
            self.take("(")
            t = self.term()
            self.take(",")
            names, body = self.abstraction(2)
            self.take(")")
            return (ElSigma if tok == "elSigma" else ElEx)(t, *names, body)
        if tok in ("elPlus", "elOr"):
            self.take()
            self.take("(")
            t = self.term()
            self.take(",")
            (y,), s = self.abstraction(1)
            self.take(",")
            (y2,), s2 = self.abstraction(1)
            self.take(")")
            return (ElPlus if tok == "elPlus" else ElOr)(t, y, s, y2, s2)
        if tok == "elId":
            self.take()
            self.take("(")
            t = self.term()
            self.take(",")
            t2 = self.term()
            self.take(",")
            t3 = self.term()
            self.take(",")
            (y,), s = self.abstraction(1)
            self.take(")")
            return ElId(t, t2, t3, y, s)
        if tok in _TERM_HATB:
            self.take()
            self.take("(")
            y = self.ident()
            self.take(":")
            A = self.type_()
            self.take(",")
            s = self.term()
            self.take(")")
            return _TERM_HATB[tok](y, A, s)
        if tok == "Idhat":
            self.take()
            self.take("(")
            A = self.type_()
            self.take(",")
            t = self.term()
            self.take(",")
            s = self.term()
            self.take(")")
            return IdHat(A, t, s)
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        return Var(self.ident())

    # judgements
    def context(self) -> tuple:
        ctx = []
        if self.peek() == "|-":
            return ()
        while True:
            x = self.ident()
            self.take(":")
            ctx.append((x, self.type_()))
            if self.peek() != ",":
                break
            self.take()
        return tuple(ctx)

    def judgement(self) -> Judgement:
        ctx = self.context()
        self.take("|-")
        if self.peek() == "cont" and self.peek(1) is None:
            self.take()
            return cont(ctx)
        start = self.i
        depth = 0
        has_in = False
        for tok, _ in self.toks[start:]:
            if tok in ("(", "["):
                depth += 1
            elif tok in (")", "]"):
                depth -= 1
            elif tok == "in" and depth == 0:
                has_in = True
        if has_in:
            t = self.term()
            if self.peek() == "=":
                self.take()
                s = self.term()
                self.take("in")
                A = self.type_()
                self.done()
                return term_eq(t, s, A, ctx)
            self.take("in")
            A = self.type_()
            self.done()
            return term_of(t, A, ctx)
        if not self.toks or self.toks[-1][0] not in STRATA:
            self.error("judgement must end with 'in TYPE' or a stratum")
        stratum = self.toks[-1][0]
        self.toks = self.toks[:-1]
        A = self.type_()
        if self.peek() == "=":
            self.take()
            B = self.type_()
            self.done()
            return type_eq(A, B, stratum, ctx)
        self.done()
        return type_wf(A, stratum, ctx)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_type(text: str) -> TypeExpr:
    p = _Parser(text)
    A = p.type_()
    p.done()
    return A


def parse_context(text: str) -> tuple:
    p = _Parser(text)
    if p.peek() is None:
        return ()
    ctx = p.context()
    p.done()
    return ctx


def parse_judgement(text: str) -> Judgement:
    p = _Parser(text)
    j = p.judgement()
    return j


def parse(text: str, kind: str = "judgement"):
    """Parse `text` as a 'term', 'type', 'context' or 'judgement'."""
    return {"term": parse_term, "type": parse_type, "context": parse_context,
            "judgement": parse_judgement}[kind](text)

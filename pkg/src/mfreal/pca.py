"""Kleene's first model: program codes, application, pairing and traces.

Naturals serve both as data and as codes of programs.  A program is a small
combinatory term (constants, de Bruijn variables, application, abstraction
and a handful of primitives); `apply(e, x)` runs the program coded by `e` on
`x` with a fuel bound on machine transitions.

Besides plain integers the machine also accepts *symbolic* naturals
(`Sym`, `SymOp`, and programs holding them).  A run over symbolic inputs
that finishes without ever needing to know their concrete value behaves the
same way on every instantiation, which is what the semantic checker uses to
settle quantifiers exactly.  Whenever the concrete value matters the machine
raises `NeedsConcrete`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

try:  # much faster arithmetic on the multi-megabit codes of long traces
    from gmpy2 import isqrt as _big_isqrt, mpz as _mpz
except ImportError:  # pragma: no cover
    _big_isqrt = _mpz = None

_BIG = 1 << 4096

# ---------------------------------------------------------------------------
# Pairing and finite lists


def pair(x: int, y: int) -> int:
    """Cantor pairing, a bijection N x N -> N."""
    s = x + y
    if _mpz is not None and s > _BIG:
        s = _mpz(s)
        return int(s * (s + 1) // 2 + y)
    return s * (s + 1) // 2 + y


_UNPAIRED: dict = {}


def unpair(n: int) -> tuple[int, int]:
    if n > _BIG:
        return _unpair_big(n)
    w = (isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


def _unpair_big(n: int) -> tuple[int, int]:
    # trace codes are taken apart repeatedly; remember the last few
    hit = _UNPAIRED.get(n)
    if hit is not None:
        return hit
    if _mpz is not None:
        m = _mpz(n)
        w = (_big_isqrt(8 * m + 1) - 1) // 2
        y = m - w * (w + 1) // 2
        hit = int(w - y), int(y)
    else:  # pragma: no cover
        w = (isqrt(8 * n + 1) - 1) // 2
        y = n - w * (w + 1) // 2
        hit = w - y, y
    if len(_UNPAIRED) >= 32:
        _UNPAIRED.pop(next(iter(_UNPAIRED)))
    _UNPAIRED[n] = hit
    return hit


def proj1(n: int) -> int:
    return unpair(n)[0]


def proj2(n: int) -> int:
    return unpair(n)[1]


EMPTY_LIST = 0


def cnc(k: int, x: int) -> int:
    """Append `x` to the list coded by `k`."""
    return pair(k, x) + 1


def uncnc(n: int) -> tuple[int, int]:
    return unpair(n - 1)


def lh(n: int) -> int:
    count = 0
    while n:
        n = uncnc(n)[0]
        count += 1
    return count


def component(n: int, j: int) -> int | None:
    """The j-th entry (from 0) of the list coded by `n`, or None."""
    items = list_decode(n)
    return items[j] if 0 <= j < len(items) else None


def list_empty() -> int:
    return EMPTY_LIST


def list_cnc(k: int, x: int) -> int:
    return cnc(k, x)


def list_lh(n: int) -> int:
    return lh(n)


def list_component(n: int, j: int) -> int:
    """Component j of list n; j must be below the length."""
    c = component(n, j)
    if c is None:
        raise IndexError(f"component {j} of a list of length {lh(n)}")
    return c


def list_encode(items: Iterable[int]) -> int:
    code = EMPTY_LIST
    for x in items:
        code = cnc(code, x)
    return code


def list_decode(n: int) -> list[int]:
    items = []
    while n:
        n, x = uncnc(n)
        items.append(x)
    items.reverse()
    return items


# ---------------------------------------------------------------------------
# Length-prefixed joining, used for program codes and trace sequences.
#
# Nested Cantor pairing doubles the bit length at every level, so codes of
# deep programs would be astronomically large.  `join` instead concatenates
# the bit strings of its arguments behind an Elias-gamma length header, which
# keeps codes linear in the size of what they encode.


def join(a: int, b: int) -> int:
    length = a.bit_length()
    g = length + 1
    k = g.bit_length() - 1
    header = ((g - (1 << k)) << (k + 1)) | ((1 << k) - 1)
    hbits = 2 * k + 1
    return header | (a << hbits) | (b << (hbits + length))


def split(n: int) -> tuple[int, int] | None:
    """Inverse of `join`; None when `n` is not a canonical join."""
    k = (n ^ (n + 1)).bit_length() - 1
    g = (1 << k) + ((n >> (k + 1)) & ((1 << k) - 1))
    length = g - 1
    hbits = 2 * k + 1
    a = (n >> hbits) & ((1 << length) - 1)
    if a.bit_length() != length:
        return None
    return a, n >> (hbits + length)


def _header(length: int) -> tuple[int, int]:
    g = length + 1
    k = g.bit_length() - 1
    return ((g - (1 << k)) << (k + 1)) | ((1 << k) - 1), 2 * k + 1


@lru_cache(maxsize=1 << 16)
def _piece(x: int) -> str:
    """The bits `join` puts in front of the rest, most significant first."""
    length = x.bit_length()
    header, width = _header(length)
    return (format(x, "b") if length else "") + format(header, f"0{width}b")


def seq_encode(items: Sequence[int]) -> int:
    """join(len, join(x1, join(x2, ... join(xn, 0)))), built in one pass."""
    pieces = [_piece(len(items))]
    pieces.extend(_piece(x) for x in items)
    return int("".join(reversed(pieces)), 2)


def seq_decode(n: int, limit: int | None = None) -> list[int] | None:
    """Inverse of `seq_encode`; None for codes that are not sequences."""
    bits = bin(n)[:1:-1]  # least significant bit first
    size = len(bits)

    def field(lo: int, hi: int) -> int:
        chunk = bits[lo:hi]
        return int(chunk[::-1], 2) if chunk else 0

    def read(off: int) -> tuple[int, int] | None:
        if off >= size:
            return 0, off
        zero = bits.find("0", off)
        k = (size if zero < 0 else zero) - off
        length = (1 << k) + field(off + k + 1, off + 2 * k + 1) - 1
        lo = off + 2 * k + 1
        if length and (lo + length > size or bits[lo + length - 1] != "1"):
            return None
        return field(lo, lo + length), lo + length

    head = read(0)
    if head is None:
        return None
    count, off = head
    if limit is not None and count > limit:
        return None
    items = []
    for _ in range(count):
        if off >= size:
            items.extend([0] * (count - len(items)))
            break
        part = read(off)
        if part is None:
            return None
        x, off = part
        items.append(x)
    if off < size:
        return None
    return items


# ---------------------------------------------------------------------------
# Symbolic naturals


class NeedsConcrete(Exception):
    """A computation needed the concrete value of a symbolic natural.

    `sym` is the symbol whose shape would settle the question and `kind` is
    one of 'nat' (zero or successor), 'pair', 'list' or 'eq' (equal to
    `other` or not).  When no single refinement helps, `sym` is None and
    `kind` is 'opaque'.
    """

    def __init__(self, sym: "Sym | None" = None, kind: str = "opaque", other=None):
        super().__init__(kind)
        self.sym = sym
        self.kind = kind
        self.other = other


_fresh = itertools.count()


class Sym:
    """An arbitrary natural number, compared by identity.

    `avoid` lists values the symbol is known to differ from.
    """

    __slots__ = ("ident", "avoid")

    def __init__(self, avoid: tuple = ()) -> None:
        self.ident = next(_fresh)
        self.avoid = avoid

    def __repr__(self) -> str:
        return f"?{self.ident}"


def _same(a, b) -> bool:
    if a is b:
        return True
    return not isinstance(a, Sym) and not isinstance(b, Sym) and a == b


def _avoids(sym: "Sym", v) -> bool:
    return any(_same(v, z) for z in sym.avoid)


@dataclass(frozen=True)
class SymOp:
    """A symbolic natural built by a total operation from other naturals."""

    op: str
    args: tuple

    def __repr__(self) -> str:
        return f"{self.op}({', '.join(map(repr, self.args))})"


def is_symbolic(v: object) -> bool:
    return not isinstance(v, int)


def symbols_of(v: object) -> set:
    if isinstance(v, Sym):
        return {v}
    if isinstance(v, SymOp):
        out: set = set()
        for a in v.args:
            out |= symbols_of(a)
        return out
    if isinstance(v, Program):
        return v.symbols()
    return set()


def shapes(target: Sym, kind: str, other=None) -> list | None:
    """Exhaustive list of shapes for `target`, or None if it cannot be split."""
    avoid = target.avoid
    if kind == "eq":
        out = [] if _avoids(target, other) else [other]
        return out + [Sym(avoid + (other,))]
    if avoid:
        if kind != "nat" or not all(isinstance(z, int) for z in avoid):
            return None
        out = [] if 0 in avoid else [0]
        return out + [SymOp("succ", (Sym(tuple(z - 1 for z in avoid if z > 0)),))]
    if kind == "nat":
        return [0, SymOp("succ", (Sym(),))]
    if kind == "pair":
        return [SymOp("pair", (Sym(), Sym()))]
    if kind == "list":
        return [0, SymOp("cnc", (Sym(), Sym()))]
    raise ValueError(kind)


def refine(v: object, target: Sym, kind: str, other=None) -> list | None:
    """`v` with `target` replaced by each of its shapes in turn."""
    options = shapes(target, kind, other)
    if options is None:
        return None
    return [substitute_sym(v, target, s) for s in options]


def substitute_sym(v, target: Sym, shape):
    if v is target:
        return shape
    if isinstance(v, SymOp):
        return _normalize(SymOp(v.op, tuple(substitute_sym(a, target, shape) for a in v.args)))
    if isinstance(v, Program) and not v.concrete:
        return v.map_consts(lambda c: substitute_sym(c, target, shape))
    return v


def _normalize(v: SymOp):
    """Fold a SymOp whose arguments became concrete or structured."""
    op, args = v.op, v.args
    if op == "succ":
        return n_succ(args[0])
    if op == "pair":
        return n_pair(*args)
    if op == "cnc":
        return n_cnc(*args)
    try:
        if op == "p1":
            return n_p1(args[0])
        if op == "p2":
            return n_p2(args[0])
        if op == "lh":
            return n_lh(args[0])
    except NeedsConcrete:
        return v
    return v


def n_succ(v):
    return v + 1 if isinstance(v, int) else SymOp("succ", (v,))


def n_pair(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return pair(a, b)
    return SymOp("pair", (a, b))


def n_cnc(k, x):
    if isinstance(k, int) and isinstance(x, int):
        return cnc(k, x)
    return SymOp("cnc", (k, x))


def _structure(v, kind: str):
    """Raise the right NeedsConcrete for an unknown-shaped value."""
    if isinstance(v, Sym):
        raise NeedsConcrete(v, kind)
    raise NeedsConcrete()


def n_p1(v):
    if isinstance(v, int):
        return proj1(v)
    if isinstance(v, SymOp) and v.op == "pair":
        return v.args[0]
    _structure(v, "pair")


def n_p2(v):
    if isinstance(v, int):
        return proj2(v)
    if isinstance(v, SymOp) and v.op == "pair":
        return v.args[1]
    _structure(v, "pair")


def n_is_zero(v) -> bool:
    if isinstance(v, int):
        return v == 0
    if isinstance(v, Sym) and 0 in v.avoid:
        return False
    if isinstance(v, Program):
        return False  # codes of abstractions and primitive spines are positive
    if isinstance(v, SymOp):
        if v.op in ("succ", "cnc"):
            return False
        if v.op == "pair":
            return n_is_zero(v.args[0]) and n_is_zero(v.args[1])
    _structure(v, "nat")


def n_pred(v):
    if isinstance(v, int):
        return v - 1
    if isinstance(v, SymOp) and v.op == "succ":
        return v.args[0]
    _structure(v, "nat")


def n_eq(a, b) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    if a is b or a == b:
        return True
    if isinstance(b, int) and not isinstance(a, int):
        a, b = b, a
    # now `b` is symbolic
    if isinstance(b, SymOp):
        if b.op == "succ":
            if isinstance(a, int):
                return a != 0 and n_eq(a - 1, b.args[0])
            if isinstance(a, SymOp) and a.op == "succ":
                return n_eq(a.args[0], b.args[0])
        if b.op == "pair":
            if isinstance(a, int):
                x, y = unpair(a)
                return n_eq(x, b.args[0]) and n_eq(y, b.args[1])
            if isinstance(a, SymOp) and a.op == "pair":
                return n_eq(a.args[0], b.args[0]) and n_eq(a.args[1], b.args[1])
        if b.op == "cnc":
            if isinstance(a, int):
                if a == 0:
                    return False
                k, x = uncnc(a)
                return n_eq(k, b.args[0]) and n_eq(x, b.args[1])
            if isinstance(a, SymOp) and a.op == "cnc":
                return n_eq(a.args[0], b.args[0]) and n_eq(a.args[1], b.args[1])
    if isinstance(a, int) and a == 0 and isinstance(b, Program):
        return False
    return _eq_fallback(a, b)


def _eq_fallback(a, b) -> bool:
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Sym) and _avoids(x, y):
            return False
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Sym):
            if isinstance(y, int) and y <= 3 and not x.avoid:
                raise NeedsConcrete(x, "nat")
            if x not in symbols_of(y):
                raise NeedsConcrete(x, "eq", y)
    for v in (a, b):
        if isinstance(v, SymOp) and v.op in ("succ", "pair", "cnc"):
            for arg in v.args:
                if isinstance(arg, Sym):
                    raise NeedsConcrete(arg, "nat")
    raise NeedsConcrete()


def n_lt(a, b) -> bool:
    while True:
        if isinstance(a, int) and isinstance(b, int):
            return a < b
        if n_is_zero(b):
            return False
        if n_is_zero(a):
            return True
        a, b = n_pred(a), n_pred(b)


def n_lh(v):
    if isinstance(v, int):
        return lh(v)
    if isinstance(v, SymOp) and v.op == "cnc":
        return n_succ(n_lh(v.args[0]))
    _structure(v, "list")


def n_comp(n, j):
    """Component j of list n, or None when out of range."""
    if isinstance(n, int) and isinstance(j, int):
        return component(n, j)
    if isinstance(n, int) and n == 0:
        return None
    if isinstance(n, SymOp) and n.op == "cnc":
        k, x = n.args
        length = n_lh(k)
        if n_eq(j, length):
            return x
        if n_lt(j, length):
            return n_comp(k, j)
        return None
    if isinstance(n, int):
        k, x = uncnc(n)
        length = lh(k)
        if n_eq(j, length):
            return x
        if n_lt(j, length):
            return n_comp(k, j)
        return None
    _structure(n, "list")


# ---------------------------------------------------------------------------
# Programs
#
# Codes (tag = code mod 5):
#   Const n   5n          Var i   5i+1        App f a   5*join(f, a)+2
#   Lam b     5b+3        Prim k  5k+4 (k <= LAST_PRIM)
# Every natural decodes to some program: codes that are not canonical
# (a non-canonical join, an unknown primitive) decode to the constant itself.

SUCC, PAIR, P1, P2, ITE, CNC, REC, LISTREC, LH, COMP, TRACE = range(11)
LAST_PRIM = TRACE
ARITY = (1, 2, 1, 1, 3, 2, 3, 3, 1, 2, 2)
PRIM_NAMES = ("succ", "p", "p1", "p2", "ite", "cnc", "rec", "listrec", "lh", "comp", "trace")


class Program:
    __slots__ = ("_code", "concrete", "maxfree")

    @property
    def code(self) -> int:
        c = self._code
        if c is None:
            if not self.concrete:
                raise NeedsConcrete()
            c = self._code = self._compute_code()
        return c

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        if self.concrete and other.concrete:
            return self.code == other.code
        return self._key() == other._key()

    def __hash__(self):
        return hash(self.code) if self.concrete else hash(self._key())

    def __repr__(self) -> str:
        return pretty(self)

    def symbols(self) -> set:
        if self.concrete:
            return set()
        out: set = set()
        for c in self.consts():
            out |= symbols_of(c)
        return out

    def consts(self):
        return ()

    def map_consts(self, f):
        return self


class Const(Program):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value
        self.concrete = isinstance(value, int)
        self.maxfree = 0
        self._code = None

    def _compute_code(self):
        return 5 * self.value

    def _key(self):
        return ("c", self.value)

    def consts(self):
        return (self.value,)

    def map_consts(self, f):
        return Const(f(self.value))


class Var(Program):
    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self.concrete = True
        self.maxfree = index + 1
        self._code = None

    def _compute_code(self):
        return 5 * self.index + 1

    def _key(self):
        return ("v", self.index)


class App(Program):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Program, arg: Program):
        self.fun = fun
        self.arg = arg
        self.concrete = fun.concrete and arg.concrete
        self.maxfree = max(fun.maxfree, arg.maxfree)
        self._code = None

    def _compute_code(self):
        return 5 * join(self.fun.code, self.arg.code) + 2

    def _key(self):
        return ("a", self.fun._key(), self.arg._key())

    def consts(self):
        return (*self.fun.consts(), *self.arg.consts())

    def map_consts(self, f):
        if self.concrete:
            return self
        return App(self.fun.map_consts(f), self.arg.map_consts(f))


class Lam(Program):
    __slots__ = ("body", "name")

    def __init__(self, body: Program, name: str = ""):
        self.body = body
        self.name = name
        self.concrete = body.concrete
        self.maxfree = max(body.maxfree - 1, 0)
        self._code = None

    def _compute_code(self):
        return 5 * self.body.code + 3

    def _key(self):
        return ("l", self.body._key())

    def consts(self):
        return self.body.consts()

    def map_consts(self, f):
        if self.concrete:
            return self
        return Lam(self.body.map_consts(f), self.name)


class Prim(Program):
    __slots__ = ("op",)

    def __init__(self, op: int):
        if not 0 <= op <= LAST_PRIM:
            raise ValueError(f"unknown primitive {op}")
        self.op = op
        self.concrete = True
        self.maxfree = 0
        self._code = None

    def _compute_code(self):
        return 5 * self.op + 4

    def _key(self):
        return ("p", self.op)


PcaProgram = Program


def prim_code(op: int) -> int:
    return 5 * op + 4


def encode(p: Program) -> int:
    return p.code


@lru_cache(maxsize=200_000)
def _decode(n: int) -> Program | None:
    rest, tag = divmod(n, 5)
    if tag == 0:
        return Const(rest)
    if tag == 1:
        return Var(rest)
    if tag == 3:
        body = _decode(rest)
        return None if body is None else Lam(body)
    if tag == 4:
        return Prim(rest) if rest <= LAST_PRIM else None
    parts = split(rest)
    if parts is None:
        return None
    f, a = _decode(parts[0]), _decode(parts[1])
    if f is None or a is None:
        return None
    return App(f, a)


def decode(n: int) -> Program:
    """Total decoding: every natural is the code of some program.

    Codes that are not canonical anywhere inside decode to the constant `n`.
    """
    if n < 0:
        raise ValueError("codes are natural numbers")
    p = _decode(n)
    return Const(n) if p is None else p


def apps(f: Program, *args: Program) -> Program:
    for a in args:
        f = App(f, a)
    return f


def lam(body: Program, name: str = "x") -> int:
    """Code of the abstraction of `body` over de Bruijn variable 0."""
    if body.maxfree > 1:
        raise ValueError("lam body has free variables other than the bound one")
    return Lam(body, name).code


def shift(p: Program, by: int, cutoff: int = 0) -> Program:
    if p.maxfree <= cutoff or by == 0:
        return p
    t = type(p)
    if t is Var:
        return Var(p.index + by) if p.index >= cutoff else p
    if t is App:
        return App(shift(p.fun, by, cutoff), shift(p.arg, by, cutoff))
    if t is Lam:
        return Lam(shift(p.body, by, cutoff + 1), p.name)
    return p


def subst(p: Program, index: int, q: Program) -> Program:
    """Replace variable `index` by `q` (lowering higher variables)."""
    if p.maxfree <= index:
        return p
    t = type(p)
    if t is Var:
        if p.index == index:
            return shift(q, index) if q.maxfree else q
        return Var(p.index - 1) if p.index > index else p
    if t is App:
        return App(subst(p.fun, index, q), subst(p.arg, index, q))
    if t is Lam:
        return Lam(subst(p.body, index + 1, q), p.name)
    return p


def instantiate(p: Program, values: Sequence) -> Program:
    """Close `p` by substituting values for its free variables.

    `values[-1]` replaces variable 0, `values[-2]` variable 1, and so on.
    """
    for v in reversed(values):
        p = subst(p, 0, Const(v))
    return p


# ---------------------------------------------------------------------------
# The machine


@dataclass(frozen=True)
class Converged:
    value: object
    steps: int


@dataclass(frozen=True)
class Diverged:
    """No value within the fuel.  `stuck` means the run can never finish."""

    fuel: int
    stuck: bool = False


EvalResult = Converged | Diverged

EVAL, RET = 0, 1
ARG, FUN = 0, 1


def value_of(p: Program):
    """The value a value-form program evaluates to."""
    if p.concrete:
        return p.code
    return p


def as_program(f) -> Program:
    if isinstance(f, int):
        return decode(f)
    if isinstance(f, Program):
        return f
    _structure(f, "nat")


def spine(p: Program):
    """(op, args) if `p` is a primitive applied to constants."""
    args = []
    while type(p) is App:
        if type(p.arg) is not Const:
            return None
        args.append(p.arg.value)
        p = p.fun
    if type(p) is not Prim:
        return None
    args.reverse()
    return p.op, args


class Machine:
    def __init__(self, fuel: int):
        self.fuel = fuel
        self.steps = 0

    def run(self, prog: Program, trace: list | None = None):
        mode, cur, stack = EVAL, prog, []
        fuel = self.fuel
        while True:
            if trace is not None:
                trace.append(state_code(mode, cur, stack))
            if mode == RET and not stack:
                return Converged(cur, self.steps)
            if self.steps >= fuel:
                return Diverged(fuel)
            self.steps += 1
            nxt = self.transition(mode, cur, stack)
            if nxt is None:
                return Diverged(fuel, stuck=True)
            mode, cur = nxt

    def transition(self, mode, cur, stack):
        if mode == EVAL:
            t = type(cur)
            if t is Const:
                return RET, cur.value
            if t is App:
                stack.append((ARG, cur.arg))
                return EVAL, cur.fun
            if t is Lam:
                return RET, value_of(cur)
            if t is Prim:
                return RET, cur.code
            return None
        tag, payload = stack[-1]
        if tag == ARG:
            stack[-1] = (FUN, cur)
            return EVAL, payload
        stack.pop()
        return self.apply_value(payload, cur)

    def apply_value(self, f, x):
        p = as_program(f)
        if type(p) is Lam:
            return EVAL, subst(p.body, 0, Const(x))
        sp = spine(p)
        if sp is None:
            return None
        op, args = sp
        args.append(x)
        if len(args) < ARITY[op]:
            return RET, value_of(App(p, Const(x)))
        return self.delta(op, args)

    def delta(self, op, args):
        if op == SUCC:
            return RET, n_succ(args[0])
        if op == PAIR:
            return RET, n_pair(args[0], args[1])
        if op == P1:
            return RET, n_p1(args[0])
        if op == P2:
            return RET, n_p2(args[0])
        if op == ITE:
            n, m, l = args
            return RET, (m if n_is_zero(n) else l)
        if op == CNC:
            return RET, n_cnc(args[0], args[1])
        if op == LH:
            return RET, n_lh(args[0])
        if op == COMP:
            r = n_comp(args[0], args[1])
            return None if r is None else (RET, r)
        if op == REC:
            return self.rec(*args)
        if op == LISTREC:
            return self.listrec(*args)
        if op == TRACE:
            return self.trace_prim(*args)
        raise AssertionError(op)

    def rec(self, n, m, k):
        if isinstance(k, int) or (isinstance(k, SymOp) and k.op == "succ"):
            if n_is_zero(k):
                return RET, n
            k1 = n_pred(k)
            inner = apps(Prim(REC), Const(n), Const(m), Const(k1))
            return EVAL, apps(Const(m), Const(k1), inner)
        self._total(m, 2)
        return RET, SymOp("rec", (n, m, k))

    def listrec(self, n, m, l):
        if isinstance(l, int) or (isinstance(l, SymOp) and l.op == "cnc"):
            if n_is_zero(l):
                return RET, n
            if isinstance(l, int):
                k, x = uncnc(l)
            else:
                k, x = l.args
            inner = apps(Prim(LISTREC), Const(n), Const(m), Const(k))
            return EVAL, apps(Const(m), Const(k), Const(x), inner)
        self._total(m, 3)
        return RET, SymOp("listrec", (n, m, l))

    def _total(self, m, arity):
        """Prove that {m} is total in `arity` arguments, or give up.

        A run on fresh symbols that never inspects them converges on every
        input, so a recursor built from such an `m` is total by induction.
        """
        sub = Machine(self.fuel - self.steps)
        try:
            r = sub.run(apps(Const(m), *(Const(Sym()) for _ in range(arity))))
        except NeedsConcrete:
            raise NeedsConcrete() from None
        self.steps += sub.steps
        if not isinstance(r, Converged):
            raise NeedsConcrete()

    def trace_prim(self, f, x):
        if is_symbolic(f) or is_symbolic(x):
            raise NeedsConcrete()
        sub = Machine(self.fuel - self.steps)
        states: list = []
        r = sub.run(App(Const(f), Const(x)), states)
        self.steps += sub.steps
        if not isinstance(r, Converged):
            return None
        return RET, pair(r.value, seq_encode(states))


def run(prog: Program, fuel: int = 100_000) -> EvalResult:
    """Evaluate a closed program."""
    return Machine(fuel).run(prog)


def apply(e, x, fuel: int = 100_000) -> EvalResult:
    """{e}(x); a sequence `x` applies e to each argument in turn."""
    if isinstance(x, (list, tuple)):
        prog = apps(Const(e), *(Const(a) for a in x))
    else:
        prog = App(Const(e), Const(x))
    return run(prog, fuel)


def apply_many(e, xs: Sequence, fuel: int = 100_000) -> EvalResult:
    return run(apps(Const(e), *(Const(a) for a in xs)), fuel)


def rec_apply(n, m, k, fuel: int = 100_000) -> EvalResult:
    return apply_many(prim_code(REC), [n, m, k], fuel)


def listrec_apply(n, m, l, fuel: int = 100_000) -> EvalResult:
    return apply_many(prim_code(LISTREC), [n, m, l], fuel)


# ---------------------------------------------------------------------------
# Traces: Kleene's T and U
#
# A trace code is pair(v, seq(states)) where each state is the code of a
# whole machine configuration (mode, focus, stack).  T checks that the
# states start from {e}(x), follow the transition function, and stop at v.


def state_code(mode, cur, stack) -> int:
    focus = cur.code if mode == EVAL else cur
    if not isinstance(focus, int):
        raise NeedsConcrete()
    frames = []
    for tag, payload in stack:
        if tag == ARG:
            frames.append(2 * payload.code)
        else:
            if not isinstance(payload, int):
                raise NeedsConcrete()
            frames.append(2 * payload + 1)
    return seq_encode([mode, focus, *frames])


def decode_state(code: int):
    items = seq_decode(code, limit=code.bit_length() + 2)
    if items is None or len(items) < 2 or items[0] not in (EVAL, RET):
        return None
    mode, focus, *frames = items
    cur = decode(focus) if mode == EVAL else focus
    stack = []
    for fr in frames:
        tag, payload = fr & 1, fr >> 1
        stack.append((ARG, decode(payload)) if tag == ARG else (FUN, payload))
    return mode, cur, stack


@dataclass(frozen=True)
class Trace:
    value: int
    states: tuple

    @property
    def code(self) -> int:
        return pair(self.value, seq_encode(self.states))

    @property
    def steps(self) -> int:
        return len(self.states) - 1


def trace_of(e: int, x: int, fuel: int = 100_000) -> Trace | None:
    states: list = []
    r = Machine(fuel).run(App(Const(e), Const(x)), states)
    if not isinstance(r, Converged):
        return None
    return Trace(r.value, tuple(states))


def kleene_T(e: int, x: int, u: int, fuel: int = 100_000) -> bool:
    """Does `u` code a terminating trace of {e}(x) with at most `fuel` steps?"""
    if min(e, x, u) < 0:
        return False
    v, body = unpair(u)
    states = seq_decode(body, limit=fuel + 1)
    if not states or len(states) - 1 > fuel:
        return False
    if states[0] != state_code(EVAL, App(Const(e), Const(x)), []):
        return False
    for here, there in zip(states, states[1:]):
        st = decode_state(here)
        if st is None:
            return False
        mode, cur, stack = st
        if mode == RET and not stack:
            return False
        machine = Machine(fuel)
        try:
            nxt = machine.transition(mode, cur, stack)
        except NeedsConcrete:
            return False
        if nxt is None or state_code(nxt[0], nxt[1], stack) != there:
            return False
    last = decode_state(states[-1])
    return last is not None and last[0] == RET and not last[2] and last[1] == v


def kleene_U(u: int) -> int:
    return proj1(u)


# ---------------------------------------------------------------------------
# Printing


def pretty(p: Program) -> str:
    return _pp(p, [])


def _fresh_name(name: str, names: list) -> str:
    name = name or "x"
    while name in names:
        name += "'"
    return name


def _pp(p: Program, names: list) -> str:
    t = type(p)
    if t is Const:
        return str(p.value) if isinstance(p.value, int) else repr(p.value)
    if t is Var:
        if p.index < len(names):
            return names[-1 - p.index]
        return f"#{p.index - len(names)}"
    if t is Prim:
        return PRIM_NAMES[p.op]
    if t is Lam:
        name = _fresh_name(p.name, names)
        return f"Λ{name}." + _pp(p.body, names + [name])
    args = []
    while type(p) is App:
        args.append(p.arg)
        p = p.fun
    args.reverse()
    return "{" + _pp(p, names) + "}(" + ",".join(_pp(a, names) for a in args) + ")"

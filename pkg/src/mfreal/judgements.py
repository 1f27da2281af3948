"""Interpretation and checking of judgements, and the validity harness.

A judgement is interpreted as a formula of the semantic language: closed
judgements become membership, equivalence or ≐ atoms, and judgements in a
context quantify over (pairs of equivalent) members of the context types,
one variable at a time so that later types may depend on earlier values.

The harness runs the conversion laws, the substitution lemma, the coding
condition and the laws of the semantic relations on generated samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources

from . import interp, logic, pca
from . import realizability as R
from . import setcodes
from . import syntax as S
from .clauses import And, ForallF, Formula, Imp, J, Sim, TrueF, var
from .logic import FAILS, HOLDS, Budget, Verdict

# ---------------------------------------------------------------------------
# Interpretation of judgements


class MalformedJudgement(ValueError):
    pass


def _scope_check(j: S.Judgement) -> None:
    seen: list = []
    for x, A in j.context:
        free = S.free_vars(A) - set(seen)
        if free:
            raise MalformedJudgement(f"{sorted(free)} unbound in the type of {x}")
        if x in seen:
            raise MalformedJudgement(f"{x} declared twice")
        seen.append(x)
    free = S.judgement_free_vars(j) - set(seen)
    if free:
        raise MalformedJudgement(f"{sorted(free)} not declared in the context")


def interpret_judgement(j: S.Judgement) -> Formula:
    """The formula I(J).  Raises MalformedJudgement on scoping errors."""
    _scope_check(j)
    if j.kind == "cont":
        parts = [interpret_judgement(S.type_wf(A, "col", j.context[:i]))
                 for i, (_, A) in enumerate(j.context)]
        return And(*parts) if parts else TrueF()
    names = [x for x, _ in j.context]
    xs = {x: var(f"x{i}") for i, x in enumerate(names)}
    ys = {x: var(f"y{i}") for i, x in enumerate(names)}
    if j.kind in ("type", "term"):
        if j.kind == "type":
            body: Formula = R.Doteq(R.TypeRef.of(j.A, xs), R.TypeRef.of(j.A, ys))
        else:
            body = (Sim(R._term(j.t, xs), R._term(j.t, ys), R.TypeRef.of(j.A, xs)) if names
                    else J(R._term(j.t, {}), R.TypeRef.of(j.A, {})))
        for i in reversed(range(len(names))):
            A = j.context[i][1]
            guard = Sim(xs[names[i]], ys[names[i]], R.TypeRef.of(A, xs))
            body = ForallF(f"x{i}", ForallF(f"y{i}", Imp(guard, body)))
        return body
    if j.kind == "type_eq":
        body = R.Doteq(R.TypeRef.of(j.A, xs), R.TypeRef.of(j.B, xs))
    elif j.kind == "term_eq":
        body = Sim(R._term(j.t, xs), R._term(j.s, xs), R.TypeRef.of(j.A, xs))
    else:
        raise MalformedJudgement(j.kind)
    for i in reversed(range(len(names))):
        A = j.context[i][1]
        body = ForallF(f"x{i}", Imp(J(xs[names[i]], R.TypeRef.of(A, xs)), body))
    return body


def check_judgement(j: S.Judgement, budget: Budget | None = None) -> Verdict:
    """Evaluate I(J) within the budget.

    A type judgement whose type does not belong to the stated stratum is
    rejected outright: its formula I(A) ≐ I(A) would hold trivially.
    """
    if j.kind in ("type", "type_eq"):
        for A in (j.A, j.B):
            if A is not None and not S.fits(S.stratum_of(A), j.stratum):
                return logic.Verdict(logic.FAILS_S, note=f"{S.show(A)} is not a {j.stratum}")
    return R.formula_holds(interpret_judgement(j), {}, budget)


# ---------------------------------------------------------------------------
# Observational comparison of results


_PROBES = (0, 1, 2, 5, pca.pair(1, 2))


def _is_function(v) -> bool:
    if not isinstance(v, int):
        return False
    p = pca.decode(v)
    if isinstance(p, pca.Lam):
        return True
    sp = pca.spine(p)
    return sp is not None and len(sp[1]) < pca.ARITY[sp[0]]


def agree_values(v1, v2, budget: Budget, depth: int = 2) -> Verdict:
    """Equal numerals, or codes of functions agreeing on a few probes."""
    if v1 == v2:
        return HOLDS
    if not (_is_function(v1) and _is_function(v2)):
        return FAILS
    if depth == 0:
        return logic.unknown("depth")
    pending = None
    for k in _PROBES:
        r1 = pca.apply(v1, k, budget.fuel)
        r2 = pca.apply(v2, k, budget.fuel)
        v = agree_results(r1, r2, budget, depth - 1)
        if v.fails:
            return v
        if v.unknown and pending is None:
            pending = v
    return pending or HOLDS


def agree_results(r1: pca.EvalResult, r2: pca.EvalResult, budget: Budget,
                  depth: int = 2) -> Verdict:
    """Kleene equality of two runs, observationally for function codes."""
    c1, c2 = isinstance(r1, pca.Converged), isinstance(r2, pca.Converged)
    if c1 and c2:
        return agree_values(r1.value, r2.value, budget, depth)
    if (not c1 and not r1.stuck) or (not c2 and not r2.stuck):
        return logic.unknown("fuel")
    return HOLDS if not c1 and not c2 else FAILS


# ---------------------------------------------------------------------------
# Random well-typed terms
#
# Ground types: N, N1, F (N -> N), P (N x N), S (N + N), L (List N).

GROUND = ("N", "N1", "F", "P", "S", "L")
TYPE_OF = {
    "N": S.Nat(), "N1": S.N1(), "F": S.Pi("w", S.Nat(), S.Nat()),
    "P": S.Sigma("w", S.Nat(), S.Nat()), "S": S.Plus(S.Nat(), S.Nat()), "L": S.ListT(S.Nat()),
}


class TermGen:
    """Generator of terms of the ground types over a typed scope."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def fresh(self, base: str) -> str:
        self.counter += 1
        return f"{base}{self.counter}"

    def small(self) -> S.Term:
        return S.numeral(self.rng.randint(0, 3))

    def term(self, ty: str, scope: tuple = (), depth: int = 3) -> S.Term:
        rng = self.rng
        vars_ = [x for x, t in scope if t == ty]
        if vars_ and rng.random() < 0.35:
            return S.Var(rng.choice(vars_))
        if depth <= 0:
            return self.leaf(ty, scope)
        d = depth - 1
        if ty == "N":
            return self._nat(scope, d)
        if ty == "N1":
            return rng.choice([S.Star(), S.ElN1(self.term("N1", scope, d), S.Star())])
        if ty == "F":
            y = self.fresh("f")
            return S.Lam(y, self.term("N", scope + ((y, "N"),), d))
        if ty == "P":
            return S.Pair(self.term("N", scope, d), self.term("N", scope, d))
        if ty == "S":
            inj = rng.choice([S.Inl, S.Inr])
            return inj(self.term("N", scope, d))
        if ty == "L":
            if rng.random() < 0.3:
                return S.Eps()
            return S.Cons(self.term("L", scope, d), self.term("N", scope, d))
        raise ValueError(ty)

    def leaf(self, ty: str, scope: tuple) -> S.Term:
        vars_ = [x for x, t in scope if t == ty]
        if vars_:
            return S.Var(self.rng.choice(vars_))
        return {"N": self.small(), "N1": S.Star(), "F": S.Lam("w", S.Var("w")),
                "P": S.Pair(self.small(), self.small()), "S": S.Inl(self.small()),
                "L": S.Eps()}[ty]

    def _nat(self, scope, d) -> S.Term:
        rng = self.rng
        k = rng.randrange(13)
        if k == 0:
            return self.small()
        if k == 1:
            return S.Succ(self.term("N", scope, d))
        if k == 2:
            y, z = self.fresh("y"), self.fresh("z")
            body = self.term("N", scope + ((y, "N"), (z, "N")), d)
            return S.ElN(self.small(), self.term("N", scope, d), y, z, body)
        if k == 3:
            return S.Ap(self.term("F", scope, d), self.term("N", scope, d))
        if k == 4:
            y, z = self.fresh("y"), self.fresh("z")
            body = self.term("N", scope + ((y, "N"), (z, "N")), d)
            return S.ElSigma(self.term("P", scope, d), y, z, body)
        if k == 5:
            y, y2 = self.fresh("y"), self.fresh("y")
            return S.ElPlus(self.term("S", scope, d), y, self.term("N", scope + ((y, "N"),), d),
                            y2, self.term("N", scope + ((y2, "N"),), d))
        if k == 6:
            y, z, u = self.fresh("y"), self.fresh("z"), self.fresh("u")
            body = self.term("N", scope + ((y, "L"), (z, "N"), (u, "N")), d)
            return S.ElList(self.term("L", scope, d), self.term("N", scope, d), y, z, u, body)
        if k == 7:
            return S.ElN1(self.term("N1", scope, d), self.term("N", scope, d))
        if k == 8:
            return rng.choice([S.Pi1, S.Pi2])(S.AndPair(self.term("N", scope, d),
                                                        self.term("N", scope, d)))
        if k == 9:
            y = self.fresh("y")
            lam, ap = rng.choice([(S.LamImp, S.ApImp), (S.LamAll, S.ApAll)])
            return ap(lam(y, self.term("N", scope + ((y, "N"),), d)), self.term("N", scope, d))
        if k == 10:
            y, y2 = self.fresh("y"), self.fresh("y")
            inj = rng.choice([S.InlOr, S.InrOr])
            return S.ElOr(inj(self.term("N", scope, d)), y,
                          self.term("N", scope + ((y, "N"),), d),
                          y2, self.term("N", scope + ((y2, "N"),), d))
        if k == 11:
            y, z = self.fresh("y"), self.fresh("z")
            return S.ElEx(S.ExPair(self.term("N", scope, d), self.term("N", scope, d)), y, z,
                          self.term("N", scope + ((y, "N"), (z, "N")), d))
        t = self.term("N", scope, d)
        y = self.fresh("y")
        return S.ElId(t, t, S.IdIntro(t), y, self.term("N", scope + ((y, "N"),), d))


# metavariable -> (type key, bound variables with their type keys)
def _metavar_types(index: int, rng: random.Random) -> dict:
    a, b, c = (rng.choice(GROUND) for _ in range(3))
    if index == 1:
        return {"t": (a, ())}
    if index == 2:
        return {"t": (a, ()), "r": (a, (("y", "N"), ("z", a)))}
    if index == 3:
        return {"t": (a, ()), "t1": ("small", ()), "r": (a, (("y", "N"), ("z", a)))}
    if index in (4, 5, 6):
        return {"t": (a, ()), "s": (b, (("y", a),))}
    if index in (7, 8):
        return {"t": (a, ()), "t1": (b, ()), "r": (c, (("y", a), ("z", b)))}
    if index in (9, 10):
        return {"t": (a, ()), "t1": (b, ())}
    if index in (11, 12, 13, 14):
        return {"t": (a, ()), "s": (c, (("y", a),)), "s2": (c, (("y", a),))}
    if index == 15:
        return {"t": (a, ()), "s": (b, (("y", a),))}
    if index == 16:
        return {"t": (a, ()), "q": (a, (("y", "L"), ("z", "N"), ("u", a)))}
    if index == 17:
        return {"t": (a, ()), "t1": ("L", ()), "t2": ("N", ()),
                "q": (a, (("y", "L"), ("z", "N"), ("u", a)))}
    raise ValueError(index)


def conversion_instance(schema: interp.ConversionSchema, rng: random.Random) -> dict:
    gen = TermGen(rng)
    parts = {}
    for name, (ty, bound) in _metavar_types(schema.index, rng).items():
        if ty == "small":
            parts[name] = gen.small()
        else:
            parts[name] = gen.term(ty, bound, depth=rng.randint(1, 3))
    return parts


@dataclass
class SuiteReport:
    name: str
    total: int = 0
    agree: int = 0
    disagree: int = 0
    unknown: int = 0
    failures: list = field(default_factory=list)
    by_item: dict = field(default_factory=dict)

    def record(self, key, v: Verdict, detail=None) -> None:
        self.total += 1
        row = self.by_item.setdefault(key, {"total": 0, "agree": 0, "disagree": 0, "unknown": 0})
        row["total"] += 1
        if v.holds:
            self.agree += 1
            row["agree"] += 1
        elif v.fails:
            self.disagree += 1
            row["disagree"] += 1
            if len(self.failures) < 20:
                self.failures.append(detail)
        else:
            self.unknown += 1
            row["unknown"] += 1

    @property
    def unknown_rate(self) -> float:
        return self.unknown / self.total if self.total else 0.0

    @property
    def ok(self) -> bool:
        return self.disagree == 0

    def to_json(self) -> dict:
        return {
            "suite": self.name, "total": self.total, "agree": self.agree,
            "disagree": self.disagree, "unknown": self.unknown,
            "unknown_rate": round(self.unknown_rate, 4),
            "items": {str(k): v for k, v in sorted(self.by_item.items())},
            "failures": self.failures,
        }


def check_conversion(schema: interp.ConversionSchema, parts: dict,
                     budget: Budget | None = None) -> Verdict:
    """I(lhs) against the model-side substitution and against I(contractum)."""
    budget = budget or Budget()
    lhs = pca.run(interp.interpret(schema.lhs(parts), ()), budget.fuel)
    model = pca.run(schema.rhs_program(parts), budget.fuel)
    syntactic = pca.run(interp.interpret(schema.contractum(parts), ()), budget.fuel)
    return logic.conj(lambda: agree_results(lhs, model, budget),
                      lambda: agree_results(lhs, syntactic, budget))


def run_conversion_suite(seed: int = 0, size: int = 500,
                         budget: Budget | None = None) -> SuiteReport:
    """`size` generated instances of each of the seventeen conversion laws."""
    budget = budget or Budget()
    report = SuiteReport("conversions")
    for schema in interp.conversion_pairs():
        rng = random.Random(f"{seed}:conversion:{schema.index}")
        for _ in range(size):
            parts = conversion_instance(schema, rng)
            v = check_conversion(schema, parts, budget)
            report.record(schema.index, v, {
                "schema": schema.index,
                "parts": {k: S.show(t) for k, t in sorted(parts.items())}})
    return report


# ---------------------------------------------------------------------------
# Substitution


def check_substitution(t: S.Term, x: str, a: S.Term, budget: Budget | None = None) -> Verdict:
    """I(t)[I(a)/x] agrees with I(t[a/x])."""
    budget = budget or Budget()
    if S.free_vars(a):
        raise ValueError("the substituted term must be closed")
    scope = tuple(sorted(S.free_vars(t) | {x}))
    if scope != (x,):
        raise ValueError(f"{S.show(t)} has free variables besides {x}")
    model = interp.pca_substitute(interp.interpret(t, scope), scope,
                                  {x: interp.interpret(a, ())})
    syntactic = interp.interpret(S.substitute(t, x, a), ())
    return agree_results(pca.run(model, budget.fuel), pca.run(syntactic, budget.fuel), budget)


def run_substitution_suite(seed: int = 0, size: int = 1000,
                           budget: Budget | None = None) -> SuiteReport:
    budget = budget or Budget()
    report = SuiteReport("substitution")
    rng = random.Random(f"{seed}:substitution")
    for i in range(size):
        gen = TermGen(rng)
        ty, aty = rng.choice(GROUND), rng.choice(GROUND)
        t = gen.term(ty, (("x", aty),), depth=rng.randint(1, 4))
        if "x" not in S.free_vars(t):
            t = S.Pair(t, S.Var("x")) if aty != "N1" else S.Pair(t, S.ElN1(S.Var("x"), S.Zero()))
        a = gen.term(aty, (), depth=rng.randint(0, 3))
        v = check_substitution(t, "x", a, budget)
        report.record(ty, v, {"t": S.show(t), "a": S.show(a)})
    return report


# ---------------------------------------------------------------------------
# Samples of members


def sample_values(A: S.TypeExpr, rng: random.Random, count: int = 12,
                  budget: Budget | None = None) -> list:
    """Candidate naturals for A: its finite carrier, generated members, noise."""
    budget = budget or Budget()
    out: list = []
    carrier = R.classify_carrier(A, {}, budget)
    if carrier.finite:
        out.extend(carrier.elements)
    key = next((k for k, T in TYPE_OF.items() if S.alpha_eq(T, A)), None)
    gen = TermGen(rng)
    for _ in range(count):
        if key is not None:
            r = interp.evaluate(gen.term(key, (), depth=rng.randint(0, 3)), {}, budget.fuel)
            if isinstance(r, pca.Converged):
                out.append(r.value)
        out.append(rng.randint(0, 40))
    for _ in range(count):
        v = _structured_member(A, rng, 3)
        if v is not None:
            out.append(v)
    out.extend(_function_samples(A, rng))
    seen, uniq = set(), []
    for v in out:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    return uniq


def _structured_member(A, rng, depth):
    """A natural built to be a member of A, for the numerical type formers."""
    if depth < 0:
        return None
    if isinstance(A, S.N1):
        return 0
    if isinstance(A, S.Nat):
        return rng.randint(0, 60)
    if isinstance(A, S.Plus):
        tag = rng.randint(0, 1)
        v = _structured_member(A.B if tag else A.A, rng, depth - 1)
        return None if v is None else pca.pair(tag, v)
    if isinstance(A, S.ListT):
        items = [_structured_member(A.A, rng, depth - 1) for _ in range(rng.randint(0, 3))]
        return None if None in items else pca.list_encode(items)
    if isinstance(A, S.Sigma) and A.y not in S.free_vars(A.B):
        a, b = _structured_member(A.A, rng, depth - 1), _structured_member(A.B, rng, depth - 1)
        return None if a is None or b is None else pca.pair(a, b)
    return None


_FUNCTIONS = ("lam w. w", "lam w. 0", "lam w. succ(w)", "lam w. elN1(w, 0)",
              "lam w. elN(w, 0, (a, b) succ(b))", "lam w. lam v. w", "lam w. pair(w, 0)",
              "lam w. elN(w, 0, (a, b) 0)")


def _function_samples(A, rng) -> list:
    if not isinstance(A, (S.Pi, S.Forall, S.Imp, S.FunPropS)):
        return []
    return [interp.evaluate(S.parse_term(src)).value for src in _FUNCTIONS]


# ---------------------------------------------------------------------------
# The coding condition


def check_coding(A: S.TypeExpr, env: dict | None = None, budget: Budget | None = None,
                 seed: int = 0, samples: int = 16) -> Verdict:
    """Set(I(Â)) and agreement of ε̄/≡ with J(A)/∼ on sampled naturals."""
    budget = budget or Budget()
    env = dict(env or {})
    prog = interp.program_in_env(S.hat(A), env)
    r = pca.run(prog, budget.fuel)
    if not isinstance(r, pca.Converged):
        return logic.unknown("fuel") if not r.stuck else FAILS
    code = r.value
    v = setcodes.is_set_code(code, budget)
    if not v.holds:
        return v
    rng = random.Random(f"{seed}:coding:{S.show(A)}")
    values = sample_values(A, rng, samples, budget)
    for t in values:
        a, b = R.member(t, A, env, budget), setcodes.code_member(t, code, budget)
        if not a.unknown and not b.unknown and a.holds != b.holds:
            return logic.Verdict(logic.FAILS_S, note=f"membership of {t} differs")
    for t in values[:8]:
        for s in values[:8]:
            a, b = R.equiv(t, s, A, env, budget), setcodes.code_eq(t, s, code, budget)
            if not a.unknown and not b.unknown and a.holds != b.holds:
                return logic.Verdict(logic.FAILS_S, note=f"equivalence of {t}, {s} differs")
    return HOLDS


CODING_SETS = (
    "N0", "N1", "N", "N1 + N1", "N + N1", "N0 + N1", "List(N1)", "List(N)", "List(N0)",
    "Sigma x : N1. N", "Sigma x : N. N1", "Sigma x : N1. N1 + N1", "Pi x : N1. N1",
    "Pi x : N1. N", "Pi x : N1. N1 + N1", "Pi x : N0. N", "Sigma x : N. N",
    "List(N1 + N1)", "Sigma x : N1 + N1. List(N1)",
)


def _codable(A) -> bool:
    """Built from N0, N1, N by +, List, Sigma, and Pi over a finite domain."""
    if isinstance(A, (S.N0, S.N1, S.Nat)):
        return True
    if isinstance(A, S.Plus):
        return _codable(A.A) and _codable(A.B)
    if isinstance(A, S.ListT):
        return _codable(A.A)
    if isinstance(A, S.Sigma):
        return _codable(A.A) and _codable(A.B)
    if isinstance(A, S.Pi):
        return isinstance(A.A, (S.N0, S.N1)) and _codable(A.B)
    return False


def corpus_sets(entries: list | None = None) -> list:
    """The closed sets of the corpus (and their closed subsets) that `_codable` accepts."""
    entries = load_corpus() if entries is None else entries
    found: dict = {}

    def visit(node):
        if isinstance(node, S.TypeExpr) and not S.free_vars(node) and _codable(node):
            found.setdefault(S.show(node), node)
        for _, part, _ in S._parts(node):
            visit(part)

    for e in entries:
        for part in (e.judgement.A, e.judgement.B):
            if part is not None:
                visit(part)
        for _, A in e.judgement.context:
            visit(A)
    return [found[k] for k in sorted(found)]


def run_coding_suite(seed: int = 0, budget: Budget | None = None,
                     sets: list | None = None) -> SuiteReport:
    """The coding condition on CODING_SETS and on the closed sets of the corpus."""
    report = SuiteReport("coding")
    if sets is None:
        sets = [S.parse_type(src) for src in CODING_SETS]
        seen = {S.show(A) for A in sets}
        sets += [A for A in corpus_sets() if S.show(A) not in seen]
    for A in sets:
        src = S.show(A)
        report.record(src, check_coding(A, {}, budget, seed), {"set": src})
    return report


# ---------------------------------------------------------------------------
# Laws of the semantic relations

LAW_TYPES = (
    "N0", "N1", "N", "N1 + N", "List(N1)", "Sigma x : N. N1", "Pi x : N1. N", "Pi x : N. N",
    "Id(N, 0, 0)", "Id(N, 0, 1)", "Id(N, 0, 0) | Bot", "Exists x : N. Id(N, x, 3)",
    "Pi x : N. Id(N, x, x)", "Id(N, 0, 0) & Id(N, 1, 1)", "Id(N, 2, 2) -> Id(N, 0, 0)",
    "Sigma x : N. N", "N + N", "List(N)", "N1 + N1", "List(N1 + N)", "Sigma x : N1. N",
    "N + N1", "List(List(N1))", "props", "Set",
)

_CODES = ("N0hat", "N1hat", "Nhat", "Bothat", "Idhat(N, 0, 0)", "Idhat(N, 0, 1)",
          "Plushat(N1hat, Nhat)", "Listhat(N1hat)", "Andhat(Idhat(N,0,0), Bothat)",
          "Orhat(Bothat, Idhat(N,1,1))", "Sigmahat(x : N1, Nhat)")


def _code_samples() -> list:
    return [interp.evaluate(S.parse_term(src)).value for src in _CODES]


@dataclass
class LawReport:
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def note(self, law: str, ok: bool, detail) -> None:
        row = self.counts.setdefault(law, {"decided": 0, "violations": 0})
        row["decided"] += 1
        if not ok:
            row["violations"] += 1
            if len(self.violations) < 20:
                self.violations.append({"law": law, **detail})

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"laws": self.counts, "violations": self.violations}


def relation_laws(seed: int = 0, per_type: int = 30, budget: Budget | None = None) -> LawReport:
    """Reflexivity, symmetry, transitivity, equiv ⇒ member, numerical equality
    and proof irrelevance on sampled naturals."""
    budget = budget or Budget()
    report = LawReport()
    for src in LAW_TYPES:
        A = S.parse_type(src)
        rng = random.Random(f"{seed}:laws:{src}")
        values = sample_values(A, rng, per_type, budget)
        if isinstance(A, (S.SetU, S.PropS)):
            values = _code_samples() + values[:4]
        mem = {n: R.member(n, A, {}, budget) for n in values}
        eqv: dict = {}

        def eq(n, m):
            if (n, m) not in eqv:
                eqv[(n, m)] = R.equiv(n, m, A, {}, budget)
            return eqv[(n, m)]

        prop = S.fits(S.stratum_of(A), "prop")
        numerical = R.is_numerical(A)
        pairs = [(n, m) for n in values for m in values]
        for n in values:
            if mem[n].holds:
                v = eq(n, n)
                if not v.unknown:
                    report.note("reflexivity", v.holds, {"type": src, "n": str(n)})
        for n, m in pairs:
            v = eq(n, m)
            if v.unknown:
                continue
            w = eq(m, n)
            if not w.unknown:
                report.note("symmetry", v.holds == w.holds, {"type": src, "n": str(n), "m": str(m)})
            if v.holds:
                both = (mem[n], mem[m])
                if not any(b.unknown for b in both):
                    report.note("equiv-member", all(b.holds for b in both),
                                {"type": src, "n": str(n), "m": str(m)})
                if numerical:
                    report.note("numerical", n == m, {"type": src, "n": str(n), "m": str(m)})
            if prop and mem[n].holds and mem[m].holds:
                report.note("proof-irrelevance", v.holds, {"type": src, "n": str(n), "m": str(m)})
        members = [n for n in values if mem[n].holds][:8]
        for n in members:
            for m in members:
                if not eq(n, m).holds:
                    continue
                for k in members:
                    if eq(m, k).holds:
                        v = eq(n, k)
                        if not v.unknown:
                            report.note("transitivity", v.holds,
                                        {"type": src, "n": str(n), "m": str(m), "k": str(k)})
    return report


# ---------------------------------------------------------------------------
# The corpus of derivable judgements


@dataclass(frozen=True)
class CorpusEntry:
    index: int
    judgement: S.Judgement
    text: str
    expected: str  # Holds | Unknown
    note: str = ""


def load_corpus() -> list:
    """The shipped corpus: one judgement per line, `judgement ;; expected ;; note`."""
    text = resources.files("mfreal.data").joinpath("corpus.txt").read_text(encoding="utf-8")
    return parse_corpus(text)


def parse_corpus(text: str) -> list:
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields_ = [f.strip() for f in line.split(";;")]
        judgement, expected = fields_[0], fields_[1] if len(fields_) > 1 else "Holds"
        note = fields_[2] if len(fields_) > 2 else ""
        entries.append(CorpusEntry(len(entries), S.parse_judgement(judgement), judgement,
                                   expected, note))
    return entries


def load_corpus_derivations() -> list:
    """The derivations shipped with the corpus, one per corpus line and in the same order."""
    from . import rules
    text = resources.files("mfreal.data").joinpath("corpus.der").read_text(encoding="utf-8")
    return [item.derivation for item in rules.parse_derivations(text)]


def run_corpus(budget: Budget | None = None, entries: list | None = None,
               derivations: list | None = None) -> dict:
    """Check every corpus judgement semantically and, when given, against its derivation."""
    from . import rules
    entries = load_corpus() if entries is None else entries
    rows = []
    counts = {"Holds": 0, "Fails": 0, "Unknown": 0}
    derived = 0
    for i, e in enumerate(entries):
        v = check_judgement(e.judgement, budget or Budget())
        counts[v.status] += 1
        row = {"index": e.index, "judgement": e.text, "verdict": v.to_json(),
               "expected": e.expected, "note": e.note}
        if derivations is not None:
            d = derivations[i] if i < len(derivations) else None
            if d is None:
                row["derivation"] = {"ok": False, "message": "missing"}
            elif not S.judgement_alpha_eq(d.conclusion, e.judgement):
                row["derivation"] = {"ok": False, "message": "concludes a different judgement"}
            else:
                row["derivation"] = rules.check_derivation(d).to_json()
            derived += row["derivation"]["ok"]
        rows.append(row)
    out = {"total": len(entries), "counts": counts, "entries": rows}
    if derivations is not None:
        out["derived"] = derived
    return out

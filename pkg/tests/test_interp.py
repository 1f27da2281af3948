import pytest

from mfreal import interp, pca
from mfreal import syntax as S


def value(src, env=None):
    r = interp.evaluate(S.parse_term(src), env or {})
    assert isinstance(r, pca.Converged)
    return r.value


def test_star_is_zero():
    assert pca.value_of(interp.interpret(S.Star())) == 0


@pytest.mark.parametrize("src, expected", [
    ("0", 0), ("3", 3), ("star", 0), ("pair(2, 5)", pca.pair(2, 5)),
    ("inl(1)", pca.pair(0, 1)), ("inr(1)", pca.pair(1, 1)),
    ("ap(lam x. succ(x), 4)", 5), ("elN(3, 0, (y, z) succ(succ(z)))", 6),
    ("elSigma(pair(1, 2), (x, y) y)", 2), ("elPlus(inr(4), (x) 0, (y) succ(y))", 5),
    ("elList(cons(cons(eps, 7), 8), 0, (x, y, z) succ(z))", 2), ("elN1(star, 9)", 9),
    ("id(3)", 0),
])
def test_closed_terms(src, expected):
    assert value(src) == expected


def test_environment():
    assert value("pair(x, succ(y))", {"x": 1, "y": 2}) == pca.pair(1, 3)


def test_the_three_lambdas_coincide():
    codes = {value(f"{lam} x. pair(x, x)") for lam in ("lam", "lamimp", "lamall")}
    assert len(codes) == 1


def test_worked_example_program():
    t = S.parse_term("Idhat(Id(N, x, x), y, z)")
    shown = pca.pretty(interp.closed_program(t, ["x", "y", "z"]))
    assert shown == "Λx.Λy.Λz.{p}(12,{p}({p}(12,{p}({p}(1,2),{p}(x,x))),{p}(y,z)))"


def test_code_tags():
    assert pca.proj1(value("Nhat")) == interp.CODE_TAGS["N"]
    assert pca.proj1(value("Pihat(x : N1, Nhat)")) == interp.CODE_TAGS["Pi"]


def test_seventeen_conversions():
    assert len(interp.conversion_pairs()) == 17


def test_unbound_variable():
    with pytest.raises(interp.UnboundVariable):
        interp.interpret(S.parse_term("succ(q)"), ())

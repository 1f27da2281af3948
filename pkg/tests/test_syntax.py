import pytest
from hypothesis import given, strategies as st

from mfreal import syntax as S

names = st.sampled_from(["x", "y", "z"])


def terms(depth=3):
    leaves = st.one_of(names.map(S.Var), st.just(S.Star()), st.just(S.Zero()), st.just(S.Eps()))
    if depth == 0:
        return leaves
    sub = terms(depth - 1)
    return st.one_of(
        leaves,
        sub.map(S.Succ),
        st.tuples(sub, sub).map(lambda p: S.Pair(*p)),
        st.tuples(sub, sub).map(lambda p: S.Ap(*p)),
        st.tuples(names, sub).map(lambda p: S.Lam(*p)),
        st.tuples(sub, names, names, sub).map(lambda p: S.ElSigma(*p)),
        st.tuples(sub, names, sub, names, sub).map(lambda p: S.ElPlus(*p)),
    )


@given(terms())
def test_show_parse_round_trip(t):
    assert S.parse_term(S.show(t)) == t


@given(terms(), names, terms(1))
def test_substitution_avoids_capture(t, x, a):
    out = S.substitute(t, x, a)
    # every free variable of the result comes from t (other than x) or from a
    allowed = (S.free_vars(t) - {x}) | (S.free_vars(a) if x in S.free_vars(t) else set())
    assert S.free_vars(out) <= allowed


@given(terms(), names)
def test_substituting_a_variable_for_itself_is_identity(t, x):
    assert S.alpha_eq(S.substitute(t, x, S.Var(x)), t)


def test_capture_is_avoided_under_binders():
    t = S.parse_term("lam y. pair(x, y)")
    out = S.substitute(t, "x", S.Var("y"))
    assert isinstance(out, S.Lam) and out.y != "y"
    assert S.free_vars(out) == {"y"}


def test_alpha_equivalence():
    assert S.alpha_eq(S.parse_term("lam x. x"), S.parse_term("lam y. y"))
    assert not S.alpha_eq(S.parse_term("lam x. y"), S.parse_term("lam y. y"))
    assert S.alpha_eq(S.parse_type("Pi x : N. Id(N, x, x)"), S.parse_type("Pi z : N. Id(N, z, z)"))


@pytest.mark.parametrize("text", [
    "|- cont",
    "x : N, y : N1 |- cont",
    "|- N0 set",
    "|- Pi x : N. N set",
    "|- tau(Bothat) = Bot props",
    "|- N -> props col",
    "|- pair(0, star) in Sigma x : N. N1",
    "x : N |- succ(x) = succ(x) in N",
    "|- Bot -> Bot prop",
])
def test_judgements_round_trip(text):
    j = S.parse_judgement(text)
    assert S.show_judgement(j) == text
    assert S.parse_judgement(S.show_judgement(j)) == j


def test_numerals_parse_to_successors():
    assert S.parse_term("2") == S.Succ(S.Succ(S.Zero()))
    assert S.numeral_value(S.parse_term("3")) == 3


def test_parse_error_reports_position():
    with pytest.raises(S.ParseError):
        S.parse_judgement("|- pair(0, in N")


@pytest.mark.parametrize("A, code", [
    ("N0", "N0hat"), ("N", "Nhat"), ("List(N1)", "Listhat(N1hat)"),
    ("N + N1", "Plushat(Nhat, N1hat)"), ("Pi x : N1. N", "Pihat(x : N1, Nhat)"),
    ("Id(N, 0, 1)", "Idhat(N, 0, 1)"),
])
def test_hat(A, code):
    assert S.show(S.hat(S.parse_type(A))) == code


def test_strata():
    assert S.stratum_of(S.parse_type("N")) == "set"
    assert S.stratum_of(S.parse_type("Bot")) == "props"
    assert S.fits("props", "col") and not S.fits("col", "set")

import pytest

from mfreal import pca, principles as P
from mfreal import syntax as S
from mfreal.logic import Budget


def test_extfun_realizer_is_the_constant_zero_function():
    code = P.extfun_realizer()
    assert pca.pretty(pca.decode(code)) == "Λx.Λx'.Λx''.0"
    assert code == 93


@pytest.mark.parametrize("name", ["extfun", "ac", "ac-unique", "ct"])
def test_validations_hold(name):
    assert P.VALIDATORS[name]().verdict.holds


def test_ct_lambda_on_a_few_points():
    rep = P.validate_ct_lambda(functions=P.CT_FUNCTIONS[:3], xs=range(6))
    assert rep.verdict.holds and len(rep.instances) == 3


def test_ct_witness_rejects_a_wrong_code():
    budget = Budget()
    f = P._value("lam x. succ(x)")
    g = P._value("lam x. x")
    out = P._apply_value(P.ct_lambda_realizer(), f, budget)
    e, h = pca.unpair(out)
    assert P.check_ct_witness(e, f, h, 3, budget).holds
    assert P.check_ct_witness(e, g, h, 3, budget).fails


def test_ac_counterexample_shows_the_failure():
    out = P.ac_counterexample()
    assert out["premise"]["status"] == "Holds"
    assert out["function_member"]["status"] == "Fails"


@pytest.mark.parametrize("text", [
    "forall x. exists y. y = succ(x)",
    "exists y. y = add(2, 3)",
    "forall x. (x = 0 | exists y. x = succ(y))",
    "0 = 1 -> 0 = 0",
    "(0 = 0 & 1 = 1)",
])
def test_lemma_realiz(text):
    v = P.lemma_realiz_check(P.parse_ha(text))
    assert not v.fails


def test_ha_embedding():
    assert S.show(P.embed_ha(P.parse_ha("exists y. y = x"))) == "Exists y : N. Id(N, y, x)"


def test_kleene_realizability_of_a_false_equation():
    assert P.kleene_realizes(0, P.parse_ha("0 = 1")).fails


def test_lemma_suite_small():
    out = P.run_lemma_suite(seed=2, count=20)
    assert out["total"] == 20 and out["disagreements"] == 0

import pytest

from mfreal import interp, pca
from mfreal import realizability as R
from mfreal import syntax as S
from mfreal.logic import Budget

T = S.parse_type


def test_bottom_has_no_realizers():
    assert all(R.realizes(n, S.Bot()).fails for n in range(50))


@pytest.mark.parametrize("n, A, expected", [
    (0, "N1", True), (1, "N1", False), (7, "N", True), (0, "N0", False),
    (pca.pair(0, 3), "N + N1", True), (pca.pair(1, 3), "N + N1", False),
    (0, "Id(N, 2, 2)", True), (0, "Id(N, 2, 3)", False),
    (pca.pair(0, 0), "Id(N, 0, 0) & Id(N, 1, 1)", True),
])
def test_membership(n, A, expected):
    v = R.member(n, T(A))
    assert not v.unknown and v.holds is expected


def test_functions():
    succ = pca.lam(pca.App(pca.Prim(pca.SUCC), pca.Var(0)))
    assert R.member(succ, T("Pi x : N1. N")).holds
    assert R.member(succ, T("Pi x : N1. N1")).fails


def test_proof_irrelevance_of_propositions():
    assert R.equiv(0, 9, T("Id(N, 1, 1)")).holds


def test_equivalence_is_numeric_on_numerical_sets():
    assert R.equiv(3, 3, T("N")).holds and R.equiv(3, 4, T("N")).fails


@pytest.mark.parametrize("A, kind", [
    ("N0", "empty"), ("N1", "finite"), ("N1 + N1", "finite"), ("N", "numeric"),
    ("Pi x : N. N", "opaque"),
])
def test_carriers(A, kind):
    assert R.classify_carrier(T(A)).kind == kind


def test_type_equality_of_decoded_small_propositions():
    assert R.type_equal(T("tau(Bothat)"), T("Bot")).holds


def test_small_propositions_are_members_of_props():
    bothat = interp.evaluate(S.parse_term("Bothat")).value
    assert R.member(bothat, S.PropS()).holds
    assert R.member(pca.pair(1, 2), S.PropS(), budget=Budget()).fails

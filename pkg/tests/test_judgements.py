import pytest

from mfreal import judgements
from mfreal import syntax as S
from mfreal.logic import Budget

J = S.parse_judgement


@pytest.mark.parametrize("text, status", [
    ("|- star in N1", "Holds"),
    ("|- 1 in N1", "Fails"),
    ("|- N + N1 set", "Holds"),
    ("|- inl(2) in N + N1", "Holds"),
    ("|- elN1(star, 3) = 3 in N", "Holds"),
    ("|- elN1(star, 3) = 4 in N", "Fails"),
    ("|- id(0) in Id(N, 0, 1)", "Fails"),
    ("|- tau(Bothat) = Bot props", "Holds"),
    ("|- lam x. succ(x) in Pi x : N1. N", "Holds"),
    ("|- lam x. x in Pi x : N. N1", "Fails"),
    ("x : N1 |- elN1(x, 0) in N", "Holds"),
])
def test_check_judgement(text, status):
    assert judgements.check_judgement(J(text), Budget()).status == status


def test_malformed_judgement_is_rejected():
    with pytest.raises(judgements.MalformedJudgement):
        judgements.interpret_judgement(J("x : N |- y in N"))


def test_small_conversion_suite():
    rep = judgements.run_conversion_suite(seed=3, size=20)
    assert rep.total == 17 * 20 and rep.disagree == 0


def test_small_substitution_suite():
    rep = judgements.run_substitution_suite(seed=3, size=50)
    assert rep.total == 50 and rep.disagree == 0


def test_substitution_of_a_closed_term():
    v = judgements.check_substitution(S.parse_term("pair(x, succ(x))"), "x", S.parse_term("2"))
    assert v.holds


def test_coding_condition():
    assert judgements.check_coding(S.parse_type("Sigma x : N1. N + N1")).holds


def test_corpus_is_well_formed():
    entries = judgements.load_corpus()
    ders = judgements.load_corpus_derivations()
    assert len(entries) == len(ders) >= 80
    assert sum(e.expected == "Unknown" for e in entries) <= 10
    for e, d in zip(entries, ders):
        assert S.judgement_alpha_eq(e.judgement, d.conclusion), e.text


def test_corpus_sets_are_closed_and_codable():
    for A in judgements.corpus_sets():
        assert not S.free_vars(A)


def test_parse_corpus():
    rows = judgements.parse_corpus("# comment\n|- star in N1 ;; Holds\n|- N set ;; Unknown ;; why\n")
    assert [r.expected for r in rows] == ["Holds", "Unknown"] and rows[1].note == "why"

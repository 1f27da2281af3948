import pytest

from mfreal import rules as R
from mfreal import syntax as S

J = S.parse_judgement

LAM_X = '''
(I-Pi "|- lam x. x in Pi x : N. N"
  (var "x : N |- x in N"
    (F-c "x : N |- cont"
      (F-N "|- N set")))
  (F-N "x : N |- N set")
  (F-N "|- N set"))'''


def test_leaf_f_em():
    assert R.check_derivation(R.parse_derivation('(F-Em "|- N0 set")')).ok


def test_i_s_under_the_empty_context():
    assert R.check_derivation(R.parse_derivation('(I-S "|- star in N1")')).ok


def test_mis_instantiated_c_s_fails_at_the_root():
    good = R.infer("C-S", R.infer("set-into-col", R.infer("F-N", context=(("z", S.N1()),))),
                   R.infer("I1-N"))
    assert R.check_derivation(good).ok
    bad = R.Derivation("C-S", J("|- elN1(star, 0) = 1 in N"), good.premises)
    res = R.check_derivation(bad)
    assert not res.ok and res.path == () and res.rule == "C-S"
    assert "conclusion" in res.message


def test_error_path_points_at_the_failing_premise():
    d = R.parse_derivation(LAM_X.replace('(F-N "x : N |- N set")', '(S "x : N |- N1 set")'))
    res = R.check_derivation(d)
    assert not res.ok and res.path == () and "premise 2" in res.message
    d = R.parse_derivation(LAM_X.replace('(F-N "|- N set")))', '(F-N "|- N1 set")))'))
    res = R.check_derivation(d)
    assert not res.ok and res.where() == "root.1.1.1"


def test_round_trip_of_the_text_format():
    d = R.parse_derivation(LAM_X)
    assert R.check_derivation(d).ok
    assert R.parse_derivation(R.show_derivation(d)) == d


def test_binders_are_matched_up_to_alpha():
    d = R.parse_derivation(LAM_X)
    renamed = R.Derivation(d.rule, J("|- lam y. y in Pi z : N. N"), d.premises)
    # the premises fix the bound name through their contexts, the conclusion only up to α
    assert R.check_derivation(renamed).ok


def test_xi_is_absent():
    assert R.find_rule("xi") is None and R.find_rule("ξ") is None
    body = R.parse_derivation('''
      (ref "x : N |- x = x in N" (var "x : N |- x in N" (F-c "x : N |- cont" (F-N "|- N set"))))''')
    concl = J("|- lam x. x = lam x. x in Pi x : N. N")
    for name in ("xi", "sub", "sub_m", "ref", "conv-eq", "eq-Pi"):
        assert not R.check_derivation(R.Derivation(name, concl, (body,))).ok


def test_set_has_no_elimination():
    names = {r.name for r in R.rule_table() if r.group == "Set"}
    assert not any(n.startswith(("E-", "C-")) for n in names)
    d = R.parse_derivation('(E-Set "|- star in N1" (Se_s "|- N1hat in Set"))')
    assert not R.check_derivation(d).ok


def test_table_contents():
    pr5 = R.find_rule("Pr₅")
    assert pr5 is not None and pr5.conclusion.text == "Idhat(A, a, b) in props"
    for name in ("Se_Π", "Se_Σ", "Se_e", "Se_s", "Se_l", "Se_u", "sp-i-p", "sub_m", "subT_m",
                 "E-Πm", "E-∀m", "F-Fun", "I-Fun", "E-Fun", "βC-Fun", "conv", "conv-eq",
                 "prop_s-into-prop", "prop_s-into-set", "set-into-col", "prop-into-col"):
        assert R.find_rule(name) is not None, name
    for i in range(1, 8):
        assert R.find_rule(f"Pr{i}") and R.find_rule(f"eq-Pr{i}")
    names = [r.name for r in R.rule_table()]
    assert len(names) == len(set(names))


def test_arity_mismatch():
    d = R.Derivation("F-list", J("|- List(N) set"), ())
    assert "expects 1 premises" in R.check_derivation(d).message


def test_stratum_is_shared_across_a_rule():
    d = R.parse_derivation('''
      (tra-T "|- N = N set"
        (ref-T "|- N = N set" (F-N "|- N set"))
        (set-into-col-eq "|- N = N col" (ref-T "|- N = N set" (F-N "|- N set"))))''')
    assert not R.check_derivation(d).ok


def test_substitution_rules():
    tid = R.parse_derivation('''
      (F-Id "x : N |- Id(N, x, x) prop"
        (set-into-col "x : N |- N col" (F-N "x : N |- N set"))
        (var "x : N |- x in N" (F-c "x : N |- cont" (F-N "|- N set")))
        (var "x : N |- x in N" (F-c "x : N |- cont" (F-N "|- N set"))))''')
    ref = R.infer("ref", R.infer("I1-N"))
    d = R.substitution("subT", tid, ref)
    assert S.show_judgement(d.conclusion) == "|- Id(N, 0, 0) = Id(N, 0, 0) prop"
    assert R.check_derivation(d).ok
    bad = R.Derivation("subT", J("|- Id(N, 1, 0) = Id(N, 0, 0) prop"), d.premises)
    assert not R.check_derivation(bad).ok


def test_eliminator_with_dependent_branches():
    d = R.infer("E-N",
                R.infer("set-into-col", R.infer("F-N", context=(("z", S.Nat()),))),
                R.infer("I1-N"), R.infer("I1-N"),
                R.infer("I2-N", R.variable(R.extend(R.infer("F-N", context=(("y", S.Nat()),)),
                                                    "z"), "z")))
    assert S.show_judgement(d.conclusion) == "|- elN(0, 0, (y, z) succ(z)) in N"
    assert R.check_derivation(d).ok


def test_infer_needs_undetermined_metavariables():
    with pytest.raises(R.RuleError):
        R.infer("F-Sigma_s")


def test_syntax_errors():
    with pytest.raises(R.DerivationSyntaxError):
        R.parse_derivation('(F-N "|- N set"')
    with pytest.raises(R.DerivationSyntaxError):
        R.parse_derivation('(F-N |- N set)')


def test_shipped_derivations_all_check():
    from mfreal.judgements import load_corpus_derivations
    ders = load_corpus_derivations()
    assert ders and all(R.check_derivation(d).ok for d in ders)

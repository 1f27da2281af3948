import json

import pytest

from mfreal import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_interp_star_from_a_file(tmp_path, capsys):
    f = tmp_path / "star.mtt"
    f.write_text("star\n")
    code, out, _ = run(capsys, "interp", "--in", str(f))
    assert code == 0 and out.strip() == "0"


def test_interp_program(capsys):
    code, out, _ = run(capsys, "interp", "Idhat(Id(N, x, x), y, z)", "--vars", "x,y,z",
                       "--program")
    assert out.strip() == "Λx.Λy.Λz.{p}(12,{p}({p}(12,{p}({p}(1,2),{p}(x,x))),{p}(y,z)))"


def test_eval_with_bindings(capsys):
    code, out, _ = run(capsys, "eval", "pair(x, succ(y))", "--bind", "x=1", "--bind", "y=2")
    # Cantor pairing of (1, 3): 4 * 5 / 2 + 3
    assert code == 0 and out.strip() == "13"


def test_eval_unbound_is_a_usage_error(capsys):
    code, _, err = run(capsys, "eval", "succ(y)")
    assert code == 64 and "unbound" in err


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "|- star in N1")[0] == 0
    assert run(capsys, "check", "|- 1 in N1")[0] == 1
    unknown = "|- Pihat(x : N1, Nhat) in Set"
    assert run(capsys, "check", unknown)[0] == 0
    assert run(capsys, "check", unknown, "--strict")[0] == 2


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "|- star in N1", "--format", "json")
    body = json.loads(out)
    assert body["schema"] == 1 and body["results"][0]["verdict"]["status"] == "Holds"


def test_setcode_json_uses_decimal_strings(capsys):
    code, out, _ = run(capsys, "setcode", "N + N1", "--check", "--format", "json")
    body = json.loads(out)
    assert code == 0 and isinstance(body["code"], str) and body["code"].isdigit()
    assert body["coding"]["status"] == "Holds"


def test_suite_conversions(capsys):
    code, out, _ = run(capsys, "suite", "--which", "conversions", "--seed", "1", "--size", "100",
                       "--format", "json")
    body = json.loads(out)
    assert code == 0 and body["reports"][0]["disagree"] == 0
    assert body["reports"][0]["total"] == 1700


def test_realize_extfun(capsys):
    code, out, _ = run(capsys, "realize", "--principle", "extfun")
    assert code == 0 and out.strip() == "93"


def test_realize_with_validation(capsys):
    code, out, _ = run(capsys, "realize", "--principle", "ac", "--validate")
    assert code == 0 and "Holds" in out


def test_derive_check(tmp_path, capsys):
    good = tmp_path / "good.der"
    good.write_text('; a leaf\n(I-S "|- star in N1")\n(F-Em "|- N0 set")\n')
    assert run(capsys, "derive", "--check", str(good))[0] == 0
    bad = tmp_path / "bad.der"
    bad.write_text('(I-S "|- 0 in N1")\n')
    code, out, _ = run(capsys, "derive", "--check", str(bad))
    assert code == 1 and "error at root" in out


def test_derive_rules(capsys):
    code, out, _ = run(capsys, "derive", "--rules", "--format", "json")
    names = {r["display"] for r in json.loads(out)["rules"]}
    assert code == 0 and {"Pr₅", "Se_Π", "sub_m"} <= names


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "x : N |- succ(x) in N")
    assert code == 0 and out.strip() == "x : N |- succ(x) in N"


def test_malformed_input_is_an_error(capsys):
    code, _, err = run(capsys, "check", "|- star in")
    assert code == 1 and "error" in err


@pytest.mark.parametrize("argv", [[], ["frob"], ["check"], ["realize"], ["suite", "--size", "0"],
                                  ["check", "|- star in N1", "--fuel", "-3"],
                                  ["eval", "x", "--bind", "x"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_help_exits_cleanly(capsys):
    assert run(capsys, "--help")[0] == 0


def test_json_is_deterministic(capsys):
    argv = ["suite", "--which", "substitution", "--size", "50", "--seed", "5", "--format", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

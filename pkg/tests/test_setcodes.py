import pytest

from mfreal import interp, pca, setcodes
from mfreal import syntax as S


def code(src):
    return interp.evaluate(S.hat(S.parse_type(src))).value


@pytest.mark.parametrize("src", ["N0", "N1", "N", "N + N1", "List(N1)", "Sigma x : N. N1",
                                 "Pi x : N1. N", "Id(N, 0, 0)"])
def test_codes_of_sets_are_sets(src):
    assert setcodes.is_set_code(code(src)).holds


def test_junk_is_not_a_set_code():
    assert setcodes.is_set_code(pca.pair(99, 0)).fails


@pytest.mark.parametrize("src, t, expected", [
    ("N1", 0, True), ("N1", 1, False), ("N0", 0, False), ("N", 17, True),
    ("N + N1", pca.pair(1, 0), True), ("N + N1", pca.pair(2, 0), False),
    ("List(N1)", pca.list_encode([0, 0]), True), ("List(N1)", pca.list_encode([0, 1]), False),
    ("Sigma x : N. N1", pca.pair(4, 0), True),
])
def test_membership(src, t, expected):
    v = setcodes.code_member(t, code(src))
    assert v.holds is expected and not v.unknown


def test_membership_and_its_negation_are_complementary():
    c = code("N + N1")
    for t in range(40):
        assert setcodes.code_member(t, c).holds != setcodes.code_not_member(t, c).holds


def test_equality_of_proofs_is_trivial():
    c = code("Id(N, 0, 0)")
    assert setcodes.code_eq(0, 5, c).holds


def test_describe():
    assert setcodes.describe(code("N + N1")) == "(N + N1)"

from hypothesis import given, strategies as st

from mfreal import pca
from mfreal.pca import App, Const, Lam, Prim, Var

nat = st.integers(min_value=0, max_value=10 ** 30)


@given(nat, nat)
def test_unpair_inverts_pair(x, y):
    assert pca.unpair(pca.pair(x, y)) == (x, y)


@given(st.integers(min_value=0, max_value=10 ** 40))
def test_pair_inverts_unpair(n):
    assert pca.pair(*pca.unpair(n)) == n


def test_pairing_on_huge_codes():
    x, y = 3 ** 5000, 7 ** 3000
    assert pca.unpair(pca.pair(x, y)) == (x, y)


def test_small_pairs_follow_cantor():
    # (x + y)(x + y + 1)/2 + y, written out for the first diagonals
    assert [pca.pair(x, y) for x, y in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]] == \
        [0, 1, 2, 3, 4, 5]


@given(st.lists(st.integers(min_value=0, max_value=1000), max_size=8))
def test_lists_round_trip(items):
    code = pca.list_encode(items)
    assert pca.list_decode(code) == items
    assert pca.list_lh(code) == len(items)
    for j, x in enumerate(items):
        assert pca.list_component(code, j) == x


def test_empty_list_is_zero():
    assert pca.list_empty() == 0 and pca.list_lh(0) == 0


@given(st.lists(st.integers(min_value=0, max_value=2 ** 70), max_size=12))
def test_seq_round_trip(items):
    assert pca.seq_decode(pca.seq_encode(items)) == items


def test_programs_round_trip_through_codes():
    progs = [Const(0), Var(0), Lam(App(Prim(pca.SUCC), Var(0))),
             pca.apps(Prim(pca.PAIR), Const(3), Lam(Var(0)))]
    for p in progs:
        assert pca.decode(pca.encode(p)) == p


def test_apply_successor():
    succ = pca.lam(App(Prim(pca.SUCC), Var(0)))
    r = pca.apply(succ, 41)
    assert isinstance(r, pca.Converged) and r.value == 42


def test_projections():
    assert pca.proj1(pca.pair(5, 9)) == 5 and pca.proj2(pca.pair(5, 9)) == 9


def test_divergence_is_reported():
    omega = Lam(App(Var(0), Var(0)))
    r = pca.run(App(omega, omega), 500)
    assert isinstance(r, pca.Diverged)


def test_rec_counts_down():
    add_one = Lam(Lam(App(Prim(pca.SUCC), Var(0)))).code
    assert pca.rec_apply(10, add_one, 7).value == 17


def test_listrec_sums_a_list():
    # Λk.Λx.Λacc. acc + x, by recursion on x with rec
    plus = Lam(Lam(Lam(pca.apps(Prim(pca.REC), Var(0), Lam(Lam(App(Prim(pca.SUCC), Var(0)))),
                                Var(1))))).code
    lst = pca.list_encode([2, 3, 4])
    assert pca.listrec_apply(0, plus, lst).value == 9


def test_kleene_t_accepts_the_trace_and_rejects_others():
    e = pca.lam(pca.apps(Prim(pca.PAIR), Var(0), App(Prim(pca.SUCC), Var(0))))
    tr = pca.trace_of(e, 4)
    assert tr.value == pca.pair(4, 5)
    assert pca.kleene_T(e, 4, tr.code)
    assert pca.kleene_U(tr.code) == tr.value
    assert not pca.kleene_T(e, 5, tr.code)
    assert not pca.kleene_T(e, 4, tr.code + 1)
    assert not pca.kleene_T(e, 4, pca.pair(tr.value + 1, pca.proj2(tr.code)))


def test_trace_of_divergent_run_is_none():
    omega = Lam(App(Var(0), Var(0))).code
    assert pca.trace_of(omega, omega, fuel=300) is None

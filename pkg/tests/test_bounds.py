from math import comb

import pytest
from hypothesis import given, strategies as st

from crossfam import HypothesisError
from crossfam import bounds as B


def test_function_examples():
    assert B.f1(10, 3, 1, 1, 1) == 36
    assert B.f1(10, 3, 1, 1, 2) == 50
    assert B.f2(10, 3, 1, 1) == 17
    assert B.f3(10, 3, 1, 1, 3) == 18
    assert B.g1(8, 3, 1, 1) == 352
    assert (B.g2(20, 1, 1), B.g3(20, 1, 1)) == (38, 66)
    assert B.g4(10, 3, 1) == 512


def test_threshold_examples():
    th = B.thresholds(3, 1, 1)
    assert (th["thm1"], th["thm2"], th["thm3"]) == (50, 100, 20)
    assert B.thresholds(2, 1, 1)["thm1"] == 30
    assert B.thresholds(4, 2, 1)["lemma71"] == 8


@pytest.mark.parametrize("call", [
    lambda: B.f1(10, 3, 1, 1, 4), lambda: B.f1(10, 3, 2, 1, 1), lambda: B.f2(10, 1, 1, 1),
    lambda: B.f3(10, 3, 1, 1, 2), lambda: B.g1(3, 3, 1, 1), lambda: B.g2(3, 3, 1),
    lambda: B.g3(1, 1, 1), lambda: B.g4(10, 1, 1),
])
def test_domain_errors(call):
    with pytest.raises(HypothesisError):
        call()


kts = st.integers(1, 4).flatmap(lambda t: st.tuples(
    st.just(t), st.integers(t + 1, 9), st.integers(1, 4), st.integers(0, 400)))


@given(kts)
def test_f1_matches_direct_sum_and_is_integer(a):
    t, k, s, extra = a
    n = k + extra
    for x in range(t, k + 1):
        got = B.f1(n, k, t, s, x)
        want = (k - t + 1) ** (x - t) * comb(x, t) * comb(n - x, k - x) + sum(
            s * (k - t + 1) ** i * comb(x, t) for i in range(x - t))
        assert got == want and type(got) is int


@given(kts)
def test_f1_at_t_is_star_size(a):
    t, k, s, extra = a
    n = k + extra
    assert B.f1(n, k, t, s, t) ** 2 == comb(n - t, k - t) ** 2


def rows(lemma, **grid):
    return B.check_lemma(lemma, B.BoundGrid(**grid), record_rows=True).rows


def test_ratio_inequality_example_row():
    r = rows("7.1", n=(12, 12), k=(4, 4), t=(2, 2), i=(2, 2), j=(3, 3))
    assert len(r) == 1
    assert (r[0]["lhs"], r[0]["rhs"], r[0]["pass"]) == (27, 45, True)


def test_crossover_relation_both_directions():
    r = rows("7.3iii", n=(20, 20), t=(1, 1), s=(1, 1))
    assert (r[0]["lhs"], r[0]["rhs"], r[0]["relation"], r[0]["pass"]) == (38, 66, "<", True)
    flipped = rows("7.3iii", t=(3, 3), s=(1, 1))
    assert flipped and all(x["relation"] == ">" and x["pass"] for x in flipped)


@pytest.mark.parametrize("lemma", B.LEMMAS)
def test_default_grids_have_no_counterexamples(lemma):
    rep = B.check_lemma(lemma)
    assert rep.verified and rep.points_checked > 0


def test_ratio_sweep_covers_all_i_le_j():
    r = rows("7.1", k=(5, 5), t=(2, 2), n_offsets=(0,))
    assert sorted((x["i"], x["j"]) for x in r) == [(i, j) for i in range(2, 6) for j in range(i, 6)]


def test_g1_vs_g4_guard():
    r = rows("7.6ii")
    assert r
    assert all(x["k"] <= 2 * x["t"] and (x["k"], x["t"]) != (4, 2) for x in r)


def test_f3_max_at_k_on_grid():
    rep = B.check_lemma("7.5i")
    assert rep.verified and rep.points_checked > 100


def test_detects_a_false_inequality():
    # g2 < g3 fails once t >= s + 2, so forcing that relation must produce counterexamples
    part = B.PARTS["7.3iii"]
    bad = 0
    for t in range(1, 5):
        for s in range(1, 4):
            n = 5 * s * (t + 1) ** 2
            lhs, rhs, _ = part.evaluate({"n": n, "t": t, "s": s})
            bad += not lhs < rhs
    assert bad > 0


def test_strict_mode_and_errors():
    with pytest.raises(HypothesisError):
        B.check_lemma("7.9")
    with pytest.raises(HypothesisError):
        B.check_lemma("7.4", B.BoundGrid(n=(10, 10), hypothesis_filter=False))
    with pytest.raises(HypothesisError):
        B.check_lemma("7.4", B.BoundGrid(n=(10, 10)))
    assert B.parts_for("7.2") == ["7.2i", "7.2ii"]
    assert len(B.parts_for("all")) == len(B.PARTS)


def test_csv_layout():
    text = B.rows_to_csv(rows("7.3i", t=(1, 1), s=(1, 1), n_offsets=(0,)))
    head, line = text.splitlines()
    assert head == "lemma_id,n,k,t,s,ell,x,i,j,lhs,rhs,relation,pass"
    assert line.startswith("7.3i,20,,1,1,,,,,")

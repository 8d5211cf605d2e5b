import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from crossfam import HypothesisError, FamilyFormatError, Subset
from crossfam import bounds as B
from crossfam.constructions import (
    ConstructionSpec, build, check_cycle_selection, cross_pair, cycle_selection, h1, h2, m1, m2,
    singleton_room, star_pair, thm2_pair, thm3_cycle_pair, thm3_singleton_pair,
)
from crossfam.core import binomial, dumps, full_set
from crossfam.predicates import common_core, is_cross_t, is_s_almost_cross_t


def elements(fam):
    return [list(S.elements) for S in fam.sets]


def brute(n, k, pred):
    return sorted(list(c) for c in combinations(range(1, n + 1), k) if pred(set(c)))


def test_h1_examples():
    assert len(h1(8, range(1, 9), [1], 3)) == 21
    assert elements(h1(6, [1, 2, 3, 4], [1], 2)) == [[1, 2], [1, 3], [1, 4]]
    assert elements(h1(6, [2, 4], [2, 4], 2)) == [[2, 4]]


def test_h2_examples():
    fam = h2(8, [1, 2, 3, 4], [1], 3)
    assert len(fam) == 6 and all(S.elements[0] == 1 and min(S.elements[1:]) >= 5 for S in fam.sets)
    assert elements(h2(5, range(1, 6), [1, 2], 2)) == [[1, 2]]
    with pytest.raises(HypothesisError):
        h2(5, [1, 2, 3, 4], [1], 3)


def test_m1_examples():
    assert len(m1(6, [1, 2], 2, 1)) == 9
    assert len(m1(10, [1, 2], 3, 1)) == 64
    for t in range(1, 5):
        for n in range(t + 1, 13):
            assert len(m1(n, range(1, t + 2), t + 1, t)) == (t + 1) * (n - t) - t


def test_m2_examples():
    assert elements(m2(6, [1, 2, 3, 4], [1], 1)) == [[2, 3], [2, 4], [3, 4]]
    assert len(m2(8, [1, 2, 3, 4, 5], [1, 2], 2)) == 6
    assert len(m2(5, [1, 2], [1, 2], 2)) == 0


anchors = st.integers(2, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.integers(1, n), min_size=1), st.integers(0, n)))


@given(anchors, st.data())
def test_family_sizes_match_enumeration(a, data):
    n, X, k = a
    W = data.draw(st.sets(st.sampled_from(sorted(X))))
    if len(W) <= k <= len(X):
        got = elements(h1(n, X, W, k))
        assert got == brute(n, k, lambda c: c <= X and W <= c)
        assert len(got) == binomial(len(X) - len(W), k - len(W))
    if len(W) <= k and n - len(X) >= k - len(W):
        got = elements(h2(n, X, W, k))
        assert got == brute(n, k, lambda c: c & X == W)
        assert len(got) == binomial(n - len(X), k - len(W))
    t = len(W)
    if t >= 1 and t + 1 <= n:
        got = elements(m2(n, X, W, t))
        assert got == brute(n, t + 1, lambda c: c <= X and len(c & W) == t - 1)
        assert len(got) == t * binomial(len(X) - t, 2)


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n - 1).flatmap(lambda t: st.tuples(st.just(t), st.integers(t, n)))),
))
def test_m1_matches_enumeration(a):
    n, (t, k) = a
    Y = set(range(1, t + 2))
    if t + 1 <= n:
        assert elements(m1(n, Y, k, t)) == brute(n, k, lambda c: len(c & Y) >= t)


def test_star_examples():
    assert star_pair(5, 2, 1).product == 16
    assert star_pair(30, 2, 1).product == 841
    assert is_cross_t(star_pair(7, 3, 2)).holds


def test_almost_star_pair_example():
    p = thm2_pair(8, 3, 1, 1)
    assert (len(p.F), len(p.G), p.product) == (16, 22, 352) == (16, 22, B.g1(8, 3, 1, 1))
    assert is_s_almost_cross_t(p).holds and not is_cross_t(p).holds
    with pytest.raises(HypothesisError):
        thm2_pair(8, 3, 1, binomial(4, 2) + 1)


def test_singleton_and_cycle_examples():
    p = thm3_singleton_pair(20, 1, 1)
    assert p.product == 38 == B.g2(20, 1, 1)
    assert thm3_singleton_pair(20, 2, 1).product == 53
    assert not is_cross_t(p).holds
    q = thm3_cycle_pair(20, 1, 1)
    assert (len(q.F), len(q.G), q.product) == (3, 22, 66)
    Z, W = Subset.of(20, [1, 2, 3, 4]), Subset.of(20, [1])
    D = cycle_selection(Z, W, 1, 1)
    assert sorted(S.elements for S in D) == [(2, 3), (2, 4), (3, 4)]
    assert check_cycle_selection(D, Z, W, 1, 1).holds


def test_cycle_selection_rejects_bad_degree():
    Z, W = Subset.of(8, [1, 2, 3, 4, 5]), Subset.of(8, [1, 2])
    D = [Subset.of(8, [1, 3, 4]), Subset.of(8, [1, 4, 5]), Subset.of(8, [1, 3, 4])]
    assert not check_cycle_selection(D, Z, W, 2, 1).holds


def test_cross_example():
    p = cross_pair(10, 3, 1)
    assert p.product == 512 == B.g4(10, 3, 1)
    assert is_cross_t(p).holds
    assert len(common_core(p)) == 0


def test_hypothesis_errors():
    with pytest.raises(HypothesisError):
        thm3_cycle_pair(4, 1, 2)
    with pytest.raises(HypothesisError):
        thm3_singleton_pair(3, 1, 5)
    with pytest.raises(HypothesisError):
        cross_pair(5, 2, 2)
    assert singleton_room(20, 1) == binomial(18, 2)


SEEDED_GRID = [(kind, n, k, t, s)
               for t in (1, 2, 3) for k in range(t + 1, t + 4) for s in (1, 2, 3)
               for n in range(k + 1, 21)
               for kind in ("thm2_pair", "thm3_singleton_pair", "thm3_cycle_pair")
               if kind == "thm2_pair" or k == t + 1]


def _make(kind, n, k, t, s, seed):
    if kind == "thm2_pair":
        return thm2_pair(n, k, t, s, variant_seed=seed)
    return {"thm3_singleton_pair": thm3_singleton_pair,
            "thm3_cycle_pair": thm3_cycle_pair}[kind](n, t, s, variant_seed=seed)


def _expected(kind, n, k, t, s):
    return {"thm2_pair": lambda: B.g1(n, k, t, s), "thm3_singleton_pair": lambda: B.g2(n, t, s),
            "thm3_cycle_pair": lambda: B.g3(n, t, s)}[kind]()


@pytest.mark.slow
def test_seeded_variants_keep_their_properties():
    points = 0
    for kind, n, k, t, s in SEEDED_GRID:
        try:
            _make(kind, n, k, t, s, None)
        except HypothesisError:
            continue
        points += 1
        want = _expected(kind, n, k, t, s)
        for seed in range(100):
            p = _make(kind, n, k, t, s, seed)
            assert p.product == want, (kind, n, k, t, s, seed)
            assert is_s_almost_cross_t(p).holds, (kind, n, k, t, s, seed)
            assert not is_cross_t(p).holds, (kind, n, k, t, s, seed)
    assert points > 100


def test_large_n_seeded_singleton_uses_sampling():
    p = thm3_singleton_pair(400, 3, 4, variant_seed=2**64 - 1)
    assert p.product == B.g2(400, 3, 4)
    assert is_s_almost_cross_t(p).holds


def test_spec_roundtrip_and_build():
    spec = ConstructionSpec("thm2_pair", {"n": 8, "k": 3, "t": 1, "s": 1}, variant_seed=7)
    again = ConstructionSpec.from_json(json.loads(dumps(spec.to_json())))
    assert again == spec
    assert dumps(build(again).to_json()) == dumps(thm2_pair(8, 3, 1, 1, variant_seed=7).to_json())
    fam = build(ConstructionSpec("h2", {"n": 8, "k": 3}, {"X": [1, 2, 3, 4], "W": [1]}))
    assert len(fam) == 6
    assert len(build(ConstructionSpec("m1", {"n": 6, "k": 2, "t": 1}))) == 9


def test_spec_rejects_bad_input():
    with pytest.raises(FamilyFormatError):
        ConstructionSpec("moebius", {})
    with pytest.raises(FamilyFormatError):
        ConstructionSpec("thm2_pair", {}, variant_seed=2**64)
    with pytest.raises(HypothesisError):
        build(ConstructionSpec("thm2_pair", {"n": 8}))

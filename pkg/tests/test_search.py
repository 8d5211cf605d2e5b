import json

import pytest

from crossfam import CapExceeded, Params
from crossfam.constructions import star_pair, thm2_pair
from crossfam.core import dumps
from crossfam.predicates import FamilyPair, is_s_almost_cross_t
from crossfam.core import SetFamily
from crossfam.search import (
    brute_force_max, construction_products, maximality_scan, naive_oracle_max,
)

C42 = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
# frozen from naive_oracle_max; witness F = G in every case
ORACLE = {
    (4, 2, 1, 1): (36, C42),
    (4, 2, 1, 2): (36, C42),
    (5, 2, 1, 1): (36, C42),
    (5, 2, 1, 2): (49, [[1, 2], [1, 3], [1, 4], [1, 5], [2, 3], [2, 4], [2, 5]]),
}


@pytest.mark.parametrize("p", list(ORACLE))
@pytest.mark.parametrize("core", [False, True])
def test_brute_force_matches_frozen_oracle(p, core):
    res = brute_force_max(Params(*p), core)
    value, witness = ORACLE[p]
    assert res.max_product == value
    assert res.witness.F.to_json()["sets"] == witness == res.witness.G.to_json()["sets"]
    assert is_s_almost_cross_t(res.witness).holds


@pytest.mark.parametrize("p", [(4, 2, 1, 1), (4, 2, 1, 2), (4, 3, 2, 1), (4, 2, 2, 1)])
@pytest.mark.parametrize("core", [False, True])
def test_brute_force_matches_live_oracle(p, core):
    fast, slow = brute_force_max(Params(*p), core), naive_oracle_max(Params(*p), core)
    assert fast.max_product == slow.max_product
    assert fast.to_json()["witness"] == slow.to_json()["witness"]


def test_vacuous_allowance():
    assert brute_force_max(Params(4, 2, 1, 6)).max_product == 36
    assert naive_oracle_max(Params(4, 2, 1, 6)).max_product == 36


def test_examined_counts_every_pair_once():
    res = brute_force_max(Params(4, 2, 1, 1))
    assert 0 < res.pairs_examined <= 63 * 63
    assert naive_oracle_max(Params(4, 2, 1, 1)).pairs_examined == 63 * 63


@pytest.mark.parametrize("nk", [(4, 2), (5, 2), (4, 3), (6, 5), (5, 4)])
def test_core_constraint_and_s_monotonicity(nk):
    n, k = nk
    for t in range(1, k + 1):
        prev = 0
        for s in range(1, 4):
            free = brute_force_max(Params(n, k, t, s)).max_product
            tied = brute_force_max(Params(n, k, t, s), True).max_product
            assert free >= tied
            assert free >= prev
            prev = free


def test_constructions_are_feasible_points():
    for p in [(4, 2, 1, 1), (5, 2, 1, 1), (5, 2, 1, 2), (6, 5, 4, 1), (5, 3, 2, 1)]:
        best = brute_force_max(Params(*p)).max_product
        for name, value in construction_products(Params(*p)).items():
            assert value <= best, (p, name)


def test_caps():
    with pytest.raises(CapExceeded):
        brute_force_max(Params(6, 3, 1, 1))
    with pytest.raises(CapExceeded):
        naive_oracle_max(Params(6, 2, 1, 1))


def test_json_excludes_timing_by_default():
    res = brute_force_max(Params(4, 2, 1, 1))
    assert "wall_time_s" not in res.to_json()
    assert res.to_json(timing=True)["wall_time_s"] >= 0
    assert json.loads(dumps(res.to_json()))["max_product"] == 36


def test_serial_and_parallel_identical(threads_env):
    outs = []
    for n in (1, 2, 4):
        threads_env(n)
        outs.append(dumps(brute_force_max(Params(5, 2, 1, 2), True).to_json()))
        outs.append(dumps(maximality_scan(thm2_pair(30, 3, 1, 2), verbose=True).to_json()))
    assert len(set(outs[0::2])) == 1 and len(set(outs[1::2])) == 1


def test_maximality_examples():
    assert maximality_scan(star_pair(5, 2, 1, 1)).holds
    lone = SetFamily.from_lists(5, 2, [[1, 2]])
    v = maximality_scan(FamilyPair(lone, lone, Params(5, 2, 1, 1)), verbose=True)
    assert not v.holds and {"candidate": [1, 3], "side": "F"} in v.violations


@pytest.mark.slow
def test_threshold_scale_pair_is_maximal():
    p = thm2_pair(100, 3, 1, 1)
    assert (len(p.F), len(p.G)) == (292, 4852)
    assert maximality_scan(p).holds

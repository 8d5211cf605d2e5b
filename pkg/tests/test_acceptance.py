"""A1-A9, each at its stated tolerance and runtime budget; prints one line per criterion."""

import pytest

from crossfam import acceptance as acc

BUDGET_S = {"A1": 60, "A2": 120, "A3": 300, "A4": 60, "A5": 60, "A6": 120, "A7": 300, "A8": 60, "A9": 600}


def report(res, log):
    log.append(res.line())
    print(res.line())
    if res.failures:
        print(f"  first failures: {res.failures[:3]}")


@pytest.mark.parametrize("cid", list(acc.RUNNERS))
def test_criterion(cid, acceptance_log):
    res = acc.run_all([cid])[0]
    report(res, acceptance_log)
    assert res.passed, res.failures[:5]
    assert res.elapsed < BUDGET_S[cid]


def test_a1_covers_every_kind():
    res = acc.a1_constructions(max_n=10)
    assert res.passed
    assert set(res.detail["pairs"]) == {"star_pair", "thm2_pair", "thm3_singleton_pair",
                                       "thm3_cycle_pair", "cross_pair"}


def test_a3_values():
    res = acc.a3_oracle(params=((4, 2, 1, 1),))
    assert res.passed and res.detail["max_product"]["(4, 2, 1, 1)"] == 36


def test_a7_details():
    res = acc.a7_maximality()
    assert res.detail == {"sizes": [292, 4852], "tau": [1, 2], "covers_G": [[1, 2], [1, 3], [1, 4]]}


def test_a8_choice_rule():
    assert acc.crossover_choice(3, 1) == "thm3_singleton_pair"
    assert acc.crossover_choice(2, 1) == "thm3_cycle_pair"


def test_runner_detects_failure():
    res = acc.CriterionResult("AX", "probe")
    res.expect(True)
    res.expect(False, why="probe")
    assert not res.passed and res.failures == [{"why": "probe"}]
    assert "AX FAIL" in res.line()

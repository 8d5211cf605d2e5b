import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from crossfam import (
    CrossfamError, FamilyFormatError, Params, SetFamily, Subset, binomial,
    enumerate_k_subsets, intersection_size,
)
from crossfam.core import dumps, family_from_json, full_set, k_subset_masks, mask_of


@pytest.mark.parametrize("n,r,want", [(30, 3, 4060), (5, 7, 0), (9, 2, 36), (0, 0, 1), (4, -1, 0)])
def test_binomial_values(n, r, want):
    assert binomial(n, r) == want


def test_pascal_identity_exhaustive():
    for n in range(1, 201):
        for r in range(1, n + 1):
            assert binomial(n, r) == binomial(n - 1, r) + binomial(n - 1, r - 1)


def test_enumerate_examples():
    assert [list(S.elements) for S in enumerate_k_subsets(4, 2)] == [
        [1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
    assert [S.elements for S in enumerate_k_subsets(3, 3)] == [(1, 2, 3)]
    assert [S.elements for S in enumerate_k_subsets(3, 0)] == [()]


def test_enumerate_rejects_k_above_n():
    with pytest.raises(CrossfamError):
        list(enumerate_k_subsets(3, 4))


@pytest.mark.parametrize("n", range(0, 21))
def test_enumeration_strictly_increasing(n):
    for k in range(0, n + 1):
        seq = [S.elements for S in enumerate_k_subsets(n, k)]
        assert len(seq) == binomial(n, k)
        assert all(a < b for a, b in zip(seq, seq[1:]))


def test_masks_agree_with_subsets():
    assert k_subset_masks(5, 3) == [S.mask for S in enumerate_k_subsets(5, 3)]


def test_intersection_examples():
    assert intersection_size(Subset.of(4, [1, 2, 3]), Subset.of(4, [2, 3, 4])) == 2
    assert intersection_size(Subset.of(4, [1, 2]), Subset.of(4, [3, 4])) == 0
    a = Subset.of(9, [2, 5, 7, 9])
    assert intersection_size(a, a) == 4


def test_intersection_rejects_mixed_universes():
    with pytest.raises(CrossfamError):
        intersection_size(Subset.of(4, [1]), Subset.of(5, [1]))


subsets = st.integers(1, 30).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)), st.sets(st.integers(1, n))))


@given(subsets)
def test_intersection_symmetric_and_bounded(data):
    n, x, y = data
    a, b = Subset.of(n, x), Subset.of(n, y)
    assert intersection_size(a, b) == intersection_size(b, a) == len(x & y)
    assert intersection_size(a, b) <= min(len(a), len(b))


def test_subset_validation():
    with pytest.raises(CrossfamError):
        Subset.of(3, [4])
    with pytest.raises(CrossfamError):
        Subset.of(3, [0])
    S = Subset.of(6, [5, 1, 3])
    assert S.elements == (1, 3, 5) and len(S) == 3 and 3 in S and 2 not in S
    assert (S & Subset.of(6, [1, 2])).elements == (1,)
    assert Subset.of(6, [1]).issubset(S)
    assert full_set(4).elements == (1, 2, 3, 4)
    assert mask_of([1, 3]) == 0b101


@pytest.mark.parametrize("n,k,t,s", [(3, 4, 1, 1), (5, 2, 0, 1), (5, 2, 3, 1), (5, 2, 1, -1), (0, 0, 1, 1)])
def test_params_rejects(n, k, t, s):
    with pytest.raises(CrossfamError):
        Params(n, k, t, s)


def test_params_allows_zero_s():
    assert Params(5, 2, 1, 0).s == 0


def test_family_validation_and_order():
    fam = SetFamily.from_lists(5, 2, [[3, 4], [1, 2]])
    assert [S.elements for S in fam.sets] == [(1, 2), (3, 4)]
    with pytest.raises(FamilyFormatError):
        SetFamily.from_lists(5, 2, [[1, 2], [2, 1]])
    with pytest.raises(FamilyFormatError):
        SetFamily.from_lists(5, 2, [[1, 2, 3]])


def test_family_json_roundtrip_and_strictness():
    fam = SetFamily.from_lists(6, 3, [[4, 5, 6], [1, 2, 3]])
    text = dumps(fam.to_json())
    assert family_from_json(json.loads(text)) == fam
    assert dumps(family_from_json(json.loads(text)).to_json()) == text
    for bad in ({"n": 6, "k": 3}, {"n": -1, "k": 3, "sets": []}, {"n": 6, "k": 3, "sets": [[1, 2]]},
                {"n": 6, "k": 3, "sets": [[1, 2, 9]]}, {"n": True, "k": 1, "sets": []}, [1, 2]):
        with pytest.raises(FamilyFormatError):
            family_from_json(bad)


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n).flatmap(lambda k: st.tuples(
        st.just(k), st.lists(st.sampled_from(list(combinations(range(1, n + 1), k))), unique=True))))))
def test_family_set_algebra(data):
    n, (k, members) = data
    half = len(members) // 2
    A = SetFamily.from_lists(n, k, members[:half])
    Bf = SetFamily.from_lists(n, k, members[half:])
    U = A.union(Bf)
    assert len(U) == len(members)
    assert A.issubfamily(U) and Bf.issubfamily(U)
    assert U.difference(Bf) == A

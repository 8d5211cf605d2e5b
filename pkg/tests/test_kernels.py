"""The compiled and pure-Python kernels must agree bit for bit."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from crossfam import kernels
from crossfam.core import Params, k_subset_masks
from crossfam.search import brute_force_max

BACKENDS = kernels.available_backends()
needs_compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")


def each_backend(fn):
    out = []
    for b in BACKENDS:
        with kernels.use_backend(b):
            out.append(fn())
    return out


def mask_lists(max_n=70):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(0, (1 << n) - 1), max_size=40),
        st.lists(st.integers(0, (1 << n) - 1), max_size=40),
        st.integers(1, 5),
    ))


def test_python_backend_always_available():
    assert "python" in BACKENDS
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


@needs_compiled
def test_compiled_is_default():
    assert kernels.backend() == "cython"


@given(mask_lists())
def test_disjoint_counts_agree(data):
    n, a, b, t = data
    want = [sum(1 for y in b if (x & y).bit_count() < t) for x in a]
    for got in each_backend(lambda: kernels.disjoint_counts(a, b, t, n)):
        assert got == want


@given(mask_lists(max_n=20), st.integers(0, 3), st.randoms(use_true_random=False))
def test_addable_flags_agree(data, s, rnd):
    n, cand, other, t = data
    other = list(dict.fromkeys(other))
    counts = [rnd.randint(0, 4) for _ in other]
    in_self = [rnd.random() < 0.2 for _ in cand]
    want = []
    for c, own in zip(cand, in_self):
        hits = [i for i, y in enumerate(other) if (c & y).bit_count() < t]
        want.append(not own and len(hits) <= s and all(counts[i] < s for i in hits))
    for got in each_backend(lambda: kernels.addable_flags(cand, in_self, other, counts, t, s, n)):
        assert got == want


@pytest.mark.parametrize("p", [(4, 2, 1, 1), (4, 2, 2, 1), (5, 2, 1, 2), (4, 3, 2, 1), (6, 5, 3, 2)])
@pytest.mark.parametrize("core", [False, True])
def test_brute_force_backends_identical(p, core):
    outs = each_backend(lambda: brute_force_max(Params(*p), core).to_json())
    assert all(o == outs[0] for o in outs)


@needs_compiled
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_thread_count_does_not_change_results(threads_env, n):
    threads_env(n)
    masks = k_subset_masks(12, 4)
    assert kernels.threads() == n
    got = kernels.disjoint_counts(masks, masks, 2, 12)
    threads_env(1)
    assert got == kernels.disjoint_counts(masks, masks, 2, 12)


def test_bad_thread_env_falls_back(threads_env):
    threads_env("lots")
    assert kernels.threads() >= 1


def test_pure_env_selects_fallback():
    env = dict(os.environ, CROSSFAM_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from crossfam import kernels; print(kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"

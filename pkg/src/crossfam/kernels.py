"""Kernel dispatch: compiled core when importable, pure Python otherwise.

Set ``CROSSFAM_PURE=1`` to force the Python kernels. ``CROSSFAM_THREADS``
sets the worker count for the compiled path; work is always split into the
same fixed blocks, so the thread count never changes a result.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

from . import _pykernels

try:
    if os.environ.get("CROSSFAM_PURE") == "1":
        raise ImportError
    import numpy as np

    from . import _ckernels
except ImportError:
    _ckernels = None
    np = None

BLOCK = 64
_backend = "cython" if _ckernels is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available")
    _backend = name


@contextmanager
def use_backend(name: str):
    prev = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def threads() -> int:
    raw = os.environ.get("CROSSFAM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def _run(jobs) -> list:
    nt = threads()
    if nt == 1 or len(jobs) == 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=nt) as ex:
        return list(ex.map(lambda job: job(), jobs))


def _words(masks: list[int], n: int):
    W = max(1, -(-n // 64))
    arr = np.zeros((len(masks), W), dtype=np.uint64)
    low = (1 << 64) - 1
    for w in range(W):
        shift = 64 * w
        arr[:, w] = [(m >> shift) & low for m in masks]
    return arr


def _chunk_for(rows: int, cols: int) -> int:
    # keep a few thousand pair tests per job at minimum
    return max(256, min(16384, 4_000_000 // max(1, cols)))


def disjoint_counts(a: list[int], b: list[int], t: int, n: int) -> list[int]:
    """Per member of ``a``: how many members of ``b`` it is t-disjoint from."""
    if not a:
        return []
    if _backend == "python" or not b:
        return _pykernels.disjoint_counts(a, b, t, 0, len(a))
    A, B = _words(a, n), _words(b, n)
    out = np.zeros(len(a), dtype=np.int64)
    jobs = [
        (lambda lo=lo, hi=hi: _ckernels.disjoint_counts(A, B, t, lo, hi, out))
        for lo, hi in _ranges(len(a), _chunk_for(len(a), len(b)))
    ]
    _run(jobs)
    return out.tolist()


def addable_flags(
    cand: list[int],
    in_self: list[bool],
    other: list[int],
    other_counts: list[int],
    t: int,
    s: int,
    n: int,
) -> list[bool]:
    if not cand:
        return []
    if _backend == "python":
        return _pykernels.addable_flags(cand, in_self, other, other_counts, t, s, 0, len(cand))
    C = _words(cand, n)
    O = _words(other, n) if other else np.zeros((0, C.shape[1]), dtype=np.uint64)
    S = np.asarray(in_self, dtype=np.uint8)
    K = np.asarray(other_counts, dtype=np.int64)
    out = np.zeros(len(cand), dtype=np.uint8)
    jobs = [
        (lambda lo=lo, hi=hi: _ckernels.addable_flags(C, S, O, K, t, s, lo, hi, out))
        for lo, hi in _ranges(len(cand), _chunk_for(len(cand), len(other)))
    ]
    _run(jobs)
    return [bool(x) for x in out]


def brute_force(
    disj: list[int], fams: list[int], sizes: list[int], cores: list[int],
    t: int, s: int, use_core: bool,
) -> tuple[int, int, int, int]:
    """Reduce fixed F-blocks to ``(best, f_index, g_index, examined)``.

    Blocks are merged in order, keeping the larger product and, on ties, the
    earlier block, which is the lexicographically smaller witness.
    """
    blocks = _ranges(len(fams), BLOCK)
    if _backend == "python":
        results = [
            _pykernels.brute_force_block(disj, fams, sizes, cores, t, s, use_core, lo, hi)
            for lo, hi in blocks
        ]
    else:
        D = np.asarray(disj, dtype=np.uint64)
        Fm = np.asarray(fams, dtype=np.uint64)
        Sz = np.asarray(sizes, dtype=np.int64)
        Co = np.asarray(cores, dtype=np.uint64)
        jobs = [
            (lambda lo=lo, hi=hi: _ckernels.brute_force_block(D, Fm, Sz, Co, t, s, use_core, lo, hi))
            for lo, hi in blocks
        ]
        results = _run(jobs)
    best, wf, wg, examined = 0, -1, -1, 0
    for b, f, g, e in results:
        examined += e
        if b > best:
            best, wf, wg = b, f, g
    return best, wf, wg, examined

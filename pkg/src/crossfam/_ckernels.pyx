# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirrors ``_pykernels`` on word arrays.

Subsets arrive as rows of ``uint64`` words (``W = ceil(n / 64)`` per row).
All loops run without the GIL so the caller can fan blocks out to threads.
"""

from libc.stdint cimport uint64_t, int64_t, uint8_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int meet(const uint64_t[:, ::1] a, Py_ssize_t i,
                     const uint64_t[:, ::1] b, Py_ssize_t j, Py_ssize_t W) noexcept nogil:
    cdef int c = 0
    cdef Py_ssize_t w
    for w in range(W):
        c += __builtin_popcountll(a[i, w] & b[j, w])
    return c


def disjoint_counts(const uint64_t[:, ::1] a, const uint64_t[:, ::1] b, int t,
                    Py_ssize_t lo, Py_ssize_t hi, int64_t[::1] out):
    cdef Py_ssize_t i, j, W = a.shape[1], M = b.shape[0]
    cdef int64_t c
    with nogil:
        for i in range(lo, hi):
            c = 0
            for j in range(M):
                if meet(a, i, b, j, W) < t:
                    c += 1
            out[i] = c


def addable_flags(const uint64_t[:, ::1] cand, const uint8_t[::1] in_self,
                  const uint64_t[:, ::1] other, const int64_t[::1] other_counts,
                  int t, int s, Py_ssize_t lo, Py_ssize_t hi, uint8_t[::1] out):
    cdef Py_ssize_t i, j, W = cand.shape[1], M = other.shape[0]
    cdef int hits
    cdef uint8_t ok
    with nogil:
        for i in range(lo, hi):
            if in_self[i]:
                out[i] = 0
                continue
            hits = 0
            ok = 1
            for j in range(M):
                if meet(cand, i, other, j, W) < t:
                    hits += 1
                    if hits > s or other_counts[j] >= s:
                        ok = 0
                        break
            out[i] = ok


def brute_force_block(const uint64_t[::1] disj, const uint64_t[::1] fams,
                      const int64_t[::1] sizes, const uint64_t[::1] cores,
                      int t, int s, bint use_core, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t N = disj.shape[0], M = fams.shape[0]
    cdef Py_ssize_t fi, gi, i, j, nf
    cdef int64_t best = 0, examined = 0, sf, na
    cdef Py_ssize_t wf = -1, wg = -1
    cdef uint64_t F, G, allowed, notallowed, cf
    cdef Py_ssize_t fbits[64]
    cdef bint ok
    with nogil:
        for fi in range(lo, hi):
            F = fams[fi]
            sf = sizes[fi]
            if sf * N <= best:
                continue
            allowed = 0
            for j in range(N):
                if __builtin_popcountll(disj[j] & F) <= s:
                    allowed |= (<uint64_t>1) << j
            na = __builtin_popcountll(allowed)
            if na == 0 or sf * na <= best:
                continue
            nf = 0
            for i in range(N):
                if (F >> i) & 1:
                    fbits[nf] = i
                    nf += 1
            notallowed = ~allowed
            cf = cores[fi]
            for gi in range(M):
                G = fams[gi]
                if G & notallowed:
                    continue
                if sf * sizes[gi] <= best:
                    continue
                if use_core and __builtin_popcountll(cf & cores[gi]) >= t:
                    continue
                examined += 1
                ok = True
                for i in range(nf):
                    if __builtin_popcountll(disj[fbits[i]] & G) > s:
                        ok = False
                        break
                if ok:
                    best = sf * sizes[gi]
                    wf = fi
                    wg = gi
    return best, wf, wg, examined

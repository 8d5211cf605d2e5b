"""Pure-Python search kernels.

Same contracts as the compiled ``_ckernels`` module, but operating on plain
Python ints. Every function works on an index range ``[lo, hi)`` of its
first argument so the caller can split work into fixed blocks.
"""

from __future__ import annotations


def disjoint_counts(a, b, t, lo, hi):
    """For a[lo:hi], how many members of b meet it in fewer than t elements."""
    out = []
    if t == 1:
        for x in a[lo:hi]:
            c = 0
            for y in b:
                if not x & y:
                    c += 1
            out.append(c)
        return out
    for x in a[lo:hi]:
        c = 0
        for y in b:
            if (x & y).bit_count() < t:
                c += 1
        out.append(c)
    return out


def addable_flags(cand, in_self, other, other_counts, t, s, lo, hi):
    """Flag candidates that can join one side without breaking s-almost.

    A candidate c qualifies when it is not already on that side, at most s
    members of the other side are t-disjoint from it, and each of those
    members currently has strictly fewer than s t-disjoint partners.
    """
    out = []
    for ci in range(lo, hi):
        if in_self[ci]:
            out.append(False)
            continue
        c = cand[ci]
        hits = 0
        ok = True
        for y, cnt in zip(other, other_counts):
            if (c & y).bit_count() < t:
                hits += 1
                if hits > s or cnt >= s:
                    ok = False
                    break
        out.append(ok)
    return out


def brute_force_block(disj, fams, sizes, cores, t, s, use_core, lo, hi):
    """Best |F||G| with F drawn from fams[lo:hi] and G from all of fams.

    ``disj[j]`` is the bitmask (over k-subset indices) of k-subsets t-disjoint
    from k-subset j. ``fams`` lists family bitmasks in lexicographic order of
    their member lists, ``cores`` the element-bitmask intersection of each
    family. Returns ``(best, f_index, g_index, examined)``; the first strict
    improvement is kept, so ties resolve to the lexicographically first pair.
    """
    N = len(disj)
    M = len(fams)
    best = 0
    wf = wg = -1
    examined = 0
    for fi in range(lo, hi):
        F = fams[fi]
        sf = sizes[fi]
        if sf * N <= best:
            continue
        allowed = 0
        for j in range(N):
            if (disj[j] & F).bit_count() <= s:
                allowed |= 1 << j
        na = allowed.bit_count()
        if na == 0 or sf * na <= best:
            continue
        fbits = [i for i in range(N) if F >> i & 1]
        notallowed = ~allowed
        cf = cores[fi]
        for gi in range(M):
            G = fams[gi]
            if G & notallowed:
                continue
            if sf * sizes[gi] <= best:
                continue
            if use_core and (cf & cores[gi]).bit_count() >= t:
                continue
            examined += 1
            for i in fbits:
                if (disj[i] & G).bit_count() > s:
                    break
            else:
                best = sf * sizes[gi]
                wf, wg = fi, gi
    return best, wf, wg, examined

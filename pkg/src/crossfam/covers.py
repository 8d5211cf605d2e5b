"""t-covers, the t-covering number and the family of minimum t-covers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import CrossfamError, HypothesisError, SetFamily, Subset, mask_of


@dataclass(frozen=True)
class CoverResult:
    tau: int
    min_covers: tuple[Subset, ...]
    cover_union: Subset

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "covers": [list(T.elements) for T in self.min_covers],
            "union": list(self.cover_union.elements),
        }


def _check_family(fam: SetFamily, t: int) -> None:
    if len(fam) == 0:
        raise CrossfamError("covering number of an empty family is undefined")
    if not 1 <= t <= fam.k:
        raise HypothesisError(f"need 1 <= t <= k, got t={t} k={fam.k}")


def is_t_cover(T: Subset, fam: SetFamily, t: int) -> bool:
    """True when T meets every member of ``fam`` in at least t elements."""
    if len(fam) == 0:
        raise CrossfamError("t-cover of an empty family is undefined")
    if T.n != fam.n:
        raise CrossfamError(f"T is over [{T.n}], family over [{fam.n}]")
    m = T.mask
    return all((m & S.mask).bit_count() >= t for S in fam.sets)


def _covers_of_size(masks: list[int], t: int, r: int, order: list[int]) -> list[int]:
    """All t-covers with exactly r elements, via include/exclude branching.

    At each node the member with least slack is chosen and its admissible
    elements are tried in ``order`` (descending member frequency); branch i
    includes the i-th element and excludes the earlier ones, so the branches
    partition the remaining search space and no cover is produced twice.
    """
    rank = {e: i for i, e in enumerate(order)}
    found: list[int] = []
    n_free_all = (1 << len(order)) - 1

    def free_elements(mask: int) -> list[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        out.sort(key=rank.__getitem__)
        return out

    def rec(T: int, excluded: int, size: int) -> None:
        best = None
        best_slack = None
        need_total = 0
        for S in masks:
            deficit = t - (S & T).bit_count()
            if deficit <= 0:
                continue
            avail = S & ~T & ~excluded
            slack = avail.bit_count() - deficit
            if slack < 0:
                return
            need_total = max(need_total, deficit)
            if best is None or slack < best_slack:
                best, best_slack = (S, deficit, avail), slack
        if best is None:
            if size == r:
                found.append(T)
            else:
                # T already covers; pad with free elements to reach size r
                free = n_free_all & ~T & ~excluded
                for extra in combinations(free_elements(free), r - size):
                    found.append(T | sum(1 << e for e in extra))
            return
        if size + need_total > r:
            return
        _, _, avail = best
        tried = 0
        for e in free_elements(avail):
            bit = 1 << e
            rec(T | bit, excluded | tried, size + 1)
            tried |= bit

    rec(0, 0, 0)
    return found


def compute_covers(fam: SetFamily, t: int, max_size: int | None = None) -> CoverResult:
    """Covering number and all minimum t-covers (branch and bound).

    Sizes are tried in increasing order starting at t; ``max_size`` caps the
    search and raises if no cover of that size or less exists.
    """
    _check_family(fam, t)
    n = fam.n
    masks = fam.masks
    freq = [0] * n
    for m in masks:
        for i in range(n):
            if m >> i & 1:
                freq[i] += 1
    order = sorted(range(n), key=lambda i: (-freq[i], i))
    limit = n if max_size is None else min(n, max_size)
    for r in range(t, limit + 1):
        found = _covers_of_size(masks, t, r, order)
        if found:
            covers = sorted((Subset(n, m) for m in set(found)), key=lambda T: T.elements)
            union = 0
            for T in covers:
                union |= T.mask
            return CoverResult(r, tuple(covers), Subset(n, union))
    raise CrossfamError(f"no {t}-cover of size <= {limit}")


def naive_covers(fam: SetFamily, t: int, max_size: int | None = None) -> CoverResult:
    """Oracle: test every subset of [n] in order of increasing size."""
    _check_family(fam, t)
    n = fam.n
    members = [frozenset(S.elements) for S in fam.sets]
    limit = n if max_size is None else min(n, max_size)
    for r in range(0, limit + 1):
        hits = [
            c for c in combinations(range(1, n + 1), r)
            if all(len(M.intersection(c)) >= t for M in members)
        ]
        if hits:
            union = sorted(set().union(*hits))
            return CoverResult(
                r, tuple(Subset(n, mask_of(c)) for c in hits), Subset(n, mask_of(union))
            )
    raise CrossfamError(f"no {t}-cover of size <= {limit}")

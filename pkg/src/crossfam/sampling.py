"""Seeded random instances for oracle comparisons and property suites."""

from __future__ import annotations

import random

from .core import Params, SetFamily, Subset, binomial, k_subset_masks
from .predicates import FamilyPair, disjointness_counts


def random_family(rng: random.Random, n: int, k: int, max_members: int = 12) -> SetFamily:
    pool = k_subset_masks(n, k)
    m = rng.randint(1, min(max_members, len(pool)))
    return SetFamily.from_masks(n, k, rng.sample(pool, m))


def random_cover_instance(seed: int, max_n: int = 10, max_k: int = 4) -> tuple[SetFamily, int]:
    """A family with n <= max_n, k <= max_k and a t <= k."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    k = rng.randint(1, min(max_k, n))
    t = rng.randint(1, k)
    return random_family(rng, n, k), t


def _prune(F: list[int], G: list[int], t: int, s: int) -> tuple[list[int], list[int]]:
    # drop the worst offender until every member has at most s t-disjoint partners
    while F and G:
        cf = [sum(1 for g in G if (f & g).bit_count() < t) for f in F]
        cg = [sum(1 for f in F if (f & g).bit_count() < t) for g in G]
        worst_f = max(range(len(F)), key=cf.__getitem__)
        worst_g = max(range(len(G)), key=cg.__getitem__)
        if cf[worst_f] <= s and cg[worst_g] <= s:
            break
        if cf[worst_f] >= cg[worst_g]:
            F.pop(worst_f)
        else:
            G.pop(worst_g)
    return F, G


def random_s_almost_pair(seed: int, max_n: int = 10, max_k: int = 4, max_s: int = 3) -> FamilyPair:
    """Random pair made s-almost cross-t-intersecting by greedy pruning."""
    rng = random.Random(seed)
    while True:
        n = rng.randint(3, max_n)
        k = rng.randint(1, min(max_k, n - 1))
        t = rng.randint(1, k)
        s = rng.randint(1, max_s)
        pool = k_subset_masks(n, k)
        F = rng.sample(pool, rng.randint(1, min(15, len(pool))))
        G = rng.sample(pool, rng.randint(1, min(15, len(pool))))
        F, G = _prune(F, G, t, s)
        if F and G:
            return FamilyPair(SetFamily.from_masks(n, k, F), SetFamily.from_masks(n, k, G),
                              Params(n, k, t, s))


def random_chain_input(seed: int, max_n: int = 12, max_k: int = 5) -> tuple[SetFamily, Subset, Subset, int, int]:
    """(F, H, G1, t, s) meeting the chain-certificate preconditions.

    s is set to |D_F(G1; t)| plus a small random slack so the disjointness
    precondition holds by construction.
    """
    rng = random.Random(seed)
    while True:
        n = rng.randint(4, max_n)
        k = rng.randint(2, min(max_k, n - 1))
        t = rng.randint(1, k - 1)
        F = random_family(rng, n, k, max_members=min(40, binomial(n, k)))
        G1 = Subset.of(n, rng.sample(range(1, n + 1), k))
        outside = [e for e in range(1, n + 1) if e not in G1]
        inside = list(G1.elements)
        a = rng.randint(0, min(t - 1, k))
        b = rng.randint(0 if a else 1, min(len(outside), k))
        if a + b == 0:
            continue
        H = Subset.of(n, rng.sample(inside, a) + rng.sample(outside, b))
        probe = FamilyPair(F, SetFamily.from_masks(n, k, [G1.mask]), Params(n, k, t, 1))
        d = disjointness_counts(probe)[1][0]
        s = max(1, d + rng.randint(0, 2))
        return F, H, G1, t, s


def random_starlike_pair(seed: int, max_n: int = 9) -> FamilyPair | None:
    """A few members of a random star on each side plus at most one stray, pruned.

    Closures of these tend to have small covering numbers, unlike fully
    random seeds. Returns None when pruning empties a side.
    """
    rng = random.Random(seed)
    k = rng.randint(2, 3)
    t = rng.randint(1, k - 1)
    n = rng.randint(2 * k, max(2 * k, max_n))
    s = rng.randint(1, 3)
    pool = k_subset_masks(n, k)
    W = sum(1 << (e - 1) for e in rng.sample(range(1, n + 1), t))
    star = [m for m in pool if m & W == W]

    def side() -> list[int]:
        picks = rng.sample(star, min(len(star), rng.randint(1, 4))) + rng.sample(pool, rng.randint(0, 1))
        return list(dict.fromkeys(picks))

    F, G = _prune(side(), side(), t, s)
    if not (F and G):
        return None
    return FamilyPair(SetFamily.from_masks(n, k, F), SetFamily.from_masks(n, k, G), Params(n, k, t, s))

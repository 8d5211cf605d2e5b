"""Exhaustive extremal search at tiny parameters and large-n maximality scans."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .core import CapExceeded, Params, SetFamily, binomial, k_subset_masks
from .predicates import FamilyPair, Verdict, is_maximal

BRUTE_CAP = 16
NAIVE_CAP = 12


@dataclass
class SearchResult:
    params: Params
    core_constraint: bool
    max_product: int
    witness: FamilyPair | None
    pairs_examined: int
    wall_time: float = field(default=0.0, compare=False)

    def to_json(self, timing: bool = False) -> dict:
        p = self.params
        out = {
            "params": {"n": p.n, "k": p.k, "t": p.t, "s": p.s},
            "core_constraint": self.core_constraint,
            "max_product": self.max_product,
            "witness": None if self.witness is None else self.witness.to_json(),
            "pairs_examined": self.pairs_examined,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 6)
        return out


def _lex_families(N: int, subsets: list[int]) -> tuple[list[int], list[int], list[int]]:
    """Non-empty index sets of range(N) in lexicographic order of their sorted lists.

    Returns family bitmasks, their sizes and the element-mask intersection of
    their members.
    """
    fams: list[int] = []
    sizes: list[int] = []
    cores: list[int] = []
    full = -1

    def walk(start: int, prefix: int, size: int, core: int) -> None:
        for i in range(start, N):
            m = prefix | 1 << i
            c = core & subsets[i]
            fams.append(m)
            sizes.append(size + 1)
            cores.append(c)
            walk(i + 1, m, size + 1, c)

    walk(0, 0, 0, full)
    return fams, sizes, cores


def brute_force_max(params: Params, core_constraint: bool = False) -> SearchResult:
    """Maximum |F||G| over all non-empty s-almost cross-t-intersecting pairs.

    With ``core_constraint`` the members of F and G must have fewer than t
    elements in common overall. The witness is the lexicographically
    smallest (F, G) achieving the maximum.
    """
    n, k, t, s = params.n, params.k, params.t, params.s
    N = binomial(n, k)
    if N > BRUTE_CAP:
        raise CapExceeded(f"C({n},{k}) = {N} exceeds the brute-force cap {BRUTE_CAP}")
    start = time.perf_counter()
    subsets = k_subset_masks(n, k)
    disj = [
        sum(1 << i for i, a in enumerate(subsets) if (a & b).bit_count() < t)
        for b in subsets
    ]
    # cores are kept as element masks below 2**64 for the compiled kernel
    fams, sizes, cores = _lex_families(N, subsets)
    cores = [c & ((1 << n) - 1) for c in cores]
    best, fi, gi, examined = kernels.brute_force(disj, fams, sizes, cores, t, s, core_constraint)
    witness = None
    if best:
        def family(mask: int) -> SetFamily:
            return SetFamily.from_masks(n, k, [subsets[i] for i in range(N) if mask >> i & 1])

        witness = FamilyPair(family(fams[fi]), family(fams[gi]), params)
    return SearchResult(params, core_constraint, best, witness, examined,
                        time.perf_counter() - start)


def naive_oracle_max(params: Params, core_constraint: bool = False) -> SearchResult:
    """Independent oracle for :func:`brute_force_max`: plain loops over member lists."""
    n, k, t, s = params.n, params.k, params.t, params.s
    members = list(combinations(range(1, n + 1), k))
    if len(members) > NAIVE_CAP:
        raise CapExceeded(f"C({n},{k}) = {len(members)} exceeds the oracle cap {NAIVE_CAP}")
    start = time.perf_counter()
    families = sorted(
        [list(c) for r in range(1, len(members) + 1) for c in combinations(members, r)]
    )
    as_sets = [[set(m) for m in fam] for fam in families]

    def feasible(F: list[set], G: list[set]) -> bool:
        for A in F:
            if sum(1 for B in G if len(A & B) < t) > s:
                return False
        for B in G:
            if sum(1 for A in F if len(A & B) < t) > s:
                return False
        if core_constraint:
            common = set(F[0])
            for X in F + G:
                common &= X
            if len(common) >= t:
                return False
        return True

    best = 0
    witness = None
    examined = 0
    for fi, F in enumerate(as_sets):
        for gi, G in enumerate(as_sets):
            examined += 1
            if feasible(F, G) and len(F) * len(G) > best:
                best = len(F) * len(G)
                witness = (fi, gi)
    pair = None
    if witness is not None:
        pair = FamilyPair(SetFamily.from_lists(n, k, families[witness[0]]),
                          SetFamily.from_lists(n, k, families[witness[1]]), params)
    return SearchResult(params, core_constraint, best, pair, examined,
                        time.perf_counter() - start)


def maximality_scan(pair: FamilyPair, verbose: bool = False) -> Verdict:
    """One pass over every k-subset, testing whether it can join either side."""
    return is_maximal(pair, verbose=verbose)


def construction_products(params: Params) -> dict[str, int]:
    """Products of the constructions that exist at these parameters (lower bounds)."""
    from . import constructions as C
    from .core import HypothesisError

    n, k, t, s = params.n, params.k, params.t, params.s
    out = {"star_pair": binomial(n - t, k - t) ** 2}
    attempts = {
        "thm2_pair": lambda: C.thm2_pair(n, k, t, s),
        "cross_pair": lambda: C.cross_pair(n, k, t, s),
    }
    if k == t + 1:
        attempts["thm3_singleton_pair"] = lambda: C.thm3_singleton_pair(n, t, s)
        attempts["thm3_cycle_pair"] = lambda: C.thm3_cycle_pair(n, t, s)
    for name, make in attempts.items():
        try:
            out[name] = make().product
        except HypothesisError:
            continue
    return out

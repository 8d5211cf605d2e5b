"""Definitional predicates on pairs of k-subset families."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .core import (
    CrossfamError,
    FamilyFormatError,
    Params,
    SetFamily,
    Subset,
    k_subset_masks,
)

WITNESS_CAP = 32


@dataclass(frozen=True)
class FamilyPair:
    F: SetFamily
    G: SetFamily
    params: Params

    def __post_init__(self) -> None:
        p = self.params
        for name, fam in (("F", self.F), ("G", self.G)):
            if (fam.n, fam.k) != (p.n, p.k):
                raise FamilyFormatError(
                    f"{name} is over (n={fam.n}, k={fam.k}), params say (n={p.n}, k={p.k})"
                )
            if len(fam) == 0:
                raise FamilyFormatError(f"{name} is empty; pairs must be non-empty")

    @classmethod
    def build(cls, F: SetFamily, G: SetFamily, t: int, s: int) -> "FamilyPair":
        return cls(F, G, Params(F.n, F.k, t, s))

    @property
    def product(self) -> int:
        return len(self.F) * len(self.G)

    def with_s(self, s: int) -> "FamilyPair":
        p = self.params
        return FamilyPair(self.F, self.G, Params(p.n, p.k, p.t, s))

    def to_json(self) -> dict:
        p = self.params
        return {"n": p.n, "k": p.k, "t": p.t, "s": p.s,
                "F": self.F.to_json(), "G": self.G.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "FamilyPair":
        from .core import family_from_json

        if not isinstance(data, dict):
            raise FamilyFormatError("pair must be a JSON object")
        try:
            n, k, t, s = (data[key] for key in ("n", "k", "t", "s"))
        except KeyError as exc:
            raise FamilyFormatError(f"pair is missing field {exc}") from None
        F = family_from_json(data.get("F"))
        G = family_from_json(data.get("G"))
        for v in (n, k, t, s):
            if not isinstance(v, int) or isinstance(v, bool):
                raise FamilyFormatError("pair parameters must be integers")
        return cls(F, G, Params(n, k, t, s))


@dataclass
class Verdict:
    """Outcome of a check; ``holds`` exactly when there are no violations."""

    holds: bool
    violations: list = field(default_factory=list)
    total_violations: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "violations": self.violations,
                "total_violations": self.total_violations}


def _verdict(entries: list, total: int) -> Verdict:
    return Verdict(holds=total == 0, violations=entries, total_violations=total)


def t_disjoint_members(fam: SetFamily, H: Subset, t: int) -> SetFamily:
    """Members F of ``fam`` with |F & H| < t."""
    if H.n != fam.n:
        raise FamilyFormatError(f"H is over [{H.n}], family over [{fam.n}]")
    h = H.mask
    return SetFamily(fam.n, fam.k, tuple(S for S in fam.sets if (S.mask & h).bit_count() < t))


def disjointness_counts(pair: FamilyPair) -> tuple[list[int], list[int]]:
    """|D_G(F;t)| for each F and |D_F(G;t)| for each G, in family order."""
    p = pair.params
    fm, gm = pair.F.masks, pair.G.masks
    return (kernels.disjoint_counts(fm, gm, p.t, p.n),
            kernels.disjoint_counts(gm, fm, p.t, p.n))


def is_cross_t(pair: FamilyPair, verbose: bool = False) -> Verdict:
    """Every member of F meets every member of G in at least t elements."""
    t = pair.params.t
    counts, _ = disjointness_counts(pair)
    total = sum(counts)
    cap = None if verbose else WITNESS_CAP
    entries = []
    for A, c in zip(pair.F.sets, counts):
        if not c:
            continue
        for B in pair.G.sets:
            if cap is not None and len(entries) >= cap:
                break
            m = (A.mask & B.mask).bit_count()
            if m < t:
                entries.append({"F": list(A.elements), "G": list(B.elements), "intersection": m})
        if cap is not None and len(entries) >= cap:
            break
    return _verdict(entries, total)


def is_s_almost_cross_t(pair: FamilyPair, verbose: bool = False) -> Verdict:
    """Each member on either side is t-disjoint from at most s on the other."""
    s = pair.params.s
    cf, cg = disjointness_counts(pair)
    entries = [
        {"side": side, "member": list(S.elements), "disjoint_count": c}
        for side, fam, counts in (("F", pair.F, cf), ("G", pair.G, cg))
        for S, c in zip(fam.sets, counts)
        if c > s
    ]
    total = len(entries)
    if not verbose:
        entries = entries[:WITNESS_CAP]
    return _verdict(entries, total)


def common_core(pair: FamilyPair) -> Subset:
    """Intersection of all members of F and G."""
    n = pair.params.n
    core = (1 << n) - 1
    for S in pair.F.sets:
        core &= S.mask
    for S in pair.G.sets:
        core &= S.mask
    return Subset(n, core)


def _require_s_almost(pair: FamilyPair) -> None:
    v = is_s_almost_cross_t(pair)
    if not v.holds:
        raise CrossfamError(
            f"pair is not {pair.params.s}-almost cross-{pair.params.t}-intersecting "
            f"({v.total_violations} violating members)"
        )


def pair_closure(pair: FamilyPair) -> FamilyPair:
    """Grow the pair to a maximal one by lexicographic first-fit passes.

    Each pass offers every k-subset to F, then every k-subset to G, and
    keeps those whose addition preserves the s-almost property. Passes repeat
    until one adds nothing.
    """
    _require_s_almost(pair)
    p = pair.params
    t, s = p.t, p.s
    cands = k_subset_masks(p.n, p.k)
    F = list(pair.F.masks)
    G = list(pair.G.masks)
    cf_list, cg_list = disjointness_counts(pair)
    cnt = [dict(zip(F, cf_list)), dict(zip(G, cg_list))]
    sides = [F, G]

    def try_add(side: int, c: int) -> bool:
        own, other = sides[side], sides[1 - side]
        own_cnt, other_cnt = cnt[side], cnt[1 - side]
        if c in own_cnt:
            return False
        hits = [y for y in other if (c & y).bit_count() < t]
        if len(hits) > s or any(other_cnt[y] >= s for y in hits):
            return False
        own.append(c)
        own_cnt[c] = len(hits)
        for y in hits:
            other_cnt[y] += 1
        return True

    while True:
        added = 0
        for side in (0, 1):
            for c in cands:
                added += try_add(side, c)
        if not added:
            break
    return FamilyPair(SetFamily.from_masks(p.n, p.k, F), SetFamily.from_masks(p.n, p.k, G), p)


def addable_candidates(pair: FamilyPair) -> list[tuple[int, str]]:
    """Every (k-subset mask, side) whose single addition keeps the pair s-almost.

    Ordered by candidate, F before G for the same candidate.
    """
    p = pair.params
    cands = k_subset_masks(p.n, p.k)
    fm, gm = pair.F.masks, pair.G.masks
    cf, cg = disjointness_counts(pair)
    in_f = [pair.F.contains_mask(c) for c in cands]
    in_g = [pair.G.contains_mask(c) for c in cands]
    to_f = kernels.addable_flags(cands, in_f, gm, cg, p.t, p.s, p.n)
    to_g = kernels.addable_flags(cands, in_g, fm, cf, p.t, p.s, p.n)
    out = []
    for c, a, b in zip(cands, to_f, to_g):
        if a:
            out.append((c, "F"))
        if b:
            out.append((c, "G"))
    return out


def is_maximal(pair: FamilyPair, verbose: bool = False) -> Verdict:
    """No k-subset can join either side without breaking s-almost."""
    _require_s_almost(pair)
    n = pair.params.n
    found = addable_candidates(pair)
    entries = [{"candidate": list(Subset(n, c).elements), "side": side} for c, side in found]
    if not verbose:
        entries = entries[:WITNESS_CAP]
    return _verdict(entries, len(found))

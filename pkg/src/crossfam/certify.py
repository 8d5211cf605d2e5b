"""Executable proof procedures: greedy disjoint sequences and chain certificates."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations

from .core import CrossfamError, SetFamily, Subset, binomial, mask_of
from .predicates import FamilyPair, t_disjoint_members

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequencePair:
    F_seq: tuple[Subset, ...]
    G_seq: tuple[Subset, ...]
    leftover: SetFamily
    bound: int

    @property
    def m(self) -> int:
        return len(self.F_seq)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "bound": self.bound,
            "F_seq": [list(S.elements) for S in self.F_seq],
            "G_seq": [list(S.elements) for S in self.G_seq],
            "leftover": self.leftover.to_json(),
        }


def sequence_properties(seq: SequencePair, F: SetFamily, t: int) -> dict[str, bool]:
    """Check (a) |F_i & G_i| < t, (b) |F_i & G_j| >= t for j < i, (c) F is the union of D_F(G_i; t)."""
    a = all((f.mask & g.mask).bit_count() < t for f, g in zip(seq.F_seq, seq.G_seq))
    b = all(
        (seq.F_seq[i].mask & seq.G_seq[j].mask).bit_count() >= t
        for i in range(seq.m) for j in range(i)
    )
    covered = set()
    for g in seq.G_seq:
        covered.update(S.mask for S in t_disjoint_members(F, g, t))
    c = covered == set(F.masks)
    return {"a": a, "b": b, "c": c}


def greedy_sequences(pair: FamilyPair, seed: int | None = None) -> SequencePair:
    """Peel F by repeatedly removing D_F(G_i; t).

    F_i is the first member of the remaining pool V that has a t-disjoint
    partner in G and G_i the first such partner; with ``seed`` both choices
    are random instead. Stops when V is empty or nothing in V has a partner.
    """
    t = pair.params.t
    k = pair.params.k
    rng = random.Random(seed) if seed is not None else None
    gm = pair.G.masks
    V = list(pair.F.masks)
    Fs: list[int] = []
    Gs: list[int] = []
    while V:
        options = [(f, [g for g in gm if (f & g).bit_count() < t]) for f in V]
        options = [(f, ps) for f, ps in options if ps]
        if not options:
            break
        if rng is None:
            f, partners = options[0]
            g = partners[0]
        else:
            f, partners = rng.choice(options)
            g = rng.choice(partners)
        Fs.append(f)
        Gs.append(g)
        V = [v for v in V if (v & g).bit_count() >= t]
    n = pair.params.n
    return SequencePair(
        tuple(Subset(n, f) for f in Fs),
        tuple(Subset(n, g) for g in Gs),
        SetFamily.from_masks(n, k, V),
        binomial(2 * k - 2 * t + 2, k - t + 1),
    )


@dataclass(frozen=True)
class ChainCertificate:
    H: Subset
    G1: Subset
    R: Subset
    lhs: int
    rhs: int
    degenerate: bool = False
    widened: bool = False

    def to_json(self) -> dict:
        return {
            "H": list(self.H.elements), "G1": list(self.G1.elements), "R": list(self.R.elements),
            "lhs": self.lhs, "rhs": self.rhs,
            "degenerate": self.degenerate, "widened": self.widened,
        }


def _count_containing(masks: list[int], h: int) -> int:
    return sum(1 for m in masks if m & h == h)


def chain_certificate(F: SetFamily, H: Subset, G1: Subset, t: int, s: int) -> ChainCertificate | None:
    """Find R with H < R and |F_H| <= (k-t+1)^(|R|-|H|) |F_R| + s.

    R is searched among H plus (t - |H & G1|) elements of G1; if none of those
    works the search widens to every superset of H of that size. Returns the
    lexicographically first certifying R, or None when nothing certifies.
    """
    n, k = F.n, F.k
    if H.n != n or G1.n != n:
        raise CrossfamError("H, G1 and F must share the ground set")
    if len(H) == 0:
        raise CrossfamError("H must be non-empty")
    if len(G1) != k:
        raise CrossfamError(f"G1 must be a {k}-subset")
    common = (H.mask & G1.mask).bit_count()
    if common >= t:
        raise CrossfamError(f"need |H & G1| < t, got {common} >= {t}")
    disjoint = t_disjoint_members(F, G1, t)
    if len(disjoint) > s:
        raise CrossfamError(f"need |D_F(G1; t)| <= s, got {len(disjoint)} > {s}")

    masks = F.masks
    lhs = _count_containing(masks, H.mask)
    if len(disjoint) == len(F):
        absent = next((e for e in range(1, n + 1) if e not in H), None)
        if absent is None:
            raise CrossfamError("H = [n] leaves no proper superset")
        R = H.mask | 1 << (absent - 1)
        rhs = (k - t + 1) * _count_containing(masks, R) + s
        return ChainCertificate(H, G1, Subset(n, R), lhs, rhs, degenerate=True)

    grow = t - common
    base = (k - t + 1) ** grow

    def first_certificate(pool: list[int]) -> tuple[int, int] | None:
        hits = []
        for extra in combinations(pool, grow):
            R = H.mask | mask_of(extra)
            rhs = base * _count_containing(masks, R) + s
            if lhs <= rhs:
                hits.append((Subset(n, R).elements, R, rhs))
        if not hits:
            return None
        _, R, rhs = min(hits)
        return R, rhs

    inside = [e for e in G1.elements if e not in H]
    found = first_certificate(inside)
    if found is not None:
        return ChainCertificate(H, G1, Subset(n, found[0]), lhs, found[1])
    found = first_certificate([e for e in range(1, n + 1) if e not in H])
    if found is not None:
        log.warning("widened certificate for H=%s G1=%s", H, G1)
        return ChainCertificate(H, G1, Subset(n, found[0]), lhs, found[1], widened=True)
    return None

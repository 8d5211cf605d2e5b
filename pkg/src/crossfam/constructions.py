"""Constructors for the named families and the extremal family pairs.

Anchors default to the lexicographically smallest valid sets ({1..t},
{1..k+1}, ...). Passing ``variant_seed`` replaces the lexicographic choice of
the free sub-selections with a seeded random one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, islice

from .core import (
    FamilyFormatError,
    HypothesisError,
    Params,
    SetFamily,
    Subset,
    binomial,
    enumerate_k_subsets,
    full_set,
    mask_of,
)
from .predicates import FamilyPair, Verdict

FAMILY_KINDS = ("h1", "h2", "m1", "m2")
POOL_LIMIT = 20000
PAIR_KINDS = ("star_pair", "thm2_pair", "thm3_singleton_pair", "thm3_cycle_pair", "cross_pair")


def _subset(n: int, S) -> Subset:
    if isinstance(S, Subset):
        if S.n != n:
            raise FamilyFormatError(f"anchor {S} is over [{S.n}], expected [{n}]")
        return S
    return Subset.of(n, S)


def _combine(n: int, k: int, base: int, pool: list[int], r: int) -> SetFamily:
    masks = [base | mask_of(c) for c in combinations(pool, r)] if r >= 0 else []
    return SetFamily.from_masks(n, k, masks)


def _pick(pool: list[Subset], m: int, seed: int | None) -> list[Subset]:
    if m > len(pool):
        raise HypothesisError(f"cannot pick {m} members from a pool of {len(pool)}")
    if seed is None:
        return pool[:m]
    return sorted(random.Random(seed).sample(pool, m), key=lambda S: S.elements)


def h1(n: int, X, W, k: int) -> SetFamily:
    """k-subsets of X containing W."""
    X, W = _subset(n, X), _subset(n, W)
    if not W.issubset(X):
        raise HypothesisError(f"W={W} is not contained in X={X}")
    if not len(W) <= k <= len(X):
        raise HypothesisError(f"need |W| <= k <= |X|, got {len(W)}, {k}, {len(X)}")
    pool = [e for e in X.elements if e not in W]
    return _combine(n, k, W.mask, pool, k - len(W))


def h2(n: int, X, W, k: int) -> SetFamily:
    """k-subsets of [n] meeting X exactly in W."""
    X, W = _subset(n, X), _subset(n, W)
    if not W.issubset(X):
        raise HypothesisError(f"W={W} is not contained in X={X}")
    if k < len(W) or k > n:
        raise HypothesisError(f"need |W| <= k <= n, got |W|={len(W)} k={k}")
    if n - len(X) < k - len(W):
        raise HypothesisError(f"no room outside X: n-|X|={n - len(X)} < k-|W|={k - len(W)}")
    pool = [e for e in range(1, n + 1) if e not in X]
    return _combine(n, k, W.mask, pool, k - len(W))


def m1(n: int, Y, k: int, t: int) -> SetFamily:
    """k-subsets of [n] meeting Y in at least t elements (|Y| = t + 1)."""
    Y = _subset(n, Y)
    if len(Y) != t + 1:
        raise HypothesisError(f"|Y| must be t+1={t + 1}, got {len(Y)}")
    if not 1 <= t <= k <= n:
        raise HypothesisError(f"need 1 <= t <= k <= n, got t={t} k={k} n={n}")
    outside = [e for e in range(1, n + 1) if e not in Y]
    masks = []
    for j in range(t, min(t + 1, k) + 1):
        for inner in combinations(Y.elements, j):
            base = mask_of(inner)
            masks.extend(base | mask_of(c) for c in combinations(outside, k - j))
    return SetFamily.from_masks(n, k, masks)


def m2(n: int, X, W, t: int) -> SetFamily:
    """(t+1)-subsets of X meeting W in exactly t - 1 elements (|W| = t)."""
    X, W = _subset(n, X), _subset(n, W)
    if not W.issubset(X):
        raise HypothesisError(f"W={W} is not contained in X={X}")
    if len(W) != t:
        raise HypothesisError(f"|W| must be t={t}, got {len(W)}")
    if t + 1 > n:
        raise HypothesisError(f"members of size t+1={t + 1} do not fit in [{n}]")
    rest = [e for e in X.elements if e not in W]
    masks = [
        mask_of(a) | mask_of(b)
        for a in combinations(W.elements, t - 1)
        for b in combinations(rest, 2)
    ]
    return SetFamily.from_masks(n, t + 1, masks)


def star_pair(n: int, k: int, t: int, s: int = 1) -> FamilyPair:
    """F = G = all k-subsets containing {1..t}."""
    p = Params(n, k, t, s)
    star = h1(n, full_set(n), range(1, t + 1), k)
    return FamilyPair(star, star, p)


def thm2_pair(n: int, k: int, t: int, s: int, variant_seed: int | None = None) -> FamilyPair:
    """Star minus most of H2(X, W; k) against star plus min(t, s) sets inside X."""
    if k < t + 1:
        raise HypothesisError(f"need k >= t+1, got k={k} t={t}")
    if n < k + 1:
        raise HypothesisError(f"need n >= k+1 for X, got n={n} k={k}")
    room = binomial(n - k - 1, k - t)
    if room < s:
        raise HypothesisError(f"need C(n-k-1, k-t) = {room} >= s = {s}")
    p = Params(n, k, t, s)
    W = Subset.of(n, range(1, t + 1))
    X = Subset.of(n, range(1, k + 2))
    star = h1(n, full_set(n), W, k)
    rng = random.Random(variant_seed) if variant_seed is not None else None
    A = _pick(list(h2(n, X, W, k).sets), room - s, _seed(rng))
    inside = h1(n, X, W, k)
    pool = [S for S in (Subset.of(n, c) for c in combinations(X.elements, k)) if S not in inside]
    B = _pick(pool, min(t, s), _seed(rng))
    F = star.difference(SetFamily(n, k, tuple(A)))
    G = star.union(SetFamily(n, k, tuple(B)))
    return FamilyPair(F, G, p)


def _seed(rng: random.Random | None) -> int | None:
    return None if rng is None else rng.getrandbits(64)


def singleton_room(n: int, t: int) -> int:
    """Number of (t+1)-subsets meeting a fixed (t+1)-set in at most t - 1 elements."""
    return sum(binomial(t + 1, i) * binomial(n - t - 1, t - i + 1) for i in range(t))


def thm3_singleton_pair(n: int, t: int, s: int, variant_seed: int | None = None) -> FamilyPair:
    """F = {Y}, G = M1(Y; t+1, t) plus s further (t+1)-subsets."""
    if t + 1 > n:
        raise HypothesisError(f"need n >= t+1, got n={n} t={t}")
    if singleton_room(n, t) < s:
        raise HypothesisError(f"room condition fails: {singleton_room(n, t)} < s = {s}")
    k = t + 1
    p = Params(n, k, t, s)
    Y = Subset.of(n, range(1, t + 2))
    M = m1(n, Y, k, t)
    C = _outside_m1(n, k, t, Y, s, variant_seed)
    return FamilyPair(SetFamily(n, k, (Y,)), M.union(SetFamily(n, k, tuple(C))), p)


def _outside_m1(n: int, k: int, t: int, Y: Subset, s: int, seed: int | None) -> list[Subset]:
    """s distinct k-subsets meeting Y in at most t - 1 elements."""
    far = (S for S in enumerate_k_subsets(n, k) if (S.mask & Y.mask).bit_count() < t)
    if seed is None:
        return list(islice(far, s))
    if binomial(n, k) <= POOL_LIMIT:
        return _pick(list(far), s, seed)
    # pool too large to list; rejection-sample instead
    rng = random.Random(seed)
    chosen: dict[int, Subset] = {}
    while len(chosen) < s:
        S = Subset.of(n, rng.sample(range(1, n + 1), k))
        if (S.mask & Y.mask).bit_count() < t:
            chosen.setdefault(S.mask, S)
    return sorted(chosen.values(), key=lambda S: S.elements)


def cycle_selection(Z: Subset, W: Subset, t: int, s: int, variant_seed: int | None = None) -> list[Subset]:
    """s+2 members of M2(Z, W; t) forming one cycle through Z minus W.

    Canonically z_1 < ... < z_{s+2} in order, each joined with the t-1
    smallest elements of W; a seed shuffles the cycle and the (t-1)-subsets.
    """
    n = Z.n
    z = [e for e in Z.elements if e not in W]
    if len(z) != s + 2:
        raise HypothesisError(f"|Z \\ W| must be s+2={s + 2}, got {len(z)}")
    w = list(W.elements)
    if variant_seed is None:
        base = [w[: t - 1]] * len(z)
    else:
        rng = random.Random(variant_seed)
        rng.shuffle(z)
        base = [sorted(rng.sample(w, t - 1)) for _ in z]
    out = []
    for i in range(len(z)):
        out.append(Subset.of(n, [z[i], z[(i + 1) % len(z)], *base[i]]))
    return out


def check_cycle_selection(D, Z: Subset, W: Subset, t: int, s: int) -> Verdict:
    """D is an (s+2)-subset of M2(Z, W; t) covering each of Z \\ W exactly twice."""
    members = list(D)
    problems = []
    allowed = m2(Z.n, Z, W, t)
    for S in members:
        if S not in allowed:
            problems.append({"member": list(S.elements), "reason": "not in M2(Z, W; t)"})
    if len(set(S.mask for S in members)) != s + 2:
        problems.append({"reason": f"expected {s + 2} distinct members, got {len(members)}"})
    for e in Z.elements:
        if e in W:
            continue
        deg = sum(e in S for S in members)
        if deg != 2:
            problems.append({"element": e, "degree": deg})
    return Verdict(not problems, problems, len(problems))


def thm3_cycle_pair(n: int, t: int, s: int, variant_seed: int | None = None) -> FamilyPair:
    """F = H1(Z, W; t+1), G = H1([n], W; t+1) plus a 2-regular cycle selection."""
    if n < t + s + 2:
        raise HypothesisError(f"need n >= t+s+2 = {t + s + 2}, got n={n}")
    k = t + 1
    p = Params(n, k, t, s)
    Z = Subset.of(n, range(1, t + s + 3))
    W = Subset.of(n, range(1, t + 1))
    D = cycle_selection(Z, W, t, s, variant_seed)
    F = h1(n, Z, W, k)
    G = h1(n, full_set(n), W, k).union(SetFamily(n, k, tuple(D)))
    return FamilyPair(F, G, p)


def cross_pair(n: int, k: int, t: int, s: int = 1) -> FamilyPair:
    """H1([n], Y; k) against M1(Y; k, t), Y = {1..t+1}."""
    if not t + 1 <= k <= n:
        raise HypothesisError(f"need t+1 <= k <= n, got t={t} k={k} n={n}")
    p = Params(n, k, t, s)
    Y = Subset.of(n, range(1, t + 2))
    return FamilyPair(h1(n, full_set(n), Y, k), m1(n, Y, k, t), p)


@dataclass
class ConstructionSpec:
    kind: str
    params: dict
    anchors: dict = field(default_factory=dict)
    variant_seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS + PAIR_KINDS:
            raise FamilyFormatError(f"unknown construction kind {self.kind!r}")
        if self.variant_seed is not None and not 0 <= self.variant_seed < 2**64:
            raise FamilyFormatError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params),
                "anchors": {k: list(v) for k, v in self.anchors.items()},
                "variant_seed": self.variant_seed}

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionSpec":
        try:
            return cls(data["kind"], dict(data.get("params", {})),
                       {k: list(v) for k, v in data.get("anchors", {}).items()},
                       data.get("variant_seed"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise FamilyFormatError(f"bad construction spec: {exc}") from None


def _need(d: dict, *keys: str) -> list:
    missing = [k for k in keys if d.get(k) is None]
    if missing:
        raise HypothesisError(f"missing parameter(s): {', '.join(missing)}")
    return [d[k] for k in keys]


def build(spec: ConstructionSpec) -> SetFamily | FamilyPair:
    p, a, seed = spec.params, spec.anchors, spec.variant_seed
    kind = spec.kind
    if kind == "h1":
        n, k = _need(p, "n", "k")
        return h1(n, a.get("X", range(1, n + 1)), _need(a, "W")[0], k)
    if kind == "h2":
        n, k = _need(p, "n", "k")
        X, W = _need(a, "X", "W")
        return h2(n, X, W, k)
    if kind == "m1":
        n, k, t = _need(p, "n", "k", "t")
        return m1(n, a.get("Y", range(1, t + 2)), k, t)
    if kind == "m2":
        n, t = _need(p, "n", "t")
        X, W = _need(a, "X", "W")
        return m2(n, X, W, t)
    if kind == "star_pair":
        n, k, t = _need(p, "n", "k", "t")
        return star_pair(n, k, t, p.get("s") or 1)
    if kind == "thm2_pair":
        return thm2_pair(*_need(p, "n", "k", "t", "s"), variant_seed=seed)
    if kind == "thm3_singleton_pair":
        return thm3_singleton_pair(*_need(p, "n", "t", "s"), variant_seed=seed)
    if kind == "thm3_cycle_pair":
        return thm3_cycle_pair(*_need(p, "n", "t", "s"), variant_seed=seed)
    n, k, t = _need(p, "n", "k", "t")
    return cross_pair(n, k, t, p.get("s") or 1)

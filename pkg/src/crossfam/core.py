"""Ground-set subsets, k-subset families and exact binomials.

Elements are labelled 1..n. A :class:`Subset` stores its members as an
integer bitmask (bit ``e - 1`` set for element ``e``), so intersections are
word operations regardless of how large ``n`` gets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class CrossfamError(ValueError):
    """Base class for invalid input or violated hypotheses."""


class FamilyFormatError(CrossfamError):
    """Malformed family or pair data."""


class HypothesisError(CrossfamError):
    """Parameters fall outside the range an operation is defined on."""


class CapExceeded(CrossfamError):
    """A search space exceeds its hard cap."""


def binomial(n: int, r: int) -> int:
    """Exact C(n, r); zero outside 0 <= r <= n."""
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class Params:
    n: int
    k: int
    t: int
    s: int

    def __post_init__(self) -> None:
        if not (1 <= self.t <= self.k <= self.n):
            raise HypothesisError(
                f"need 1 <= t <= k <= n, got n={self.n} k={self.k} t={self.t}"
            )
        if self.s < 0:
            raise HypothesisError(f"s must be non-negative, got {self.s}")


@dataclass(frozen=True, eq=True)
class Subset:
    """A subset of [n] held as a bitmask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.mask < 0 or self.mask >> self.n:
            raise FamilyFormatError(f"mask {self.mask:#x} does not fit in [{self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        elems = list(elements)
        for e in elems:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                raise FamilyFormatError(f"element {e!r} outside [1, {n}]")
        if len(set(elems)) != len(elems):
            raise FamilyFormatError(f"repeated element in {elems}")
        return cls(n, mask_of(elems))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and 1 <= e <= self.n and bool(self.mask >> (e - 1) & 1)

    def __lt__(self, other: "Subset") -> bool:
        return self.elements < other.elements

    def _check(self, other: "Subset") -> None:
        if self.n != other.n:
            raise FamilyFormatError(f"universe mismatch: [{self.n}] vs [{other.n}]")

    def __and__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.n, self.mask & other.mask)

    def __or__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.n, self.mask | other.mask)

    def __sub__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.n, self.mask & ~other.mask)

    def issubset(self, other: "Subset") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def full_set(n: int) -> Subset:
    return Subset(n, (1 << n) - 1)


def intersection_size(a: Subset, b: Subset) -> int:
    """|a & b|; both sides must live over the same [n]."""
    if a.n != b.n:
        raise FamilyFormatError(f"universe mismatch: [{a.n}] vs [{b.n}]")
    return (a.mask & b.mask).bit_count()


def enumerate_k_subsets(n: int, k: int) -> Iterator[Subset]:
    """All k-subsets of [n] in lexicographic order."""
    if not 0 <= k <= n:
        raise HypothesisError(f"need 0 <= k <= n, got n={n} k={k}")
    for combo in combinations(range(1, n + 1), k):
        yield Subset(n, mask_of(combo))


def k_subset_masks(n: int, k: int) -> list[int]:
    """Bitmasks of all k-subsets of [n], lexicographic order."""
    if not 0 <= k <= n:
        raise HypothesisError(f"need 0 <= k <= n, got n={n} k={k}")
    return [sum(1 << (e - 1) for e in c) for c in combinations(range(1, n + 1), k)]


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of k-subsets of [n], kept in lexicographic order."""

    n: int
    k: int
    sets: tuple[Subset, ...]
    _masks: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise FamilyFormatError(f"need 0 <= k <= n, got n={self.n} k={self.k}")
        for S in self.sets:
            if S.n != self.n:
                raise FamilyFormatError(f"member {S} is over [{S.n}], family over [{self.n}]")
            if len(S) != self.k:
                raise FamilyFormatError(f"member {S} has size {len(S)}, expected {self.k}")
        masks = frozenset(S.mask for S in self.sets)
        if len(masks) != len(self.sets):
            raise FamilyFormatError("duplicate members")
        object.__setattr__(self, "sets", tuple(sorted(self.sets, key=lambda S: S.elements)))
        object.__setattr__(self, "_masks", masks)

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "SetFamily":
        return cls(n, k, tuple(Subset(n, m) for m in masks))

    @classmethod
    def from_lists(cls, n: int, k: int, lists: Iterable[Sequence[int]]) -> "SetFamily":
        return cls(n, k, tuple(Subset.of(n, L) for L in lists))

    @property
    def masks(self) -> list[int]:
        return [S.mask for S in self.sets]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.sets)

    def __contains__(self, S: object) -> bool:
        return isinstance(S, Subset) and S.n == self.n and S.mask in self._masks

    def contains_mask(self, mask: int) -> bool:
        return mask in self._masks

    def union(self, other: "SetFamily") -> "SetFamily":
        self._compatible(other)
        return SetFamily.from_masks(self.n, self.k, self._masks | other._masks)

    def difference(self, other: "SetFamily") -> "SetFamily":
        self._compatible(other)
        return SetFamily.from_masks(self.n, self.k, self._masks - other._masks)

    def issubfamily(self, other: "SetFamily") -> bool:
        self._compatible(other)
        return self._masks <= other._masks

    def _compatible(self, other: "SetFamily") -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise FamilyFormatError(
                f"families over different (n, k): {(self.n, self.k)} vs {(other.n, other.k)}"
            )

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": [list(S.elements) for S in self.sets]}

    @classmethod
    def from_json(cls, data: dict) -> "SetFamily":
        return family_from_json(data)

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, k={self.k}, sets={list(self.sets)})"


def _as_count(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise FamilyFormatError(f"field {key!r} must be a non-negative integer, got {v!r}")
    return v


def family_from_json(data: dict) -> SetFamily:
    """Strict reader for ``{"n": .., "k": .., "sets": [[..], ..]}``."""
    if not isinstance(data, dict):
        raise FamilyFormatError("family must be a JSON object")
    n = _as_count(data, "n")
    k = _as_count(data, "k")
    raw = data.get("sets")
    if not isinstance(raw, list):
        raise FamilyFormatError("field 'sets' must be a list")
    members = []
    for item in raw:
        if not isinstance(item, list):
            raise FamilyFormatError(f"member {item!r} is not a list")
        if len(item) != k:
            raise FamilyFormatError(f"member {item} has size {len(item)}, expected {k}")
        members.append(Subset.of(n, item))
    return SetFamily(n, k, tuple(members))


def dumps(obj: dict) -> str:
    """Canonical JSON text: sorted keys, no trailing whitespace variance."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))

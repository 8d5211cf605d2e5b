"""Runners for the acceptance criteria A1-A9.

Each runner returns a :class:`CriterionResult`; ``run_all`` chains them. An
optional ``sink(name, pair)`` callback receives every constructed pair so the
CLI report can write them out.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Callable

from . import bounds as B
from . import constructions as C
from .certify import chain_certificate, greedy_sequences, sequence_properties
from .core import Params, SetFamily, binomial, dumps, full_set, k_subset_masks
from .covers import compute_covers, naive_covers
from .predicates import FamilyPair, common_core, is_cross_t, is_s_almost_cross_t
from .sampling import random_chain_input, random_cover_instance, random_s_almost_pair
from .search import brute_force_max, maximality_scan, naive_oracle_max

Sink = Callable[[str, FamilyPair], None]
MAX_FAILURES = 20

ORACLE_PARAMS = ((4, 2, 1, 1), (4, 2, 1, 2), (5, 2, 1, 1), (5, 2, 1, 2))
A7_PARAMS = (100, 3, 1, 1)


@dataclass
class CriterionResult:
    id: str
    title: str
    checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 and self.checked > 0

    def fail(self, **info) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(info)

    def expect(self, ok: bool, **info) -> None:
        self.checked += 1
        if not ok:
            self.fail(**info)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.id} {status} {self.title}: {self.checked} checks, "
                f"{self.failure_count} failures, {self.elapsed:.2f}s")

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed,
                "checked": self.checked, "failure_count": self.failure_count,
                "failures": self.failures, "elapsed_s": round(self.elapsed, 3),
                "detail": self.detail}


def _timed(fn):
    def wrapper(*args, **kwargs) -> CriterionResult:
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - start
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _emit(sink: Sink | None, name: str, pair: FamilyPair) -> None:
    if sink is not None:
        sink(name, pair)


def _tag(kind: str, n: int, k: int, t: int, s: int) -> str:
    return f"{kind}_n{n}_k{k}_t{t}_s{s}"


def a1_grid(max_n: int = 20):
    """(kind, n, k, t, s) for every grid point meeting the construction's hypothesis."""
    for t in (1, 2, 3):
        for k in range(t + 1, t + 4):
            for s in (1, 2, 3):
                for n in range(k, max_n + 1):
                    yield "star_pair", n, k, t, s
                    if n >= k + 1 and binomial(n - k - 1, k - t) >= s:
                        yield "thm2_pair", n, k, t, s
                    if k == t + 1 and C.singleton_room(n, t) >= s:
                        yield "thm3_singleton_pair", n, k, t, s
                    if k == t + 1 and n >= t + s + 2:
                        yield "thm3_cycle_pair", n, k, t, s
                    yield "cross_pair", n, k, t, s


def _a1_expected(kind: str, n: int, k: int, t: int, s: int) -> int:
    if kind == "star_pair":
        return binomial(n - t, k - t) ** 2
    if kind == "thm2_pair":
        return B.g1(n, k, t, s)
    if kind == "thm3_singleton_pair":
        return B.g2(n, t, s)
    if kind == "thm3_cycle_pair":
        return B.g3(n, t, s)
    return B.g4(n, k, t)


def _a1_build(kind: str, n: int, k: int, t: int, s: int) -> FamilyPair:
    if kind in ("star_pair", "cross_pair", "thm2_pair"):
        return getattr(C, kind)(n, k, t, s)
    return getattr(C, kind)(n, t, s)


@_timed
def a1_constructions(max_n: int = 20, sink: Sink | None = None) -> CriterionResult:
    """Products equal the closed forms and each pair has its claimed property."""
    res = CriterionResult("A1", "construction identities")
    counts: dict[str, int] = {}
    for kind, n, k, t, s in a1_grid(max_n):
        tag = _tag(kind, n, k, t, s)
        pair = _a1_build(kind, n, k, t, s)
        _emit(sink, tag, pair)
        counts[kind] = counts.get(kind, 0) + 1
        want = _a1_expected(kind, n, k, t, s)
        res.expect(pair.product == want, pair=tag, check="product", got=pair.product, want=want)
        cross = is_cross_t(pair).holds
        if kind in ("star_pair", "cross_pair"):
            res.expect(cross, pair=tag, check="cross")
        else:
            res.expect(is_s_almost_cross_t(pair).holds, pair=tag, check="s-almost")
            res.expect(not cross, pair=tag, check="not cross")
        if kind == "cross_pair" and n > k:
            core = len(common_core(pair))
            res.expect(core < t, pair=tag, check="common core", core=core)
    res.detail = {"pairs": counts}
    return res


@_timed
def a2_lemmas(grid: B.BoundGrid | None = None) -> CriterionResult:
    """check_lemma over the default grids, zero counterexamples."""
    res = CriterionResult("A2", "bound inequalities")
    per = {}
    for lemma in B.LEMMAS:
        rep = B.check_lemma(lemma, grid)
        per[lemma] = rep.points_checked
        res.checked += rep.points_checked
        for bad in rep.counterexamples:
            res.fail(lemma=lemma, point=bad)
    res.detail = {"points": per}
    return res


def _search_pairs(p: tuple, core: bool) -> tuple[dict, dict]:
    params = Params(*p)
    return (brute_force_max(params, core).to_json(), naive_oracle_max(params, core).to_json())


@_timed
def a3_oracle(params=ORACLE_PARAMS) -> CriterionResult:
    """Brute force and the plain-loop oracle agree on value and witness."""
    res = CriterionResult("A3", "brute force vs oracle")
    values = {}
    for p in params:
        for core in (False, True):
            fast, slow = _search_pairs(p, core)
            key = f"{p}{' core' if core else ''}"
            values[key] = fast["max_product"]
            res.expect(fast["max_product"] == slow["max_product"], params=p, core=core,
                       check="value", fast=fast["max_product"], oracle=slow["max_product"])
            res.expect(fast["witness"] == slow["witness"], params=p, core=core, check="witness")
    res.detail = {"max_product": values}
    return res


def a4_fixed_instances() -> list[tuple[str, SetFamily, int, int, list]]:
    """(name, family, t, tau, covers or None)."""
    h1_fam = C.h1(5, full_set(5), [1], 2)
    m1_fam = C.m1(5, [1, 2], 2, 1)
    return [
        ("H1([5],{1};2)", h1_fam, 1, 1, None),
        ("M1({1,2};2,1) over [5]", m1_fam, 1, 2, [[1, 2]]),
    ]


@_timed
def a4_covers(seeds: int = 50) -> CriterionResult:
    """compute_covers against the size-ascending enumerator."""
    res = CriterionResult("A4", "covering numbers vs oracle")
    for seed in range(seeds):
        fam, t = random_cover_instance(seed)
        fast, slow = compute_covers(fam, t), naive_covers(fam, t)
        res.expect(fast.to_json() == slow.to_json(), seed=seed, fast=fast.to_json(), oracle=slow.to_json())
    for name, fam, t, tau, covers in a4_fixed_instances():
        got = compute_covers(fam, t)
        res.expect(got.tau == tau, instance=name, tau=got.tau, want=tau)
        res.expect(got.to_json() == naive_covers(fam, t).to_json(), instance=name, check="oracle")
        if covers is not None:
            res.expect(got.to_json()["covers"] == covers, instance=name, covers=got.to_json()["covers"])
    return res


@_timed
def a5_greedy(seeds: int = 100) -> CriterionResult:
    """Greedy peeling: the tight C([4],2) run and random s-almost pairs."""
    res = CriterionResult("A5", "greedy sequences")
    full = SetFamily.from_masks(4, 2, k_subset_masks(4, 2))
    pair = FamilyPair(full, full, Params(4, 2, 1, 1))
    seq = greedy_sequences(pair)
    props = sequence_properties(seq, pair.F, 1)
    res.expect(seq.m == 6 == seq.bound, check="tight run", m=seq.m, bound=seq.bound)
    res.expect(all(props.values()), check="tight properties", props=props)
    worst = 0
    for seed in range(seeds):
        pair = random_s_almost_pair(seed)
        seq = greedy_sequences(pair)
        props = sequence_properties(seq, pair.F, pair.params.t)
        worst = max(worst, seq.m)
        res.expect(seq.m <= seq.bound and props["a"] and props["b"],
                   seed=seed, m=seq.m, bound=seq.bound, props=props)
    res.detail = {"largest_m": worst}
    return res


@_timed
def a6_certificates(seeds: int = 1000) -> CriterionResult:
    """chain_certificate on random valid inputs: always found, never widened."""
    res = CriterionResult("A6", "chain certificates")
    degenerate = 0
    for seed in range(seeds):
        F, H, G1, t, s = random_chain_input(seed)
        cert = chain_certificate(F, H, G1, t, s)
        ok = cert is not None and not cert.widened and cert.lhs <= cert.rhs
        res.expect(ok, seed=seed, certificate=None if cert is None else cert.to_json())
        degenerate += bool(cert and cert.degenerate)
    res.detail = {"degenerate": degenerate}
    return res


def a7_pair() -> FamilyPair:
    return C.thm2_pair(*A7_PARAMS)


@_timed
def a7_maximality(sink: Sink | None = None) -> CriterionResult:
    """The n = 100 construction is maximal and has tau = (1, 2)."""
    res = CriterionResult("A7", "maximality at n = 100")
    n, k, t, s = A7_PARAMS
    res.expect(B.thresholds(k, t, s)["thm2"] == n, check="threshold")
    pair = a7_pair()
    _emit(sink, _tag("thm2_pair", *A7_PARAMS), pair)
    res.expect(is_s_almost_cross_t(pair).holds, check="s-almost")
    scan = maximality_scan(pair, verbose=True)
    res.expect(scan.holds, check="maximal", addable=scan.violations)
    tf = compute_covers(pair.F, t, max_size=3)
    tg = compute_covers(pair.G, t, max_size=3)
    res.expect((tf.tau, tg.tau) == (1, 2), check="tau", tau=(tf.tau, tg.tau))
    res.detail = {"sizes": [len(pair.F), len(pair.G)], "tau": [tf.tau, tg.tau],
                  "covers_G": tg.to_json()["covers"]}
    return res


def crossover_choice(t: int, s: int) -> str:
    """Which construction wins past the crossover threshold."""
    return "thm3_singleton_pair" if t >= s + 2 else "thm3_cycle_pair"


@_timed
def a8_crossover(sink: Sink | None = None) -> CriterionResult:
    """Sign of g2 - g3 at and just past n = 5s(t+1)^2, confirmed on the constructions."""
    res = CriterionResult("A8", "crossover boundary")
    for t in range(1, 6):
        for s in range(1, 5):
            for n in (5 * s * (t + 1) ** 2, 5 * s * (t + 1) ** 2 + 10):
                a, b = B.g2(n, t, s), B.g3(n, t, s)
                want = crossover_choice(t, s)
                res.expect((a > b) == (t >= s + 2) and (a < b) == (t <= s + 1),
                           n=n, t=t, s=s, g2=a, g3=b)
                single = C.thm3_singleton_pair(n, t, s)
                cycle = C.thm3_cycle_pair(n, t, s)
                _emit(sink, _tag("thm3_singleton_pair", n, t + 1, t, s), single)
                _emit(sink, _tag("thm3_cycle_pair", n, t + 1, t, s), cycle)
                res.expect(single.product == a and cycle.product == b, n=n, t=t, s=s,
                           check="construction products")
                winner = "thm3_singleton_pair" if single.product > cycle.product else "thm3_cycle_pair"
                res.expect(winner == want, n=n, t=t, s=s, winner=winner, want=want)
    return res


def _determinism_payload() -> list[str]:
    out = []
    for p in ORACLE_PARAMS:
        for core in (False, True):
            out.append(dumps(brute_force_max(Params(*p), core).to_json()))
    out.append(dumps(maximality_scan(a7_pair(), verbose=True).to_json()))
    out.append(dumps(maximality_scan(C.thm2_pair(20, 4, 2, 2), verbose=True).to_json()))
    return out


@_timed
def a9_determinism(thread_counts=(1, 4)) -> CriterionResult:
    """Search and scan JSON is byte-identical across thread counts."""
    res = CriterionResult("A9", "thread-count determinism")
    saved = os.environ.get("CROSSFAM_THREADS")
    runs = {}
    try:
        for n in thread_counts:
            os.environ["CROSSFAM_THREADS"] = str(n)
            runs[n] = _determinism_payload()
    finally:
        if saved is None:
            os.environ.pop("CROSSFAM_THREADS", None)
        else:
            os.environ["CROSSFAM_THREADS"] = saved
    base = runs[thread_counts[0]]
    for n in thread_counts[1:]:
        for i, (x, y) in enumerate(zip(base, runs[n])):
            res.expect(x == y, output=i, threads=n)
    res.detail = {"outputs": len(base)}
    return res


RUNNERS = {
    "A1": a1_constructions, "A2": a2_lemmas, "A3": a3_oracle, "A4": a4_covers,
    "A5": a5_greedy, "A6": a6_certificates, "A7": a7_maximality, "A8": a8_crossover,
    "A9": a9_determinism,
}
TAKES_SINK = {"A1", "A7", "A8"}


def run_all(only: list[str] | None = None, sink: Sink | None = None) -> list[CriterionResult]:
    out = []
    for cid, fn in RUNNERS.items():
        if only and cid not in only:
            continue
        out.append(fn(sink=sink) if cid in TAKES_SINK else fn())
    return out

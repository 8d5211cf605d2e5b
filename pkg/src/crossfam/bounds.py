"""Exact bound functions and grid verification of the binomial inequalities.

Everything here is integer arithmetic. Inequalities with rational
coefficients are checked after clearing denominators, e.g.
``6/(7*ell) * A > B`` becomes ``6*A > 7*ell*B``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .core import HypothesisError, binomial

DEFAULT_OFFSETS = (0, 1, 7, 50, 300)


def f1(n: int, k: int, t: int, s: int, x: int) -> int:
    if not t <= x <= k <= n:
        raise HypothesisError(f"f1 needs t <= x <= k <= n, got t={t} x={x} k={k} n={n}")
    b = k - t + 1
    cx = binomial(x, t)
    head = b ** (x - t) * cx * binomial(n - x, k - x)
    return head + sum(s * b**i * cx for i in range(x - t))


def f2(n: int, k: int, t: int, s: int) -> int:
    if not t + 1 <= k <= n:
        raise HypothesisError(f"f2 needs t+1 <= k <= n, got t={t} k={k} n={n}")
    return (
        binomial(n - t - 1, k - t - 1)
        + (k - t) * (k - t + 1) * binomial(n - t - 2, k - t - 2)
        + s * (k - t + 1)
    )


def f3(n: int, k: int, t: int, s: int, x: int) -> int:
    if not t + 2 <= x <= k <= n:
        raise HypothesisError(f"f3 needs t+2 <= x <= k <= n, got t={t} x={x} k={k} n={n}")
    return (
        binomial(n - t, k - t)
        - binomial(n - x, k - t)
        + (k - x + 1) ** 2 * binomial(n - t - 2, k - t - 2)
        + 2 * s
    )


def g1(n: int, k: int, t: int, s: int) -> int:
    if not t + 1 <= k < n:
        raise HypothesisError(f"g1 needs t+1 <= k < n, got t={t} k={k} n={n}")
    star = binomial(n - t, k - t)
    return (star - binomial(n - k - 1, k - t) + s) * (star + min(t, s))


def g2(n: int, t: int, s: int) -> int:
    if not 1 <= t < n:
        raise HypothesisError(f"g2 needs 1 <= t < n, got t={t} n={n}")
    return (t + 1) * (n - t) + s - t


def g3(n: int, t: int, s: int) -> int:
    if not 1 <= t < n:
        raise HypothesisError(f"g3 needs 1 <= t < n, got t={t} n={n}")
    return (s + 2) * (n - t) + (s + 2) ** 2


def g4(n: int, k: int, t: int) -> int:
    if not t + 1 <= k <= n:
        raise HypothesisError(f"g4 needs t+1 <= k <= n, got t={t} k={k} n={n}")
    a = binomial(n - t - 1, k - t - 1)
    return (t + 1) * a * binomial(n - t - 1, k - t) + a * a


def thresholds(k: int, t: int, s: int) -> dict[str, int]:
    """Minimum n demanded by each theorem/lemma hypothesis."""
    core = 2 * (k - t + 1) ** 2 + 7 * s
    return {
        "thm1": (t + 1) * core,
        "thm2": (t + 1) ** 2 * core,
        "thm3": 5 * s * (t + 1) ** 2,
        "cor61": max(k - t, t + 1) * (t + 1) * core,
        "lemma71": (k - t) * (k - t + 1) + t,
    }


# ---------------------------------------------------------------- lemmas


@dataclass(frozen=True)
class _Part:
    lemma_id: str
    uses: tuple[str, ...]
    threshold: Callable[[dict], int]
    hypothesis: Callable[[dict], bool]
    evaluate: Callable[[dict], tuple[int, int, str]]
    extra: Callable[[dict], Iterator[dict]] | None = None


def _cmp(lhs: int, rhs: int, rel: str) -> bool:
    return {"<": lhs < rhs, "<=": lhs <= rhs, ">": lhs > rhs, ">=": lhs >= rhs}[rel]


def _thm2_thr(p):
    return thresholds(p["k"], p["t"], p["s"])["thm2"]


def _thm2_hyp(p):
    return p["k"] >= p["t"] + 2 and p["n"] >= _thm2_thr(p)


def _l73_thr(p):
    return 5 * p["s"] * (p["t"] + 1) ** 2


def _l72_thr(p):
    return p["ell"] * thresholds(p["k"], p["t"], p["s"])["thm1"]


def _l72_hyp(p):
    return p["k"] >= p["t"] + 1 and p["n"] >= _l72_thr(p)


def _ij(p):
    for i in range(p["t"], p["k"] + 1):
        for j in range(i, p["k"] + 1):
            yield {"i": i, "j": j}


def _eval_71(p):
    n, k, t, i, j = p["n"], p["k"], p["t"], p["i"], p["j"]
    return (k - t + 1) ** (j - i) * binomial(n - j, k - j), binomial(n - i, k - i), "<="


def _eval_72ii(p):
    n, k, t, s, ell = p["n"], p["k"], p["t"], p["s"], p["ell"]
    lhs = 6 * f1(n, k, t, s, k - 1)
    rhs = 7 * ell * s * binomial(k, t) * binomial(2 * k - 2 * t + 2, k - t + 1)
    return lhs, rhs, ">"


def _eval_73iii(p):
    n, t, s = p["n"], p["t"], p["s"]
    return g2(n, t, s), g3(n, t, s), ">" if t >= s + 2 else "<"


def _eval_74iii(p):
    n, k, t, s = p["n"], p["k"], p["t"], p["s"]
    lhs = 7 * (t + 1) * g1(n, k, t, s)
    rhs = 6 * f1(n, k, t, s, t + 1) * (binomial(n - t, k - t) + s)
    return lhs, rhs, ">"


def _eval_74iv(p):
    n, k, t, s = p["n"], p["k"], p["t"], p["s"]
    other = binomial(n - t, k - t) + t * (k - t) * binomial(n - t - 1, k - t - 1) + s
    return g1(n, k, t, s), f2(n, k, t, s) * other, ">"


def _eval_75ii(p):
    n, k, t, s = p["n"], p["k"], p["t"], p["s"]
    other = binomial(n - t, k - t) + t * (k - t) * binomial(n - t - 2, k - t - 2) + s
    return f3(n, k, t, s, k) * other, g1(n, k, t, s), "<"


def _eval_76i(p):
    n, k, t, s = p["n"], p["k"], p["t"], p["s"]
    star = binomial(n - t, k - t)
    return g1(n, k, t, s), (star - binomial(n - k - 1, k - t)) * (star + t), ">"


_NKTS = ("n", "k", "t", "s")

PARTS: dict[str, _Part] = {
    part.lemma_id: part
    for part in [
        _Part("7.1", ("n", "k", "t"),
              lambda p: thresholds(p["k"], p["t"], 1)["lemma71"],
              lambda p: p["k"] >= p["t"] + 1 and p["n"] >= thresholds(p["k"], p["t"], 1)["lemma71"]
              and p["t"] <= p["i"] <= p["j"],
              _eval_71, _ij),
        _Part("7.2i", ("n", "k", "t", "s", "ell"), _l72_thr,
              lambda p: _l72_hyp(p) and p["t"] <= p["x"] <= p["k"] - 1,
              lambda p: (f1(p["n"], p["k"], p["t"], p["s"], p["x"]),
                         f1(p["n"], p["k"], p["t"], p["s"], p["x"] + 1), ">"),
              lambda p: ({"x": x} for x in range(p["t"], p["k"]))),
        _Part("7.2ii", ("n", "k", "t", "s", "ell"), _l72_thr, _l72_hyp, _eval_72ii),
        _Part("7.3i", ("n", "t", "s"), _l73_thr, lambda p: p["n"] >= _l73_thr(p),
              lambda p: (g2(p["n"], p["t"], p["s"]),
                         (p["t"] + 1) * (p["n"] - p["t"]) - p["t"], ">")),
        _Part("7.3ii", ("n", "t", "s"), _l73_thr, lambda p: p["n"] >= _l73_thr(p),
              lambda p: (g3(p["n"], p["t"], p["s"]),
                         max(2 * p["n"], ((p["t"] + 1) * (p["s"] + 2) + p["s"]) ** 2), ">")),
        _Part("7.3iii", ("n", "t", "s"), _l73_thr, lambda p: p["n"] >= _l73_thr(p), _eval_73iii),
        _Part("7.4i", _NKTS, _thm2_thr, _thm2_hyp,
              lambda p: (g1(p["n"], p["k"], p["t"], p["s"]),
                         f1(p["n"], p["k"], p["t"], p["s"], p["t"] + 1) ** 2, ">")),
        _Part("7.4ii", _NKTS, _thm2_thr, _thm2_hyp,
              lambda p: (g1(p["n"], p["k"], p["t"], p["s"]),
                         f1(p["n"], p["k"], p["t"], p["s"], p["t"])
                         * f1(p["n"], p["k"], p["t"], p["s"], p["t"] + 2), ">")),
        _Part("7.4iii", _NKTS, _thm2_thr, _thm2_hyp, _eval_74iii),
        _Part("7.4iv", _NKTS, _thm2_thr, _thm2_hyp, _eval_74iv),
        _Part("7.5i", _NKTS, _thm2_thr,
              lambda p: _thm2_hyp(p) and p["t"] + 2 <= p["x"] <= p["k"],
              lambda p: (f3(p["n"], p["k"], p["t"], p["s"], p["k"]),
                         f3(p["n"], p["k"], p["t"], p["s"], p["x"]), ">="),
              lambda p: ({"x": x} for x in range(p["t"] + 2, p["k"] + 1))),
        _Part("7.5ii", _NKTS, _thm2_thr, _thm2_hyp, _eval_75ii),
        _Part("7.6i", _NKTS, _thm2_thr, _thm2_hyp, _eval_76i),
        _Part("7.6ii", _NKTS, _thm2_thr,
              lambda p: _thm2_hyp(p) and p["k"] <= 2 * p["t"] and (p["k"], p["t"]) != (4, 2),
              lambda p: (g1(p["n"], p["k"], p["t"], p["s"]), g4(p["n"], p["k"], p["t"]), "<")),
    ]
}

LEMMAS = ("7.1", "7.2", "7.3", "7.4", "7.5", "7.6")


def parts_for(lemma_id: str) -> list[str]:
    """Part ids selected by ``lemma_id`` ("7.4" -> all its parts, "all" -> everything)."""
    if lemma_id == "all":
        return list(PARTS)
    if lemma_id in PARTS:
        return [lemma_id]
    chosen = [pid for pid in PARTS if pid.rstrip("iv") == lemma_id]
    if not chosen:
        raise HypothesisError(f"unknown lemma id {lemma_id!r}")
    return chosen


@dataclass
class BoundGrid:
    """Inclusive integer ranges; ``n=None`` means threshold plus ``n_offsets``.

    Ranges left as ``None`` for x, i, j sweep the full valid range at each
    point. With ``hypothesis_filter`` off, a point outside a lemma's
    hypotheses is an error instead of being skipped.
    """

    k: tuple[int, int] = (1, 8)
    t: tuple[int, int] = (1, 4)
    s: tuple[int, int] = (1, 3)
    ell: tuple[int, int] = (1, 3)
    n: tuple[int, int] | None = None
    n_offsets: tuple[int, ...] = DEFAULT_OFFSETS
    x: tuple[int, int] | None = None
    i: tuple[int, int] | None = None
    j: tuple[int, int] | None = None
    hypothesis_filter: bool = True


@dataclass
class LemmaReport:
    lemma_id: str
    points_checked: int = 0
    counterexamples: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {"lemma_id": self.lemma_id, "points_checked": self.points_checked,
                "verified": self.verified, "counterexamples": self.counterexamples}


def _rng(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def _in(r: tuple[int, int] | None, v: int) -> bool:
    return r is None or r[0] <= v <= r[1]


def _points(part: _Part, grid: BoundGrid) -> Iterator[dict]:
    uses = part.uses
    for t in _rng(grid.t):
        for k in (_rng(grid.k) if "k" in uses else [None]):
            for s in (_rng(grid.s) if "s" in uses else [None]):
                for ell in (_rng(grid.ell) if "ell" in uses else [None]):
                    base = {"k": k, "t": t, "s": s if s is not None else 1, "ell": ell}
                    if k is not None and k < t:
                        continue
                    try:
                        thr = part.threshold(base)
                    except HypothesisError:
                        continue
                    ns = _rng(grid.n) if grid.n else [thr + d for d in grid.n_offsets]
                    for n in ns:
                        p = dict(base, n=n)
                        if k is not None and n < k:
                            continue
                        extras = list(part.extra(p)) if part.extra else [{}]
                        for e in extras:
                            q = dict(p, **e)
                            if all(_in(getattr(grid, key), q[key]) for key in ("x", "i", "j") if key in q):
                                yield q


def _check_point(part: _Part, p: dict, strict: bool) -> bool:
    try:
        ok = part.hypothesis(p)
    except HypothesisError:
        ok = False
    if not ok and strict:
        raise HypothesisError(f"lemma {part.lemma_id}: point {p} violates its hypotheses")
    return ok


def check_lemma(lemma_id: str, grid: BoundGrid | None = None, record_rows: bool = False) -> LemmaReport:
    """Evaluate every grid instance of a lemma (or all its parts) exactly."""
    grid = grid or BoundGrid()
    report = LemmaReport(lemma_id)
    for pid in parts_for(lemma_id):
        part = PARTS[pid]
        for p in _points(part, grid):
            if not _check_point(part, p, not grid.hypothesis_filter):
                continue
            lhs, rhs, rel = part.evaluate(p)
            ok = _cmp(lhs, rhs, rel)
            report.points_checked += 1
            params = {key: p[key] for key in CSV_PARAMS
                      if p.get(key) is not None and (key in part.uses or key in ("x", "i", "j"))}
            row = {"lemma_id": pid, **params, "lhs": lhs, "rhs": rhs, "relation": rel, "pass": ok}
            if record_rows:
                report.rows.append(row)
            if not ok:
                report.counterexamples.append(row)
    if report.points_checked == 0:
        raise HypothesisError(f"grid is empty for lemma {lemma_id} after applying hypotheses")
    report.counterexamples.sort(key=lambda r: (r["lemma_id"], [r.get(c, -1) for c in CSV_PARAMS]))
    return report


CSV_PARAMS = ("n", "k", "t", "s", "ell", "x", "i", "j")


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lemma_id", *CSV_PARAMS, "lhs", "rhs", "relation", "pass"])
    for r in rows:
        w.writerow([r["lemma_id"], *(r.get(c, "") for c in CSV_PARAMS),
                    r["lhs"], r["rhs"], r["relation"], int(r["pass"])])
    return buf.getvalue()

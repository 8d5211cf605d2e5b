"""``crossfam`` command line.

Exit codes: 0 when every check passes, 1 when a violation or counterexample
was found (it is printed), 2 for usage and validation errors. Errors go to
stderr as one JSON line ``{"error": <kind>, "message": <text>}``.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from pathlib import Path

from . import acceptance, kernels
from . import bounds as B
from .certify import chain_certificate, greedy_sequences, sequence_properties
from .constructions import FAMILY_KINDS, PAIR_KINDS, ConstructionSpec, build
from .core import CrossfamError, FamilyFormatError, Params, SetFamily, Subset, dumps, family_from_json
from .covers import compute_covers, naive_covers
from .predicates import FamilyPair, is_cross_t, is_maximal, is_s_almost_cross_t
from .search import brute_force_max, maximality_scan

PREDICATES = {
    "cross_t": is_cross_t,
    "s_almost": is_s_almost_cross_t,
    "maximal": is_maximal,
}
BOUND_FNS = ("f1", "f2", "f3", "g1", "g2", "g3", "g4", "thresholds")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _seed(text: str) -> int:
    if not re.fullmatch(r"\d+", text) or int(text) >= 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned decimal, got {text!r}")
    return int(text)


def _elements(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _span(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?::(\d+))?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO:HI or a single integer, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _anchor(text: str) -> tuple[str, list[int]]:
    name, sep, rest = text.partition("=")
    if not sep or name not in ("X", "W", "Y"):
        raise argparse.ArgumentTypeError(f"anchor must look like X=1,2,3 with name X, W or Y: {text!r}")
    return name, _elements(rest)


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"malformed JSON in {path}: {exc}") from None


def _read_family(path: str, side: str | None) -> SetFamily:
    data = _read_json(path)
    if isinstance(data, dict) and "F" in data and "G" in data:
        return FamilyPair.from_json(data).F if side != "G" else FamilyPair.from_json(data).G
    return family_from_json(data)


def _emit(obj, out: str | None) -> None:
    text = dumps(obj) if not isinstance(obj, str) else obj
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_construct(a) -> int:
    if a.spec:
        spec = ConstructionSpec.from_json(_read_json(a.spec))
    else:
        if not a.kind:
            raise UsageError("construct needs --kind or --spec")
        params = {key: getattr(a, key) for key in ("n", "k", "t", "s") if getattr(a, key) is not None}
        spec = ConstructionSpec(a.kind, params, dict(a.anchor or []), a.seed)
    _emit(build(spec).to_json(), a.out)
    return 0


def cmd_check(a) -> int:
    pair = FamilyPair.from_json(_read_json(a.input))
    if a.s is not None:
        pair = pair.with_s(a.s)
    verdict = PREDICATES[a.pred](pair, verbose=True)
    _emit({"predicate": a.pred, **verdict.to_json()}, a.out)
    return 0 if verdict.holds else 1


def cmd_tau(a) -> int:
    fam = _read_family(a.input, a.side)
    fn = naive_covers if a.naive else compute_covers
    _emit(fn(fam, a.t, max_size=a.max_size).to_json(), a.out)
    return 0


def cmd_bounds(a) -> int:
    n, k, t, s, x = a.n, a.k, a.t, a.s, a.x
    needs = {"f1": "nktsx", "f2": "nkts", "f3": "nktsx", "g1": "nkts",
             "g2": "nts", "g3": "nts", "g4": "nkt", "thresholds": "kts"}[a.fn]
    missing = [c for c in needs if getattr(a, c) is None]
    if missing:
        raise UsageError(f"--fn {a.fn} needs " + ", ".join(f"--{c}" for c in missing))
    args = [getattr(a, c) for c in needs]
    value = B.thresholds(*args) if a.fn == "thresholds" else getattr(B, a.fn)(*args)
    _emit(value if isinstance(value, dict) else str(value), a.out)
    return 0


def cmd_lemmas(a) -> int:
    grid_kwargs = {key: getattr(a, key) for key in ("k", "t", "s", "ell", "n", "x", "i", "j")
                   if getattr(a, key) is not None}
    if a.n_offsets is not None:
        grid_kwargs["n_offsets"] = tuple(a.n_offsets)
    grid = B.BoundGrid(**grid_kwargs, hypothesis_filter=not a.strict)
    ids = B.LEMMAS if a.lemma == "all" else (a.lemma,)
    reports = [B.check_lemma(lid, grid, record_rows=bool(a.csv)) for lid in ids]
    if a.csv:
        Path(a.csv).write_text(B.rows_to_csv([r for rep in reports for r in rep.rows]))
    payload = [r.to_json() for r in reports]
    _emit(payload[0] if len(payload) == 1 else {"reports": payload}, a.out)
    return 0 if all(r.verified for r in reports) else 1


def cmd_certify(a) -> int:
    if a.mode == "greedy":
        pair = FamilyPair.from_json(_read_json(a.input))
        seq = greedy_sequences(pair, seed=a.seed)
        props = sequence_properties(seq, pair.F, pair.params.t)
        ok = props["a"] and props["b"] and seq.m <= seq.bound
        _emit({**seq.to_json(), "properties": props, "within_bound": seq.m <= seq.bound}, a.out)
        return 0 if ok else 1
    for flag in ("H", "G1", "t", "s"):
        if getattr(a, flag) is None:
            raise UsageError(f"--mode chain needs --{flag}")
    F = _read_family(a.input, a.side)
    cert = chain_certificate(F, Subset.of(F.n, a.H), Subset.of(F.n, a.G1), a.t, a.s)
    if cert is None:
        _emit({"certificate": None, "refuted": True}, a.out)
        return 1
    _emit({"certificate": cert.to_json(), "refuted": False}, a.out)
    return 1 if cert.widened else 0


def cmd_search(a) -> int:
    if a.mode == "brute":
        missing = [f"--{c}" for c in "nkts" if getattr(a, c) is None]
        if missing:
            raise UsageError("--mode brute needs " + ", ".join(missing))
        res = brute_force_max(Params(a.n, a.k, a.t, a.s), core_constraint=a.core)
        _emit(res.to_json(timing=not a.no_timing), a.out)
        return 0
    pair = FamilyPair.from_json(_read_json(a.input))
    verdict = maximality_scan(pair, verbose=True)
    _emit({"maximal": verdict.holds, **verdict.to_json()}, a.out)
    return 0 if verdict.holds else 1


def cmd_report(a) -> int:
    out = Path(a.out)
    fam_dir = out / "families"
    fam_dir.mkdir(parents=True, exist_ok=True)

    def sink(name: str, pair: FamilyPair) -> None:
        (fam_dir / f"{name}.json").write_text(dumps(pair.to_json()) + "\n")

    only = a.only.split(",") if a.only else None
    if only:
        unknown = [c for c in only if c not in acceptance.RUNNERS]
        if unknown:
            raise UsageError(f"unknown criteria: {', '.join(unknown)}")
    results = acceptance.run_all(only, sink=None if a.no_families else sink)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {"backend": kernels.backend(), "threads": kernels.threads(),
              "passed": all(r.passed for r in results),
              "criteria": [r.to_json() for r in results]}
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    with open(out / "report.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["criterion", "title", "passed", "checked", "failures", "elapsed_s"])
        for r in results:
            w.writerow([r.id, r.title, int(r.passed), r.checked, r.failure_count, f"{r.elapsed:.3f}"])
    return 0 if report["passed"] else 1


def _nkts(p: argparse.ArgumentParser, *names: str) -> None:
    for c in names:
        p.add_argument(f"--{c}", type=int)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crossfam", description="s-almost cross-t-intersecting families toolkit")
    parser.add_argument("--backend", choices=kernels.available_backends(),
                        help="kernel backend (default: compiled when available)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="emit a construction as JSON")
    p.add_argument("--kind", choices=FAMILY_KINDS + PAIR_KINDS)
    p.add_argument("--spec", help="ConstructionSpec JSON file instead of flags")
    _nkts(p, "n", "k", "t", "s")
    p.add_argument("--anchor", type=_anchor, action="append", help="X=.., W=.. or Y=..")
    p.add_argument("--seed", type=_seed, help="variant seed; omit for the canonical pair")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="evaluate a predicate on a pair")
    p.add_argument("--pred", choices=sorted(PREDICATES), required=True)
    p.add_argument("--input", required=True, help="pair JSON, '-' for stdin")
    p.add_argument("--s", type=int, help="override the pair's s")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tau", help="covering number and minimum covers")
    p.add_argument("--input", required=True, help="family or pair JSON")
    p.add_argument("--side", choices=("F", "G"), default="F", help="side of a pair input")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-size", type=int)
    p.add_argument("--naive", action="store_true", help="use the enumeration oracle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("bounds", help="evaluate a bound function")
    p.add_argument("--fn", choices=BOUND_FNS, required=True)
    _nkts(p, "n", "k", "t", "s", "x")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lemmas", help="check the bound inequalities over a grid")
    p.add_argument("--lemma", choices=B.LEMMAS + ("all",), default="all")
    for c in ("k", "t", "s", "ell", "n", "x", "i", "j"):
        p.add_argument(f"--{c}", type=_span, help="LO:HI")
    p.add_argument("--n-offsets", type=_elements, help="offsets above each threshold")
    p.add_argument("--strict", action="store_true", help="error on points outside hypotheses")
    p.add_argument("--csv", help="also write every evaluated row here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("certify", help="greedy sequences or a chain certificate")
    p.add_argument("--mode", choices=("greedy", "chain"), required=True)
    p.add_argument("--input", required=True, help="pair JSON (greedy) or family JSON (chain)")
    p.add_argument("--side", choices=("F", "G"), default="F")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--H", type=_elements)
    p.add_argument("--G1", type=_elements)
    _nkts(p, "t", "s")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="exhaustive search or maximality scan")
    p.add_argument("--mode", choices=("brute", "scan"), required=True)
    _nkts(p, "n", "k", "t", "s")
    p.add_argument("--core", action="store_true", help="require common core smaller than t")
    p.add_argument("--input", help="pair JSON for --mode scan")
    p.add_argument("--no-timing", action="store_true", help="omit wall time for byte-stable output")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", help="run the acceptance suite into a directory")
    p.add_argument("--out", required=True)
    p.add_argument("--only", help="comma-separated criteria, e.g. A1,A7")
    p.add_argument("--no-families", action="store_true", help="skip writing families/")
    p.set_defaults(func=cmd_report)
    return parser


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return 2


def main(argv: list[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        if args.command == "search" and args.mode == "scan" and not args.input:
            raise UsageError("--mode scan needs --input")
        if args.backend:
            kernels.set_backend(args.backend)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc))
    except CrossfamError as exc:
        return _fail(type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail("io", str(exc))


if __name__ == "__main__":
    sys.exit(main())

"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload's outputs are compared across backends before timings are
reported, so a speedup never hides a divergence.
"""

from __future__ import annotations

import argparse
import time

from crossfam import Params, kernels
from crossfam.constructions import thm2_pair
from crossfam.core import dumps
from crossfam.predicates import disjointness_counts, is_maximal
from crossfam.search import brute_force_max


def workloads():
    big = thm2_pair(100, 3, 1, 1)
    mid = thm2_pair(40, 4, 2, 2)
    return {
        "brute_force (5,2,1,2)": lambda: brute_force_max(Params(5, 2, 1, 2)).to_json(),
        "brute_force (5,2,1,2) core": lambda: brute_force_max(Params(5, 2, 1, 2), True).to_json(),
        "disjoint_counts n=100": lambda: disjointness_counts(big),
        "maximality_scan n=40 k=4": lambda: is_maximal(mid).to_json(),
        "maximality_scan n=100 k=3": lambda: is_maximal(big).to_json(),
    }


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available_backends()
    if "cython" not in names:
        print("compiled kernels not built; only the python backend is available")
    print(f"threads={kernels.threads()}")
    print(f"{'workload':32s}" + "".join(f"{b:>12s}" for b in names) + "     speedup")
    for label, fn in workloads().items():
        times, outs = [], []
        for b in names:
            with kernels.use_backend(b):
                sec, out = best_of(fn, args.repeat)
            times.append(sec)
            outs.append(dumps(out) if isinstance(out, dict) else repr(out))
        if len(set(outs)) != 1:
            raise SystemExit(f"{label}: backends disagree")
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:32s}" + "".join(f"{s:11.4f}s" for s in times) + speed)


if __name__ == "__main__":
    main()

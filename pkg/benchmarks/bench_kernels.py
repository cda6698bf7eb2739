"""Compare the compiled and pure-Python scheduler kernels.

Two measurements per size: a full reduce to fixpoint, and a cold refresh of
every transition (the guard scan that seeds the scheduler).

    python benchmarks/bench_kernels.py --sizes 5000,20000 --reps 5
"""

import argparse
import gc
import statistics
import sys
import time

from pn2sc import kernel
from pn2sc.bench import GenSpec, generate_sp
from pn2sc.initialise import initialise
from pn2sc.reduce import candidate_order, run_to_fixpoint


def timed(fn):
    gc.collect()
    gc.disable()
    try:
        start = time.perf_counter()
        fn()
        return time.perf_counter() - start
    finally:
        gc.enable()


def bench_reduce(template, k, reps):
    samples = []
    for _ in range(reps + 1):
        pn = template.copy()
        sc = initialise(pn)
        samples.append(timed(lambda: run_to_fixpoint(pn, sc, kernel=k)))
    return statistics.median(samples[1:])


def bench_refresh(template, k, reps):
    order = candidate_order(template)
    rank = {t: i for i, t in enumerate(order)}
    samples = []
    for _ in range(reps + 1):
        state = ([set(), set(), set()], [[], [], []], [set(), set(), set()])
        samples.append(timed(lambda: k.refresh(order, rank, *state)))
    return statistics.median(samples[1:])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,5000,20000")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    kernels = kernel.available()
    if "compiled" not in kernels:
        print("compiled kernel not built; only the pure kernel is measured", file=sys.stderr)
    print(f"{'size':>7}  {'kernel':<9}{'reduce_ms':>10}{'refresh_ms':>11}")
    for size in (int(s) for s in args.sizes.split(",")):
        template = generate_sp(GenSpec(size, args.seed))
        results = {}
        for name, k in sorted(kernels.items()):
            results[name] = (bench_reduce(template, k, args.reps),
                             bench_refresh(template, k, args.reps))
            r, f = results[name]
            print(f"{size:>7}  {name:<9}{r * 1000:>10.1f}{f * 1000:>11.2f}")
        if len(results) == 2:
            (pr, pf), (cr, cf) = results["pure"], results["compiled"]
            print(f"{size:>7}  {'speedup':<9}{pr / cr:>9.2f}x{pf / cf:>10.2f}x")


if __name__ == "__main__":
    main()

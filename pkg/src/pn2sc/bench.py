"""Synthetic series-parallel nets and phase timings.

``generate_sp`` composes blocks recursively.  A block has an entry place and
an exit place.  Series composition joins two blocks through a
one-in/one-out transition; parallel composition forks from a fresh entry
place into k >= 2 branches and joins them into a fresh exit place.  Every
branch reduces to one place produced by the fork and consumed by the join,
so the branches end up with identical connectivity and merge.  Each
generated net therefore reduces to a single place.
"""

from __future__ import annotations

import csv
import gc
import random
import statistics
import time
from dataclasses import dataclass
from typing import NamedTuple

from .cleanup import cleanup
from .initialise import initialise
from .model import PetriNet
from .reduce import run_to_fixpoint

PHASES = ("initialise", "reduce", "cleanup")


@dataclass(frozen=True)
class GenSpec:
    target_places: int
    seed: int = 0
    parallel_probability: float = 0.3

    def __post_init__(self):
        if self.target_places < 1:
            raise ValueError("target_places must be >= 1")
        if not 0.0 <= self.parallel_probability <= 1.0:
            raise ValueError("parallel_probability must lie in [0, 1]")


def _split(rng: random.Random, total: int, parts: int) -> list[int]:
    """Random composition of ``total`` into ``parts`` positive integers."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def generate_sp(spec: GenSpec) -> PetriNet:
    rng = random.Random(spec.seed)
    pn = PetriNet()
    counter = {"p": 0, "t": 0}

    def place():
        counter["p"] += 1
        return pn.add_place(f"p{counter['p'] - 1}")

    def transition():
        counter["t"] += 1
        return pn.add_transition(f"t{counter['t'] - 1}")

    def build(n: int):
        if n == 1:
            p = place()
            return p, p
        if n >= 4 and rng.random() < spec.parallel_probability:
            k = rng.randint(2, min(4, n - 2))
            entry = place()
            branches = [build(size) for size in _split(rng, n - 2, k)]
            exit_ = place()
            fork, join = transition(), transition()
            pn.add_arc(entry, fork)
            for first, last in branches:
                pn.add_arc(fork, first)
                pn.add_arc(last, join)
            pn.add_arc(join, exit_)
            return entry, exit_
        a = rng.randint(1, n - 1)
        left = build(a)
        right = build(n - a)
        t = transition()
        pn.add_arc(left[1], t)
        pn.add_arc(t, right[0])
        return left[0], right[1]

    build(spec.target_places)
    return pn


def random_net(seed: int, max_places: int = 12, max_transitions: int = 12) -> PetriNet:
    """Small unstructured net for property testing.

    Transition in/out degrees are drawn from {0, 1, 1, 1, 2, 2, 3}, so
    OR-reducible and AND-reducible spots both occur.
    """
    rng = random.Random(seed)
    pn = PetriNet()
    places = [pn.add_place(f"p{i}") for i in range(rng.randint(1, max_places))]
    degrees = (0, 1, 1, 1, 2, 2, 3)
    for i in range(rng.randint(0, max_transitions)):
        t = pn.add_transition(f"t{i}")
        for p in rng.sample(places, min(rng.choice(degrees), len(places))):
            pn.add_arc(p, t)
        for p in rng.sample(places, min(rng.choice(degrees), len(places))):
            pn.add_arc(t, p)
    return pn


def perturbed_sp(seed: int, max_places: int = 12, max_transitions: int = 12) -> PetriNet:
    """Small series-parallel net with up to three stray arcs.

    Unlike :func:`random_net` most of these reduce substantially, and the
    stray arcs break just enough symmetry to make rule choice matter.
    """
    rng = random.Random(seed)
    pn = generate_sp(GenSpec(rng.randint(1, max_places), seed, rng.choice((0.2, 0.5, 0.8))))
    places = list(pn.places.values())
    transitions = list(pn.transitions.values())
    for i in range(rng.randint(0, 3)):
        if transitions and rng.random() < 0.5:
            t = rng.choice(transitions)
        elif len(transitions) < max_transitions:
            t = pn.add_transition(f"x{i}")
            transitions.append(t)
        else:
            continue
        p = rng.choice(places)
        if rng.random() < 0.5:
            pn.add_arc(p, t)
        else:
            pn.add_arc(t, p)
    return pn


def corpus_net(index: int) -> PetriNet:
    """Test corpus: even indices are unstructured, odd ones perturbed sp-nets."""
    return random_net(index) if index % 2 == 0 else perturbed_sp(index)


class BenchRow(NamedTuple):
    size: int
    phase: str
    median_ms: float
    final_places: int


def time_pipeline(pn: PetriNet, **reduce_opts) -> tuple[dict, PetriNet, object]:
    """Run the three phases on ``pn`` (mutated) and return per-phase seconds.

    The cyclic collector is paused while timing, as timeit does; otherwise
    its passes land on whichever phase happens to cross a threshold.
    """
    timings = {}
    was_enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        start = time.perf_counter()
        sc = initialise(pn)
        timings["initialise"] = time.perf_counter() - start
        start = time.perf_counter()
        run_to_fixpoint(pn, sc, **reduce_opts)
        timings["reduce"] = time.perf_counter() - start
        start = time.perf_counter()
        cleanup(sc)
        timings["cleanup"] = time.perf_counter() - start
    finally:
        if was_enabled:
            gc.enable()
    return timings, pn, sc


def run_bench(sizes, seed: int = 0, repetitions: int = 3,
              parallel_probability: float = 0.3, **reduce_opts) -> list[BenchRow]:
    """Median phase timings per size; one untimed warm-up run per size."""
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    rows = []
    for size in sizes:
        spec = GenSpec(size, seed, parallel_probability)
        template = generate_sp(spec)
        samples = {phase: [] for phase in PHASES}
        final_places = None
        for rep in range(repetitions + 1):
            timings, pn, sc = time_pipeline(template.copy(), **reduce_opts)
            final_places = len(pn.places)
            if final_places != 1 or pn.transitions or not sc.statecharts:
                raise RuntimeError(f"sp{size} (seed {seed}) did not reduce to a single place")
            if rep:
                for phase in PHASES:
                    samples[phase].append(timings[phase])
        for phase in PHASES:
            rows.append(BenchRow(size, phase, statistics.median(samples[phase]) * 1000.0,
                                 final_places))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    header = ("size", "phase", "median_ms", "final_places")
    body = [(f"sp{r.size}", r.phase, f"{r.median_ms:.2f}", str(r.final_places)) for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(c.rjust(w) if i in (2, 3) else c.ljust(w)
                       for i, (c, w) in enumerate(zip(line, widths))).rstrip()
             for line in [header] + body]
    return "\n".join(lines) + "\n"


def write_csv(rows: list[BenchRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["size", "phase", "median_ms", "final_places"])
        for r in rows:
            writer.writerow([r.size, r.phase, f"{r.median_ms:.3f}", r.final_places])

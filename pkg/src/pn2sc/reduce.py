"""In-place reduction of a Petri net into statechart hierarchy.

Three rules rewrite the net and the statechart together:

* ``Post1`` (OR-reduction) collapses ``q -> t -> r`` into one place and one
  OR state holding the contents of both old ORs;
* ``Post2`` (AND-reduction on inputs) merges a transition's pre-places when
  they all have the same producers and consumers, wrapping their ORs in a
  new AND state inside a new OR;
* ``Post3`` is ``Post2`` on post-places.

:func:`run_to_fixpoint` applies them one at a time with strict priority
Post1 > Post2 > Post3 until no guard holds anywhere.  Among matches of one
rule the transition of lowest rank wins, ranks being creation order or a
seeded shuffle of it.  Guard status is kept incrementally per transition;
after each rewrite only transitions adjacent to touched places are
re-evaluated.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import kernel as _kernels
from .checks import ModelReport, check_all, check_inv
from .model import InternalFault, OrState, PetriNet, Place, ScModel, Transition, fresh_name

RULES = ("Post1", "Post2", "Post3")


class InvariantViolation(RuntimeError):
    def __init__(self, report: ModelReport, step: int, match: "Match"):
        self.report = report
        self.step = step
        self.match = match
        super().__init__(f"invariant failure after step {step} ({match.describe()}):\n"
                         + report.render())


@dataclass(frozen=True)
class Match:
    rule: str
    transition: Transition
    bound: tuple  # Post1: (q, r); Post2/Post3: (p1, *others sorted by name)

    def describe(self) -> str:
        names = ", ".join(p.name for p in self.bound)
        return f"{self.rule} @ {self.transition.name} [bound: {names}]"


@dataclass
class RunStats:
    applied: dict = field(default_factory=lambda: dict.fromkeys(RULES, 0))
    match_attempts: int = 0
    nac_checks: int = 0
    timings: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return sum(self.applied.values())


def _taken(pn: PetriNet, sc: ScModel) -> Callable[[str], bool]:
    return lambda name: sc.lookup_or(name) is not None or pn.element_named(name) is not None


def _group_match(rule: str, t: Transition, places: set) -> Optional[Match]:
    if not _kernels.default.group_guard(places):
        return None
    ordered = sorted(places, key=lambda p: (p.name, p.uid))
    return Match(rule, t, tuple(ordered))


def try_post1(pn: PetriNet, sc: ScModel, t: Transition) -> Optional[Match]:
    bound = _kernels.default.post1_guard(t)
    return Match("Post1", t, bound) if bound is not None else None


def try_post2(pn: PetriNet, sc: ScModel, t: Transition) -> Optional[Match]:
    return _group_match("Post2", t, t.prep)


def try_post3(pn: PetriNet, sc: ScModel, t: Transition) -> Optional[Match]:
    return _group_match("Post3", t, t.postp)


TRY = {"Post1": try_post1, "Post2": try_post2, "Post3": try_post3}


def _revalidate(pn, sc, m: Match) -> None:
    t = m.transition
    if not t.live or any(not p.live for p in m.bound) or TRY[m.rule](pn, sc, t) != m:
        raise InternalFault(f"stale match {m.describe()}")


def apply_post1(pn: PetriNet, sc: ScModel, m: Match) -> None:
    _revalidate(pn, sc, m)
    t = m.transition
    q, r = m.bound
    or_q = sc.lookup_or(q.name)
    or_r = sc.lookup_or(r.name)
    if or_q is None or or_r is None:
        raise InternalFault(f"no OR state for {q.name} or {r.name}")
    merged = sc.add_or(fresh_name(f"{q.name}_OR_{r.name}", _taken(pn, sc)))
    sc.absorb(merged, (or_q, or_r))
    pn.rename(q, merged.name)
    for u in r.pret:
        pn.add_arc(u, q)
    for u in r.postt:
        pn.add_arc(q, u)
    pn.delete_place(r)
    pn.delete_transition(t)


def _apply_and(pn: PetriNet, sc: ScModel, m: Match, or_prefix: str, and_prefix: str) -> None:
    _revalidate(pn, sc, m)
    t = m.transition
    p1, *others = m.bound
    regions = [sc.lookup_or(p.name) for p in m.bound]
    if any(o is None for o in regions):
        raise InternalFault(f"missing OR state for a place bound by {m.describe()}")
    a = sc.add_and(and_prefix + t.name)
    wrapper = sc.add_or(fresh_name(or_prefix + t.name, _taken(pn, sc)))
    sc.move_into(wrapper, a)
    for o in regions:
        sc.move_into(a, o)
    pn.rename(p1, wrapper.name)
    for p in others:
        pn.delete_place(p)


def apply_post2(pn: PetriNet, sc: ScModel, m: Match) -> None:
    _apply_and(pn, sc, m, "AND1_", "a1_")


def apply_post3(pn: PetriNet, sc: ScModel, m: Match) -> None:
    _apply_and(pn, sc, m, "AND2_", "a2_")


APPLY = {"Post1": apply_post1, "Post2": apply_post2, "Post3": apply_post3}


def succedent_holds(pn: PetriNet, sc: ScModel, m: Match) -> bool:
    """Evaluate a rule's conclusion literally against the current models.

    This is the check the NAC optimisation skips: each conclusion asserts
    that live bound elements are deleted, so it cannot hold while the guard
    does.
    """
    t = m.transition
    if m.rule == "Post1":
        q, r = m.bound
        target = f"{q.name}_OR_{r.name}"
        or_q, or_r = sc.lookup_or(q.name), sc.lookup_or(r.name)
        union = (or_q.contains if or_q else set()) | (or_r.contains if or_r else set())
        exists = any(o.name == target and o.contains == union and q.name == o.name
                     for o in sc.ors.values())
        return (exists and q.pret >= r.pret and q.postt >= r.postt
                and not r.live and not t.live)
    p1 = m.bound[0]
    group = t.prep if m.rule == "Post2" else t.postp
    or_prefix, and_prefix = ("AND1_", "a1_") if m.rule == "Post2" else ("AND2_", "a2_")
    regions = {sc.lookup_or(p.name) for p in group}
    exists = any(
        a.rcontains is not None and a.rcontains.name == or_prefix + t.name
        and a.contains == regions and a.name == and_prefix + t.name
        and p1.name == or_prefix + t.name
        for a in sc.ands.values())
    return (exists and all(not p.live for p in group if p is not p1)
            and group == {p1})


def candidate_order(pn: PetriNet, seed: Optional[int] = None) -> list[Transition]:
    """Transitions by creation index, or a seeded shuffle of that order."""
    order = sorted(pn.transitions.values(), key=lambda t: t.uid)
    if seed is not None:
        random.Random(seed).shuffle(order)
    return order


def check_reduce_preconditions(pn: PetriNet, sc: ScModel) -> ModelReport:
    report = check_inv(pn, sc)
    report.checked.append("and-empty")
    if sc.ands:
        report.add("and-empty", "-", f"statechart already has {len(sc.ands)} AND states")
    return report


def run_to_fixpoint(pn: PetriNet, sc: ScModel, nac_optimisation: bool = True,
                    order_seed: Optional[int] = None, paranoid: bool = False,
                    check_priority: bool = False, kernel=None,
                    on_step: Optional[Callable] = None) -> RunStats:
    """Apply Post1/Post2/Post3 until no guard holds.

    With ``paranoid`` every invariant is re-checked after each step and an
    :class:`InvariantViolation` raised on failure.  ``check_priority``
    rescans the whole net before each Post2/Post3 application to confirm no
    Post1 match was overlooked.  ``on_step(pn, sc, match)`` is called after
    every application.
    """
    k = kernel or _kernels.default
    pre = check_reduce_preconditions(pn, sc)
    if not pre.passed:
        raise ValueError("reduce preconditions failed:\n" + pre.render())

    stats = RunStats()
    start = time.perf_counter()
    order = candidate_order(pn, order_seed)
    rank = {t: i for i, t in enumerate(order)}
    matching = [set(), set(), set()]
    heaps = [[], [], []]
    queued = [set(), set(), set()]
    stats.match_attempts += k.refresh(order, rank, matching, heaps, queued)

    while True:
        for i, rule in enumerate(RULES):
            t = k.select(heaps[i], matching[i], queued[i])
            if t is not None:
                break
        else:
            break
        m = TRY[rule](pn, sc, t)
        if m is None:
            raise InternalFault(f"{rule} guard status out of date at {t.name}")
        if check_priority and i > 0:
            for u in pn.transitions.values():
                if k.post1_guard(u) is not None:
                    raise InternalFault(f"{rule} fired at {t.name} while Post1 matches {u.name}")
        if not nac_optimisation:
            stats.nac_checks += 1
            if succedent_holds(pn, sc, m):
                raise InternalFault(f"conclusion of {m.describe()} already holds")
        affected = k.neighbourhood(m.bound)
        stats.trace.append(m.describe())
        APPLY[rule](pn, sc, m)
        stats.applied[rule] += 1
        stats.match_attempts += k.refresh(affected, rank, matching, heaps, queued)
        if paranoid:
            report = check_all(pn, sc)
            if not report.passed:
                raise InvariantViolation(report, stats.steps, m)
        if on_step is not None:
            on_step(pn, sc, m)

    stats.timings["reduce"] = time.perf_counter() - start
    return stats

"""Copy a Petri net into a flat statechart.

Objects are mapped first (places to Basic+OR pairs, transitions to
hyperedges), links second.  Each step is one pass over its source domain
with check-then-create semantics keyed by name, so re-running any step
creates nothing new.  Every ``apply_*`` returns the number of source
elements it visited.
"""

from __future__ import annotations

from typing import Optional

from .checks import ModelReport, check_name_uniqueness
from .model import InternalFault, PetriNet, ScModel


class PreconditionError(ValueError):
    def __init__(self, report: ModelReport):
        self.report = report
        super().__init__("initialise preconditions failed:\n" + report.render())


def check_init_preconditions(pn: PetriNet, sc: ScModel) -> ModelReport:
    report = ModelReport(checked=["sc-unpopulated"])
    n_states = len(sc.basics) + len(sc.ors) + len(sc.ands)
    if n_states or sc.statecharts:
        report.add("sc-unpopulated", "-",
                   f"statechart not unpopulated ({n_states} states, "
                   f"{len(sc.statecharts)} statecharts)")
    names = check_name_uniqueness(pn, None)
    names.checked = ["unique-pn-names"]
    return report.merge(names)


def apply_i1(pn: PetriNet, sc: ScModel) -> int:
    """Each place gets a same-named Basic inside a same-named OR."""
    for p in pn.places.values():
        b = sc.lookup_basic(p.name)
        o = sc.lookup_or(p.name)
        if b is not None and o is not None and b.rcontains is o:
            continue
        if b is None:
            b = sc.add_basic(p.name)
        if o is None:
            o = sc.add_or(p.name)
        sc.move_into(o, b)
    return len(pn.places)


def apply_i2(pn: PetriNet, sc: ScModel) -> int:
    for t in pn.transitions.values():
        if sc.lookup_hyperedge(t.name) is None:
            sc.add_hyperedge(t.name)
    return len(pn.transitions)


def apply_i3(pn: PetriNet, sc: ScModel) -> int:
    """Basic[p] -> HyperEdge[t] for every t in p.postt."""
    for p in pn.places.values():
        b = sc.lookup_basic(p.name)
        if b is None:
            raise InternalFault(f"no Basic for place {p.name}: run apply_i1 first")
        for t in p.postt:
            e = sc.lookup_hyperedge(t.name)
            if e is None:
                raise InternalFault(f"no HyperEdge for transition {t.name}: run apply_i2 first")
            sc.link_to_edge(b, e)
    return len(pn.places)


def apply_i4(pn: PetriNet, sc: ScModel) -> int:
    """HyperEdge[t] -> Basic[p] for every p in t.postp."""
    for t in pn.transitions.values():
        e = sc.lookup_hyperedge(t.name)
        if e is None:
            raise InternalFault(f"no HyperEdge for transition {t.name}: run apply_i2 first")
        for p in t.postp:
            b = sc.lookup_basic(p.name)
            if b is None:
                raise InternalFault(f"no Basic for place {p.name}: run apply_i1 first")
            sc.link_from_edge(e, b)
    return len(pn.transitions)


def initialise(pn: PetriNet, counts: Optional[dict] = None) -> ScModel:
    """Build the initial statechart for ``pn``.

    Raises :class:`PreconditionError` if net names are not unique.  When
    ``counts`` is given it receives the per-step visit counts.
    """
    sc = ScModel()
    report = check_init_preconditions(pn, sc)
    if not report.passed:
        raise PreconditionError(report)
    for step in (apply_i1, apply_i2, apply_i3, apply_i4):
        n = step(pn, sc)
        if counts is not None:
            counts[step.__name__] = n
    return sc

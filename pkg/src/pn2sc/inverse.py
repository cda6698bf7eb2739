"""Rebuild a Petri net from a flat (initialised, unreduced) statechart."""

from __future__ import annotations

from .checks import check_name_uniqueness
from .model import PetriNet, ScModel
from .pn_io import ParseDiagnostic, ParseError


def _flatness_problems(sc: ScModel) -> list[str]:
    problems = []
    if sc.ands:
        problems.append(f"model has {len(sc.ands)} AND states (already reduced)")
    if sc.statecharts:
        problems.append("model has a statechart root (already cleaned up)")
    for o in sc.ors.values():
        kids = list(o.contains)
        if len(kids) != 1 or kids[0].kind != "basic" or kids[0].name != o.name:
            problems.append(f"OR {o.name} does not hold exactly one Basic {o.name}")
        if o.rcontains is not None:
            problems.append(f"OR {o.name} is nested")
    for b in sc.basics.values():
        if b.rcontains is None:
            problems.append(f"Basic {b.name} is not inside an OR")
    report = check_name_uniqueness(None, sc)
    problems += [v.message for v in report.violations]
    clash = sorted({b.name for b in sc.basics.values()} & {e.name for e in sc.hyperedges.values()})
    problems += [f"name {n} is used by both a Basic and a HyperEdge" for n in clash]
    return problems


def invert_initialisation(sc: ScModel) -> PetriNet:
    """Inverse of :func:`pn2sc.initialise.initialise`.

    Raises :class:`ParseError` (diagnostics without a source position) when
    the statechart is not flat.
    """
    problems = _flatness_problems(sc)
    if problems:
        raise ParseError([ParseDiagnostic(0, 0, msg) for msg in problems])
    pn = PetriNet()
    places = {b: pn.add_place(b.name) for b in sc.basics.values()}
    for e in sc.hyperedges.values():
        t = pn.add_transition(e.name)
        for b in e.rnext:
            pn.add_arc(places[b], t)
        for b in e.next:
            pn.add_arc(t, places[b])
    return pn

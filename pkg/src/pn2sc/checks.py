"""Invariant checkers returning :class:`ModelReport` values."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .model import AndState, Basic, OrState, PetriNet, ScModel


class Violation(NamedTuple):
    invariant: str
    element: str
    message: str


@dataclass
class ModelReport:
    violations: list[Violation] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, invariant: str, element: str, message: str) -> None:
        self.violations.append(Violation(invariant, element, message))

    def merge(self, other: "ModelReport") -> "ModelReport":
        self.violations.extend(other.violations)
        self.checked.extend(c for c in other.checked if c not in self.checked)
        return self

    def render(self) -> str:
        lines = []
        failed = {v.invariant for v in self.violations}
        for name in self.checked:
            lines.append(f"{'FAIL' if name in failed else 'ok  '} {name}")
        for v in self.violations:
            lines.append(f"  {v.invariant}: {v.element}: {v.message}")
        return "\n".join(lines)

    def __bool__(self):
        return self.passed


def _duplicates(report: ModelReport, invariant: str, names) -> None:
    for name, n in sorted(Counter(names).items()):
        if n > 1:
            report.add(invariant, name, f"duplicate name {name} ({n} elements)")


def check_name_uniqueness(pn: Optional[PetriNet], sc: Optional[ScModel]) -> ModelReport:
    """Name uniqueness over PN named elements (jointly), Basics, ORs and
    HyperEdges.  AND names are free to repeat."""
    report = ModelReport(checked=["unique-pn-names", "unique-basic-names",
                                  "unique-or-names", "unique-hyperedge-names"])
    if pn is not None:
        _duplicates(report, "unique-pn-names",
                    [p.name for p in pn.places.values()]
                    + [t.name for t in pn.transitions.values()])
    if sc is not None:
        _duplicates(report, "unique-basic-names", [b.name for b in sc.basics.values()])
        _duplicates(report, "unique-or-names", [o.name for o in sc.ors.values()])
        _duplicates(report, "unique-hyperedge-names", [e.name for e in sc.hyperedges.values()])
    return report


def check_inv(pn: PetriNet, sc: ScModel) -> ModelReport:
    """Every live place has exactly one live OR of the same name."""
    report = ModelReport(checked=["inv"])
    counts = Counter(o.name for o in sc.ors.values())
    for p in pn.places.values():
        n = counts.get(p.name, 0)
        if n != 1:
            report.add("inv", p.name, f"place {p.name} has {n} OR states of that name")
    return report


def check_net_links(pn: PetriNet) -> ModelReport:
    """prep/postt and postp/pret are mutually inverse and reference live elements."""
    report = ModelReport(checked=["pn-links"])
    places = set(pn.places.values())
    transitions = set(pn.transitions.values())
    for t in transitions:
        for p in t.prep:
            if p not in places:
                report.add("pn-links", t.name, f"prep references dead place {p.name}")
            elif t not in p.postt:
                report.add("pn-links", t.name, f"{p.name} in prep but {t.name} not in its postt")
        for p in t.postp:
            if p not in places:
                report.add("pn-links", t.name, f"postp references dead place {p.name}")
            elif t not in p.pret:
                report.add("pn-links", t.name, f"{p.name} in postp but {t.name} not in its pret")
    for p in places:
        for t in p.postt:
            if t not in transitions or p not in t.prep:
                report.add("pn-links", p.name, f"postt entry {t.name} has no matching prep")
        for t in p.pret:
            if t not in transitions or p not in t.postp:
                report.add("pn-links", p.name, f"pret entry {t.name} has no matching postp")
    return report


def check_sc_structure(sc: ScModel) -> ModelReport:
    """Containment forest with legal kind nesting, inverse next/rnext links,
    and live, root-level statechart top states."""
    report = ModelReport(checked=["sc-containment", "sc-links", "sc-statechart"])
    live = set(sc.states())
    for s in live:
        parent = s.rcontains
        if parent is not None:
            if parent not in live:
                report.add("sc-containment", s.name, "container is not live")
            elif s not in parent.contains:
                report.add("sc-containment", s.name, f"missing from {parent.name}.contains")
    for c in list(sc.ors.values()) + list(sc.ands.values()):
        for child in c.contains:
            if child not in live:
                report.add("sc-containment", c.name, f"contains dead {child.name}")
            elif child.rcontains is not c:
                report.add("sc-containment", c.name, f"{child.name}.rcontains does not point back")
            if isinstance(c, OrState) and not isinstance(child, (Basic, AndState)):
                report.add("sc-containment", c.name, "OR may contain only Basic or AND")
            if isinstance(c, AndState) and not isinstance(child, OrState):
                report.add("sc-containment", c.name, "AND may contain only OR")
    for s in live:
        seen = set()
        cur = s
        while cur is not None:
            if cur in seen:
                report.add("sc-containment", s.name, "containment cycle")
                break
            seen.add(cur)
            cur = cur.rcontains
    edges = set(sc.hyperedges.values())
    for b in sc.basics.values():
        for e in b.next:
            if e not in edges or b not in e.rnext:
                report.add("sc-links", b.name, f"next entry {e.name} lacks inverse")
        for e in b.rnext:
            if e not in edges or b not in e.next:
                report.add("sc-links", b.name, f"rnext entry {e.name} lacks inverse")
    basics = set(sc.basics.values())
    for e in edges:
        for b in e.next:
            if b not in basics or e not in b.rnext:
                report.add("sc-links", e.name, f"next entry {b.name} lacks inverse")
        for b in e.rnext:
            if b not in basics or e not in b.next:
                report.add("sc-links", e.name, f"rnext entry {b.name} lacks inverse")
    if len(sc.statecharts) > 1:
        report.add("sc-statechart", "-", f"{len(sc.statecharts)} statecharts")
    for chart in sc.statecharts:
        top = chart.top_state
        if top not in live or not isinstance(top, AndState):
            report.add("sc-statechart", top.name, "top state is not a live AND")
        elif top.rcontains is not None:
            report.add("sc-statechart", top.name, "top state has a container")
    return report


def check_all(pn: Optional[PetriNet], sc: Optional[ScModel]) -> ModelReport:
    report = ModelReport()
    if pn is not None:
        report.merge(check_net_links(pn))
    if sc is not None:
        report.merge(check_sc_structure(sc))
    report.merge(check_name_uniqueness(pn, sc))
    if pn is not None and sc is not None:
        report.merge(check_inv(pn, sc))
    return report

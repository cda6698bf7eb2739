"""Final pass over the statechart after reduction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ScModel

TOPSTATE = "_TOPSTATE_"


@dataclass
class CleanupReport:
    deleted_ors: int = 0
    warnings: list = field(default_factory=list)


def delete_empty_ors(sc: ScModel) -> int:
    """Delete ORs with no contents, until none are left.  Empty ANDs stay."""
    deleted = 0
    while True:
        empty = [o for o in sc.ors.values() if not o.contains]
        if not empty:
            return deleted
        for o in empty:
            sc.delete_or(o)
        deleted += len(empty)


def create_topstate(sc: ScModel, warnings=None) -> None:
    roots = [o for o in sc.ors.values() if o.rcontains is None]
    if len(roots) != 1:
        if warnings is not None:
            warnings.append(f"{len(roots)} root OR states, no {TOPSTATE} created")
        return
    top = sc.add_and(TOPSTATE)
    sc.move_into(top, roots[0])


def create_statechart_instance(sc: ScModel, warnings=None) -> None:
    roots = [a for a in sc.ands.values() if a.rcontains is None]
    if len(roots) != 1:
        if warnings is not None:
            warnings.append(f"{len(roots)} root AND states, no statechart created")
        return
    top = roots[0]
    if any(chart.top_state is top for chart in sc.statecharts):
        return
    sc.add_statechart(top)


def cleanup(sc: ScModel) -> CleanupReport:
    report = CleanupReport()
    report.deleted_ors = delete_empty_ors(sc)
    create_topstate(sc, report.warnings)
    create_statechart_instance(sc, report.warnings)
    return report

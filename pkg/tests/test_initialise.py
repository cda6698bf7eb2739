import pytest
from hypothesis import given, settings, strategies as st

from pn2sc.bench import random_net
from pn2sc.checks import check_inv, check_name_uniqueness, check_sc_structure
from pn2sc.initialise import (PreconditionError, apply_i1, apply_i2, apply_i3, apply_i4,
                              check_init_preconditions, initialise)
from pn2sc.model import InternalFault, PetriNet, ScModel
from pn2sc.pn_io import serialize_statechart

from conftest import net


def edge_pairs(sc):
    out = {(b.name, e.name) for b in sc.basics.values() for e in b.next}
    into = {(e.name, b.name) for e in sc.hyperedges.values() for b in e.next}
    return out, into


def test_preconditions_pass(qtr):
    assert check_init_preconditions(qtr, ScModel()).passed


def test_preconditions_populated_statechart(qtr):
    sc = ScModel()
    sc.add_basic("x")
    report = check_init_preconditions(qtr, sc)
    assert [v.invariant for v in report.violations] == ["sc-unpopulated"]
    assert "statechart not unpopulated" in report.violations[0].message


def test_preconditions_joint_names():
    pn = PetriNet()
    pn.add_place("x")
    pn.add_transition("x")
    assert not check_init_preconditions(pn, ScModel()).passed
    with pytest.raises(PreconditionError):
        initialise(pn)


def test_i1_places_to_basic_and_or():
    pn = net("place a\nplace b")
    sc = ScModel()
    assert apply_i1(pn, sc) == 2
    for name in "ab":
        assert sc.lookup_basic(name).rcontains is sc.lookup_or(name)
    assert len(sc.basics) == len(sc.ors) == 2


def test_i1_empty_net():
    sc = ScModel()
    apply_i1(PetriNet(), sc)
    assert sc.size() == 0


def test_i2_transitions_to_hyperedges():
    sc = ScModel()
    apply_i2(net("transition t1\ntransition t2"), sc)
    assert {e.name for e in sc.hyperedges.values()} == {"t1", "t2"}
    sc2 = ScModel()
    apply_i2(net("place p"), sc2)
    assert not sc2.hyperedges


def test_i3_i4_on_qtr(qtr):
    sc = initialise(qtr)
    assert sc.lookup_basic("q").next == {sc.lookup_hyperedge("t")}
    assert sc.lookup_basic("r").next == set()
    assert sc.lookup_hyperedge("t").next == {sc.lookup_basic("r")}
    assert sc.lookup_hyperedge("t").rnext == {sc.lookup_basic("q")}


def test_i4_empty_postp():
    sc = initialise(net("place p\ntransition t\narc p t"))
    assert sc.lookup_hyperedge("t").next == set()


def test_link_steps_need_objects_first(qtr):
    with pytest.raises(InternalFault):
        apply_i3(qtr, ScModel())
    with pytest.raises(InternalFault):
        apply_i4(qtr, ScModel())


@given(st.integers(0, 100_000))
@settings(max_examples=100)
def test_steps_idempotent_and_linear(seed):
    pn = random_net(seed)
    counts = {}
    sc = initialise(pn, counts)
    assert counts == {"apply_i1": len(pn.places), "apply_i2": len(pn.transitions),
                      "apply_i3": len(pn.places), "apply_i4": len(pn.transitions)}
    before = serialize_statechart(sc)
    for step in (apply_i1, apply_i2, apply_i3, apply_i4):
        step(pn, sc)
    assert serialize_statechart(sc) == before


@given(st.integers(0, 100_000))
@settings(max_examples=100)
def test_random_net_edges_and_invariants(seed):
    pn = random_net(seed)
    sc = initialise(pn)
    out, into = edge_pairs(sc)
    assert out == {(p.name, t.name) for p in pn.places.values() for t in p.postt}
    assert into == {(t.name, p.name) for t in pn.transitions.values() for p in t.postp}
    assert len(sc.basics) == len(sc.ors) == len(pn.places)
    assert len(sc.hyperedges) == len(pn.transitions)
    assert not sc.ands and not sc.statecharts
    assert check_inv(pn, sc).passed
    assert check_name_uniqueness(pn, sc).passed
    assert check_sc_structure(sc).passed
    assert serialize_statechart(initialise(pn.copy())) == serialize_statechart(sc)


def test_empty_net():
    assert initialise(PetriNet()).size() == 0

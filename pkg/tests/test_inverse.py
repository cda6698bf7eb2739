import pytest
from hypothesis import given, settings, strategies as st

from pn2sc import convert
from pn2sc.bench import random_net
from pn2sc.initialise import initialise
from pn2sc.inverse import invert_initialisation
from pn2sc.iso import isomorphic_nets, isomorphic_statecharts
from pn2sc.model import ScModel
from pn2sc.pn_io import ParseError, parse_petri_net

from conftest import QTR


def test_round_trip_qtr(qtr):
    back = invert_initialisation(initialise(qtr))
    assert isomorphic_nets(back, parse_petri_net(QTR))


def test_empty():
    pn = invert_initialisation(ScModel())
    assert not pn.places and not pn.transitions


@given(st.integers(0, 100_000))
@settings(max_examples=100)
def test_invert_after_initialise(seed):
    pn = random_net(seed)
    assert isomorphic_nets(invert_initialisation(initialise(pn)), pn)


@given(st.integers(0, 100_000))
@settings(max_examples=50, deadline=None)
def test_initialise_after_invert(seed):
    sc = initialise(random_net(seed))
    again = initialise(invert_initialisation(sc))
    assert isomorphic_statecharts(again, sc)


def test_rejects_reduced_model(qtr):
    sc, _, _ = convert(qtr)
    with pytest.raises(ParseError) as err:
        invert_initialisation(sc)
    messages = " ".join(d.message for d in err.value.diagnostics)
    assert "AND" in messages and "statechart root" in messages


def test_rejects_or_without_matching_basic():
    sc = ScModel()
    sc.move_into(sc.add_or("o"), sc.add_basic("b"))
    with pytest.raises(ParseError):
        invert_initialisation(sc)


def test_rejects_basic_edge_name_clash():
    sc = ScModel()
    sc.move_into(sc.add_or("x"), sc.add_basic("x"))
    sc.add_hyperedge("x")
    with pytest.raises(ParseError):
        invert_initialisation(sc)

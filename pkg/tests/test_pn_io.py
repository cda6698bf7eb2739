import pytest
from hypothesis import given, settings, strategies as st

from pn2sc import convert
from pn2sc.bench import random_net
from pn2sc.initialise import initialise
from pn2sc.iso import isomorphic_nets, isomorphic_statecharts
from pn2sc.model import ScModel
from pn2sc.pn_io import (ParseError, parse_petri_net, parse_statechart, serialize_petri_net,
                         serialize_statechart)

from conftest import QTR


def names(elems):
    return {e.name for e in elems}


def test_parse_smallest_net():
    pn = parse_petri_net("place q\nplace r\ntransition t\narc q t\narc t r")
    q, r, t = pn.place_named("q"), pn.place_named("r"), pn.transition_named("t")
    assert t.prep == {q} and t.postp == {r}
    assert q.postt == {t} and r.pret == {t}
    assert q.pret == set() and r.postt == set()


def test_parse_empty():
    pn = parse_petri_net("")
    assert not pn.places and not pn.transitions


def test_parse_duplicate_name():
    with pytest.raises(ParseError) as err:
        parse_petri_net("place p\nplace p")
    (d,) = err.value.diagnostics
    assert (d.line, d.column, d.message) == (2, 7, "duplicate name p")


def test_parse_duplicate_across_kinds():
    with pytest.raises(ParseError) as err:
        parse_petri_net("place x\ntransition x")
    assert err.value.diagnostics[0].message == "duplicate name x"


@pytest.mark.parametrize("text, message", [
    ("place a\nplace b\narc a b", "same kind"),
    ("place a\narc a t", "unknown element t"),
    ("plac a", "unknown keyword plac"),
    ("place", "exactly one name"),
    ("place a,b", "invalid identifier"),
    ("place a\ntransition t\narc a", "exactly two endpoints"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError) as err:
        parse_petri_net(text)
    assert any(message in d.message for d in err.value.diagnostics)
    assert all(d.line >= 1 and d.column >= 1 for d in err.value.diagnostics)


def test_parse_is_all_or_nothing_and_reports_every_error():
    with pytest.raises(ParseError) as err:
        parse_petri_net("place a\nplace a\nbogus\narc a zz")
    assert [d.line for d in err.value.diagnostics] == [2, 3, 4]


def test_parse_comments_blank_lines_forward_refs():
    pn = parse_petri_net("# net\n\narc q t\n  place q\n   # indented comment\ntransition t\n")
    assert pn.transition_named("t").prep == {pn.place_named("q")}


def test_duplicate_arc_warns():
    warnings = []
    pn = parse_petri_net("place a\ntransition t\narc a t\narc a t", warnings)
    assert len(pn.transition_named("t").prep) == 1
    assert [w.severity for w in warnings] == ["warning"]


def test_serialize_empty():
    assert serialize_petri_net(parse_petri_net("")) == ""


def test_serialize_canonical_order():
    pn = parse_petri_net("arc t r\narc q t\ntransition t\nplace r\nplace q")
    assert serialize_petri_net(pn) == QTR


@given(st.integers(0, 100_000))
@settings(max_examples=200)
def test_petri_net_round_trip(seed):
    pn = random_net(seed)
    text = serialize_petri_net(pn)
    back = parse_petri_net(text)
    assert isomorphic_nets(back, pn)
    assert serialize_petri_net(back) == text


def test_serialize_statechart_empty():
    assert serialize_statechart(ScModel()) == ""


def test_serialize_statechart_after_pipeline(qtr):
    sc, _, _ = convert(qtr)
    assert serialize_statechart(sc) == (
        "statechart _TOPSTATE_\n"
        "and _TOPSTATE_\n"
        "  or q_OR_r\n"
        "    basic q\n"
        "    basic r\n"
        "edge t : q -> r\n")


def test_serialize_edge_line():
    sc = ScModel()
    a, b = sc.add_basic("a"), sc.add_basic("b")
    e = sc.add_hyperedge("e")
    sc.link_to_edge(a, e)
    sc.link_from_edge(e, b)
    assert "edge e : a -> b\n" in serialize_statechart(sc)


def test_serialize_edge_with_empty_sides():
    sc = ScModel()
    sc.add_hyperedge("e")
    text = serialize_statechart(sc)
    assert text == "edge e : ->\n"
    assert len(parse_statechart(text).hyperedges) == 1


def test_serialize_is_deterministic_across_copies():
    pn = random_net(3)
    sc, _, _ = convert(pn)
    assert serialize_statechart(sc) == serialize_statechart(sc)
    assert serialize_statechart(sc.copy()) == serialize_statechart(sc)


def test_children_ordered_by_shape_then_name():
    sc = ScModel()
    o = sc.add_or("o")
    a = sc.add_and("a")
    inner = sc.add_or("inner")
    sc.move_into(inner, sc.add_basic("z"))
    sc.move_into(a, inner)
    for n in ("y", "x"):
        sc.move_into(o, sc.add_basic(n))
    sc.move_into(o, a)
    lines = serialize_statechart(sc).splitlines()
    basics = [line.strip() for line in lines if line.startswith("  basic")]
    assert basics == ["basic x", "basic y"]


def test_parse_statechart_empty():
    assert parse_statechart("").size() == 0


def test_parse_statechart_bad_nesting():
    with pytest.raises(ParseError) as err:
        parse_statechart("and a\n  basic b\n")
    assert err.value.diagnostics[0].message == "AND may contain only OR"


@pytest.mark.parametrize("text, message", [
    ("or o\n  or p\n", "OR may contain only Basic or AND"),
    ("basic b\n  basic c\n", "Basic may not contain"),
    ("or o\n basic b\n", "multiple of two"),
    ("or o\n    basic b\n", "skips a level"),
    ("basic b\nbasic b\n", "duplicate Basic name b"),
    ("or o\nor o\n", "duplicate OR name o"),
    ("edge e : x -> \n", "unknown edge endpoint x"),
    ("basic a\nedge e : a -> a\nedge e : a -> a\n", "duplicate HyperEdge name e"),
    ("statechart top\nor top\n", "not a unique root AND"),
    ("edge e a b\n", "expected 'edge NAME"),
])
def test_parse_statechart_errors(text, message):
    with pytest.raises(ParseError) as err:
        parse_statechart(text)
    assert any(message in d.message for d in err.value.diagnostics)


@given(st.integers(0, 100_000), st.booleans())
@settings(max_examples=150)
def test_statechart_round_trip(seed, reduce_first):
    pn = random_net(seed)
    sc = convert(pn)[0] if reduce_first else initialise(pn)
    text = serialize_statechart(sc)
    back = parse_statechart(text)
    assert isomorphic_statecharts(back, sc)
    assert sorted(s.name for s in back.states()) == sorted(s.name for s in sc.states())
    assert names(back.hyperedges.values()) == names(sc.hyperedges.values())
    assert serialize_statechart(back) == text

import pytest
from hypothesis import given, settings, strategies as st

from pn2sc import convert
from pn2sc.bench import (GenSpec, corpus_net, format_table, generate_sp, perturbed_sp, random_net,
                         run_bench, write_csv)
from pn2sc.pn_io import serialize_petri_net


def test_two_places_is_series_pair():
    pn = generate_sp(GenSpec(2, seed=123))
    assert len(pn.places) == 2 and len(pn.transitions) == 1
    (t,) = pn.transitions.values()
    assert len(t.prep) == 1 and len(t.postp) == 1 and t.prep != t.postp


def test_single_place():
    pn = generate_sp(GenSpec(1))
    assert len(pn.places) == 1 and not pn.transitions


def test_sp200_reduces_to_one_place():
    pn = generate_sp(GenSpec(200, seed=7))
    assert len(pn.places) == 200
    sc, stats, _ = convert(pn)
    assert len(pn.places) == 1 and not pn.transitions
    assert stats.applied["Post1"] > 0 and stats.applied["Post2"] + stats.applied["Post3"] > 0


def test_invalid_spec():
    with pytest.raises(ValueError):
        GenSpec(0)
    with pytest.raises(ValueError):
        GenSpec(5, parallel_probability=1.5)


@given(st.integers(1, 300), st.integers(0, 2**64 - 1), st.sampled_from([0.0, 0.3, 0.7, 1.0]))
@settings(max_examples=80, deadline=None)
def test_generated_nets_are_exact_and_reducible(n, seed, pprob):
    spec = GenSpec(n, seed, pprob)
    pn = generate_sp(spec)
    assert len(pn.places) == n
    assert serialize_petri_net(generate_sp(spec)) == serialize_petri_net(pn)
    sc, _, report = convert(pn, paranoid=n <= 40)
    assert len(pn.places) == 1 and not pn.transitions
    assert [c.top_state.name for c in sc.statecharts] == ["_TOPSTATE_"]
    assert report.warnings == []


def test_run_bench_single_place():
    rows = run_bench([1], seed=0, repetitions=1)
    assert [(r.size, r.phase, r.final_places) for r in rows] == [
        (1, "initialise", 1), (1, "reduce", 1), (1, "cleanup", 1)]
    assert all(r.median_ms < 50 for r in rows)


def test_run_bench_rows_and_outputs(tmp_path):
    rows = run_bench([200, 500, 1000], seed=0, repetitions=1)
    assert sorted({r.size for r in rows}) == [200, 500, 1000]
    assert all(r.final_places == 1 for r in rows)
    table = format_table(rows)
    assert table.splitlines()[0].split() == ["size", "phase", "median_ms", "final_places"]
    assert len(table.splitlines()) == 10
    path = tmp_path / "b.csv"
    write_csv(rows, str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "size,phase,median_ms,final_places" and len(lines) == 10


def test_run_bench_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_bench([], 0, 1)
    with pytest.raises(ValueError):
        run_bench([10], 0, 0)


@given(st.integers(0, 10**9))
@settings(max_examples=200)
def test_small_generators_respect_bounds(seed):
    for pn in (random_net(seed), perturbed_sp(seed), corpus_net(seed)):
        assert 1 <= len(pn.places) <= 12 and len(pn.transitions) <= 12
    assert serialize_petri_net(perturbed_sp(seed)) == serialize_petri_net(perturbed_sp(seed))
    assert len(perturbed_sp(seed, max_places=5).places) <= 5

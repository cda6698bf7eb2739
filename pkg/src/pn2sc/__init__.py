"""Petri net to hierarchical statechart transformation by in-place rewriting."""

from .checks import ModelReport, check_inv, check_name_uniqueness
from .cleanup import cleanup
from .initialise import initialise
from .inverse import invert_initialisation
from .iso import isomorphic_nets, isomorphic_statecharts
from .model import PetriNet, ScModel
from .pn_io import (ParseError, parse_petri_net, parse_statechart,
                    serialize_petri_net, serialize_statechart)
from .reduce import RunStats, run_to_fixpoint

__version__ = "0.1.0"


def convert(pn: PetriNet, **reduce_opts):
    """Run initialise, reduce and cleanup on ``pn`` (mutated in place).

    Returns ``(sc, stats, cleanup_report)``.
    """
    sc = initialise(pn)
    stats = run_to_fixpoint(pn, sc, **reduce_opts)
    report = cleanup(sc)
    return sc, stats, report

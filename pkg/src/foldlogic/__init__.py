"""Flat-foldability checking and Boolean gadgets on the 30-degree lattice.

The modules build on each other roughly in this order: :mod:`.exact`
(arithmetic in Q(sqrt3)), :mod:`.pattern` (crease patterns), :mod:`.local`
(single-vertex and wire checks), :mod:`.solver` (layer orders), :mod:`.gadgets`,
:mod:`.verifier`, :mod:`.automaton`, :mod:`.composer` and :mod:`.io`.
"""
from .automaton import Boundary, Row, evolve, rule110, rule110_step
from .composer import (
    Instance,
    Netlist,
    SimMode,
    build_rule110_cell,
    build_sierpinski_cell,
    compose,
    simulate_rule110,
    simulate_sierpinski,
)
from .exact import ExactPoint, ExactScalar
from .gadgets import Gadget, catalog, make_gadget
from .io import ParseError, SnapError, export_fold, export_svg, import_fold
from .pattern import CreaseLabel, CreasePattern, Selection, validate_pattern
from .solver import Verdict, globally_flat_foldable
from .verifier import Level, forced_outputs, verify_truth_table

__version__ = "0.1.0"

__all__ = [
    "Boundary", "CreaseLabel", "CreasePattern", "ExactPoint", "ExactScalar", "Gadget", "Instance",
    "Level", "Netlist", "ParseError", "Row", "Selection", "SimMode", "SnapError", "Verdict",
    "build_rule110_cell", "build_sierpinski_cell", "catalog", "compose", "evolve", "export_fold",
    "export_svg", "forced_outputs", "globally_flat_foldable", "import_fold", "make_gadget", "rule110",
    "rule110_step", "simulate_rule110", "simulate_sierpinski", "validate_pattern", "verify_truth_table",
]

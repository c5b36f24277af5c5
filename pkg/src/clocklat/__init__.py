"""clocklat: multiverse states and their generalized clock lattices.

Models 4-valent graphs on compact oriented surfaces with boundary
("multiverses"), enumerates their states through perfect matchings on an
embedded bipartite spine, and builds two lattices on them: the planar
lattice of counterclockwise plane transpositions, and one distributive
lattice per viable circulation under surface transpositions.
"""

from . import checks, combmap, dual, files, lattice, multiverse, planar, \
    sampler, spine
from .combmap import (
    Arrangement,
    CombinatorialMap,
    ContainmentForest,
    assemble_arrangement,
    build_map,
)
from .files import load_multiverse, parse_multiverse
from .multiverse import (
    Multiverse,
    detect_dead_components,
    enumerate_states,
    euler_check,
    validate_multiverse,
)
from .spine import build_spine, build_tait, canonical_framing, \
    enumerate_matchings
from .planar import build_planar_clock_lattice, verify_kauffman_equivalence
from .dual import DualGraph, build_circulation_lattice

__all__ = [
    "Arrangement", "CombinatorialMap", "ContainmentForest", "Multiverse",
    "DualGraph", "assemble_arrangement", "build_map", "build_spine",
    "build_tait", "build_planar_clock_lattice", "build_circulation_lattice",
    "canonical_framing", "checks", "combmap", "detect_dead_components",
    "dual", "enumerate_matchings", "enumerate_states", "euler_check",
    "files", "lattice", "load_multiverse", "multiverse", "parse_multiverse",
    "planar", "sampler", "spine", "validate_multiverse",
    "verify_kauffman_equivalence",
]

__version__ = "0.1.0"

"""Locating arrays for combinatorial interaction testing.

Build, verify and search for arrays from which a single faulty interaction
can be identified from pass/fail outcomes, with the minimum-size search
reduced to a sequence of SAT instances.
"""

from .backend import BackendConfig, Sat, Unknown, Unsat, solve
from .encoder import EncodingConfig, Scheme, decode, encode, read_dimacs, write_dimacs
from .model import (
    Inconsistent,
    Interaction,
    Located,
    ModelError,
    NoFault,
    SutModel,
    TestArray,
    enumerate_interactions,
    fixture,
    indistinguishable_pairs,
    is_covering,
    is_locating_1t,
    is_locating_bar1t,
    locate_fault,
    parse_array,
    read_array,
    rho,
    simulate_outcomes,
    write_array,
)
from .search import NoArrayFound, SearchConfig, SearchOutcome, find_minimum, lower_bound

__version__ = "0.1.0"

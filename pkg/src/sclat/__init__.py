"""Single-crossing bounds of preferences over partially ordered alternatives.

Modules
-------
poset, structure
    Finite posets as bitmask rows; crowns, diamonds, chalices, weak cycles, forks.
preference, chains, lattice
    Weak orders, chain reachability, upper bounds, joins and meets.
oracle, sweeps, kernels
    Brute-force ground truth and theorem sweeps; ``kernels`` picks the compiled
    sweep kernel when it is built and falls back to pure Python otherwise.
compstat, ambiguity, social
    Comparative statics on chains, maxmin preferences over acts, acceptable
    aggregation under a normative constraint.
"""

from .errors import (
    EmptyInput,
    InputError,
    InternalSearchExhausted,
    NoJoin,
    NoMeet,
    NotAForkPoset,
    NotConsistent,
    PreconditionFailed,
    SclatError,
    TooLarge,
)
from .poset import Poset, Relation, chain, antichain, dual, poset_from_covers, transitive_closure, transitive_reduction
from .preference import Profile, WeakOrder, enumerate_weak_orders, parse_ranking, sc_dominates
from .chains import build_chain_digraph, has_p_chain, has_strict_p_chain, witness_chain
from .lattice import core_relation, is_minimum_upper_bound, is_upper_bound, join, lattice_status, meet, suzumura_extend
from .structure import classify_fork, find_crown, find_diamond, structure_report
from .social import construct_acceptable, exists_acceptable_swf, is_acceptable
from .kernels import BACKEND

__version__ = "0.1.0"

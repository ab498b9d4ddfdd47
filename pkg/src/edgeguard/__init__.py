"""Edge guard sets for plane graphs.

Quadrangulations get at most floor(n/3) guards through a guard coloring;
stacked triangulations get at most floor(2n/7) through stacking-tree
reduction.  Lower-bound generators and an exact oracle are included for
checking.
"""

from .generators import (
    GenSpec, enumerate_stacked, gen_qk, gen_random_quad_2deg, gen_random_stacked,
    gen_stacked_lower,
)
from .graph_io import parse_guards, parse_pg1, serialize_guards, serialize_pg1
from .oracle import OracleResult, min_edge_guards
from .plane_graph import (
    PlaneGraph, build, build_dual, canonical_form, classify, verify_guard_set,
)
from .quad_guard import guard_quadrangulation
from .stacked_guard import LedgerEntry, guard_stacked

__all__ = [
    "GenSpec", "LedgerEntry", "OracleResult", "PlaneGraph", "build", "build_dual",
    "canonical_form", "classify", "enumerate_stacked", "gen_qk", "gen_random_quad_2deg",
    "gen_random_stacked", "gen_stacked_lower", "guard_quadrangulation", "guard_stacked",
    "min_edge_guards", "parse_guards", "parse_pg1", "serialize_guards", "serialize_pg1",
    "verify_guard_set",
]

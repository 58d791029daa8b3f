"""Exact circular colourings of weighted symmetric digraphs."""

from .chromatic import (
    ChiResult,
    Decision,
    arc_inequality_check,
    chi_c_exact,
    corollary2_color,
    corollary3_kd_color,
    corollary4_check,
    decide_r,
    extract_breaker,
    kd_coloring_from_circular,
)
from .coloring import CircularColoring, circular_distance, verify_coloring
from .cycles import (
    INF,
    MaxRatio,
    cycle_breaks,
    cycle_cost,
    danger_filter,
    enumerate_dicycles,
    max_ratio_exhaustive,
    max_ratio_parametric,
    mod_r,
    tau,
    traversal_split,
)
from .errors import CapExceeded, InputError, UndefinedBoundError
from .graph import (
    Breaker,
    Dicycle,
    WeightedSymmetricDigraph,
    breaker_complement,
    breaker_from_orientation,
    derive_symmetric,
    max_pair_weight,
)
from .potential import construct_coloring

__version__ = "0.1.0"

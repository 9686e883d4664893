"""Correspondence (DP-) coloring toolkit: independent-set counting,
IS-richness checks, exact and resampling-based solvers, and random-graph
concentration experiments."""

from .correspondence import (
    CorrespondenceAssignment,
    available_colors,
    build_cover_graph,
    from_lists,
    random_assignment,
    validate,
)
from .errors import LoadError, ParameterError, ProfileError, ResourceError
from .graph import Graph, induced_subgraph, random_graph, turan_bound
from .iscount import ISProfile, brute_profile, count_profile, sample_independent_set
from .richness import binom_le, check_is_rich_exact, is_b_large, max_verified_b, verify_obsver
from .solver import SolveResult, decide_colorable, lll_color

__version__ = "0.1.0"

"""Approximation algorithms for duo-preserving string mappings and
consecutive bipartite matchings."""

from .bounded import ImprovementMove, bounded_size_improvements, find_move
from .core import (
    ConsecutiveMatching,
    DuoGraph,
    Edge,
    Streak,
    build_from_strings,
    close_set,
    compatible,
    decompose_streaks,
    edges_overlap,
    is_valid,
    overlap_set,
)
from .errors import (
    DuomapError,
    EdgeAlreadyRemoved,
    EpsilonOutOfRange,
    InstanceTooLarge,
    InvalidMatching,
    ParseError,
    PermutationMismatch,
    PreconditionViolated,
    SizeGuardExceeded,
)
from .greedy import GreedyTrace, StreakIndex, greedy, initial_streak_scan
from .instances import (
    LetterMapping,
    MPSMInstance,
    extract_letter_mapping,
    gen_mcsp_instance,
    gen_random_graph,
    gen_staircase_graph,
    mcsp_pieces,
    parse_instance,
    serialize_instance,
)
from .local_search import fast_local_improvements, local_improvements_reference
from .matching import approx3_phase2
from .oracle import audit_local_optimum, exact_opt
from .pipelines import PipelineReport, approx3, approx4, approx267, approx_eps

__version__ = "0.1.0"

__all__ = [
    "ConsecutiveMatching",
    "DuoGraph",
    "Edge",
    "Streak",
    "build_from_strings",
    "close_set",
    "compatible",
    "decompose_streaks",
    "edges_overlap",
    "is_valid",
    "overlap_set",
    "DuomapError",
    "EdgeAlreadyRemoved",
    "EpsilonOutOfRange",
    "InstanceTooLarge",
    "InvalidMatching",
    "ParseError",
    "PermutationMismatch",
    "PreconditionViolated",
    "SizeGuardExceeded",
    "LetterMapping",
    "MPSMInstance",
    "extract_letter_mapping",
    "gen_mcsp_instance",
    "gen_random_graph",
    "gen_staircase_graph",
    "mcsp_pieces",
    "parse_instance",
    "serialize_instance",
    "ImprovementMove",
    "bounded_size_improvements",
    "find_move",
    "GreedyTrace",
    "StreakIndex",
    "greedy",
    "initial_streak_scan",
    "fast_local_improvements",
    "local_improvements_reference",
    "approx3_phase2",
    "audit_local_optimum",
    "exact_opt",
    "PipelineReport",
    "approx3",
    "approx4",
    "approx267",
    "approx_eps",
]

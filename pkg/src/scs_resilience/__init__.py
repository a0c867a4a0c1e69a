"""Resilience analysis of synchronized multi-robot communication systems."""

from .errors import SCSError, ValidationError, ParseError, LimitExceeded, BudgetExceeded
from .geometry import Instance, Point, make_instance, synthesize_schedule
from .rings import decompose
from .meeting import MeetingGraph, build_meeting_graph, prevention_test, brute_force_meet, count_starving
from .resilience import (
    INFINITE,
    k_resilience_general,
    one_resilience_fast,
    starvation_number,
    tie_summary,
    tree_one_resilience,
    tree_two_resilience,
    tree_k_resilience,
    tree_resilience,
    mode_of_differences,
)
from .simulate import SimConfig, simulate, detect_starving
from .reduction import CirculantGraph, knn_augmentation, circulant_mis, build_caterpillar_scs, verify_reduction
from .io import parse_instance, instance_to_document

__version__ = "0.1.0"

__all__ = [
    "SCSError",
    "ValidationError",
    "ParseError",
    "LimitExceeded",
    "BudgetExceeded",
    "Instance",
    "Point",
    "make_instance",
    "synthesize_schedule",
    "decompose",
    "MeetingGraph",
    "build_meeting_graph",
    "prevention_test",
    "brute_force_meet",
    "count_starving",
    "INFINITE",
    "k_resilience_general",
    "one_resilience_fast",
    "starvation_number",
    "tie_summary",
    "tree_one_resilience",
    "tree_two_resilience",
    "tree_k_resilience",
    "tree_resilience",
    "mode_of_differences",
    "SimConfig",
    "simulate",
    "detect_starving",
    "CirculantGraph",
    "knn_augmentation",
    "circulant_mis",
    "build_caterpillar_scs",
    "verify_reduction",
    "parse_instance",
    "instance_to_document",
]

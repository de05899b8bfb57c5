"""boxfront: exact nondominated-set enumeration via box decomposition."""

from .dominance import (
    DominanceRelation,
    OutcomeSet,
    compare,
    filter_nondominated,
    ideal_point,
    upper_bound_point,
)
from .generic_split import Box, Decomposition, init_starting_box
from .vsplit import VBox, VSplitDecomposition, init_starting_box_vsplit
from .scalarize import (
    Method,
    ScalarizationConfig,
    Subproblem,
    Variant,
    build_epsilon_constraint,
    build_tchebycheff,
    evaluate,
)
from .backends import (
    ExplicitSetBackend,
    KnapsackBackend,
    KnapsackInstance,
    generate_knapsack,
    materialize_outcomes,
    read_instance,
    solve,
)
from .driver import (
    Algorithm,
    RunConfig,
    RunStats,
    SelectionRule,
    applicable_bound,
    check_bound,
    run,
    verify_correctness,
)
from .estimator import BoxDecompositionEnumerator, ParetoFilter
from .validation import UsageError

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "Box",
    "BoxDecompositionEnumerator",
    "Decomposition",
    "DominanceRelation",
    "ExplicitSetBackend",
    "KnapsackBackend",
    "KnapsackInstance",
    "Method",
    "OutcomeSet",
    "ParetoFilter",
    "RunConfig",
    "RunStats",
    "ScalarizationConfig",
    "SelectionRule",
    "Subproblem",
    "UsageError",
    "VBox",
    "VSplitDecomposition",
    "Variant",
    "applicable_bound",
    "build_epsilon_constraint",
    "build_tchebycheff",
    "check_bound",
    "compare",
    "evaluate",
    "filter_nondominated",
    "generate_knapsack",
    "ideal_point",
    "init_starting_box",
    "init_starting_box_vsplit",
    "materialize_outcomes",
    "read_instance",
    "run",
    "solve",
    "upper_bound_point",
    "verify_correctness",
]

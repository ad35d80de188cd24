"""Stochastic matching with patience numbers: exact evaluation, optimal DP,
and numerical certification of the greedy 2-approximation."""

from .core import (
    Instance,
    InstanceError,
    SizeCapError,
    State,
    apply_failure,
    apply_success,
    format_instance,
    initial_state,
    parse_instance,
    probeable_edges,
    state_key,
)
from .generator import GeneratorSpec, generate_instances
from .montecarlo import SimResult, simulate
from .policy import (
    build_tree,
    greedy_first_edge,
    greedy_policy,
    policy_value,
    tree_value,
)
from .proofcheck import ChainReport, check_chain
from .solver import (
    check_lemma31,
    check_subtree_optimality,
    optimal_policy,
    optimal_value,
)

__all__ = [
    "ChainReport",
    "GeneratorSpec",
    "Instance",
    "InstanceError",
    "SimResult",
    "SizeCapError",
    "State",
    "apply_failure",
    "apply_success",
    "build_tree",
    "check_chain",
    "check_lemma31",
    "check_subtree_optimality",
    "format_instance",
    "generate_instances",
    "greedy_first_edge",
    "greedy_policy",
    "initial_state",
    "optimal_policy",
    "optimal_value",
    "parse_instance",
    "policy_value",
    "probeable_edges",
    "simulate",
    "state_key",
    "tree_value",
]

"""Exact solvers, hardness-reduction generators and brute-force oracles for
k-anonymity and l-diversity."""

from .core import (
    STAR,
    Alphabet,
    AnonymizationSolution,
    Database,
    InfeasibleError,
    anonymize_partition,
    group_cost,
    is_k_anonymous,
    suppress,
)
from .diversity import DiversityInstance, is_l_diverse, solve_l_diversity_bruteforce
from .hierarchy import GeneralizationHierarchy, generalize_partition, star_hierarchy, validate_hierarchy
from .simplex import build_anonymity_hypergraph, check_simplex_conditions, solve_simplex_matching
from .solvers import (
    brute_force_k_anonymity,
    kernelize,
    solve_2_anonymity,
    solve_k_anonymity_dnc,
    solve_k_anonymity_kernelized,
)

__version__ = "0.1.0"

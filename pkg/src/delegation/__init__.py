"""Delegated versus direct selection under noisy Gaussian signals."""

from .compare import DeltaResult, SweepCell, compare_point, direct_quality, sweep_grid
from .delegated import (DelegatedPolicy, FairnessStats, GroupMix, delegated_utility_per_hire,
                        fairness_stats, group_select_prob, unfairness_direction)
from .direct import (DirectPolicy, JointAllocation, g_fn, joint_allocate, net_value,
                     per_hire_utility_identity, solve_group, solve_threshold)
from .errors import (DegenerateThresholdError, DomainError, InsufficientSamplesError,
                     ModelError, SolverError)
from .population import (PopulationParams, PrincipalPrefs, QualityScales, derive_scales,
                         quality_bias)

__version__ = "0.1.0"

__all__ = [
    "DegenerateThresholdError", "DelegatedPolicy", "DeltaResult", "DirectPolicy",
    "DomainError", "FairnessStats", "GroupMix", "InsufficientSamplesError",
    "JointAllocation", "ModelError", "PopulationParams", "PrincipalPrefs",
    "QualityScales", "SolverError", "SweepCell", "compare_point", "delegated_utility_per_hire",
    "derive_scales", "direct_quality", "fairness_stats", "g_fn", "group_select_prob",
    "joint_allocate", "net_value", "per_hire_utility_identity", "quality_bias",
    "solve_group", "solve_threshold", "sweep_grid", "unfairness_direction",
]

"""Largest Gaps co-clustering of binary matrices under the Latent Block Model."""

__version__ = "0.1.0"

from .bounds import BoundInputs, prop1_col_bound, prop1_row_bound, theorem1_bound
from .estimation import EmptyClassError, estimate_parameters
from .estimator import LargestGapsCoclustering
from .evaluation import AlignmentResult, align_labels, dinf_distance, joint_success
from .experiments import ExperimentConfig, design_parameters, run_grid, summarize
from .gaps import (
    FitResult, GapProfile, ThresholdStrategy, build_gap_profile, cluster_1d,
    column_means, largest_gaps_fit, row_means, threshold_value,
)
from .model import (
    InvalidParametersError, KeyParameters, LabelAssignment, LBMParameters,
    check_assumptions, compute_key_parameters, sample, validate_parameters,
)

__all__ = [
    "AlignmentResult", "BoundInputs", "EmptyClassError", "ExperimentConfig", "FitResult",
    "GapProfile", "InvalidParametersError", "KeyParameters", "LBMParameters", "LabelAssignment",
    "LargestGapsCoclustering", "ThresholdStrategy", "align_labels", "build_gap_profile",
    "check_assumptions", "cluster_1d", "column_means", "compute_key_parameters",
    "design_parameters", "dinf_distance", "estimate_parameters", "joint_success",
    "largest_gaps_fit", "prop1_col_bound", "prop1_row_bound", "row_means", "run_grid",
    "sample", "summarize", "theorem1_bound", "threshold_value", "validate_parameters",
]

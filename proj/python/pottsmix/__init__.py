"""Approximate inference for pairwise k-class MRFs.

Low-rank relaxation solvers with randomized rounding for MAP estimation, an
unbiased importance-sampling partition function estimator, and exact plus
AIS baselines. The heavy lifting lives in the compiled extension.
"""

from ._core import (
    AisResult,
    BlockProjector,
    BlockSolution,
    ExactSummary,
    M4PlusResult,
    M4Result,
    MrfInstance,
    PartitionEstimate,
    RoundingBatch,
    SimplexFrame,
    VectorSolution,
    ais_estimate,
    binary_to_multiclass,
    coupling_strength,
    embed_config,
    enumerate_exact,
    estimate_z,
    generate,
    mass_covered,
    objective,
    rank_bound,
    relaxed_objective,
    round_batch,
    simplex_frame,
    solve_m4,
    solve_m4_plus,
)

__all__ = [
    "AisResult",
    "BlockProjector",
    "BlockSolution",
    "ExactSummary",
    "M4PlusResult",
    "M4Result",
    "MrfInstance",
    "PartitionEstimate",
    "RoundingBatch",
    "SimplexFrame",
    "VectorSolution",
    "ais_estimate",
    "binary_to_multiclass",
    "coupling_strength",
    "embed_config",
    "enumerate_exact",
    "estimate_z",
    "generate",
    "mass_covered",
    "objective",
    "rank_bound",
    "relaxed_objective",
    "round_batch",
    "simplex_frame",
    "solve_m4",
    "solve_m4_plus",
]

__version__ = "0.1.0"

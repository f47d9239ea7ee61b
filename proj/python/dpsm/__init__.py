"""Directed point-set matching by neighbourhood transform voting."""

from ._dpsm import (
    ConfigError,
    ContractViolation,
    DegenerateInputError,
    DirectedPoint,
    GridCellError,
    GridResult,
    GridSpec,
    GridTable,
    GroundTruth,
    IterationConfig,
    MatchConfig,
    MatchResult,
    RigidTransform,
    Scene,
    SimilarityThresholds,
    SynthConfig,
    UndefinedMetricError,
    acppr,
    angular_distance,
    apply_transform,
    build_neighbor_table,
    compute_transform,
    estimate_global_transform,
    generate_scene,
    iterate_scores,
    kuhn_munkres_max,
    match_point_sets,
    normalize_scores,
    run_grid,
    run_trial,
    transform_similarity,
)

__version__ = "0.1.0"

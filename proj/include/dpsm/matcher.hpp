#pragma once

#include "dpsm/assignment.hpp"
#include "dpsm/geometry.hpp"
#include "dpsm/scoring.hpp"
#include "dpsm/similarity.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dpsm {

struct MatchConfig {
    std::size_t k = 12;
    SimilarityThresholds thresholds;
    IterationConfig iteration;
    std::optional<double> tau;  ///< acceptance threshold on normalized score; disabled when empty

    void validate() const;
};

struct MatchResult {
    Matching pairs;
    std::vector<double> scores;  ///< normalized score of each pair, parallel to `pairs`
    RigidTransform global_transform;
    std::size_t iterations_run = 0;
    ScoreMatrix score_matrix;  ///< final normalized matrix
};

/// Full pipeline: hypotheses, neighbourhoods, score iteration, assignment,
/// optional filtering and a least-squares global transform.
///
/// Both sets need at least two points. Throws DegenerateInputError otherwise,
/// or when filtering leaves no pair to fit a transform to.
MatchResult match_point_sets(const PointSet& a, const PointSet& b, const MatchConfig& config,
                             const IterationObserver& observer = {});

/// Rigid transform minimising the squared location residuals over `pairs`.
/// Orientations are ignored except for the single-pair fallback, which is
/// compute_transform on that pair.
RigidTransform estimate_global_transform(const PointSet& a, const PointSet& b, const Matching& pairs);

}  // namespace dpsm

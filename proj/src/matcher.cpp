#include "dpsm/matcher.hpp"

#include "dpsm/error.hpp"

#include <cmath>
#include <string>

namespace dpsm {

void MatchConfig::validate() const {
    if (k < 1) throw ConfigError("neighbour count k must be at least 1");
    thresholds.validate();
    iteration.validate();
    if (tau && !(*tau >= 0.0 && *tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
}

MatchResult match_point_sets(const PointSet& a, const PointSet& b, const MatchConfig& config,
                             const IterationObserver& observer) {
    config.validate();
    if (a.size() < 2 || b.size() < 2) {
        throw DegenerateInputError("matching needs at least 2 points per set, got " + std::to_string(a.size()) +
                                   " and " + std::to_string(b.size()));
    }

    const TransformTable transforms = precompute_transforms(a, b);
    const NeighborTable neighbors_a = build_neighbor_table(a, config.k);
    const NeighborTable neighbors_b = build_neighbor_table(b, config.k);
    ScoreIteration iterated =
        iterate_scores(transforms, neighbors_a, neighbors_b, config.thresholds, config.iteration, observer);

    MatchResult result;
    result.pairs = filter_matches(kuhn_munkres_max(iterated.scores), iterated.scores, config.tau);
    result.scores.reserve(result.pairs.size());
    for (const auto& p : result.pairs) result.scores.push_back(iterated.scores(p.a, p.b));
    result.global_transform = estimate_global_transform(a, b, result.pairs);
    result.iterations_run = iterated.iterations;
    result.score_matrix = std::move(iterated.scores);
    return result;
}

RigidTransform estimate_global_transform(const PointSet& a, const PointSet& b, const Matching& pairs) {
    if (pairs.empty()) throw DegenerateInputError("no correspondences to estimate a transform from");
    for (const auto& p : pairs) {
        if (p.a >= a.size() || p.b >= b.size()) throw ContractViolation("correspondence index out of range");
    }
    if (pairs.size() == 1) return compute_transform(a[pairs[0].a], b[pairs[0].b]);

    const double count = static_cast<double>(pairs.size());
    double ax = 0.0, ay = 0.0, bx = 0.0, by = 0.0;
    for (const auto& p : pairs) {
        ax += a[p.a].x;
        ay += a[p.a].y;
        bx += b[p.b].x;
        by += b[p.b].y;
    }
    ax /= count;
    ay /= count;
    bx /= count;
    by /= count;

    // Cross-covariance terms; the optimal rotation is atan2(sin_part, cos_part).
    double cos_part = 0.0, sin_part = 0.0;
    for (const auto& p : pairs) {
        const double px = a[p.a].x - ax, py = a[p.a].y - ay;
        const double qx = b[p.b].x - bx, qy = b[p.b].y - by;
        cos_part += px * qx + py * qy;
        sin_part += px * qy - py * qx;
    }
    const double theta = wrap_angle(std::atan2(sin_part, cos_part));
    const double c = std::cos(theta), s = std::sin(theta);
    return {theta, bx - (c * ax - s * ay), by - (s * ax + c * ay)};
}

}  // namespace dpsm

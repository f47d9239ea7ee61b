#pragma once

#include "dpsm/geometry.hpp"

namespace dpsm {

/// Box cutoffs on the translation and rotation differences between two hypotheses.
struct SimilarityThresholds {
    double alpha = 10.0;                     ///< x-translation, scene units
    double beta = 10.0;                      ///< y-translation, scene units
    double delta = std::numbers::pi / 6.0;  ///< rotation, radians in (0, pi]

    /// Throws ConfigError unless alpha, beta > 0 and 0 < delta <= pi.
    void validate() const;
};

/// Agreement between two transform hypotheses, in [0, 1].
///
/// Zero whenever any difference exceeds its threshold (strictly), otherwise
/// 1 minus the mean of the three threshold-relative differences. Rotation
/// differences are measured with angular_distance so wrap-around is handled.
inline double transform_similarity(const RigidTransform& t1, const RigidTransform& t2,
                                   const SimilarityThresholds& th) noexcept {
    const double dx = std::fabs(t1.tx - t2.tx);
    if (dx > th.alpha) return 0.0;
    const double dy = std::fabs(t1.ty - t2.ty);
    if (dy > th.beta) return 0.0;
    const double dtheta = angular_distance(t1.theta, t2.theta);
    if (dtheta > th.delta) return 0.0;
    return 1.0 - (dx / th.alpha + dy / th.beta + dtheta / th.delta) / 3.0;
}

}  // namespace dpsm

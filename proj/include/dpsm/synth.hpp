#pragma once

#include "dpsm/assignment.hpp"
#include "dpsm/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dpsm {

struct SynthConfig {
    std::size_t n = 50;
    double range = 100.0;        ///< side length L of the square [0, L]^2
    double outlier_ratio = 0.0;  ///< fraction of pairs replaced by noise
    double jitter_ratio = 0.0;   ///< jitter range / scene range, per coordinate
    std::optional<RigidTransform> transform;  ///< random when empty
    std::uint64_t seed = 0;

    void validate() const;

    /// floor(outlier_ratio * n), robust to ratios like 0.29 that are not exact in binary.
    std::size_t outlier_count() const;
};

struct GroundTruth {
    Matching true_pairs;     ///< genuine correspondences, (index in A, index in B)
    Matching outlier_pairs;  ///< original pairs whose two endpoints were replaced by noise
    RigidTransform planted_transform;
    /// permutation[i] is the position in B of the point generated from A[i].
    std::vector<std::size_t> permutation;
};

struct Scene {
    PointSet a;
    PointSet b;
    GroundTruth truth;
};

/// Seeded synthetic scene:
///  1. A holds n points uniform in [0, L]^2 with uniform orientation;
///  2. B is the planted transform applied to A;
///  3. outlier_count() pairs, chosen at random, get both endpoints replaced
///     by fresh independent uniform points;
///  4. surviving B points get per-coordinate uniform jitter in
///     [-j L / 2, +j L / 2] (orientation untouched, no clamping);
///  5. B is shuffled.
/// A random planted transform draws theta in [0, 2pi) and t in [-L/2, L/2]^2.
Scene generate_scene(const SynthConfig& config);

}  // namespace dpsm

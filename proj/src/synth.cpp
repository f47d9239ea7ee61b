#include "dpsm/synth.hpp"

#include "dpsm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace dpsm {

void SynthConfig::validate() const {
    if (n < 2) throw ConfigError("synthetic scenes need n >= 2, got " + std::to_string(n));
    if (!(std::isfinite(range) && range > 0.0)) throw ConfigError("range must be positive and finite");
    if (!(outlier_ratio >= 0.0 && outlier_ratio <= 1.0))
        throw ConfigError("outlier ratio must lie in [0, 1], got " + std::to_string(outlier_ratio));
    if (!(jitter_ratio >= 0.0 && jitter_ratio <= 1.0))
        throw ConfigError("jitter ratio must lie in [0, 1], got " + std::to_string(jitter_ratio));
    if (transform && !(std::isfinite(transform->tx) && std::isfinite(transform->ty)))
        throw ConfigError("planted transform must be finite");
}

std::size_t SynthConfig::outlier_count() const {
    const auto count = static_cast<std::size_t>(std::floor(outlier_ratio * static_cast<double>(n) + 1e-9));
    return std::min(count, n);
}

Scene generate_scene(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coord(0.0, config.range);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    auto random_point = [&] {
        const double x = coord(rng);
        const double y = coord(rng);
        return DirectedPoint(x, y, angle(rng));
    };

    const std::size_t n = config.n;
    Scene scene;
    scene.a.reserve(n);
    for (std::size_t i = 0; i < n; ++i) scene.a.push_back(random_point());

    RigidTransform planted;
    if (config.transform) {
        planted = *config.transform;
    } else {
        std::uniform_real_distribution<double> shift(-config.range / 2.0, config.range / 2.0);
        const double theta = angle(rng);
        const double tx = shift(rng);
        const double ty = shift(rng);
        planted = RigidTransform(theta, tx, ty);
    }
    PointSet b_original = apply_transform(planted, scene.a);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> is_outlier(n, 0);
    const std::size_t outliers = config.outlier_count();
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(outliers));
    for (std::size_t r = 0; r < outliers; ++r) {
        const std::size_t i = order[r];
        is_outlier[i] = 1;
        scene.a[i] = random_point();
        b_original[i] = random_point();
    }

    const double half_width = config.jitter_ratio * config.range / 2.0;
    if (half_width > 0.0) {
        std::uniform_real_distribution<double> jitter(-half_width, half_width);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_outlier[i]) continue;
            b_original[i].x += jitter(rng);
            b_original[i].y += jitter(rng);
        }
    }

    std::vector<std::size_t> permutation(n);
    std::iota(permutation.begin(), permutation.end(), 0);
    std::shuffle(permutation.begin(), permutation.end(), rng);
    scene.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        scene.b[permutation[i]] = b_original[i];
        (is_outlier[i] ? scene.truth.outlier_pairs : scene.truth.true_pairs).push_back({i, permutation[i]});
    }
    scene.truth.planted_transform = planted;
    scene.truth.permutation = std::move(permutation);
    return scene;
}

}  // namespace dpsm

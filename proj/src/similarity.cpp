#include "dpsm/similarity.hpp"

#include "dpsm/error.hpp"

#include <cmath>
#include <string>

namespace dpsm {

void SimilarityThresholds::validate() const {
    if (!(std::isfinite(alpha) && alpha > 0.0))
        throw ConfigError("alpha must be a positive finite value, got " + std::to_string(alpha));
    if (!(std::isfinite(beta) && beta > 0.0))
        throw ConfigError("beta must be a positive finite value, got " + std::to_string(beta));
    if (!(delta > 0.0 && delta <= std::numbers::pi))
        throw ConfigError("delta must lie in (0, pi], got " + std::to_string(delta));
}

}  // namespace dpsm

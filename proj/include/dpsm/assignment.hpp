#pragma once

#include "dpsm/scoring.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dpsm {

struct MatchPair {
    std::size_t a = 0;  ///< index into set A (score-matrix row)
    std::size_t b = 0;  ///< index into set B (score-matrix column)

    friend auto operator<=>(const MatchPair&, const MatchPair&) = default;
};

/// Partial injective map A -> B, sorted by A index.
using Matching = std::vector<MatchPair>;

/// Maximum-total-score assignment via the Hungarian (Kuhn-Munkres) method.
///
/// Rectangular inputs are padded with zeros to square and the padded pairs
/// dropped, so the result always has min(rows, cols) pairs. Which optimum is
/// returned under ties is unspecified. O(max(m, n)^3).
Matching kuhn_munkres_max(const ScoreMatrix& w);

/// Sum of w over the pairs, accumulated in pair order.
double matching_total(const Matching& matching, const ScoreMatrix& w);

/// Drops pairs scoring strictly below tau. No-op when tau is empty.
Matching filter_matches(const Matching& matching, const ScoreMatrix& w, std::optional<double> tau);

}  // namespace dpsm

#include "dpsm/neighbors.hpp"

#include "dpsm/error.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace dpsm {

NeighborTable build_neighbor_table(const PointSet& points, std::size_t k) {
    if (points.empty()) throw DegenerateInputError("cannot build a neighbour table over an empty point set");
    if (k == 0) throw ConfigError("neighbour count k must be at least 1");

    const std::size_t n = points.size();
    NeighborTable table;
    table.k_ = std::min(k, n - 1);
    table.offsets_.reserve(n + 1);
    table.indices_.reserve(n * table.k_);
    table.offsets_.push_back(0);

    std::vector<std::pair<double, std::size_t>> candidates;
    candidates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        candidates.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) candidates.emplace_back(squared_distance(points[i], points[j]), j);
        }
        // Lexicographic pair order gives the ascending-index tie break.
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(table.k_),
                          candidates.end());
        for (std::size_t r = 0; r < table.k_; ++r) table.indices_.push_back(candidates[r].second);
        table.offsets_.push_back(table.indices_.size());
    }
    return table;
}

}  // namespace dpsm

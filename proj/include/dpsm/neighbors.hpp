#pragma once

#include "dpsm/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dpsm {

/// K nearest neighbours (by location) of every point in a set, self excluded.
///
/// Lists are ordered nearest first with distance ties broken by smaller index,
/// so a table is fully determined by its point set and K. K is clamped to
/// size - 1. The relation is directed: j in N(i) does not imply i in N(j).
class NeighborTable {
public:
    NeighborTable() = default;

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    /// Effective K after clamping.
    std::size_t k() const noexcept { return k_; }

    std::span<const std::size_t> neighbors(std::size_t i) const {
        return {indices_.data() + offsets_.at(i), indices_.data() + offsets_.at(i + 1)};
    }

    friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

private:
    friend NeighborTable build_neighbor_table(const PointSet&, std::size_t);

    std::size_t k_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> indices_;
};

/// Brute-force O(n^2 log n) construction. Throws DegenerateInputError on an
/// empty set and ConfigError when k is zero.
NeighborTable build_neighbor_table(const PointSet& points, std::size_t k);

}  // namespace dpsm

#pragma once

#include "dpsm/geometry.hpp"
#include "dpsm/neighbors.hpp"
#include "dpsm/similarity.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dpsm {

/// Dense row-major m x n matrix of non-negative matching scores.
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    double min() const;
    double max() const;

    friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Every hypothesis T_ij = compute_transform(a[i], b[j]).
class TransformTable {
public:
    TransformTable() = default;
    TransformTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    RigidTransform& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const RigidTransform& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<RigidTransform> data_;
};

struct IterationConfig {
    std::size_t max_iterations = 10;
    double convergence_tol = 1e-4;

    void validate() const;
};

TransformTable precompute_transforms(const PointSet& a, const PointSet& b);

/// The all-ones starting matrix.
ScoreMatrix init_scores(std::size_t rows, std::size_t cols);

/// One synchronous neighbourhood-consensus step:
///
///   W'(i,j) = W(i,j) + sum_{k in N_A(i), l in N_B(j)} W(k,l) * sim(T_ij, T_kl)
///
/// All reads come from `w`; the result is a fresh matrix.
ScoreMatrix update_scores(const ScoreMatrix& w, const TransformTable& transforms, const NeighborTable& neighbors_a,
                          const NeighborTable& neighbors_b, const SimilarityThresholds& thresholds);

/// Global min-max map onto [0, 1]. A constant matrix becomes all ones, or stays
/// all zeros if it is zero.
ScoreMatrix normalize_scores(const ScoreMatrix& w);

/// Largest absolute entrywise difference; shapes must agree.
double max_abs_difference(const ScoreMatrix& a, const ScoreMatrix& b);

/// Views handed to an iteration observer after each update + normalize step.
struct IterationSnapshot {
    std::size_t iteration;  ///< 1-based
    const ScoreMatrix& previous;
    const ScoreMatrix& updated;
    const ScoreMatrix& normalized;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct ScoreIteration {
    ScoreMatrix scores;
    std::size_t iterations = 0;
};

/// init -> repeat (update -> normalize) until the entrywise change between
/// consecutive normalized matrices drops below the tolerance, or the cap is hit.
ScoreIteration iterate_scores(const PointSet& a, const PointSet& b, std::size_t k,
                              const SimilarityThresholds& thresholds, const IterationConfig& config,
                              const IterationObserver& observer = {});

/// Same loop over prebuilt tables.
ScoreIteration iterate_scores(const TransformTable& transforms, const NeighborTable& neighbors_a,
                              const NeighborTable& neighbors_b, const SimilarityThresholds& thresholds,
                              const IterationConfig& config, const IterationObserver& observer = {});

}  // namespace dpsm

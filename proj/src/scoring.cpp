#include "dpsm/scoring.hpp"

#include "dpsm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpsm {

double ScoreMatrix::min() const {
    if (data_.empty()) throw ContractViolation("min of an empty score matrix");
    return *std::min_element(data_.begin(), data_.end());
}

double ScoreMatrix::max() const {
    if (data_.empty()) throw ContractViolation("max of an empty score matrix");
    return *std::max_element(data_.begin(), data_.end());
}

void IterationConfig::validate() const {
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
    if (!(convergence_tol >= 0.0)) throw ConfigError("convergence_tol must be non-negative");
}

TransformTable precompute_transforms(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw DegenerateInputError("cannot compute transforms for an empty point set");
    TransformTable table(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) table(i, j) = compute_transform(a[i], b[j]);
    }
    return table;
}

ScoreMatrix init_scores(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw DegenerateInputError("score matrix dimensions must be positive");
    return ScoreMatrix(rows, cols, 1.0);
}

ScoreMatrix update_scores(const ScoreMatrix& w, const TransformTable& transforms, const NeighborTable& neighbors_a,
                          const NeighborTable& neighbors_b, const SimilarityThresholds& thresholds) {
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    if (transforms.rows() != m || transforms.cols() != n || neighbors_a.size() != m || neighbors_b.size() != n) {
        throw ContractViolation("update_scores: shape mismatch between scores (" + std::to_string(m) + "x" +
                                std::to_string(n) + "), transforms (" + std::to_string(transforms.rows()) + "x" +
                                std::to_string(transforms.cols()) + ") and neighbour tables (" +
                                std::to_string(neighbors_a.size()) + ", " + std::to_string(neighbors_b.size()) + ")");
    }

    ScoreMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto nbrs_i = neighbors_a.neighbors(i);
        for (std::size_t j = 0; j < n; ++j) {
            const RigidTransform& tij = transforms(i, j);
            const auto nbrs_j = neighbors_b.neighbors(j);
            double support = 0.0;
            for (const std::size_t k : nbrs_i) {
                for (const std::size_t l : nbrs_j) {
                    const double s = transform_similarity(tij, transforms(k, l), thresholds);
                    if (s > 0.0) support += w(k, l) * s;
                }
            }
            out(i, j) = w(i, j) + support;
        }
    }
    return out;
}

ScoreMatrix normalize_scores(const ScoreMatrix& w) {
    ScoreMatrix out = w;
    if (w.values().empty()) return out;
    const double lo = w.min();
    const double hi = w.max();
    if (hi > lo) {
        const double span = hi - lo;
        for (double& v : out.values()) v = (v - lo) / span;
    } else {
        std::fill(out.values().begin(), out.values().end(), hi > 0.0 ? 1.0 : 0.0);
    }
    return out;
}

double max_abs_difference(const ScoreMatrix& a, const ScoreMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("max_abs_difference: shape mismatch");
    double worst = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t idx = 0; idx < av.size(); ++idx) worst = std::max(worst, std::fabs(av[idx] - bv[idx]));
    return worst;
}

ScoreIteration iterate_scores(const TransformTable& transforms, const NeighborTable& neighbors_a,
                              const NeighborTable& neighbors_b, const SimilarityThresholds& thresholds,
                              const IterationConfig& config, const IterationObserver& observer) {
    thresholds.validate();
    config.validate();

    ScoreIteration result{init_scores(transforms.rows(), transforms.cols()), 0};
    while (result.iterations < config.max_iterations) {
        ScoreMatrix updated = update_scores(result.scores, transforms, neighbors_a, neighbors_b, thresholds);
        ScoreMatrix normalized = normalize_scores(updated);
        ++result.iterations;
        if (observer) observer({result.iterations, result.scores, updated, normalized});
        const double change = max_abs_difference(normalized, result.scores);
        result.scores = std::move(normalized);
        if (change < config.convergence_tol) break;
    }
    return result;
}

ScoreIteration iterate_scores(const PointSet& a, const PointSet& b, std::size_t k,
                              const SimilarityThresholds& thresholds, const IterationConfig& config,
                              const IterationObserver& observer) {
    const TransformTable transforms = precompute_transforms(a, b);
    const NeighborTable neighbors_a = build_neighbor_table(a, k);
    const NeighborTable neighbors_b = build_neighbor_table(b, k);
    return iterate_scores(transforms, neighbors_a, neighbors_b, thresholds, config, observer);
}

}  // namespace dpsm

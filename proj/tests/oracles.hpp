#pragma once

// Independent reference implementations used only by the tests. None of them
// call into the library code they are checking.

#include "dpsm/geometry.hpp"
#include "dpsm/scoring.hpp"
#include "dpsm/similarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace dpsm::testing {

/// Maximum over all injective assignments of min(m, n) pairs, by exhaustive search.
inline double brute_force_assignment_max(const ScoreMatrix& w) {
    const bool transpose = w.rows() > w.cols();
    const std::size_t small = transpose ? w.cols() : w.rows();
    const std::size_t large = transpose ? w.rows() : w.cols();
    auto at = [&](std::size_t s, std::size_t l) { return transpose ? w(l, s) : w(s, l); };

    std::vector<char> taken(large, 0);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> chosen(small);
    std::function<void(std::size_t)> search = [&](std::size_t s) {
        if (s == small) {
            // Sum in ascending row order of the original matrix so totals are
            // comparable bit-for-bit with a row-ordered sum.
            std::vector<std::pair<std::size_t, double>> terms;
            for (std::size_t r = 0; r < small; ++r)
                terms.emplace_back(transpose ? chosen[r] : r, at(r, chosen[r]));
            std::sort(terms.begin(), terms.end());
            double total = 0.0;
            for (const auto& [_, v] : terms) total += v;
            best = std::max(best, total);
            return;
        }
        for (std::size_t l = 0; l < large; ++l) {
            if (taken[l]) continue;
            taken[l] = 1;
            chosen[s] = l;
            search(s + 1);
            taken[l] = 0;
        }
    };
    search(0);
    return best;
}

/// K nearest indices of point i by full sort on (squared distance, index).
inline std::vector<std::size_t> naive_knn(const PointSet& s, std::size_t i, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (j == i) continue;
        const double dx = s[i].x - s[j].x, dy = s[i].y - s[j].y;
        all.emplace_back(dx * dx + dy * dy, j);
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < std::min(k, all.size()); ++r) out.push_back(all[r].second);
    return out;
}

/// Direct transcription of the update formula, recomputing hypotheses and
/// neighbourhoods from scratch for every entry.
inline ScoreMatrix naive_update(const ScoreMatrix& w, const PointSet& a, const PointSet& b, std::size_t k,
                                double alpha, double beta, double delta) {
    auto hypothesis = [](const DirectedPoint& p, const DirectedPoint& q) {
        double theta = std::fmod(q.theta - p.theta, kTwoPi);
        if (theta < 0) theta += kTwoPi;
        if (theta >= kTwoPi) theta = 0.0;
        return std::array<double, 3>{theta, q.x - (p.x * std::cos(theta) - p.y * std::sin(theta)),
                                     q.y - (p.x * std::sin(theta) + p.y * std::cos(theta))};
    };
    auto similarity = [&](const std::array<double, 3>& t1, const std::array<double, 3>& t2) {
        const double dx = std::abs(t1[1] - t2[1]);
        const double dy = std::abs(t1[2] - t2[2]);
        double dt = std::abs(t1[0] - t2[0]);
        dt = std::min(dt, kTwoPi - dt);
        if (dx > alpha || dy > beta || dt > delta) return 0.0;
        return 1.0 - (dx / alpha + dy / beta + dt / delta) / 3.0;
    };
    ScoreMatrix out(w.rows(), w.cols());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double v = w(i, j);
            for (const auto kk : naive_knn(a, i, k)) {
                for (const auto ll : naive_knn(b, j, k)) v += w(kk, ll) * similarity(hypothesis(a[i], b[j]), hypothesis(a[kk], b[ll]));
            }
            out(i, j) = v;
        }
    }
    return out;
}

inline PointSet random_points(std::mt19937_64& rng, std::size_t n, double range = 100.0) {
    std::uniform_real_distribution<double> coord(0.0, range), angle(0.0, kTwoPi);
    PointSet out;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = coord(rng), y = coord(rng);
        out.emplace_back(x, y, angle(rng));
    }
    return out;
}

}  // namespace dpsm::testing

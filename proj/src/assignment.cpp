#include "dpsm/assignment.hpp"

#include "dpsm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dpsm {

Matching kuhn_munkres_max(const ScoreMatrix& w) {
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    if (m == 0 || n == 0) return {};
    for (const double v : w.values()) {
        if (!std::isfinite(v)) throw ContractViolation("kuhn_munkres_max: score matrix has a non-finite entry");
    }

    // Minimise -w on the zero-padded square matrix. Potentials u (rows) and
    // v (columns) are kept 1-based with index 0 as the virtual source column.
    const std::size_t size = std::max(m, n);
    auto cost = [&](std::size_t row, std::size_t col) {
        return (row < m && col < n) ? -w(row, col) : 0.0;
    };
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0);
    std::vector<std::size_t> row_of_col(size + 1, 0), way(size + 1, 0);
    std::vector<double> min_slack(size + 1);
    std::vector<char> used(size + 1);

    for (std::size_t row = 1; row <= size; ++row) {
        row_of_col[0] = row;
        std::size_t col0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[col0] = 1;
            const std::size_t r0 = row_of_col[col0];
            double delta = kInf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= size; ++col) {
                if (used[col]) continue;
                const double reduced = cost(r0 - 1, col - 1) - u[r0] - v[col];
                if (reduced < min_slack[col]) {
                    min_slack[col] = reduced;
                    way[col] = col0;
                }
                if (min_slack[col] < delta) {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= size; ++col) {
                if (used[col]) {
                    u[row_of_col[col]] += delta;
                    v[col] -= delta;
                } else {
                    min_slack[col] -= delta;
                }
            }
            col0 = col1;
        } while (row_of_col[col0] != 0);
        // Augment along the alternating path.
        do {
            const std::size_t col1 = way[col0];
            row_of_col[col0] = row_of_col[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    Matching matching;
    matching.reserve(std::min(m, n));
    for (std::size_t col = 1; col <= size; ++col) {
        const std::size_t row = row_of_col[col] - 1;
        if (row < m && col - 1 < n) matching.push_back({row, col - 1});
    }
    std::sort(matching.begin(), matching.end());
    return matching;
}

double matching_total(const Matching& matching, const ScoreMatrix& w) {
    double total = 0.0;
    for (const auto& p : matching) total += w(p.a, p.b);
    return total;
}

Matching filter_matches(const Matching& matching, const ScoreMatrix& w, std::optional<double> tau) {
    if (!tau) return matching;
    Matching kept;
    kept.reserve(matching.size());
    for (const auto& p : matching) {
        if (p.a >= w.rows() || p.b >= w.cols()) throw ContractViolation("filter_matches: pair outside score matrix");
        if (!(w(p.a, p.b) < *tau)) kept.push_back(p);
    }
    return kept;
}

}  // namespace dpsm

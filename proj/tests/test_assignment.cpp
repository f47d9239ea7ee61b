#include "dpsm/assignment.hpp"

#include "dpsm/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace dpsm;

namespace {

ScoreMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    ScoreMatrix w(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const double v : row) w(i, j++) = v;
        ++i;
    }
    return w;
}

void check_injective(const Matching& m, const ScoreMatrix& w) {
    std::set<std::size_t> rows, cols;
    for (const auto& p : m) {
        CHECK(p.a < w.rows());
        CHECK(p.b < w.cols());
        CHECK(rows.insert(p.a).second);
        CHECK(cols.insert(p.b).second);
    }
    CHECK(m.size() == std::min(w.rows(), w.cols()));
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("permutation matrices") {
    auto w = from_rows({{1, 0}, {0, 1}});
    CHECK(kuhn_munkres_max(w) == Matching{{0, 0}, {1, 1}});
    CHECK(matching_total(kuhn_munkres_max(w), w) == 2.0);
    w = from_rows({{0, 1}, {1, 0}});
    CHECK(kuhn_munkres_max(w) == Matching{{0, 1}, {1, 0}});
}

TEST_CASE("rectangular inputs drop padded pairs") {
    const auto tall = from_rows({{0.1, 0.9}, {0.8, 0.2}, {0.7, 0.95}});
    const auto m = kuhn_munkres_max(tall);
    check_injective(m, tall);
    CHECK(matching_total(m, tall) == doctest::Approx(0.8 + 0.95));

    const auto wide = from_rows({{0.5, 0.2, 0.9}});
    CHECK(kuhn_munkres_max(wide) == Matching{{0, 2}});
}

TEST_CASE("greedy is not optimal here") {
    // Greedy takes (0,0)=10 and then (1,1)=1; the optimum is 9 + 9.
    const auto w = from_rows({{10, 9}, {9, 1}});
    CHECK(kuhn_munkres_max(w) == Matching{{0, 1}, {1, 0}});
}

TEST_CASE("brute-force oracle on random 5x5 matrices") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        ScoreMatrix w(5, 5);
        for (double& v : w.values()) v = u(rng);
        const auto m = kuhn_munkres_max(w);
        check_injective(m, w);
        CHECK(matching_total(m, w) == testing::brute_force_assignment_max(w));
    }
}

TEST_CASE("brute-force oracle with heavy ties and rectangular shapes") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> size(1, 8), level(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
        ScoreMatrix w(static_cast<std::size_t>(size(rng)), static_cast<std::size_t>(size(rng)));
        for (double& v : w.values()) v = level(rng) * 0.25;
        if (std::min(w.rows(), w.cols()) > 6) continue;
        const auto m = kuhn_munkres_max(w);
        check_injective(m, w);
        CHECK(matching_total(m, w) == testing::brute_force_assignment_max(w));
    }
}

TEST_CASE("scaling the scores scales the optimum") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> level(0, 64);
    for (int trial = 0; trial < 50; ++trial) {
        ScoreMatrix w(6, 4);
        for (double& v : w.values()) v = level(rng) / 64.0;
        ScoreMatrix scaled = w;
        for (double& v : scaled.values()) v *= 4.0;
        CHECK(matching_total(kuhn_munkres_max(scaled), scaled) == 4.0 * matching_total(kuhn_munkres_max(w), w));
    }
}

TEST_CASE("non-finite scores are rejected") {
    ScoreMatrix w(2, 2, 1.0);
    w(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(kuhn_munkres_max(w), ContractViolation);
}

TEST_CASE("filter_matches") {
    const auto w = from_rows({{0.9, 0.0}, {0.0, 0.05}});
    const Matching m{{0, 0}, {1, 1}};
    CHECK(filter_matches(m, w, std::nullopt) == m);
    CHECK(filter_matches(m, w, 0.0) == m);
    CHECK(filter_matches(m, w, 0.5) == Matching{{0, 0}});
    CHECK(filter_matches(m, w, 0.05) == m);
    CHECK_THROWS_AS(filter_matches(Matching{{2, 0}}, w, 0.5), ContractViolation);
}

}

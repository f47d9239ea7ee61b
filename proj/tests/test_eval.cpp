#include "dpsm/eval.hpp"

#include "dpsm/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace dpsm;

namespace {

GroundTruth truth_with(std::size_t true_pairs, std::size_t outliers) {
    GroundTruth gt;
    for (std::size_t i = 0; i < true_pairs; ++i) gt.true_pairs.push_back({i, (i * 7) % (true_pairs + outliers)});
    for (std::size_t i = 0; i < outliers; ++i) gt.outlier_pairs.push_back({true_pairs + i, true_pairs + i});
    return gt;
}

GridSpec small_spec() {
    GridSpec spec;
    spec.synth.n = 20;
    spec.k_values = {3, 6};
    spec.outlier_ratios = {0.0, 0.3};
    spec.jitter_ratios = {0.0, 0.05, 0.1};
    spec.trials = 3;
    spec.base_seed = 5;
    return spec;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("acppr examples") {
    const auto gt = truth_with(10, 0);
    CHECK(acppr(gt.true_pairs, gt) == 1.0);

    Matching eight(gt.true_pairs.begin(), gt.true_pairs.begin() + 8);
    eight.push_back({8, 3});
    eight.push_back({9, 4});
    CHECK(acppr(eight, gt) == doctest::Approx(0.8));

    const auto gt40 = truth_with(40, 10);
    Matching found(gt40.true_pairs.begin(), gt40.true_pairs.begin() + 35);
    CHECK(acppr(found, gt40) == 35.0 / 40.0);
    CHECK(acppr(found, gt40) == 0.875);

    CHECK(acppr({}, gt) == 0.0);
    CHECK_THROWS_AS(acppr({}, truth_with(0, 5)), UndefinedMetricError);
}

TEST_CASE("acppr ignores extra wrong pairs") {
    const auto gt = truth_with(20, 5);
    std::mt19937_64 rng(3);
    Matching partial(gt.true_pairs.begin(), gt.true_pairs.begin() + 13);
    const double base = acppr(partial, gt);
    std::uniform_int_distribution<std::size_t> idx(0, 24);
    for (int extra = 0; extra < 30; ++extra) {
        const MatchPair p{idx(rng), idx(rng)};
        if (std::find(gt.true_pairs.begin(), gt.true_pairs.end(), p) != gt.true_pairs.end()) continue;
        partial.push_back(p);
        CHECK(acppr(partial, gt) == base);
    }
}

TEST_CASE("run_trial") {
    SynthConfig sc;
    sc.seed = 9;
    MatchConfig mc;
    CHECK(run_trial(sc, mc) == 1.0);

    sc.outlier_ratio = 0.2;
    sc.jitter_ratio = 0.08;
    CHECK(run_trial(sc, mc) == run_trial(sc, mc));

    sc.outlier_ratio = 1.0;
    CHECK_THROWS_AS(run_trial(sc, mc), UndefinedMetricError);
}

TEST_CASE("single-cell grid") {
    GridSpec spec;
    spec.k_values = {12};
    spec.outlier_ratios = {0.2};
    spec.jitter_ratios = {0.08};
    spec.trials = 1;
    spec.base_seed = 3;
    const auto result = run_grid(spec);
    REQUIRE(result.tables.size() == 1);
    SynthConfig sc;
    sc.outlier_ratio = 0.2;
    sc.jitter_ratio = 0.08;
    sc.seed = spec.trial_seed(0, 0, 0);
    MatchConfig mc;
    mc.k = 12;
    const double expected = run_trial(sc, mc);
    CHECK(result.tables[0].cell_mean[0][0] == expected);
    CHECK(result.tables[0].trial_values[0][0] == std::vector<double>{expected});
    CHECK(result.tables[0].grand_average == expected);
}

TEST_CASE("margins are arithmetic means and results do not depend on scheduling") {
    GridSpec spec = small_spec();
    spec.workers = 1;
    const auto serial = run_grid(spec);
    spec.workers = 4;
    const auto parallel = run_grid(spec);
    REQUIRE(serial.tables.size() == 2);
    for (std::size_t t = 0; t < 2; ++t) {
        const auto& a = serial.tables[t];
        const auto& b = parallel.tables[t];
        CHECK(a.trial_values == b.trial_values);
        CHECK(a.cell_mean == b.cell_mean);
        CHECK(a.grand_average == b.grand_average);
        for (std::size_t r = 0; r < 2; ++r) {
            CHECK(a.row_average[r] ==
                  doctest::Approx(std::accumulate(a.cell_mean[r].begin(), a.cell_mean[r].end(), 0.0) / 3.0));
            for (std::size_t c = 0; c < 3; ++c) {
                const auto& tv = a.trial_values[r][c];
                CHECK(tv.size() == 3);
                CHECK(a.cell_mean[r][c] == doctest::Approx(std::accumulate(tv.begin(), tv.end(), 0.0) / 3.0));
                for (const double v : tv) {
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                }
            }
        }
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(a.column_average[c] == doctest::Approx((a.cell_mean[0][c] + a.cell_mean[1][c]) / 2.0));
    }
}

TEST_CASE("trial seeds are distinct across cells and trials") {
    const GridSpec spec;
    std::vector<std::uint64_t> seeds;
    for (std::size_t r = 0; r < spec.outlier_ratios.size(); ++r)
        for (std::size_t c = 0; c < spec.jitter_ratios.size(); ++c)
            for (std::size_t t = 0; t < 100; ++t) seeds.push_back(spec.trial_seed(r, c, t));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("a failing cell aborts the grid with context") {
    GridSpec spec = small_spec();
    spec.outlier_ratios = {0.0, 1.0};
    try {
        run_grid(spec);
        FAIL("expected GridCellError");
    } catch (const GridCellError& e) {
        CHECK(std::string(e.what()).find("outlier=1") != std::string::npos);
        CHECK_THROWS_AS(std::rethrow_exception(e.cause()), UndefinedMetricError);
    }
}

TEST_CASE("grid validation") {
    GridSpec spec = small_spec();
    spec.trials = 0;
    CHECK_THROWS_AS(run_grid(spec), ConfigError);
    spec = small_spec();
    spec.k_values.clear();
    CHECK_THROWS_AS(run_grid(spec), ConfigError);
    spec = small_spec();
    spec.jitter_ratios = {2.0};
    CHECK_THROWS_AS(run_grid(spec), ConfigError);
}

TEST_CASE("figure series") {
    GridResult result;
    result.n = 50;
    result.outlier_ratios = {0.0, 0.2};
    result.jitter_ratios = {0.0, 0.04, 0.08};
    for (const std::size_t k : {6u, 12u, 25u, 50u}) {
        GridTable t;
        t.k = k;
        t.row_average = {0.9, 0.8};
        t.column_average = {0.95, 0.85, 0.75};
        t.grand_average = 0.85 + static_cast<double>(k) / 1000.0;
        result.tables.push_back(t);
    }

    const auto by_outlier = emit_figure_series(result, Figure::kByOutlier);
    CHECK(by_outlier.size() == 8);
    std::set<std::string> curves;
    for (const auto& p : by_outlier) curves.insert(p.curve);
    CHECK(curves.size() == 4);

    const auto by_jitter = emit_figure_series(result, Figure::kByJitter);
    CHECK(by_jitter.size() == 12);
    CHECK(by_jitter[2].x == 0.08);
    CHECK(by_jitter[2].y == 0.75);

    const auto by_k = emit_figure_series(result, Figure::kByK);
    REQUIRE(by_k.size() == 4);
    CHECK(by_k[1].x == 12.0);
    CHECK(by_k[1].y == doctest::Approx(0.862));
    CHECK(by_k[0].curve == "N=50");

    GridResult one_k = result;
    one_k.tables.resize(1);
    CHECK(emit_figure_series(one_k, Figure::kByK).size() == 1);

    GridResult empty_axis = result;
    empty_axis.jitter_ratios.clear();
    CHECK_THROWS_AS(emit_figure_series(empty_axis, Figure::kByJitter), ConfigError);
    CHECK_THROWS_AS(emit_figure_series(GridResult{}, Figure::kByK), ConfigError);
}

}

#include "dpsm/eval.hpp"

#include "dpsm/error.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace dpsm {

double acppr(const Matching& result, const GroundTruth& truth) {
    if (truth.true_pairs.empty()) throw UndefinedMetricError("ACPPR is undefined for a scene without true pairs");
    const std::set<MatchPair> recovered(result.begin(), result.end());
    std::size_t correct = 0;
    for (const auto& p : truth.true_pairs) correct += recovered.count(p);
    return static_cast<double>(correct) / static_cast<double>(truth.true_pairs.size());
}

double run_trial(const SynthConfig& synth, const MatchConfig& match) {
    const Scene scene = generate_scene(synth);
    if (scene.truth.true_pairs.empty()) throw UndefinedMetricError("ACPPR is undefined at outlier ratio 1");
    const MatchResult result = match_point_sets(scene.a, scene.b, match);
    return acppr(result.pairs, scene.truth);
}

void GridSpec::validate() const {
    if (k_values.empty() || outlier_ratios.empty() || jitter_ratios.empty())
        throw ConfigError("grid axes must be non-empty");
    if (trials < 1) throw ConfigError("grid needs at least one trial per cell");
    for (const auto k : k_values) {
        if (k < 1) throw ConfigError("K values must be at least 1");
    }
    for (const double r : outlier_ratios) {
        SynthConfig probe = synth;
        probe.outlier_ratio = r;
        probe.validate();
    }
    for (const double r : jitter_ratios) {
        SynthConfig probe = synth;
        probe.jitter_ratio = r;
        probe.validate();
    }
    MatchConfig probe = match;
    probe.k = k_values.front();
    probe.validate();
}

std::uint64_t GridSpec::trial_seed(std::size_t outlier_index, std::size_t jitter_index, std::size_t trial) const {
    const std::uint64_t cell = outlier_index * jitter_ratios.size() + jitter_index;
    return base_seed + cell * 1'000'003ULL + trial;
}

namespace {

double mean(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

GridResult run_grid(const GridSpec& spec) {
    spec.validate();

    const std::size_t rows = spec.outlier_ratios.size();
    const std::size_t cols = spec.jitter_ratios.size();
    const std::size_t per_table = rows * cols * spec.trials;
    const std::size_t total = spec.k_values.size() * per_table;

    std::vector<double> values(total, 0.0);
    std::vector<std::exception_ptr> failures(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t table = task / per_table;
            const std::size_t rest = task % per_table;
            const std::size_t row = rest / (cols * spec.trials);
            const std::size_t col = (rest / spec.trials) % cols;
            const std::size_t trial = rest % spec.trials;

            SynthConfig synth = spec.synth;
            synth.outlier_ratio = spec.outlier_ratios[row];
            synth.jitter_ratio = spec.jitter_ratios[col];
            synth.seed = spec.trial_seed(row, col, trial);
            MatchConfig match = spec.match;
            match.k = spec.k_values[table];
            try {
                values[task] = run_trial(synth, match);
            } catch (...) {
                failures[task] = std::current_exception();
                next = total;  // stop handing out work
            }
        }
    };

    std::size_t workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (std::size_t task = 0; task < total; ++task) {
        if (!failures[task]) continue;
        const std::size_t table = task / per_table;
        const std::size_t rest = task % per_table;
        const std::size_t row = rest / (cols * spec.trials);
        const std::size_t col = (rest / spec.trials) % cols;
        std::ostringstream context;
        context << "grid cell K=" << spec.k_values[table] << " outlier=" << spec.outlier_ratios[row]
                << " jitter=" << spec.jitter_ratios[col] << " trial=" << rest % spec.trials << ": ";
        try {
            std::rethrow_exception(failures[task]);
        } catch (const std::exception& e) {
            context << e.what();
        } catch (...) {
            context << "unknown error";
        }
        throw GridCellError(context.str(), failures[task]);
    }

    GridResult result;
    result.n = spec.synth.n;
    result.outlier_ratios = spec.outlier_ratios;
    result.jitter_ratios = spec.jitter_ratios;
    for (std::size_t table = 0; table < spec.k_values.size(); ++table) {
        GridTable t;
        t.k = spec.k_values[table];
        t.cell_mean.assign(rows, std::vector<double>(cols));
        t.trial_values.assign(rows, std::vector<std::vector<double>>(cols));
        for (std::size_t row = 0; row < rows; ++row) {
            for (std::size_t col = 0; col < cols; ++col) {
                const auto first = values.begin() +
                                   static_cast<std::ptrdiff_t>(table * per_table + (row * cols + col) * spec.trials);
                t.trial_values[row][col].assign(first, first + static_cast<std::ptrdiff_t>(spec.trials));
                t.cell_mean[row][col] = mean(t.trial_values[row][col]);
            }
        }
        t.row_average.resize(rows);
        for (std::size_t row = 0; row < rows; ++row) t.row_average[row] = mean(t.cell_mean[row]);
        t.column_average.resize(cols);
        for (std::size_t col = 0; col < cols; ++col) {
            std::vector<double> column(rows);
            for (std::size_t row = 0; row < rows; ++row) column[row] = t.cell_mean[row][col];
            t.column_average[col] = mean(column);
        }
        t.grand_average = mean(t.row_average);
        result.tables.push_back(std::move(t));
    }
    return result;
}

std::vector<SeriesPoint> emit_figure_series(const GridResult& result, Figure figure) {
    if (result.tables.empty()) throw ConfigError("grid result holds no K values");
    std::vector<SeriesPoint> series;
    switch (figure) {
        case Figure::kByK: {
            const std::string curve = "N=" + std::to_string(result.n);
            for (const auto& t : result.tables) series.push_back({static_cast<double>(t.k), curve, t.grand_average});
            break;
        }
        case Figure::kByOutlier:
            if (result.outlier_ratios.empty()) throw ConfigError("grid result holds no outlier ratios");
            for (const auto& t : result.tables) {
                if (t.row_average.size() != result.outlier_ratios.size())
                    throw ConfigError("grid table does not cover the outlier axis");
                for (std::size_t row = 0; row < result.outlier_ratios.size(); ++row)
                    series.push_back({result.outlier_ratios[row], "K=" + std::to_string(t.k), t.row_average[row]});
            }
            break;
        case Figure::kByJitter:
            if (result.jitter_ratios.empty()) throw ConfigError("grid result holds no jitter ratios");
            for (const auto& t : result.tables) {
                if (t.column_average.size() != result.jitter_ratios.size())
                    throw ConfigError("grid table does not cover the jitter axis");
                for (std::size_t col = 0; col < result.jitter_ratios.size(); ++col)
                    series.push_back({result.jitter_ratios[col], "K=" + std::to_string(t.k), t.column_average[col]});
            }
            break;
        default:
            throw ConfigError("unknown figure");
    }
    return series;
}

}  // namespace dpsm

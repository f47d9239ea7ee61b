#pragma once

#include "dpsm/assignment.hpp"
#include "dpsm/matcher.hpp"
#include "dpsm/synth.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpsm {

/// Average correct point pair ratio of a single result: the fraction of true
/// pairs recovered exactly. Extra wrong pairs do not count against it.
/// Throws UndefinedMetricError when the truth holds no genuine pair.
double acppr(const Matching& result, const GroundTruth& truth);

/// generate_scene -> match_point_sets -> acppr.
double run_trial(const SynthConfig& synth, const MatchConfig& match);

struct GridSpec {
    std::vector<std::size_t> k_values{6, 12, 25, 50};
    std::vector<double> outlier_ratios{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    std::vector<double> jitter_ratios{0.0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
    std::size_t trials = 20;
    SynthConfig synth;  ///< n, range and transform policy; ratios and seed are overridden per trial
    MatchConfig match;  ///< k is overridden per grid
    std::uint64_t base_seed = 0;
    std::size_t workers = 0;  ///< 0 = one per hardware thread

    void validate() const;

    /// Seed of a trial. Cells are numbered row-major over (outlier, jitter) and
    /// do not depend on K, so every K sees the same scenes.
    std::uint64_t trial_seed(std::size_t outlier_index, std::size_t jitter_index, std::size_t trial) const;
};

/// One sub-table (a single K): rows are outlier ratios, columns jitter ratios.
struct GridTable {
    std::size_t k = 0;
    std::vector<std::vector<double>> cell_mean;                  ///< [outlier][jitter]
    std::vector<std::vector<std::vector<double>>> trial_values;  ///< [outlier][jitter][trial]
    std::vector<double> row_average;                             ///< per outlier ratio
    std::vector<double> column_average;                          ///< per jitter ratio
    double grand_average = 0.0;
};

struct GridResult {
    std::size_t n = 0;
    std::vector<double> outlier_ratios;
    std::vector<double> jitter_ratios;
    std::vector<GridTable> tables;  ///< one per K, in GridSpec order
};

/// A trial failure annotated with the cell it came from.
class GridCellError : public std::runtime_error {
public:
    GridCellError(const std::string& what, std::exception_ptr cause)
        : std::runtime_error(what), cause_(std::move(cause)) {}
    std::exception_ptr cause() const noexcept { return cause_; }

private:
    std::exception_ptr cause_;
};

/// Runs every trial of every cell, possibly concurrently. Results are keyed by
/// (K, cell, trial) so they do not depend on scheduling.
GridResult run_grid(const GridSpec& spec);

enum class Figure { kByK = 1, kByOutlier = 2, kByJitter = 3 };

struct SeriesPoint {
    double x;
    std::string curve;
    double y;  ///< ACPPR fraction
};

/// Plot data distilled from a grid:
///   kByK       x = K, one curve, y = the grand average of each sub-table;
///   kByOutlier x = outlier ratio, one curve per K, y = row averages;
///   kByJitter  x = jitter ratio, one curve per K, y = column averages.
/// Throws ConfigError when the grid has nothing along the requested axis.
std::vector<SeriesPoint> emit_figure_series(const GridResult& result, Figure figure);

}  // namespace dpsm

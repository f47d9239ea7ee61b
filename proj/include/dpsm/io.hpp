#pragma once

#include "dpsm/assignment.hpp"
#include "dpsm/eval.hpp"
#include "dpsm/geometry.hpp"
#include "dpsm/matcher.hpp"
#include "dpsm/scoring.hpp"
#include "dpsm/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dpsm::io {

// Point-set text format: one `x y theta` per line (radians), `#` starts a
// comment line, blank lines are skipped.
PointSet read_point_set(std::istream& in, const std::string& source = "<stream>");
PointSet read_point_set(const std::filesystem::path& path);
void write_point_set(std::ostream& out, const PointSet& points);

/// `i,j,is_outlier`, one row per original pair, ordered by i.
void write_truth_csv(std::ostream& out, const GroundTruth& truth);
/// Reads pairs back; the transform and permutation are not stored in the file.
GroundTruth read_truth_csv(std::istream& in, const std::string& source = "<stream>");

/// `i,j,score` rows followed by `# transform theta tx ty`.
void write_match_csv(std::ostream& out, const MatchResult& result);
Matching read_match_csv(std::istream& in, const std::string& source = "<stream>");

/// Row-major dump, one matrix row per line.
void write_score_matrix_csv(std::ostream& out, const ScoreMatrix& w);

/// Sub-table layout: header `outlier\jitter,<jitter %>...,average`, one row per
/// outlier ratio, then an `average` row. Values in percent.
void write_grid_table_csv(std::ostream& out, const GridResult& result, const GridTable& table);

/// `x,curve_label,y` with ratios and ACPPR rendered in percent.
void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series, Figure figure);

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never observes a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace dpsm::io

#include "dpsm/io.hpp"

#include "dpsm/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace dpsm::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) break;
        auto end = s.find_first_of(" \t\r", start);
        if (end == std::string_view::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        pos = end;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size();
}

bool is_skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) throw ContractViolation("failed to format a double");
    return std::string(buffer, ptr);
}

PointSet read_point_set(std::istream& in, const std::string& source) {
    PointSet points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split_whitespace(line);
        if (fields.size() != 3)
            throw ParseError(source, line_no, "expected 3 fields `x y theta`, found " + std::to_string(fields.size()));
        double v[3];
        for (int f = 0; f < 3; ++f) {
            if (!parse_number(fields[f], v[f]) || !std::isfinite(v[f]))
                throw ParseError(source, line_no, "not a finite number: '" + std::string(fields[f]) + "'");
        }
        points.emplace_back(v[0], v[1], v[2]);
    }
    return points;
}

PointSet read_point_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return read_point_set(in, path.string());
}

void write_point_set(std::ostream& out, const PointSet& points) {
    for (const auto& p : points)
        out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.theta) << '\n';
}

void write_truth_csv(std::ostream& out, const GroundTruth& truth) {
    std::size_t t = 0, o = 0;
    // Merge the two sorted lists back into original pair order.
    out << "i,j,is_outlier\n";
    while (t < truth.true_pairs.size() || o < truth.outlier_pairs.size()) {
        const bool take_true = o >= truth.outlier_pairs.size() ||
                               (t < truth.true_pairs.size() && truth.true_pairs[t].a < truth.outlier_pairs[o].a);
        const MatchPair& p = take_true ? truth.true_pairs[t++] : truth.outlier_pairs[o++];
        out << p.a << ',' << p.b << ',' << (take_true ? 0 : 1) << '\n';
    }
}

GroundTruth read_truth_csv(std::istream& in, const std::string& source) {
    GroundTruth truth;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split(line, ',');
        if (!header_seen) {
            header_seen = true;
            if (fields.size() == 3 && fields[0] == "i" && fields[1] == "j" && fields[2] == "is_outlier") continue;
            throw ParseError(source, line_no, "expected header `i,j,is_outlier`");
        }
        std::size_t i = 0, j = 0;
        int flag = 0;
        if (fields.size() != 3 || !parse_number(fields[0], i) || !parse_number(fields[1], j) ||
            !parse_number(fields[2], flag) || (flag != 0 && flag != 1))
            throw ParseError(source, line_no, "expected `i,j,is_outlier` with non-negative integers and a 0/1 flag");
        (flag ? truth.outlier_pairs : truth.true_pairs).push_back({i, j});
    }
    return truth;
}

void write_match_csv(std::ostream& out, const MatchResult& result) {
    out << "i,j,score\n";
    for (std::size_t r = 0; r < result.pairs.size(); ++r)
        out << result.pairs[r].a << ',' << result.pairs[r].b << ',' << format_double(result.scores[r]) << '\n';
    const auto& t = result.global_transform;
    out << "# transform " << format_double(t.theta) << ' ' << format_double(t.tx) << ' ' << format_double(t.ty)
        << '\n';
}

Matching read_match_csv(std::istream& in, const std::string& source) {
    Matching pairs;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split(line, ',');
        if (!header_seen) {
            header_seen = true;
            if (fields.size() == 3 && fields[0] == "i" && fields[1] == "j" && fields[2] == "score") continue;
            throw ParseError(source, line_no, "expected header `i,j,score`");
        }
        std::size_t i = 0, j = 0;
        double score = 0.0;
        if (fields.size() != 3 || !parse_number(fields[0], i) || !parse_number(fields[1], j) ||
            !parse_number(fields[2], score))
            throw ParseError(source, line_no, "expected `i,j,score`");
        pairs.push_back({i, j});
    }
    return pairs;
}

void write_score_matrix_csv(std::ostream& out, const ScoreMatrix& w) {
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (j) out << ',';
            out << format_double(w(i, j));
        }
        out << '\n';
    }
}

namespace {

std::string percent(double fraction, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, 100.0 * fraction);
    return buffer;
}

// Axis labels: shortest form of the percentage, e.g. 8 or 12.5.
std::string axis_percent(double ratio) {
    const double scaled = std::round(ratio * 100.0 * 1e6) / 1e6;
    return format_double(scaled);
}

}  // namespace

void write_grid_table_csv(std::ostream& out, const GridResult& result, const GridTable& table) {
    out << "outlier\\jitter";
    for (const double j : result.jitter_ratios) out << ',' << axis_percent(j);
    out << ",average\n";
    for (std::size_t row = 0; row < result.outlier_ratios.size(); ++row) {
        out << axis_percent(result.outlier_ratios[row]);
        for (const double v : table.cell_mean[row]) out << ',' << percent(v, 1);
        out << ',' << percent(table.row_average[row], 1) << '\n';
    }
    out << "average";
    for (const double v : table.column_average) out << ',' << percent(v, 1);
    out << ',' << percent(table.grand_average, 1) << '\n';
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series, Figure figure) {
    out << "x,curve_label,y\n";
    for (const auto& point : series) {
        const std::string x = figure == Figure::kByK ? format_double(point.x) : axis_percent(point.x);
        out << x << ',' << point.curve << ',' << percent(point.y, 2) << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dpsm::io

#include "dpsm/io.hpp"

#include "dpsm/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dpsm;

TEST_SUITE("io") {

TEST_CASE("point-set text format") {
    std::istringstream in(
        "# header comment\n"
        "1 2 0.5\n"
        "\n"
        "  -3.25\t4e1   7.0  \n"
        "   # indented comment\n"
        "+0 0 -1.5707963267948966\n");
    const auto points = io::read_point_set(in);
    REQUIRE(points.size() == 3);
    CHECK(points[0] == DirectedPoint(1, 2, 0.5));
    CHECK(points[1].x == -3.25);
    CHECK(points[1].y == 40.0);
    CHECK(points[1].theta == doctest::Approx(7.0 - kTwoPi));
    CHECK(points[2].theta == doctest::Approx(3 * std::numbers::pi / 2));
}

TEST_CASE("malformed lines report their line number") {
    std::istringstream too_few("1 2 3\n# c\n4 5\n");
    try {
        io::read_point_set(too_few, "a.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("a.txt:3") != std::string::npos);
    }
    std::istringstream junk("1 2 3\n1 x 3\n");
    CHECK_THROWS_AS(io::read_point_set(junk), ParseError);
    std::istringstream non_finite("1 2 inf\n");
    CHECK_THROWS_AS(io::read_point_set(non_finite), ParseError);
    std::istringstream trailing("1 2 3abc\n");
    CHECK_THROWS_AS(io::read_point_set(trailing), ParseError);
    CHECK_THROWS_AS(io::read_point_set(std::filesystem::path("/nonexistent/points.txt")), ParseError);
}

TEST_CASE("written point sets read back bit-exactly") {
    const PointSet points{{0.1, 1e-300, 6.283185307179585}, {-123456.789, 2.0 / 3.0, 0.0}, {1e17, -0.0, 3.0}};
    std::stringstream buffer;
    io::write_point_set(buffer, points);
    CHECK(io::read_point_set(buffer) == points);
}

TEST_CASE("truth CSV") {
    GroundTruth gt;
    gt.true_pairs = {{0, 3}, {2, 0}, {3, 1}};
    gt.outlier_pairs = {{1, 2}, {4, 4}};
    std::stringstream buffer;
    io::write_truth_csv(buffer, gt);
    CHECK(buffer.str() == "i,j,is_outlier\n0,3,0\n1,2,1\n2,0,0\n3,1,0\n4,4,1\n");
    const auto back = io::read_truth_csv(buffer);
    CHECK(back.true_pairs == gt.true_pairs);
    CHECK(back.outlier_pairs == gt.outlier_pairs);

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(io::read_truth_csv(bad_header), ParseError);
    std::istringstream bad_flag("i,j,is_outlier\n0,1,2\n");
    CHECK_THROWS_AS(io::read_truth_csv(bad_flag), ParseError);
}

TEST_CASE("match CSV") {
    MatchResult r;
    r.pairs = {{0, 1}, {1, 0}};
    r.scores = {1.0, 0.25};
    r.global_transform = RigidTransform(0.5, -2, 3.75);
    std::stringstream buffer;
    io::write_match_csv(buffer, r);
    CHECK(buffer.str() == "i,j,score\n0,1,1\n1,0,0.25\n# transform 0.5 -2 3.75\n");
    CHECK(io::read_match_csv(buffer) == r.pairs);
}

TEST_CASE("grid table and series layout") {
    GridResult result;
    result.outlier_ratios = {0.0, 0.2};
    result.jitter_ratios = {0.0, 0.08};
    GridTable t;
    t.k = 12;
    t.cell_mean = {{1.0, 0.984}, {1.0, 0.953}};
    t.row_average = {0.992, 0.9765};
    t.column_average = {1.0, 0.9684};
    t.grand_average = 0.98425;
    result.tables = {t};
    std::stringstream table;
    io::write_grid_table_csv(table, result, t);
    CHECK(table.str() ==
          "outlier\\jitter,0,8,average\n"
          "0,100.0,98.4,99.2\n"
          "20,100.0,95.3,97.7\n"
          "average,100.0,96.8,98.4\n");

    std::stringstream series;
    io::write_series_csv(series, {{0.2, "K=12", 0.9765}}, Figure::kByOutlier);
    CHECK(series.str() == "x,curve_label,y\n20,K=12,97.65\n");
}

TEST_CASE("atomic write leaves no temporary behind") {
    const auto dir = std::filesystem::temp_directory_path() / "dpsm_io_atomic";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    io::write_file_atomic(path, "first\n");
    io::write_file_atomic(path, "second\n");
    std::ifstream in(path);
    std::string contents((std::istreambuf_iterator<char>(in)), {});
    CHECK(contents == "second\n");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    std::filesystem::remove_all(dir);
}

}

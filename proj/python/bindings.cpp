#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpsm/error.hpp"
#include "dpsm/eval.hpp"
#include "dpsm/matcher.hpp"
#include "dpsm/synth.hpp"

#include <string>

namespace py = pybind11;
using namespace dpsm;

namespace {

// Accepts an (n, 3) array-like of x, y, theta rows or a sequence of DirectedPoint.
PointSet to_point_set(const py::handle& obj) {
    if (py::isinstance<py::array>(obj) || !py::isinstance<py::sequence>(obj) ||
        (py::len(obj) > 0 && !py::isinstance<DirectedPoint>(obj[py::int_(0)]))) {
        auto array = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(obj);
        if (!array) throw py::type_error("expected an (n, 3) array of x, y, theta");
        if (array.ndim() != 2 || array.shape(1) != 3) throw py::value_error("expected an (n, 3) array of x, y, theta");
        const auto rows = array.unchecked<2>();
        PointSet points;
        points.reserve(static_cast<std::size_t>(rows.shape(0)));
        for (py::ssize_t i = 0; i < rows.shape(0); ++i) points.emplace_back(rows(i, 0), rows(i, 1), rows(i, 2));
        return points;
    }
    return obj.cast<PointSet>();
}

py::array_t<double> to_array(const PointSet& points) {
    py::array_t<double> out({static_cast<py::ssize_t>(points.size()), py::ssize_t{3}});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < points.size(); ++i) {
        view(i, 0) = points[i].x;
        view(i, 1) = points[i].y;
        view(i, 2) = points[i].theta;
    }
    return out;
}

py::array_t<double> to_array(const ScoreMatrix& w) {
    py::array_t<double> out({static_cast<py::ssize_t>(w.rows()), static_cast<py::ssize_t>(w.cols())});
    std::copy(w.values().begin(), w.values().end(), out.mutable_data());
    return out;
}

ScoreMatrix to_score_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& array) {
    if (array.ndim() != 2) throw py::value_error("expected a 2-D score matrix");
    ScoreMatrix w(static_cast<std::size_t>(array.shape(0)), static_cast<std::size_t>(array.shape(1)));
    std::copy(array.data(), array.data() + array.size(), w.values().begin());
    return w;
}

py::list to_pairs(const Matching& m) {
    py::list out;
    for (const auto& p : m) out.append(py::make_tuple(p.a, p.b));
    return out;
}

Matching from_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Matching m;
    m.reserve(pairs.size());
    for (const auto& [a, b] : pairs) m.push_back({a, b});
    return m;
}

}  // namespace

PYBIND11_MODULE(_dpsm, m) {
    m.doc() = "Directed point-set matching by neighbourhood transform voting";

    auto base = py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UndefinedMetricError>(m, "UndefinedMetricError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
    py::register_exception<GridCellError>(m, "GridCellError", PyExc_RuntimeError);

    py::class_<DirectedPoint>(m, "DirectedPoint")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("theta"))
        .def_readonly("x", &DirectedPoint::x)
        .def_readonly("y", &DirectedPoint::y)
        .def_readonly("theta", &DirectedPoint::theta)
        .def("__eq__", [](const DirectedPoint& a, const DirectedPoint& b) { return a == b; })
        .def("__repr__", [](const DirectedPoint& p) {
            return "DirectedPoint(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.theta) + ")";
        });

    py::class_<RigidTransform>(m, "RigidTransform")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("theta"), py::arg("tx"), py::arg("ty"))
        .def_readonly("theta", &RigidTransform::theta)
        .def_readonly("tx", &RigidTransform::tx)
        .def_readonly("ty", &RigidTransform::ty)
        .def("__eq__", [](const RigidTransform& a, const RigidTransform& b) { return a == b; })
        .def("__repr__", [](const RigidTransform& t) {
            return "RigidTransform(theta=" + std::to_string(t.theta) + ", tx=" + std::to_string(t.tx) +
                   ", ty=" + std::to_string(t.ty) + ")";
        });

    py::class_<SimilarityThresholds>(m, "SimilarityThresholds")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("alpha"), py::arg("beta"), py::arg("delta"))
        .def_readwrite("alpha", &SimilarityThresholds::alpha)
        .def_readwrite("beta", &SimilarityThresholds::beta)
        .def_readwrite("delta", &SimilarityThresholds::delta);

    py::class_<IterationConfig>(m, "IterationConfig")
        .def(py::init<>())
        .def(py::init<std::size_t, double>(), py::arg("max_iterations"), py::arg("convergence_tol"))
        .def_readwrite("max_iterations", &IterationConfig::max_iterations)
        .def_readwrite("convergence_tol", &IterationConfig::convergence_tol);

    py::class_<MatchConfig>(m, "MatchConfig")
        .def(py::init<>())
        .def(py::init([](std::size_t k, SimilarityThresholds th, IterationConfig it, std::optional<double> tau) {
                 return MatchConfig{k, th, it, tau};
             }),
             py::arg("k") = 12, py::arg("thresholds") = SimilarityThresholds{}, py::arg("iteration") = IterationConfig{},
             py::arg("tau") = py::none())
        .def_readwrite("k", &MatchConfig::k)
        .def_readwrite("thresholds", &MatchConfig::thresholds)
        .def_readwrite("iteration", &MatchConfig::iteration)
        .def_readwrite("tau", &MatchConfig::tau);

    py::class_<MatchResult>(m, "MatchResult")
        .def_property_readonly("pairs", [](const MatchResult& r) { return to_pairs(r.pairs); })
        .def_readonly("scores", &MatchResult::scores)
        .def_readonly("global_transform", &MatchResult::global_transform)
        .def_readonly("iterations_run", &MatchResult::iterations_run)
        .def_property_readonly("score_matrix", [](const MatchResult& r) { return to_array(r.score_matrix); });

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init([](std::size_t n, double range, double outlier_ratio, double jitter_ratio,
                         std::optional<RigidTransform> transform, std::uint64_t seed) {
                 return SynthConfig{n, range, outlier_ratio, jitter_ratio, transform, seed};
             }),
             py::arg("n") = 50, py::arg("range") = 100.0, py::arg("outlier_ratio") = 0.0,
             py::arg("jitter_ratio") = 0.0, py::arg("transform") = py::none(), py::arg("seed") = 0)
        .def_readwrite("n", &SynthConfig::n)
        .def_readwrite("range", &SynthConfig::range)
        .def_readwrite("outlier_ratio", &SynthConfig::outlier_ratio)
        .def_readwrite("jitter_ratio", &SynthConfig::jitter_ratio)
        .def_readwrite("transform", &SynthConfig::transform)
        .def_readwrite("seed", &SynthConfig::seed);

    py::class_<GroundTruth>(m, "GroundTruth")
        .def_property_readonly("true_pairs", [](const GroundTruth& g) { return to_pairs(g.true_pairs); })
        .def_property_readonly("outlier_pairs", [](const GroundTruth& g) { return to_pairs(g.outlier_pairs); })
        .def_readonly("planted_transform", &GroundTruth::planted_transform)
        .def_readonly("permutation", &GroundTruth::permutation);

    py::class_<Scene>(m, "Scene")
        .def_property_readonly("a", [](const Scene& s) { return to_array(s.a); })
        .def_property_readonly("b", [](const Scene& s) { return to_array(s.b); })
        .def_readonly("truth", &Scene::truth);

    py::class_<GridTable>(m, "GridTable")
        .def_readonly("k", &GridTable::k)
        .def_readonly("cell_mean", &GridTable::cell_mean)
        .def_readonly("trial_values", &GridTable::trial_values)
        .def_readonly("row_average", &GridTable::row_average)
        .def_readonly("column_average", &GridTable::column_average)
        .def_readonly("grand_average", &GridTable::grand_average);

    py::class_<GridResult>(m, "GridResult")
        .def_readonly("n", &GridResult::n)
        .def_readonly("outlier_ratios", &GridResult::outlier_ratios)
        .def_readonly("jitter_ratios", &GridResult::jitter_ratios)
        .def_readonly("tables", &GridResult::tables);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("k_values", &GridSpec::k_values)
        .def_readwrite("outlier_ratios", &GridSpec::outlier_ratios)
        .def_readwrite("jitter_ratios", &GridSpec::jitter_ratios)
        .def_readwrite("trials", &GridSpec::trials)
        .def_readwrite("synth", &GridSpec::synth)
        .def_readwrite("match", &GridSpec::match)
        .def_readwrite("base_seed", &GridSpec::base_seed)
        .def_readwrite("workers", &GridSpec::workers);

    m.def("apply_transform", py::overload_cast<const RigidTransform&, const DirectedPoint&>(&apply_transform),
          py::arg("transform"), py::arg("point"));
    m.def("compute_transform", &compute_transform, py::arg("p"), py::arg("q"));
    m.def("angular_distance", &angular_distance, py::arg("a"), py::arg("b"));
    m.def("transform_similarity", &transform_similarity, py::arg("t1"), py::arg("t2"),
          py::arg("thresholds") = SimilarityThresholds{});

    m.def(
        "build_neighbor_table",
        [](const py::object& points, std::size_t k) {
            const NeighborTable table = build_neighbor_table(to_point_set(points), k);
            std::vector<std::vector<std::size_t>> lists;
            for (std::size_t i = 0; i < table.size(); ++i) {
                const auto n = table.neighbors(i);
                lists.emplace_back(n.begin(), n.end());
            }
            return lists;
        },
        py::arg("points"), py::arg("k"));

    m.def(
        "iterate_scores",
        [](const py::object& a, const py::object& b, std::size_t k, const SimilarityThresholds& th,
           const IterationConfig& cfg) {
            const auto result = iterate_scores(to_point_set(a), to_point_set(b), k, th, cfg);
            return py::make_tuple(to_array(result.scores), result.iterations);
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("thresholds") = SimilarityThresholds{},
        py::arg("config") = IterationConfig{}, "Returns (normalized score matrix, iterations run).");

    m.def(
        "normalize_scores", [](const py::array_t<double>& w) { return to_array(normalize_scores(to_score_matrix(w))); },
        py::arg("scores"));

    m.def(
        "kuhn_munkres_max", [](const py::array_t<double>& w) { return to_pairs(kuhn_munkres_max(to_score_matrix(w))); },
        py::arg("scores"), "Maximum-total-score assignment as a list of (row, column) pairs.");

    m.def(
        "match_point_sets",
        [](const py::object& a, const py::object& b, const MatchConfig& cfg) {
            const PointSet pa = to_point_set(a), pb = to_point_set(b);
            py::gil_scoped_release release;
            return match_point_sets(pa, pb, cfg);
        },
        py::arg("a"), py::arg("b"), py::arg("config") = MatchConfig{});

    m.def(
        "estimate_global_transform",
        [](const py::object& a, const py::object& b, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
            return estimate_global_transform(to_point_set(a), to_point_set(b), from_pairs(pairs));
        },
        py::arg("a"), py::arg("b"), py::arg("pairs"));

    m.def("generate_scene", &generate_scene, py::arg("config"));

    m.def(
        "acppr",
        [](const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const GroundTruth& truth) {
            return acppr(from_pairs(pairs), truth);
        },
        py::arg("pairs"), py::arg("truth"));

    m.def("run_trial", &run_trial, py::arg("synth"), py::arg("match"), py::call_guard<py::gil_scoped_release>());
    m.def("run_grid", &run_grid, py::arg("spec"), py::call_guard<py::gil_scoped_release>());
}

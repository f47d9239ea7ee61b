#include "cli.hpp"

#include "dpsm/error.hpp"
#include "dpsm/eval.hpp"
#include "dpsm/io.hpp"
#include "dpsm/matcher.hpp"
#include "dpsm/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace dpsm::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    // shared
    std::string config_file;

    // matching
    std::size_t k = 12;
    double alpha = 10.0;
    double beta = 10.0;
    double delta = std::numbers::pi / 6.0;
    std::size_t max_iterations = 10;
    double tolerance = 1e-4;
    std::optional<double> tau;

    // match
    std::string file_a, file_b, match_out, dump_dir;

    // generate
    std::size_t n = 50;
    double range = 100.0;
    double outlier = 0.0;
    double jitter = 0.0;
    std::uint64_t seed = 1;
    std::string transform = "random";
    std::string out_a = "a.txt", out_b = "b.txt", out_truth = "truth.csv";

    // bench
    std::vector<std::size_t> k_list{6, 12, 25, 50};
    std::vector<double> outlier_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    std::vector<double> jitter_list{0.0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
    std::size_t trials = 20;
    std::vector<int> figures;
    std::string out_dir = ".";
    std::size_t workers = 0;

    // score
    std::string matches_file, truth_file;
};

void add_match_options(CLI::App& app, Options& o, bool with_k = true) {
    if (with_k) app.add_option("--k", o.k, "Neighbour count K")->capture_default_str();
    app.add_option("--alpha", o.alpha, "x-translation similarity threshold")->capture_default_str();
    app.add_option("--beta", o.beta, "y-translation similarity threshold")->capture_default_str();
    app.add_option("--delta", o.delta, "Rotation similarity threshold (radians)")->capture_default_str();
    app.add_option("--max-iter", o.max_iterations, "Maximum score iterations")->capture_default_str();
    app.add_option("--tol", o.tolerance, "Early-exit tolerance on the entrywise score change")->capture_default_str();
    app.add_option("--tau", o.tau, "Drop matches whose normalized score is below tau (default: keep all)");
}

void add_scene_options(CLI::App& app, Options& o) {
    app.add_option("--n", o.n, "Points per set")->capture_default_str();
    app.add_option("--range", o.range, "Scene side length L")->capture_default_str();
    app.add_option("--transform", o.transform, "Planted transform: `random` or `theta,tx,ty`")->capture_default_str();
}

struct Commands {
    std::unique_ptr<CLI::App> app;
    CLI::App* match = nullptr;
    CLI::App* generate = nullptr;
    CLI::App* bench = nullptr;
    CLI::App* score = nullptr;
};

Commands make_app(Options& o) {
    Commands c;
    c.app = std::make_unique<CLI::App>("Directed point-set matching by transform voting", "dpsm");
    c.app->require_subcommand(1);

    c.match = c.app->add_subcommand("match", "Match two point-set files and print `i,j,score` pairs");
    c.match->add_option("file_a", o.file_a, "Point set A")->required();
    c.match->add_option("file_b", o.file_b, "Point set B")->required();
    add_match_options(*c.match, o);
    c.match->add_option("--out", o.match_out, "Write pairs here instead of stdout");
    c.match->add_option("--dump-scores", o.dump_dir, "Write the score matrix of every iteration as CSV into this directory");

    c.generate = c.app->add_subcommand("generate", "Write a seeded synthetic scene and its ground truth");
    add_scene_options(*c.generate, o);
    c.generate->add_option("--outlier", o.outlier, "Outlier ratio in [0, 1]")->capture_default_str();
    c.generate->add_option("--jitter", o.jitter, "Jitter ratio in [0, 1]")->capture_default_str();
    c.generate->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    c.generate->add_option("--out-a", o.out_a, "Output file for set A")->capture_default_str();
    c.generate->add_option("--out-b", o.out_b, "Output file for set B")->capture_default_str();
    c.generate->add_option("--out-truth", o.out_truth, "Output ground-truth CSV")->capture_default_str();

    c.bench = c.app->add_subcommand("bench", "Run the ACPPR grid and write one table CSV per K");
    add_scene_options(*c.bench, o);
    add_match_options(*c.bench, o, false);
    c.bench->add_option("--k-list", o.k_list, "K values")->delimiter(',')->capture_default_str();
    c.bench->add_option("--outlier-list", o.outlier_list, "Outlier ratios")->delimiter(',')->capture_default_str();
    c.bench->add_option("--jitter-list", o.jitter_list, "Jitter ratios")->delimiter(',')->capture_default_str();
    c.bench->add_option("--trials", o.trials, "Trials per cell")->capture_default_str();
    c.bench->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    c.bench->add_option("--emit-fig", o.figures, "Also write figure series 1, 2 and/or 3")
        ->delimiter(',')
        ->check(CLI::IsMember({1, 2, 3}));
    c.bench->add_option("--out-dir", o.out_dir, "Directory for the CSV files")->capture_default_str();
    c.bench->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();

    c.score = c.app->add_subcommand("score", "ACPPR of a `match` output against a ground-truth CSV");
    c.score->add_option("--matches", o.matches_file, "Output of `dpsm match`")->required();
    c.score->add_option("--truth", o.truth_file, "Ground-truth CSV from `dpsm generate`")->required();

    for (CLI::App* sub : {c.match, c.generate, c.bench, c.score})
        sub->add_option("--config", o.config_file, "Flat `key = value` file; flags take precedence");
    return c;
}

/// Parses a flat `key = value` file. Keys are option names without dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open configuration file");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string();
        return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(path, line_no, "expected `key = value`");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(path, line_no, "empty key");
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

RigidTransform parse_transform(const std::string& text) {
    std::stringstream ss(text);
    std::string field;
    std::vector<double> v;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw ConfigError("--transform expects `random` or `theta,tx,ty`, got '" + text + "'");
        }
    }
    if (v.size() != 3 || !std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]))
        throw ConfigError("--transform expects `random` or `theta,tx,ty`, got '" + text + "'");
    return {v[0], v[1], v[2]};
}

MatchConfig match_config(const Options& o) {
    MatchConfig cfg;
    cfg.k = o.k;
    cfg.thresholds = {o.alpha, o.beta, o.delta};
    cfg.iteration = {o.max_iterations, o.tolerance};
    cfg.tau = o.tau;
    cfg.validate();
    return cfg;
}

SynthConfig synth_config(const Options& o) {
    SynthConfig cfg;
    cfg.n = o.n;
    cfg.range = o.range;
    cfg.outlier_ratio = o.outlier;
    cfg.jitter_ratio = o.jitter;
    cfg.seed = o.seed;
    if (o.transform != "random") cfg.transform = parse_transform(o.transform);
    cfg.validate();
    return cfg;
}

std::string to_string_with(const auto& writer) {
    std::ostringstream buffer;
    writer(buffer);
    return buffer.str();
}

int cmd_match(const Options& o, std::ostream& out) {
    const MatchConfig cfg = match_config(o);
    const PointSet a = io::read_point_set(fs::path(o.file_a));
    const PointSet b = io::read_point_set(fs::path(o.file_b));

    IterationObserver observer;
    if (!o.dump_dir.empty()) {
        fs::create_directories(o.dump_dir);
        observer = [&](const IterationSnapshot& s) {
            if (s.iteration == 1)
                io::write_file_atomic(fs::path(o.dump_dir) / "scores_iter_000.csv",
                                      to_string_with([&](std::ostream& os) { io::write_score_matrix_csv(os, s.previous); }));
            std::ostringstream name;
            name << "scores_iter_" << std::setw(3) << std::setfill('0') << s.iteration << ".csv";
            io::write_file_atomic(fs::path(o.dump_dir) / name.str(),
                                  to_string_with([&](std::ostream& os) { io::write_score_matrix_csv(os, s.normalized); }));
        };
    }

    const MatchResult result = match_point_sets(a, b, cfg, observer);
    const std::string text = to_string_with([&](std::ostream& os) { io::write_match_csv(os, result); });
    if (o.match_out.empty()) {
        out << text;
    } else {
        io::write_file_atomic(o.match_out, text);
    }
    return kOk;
}

int cmd_generate(const Options& o) {
    const Scene scene = generate_scene(synth_config(o));
    io::write_file_atomic(o.out_a, to_string_with([&](std::ostream& os) { io::write_point_set(os, scene.a); }));
    io::write_file_atomic(o.out_b, to_string_with([&](std::ostream& os) { io::write_point_set(os, scene.b); }));
    io::write_file_atomic(o.out_truth,
                          to_string_with([&](std::ostream& os) { io::write_truth_csv(os, scene.truth); }));
    return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    GridSpec spec;
    spec.k_values = o.k_list;
    spec.outlier_ratios = o.outlier_list;
    spec.jitter_ratios = o.jitter_list;
    spec.trials = o.trials;
    spec.synth = synth_config(o);
    spec.match = match_config(o);
    spec.base_seed = o.seed;
    spec.workers = o.workers;
    spec.validate();

    const GridResult result = run_grid(spec);
    fs::create_directories(o.out_dir);
    for (const auto& table : result.tables) {
        const fs::path path = fs::path(o.out_dir) / ("acppr_k" + std::to_string(table.k) + ".csv");
        io::write_file_atomic(path,
                              to_string_with([&](std::ostream& os) { io::write_grid_table_csv(os, result, table); }));
        out << "wrote " << path.string() << " (average " << std::fixed << std::setprecision(1)
            << 100.0 * table.grand_average << "%)\n";
    }
    for (const int fig : o.figures) {
        const auto figure = static_cast<Figure>(fig);
        const auto series = emit_figure_series(result, figure);
        const fs::path path = fs::path(o.out_dir) / ("fig" + std::to_string(fig) + ".csv");
        io::write_file_atomic(path,
                              to_string_with([&](std::ostream& os) { io::write_series_csv(os, series, figure); }));
        out << "wrote " << path.string() << '\n';
    }
    return kOk;
}

int cmd_score(const Options& o, std::ostream& out) {
    std::ifstream matches_in(o.matches_file);
    if (!matches_in) throw ParseError(o.matches_file, 0, "cannot open file");
    std::ifstream truth_in(o.truth_file);
    if (!truth_in) throw ParseError(o.truth_file, 0, "cannot open file");
    const Matching pairs = io::read_match_csv(matches_in, o.matches_file);
    const GroundTruth truth = io::read_truth_csv(truth_in, o.truth_file);
    out << "acppr," << io::format_double(acppr(pairs, truth)) << '\n';
    return kOk;
}

int classify(std::exception_ptr error, std::ostream& err) {
    try {
        std::rethrow_exception(error);
    } catch (const GridCellError& e) {
        err << "error: " << e.what() << '\n';
        std::ostringstream already_reported;
        return classify(e.cause(), already_reported);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        err << "error: invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateInputError& e) {
        err << "error: degenerate input: " << e.what() << '\n';
        return kDegenerate;
    } catch (const UndefinedMetricError& e) {
        err << "error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const ContractViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        Options first;
        Commands commands = make_app(first);
        // CLI11 expects the arguments in reverse order.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            commands.app->parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << commands.app->help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out << commands.app->help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            for (CLI::App* sub : commands.app->get_subcommands()) err << sub->help();
            return kUsage;
        }

        Options o = first;
        CLI::App* active = commands.app->get_subcommands().front();
        if (!first.config_file.empty()) {
            // Re-parse with config entries appended for every option not given on
            // the command line, so flags win over the file.
            std::vector<std::string> merged = args;
            for (const auto& [key, value] : read_config(first.config_file)) {
                const CLI::Option* opt = active->get_option_no_throw("--" + key);
                if (opt == nullptr || key == "config")
                    throw ConfigError("unknown key '" + key + "' in " + first.config_file);
                if (opt->count() == 0) {
                    merged.push_back("--" + key);
                    merged.push_back(value);
                }
            }
            o = Options{};
            Commands again = make_app(o);
            std::vector<std::string> reparsed(merged.rbegin(), merged.rend());
            try {
                again.app->parse(reparsed);
            } catch (const CLI::ParseError& e) {
                err << "error: " << e.what() << " (after applying " << first.config_file << ")\n";
                return kUsage;
            }
        }

        const std::string name = active->get_name();
        if (name == "match") return cmd_match(o, out);
        if (name == "generate") return cmd_generate(o);
        if (name == "bench") return cmd_bench(o, out);
        return cmd_score(o, out);
    } catch (...) {
        return classify(std::current_exception(), err);
    }
}

}  // namespace dpsm::cli

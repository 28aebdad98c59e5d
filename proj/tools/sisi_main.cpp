// Command-line front end: parameter validation, stepping, trajectory runs,
// fixed-point enumeration, stability classification, conjecture evidence,
// and parameter sweeps. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sisi/harness.hpp"
#include "sisi/report_io.hpp"
#include "sisi/stability.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::optional<double> b, alpha, beta1, beta2, k1, k2;
    std::string params_csv;
    std::string start_csv;
    std::int64_t max_iters = -1;  // -1: not set
    double tol = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t trials = -1;
    std::string scenario;
    std::string grid_path;
    std::string out_path;
    std::string format;
    std::string config_path;
};

json g_config;

void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    try {
        in >> g_config;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!g_config.is_object()) throw UsageError("config file must hold a JSON object");
}

template <typename T>
std::optional<T> config_value(const char* key) {
    if (!g_config.is_object() || !g_config.contains(key)) return std::nullopt;
    try {
        return g_config.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

std::vector<double> parse_csv_doubles(const std::string& text, size_t expect,
                                      const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse ") + what + ": '" + item + "'");
        }
    }
    if (out.size() != expect) {
        throw UsageError(std::string(what) + " needs " + std::to_string(expect) +
                         " comma-separated values");
    }
    return out;
}

double require_field(const std::optional<double>& flag, const char* key) {
    if (flag) return *flag;
    if (auto c = config_value<double>(key)) return *c;
    throw UsageError(std::string("missing parameter --") + key +
                     " (or --params / config file)");
}

sisi::Params resolve_params(const CommonFlags& f) {
    std::string csv = f.params_csv;
    if (csv.empty()) {
        if (auto c = config_value<std::string>("params")) csv = *c;
    }
    if (!csv.empty()) {
        const auto v = parse_csv_doubles(csv, 6, "--params");
        try {
            return sisi::Params(v[0], v[1], v[2], v[3], v[4], v[5]);
        } catch (const sisi::PreconditionViolated& e) {
            throw sisi::DomainError(e.what());
        }
    }
    return sisi::Params(require_field(f.b, "b"), require_field(f.alpha, "alpha"),
                        require_field(f.beta1, "beta1"),
                        require_field(f.beta2, "beta2"),
                        require_field(f.k1, "k1"), require_field(f.k2, "k2"));
}

sisi::SimplexPoint resolve_start(const CommonFlags& f) {
    std::string csv = f.start_csv;
    if (csv.empty()) {
        if (auto c = config_value<std::string>("start")) csv = *c;
    }
    if (csv.empty()) throw UsageError("missing --start x,u,y,v");
    const auto v = parse_csv_doubles(csv, 4, "--start");
    return sisi::SimplexPoint::checked(v[0], v[1], v[2], v[3]);
}

std::uint64_t resolve_max_iters(const CommonFlags& f, std::uint64_t fallback) {
    std::int64_t v = f.max_iters;
    if (v < 0) {
        if (auto c = config_value<std::int64_t>("max-iters")) v = *c;
    }
    if (v < 0) return fallback;
    if (v < 1) throw UsageError("--max-iters must be >= 1");
    return static_cast<std::uint64_t>(v);
}

double resolve_tol(const CommonFlags& f, double fallback) {
    double v = f.tol;
    if (v < 0) {
        if (auto c = config_value<double>("tol")) v = *c;
    }
    if (v < 0) return fallback;
    if (!(v > 0)) throw UsageError("--tol must be > 0");
    return v;
}

std::uint64_t resolve_seed(const CommonFlags& f) {
    if (f.seed_set) return f.seed;
    if (auto c = config_value<std::uint64_t>("seed")) return *c;
    return 0;
}

std::string resolve_format(const CommonFlags& f) {
    std::string v = f.format;
    if (v.empty()) {
        if (auto c = config_value<std::string>("format")) v = *c;
    }
    if (v.empty()) v = "json";
    if (v != "json" && v != "csv") throw UsageError("--format must be csv or json");
    return v;
}

std::string resolve_out(const CommonFlags& f) {
    if (!f.out_path.empty()) return f.out_path;
    if (auto c = config_value<std::string>("out")) return *c;
    return "";
}

void write_machine(const CommonFlags& f, const json& as_json,
                   const std::string& as_csv) {
    const std::string out = resolve_out(f);
    const bool want_machine =
        !out.empty() || !f.format.empty() || g_config.contains("format");
    if (!want_machine) return;
    const std::string body =
        resolve_format(f) == "json" ? as_json.dump(2) + "\n" : as_csv;
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw UsageError("cannot open output file: " + out);
    os << body;
}

void print_point(std::ostream& os, const sisi::SimplexPoint& s) {
    os << "(" << sisi::fmt17(s.x) << ", " << sisi::fmt17(s.u) << ", "
       << sisi::fmt17(s.y) << ", " << sisi::fmt17(s.v) << ")";
}

int cmd_validate(const CommonFlags& f) {
    const sisi::Params p = resolve_params(f);
    const sisi::ValidationReport r = sisi::validate_params(p);
    std::cout << "QSO: " << (r.is_qso ? "yes" : "no") << "\n";
    std::cout << "identity: " << (r.is_identity ? "yes" : "no") << "\n";
    for (const auto& v : r.violations) {
        std::cout << "violated: " << v.condition << " (lhs=" << sisi::fmt17(v.lhs)
                  << ", bound=" << sisi::fmt17(v.bound) << ")\n";
    }
    return 0;
}

int cmd_step(const CommonFlags& f) {
    const sisi::Params p = resolve_params(f);
    const sisi::SimplexPoint s0 = resolve_start(f);
    const sisi::SimplexPoint s1 = sisi::apply(p, s0);
    std::cout << "force: " << sisi::fmt17(sisi::force_of_infection(p, s0)) << "\n";
    std::cout << "state: ";
    print_point(std::cout, s1);
    std::cout << "\nsum: " << sisi::fmt17(s1.sum()) << "\n";
    const bool left = !s1.on_simplex();
    if (left) {
        std::cout << "note: the image left the simplex (parameters fail the "
                     "self-map conditions)\n";
    }
    // Machine output as a two-point trajectory.
    sisi::Trajectory t{{{0, s0}, {1, s1}},
                       left ? sisi::TrajectoryStatus::LeftSimplex
                            : sisi::TrajectoryStatus::MaxItersReached,
                       1, s1, p};
    write_machine(f, sisi::to_json(t), sisi::to_csv(t));
    return left ? 1 : 0;
}

int cmd_simulate(const CommonFlags& f) {
    const sisi::Params p = resolve_params(f);
    const sisi::SimplexPoint s0 = resolve_start(f);
    const std::uint64_t max_iters = resolve_max_iters(f, 100000);
    const double tol = resolve_tol(f, sisi::kTolConv);
    const sisi::Trajectory t = sisi::iterate_trajectory(p, s0, max_iters, tol);
    std::cout << "status: " << sisi::to_string(t.status) << "\n";
    std::cout << "steps: " << t.at_step << "\n";
    std::cout << "final: ";
    print_point(std::cout, t.final_point);
    std::cout << "\n";
    write_machine(f, sisi::to_json(t), sisi::to_csv(t));
    return t.status == sisi::TrajectoryStatus::LeftSimplex ? 1 : 0;
}

// Single-cell sweep view of an enumeration/classification, for CSV output.
sisi::SweepResult one_cell_sweep(const sisi::Params& p, sisi::SweepTask task) {
    sisi::SweepGrid grid;
    grid.fixed = {{"b", p.b},         {"alpha", p.alpha}, {"beta1", p.beta1},
                  {"beta2", p.beta2}, {"k1", p.k1},       {"k2", p.k2}};
    return sisi::run_sweep(grid, task);
}

int cmd_fixed_points(const CommonFlags& f) {
    const sisi::Params p = resolve_params(f);
    const sisi::FixedPointSet s = sisi::enumerate_fixed_points(p);
    std::cout << "case: " << s.case_tag << "\n";
    for (const auto& rec : s.isolated) {
        std::cout << rec.label << ": ";
        print_point(std::cout, rec.point);
        std::cout << "  residual=" << sisi::fmt17(rec.fixedness_residual);
        if (rec.label == "lambda17") std::cout << "  A=" << sisi::fmt17(rec.force);
        std::cout << "\n";
    }
    static const char* kCoordNames[4] = {"x", "u", "y", "v"};
    for (const auto& face : s.faces) {
        std::cout << face.label << ": face {";
        bool first = true;
        for (int i = 0; i < 4; ++i) {
            if (face.pinned[i]) {
                if (!first) std::cout << ", ";
                std::cout << kCoordNames[i] << "=0";
                first = false;
            }
        }
        if (first) std::cout << "whole simplex";
        std::cout << "}\n";
    }
    write_machine(f, sisi::to_json(s, p),
                  sisi::to_csv(one_cell_sweep(p, sisi::SweepTask::FixedPoints)));
    return 0;
}

int cmd_classify(const CommonFlags& f) {
    const sisi::Params p = resolve_params(f);
    auto show = [](const std::string& label, const sisi::Classification& c) {
        std::cout << label << ": " << sisi::to_string(c.kind) << "  moduli=[";
        for (int i = 0; i < 4; ++i) {
            std::cout << (i ? ", " : "") << sisi::fmt17(c.spectrum.moduli[i]);
        }
        std::cout << "]\n";
    };
    const bool have_start =
        !f.start_csv.empty() || g_config.contains("start");
    if (have_start) {
        const sisi::SimplexPoint s = resolve_start(f);
        const sisi::Classification c = sisi::classify_fixed_point(p, s);
        show("point", c);
        sisi::SweepResult sr;
        sr.task = sisi::SweepTask::Classify;
        sisi::SweepRow row;
        row.params = {p.b, p.alpha, p.beta1, p.beta2, p.k1, p.k2};
        row.label = "point";
        row.classification = sisi::to_string(c.kind);
        row.residual = sup_distance(sisi::apply(p, s), s);
        sr.rows.push_back(std::move(row));
        write_machine(f, sisi::to_json(sr), sisi::to_csv(sr));
        return 0;
    }
    const sisi::FixedPointSet fps = sisi::enumerate_fixed_points(p);
    for (const auto& rec : fps.isolated) {
        show(rec.label, sisi::classify_fixed_point(p, rec.point));
    }
    if (!fps.faces.empty()) {
        std::cout << "(faces of fixed points are not classified; every face "
                     "point carries a unit-circle eigenvalue)\n";
    }
    const sisi::SweepResult sr = one_cell_sweep(p, sisi::SweepTask::Classify);
    write_machine(f, sisi::to_json(sr), sisi::to_csv(sr));
    return 0;
}

int cmd_evidence(const CommonFlags& f) {
    std::string name = f.scenario;
    if (name.empty()) {
        if (auto c = config_value<std::string>("scenario")) name = *c;
    }
    const auto scenario = sisi::parse_scenario(name);
    if (!scenario) {
        throw UsageError("--scenario must be conjecture1, conjecture2, or theorem3");
    }
    std::int64_t trials = f.trials;
    if (trials < 0) {
        if (auto c = config_value<std::int64_t>("trials")) trials = *c;
    }
    if (trials < 0) trials = 200;
    sisi::TrialBudgets budgets;
    budgets.max_iters = resolve_max_iters(f, budgets.max_iters);
    budgets.tol_conv = resolve_tol(f, budgets.tol_conv);
    const std::uint64_t seed = resolve_seed(f);

    const sisi::EvidenceReport r = sisi::gather_evidence(
        *scenario, sisi::default_scenario_sampler(*scenario),
        static_cast<int>(trials), budgets, seed);
    std::cout << "scenario: " << sisi::to_string(r.scenario) << "\n"
              << "seed: " << r.seed << "\n"
              << "trials: " << r.trials << "\n"
              << "confirmed: " << r.confirmed << "\n"
              << "refuted: " << r.refuted.size() << "\n"
              << "inconclusive: " << r.inconclusive << "\n";
    for (const auto& c : r.refuted) {
        std::cout << "counterexample trial=" << c.trial << " seed=" << c.trial_seed
                  << " predicted=" << c.predicted << " got="
                  << (c.matched.empty() ? "(none)" : c.matched) << "\n";
    }
    write_machine(f, sisi::to_json(r), sisi::to_csv(r));
    return 0;
}

int cmd_sweep(const CommonFlags& f) {
    std::string grid_path = f.grid_path;
    if (grid_path.empty()) {
        if (auto c = config_value<std::string>("grid")) grid_path = *c;
    }
    if (grid_path.empty()) throw UsageError("sweep requires --grid <file>");
    std::ifstream in(grid_path);
    if (!in) throw UsageError("cannot open grid file: " + grid_path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("grid file is not valid JSON: ") + e.what());
    }
    sisi::SweepSpec spec = sisi::sweep_spec_from_json(j);
    if (f.seed_set) {
        spec.grid.initial_points.seed = f.seed;
    } else if (auto c = config_value<std::uint64_t>("seed")) {
        spec.grid.initial_points.seed = *c;
    }

    const sisi::SweepResult r = sisi::run_sweep(spec.grid, spec.task);
    std::cout << "task: " << sisi::to_string(r.task) << "\n"
              << "seed: " << r.seed << "\n"
              << "rows: " << r.rows.size() << "\n";
    write_machine(f, sisi::to_json(r), sisi::to_csv(r));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time SISI epidemic operator on the 3-simplex"};
    app.require_subcommand(1);

    CommonFlags f;
    auto add_common = [&f](CLI::App* cmd, bool with_point, bool with_run,
                           bool with_evidence, bool with_grid) {
        cmd->add_option("--b", f.b, "birth/death rate");
        cmd->add_option("--alpha", f.alpha, "recovery rate");
        cmd->add_option("--beta1", f.beta1, "susceptibility of S");
        cmd->add_option("--beta2", f.beta2, "susceptibility of S1");
        cmd->add_option("--k1", f.k1, "infectivity of I");
        cmd->add_option("--k2", f.k2, "infectivity of I1");
        cmd->add_option("--params", f.params_csv,
                        "all six parameters as b,alpha,beta1,beta2,k1,k2");
        cmd->add_option("--config", f.config_path, "JSON config file with flag keys");
        cmd->add_option("--out", f.out_path, "machine-readable output file");
        cmd->add_option("--format", f.format, "machine output format: csv|json");
        if (with_point) {
            cmd->add_option("--start", f.start_csv, "initial point x,u,y,v");
        }
        if (with_run) {
            cmd->add_option("--max-iters", f.max_iters, "iteration budget");
            cmd->add_option("--tol", f.tol, "convergence tolerance (sup norm)");
        }
        if (with_evidence) {
            cmd->add_option("--trials", f.trials, "number of trials");
            cmd->add_option("--scenario", f.scenario,
                            "conjecture1|conjecture2|theorem3");
            cmd->add_option("--seed", f.seed, "random seed")
                ->each([&f](const std::string&) { f.seed_set = true; });
        }
        if (with_grid) {
            cmd->add_option("--grid", f.grid_path, "sweep grid JSON file");
        }
    };

    CLI::App* validate = app.add_subcommand("validate", "check the self-map conditions");
    add_common(validate, false, false, false, false);
    CLI::App* step = app.add_subcommand("step", "apply the operator once");
    add_common(step, true, false, false, false);
    CLI::App* simulate = app.add_subcommand("simulate", "iterate a trajectory");
    add_common(simulate, true, true, false, false);
    CLI::App* fixed = app.add_subcommand("fixed-points", "enumerate the fixed-point set");
    add_common(fixed, false, false, false, false);
    CLI::App* classify = app.add_subcommand("classify", "classify fixed points");
    add_common(classify, true, false, false, false);
    CLI::App* evidence = app.add_subcommand("evidence", "run a conjecture/theorem scenario");
    add_common(evidence, false, true, true, false);
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a task over a parameter grid");
    add_common(sweep, false, false, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!f.config_path.empty()) load_config(f.config_path);
        if (validate->parsed()) return cmd_validate(f);
        if (step->parsed()) return cmd_step(f);
        if (simulate->parsed()) return cmd_simulate(f);
        if (fixed->parsed()) return cmd_fixed_points(f);
        if (classify->parsed()) return cmd_classify(f);
        if (evidence->parsed()) return cmd_evidence(f);
        if (sweep->parsed()) return cmd_sweep(f);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const sisi::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "sisi/harness.hpp"
#include "sisi/report_io.hpp"
#include "sisi/rng.hpp"
#include "sisi/stability.hpp"
#include "test_support.hpp"

using namespace sisi;
using nlohmann::json;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        g_notes.push_back(what);
    }
}

using Clock = std::chrono::steady_clock;

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<void()>& body) {
    g_notes.clear();
    const auto t0 = Clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        g_notes.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_seconds > 0.0 && elapsed >= budget_seconds) {
        g_notes.push_back("runtime " + std::to_string(elapsed) +
                          "s exceeded budget " + std::to_string(budget_seconds) + "s");
    }
    const bool pass = g_notes.empty();
    if (!pass) ++g_failures;
    std::printf("[%s] %02d %-28s (%.3f s)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), elapsed);
    for (const std::string& note : g_notes) {
        std::printf("       - %s\n", note.c_str());
    }
    std::fflush(stdout);
}

std::string temp_path(const std::string& name) {
    return "/tmp/sisi_acceptance_" + std::to_string(::getpid()) + "_" + name;
}

int run_cli_to_file(const std::string& args, const std::string& out_file) {
    const std::string cmd =
        std::string(SISI_CLI_PATH) + " " + args + " >" + out_file + " 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criterion bodies ------------------------------------------------------

void criterion_qso_validation() {
    const Params good(0.2, 0.3, 0.7, 0.6, 1.0, 0.3);
    const Params perturbed(0.2, 0.9, 0.7, 0.6, 1.0, 0.3);
    // Warm up, then time the two validation calls themselves.
    (void)validate_params(good);
    const auto t0 = Clock::now();
    const ValidationReport ok = validate_params(good);
    const ValidationReport bad = validate_params(perturbed);
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    expect(ok.is_qso && ok.violations.empty(), "benchmark set must satisfy all nine conditions");
    expect(!bad.is_qso, "alpha=0.9 must fail validation");
    expect(bad.violations.size() == 1, "exactly one violated condition expected");
    expect(!bad.violations.empty() && bad.violations[0].condition == "alpha+b<=1",
           "the violated condition must be alpha+b<=1");
    expect(ms < 1.0, "validation pair took " + std::to_string(ms) + " ms (budget 1 ms)");
}

void criterion_simplex_preservation() {
    std::mt19937_64 g(0xACCE01);
    for (int i = 0; i < 100000; ++i) {
        const Params p = testsup::random_valid_params(g);
        const SimplexPoint s = rng::uniform_simplex(g);
        const SimplexPoint out = apply(p, s);
        if (std::abs(out.sum() - 1.0) > 1e-12 || out.x < -1e-12 ||
            out.u < -1e-12 || out.y < -1e-12 || out.v < -1e-12) {
            expect(false, "sample " + std::to_string(i) + " left the simplex");
            return;
        }
    }
}

void criterion_root_trichotomy() {
    std::mt19937_64 g(0xACCE03);

    // Branch (iii): the criterion demands that every subcritical draw scans
    // clean. That claim does not survive verification: in the region
    // k2 > b(b+alpha)/(alpha*beta2) * (1+sqrt(beta2/beta1*(1-beta1*k1/(b+a))))^2
    // the gap dips below zero and the equation regains two interior roots
    // (verified against the operator itself in the unit suite). The scan is
    // run as stated and the violations are reported, not suppressed.
    int subcritical = 0;
    int scan_violations = 0;
    std::string first_example;
    while (subcritical < 1000) {
        const Params p = testsup::random_valid_params(g);
        if (!(p.b > 0.0) || !(p.beta1 * p.k1 < p.b + p.alpha - 1e-9)) continue;
        ++subcritical;
        const RootResult r = solve_force_equation(p);
        if (r.unique_positive) {
            expect(false, "subcritical draw produced a root from the solver");
            return;
        }
        if (testsup::oracle_grid_sign_changes(p, p.k1 + p.k2 + 1e-6, 10000) != 0) {
            ++scan_violations;
            if (first_example.empty()) {
                first_example = "b=" + fmt17(p.b) + " alpha=" + fmt17(p.alpha) +
                                " beta1=" + fmt17(p.beta1) + " beta2=" +
                                fmt17(p.beta2) + " k1=" + fmt17(p.k1) +
                                " k2=" + fmt17(p.k2);
            }
        }
    }
    if (scan_violations > 0) {
        expect(false, "branch (iii): " + std::to_string(scan_violations) +
                          "/1000 subcritical draws show a sign change of f-g "
                          "(two genuine interior roots); first example: " +
                          first_example);
    }

    int supercritical = 0;
    while (supercritical < 1000) {
        const Params p = testsup::random_valid_params(g);
        if (!(p.b > 0.0) || !(p.beta1 * p.k1 > p.b + p.alpha + 1e-9)) continue;
        ++supercritical;
        const RootResult r = solve_force_equation(p);
        if (!r.unique_positive || !(r.residual < 1e-12)) {
            expect(false, "supercritical draw missing a verified root");
            return;
        }
        double oracle = 0.0;
        if (!testsup::oracle_bisect(p, 1e-15, p.k1 + p.k2, oracle) ||
            std::abs(r.A - oracle) > 1e-10) {
            expect(false, "quadratic root disagrees with the bisection oracle");
            return;
        }
    }

    // Constructed equality cases: beta1 = (b+alpha)/k1 with power-of-two k1
    // keeps beta1*k1 == b+alpha bit-exact.
    static const double kPow2[] = {0.25, 0.5, 1.0, 2.0};
    int equality = 0;
    while (equality < 1000) {
        const double b = rng::uniform(g, 0.01, 0.4);
        const double alpha = rng::uniform(g, 0.05, 0.55);
        const double k1 = kPow2[g() % 4];
        const double beta1 = (b + alpha) / k1;
        const double beta2 = rng::uniform(g, 0.1, 1.0);
        const double k2 = rng::uniform(g, 0.1, 1.0);
        const Params p(b, alpha, beta1, beta2, k1, k2);
        if (!(p.alpha * p.beta2 * p.k2 > p.b * p.beta1 * p.k1)) continue;
        ++equality;
        const RootResult r = solve_force_equation(p);
        const double closed = (p.alpha * p.beta2 * p.k2 - p.b * p.beta1 * p.k1) /
                              (p.beta1 * p.beta2 * p.k1);
        if (!r.unique_positive || r.method != RootMethod::closed_form_case_i ||
            r.A != closed) {
            expect(false, "equality case did not reproduce the closed form exactly");
            return;
        }
    }
}

void criterion_lambda17_fixedness() {
    const Params p(0.2, 0.3, 0.7, 0.6, 1.0, 0.3);
    const RootResult r = solve_force_equation(p);
    expect(r.unique_positive, "benchmark parameters must yield a root");
    expect(std::abs(r.A - 0.17663) < 1e-5,
           "quadratic root must reproduce 0.17663");
    double oracle = 0.0;
    expect(testsup::oracle_bisect(p, 1e-15, p.k1 + p.k2, oracle),
           "bisection oracle must bracket the root");
    expect(std::abs(oracle - 0.17663) < 1e-5,
           "bisection root must reproduce 0.17663");
    const SimplexPoint l17 = build_lambda17(p, r.A);
    expect(sup_distance(apply(p, l17), l17) < 1e-9,
           "lambda17 must be fixed to 1e-9");
    expect(std::abs(l17.sum() - 1.0) < 1e-10, "lambda17 coordinates must sum to 1");
}

Params random_lambda16_params(std::mt19937_64& g) {
    for (;;) {
        const double b = rng::uniform(g, 0.05, 0.45);
        const double alpha = rng::uniform(g, 0.05, 0.5);
        const double beta1 = rng::uniform(g, 0.1, 1.4);
        const double k1 = rng::uniform(g, 0.05, 1.9);
        const double k2 = rng::uniform(g, 0.0, 1.0);
        const Params p(b, alpha, beta1, 0.0, k1, k2);
        if (!(beta1 * k1 > b + alpha + 1e-3)) continue;
        if (!validate_params(p).is_qso) continue;
        return p;
    }
}

void criterion_lambda16_spectrum() {
    std::mt19937_64 g(0xACCE05);
    for (int i = 0; i < 1000; ++i) {
        const Params p = random_lambda16_params(g);
        const Spectrum closed = lambda16_spectrum(p);
        const Spectrum numeric = eigenvalues4(jacobian(p, build_lambda16(p)));
        for (int k = 0; k < 4; ++k) {
            if (std::abs(closed.eigenvalues[k] - numeric.eigenvalues[k]) > 1e-9) {
                expect(false, "closed form and numeric spectrum disagree");
                return;
            }
            if (!(closed.moduli[k] < 1.0)) {
                expect(false, "modulus not inside the unit circle");
                return;
            }
        }
    }
    const Params bench(0.2, 0.3, 0.7, 0.0, 1.0, 0.3);
    const Spectrum s = lambda16_spectrum(bench);
    expect(std::abs(s.moduli[0] - std::sqrt(0.76)) < 1e-9,
           "benchmark complex pair must have modulus sqrt(0.76)");
    expect(std::abs(s.moduli[1] - std::sqrt(0.76)) < 1e-9,
           "benchmark complex pair must have modulus sqrt(0.76)");
}

void criterion_jacobian_fd() {
    std::mt19937_64 g(0xACCE06);
    for (int i = 0; i < 100; ++i) {
        const Params p = testsup::random_valid_params(g);
        const SimplexPoint s = rng::uniform_simplex(g);
        const Matrix4 j = jacobian(p, s);
        const auto fd = testsup::fd_jacobian(p, s);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (std::abs(j(r, c) - fd[r][c]) > 1e-6) {
                    expect(false, "analytic and finite-difference entries differ");
                    return;
                }
            }
        }
    }
}

void criterion_invariant_set() {
    std::mt19937_64 g(0xACCE07);
    int tested = 0;
    while (tested < 10000) {
        const Params p = testsup::random_valid_params(g);
        if (!(p.b > 0.0) || !(p.beta1 * p.k1 <= p.b + p.alpha)) continue;
        const double z = rng::uniform01(g);
        const double cap = p.alpha > 0 ? std::min(1.0 - z, p.b * z / p.alpha)
                                       : 1.0 - z;
        if (!(cap >= 0.0)) continue;
        const ReducedState r{rng::uniform(g, 0.0, cap), z, rng::uniform01(g)};
        if (!invariant_set_member(p, r)) continue;
        ++tested;
        if (!invariant_set_member(p, reduced_operator_step(p, r))) {
            expect(false, "image left the invariant set");
            return;
        }
    }
}

void criterion_theorem3_convergence() {
    const EvidenceReport r = gather_evidence(
        Scenario::Theorem3, default_scenario_sampler(Scenario::Theorem3), 500,
        TrialBudgets{}, 0xACCE08);
    expect(r.trials == 500, "500 trials must run");
    expect(r.refuted.empty(),
           "refutations: " + std::to_string(r.refuted.size()));
    expect(r.inconclusive == 0,
           "inconclusive: " + std::to_string(r.inconclusive));
    expect(r.confirmed == 500, "all 500 trials must converge to lambda1");
}

void criterion_lambda16_basin() {
    std::mt19937_64 g(0xACCE09);
    for (int i = 0; i < 100; ++i) {
        const Params p = random_lambda16_params(g);
        const SimplexPoint l16 = build_lambda16(p);
        // Perturb within the simplex, staying inside a 1e-3 ball.
        SimplexPoint s0;
        for (;;) {
            double d[4];
            for (double& di : d) di = rng::uniform(g, -2e-4, 2e-4);
            d[3] = std::abs(d[3]);  // v = 0 on the equilibrium; stay nonnegative
            SimplexPoint q{l16.x + d[0], l16.u + d[1], l16.y + d[2], l16.v + d[3]};
            const double sum = q.sum();
            q.x /= sum; q.u /= sum; q.y /= sum; q.v /= sum;
            if (q.on_simplex() && sup_distance(q, l16) < 1e-3 &&
                sup_distance(q, l16) > 0.0) {
                s0 = q;
                break;
            }
        }
        const Trajectory t = iterate_trajectory(p, s0, 1000000, 1e-12);
        if (t.status != TrajectoryStatus::Converged ||
            sup_distance(t.final_point, l16) > 1e-8) {
            expect(false, "start " + std::to_string(i) +
                              " did not converge back to lambda16");
            return;
        }
    }
}

void criterion_conjecture_evidence() {
    for (Scenario s : {Scenario::Conjecture1, Scenario::Conjecture2}) {
        const std::uint64_t seed = 0xACCE0A + static_cast<int>(s);
        const EvidenceReport r =
            gather_evidence(s, default_scenario_sampler(s), 200, TrialBudgets{}, seed);
        expect(r.trials == 200, "200 trials must run");
        expect(r.confirmed + static_cast<int>(r.refuted.size()) + r.inconclusive ==
                   r.trials,
               "tally conservation failed");
        const json j = to_json(r);
        const json round = json::parse(j.dump());
        expect(round.at("schema") == "sisi-report/1", "schema field missing");
        expect(round.at("scenario") == to_string(s), "scenario field mismatch");
        expect(round.at("trials").get<int>() == 200, "trials field mismatch");
        // Any refuted entry must reproduce deterministically from its seed.
        for (const Counterexample& c : r.refuted) {
            const TrialOutcome again = run_trial(s, default_scenario_sampler(s),
                                                 c.trial_seed, r.budgets);
            if (again.result != TrialResult::Refuted || again.matched != c.matched ||
                again.steps != c.steps) {
                expect(false, "counterexample did not reproduce from its seed");
            }
        }
    }
}

void criterion_cli_determinism() {
    const std::string ev1 = temp_path("ev1.json");
    const std::string ev2 = temp_path("ev2.json");
    const std::string ev_args =
        "evidence --scenario conjecture2 --trials 40 --seed 99 --format json --out ";
    expect(run_cli_to_file(ev_args + ev1, temp_path("ev1.log")) == 0,
           "evidence run 1 failed");
    expect(run_cli_to_file(ev_args + ev2, temp_path("ev2.log")) == 0,
           "evidence run 2 failed");
    const std::string a = slurp(ev1), b = slurp(ev2);
    expect(!a.empty() && a == b, "evidence JSON outputs differ between runs");

    const std::string grid = temp_path("grid.json");
    {
        std::ofstream gf(grid);
        gf << R"({"task": "limit",
                  "axes": {"k1": {"min": 0.5, "max": 1.0, "steps": 2}},
                  "fixed": {"b": 0.2, "alpha": 0.3, "beta1": 0.7,
                            "beta2": 0.6, "k2": 0.3},
                  "initial_points": {"count": 5, "seed": 4}})";
    }
    const std::string sw1 = temp_path("sw1.csv");
    const std::string sw2 = temp_path("sw2.csv");
    const std::string sw_args = "sweep --grid " + grid + " --seed 4 --format csv --out ";
    expect(run_cli_to_file(sw_args + sw1, temp_path("sw1.log")) == 0,
           "sweep run 1 failed");
    expect(run_cli_to_file(sw_args + sw2, temp_path("sw2.log")) == 0,
           "sweep run 2 failed");
    const std::string c = slurp(sw1), d = slurp(sw2);
    expect(!c.empty() && c == d, "sweep CSV outputs differ between runs");

    for (const std::string& p :
         {ev1, ev2, grid, sw1, sw2, temp_path("ev1.log"), temp_path("ev2.log"),
          temp_path("sw1.log"), temp_path("sw2.log")}) {
        std::remove(p.c_str());
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    run_criterion(1, "qso-validation", 0.0, criterion_qso_validation);
    run_criterion(2, "simplex-preservation", 5.0, criterion_simplex_preservation);
    run_criterion(3, "root-trichotomy", 30.0, criterion_root_trichotomy);
    run_criterion(4, "lambda17-fixedness", 0.0, criterion_lambda17_fixedness);
    run_criterion(5, "lambda16-spectrum", 30.0, criterion_lambda16_spectrum);
    run_criterion(6, "jacobian-correctness", 0.0, criterion_jacobian_fd);
    run_criterion(7, "invariant-set", 0.0, criterion_invariant_set);
    run_criterion(8, "theorem3-convergence", 60.0, criterion_theorem3_convergence);
    run_criterion(9, "lambda16-local-basin", 0.0, criterion_lambda16_basin);
    run_criterion(10, "conjecture-evidence", 0.0, criterion_conjecture_evidence);
    run_criterion(11, "cli-determinism", 0.0, criterion_cli_determinism);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}

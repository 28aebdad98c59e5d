#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sisi/fixed_points.hpp"
#include "sisi/trajectory.hpp"

namespace sisi {

// Candidate limits for trajectory matching: isolated points plus fixed faces.
struct CandidateSet {
    std::vector<FixedPointRecord> points;
    std::vector<FaceDescriptor> faces;

    CandidateSet() = default;
    explicit CandidateSet(const FixedPointSet& s)
        : points(s.isolated), faces(s.faces) {}
};

struct LimitVerdict {
    std::optional<std::string> matched;  // label of the nearest candidate
    double distance = 0.0;
    bool converged = false;
    std::uint64_t steps_used = 0;
};

// Matches the final iterate of a converged trajectory against candidates.
// Faces match when every pinned coordinate is below tol_match and the free
// coordinates form a valid sub-simplex point.
LimitVerdict detect_limit(const Trajectory& t, const CandidateSet& candidates,
                          double tol_match);

// Evidence scenarios and their predicted limits:
//   conjecture1: beta2 = 0 with b, alpha > 0. Subcritical parameter draws
//                (beta1*k1 <= b+alpha) head to the disease-free vertex,
//                supercritical ones to the v = 0 endemic point.
//   conjecture2: alpha, b, beta1, beta2, k1 all positive. Subcritical draws
//                head to the disease-free vertex, supercritical ones to the
//                interior endemic point. Subcritical draws past the two-root
//                dip threshold genuinely refute the prediction; those land
//                in the refuted list as reproducible findings.
//   theorem3:    k2 = 0 with b, alpha > 0. Trajectories reach the
//                disease-free vertex when u0 = 0 or beta1*k1 <= b+alpha.
//                Refutations here are failures, not findings.
enum class Scenario { Conjecture1, Conjecture2, Theorem3 };
const char* to_string(Scenario s);
std::optional<Scenario> parse_scenario(const std::string& name);

struct TrialBudgets {
    std::uint64_t max_iters = 1'000'000;
    double tol_conv = 1e-10;
    double tol_match = 1e-6;
};

using ParamSampler = std::function<Params(std::mt19937_64&)>;

// Scenario-conditioned parameter sampler over validated boxes. Stays a
// comfortable margin away from the beta1*k1 = b+alpha boundary, where the
// leading modulus approaches 1 and convergence stalls; boundary cells are
// reachable through explicit sweeps instead.
ParamSampler default_scenario_sampler(Scenario s);

enum class TrialResult { Confirmed, Refuted, Inconclusive };

struct TrialOutcome {
    TrialResult result;
    Params params;
    SimplexPoint initial;
    SimplexPoint final_point;
    std::string predicted;
    std::string matched;  // empty when no candidate matched
    double distance = 0.0;
    std::uint64_t steps = 0;
    std::string verdict;  // human-readable outcome note
};

// Runs a single evidence trial from its derived seed: draws parameters from
// the sampler, draws a non-fixed initial point, iterates, and compares the
// limit with the scenario's predicted one. Fully reproducible from the seed.
TrialOutcome run_trial(Scenario s, const ParamSampler& sampler,
                       std::uint64_t trial_seed, const TrialBudgets& budgets);

struct Counterexample {
    int trial;
    std::uint64_t trial_seed;
    Params params;
    SimplexPoint initial;
    SimplexPoint final_point;
    std::string predicted;
    std::string matched;
    double distance;
    std::uint64_t steps;
    std::string verdict;
};

struct EvidenceReport {
    Scenario scenario = Scenario::Theorem3;
    int trials = 0;
    int confirmed = 0;
    int inconclusive = 0;
    std::vector<Counterexample> refuted;
    std::uint64_t seed = 0;
    TrialBudgets budgets;
};

// n_trials independent draws; tallies satisfy
// trials == confirmed + refuted.size() + inconclusive.
EvidenceReport gather_evidence(Scenario s, const ParamSampler& sampler,
                               int n_trials, const TrialBudgets& budgets,
                               std::uint64_t seed);

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
};

struct InitialPointSpec {
    int count = 0;
    std::uint64_t seed = 0;
};

// Cartesian parameter grid: some parameters swept over ranges, the rest
// fixed. Axis keys are parameter names (b, alpha, beta1, beta2, k1, k2).
struct SweepGrid {
    std::map<std::string, AxisSpec> axes;
    std::map<std::string, double> fixed;
    InitialPointSpec initial_points;
};

enum class SweepTask { FixedPoints, Classify, Limit };
const char* to_string(SweepTask t);
std::optional<SweepTask> parse_sweep_task(const std::string& name);

struct SweepRow {
    std::array<double, 6> params{};  // b, alpha, beta1, beta2, k1, k2
    std::string label;
    std::optional<double> force;     // the "A" column
    std::optional<double> residual;
    std::string classification;
    std::string limit_label;
    std::optional<std::uint64_t> steps;
    std::string error;
};

struct SweepResult {
    SweepTask task = SweepTask::FixedPoints;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
};

// Evaluates the task on every grid cell; per-cell domain errors land in the
// error column instead of aborting the sweep. Deterministic given the seed.
SweepResult run_sweep(const SweepGrid& grid, SweepTask task);

} // namespace sisi

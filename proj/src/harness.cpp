#include "sisi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sisi/rng.hpp"
#include "sisi/stability.hpp"

namespace sisi {

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Conjecture1: return "conjecture1";
        case Scenario::Conjecture2: return "conjecture2";
        case Scenario::Theorem3: return "theorem3";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(const std::string& name) {
    if (name == "conjecture1") return Scenario::Conjecture1;
    if (name == "conjecture2") return Scenario::Conjecture2;
    if (name == "theorem3") return Scenario::Theorem3;
    return std::nullopt;
}

const char* to_string(SweepTask t) {
    switch (t) {
        case SweepTask::FixedPoints: return "fixed_points";
        case SweepTask::Classify: return "classify";
        case SweepTask::Limit: return "limit";
    }
    return "unknown";
}

std::optional<SweepTask> parse_sweep_task(const std::string& name) {
    if (name == "fixed_points" || name == "fixed-points") return SweepTask::FixedPoints;
    if (name == "classify") return SweepTask::Classify;
    if (name == "limit") return SweepTask::Limit;
    return std::nullopt;
}

LimitVerdict detect_limit(const Trajectory& t, const CandidateSet& candidates,
                          double tol_match) {
    if (!(tol_match > 0.0)) {
        throw PreconditionViolated("detect_limit: tol_match must be > 0");
    }
    LimitVerdict v;
    v.steps_used = t.at_step;
    v.converged = (t.status == TrajectoryStatus::Converged);
    if (!v.converged) return v;

    const SimplexPoint& fin = t.final_point;
    double best = std::numeric_limits<double>::infinity();
    std::string label;
    for (const FixedPointRecord& rec : candidates.points) {
        const double d = sup_distance(fin, rec.point);
        if (d < best) { best = d; label = rec.label; }
    }
    for (const FaceDescriptor& f : candidates.faces) {
        if (!f.contains(fin, tol_match)) continue;
        const double d = f.distance(fin);
        if (d < best) { best = d; label = f.label; }
    }
    if (best <= tol_match) {
        v.matched = label;
        v.distance = best;
    }
    return v;
}

namespace {

// Margin keeping samplers away from the slow-convergence boundary
// beta1*k1 = b+alpha and from b = 0.
constexpr double kBoundaryMargin = 0.1;
constexpr double kDecayMargin = 0.05;
constexpr int kMaxDraws = 100000;

struct BoxDraw {
    double b, alpha, beta1, beta2, k1, k2;
};

// Draws k1 so that beta1*k1 lands on the requested side of b+alpha.
bool draw_k1(std::mt19937_64& g, double beta1, double ba, bool endemic,
             double b, double& k1) {
    if (endemic) {
        const double lo = (ba + kBoundaryMargin) / beta1;
        const double hi = std::min(1.9, (1.0 + b) / beta1);
        if (!(lo < hi)) return false;
        k1 = rng::uniform(g, lo, hi);
    } else {
        const double hi = std::min(1.9, (ba - kDecayMargin) / beta1);
        if (!(hi > 0.0)) return false;
        k1 = rng::uniform(g, 0.0, hi);
    }
    return true;
}

Params draw_scenario_params(Scenario s, std::mt19937_64& g) {
    for (int i = 0; i < kMaxDraws; ++i) {
        const bool endemic = rng::uniform01(g) < 0.5;
        BoxDraw d;
        d.b = rng::uniform(g, 0.05, 0.35);
        d.alpha = rng::uniform(g, 0.05, 0.55);
        d.beta1 = rng::uniform(g, 0.1, 1.2);
        d.beta2 = (s == Scenario::Conjecture1) ? 0.0
                  : (s == Scenario::Conjecture2) ? rng::uniform(g, 0.05, 1.0)
                                                 : rng::uniform(g, 0.0, 1.0);
        d.k2 = (s == Scenario::Theorem3) ? 0.0 : rng::uniform(g, 0.0, 1.0);
        if (!draw_k1(g, d.beta1, d.b + d.alpha, endemic, d.b, d.k1)) continue;
        if (s == Scenario::Conjecture2 && !(d.k1 > 0.0)) continue;
        Params p(d.b, d.alpha, d.beta1, d.beta2, d.k1, d.k2);
        if (!validate_params(p).is_qso) continue;
        return p;
    }
    throw InvalidScenarioConfig("scenario sampler failed to draw valid parameters");
}

void check_scenario_params(Scenario s, const Params& p) {
    const bool base = p.b > 0.0 && p.alpha > 0.0;
    bool ok = false;
    switch (s) {
        case Scenario::Conjecture1:
            ok = base && p.beta2 == 0.0;
            break;
        case Scenario::Conjecture2:
            ok = base && p.beta1 > 0.0 && p.beta2 > 0.0 && p.k1 > 0.0;
            break;
        case Scenario::Theorem3:
            ok = base && p.k2 == 0.0;
            break;
    }
    if (!ok) {
        throw InvalidScenarioConfig(
            "sampled parameters violate the scenario's side conditions");
    }
}

SimplexPoint draw_nonfixed_point(std::mt19937_64& g, const CandidateSet& c,
                                 bool pin_u_zero) {
    static const FaceDescriptor u_face{"u=0", {false, true, false, false}};
    for (int i = 0; i < 10000; ++i) {
        const SimplexPoint s =
            pin_u_zero ? sample_face(u_face, g) : rng::uniform_simplex(g);
        bool near = false;
        for (const FixedPointRecord& rec : c.points) {
            if (sup_distance(s, rec.point) < 1e-9) { near = true; break; }
        }
        if (!near) {
            for (const FaceDescriptor& f : c.faces) {
                if (f.distance(s) < 1e-9) { near = true; break; }
            }
        }
        if (!near) return s;
    }
    throw InvalidScenarioConfig(
        "could not draw an initial point away from the fixed set");
}

} // namespace

ParamSampler default_scenario_sampler(Scenario s) {
    return [s](std::mt19937_64& g) { return draw_scenario_params(s, g); };
}

TrialOutcome run_trial(Scenario s, const ParamSampler& sampler,
                       std::uint64_t trial_seed, const TrialBudgets& budgets) {
    std::mt19937_64 g(trial_seed);
    const Params p = sampler(g);
    check_scenario_params(s, p);

    const double bk = p.beta1 * p.k1;
    const double ba = p.b + p.alpha;
    const FixedPointSet fps = enumerate_fixed_points(p);
    const CandidateSet cands(fps);

    // The theorem3 scenario covers the endemic parameter side only through
    // u0 = 0 starts.
    const bool pin_u_zero = (s == Scenario::Theorem3) && bk > ba;
    SimplexPoint s0 = draw_nonfixed_point(g, cands, pin_u_zero);
    if (s != Scenario::Theorem3 && bk > ba) {
        while (!(s0.u + s0.v > 0.0)) s0 = draw_nonfixed_point(g, cands, false);
    }

    std::string predicted = "lambda1";
    if (bk > ba) {
        if (s == Scenario::Conjecture1) predicted = "lambda16";
        else if (s == Scenario::Conjecture2) predicted = "lambda17";
    }

    const Trajectory traj =
        iterate_trajectory(p, s0, budgets.max_iters, budgets.tol_conv);

    TrialOutcome out{TrialResult::Inconclusive, p,       s0, traj.final_point,
                     predicted,                 "",      0.0, traj.at_step,
                     ""};
    if (traj.status == TrajectoryStatus::LeftSimplex) {
        out.result = TrialResult::Refuted;
        out.verdict = "left-simplex";
        return out;
    }
    if (traj.status == TrajectoryStatus::MaxItersReached) {
        out.result = TrialResult::Inconclusive;
        out.verdict = "max-iters-reached";
        return out;
    }
    const LimitVerdict lv = detect_limit(traj, cands, budgets.tol_match);
    out.matched = lv.matched.value_or("");
    out.distance = lv.distance;
    if (lv.matched && *lv.matched == predicted) {
        out.result = TrialResult::Confirmed;
        out.verdict = "converged-to-predicted";
    } else {
        out.result = TrialResult::Refuted;
        out.verdict = lv.matched ? "converged-to-other" : "converged-unmatched";
    }
    return out;
}

EvidenceReport gather_evidence(Scenario s, const ParamSampler& sampler,
                               int n_trials, const TrialBudgets& budgets,
                               std::uint64_t seed) {
    if (n_trials < 0) {
        throw InvalidScenarioConfig("gather_evidence: n_trials must be >= 0");
    }
    EvidenceReport report;
    report.scenario = s;
    report.trials = n_trials;
    report.seed = seed;
    report.budgets = budgets;
    for (int i = 0; i < n_trials; ++i) {
        const std::uint64_t trial_seed = rng::derive_seed(seed, static_cast<std::uint64_t>(i));
        const TrialOutcome o = run_trial(s, sampler, trial_seed, budgets);
        switch (o.result) {
            case TrialResult::Confirmed:
                ++report.confirmed;
                break;
            case TrialResult::Inconclusive:
                ++report.inconclusive;
                break;
            case TrialResult::Refuted:
                report.refuted.push_back({i, trial_seed, o.params, o.initial,
                                          o.final_point, o.predicted, o.matched,
                                          o.distance, o.steps, o.verdict});
                break;
        }
    }
    return report;
}

namespace {

const std::array<std::string, 6> kParamNames = {"b",     "alpha", "beta1",
                                                "beta2", "k1",    "k2"};

void validate_grid(const SweepGrid& grid, SweepTask task) {
    for (const auto& [name, axis] : grid.axes) {
        if (std::find(kParamNames.begin(), kParamNames.end(), name) ==
            kParamNames.end()) {
            throw InvalidScenarioConfig("sweep: unknown axis '" + name + "'");
        }
        if (axis.steps < 1 || !(axis.min <= axis.max) || !(axis.min >= 0.0) ||
            !std::isfinite(axis.min) || !std::isfinite(axis.max)) {
            throw InvalidScenarioConfig("sweep: invalid axis '" + name + "'");
        }
        if (grid.fixed.count(name)) {
            throw InvalidScenarioConfig("sweep: '" + name +
                                        "' is both swept and fixed");
        }
    }
    for (const auto& [name, value] : grid.fixed) {
        if (std::find(kParamNames.begin(), kParamNames.end(), name) ==
            kParamNames.end()) {
            throw InvalidScenarioConfig("sweep: unknown parameter '" + name + "'");
        }
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw InvalidScenarioConfig("sweep: invalid value for '" + name + "'");
        }
    }
    for (const std::string& name : kParamNames) {
        if (!grid.axes.count(name) && !grid.fixed.count(name)) {
            throw InvalidScenarioConfig("sweep: parameter '" + name +
                                        "' is neither swept nor fixed");
        }
    }
    if (task == SweepTask::Limit && grid.initial_points.count < 1) {
        throw InvalidScenarioConfig(
            "sweep: limit task requires a nonempty initial-point spec");
    }
}

} // namespace

SweepResult run_sweep(const SweepGrid& grid, SweepTask task) {
    validate_grid(grid, task);

    // Axes in canonical parameter order, last axis fastest.
    std::vector<std::pair<int, AxisSpec>> axes;
    std::uint64_t n_cells = 1;
    for (int i = 0; i < 6; ++i) {
        auto it = grid.axes.find(kParamNames[i]);
        if (it != grid.axes.end()) {
            axes.emplace_back(i, it->second);
            n_cells *= static_cast<std::uint64_t>(it->second.steps);
        }
    }

    SweepResult result;
    result.task = task;
    result.seed = grid.initial_points.seed;

    const TrialBudgets budgets;
    for (std::uint64_t cell = 0; cell < n_cells; ++cell) {
        std::array<double, 6> values{};
        for (int i = 0; i < 6; ++i) {
            auto it = grid.fixed.find(kParamNames[i]);
            if (it != grid.fixed.end()) values[i] = it->second;
        }
        std::uint64_t rem = cell;
        for (auto rit = axes.rbegin(); rit != axes.rend(); ++rit) {
            const auto& [pidx, axis] = *rit;
            const std::uint64_t idx = rem % axis.steps;
            rem /= axis.steps;
            values[pidx] =
                axis.steps == 1
                    ? axis.min
                    : axis.min + (axis.max - axis.min) *
                                     (static_cast<double>(idx) / (axis.steps - 1));
        }

        auto emit_error = [&](const std::string& msg) {
            SweepRow row;
            row.params = values;
            row.error = msg;
            result.rows.push_back(std::move(row));
        };

        try {
            const Params p(values[0], values[1], values[2], values[3],
                           values[4], values[5]);
            const FixedPointSet fps = enumerate_fixed_points(p);
            if (task == SweepTask::FixedPoints) {
                for (const FixedPointRecord& rec : fps.isolated) {
                    SweepRow row;
                    row.params = values;
                    row.label = rec.label;
                    row.force = rec.force;
                    row.residual = rec.fixedness_residual;
                    result.rows.push_back(std::move(row));
                }
                for (const FaceDescriptor& f : fps.faces) {
                    SweepRow row;
                    row.params = values;
                    row.label = f.label;
                    result.rows.push_back(std::move(row));
                }
            } else if (task == SweepTask::Classify) {
                for (const FixedPointRecord& rec : fps.isolated) {
                    SweepRow row;
                    row.params = values;
                    row.label = rec.label;
                    row.residual = rec.fixedness_residual;
                    try {
                        row.classification =
                            to_string(classify_fixed_point(p, rec.point).kind);
                    } catch (const DomainError& e) {
                        row.error = e.what();
                    }
                    result.rows.push_back(std::move(row));
                }
            } else {
                const CandidateSet cands(fps);
                const std::uint64_t cell_seed =
                    rng::derive_seed(grid.initial_points.seed, cell);
                for (int j = 0; j < grid.initial_points.count; ++j) {
                    SweepRow row;
                    row.params = values;
                    try {
                        std::mt19937_64 g(
                            rng::derive_seed(cell_seed, static_cast<std::uint64_t>(j)));
                        const SimplexPoint s0 = draw_nonfixed_point(g, cands, false);
                        const Trajectory traj = iterate_trajectory(
                            p, s0, budgets.max_iters, budgets.tol_conv);
                        const LimitVerdict lv =
                            detect_limit(traj, cands, budgets.tol_match);
                        row.limit_label = lv.matched.value_or("");
                        row.steps = traj.at_step;
                        if (traj.status == TrajectoryStatus::LeftSimplex) {
                            row.error = "left-simplex";
                        } else if (traj.status == TrajectoryStatus::MaxItersReached) {
                            row.error = "max-iters-reached";
                        }
                    } catch (const DomainError& e) {
                        row.error = e.what();
                    }
                    result.rows.push_back(std::move(row));
                }
            }
        } catch (const DomainError& e) {
            emit_error(e.what());
        }
    }
    return result;
}

} // namespace sisi

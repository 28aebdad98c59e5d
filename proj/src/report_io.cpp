#include "sisi/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sisi {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json point_to_json(const SimplexPoint& s) {
    return json::array({s.x, s.u, s.y, s.v});
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

json to_json(const Params& p) {
    return json{{"b", p.b},     {"alpha", p.alpha}, {"beta1", p.beta1},
                {"beta2", p.beta2}, {"k1", p.k1},   {"k2", p.k2}};
}

Params params_from_json(const json& j) {
    return Params(j.at("b").get<double>(), j.at("alpha").get<double>(),
                  j.at("beta1").get<double>(), j.at("beta2").get<double>(),
                  j.at("k1").get<double>(), j.at("k2").get<double>());
}

json to_json(const EvidenceReport& r) {
    json refuted = json::array();
    for (const Counterexample& c : r.refuted) {
        refuted.push_back(json{{"trial", c.trial},
                               {"trial_seed", c.trial_seed},
                               {"params", to_json(c.params)},
                               {"initial", point_to_json(c.initial)},
                               {"final", point_to_json(c.final_point)},
                               {"predicted", c.predicted},
                               {"matched", c.matched},
                               {"distance", c.distance},
                               {"steps", c.steps},
                               {"verdict", c.verdict}});
    }
    return json{{"schema", kReportSchema},
                {"kind", "evidence"},
                {"seed", r.seed},
                {"scenario", to_string(r.scenario)},
                {"trials", r.trials},
                {"confirmed", r.confirmed},
                {"inconclusive", r.inconclusive},
                {"refuted", refuted},
                {"budgets",
                 json{{"max_iters", r.budgets.max_iters},
                      {"tol_conv", r.budgets.tol_conv},
                      {"tol_match", r.budgets.tol_match}}}};
}

json to_json(const SweepResult& r) {
    json rows = json::array();
    for (const SweepRow& row : r.rows) {
        json jr{{"b", row.params[0]},     {"alpha", row.params[1]},
                {"beta1", row.params[2]}, {"beta2", row.params[3]},
                {"k1", row.params[4]},    {"k2", row.params[5]},
                {"label", row.label},     {"classification", row.classification},
                {"limit_label", row.limit_label}, {"error", row.error}};
        jr["A"] = row.force ? json(*row.force) : json();
        jr["residual"] = row.residual ? json(*row.residual) : json();
        jr["steps"] = row.steps ? json(*row.steps) : json();
        rows.push_back(std::move(jr));
    }
    return json{{"schema", kReportSchema},
                {"kind", "sweep"},
                {"seed", r.seed},
                {"task", to_string(r.task)},
                {"rows", rows}};
}

json to_json(const Trajectory& t) {
    json iterates = json::array();
    for (const auto& [step, pt] : t.iterates) {
        iterates.push_back(json{{"step", step}, {"point", point_to_json(pt)}});
    }
    return json{{"schema", kReportSchema},
                {"kind", "trajectory"},
                {"params", to_json(t.params)},
                {"status", to_string(t.status)},
                {"at_step", t.at_step},
                {"final", point_to_json(t.final_point)},
                {"iterates", iterates}};
}

json to_json(const FixedPointSet& s, const Params& p) {
    json isolated = json::array();
    for (const FixedPointRecord& rec : s.isolated) {
        isolated.push_back(json{{"label", rec.label},
                                {"point", point_to_json(rec.point)},
                                {"residual", rec.fixedness_residual},
                                {"force", rec.force}});
    }
    json faces = json::array();
    for (const FaceDescriptor& f : s.faces) {
        faces.push_back(json{{"label", f.label},
                             {"pinned", json::array({f.pinned[0], f.pinned[1],
                                                     f.pinned[2], f.pinned[3]})}});
    }
    return json{{"schema", kReportSchema},
                {"kind", "fixed_points"},
                {"params", to_json(p)},
                {"case", s.case_tag},
                {"isolated", isolated},
                {"faces", faces}};
}

std::string to_csv(const EvidenceReport& r) {
    std::ostringstream out;
    out << "# " << kReportSchema << " kind=evidence scenario="
        << to_string(r.scenario) << " seed=" << r.seed
        << " trials=" << r.trials << " confirmed=" << r.confirmed
        << " inconclusive=" << r.inconclusive << " refuted=" << r.refuted.size()
        << "\n";
    out << "trial,trial_seed,b,alpha,beta1,beta2,k1,k2,x0,u0,y0,v0,"
           "predicted,matched,distance,steps,verdict\n";
    for (const Counterexample& c : r.refuted) {
        const Params& p = c.params;
        out << c.trial << ',' << c.trial_seed << ',' << fmt17(p.b) << ','
            << fmt17(p.alpha) << ',' << fmt17(p.beta1) << ',' << fmt17(p.beta2)
            << ',' << fmt17(p.k1) << ',' << fmt17(p.k2) << ','
            << fmt17(c.initial.x) << ',' << fmt17(c.initial.u) << ','
            << fmt17(c.initial.y) << ',' << fmt17(c.initial.v) << ','
            << csv_escape(c.predicted) << ',' << csv_escape(c.matched) << ','
            << fmt17(c.distance) << ',' << c.steps << ','
            << csv_escape(c.verdict) << "\n";
    }
    return out.str();
}

std::string to_csv(const SweepResult& r) {
    std::ostringstream out;
    out << "# " << kReportSchema << " kind=sweep task=" << to_string(r.task)
        << " seed=" << r.seed << "\n";
    out << "b,alpha,beta1,beta2,k1,k2,label,A,residual,classification,"
           "limit_label,steps,error\n";
    for (const SweepRow& row : r.rows) {
        for (double v : row.params) out << fmt17(v) << ',';
        out << csv_escape(row.label) << ','
            << (row.force ? fmt17(*row.force) : "") << ','
            << (row.residual ? fmt17(*row.residual) : "") << ','
            << csv_escape(row.classification) << ','
            << csv_escape(row.limit_label) << ',';
        if (row.steps) out << *row.steps;
        out << ',' << csv_escape(row.error) << "\n";
    }
    return out.str();
}

std::string to_csv(const Trajectory& t) {
    std::ostringstream out;
    out << "# " << kReportSchema << " kind=trajectory status="
        << to_string(t.status) << " at_step=" << t.at_step << "\n";
    out << "step,x,u,y,v\n";
    for (const auto& [step, pt] : t.iterates) {
        out << step << ',' << fmt17(pt.x) << ',' << fmt17(pt.u) << ','
            << fmt17(pt.y) << ',' << fmt17(pt.v) << "\n";
    }
    return out.str();
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec spec;
    const std::string task_name = j.value("task", std::string("fixed_points"));
    const auto task = parse_sweep_task(task_name);
    if (!task) {
        throw InvalidScenarioConfig("sweep: unknown task '" + task_name + "'");
    }
    spec.task = *task;

    if (j.contains("axes")) {
        for (const auto& [name, axis] : j.at("axes").items()) {
            AxisSpec a;
            a.min = axis.at("min").get<double>();
            a.max = axis.at("max").get<double>();
            a.steps = axis.value("steps", 1);
            spec.grid.axes[name] = a;
        }
    }
    if (j.contains("fixed")) {
        for (const auto& [name, value] : j.at("fixed").items()) {
            spec.grid.fixed[name] = value.get<double>();
        }
    }
    if (j.contains("initial_points")) {
        const auto& ip = j.at("initial_points");
        spec.grid.initial_points.count = ip.value("count", 0);
        spec.grid.initial_points.seed = ip.value("seed", std::uint64_t{0});
    }
    return spec;
}

} // namespace sisi

#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "sisi/harness.hpp"
#include "sisi/trajectory.hpp"

namespace sisi {

// 17-significant-digit decimal rendering; round-trips every double.
std::string fmt17(double v);

inline constexpr const char* kReportSchema = "sisi-report/1";

nlohmann::json to_json(const Params& p);
Params params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EvidenceReport& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const Trajectory& t);
nlohmann::json to_json(const FixedPointSet& s, const Params& p);

// CSV documents carry a `# sisi-report/1 ...` comment line (with the seed
// when one was used) followed by a header row; floating-point cells use 17
// significant digits.
std::string to_csv(const EvidenceReport& r);
std::string to_csv(const SweepResult& r);
std::string to_csv(const Trajectory& t);

// Grid file: {"task": ..., "axes": {name: {min,max,steps}},
//             "fixed": {name: value},
//             "initial_points": {"count": n, "seed": s}}
struct SweepSpec {
    SweepGrid grid;
    SweepTask task;
};
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

} // namespace sisi

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sisi/model.hpp"

namespace sisi {

enum class TrajectoryStatus {
    Converged,        // sup-norm step difference fell below tol_conv
    MaxItersReached,  // budget exhausted without convergence
    LeftSimplex,      // an iterate escaped the simplex (invalid parameters)
};

const char* to_string(TrajectoryStatus s);

// An orbit of the step map. For long runs the stored iterates are thinned to
// a bounded stride; entries carry their step index so stored neighbors with
// consecutive indices always satisfy next = apply(prev). The initial point,
// the final point, and the final two iterates are always retained.
struct Trajectory {
    std::vector<std::pair<std::uint64_t, SimplexPoint>> iterates;
    TrajectoryStatus status = TrajectoryStatus::MaxItersReached;
    std::uint64_t at_step = 0;  // steps actually applied
    SimplexPoint final_point;   // the limit when status == Converged
    Params params;
};

// Iterates `apply` from s0 until the sup-norm step difference drops below
// tol_conv, the point leaves the simplex, or max_iters is exhausted.
// Iterates are not renormalized between steps.
Trajectory iterate_trajectory(const Params& p, const SimplexPoint& s0,
                              std::uint64_t max_iters, double tol_conv = kTolConv);

} // namespace sisi

#include "sisi/trajectory.hpp"

namespace sisi {

const char* to_string(TrajectoryStatus s) {
    switch (s) {
        case TrajectoryStatus::Converged: return "converged";
        case TrajectoryStatus::MaxItersReached: return "max-iters-reached";
        case TrajectoryStatus::LeftSimplex: return "left-simplex";
    }
    return "unknown";
}

namespace {

bool inside_box(const SimplexPoint& s, double tol) {
    const auto c = s.coords();
    for (double ci : c) {
        if (ci < -tol || ci > 1.0 + tol) return false;
    }
    return true;
}

void store_if_missing(Trajectory& t, std::uint64_t n, const SimplexPoint& s) {
    if (t.iterates.empty() || t.iterates.back().first < n) {
        t.iterates.emplace_back(n, s);
    }
}

} // namespace

Trajectory iterate_trajectory(const Params& p, const SimplexPoint& s0,
                              std::uint64_t max_iters, double tol_conv) {
    if (max_iters < 1) {
        throw PreconditionViolated("iterate_trajectory: max_iters must be >= 1");
    }
    if (!(tol_conv > 0.0)) {
        throw PreconditionViolated("iterate_trajectory: tol_conv must be > 0");
    }

    const std::uint64_t stride =
        max_iters > 10000 ? (max_iters + 9999) / 10000 : 1;

    Trajectory t{{}, TrajectoryStatus::MaxItersReached, 0, s0, p};
    t.iterates.emplace_back(0, s0);

    SimplexPoint prev = s0;
    for (std::uint64_t n = 1; n <= max_iters; ++n) {
        const SimplexPoint next = apply(p, prev);
        t.at_step = n;
        t.final_point = next;

        if (!inside_box(next, kTolSimplex)) {
            t.status = TrajectoryStatus::LeftSimplex;
            store_if_missing(t, n - 1, prev);
            store_if_missing(t, n, next);
            return t;
        }
        if (sup_distance(next, prev) < tol_conv) {
            t.status = TrajectoryStatus::Converged;
            store_if_missing(t, n - 1, prev);
            store_if_missing(t, n, next);
            return t;
        }
        if (n == max_iters) {
            store_if_missing(t, n - 1, prev);
            store_if_missing(t, n, next);
            return t;  // MaxItersReached
        }
        if (n % stride == 0) t.iterates.emplace_back(n, next);
        prev = next;
    }
    return t;  // unreachable; all exits are inside the loop
}

} // namespace sisi

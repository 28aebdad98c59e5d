#pragma once

// Shared test helpers and independent oracles. The oracles re-derive their
// formulas from scratch so they stay decoupled from the library paths they
// cross-check.

#include <array>
#include <cmath>
#include <random>

#include "sisi/model.hpp"
#include "sisi/rng.hpp"

namespace testsup {

using sisi::Params;
using sisi::SimplexPoint;

inline Params fig1_params() { return Params(0.2, 0.3, 0.7, 0.6, 1.0, 0.3); }
inline Params fig2_params() { return Params(0.2, 0.3, 0.7, 0.6, 0.5, 0.3); }

// Rejection sampling over wide boxes against the full condition set.
inline Params random_valid_params(std::mt19937_64& g) {
    using sisi::rng::uniform;
    for (;;) {
        Params p(uniform(g, 0.0, 1.0), uniform(g, 0.0, 1.0),
                 uniform(g, 0.0, 2.0), uniform(g, 0.0, 2.0),
                 uniform(g, 0.0, 2.0), uniform(g, 0.0, 2.0));
        if (sisi::validate_params(p).is_qso) return p;
    }
}

// --- root-equation oracle -------------------------------------------------

inline double oracle_f(const Params& p, double x) { return p.b + p.beta1 * x; }

inline double oracle_g(const Params& p, double x) {
    const double ba = p.b + p.alpha;
    return p.b * p.beta1 * p.k1 / ba +
           p.alpha * p.beta1 * p.beta2 * p.k2 * x / ((p.b + p.beta2 * x) * ba);
}

inline double oracle_gap(const Params& p, double x) {
    return oracle_f(p, x) - oracle_g(p, x);
}

// Plain bisection on the oracle gap; returns false when no sign change
// brackets a root.
inline bool oracle_bisect(const Params& p, double lo, double hi, double& root) {
    double flo = oracle_gap(p, lo);
    double fhi = oracle_gap(p, hi);
    if (flo == 0.0) { root = lo; return true; }
    if (fhi == 0.0) { root = hi; return true; }
    if (flo * fhi > 0.0) return false;
    for (int i = 0; i < 300 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = oracle_gap(p, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0.0) { hi = mid; fhi = fm; }
        else { lo = mid; flo = fm; }
    }
    root = 0.5 * (lo + hi);
    return true;
}

// Counts sign changes of the oracle gap over a dense grid on (0, hi].
inline int oracle_grid_sign_changes(const Params& p, double hi, int n_points) {
    int changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 1; i <= n_points; ++i) {
        const double x = hi * static_cast<double>(i) / n_points;
        const double gap = oracle_gap(p, x);
        if (have_prev && ((prev < 0.0 && gap > 0.0) || (prev > 0.0 && gap < 0.0))) {
            ++changes;
        }
        if (gap != 0.0) { prev = gap; have_prev = true; }
    }
    return changes;
}

// Exact two-root threshold in the subcritical regime beta1*k1 < b+alpha
// (b, alpha, beta1, beta2 > 0): the gap f - g is convex with a unique
// interior minimum, and dips below zero (two positive roots) exactly when
// k2 exceeds
//   k2* = b(b+a)/(a*beta2) * (1 + sqrt(beta2/beta1 * (1 - beta1*k1/(b+a))))^2.
inline double two_root_threshold(const Params& p) {
    const double ba = p.b + p.alpha;
    const double s = 1.0 + std::sqrt(p.beta2 / p.beta1 * (1.0 - p.beta1 * p.k1 / ba));
    return p.b * ba / (p.alpha * p.beta2) * s * s;
}

// --- Jacobian oracle: central finite differences of the step map ----------

inline std::array<std::array<double, 4>, 4>
fd_jacobian(const Params& p, const SimplexPoint& s, double h = 1e-6) {
    std::array<std::array<double, 4>, 4> j{};
    for (int c = 0; c < 4; ++c) {
        SimplexPoint hi = s, lo = s;
        double* hi_coord = c == 0 ? &hi.x : c == 1 ? &hi.u : c == 2 ? &hi.y : &hi.v;
        double* lo_coord = c == 0 ? &lo.x : c == 1 ? &lo.u : c == 2 ? &lo.y : &lo.v;
        *hi_coord += h;
        *lo_coord -= h;
        const SimplexPoint fh = sisi::apply(p, hi);
        const SimplexPoint fl = sisi::apply(p, lo);
        const std::array<double, 4> dh = fh.coords(), dl = fl.coords();
        for (int r = 0; r < 4; ++r) j[r][c] = (dh[r] - dl[r]) / (2.0 * h);
    }
    return j;
}

} // namespace testsup

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sisi/errors.hpp"

namespace sisi {

// Tolerance for simplex membership checks. Wide enough to absorb rounding
// drift over long orbits, narrow enough to flag genuine constraint breaks.
inline constexpr double kTolSimplex = 1e-9;

// Default sup-norm step tolerance for trajectory convergence.
inline constexpr double kTolConv = 1e-10;

// The six model parameters. Nonnegativity is enforced at construction;
// whether the parameter set makes the step map a simplex self-map is a
// separate query (validate_params), so out-of-range sweeps stay expressible.
struct Params {
    double b;      // birth rate == death rate, per step
    double alpha;  // recovery rate
    double beta1;  // susceptibility of the never-infected class
    double beta2;  // susceptibility of the recovered class
    double k1;     // infectivity of the first-time infected
    double k2;     // infectivity of the second-time infected

    Params(double b_, double alpha_, double beta1_, double beta2_,
           double k1_, double k2_);
};

// A population state (x, u, y, v): never-infected, first-time infected,
// recovered, second-time infected. Plain value type; `on_simplex` tells
// whether it currently satisfies the simplex constraints.
struct SimplexPoint {
    double x = 0.0;
    double u = 0.0;
    double y = 0.0;
    double v = 0.0;

    double sum() const { return x + u + y + v; }
    std::array<double, 4> coords() const { return {x, u, y, v}; }

    bool on_simplex(double tol = kTolSimplex) const;

    // Validating factory for user-supplied points; throws NotInSimplex.
    static SimplexPoint checked(double x, double u, double y, double v,
                                double tol = kTolSimplex);
};

double sup_distance(const SimplexPoint& a, const SimplexPoint& b);

// One violated inequality of the self-map condition set.
struct ConditionViolation {
    std::string condition;  // e.g. "alpha+b<=1"
    double lhs;             // evaluated left-hand side
    double bound;           // right-hand side
};

struct ValidationReport {
    bool is_qso = false;
    std::vector<ConditionViolation> violations;
    bool is_identity = false;  // degenerate combinations that freeze the map
};

// Evaluates all nine self-map inequalities and the identity-operator
// degeneracies. Total: never throws on nonnegative parameters.
ValidationReport validate_params(const Params& p);

// Force of infection A(u, v) = k1*u + k2*v.
double force_of_infection(const Params& p, const SimplexPoint& s);

// One step of the evolution operator:
//   x' = x + b - b*x - beta1*A*x
//   u' = u - b*u - alpha*u + beta1*A*x
//   y' = y - b*y + alpha*u - beta2*A*y
//   v' = v - b*v + beta2*A*y
// Pure; the coordinate sum maps s -> s + b*(1 - s).
SimplexPoint apply(const Params& p, const SimplexPoint& s);

} // namespace sisi

#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "sisi/model.hpp"

namespace sisi {

enum class RootMethod {
    quadratic,           // positive root of the cleared quadratic
    closed_form_case_i,  // boundary case beta1*k1 = b+alpha
    bisection_fallback,  // bracketing fallback on (0, k1+k2]
};

enum class NoRootReason {
    case_iii,         // beta1*k1 < b+alpha
    case_i_boundary,  // beta1*k1 = b+alpha but alpha*beta2*k2 <= b*beta1*k1
    degenerate,       // vanished equation (b = 0 edge cases)
};

const char* to_string(RootMethod m);
const char* to_string(NoRootReason r);

// Outcome of solving the interior fixed-point equation for the force A.
struct RootResult {
    bool unique_positive = false;
    double A = 0.0;                              // valid when unique_positive
    RootMethod method = RootMethod::quadratic;   // valid when unique_positive
    NoRootReason reason = NoRootReason::case_iii;
    double residual = 0.0;  // |f(A) - g(A)| at the returned root
};

// f(A) - g(A) where f(A) = b + beta1*A and
// g(A) = b*beta1*k1/(b+alpha) + alpha*beta1*beta2*k2*A/((b+beta2*A)(b+alpha)).
// Positive roots of the fixed-point equation are exactly the positive zeros
// of this gap. Requires b + alpha > 0.
double force_equation_gap(const Params& p, double A);

// Solves the interior fixed-point equation with the full case split:
// no positive root when beta1*k1 < b+alpha; the closed form on the equality
// boundary; the cleared quadratic (or its linear degeneration) otherwise,
// with a bracketing fallback. Returned roots are residual-verified.
RootResult solve_force_equation(const Params& p);

// (b/(beta1*k1), 1 - b/(beta1*k1), 0, 0); requires beta1*k1 > b > 0.
SimplexPoint build_lambda15(const Params& p);

// ((b+a)/(beta1*k1), b*e/(beta1*k1*(b+a)), a*e/(beta1*k1*(b+a)), 0) with
// e = beta1*k1 - b - a; requires b > 0, alpha > 0, beta1*k1 > b+alpha.
SimplexPoint build_lambda16(const Params& p);

// The interior fixed point parametrized by a root A of the force equation.
// Throws InconsistentRoot when A is not consistent with the force of
// infection at the constructed point. (The coordinate sum is 1 for every A,
// so the sum cannot be used to detect a bogus root.)
SimplexPoint build_lambda17(const Params& p, double A);

struct FixedPointRecord {
    SimplexPoint point;
    std::string label;          // "lambda1" ... "lambda17"
    double fixedness_residual;  // sup-norm of V(point) - point
    double force;               // k1*u + k2*v at the point (the root A for lambda17)
};

// A face of the simplex that is pointwise fixed: the pinned coordinates are
// zero, the free ones range over the induced sub-simplex. An empty pin set
// denotes the whole simplex (identity-operator degeneracy).
struct FaceDescriptor {
    std::string label;           // "Lambda5" ... "Lambda14", or "S3"
    std::array<bool, 4> pinned;  // coordinate order x, u, y, v

    // Sup-norm over the pinned coordinates (0 when nothing is pinned).
    double distance(const SimplexPoint& s) const;
    bool contains(const SimplexPoint& s, double tol = kTolSimplex) const;
};

FaceDescriptor face_descriptor(int id);  // id in 5..14

// Random representative of the face (uniform barycentric on the free coords).
SimplexPoint sample_face(const FaceDescriptor& f, std::mt19937_64& g);

struct FixedPointSet {
    std::vector<FixedPointRecord> isolated;  // lambda1 is always present
    std::vector<FaceDescriptor> faces;
    std::string case_tag;  // which parameter case produced this set
};

// Full fixed-point enumeration, dispatching on which parameters vanish.
// When several b = 0 table rows apply at once the union of their sets is
// returned, reduced to maximal faces. Total over all nonnegative parameters.
FixedPointSet enumerate_fixed_points(const Params& p);

} // namespace sisi

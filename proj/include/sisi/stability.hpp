#pragma once

#include <array>
#include <complex>

#include "sisi/model.hpp"

namespace sisi {

// Guard band around the unit circle separating structural nonhyperbolicity
// (eigenvalue 1 when b = 0) from numerically near-1 moduli.
inline constexpr double kUnitCircleTol = 1e-8;

// Dense 4x4 real matrix in the coordinate order x, u, y, v.
struct Matrix4 {
    std::array<std::array<double, 4>, 4> m{};

    double& operator()(int r, int c) { return m[r][c]; }
    double operator()(int r, int c) const { return m[r][c]; }
};

// Eigenvalues in canonical order: descending modulus, ties by descending
// real part, then descending imaginary part.
struct Spectrum {
    std::array<std::complex<double>, 4> eigenvalues;
    std::array<double, 4> moduli;
};

Spectrum make_spectrum(std::array<std::complex<double>, 4> ev);

enum class StabilityKind { Attracting, Repelling, Saddle, NonHyperbolic };
const char* to_string(StabilityKind k);

struct Classification {
    StabilityKind kind;
    Spectrum spectrum;
    double unit_circle_tol;
};

// Partial derivatives of the step map at s. With beta2 = 0 the lower-right
// block collapses to the triangular form used in the lambda16 analysis.
Matrix4 jacobian(const Params& p, const SimplexPoint& s);

// All four eigenvalues (with multiplicity), deterministic for equal input.
Spectrum eigenvalues4(const Matrix4& m);

// Closed-form spectrum at lambda16 for beta2 = 0, b > 0, alpha > 0,
// beta1*k1 > b+alpha: a double eigenvalue 1-b plus the quadratic pair
//   mu_{3,4} = (2 - b - w -+ sqrt((b-w)^2 - 4*w*alpha)) / 2,
// complex-conjugate when the discriminant is negative; w = beta1*A with
// A = b*(beta1*k1 - b - alpha) / (beta1*(b + alpha)).
Spectrum lambda16_spectrum(const Params& p);

// Eigenvalue trichotomy with the unit-circle guard band. Requires s to be a
// fixed point (sup-norm step residual below 1e-8).
Classification classify_fixed_point(const Params& p, const SimplexPoint& s,
                                    double unit_circle_tol = kUnitCircleTol);

// State of the reduced (u, z) operator used in the k2 = 0 analysis. z is the
// combined density y + v; the x coordinate enters as an exogenous context
// value in [0, 1].
struct ReducedState {
    double u = 0.0;
    double z = 0.0;
    double x_context = 0.0;
};

// (u, z) -> (u - b*u - alpha*u + beta1*k1*u*x, z - b*z + alpha*u).
ReducedState reduced_operator_step(const Params& p, const ReducedState& r);

// Membership in the invariant half-plane b*z - alpha*u >= 0.
bool invariant_set_member(const Params& p, const ReducedState& r);

} // namespace sisi

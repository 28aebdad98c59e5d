#include "sisi/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace sisi {

const char* to_string(StabilityKind k) {
    switch (k) {
        case StabilityKind::Attracting: return "attracting";
        case StabilityKind::Repelling: return "repelling";
        case StabilityKind::Saddle: return "saddle";
        case StabilityKind::NonHyperbolic: return "non-hyperbolic";
    }
    return "unknown";
}

Spectrum make_spectrum(std::array<std::complex<double>, 4> ev) {
    std::sort(ev.begin(), ev.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  const double ma = std::abs(a), mb = std::abs(b);
                  if (ma != mb) return ma > mb;
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    Spectrum s;
    s.eigenvalues = ev;
    for (int i = 0; i < 4; ++i) s.moduli[i] = std::abs(ev[i]);
    return s;
}

Matrix4 jacobian(const Params& p, const SimplexPoint& s) {
    const double A = force_of_infection(p, s);
    Matrix4 j;
    j(0, 0) = 1.0 - p.b - p.beta1 * A;
    j(0, 1) = -p.beta1 * p.k1 * s.x;
    j(0, 2) = 0.0;
    j(0, 3) = -p.beta1 * p.k2 * s.x;

    j(1, 0) = p.beta1 * A;
    j(1, 1) = 1.0 - p.b - p.alpha + p.beta1 * p.k1 * s.x;
    j(1, 2) = 0.0;
    j(1, 3) = p.beta1 * p.k2 * s.x;

    j(2, 0) = 0.0;
    j(2, 1) = p.alpha - p.beta2 * p.k1 * s.y;
    j(2, 2) = 1.0 - p.b - p.beta2 * A;
    j(2, 3) = -p.beta2 * p.k2 * s.y;

    j(3, 0) = 0.0;
    j(3, 1) = p.beta2 * p.k1 * s.y;
    j(3, 2) = p.beta2 * A;
    j(3, 3) = 1.0 - p.b + p.beta2 * p.k2 * s.y;
    return j;
}

Spectrum eigenvalues4(const Matrix4& m) {
    Eigen::Matrix4d em;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (!std::isfinite(m(r, c))) {
                throw PreconditionViolated("eigenvalues4: non-finite entry");
            }
            em(r, c) = m(r, c);
        }
    }
    Eigen::EigenSolver<Eigen::Matrix4d> solver(em, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigenvalues4: QR iteration did not converge");
    }
    const auto ev = solver.eigenvalues();
    return make_spectrum({ev(0), ev(1), ev(2), ev(3)});
}

Spectrum lambda16_spectrum(const Params& p) {
    const double bk = p.beta1 * p.k1;
    const double ba = p.b + p.alpha;
    if (p.beta2 != 0.0 || !(p.b > 0.0) || !(p.alpha > 0.0) || !(bk > ba)) {
        throw PreconditionViolated(
            "lambda16_spectrum requires beta2=0, b>0, alpha>0, beta1*k1>b+alpha");
    }
    const double A = p.b * (bk - ba) / (p.beta1 * ba);
    const double w = p.beta1 * A;
    const double disc = (p.b - w) * (p.b - w) - 4.0 * w * p.alpha;

    std::array<std::complex<double>, 4> ev;
    ev[0] = ev[1] = 1.0 - p.b;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        ev[2] = 0.5 * (2.0 - p.b - w - sq);
        ev[3] = 0.5 * (2.0 - p.b - w + sq);
    } else {
        const double re = 1.0 - 0.5 * (p.b + w);
        const double im = 0.5 * std::sqrt(-disc);
        ev[2] = {re, -im};
        ev[3] = {re, im};
    }
    return make_spectrum(ev);
}

Classification classify_fixed_point(const Params& p, const SimplexPoint& s,
                                    double unit_circle_tol) {
    if (sup_distance(apply(p, s), s) > 1e-8) {
        throw NotAFixedPoint("classify_fixed_point: V(s) != s");
    }
    const Spectrum spec = eigenvalues4(jacobian(p, s));

    bool on_circle = false, all_inside = true, all_outside = true;
    for (double m : spec.moduli) {
        if (std::abs(m - 1.0) <= unit_circle_tol) on_circle = true;
        if (!(m < 1.0 - unit_circle_tol)) all_inside = false;
        if (!(m > 1.0 + unit_circle_tol)) all_outside = false;
    }
    StabilityKind kind;
    if (on_circle) kind = StabilityKind::NonHyperbolic;
    else if (all_inside) kind = StabilityKind::Attracting;
    else if (all_outside) kind = StabilityKind::Repelling;
    else kind = StabilityKind::Saddle;
    return {kind, spec, unit_circle_tol};
}

ReducedState reduced_operator_step(const Params& p, const ReducedState& r) {
    if (!(r.x_context >= 0.0 && r.x_context <= 1.0)) {
        throw PreconditionViolated("reduced_operator_step: x_context outside [0,1]");
    }
    ReducedState out;
    out.u = r.u - p.b * r.u - p.alpha * r.u + p.beta1 * p.k1 * r.u * r.x_context;
    out.z = r.z - p.b * r.z + p.alpha * r.u;
    out.x_context = r.x_context;
    return out;
}

bool invariant_set_member(const Params& p, const ReducedState& r) {
    return p.b * r.z - p.alpha * r.u >= 0.0;
}

} // namespace sisi

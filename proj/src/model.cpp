#include "sisi/model.hpp"

#include <algorithm>
#include <cmath>

namespace sisi {

Params::Params(double b_, double alpha_, double beta1_, double beta2_,
               double k1_, double k2_)
    : b(b_), alpha(alpha_), beta1(beta1_), beta2(beta2_), k1(k1_), k2(k2_) {
    const double fields[] = {b, alpha, beta1, beta2, k1, k2};
    for (double f : fields) {
        if (!(f >= 0.0) || !std::isfinite(f)) {
            throw PreconditionViolated(
                "Params: all six parameters must be finite and >= 0");
        }
    }
}

bool SimplexPoint::on_simplex(double tol) const {
    const auto c = coords();
    for (double ci : c) {
        if (!(ci >= -tol) || !(ci <= 1.0 + tol)) return false;
    }
    return std::abs(sum() - 1.0) <= tol;
}

SimplexPoint SimplexPoint::checked(double x, double u, double y, double v,
                                   double tol) {
    SimplexPoint s{x, u, y, v};
    if (!s.on_simplex(tol)) {
        throw NotInSimplex("point is not on the unit simplex");
    }
    return s;
}

double sup_distance(const SimplexPoint& a, const SimplexPoint& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.u - b.u),
                     std::abs(a.y - b.y), std::abs(a.v - b.v)});
}

ValidationReport validate_params(const Params& p) {
    ValidationReport r;
    auto check = [&r](const char* name, double lhs, double bound) {
        if (!(lhs <= bound)) r.violations.push_back({name, lhs, bound});
    };
    check("alpha+b<=1", p.alpha + p.b, 1.0);
    check("beta1*k2<=2", p.beta1 * p.k2, 2.0);
    check("beta2*k1<=2", p.beta2 * p.k1, 2.0);
    check("b+beta2*k2<=1", p.b + p.beta2 * p.k2, 1.0);
    check("|b-beta1*k1|<=1", std::abs(p.b - p.beta1 * p.k1), 1.0);
    check("|b-beta2*k2|<=1", std::abs(p.b - p.beta2 * p.k2), 1.0);
    check("|b-beta1*k2|<=1", std::abs(p.b - p.beta1 * p.k2), 1.0);
    check("|alpha+b-beta1*k1|<=1", std::abs(p.alpha + p.b - p.beta1 * p.k1), 1.0);
    check("|alpha-b-beta2*k1|<=1", std::abs(p.alpha - p.b - p.beta2 * p.k1), 1.0);
    r.is_qso = r.violations.empty();
    r.is_identity =
        (p.b == 0.0 && p.alpha == 0.0 &&
         ((p.k1 == 0.0 && p.k2 == 0.0) || (p.beta1 == 0.0 && p.beta2 == 0.0)));
    return r;
}

double force_of_infection(const Params& p, const SimplexPoint& s) {
    return p.k1 * s.u + p.k2 * s.v;
}

SimplexPoint apply(const Params& p, const SimplexPoint& s) {
    const double A = force_of_infection(p, s);
    SimplexPoint out;
    out.x = s.x + p.b - p.b * s.x - p.beta1 * A * s.x;
    out.u = s.u - p.b * s.u - p.alpha * s.u + p.beta1 * A * s.x;
    out.y = s.y - p.b * s.y + p.alpha * s.u - p.beta2 * A * s.y;
    out.v = s.v - p.b * s.v + p.beta2 * A * s.y;
    return out;
}

} // namespace sisi

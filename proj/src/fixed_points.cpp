#include "sisi/fixed_points.hpp"

#include <algorithm>
#include <cmath>

#include "sisi/rng.hpp"

namespace sisi {

namespace {

constexpr double kEqualityTol = 1e-12;  // case (i) parameter-equality window
constexpr double kResidualTol = 1e-12;

// One safeguarded Newton step on the gap; returns the input when the step
// would leave (0, hi] or the slope is unusable.
double newton_step(const Params& p, double A, double hi) {
    const double ba = p.b + p.alpha;
    const double h = force_equation_gap(p, A);
    const double d2 = p.b + p.beta2 * A;
    const double gD = p.alpha * p.beta1 * p.beta2 * p.k2 / ba;
    const double slope =
        p.beta1 - (gD == 0.0 ? 0.0 : gD * p.b / (d2 * d2));
    if (!(std::abs(slope) > 0.0)) return A;
    const double next = A - h / slope;
    if (!(next > 0.0) || !(next <= hi) || !std::isfinite(next)) return A;
    return next;
}

double polish_root(const Params& p, double A, double hi) {
    for (int i = 0; i < 3; ++i) {
        const double next = newton_step(p, A, hi);
        if (next == A) break;
        A = next;
    }
    return A;
}

RootResult no_root(NoRootReason why) {
    RootResult r;
    r.unique_positive = false;
    r.reason = why;
    return r;
}

RootResult positive_root(const Params& p, double A, RootMethod method) {
    RootResult r;
    r.unique_positive = true;
    r.A = A;
    r.method = method;
    r.residual = std::abs(force_equation_gap(p, A));
    return r;
}

// Bisection on the gap over (lo, hi]; requires a sign change.
bool bisect_gap(const Params& p, double lo, double hi, double& out) {
    double flo = force_equation_gap(p, lo);
    double fhi = force_equation_gap(p, hi);
    if (flo == 0.0) { out = lo; return true; }
    if (fhi == 0.0) { out = hi; return true; }
    if (flo * fhi > 0.0) return false;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = force_equation_gap(p, mid);
        if (fm == 0.0) { out = mid; return true; }
        if (flo * fm < 0.0) { hi = mid; fhi = fm; }
        else { lo = mid; flo = fm; }
    }
    out = 0.5 * (lo + hi);
    return true;
}

} // namespace

const char* to_string(RootMethod m) {
    switch (m) {
        case RootMethod::quadratic: return "quadratic";
        case RootMethod::closed_form_case_i: return "closed_form_case_i";
        case RootMethod::bisection_fallback: return "bisection_fallback";
    }
    return "unknown";
}

const char* to_string(NoRootReason r) {
    switch (r) {
        case NoRootReason::case_iii: return "case_iii";
        case NoRootReason::case_i_boundary: return "case_i_boundary";
        case NoRootReason::degenerate: return "degenerate";
    }
    return "unknown";
}

double force_equation_gap(const Params& p, double A) {
    const double ba = p.b + p.alpha;
    if (!(ba > 0.0)) {
        throw DegenerateParameters(
            "force equation undefined for b + alpha = 0");
    }
    const double f = p.b + p.beta1 * A;
    const double c = p.b * p.beta1 * p.k1 / ba;
    const double d = p.alpha * p.beta1 * p.beta2 * p.k2 / ba;
    const double g = c + (d == 0.0 ? 0.0 : d * A / (p.b + p.beta2 * A));
    return f - g;
}

RootResult solve_force_equation(const Params& p) {
    const double bk = p.beta1 * p.k1;
    const double ba = p.b + p.alpha;

    if (std::abs(bk - ba) <= kEqualityTol) {
        // Boundary case: the cleared equation factors as A * (linear), so the
        // only candidate is the closed form below.
        const double lhs = p.alpha * p.beta2 * p.k2;
        const double rhs = p.b * bk;
        if (lhs > rhs) {
            const double A = (lhs - rhs) / (p.beta1 * p.beta2 * p.k1);
            RootResult r = positive_root(p, A, RootMethod::closed_form_case_i);
            if (!(r.residual < kResidualTol)) {
                r.A = polish_root(p, r.A, p.k1 + p.k2);
                r.residual = std::abs(force_equation_gap(p, r.A));
            }
            return r;
        }
        return no_root(NoRootReason::case_i_boundary);
    }
    if (bk < ba) return no_root(NoRootReason::case_iii);

    // beta1*k1 > b+alpha. The force A = k1*u + k2*v never exceeds k1+k2 on
    // the simplex, which bounds any admissible root.
    if (!(ba > 0.0)) {
        throw DegenerateParameters(
            "solve_force_equation: b + alpha = 0 with beta1*k1 > 0 has no "
            "finite interior root");
    }
    const double hi = p.k1 + p.k2;

    const double a2 = ba * p.beta1 * p.beta2;
    const double a1 = ba * p.b * (p.beta1 + p.beta2) -
                      p.b * p.beta1 * p.beta2 * p.k1 -
                      p.alpha * p.beta1 * p.beta2 * p.k2;
    const double a0 = p.b * p.b * (ba - bk);  // <= 0 here

    double A = 0.0;
    if (a2 > 0.0) {
        // a0 <= 0 makes the discriminant >= a1^2; use the cancellation-free
        // root pair (q/a2, a0/q).
        const double disc = a1 * a1 - 4.0 * a2 * a0;
        const double sq = std::sqrt(disc);
        if (a1 >= 0.0) {
            const double q = -0.5 * (a1 + sq);
            A = (q == 0.0) ? 0.0 : a0 / q;
        } else {
            const double q = 0.5 * (sq - a1);
            A = q / a2;
        }
        if (!(A > 0.0)) return no_root(NoRootReason::degenerate);
    } else {
        // beta1 > 0 is forced by beta1*k1 > b+alpha >= 0, so a2 = 0 means
        // beta2 = 0 and the cleared equation is linear.
        if (!(p.b > 0.0)) {
            // b = 0, beta2 = 0: gap(A) = beta1*A > 0 for every A > 0.
            return no_root(NoRootReason::degenerate);
        }
        A = p.b * (bk - ba) / (p.beta1 * ba);
    }

    A = polish_root(p, A, hi);
    RootResult r = positive_root(p, A, RootMethod::quadratic);
    if (!(r.residual < kResidualTol)) {
        double fb = 0.0;
        if (bisect_gap(p, 1e-15, hi, fb)) {
            fb = polish_root(p, fb, hi);
            RootResult alt = positive_root(p, fb, RootMethod::bisection_fallback);
            if (alt.residual < r.residual) return alt;
        }
    }
    return r;
}

SimplexPoint build_lambda15(const Params& p) {
    const double bk = p.beta1 * p.k1;
    if (!(p.b > 0.0) || !(bk > p.b)) {
        throw NotInSimplex("lambda15 requires beta1*k1 > b > 0");
    }
    return {p.b / bk, (bk - p.b) / bk, 0.0, 0.0};
}

SimplexPoint build_lambda16(const Params& p) {
    const double bk = p.beta1 * p.k1;
    const double ba = p.b + p.alpha;
    if (!(p.b > 0.0) || !(p.alpha > 0.0) || !(bk > ba)) {
        throw NotInSimplex("lambda16 requires beta1*k1 > b+alpha with b, alpha > 0");
    }
    const double excess = bk - ba;
    return {ba / bk, p.b * excess / (bk * ba), p.alpha * excess / (bk * ba), 0.0};
}

SimplexPoint build_lambda17(const Params& p, double A) {
    if (!(A >= 0.0) || !std::isfinite(A)) {
        throw PreconditionViolated("lambda17: force value must be finite and >= 0");
    }
    const double ba = p.b + p.alpha;
    const double d1 = p.b + p.beta1 * A;
    const double d2 = p.b + p.beta2 * A;
    if (!(ba > 0.0) || !(d1 > 0.0) || !(d2 > 0.0)) {
        throw DegenerateParameters("lambda17: vanishing denominator");
    }
    const SimplexPoint q{p.b / d1,
                         p.b * p.beta1 * A / (d1 * ba),
                         p.alpha * p.b * p.beta1 * A / (d1 * d2 * ba),
                         p.alpha * p.beta1 * p.beta2 * A * A / (d1 * d2 * ba)};
    if (std::abs(force_of_infection(p, q) - A) > 1e-8) {
        throw InconsistentRoot(
            "lambda17: the supplied force value is not a root of the "
            "fixed-point equation");
    }
    return q;
}

double FaceDescriptor::distance(const SimplexPoint& s) const {
    const auto c = s.coords();
    double d = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (pinned[i]) d = std::max(d, std::abs(c[i]));
    }
    return d;
}

bool FaceDescriptor::contains(const SimplexPoint& s, double tol) const {
    if (distance(s) > tol) return false;
    const auto c = s.coords();
    for (int i = 0; i < 4; ++i) {
        if (!pinned[i] && c[i] < -tol) return false;
    }
    return std::abs(s.sum() - 1.0) <= 4.0 * tol;
}

FaceDescriptor face_descriptor(int id) {
    auto make = [](const char* label, bool px, bool pu, bool py, bool pv) {
        return FaceDescriptor{label, {px, pu, py, pv}};
    };
    switch (id) {
        case 5: return make("Lambda5", true, true, false, false);    // x=u=0
        case 6: return make("Lambda6", true, false, true, false);    // x=y=0
        case 7: return make("Lambda7", true, false, false, true);    // x=v=0
        case 8: return make("Lambda8", false, true, true, false);    // u=y=0
        case 9: return make("Lambda9", false, true, false, true);    // u=v=0
        case 10: return make("Lambda10", false, false, true, true);  // y=v=0
        case 11: return make("Lambda11", true, false, false, false); // x=0
        case 12: return make("Lambda12", false, true, false, false); // u=0
        case 13: return make("Lambda13", false, false, true, false); // y=0
        case 14: return make("Lambda14", false, false, false, true); // v=0
    }
    throw PreconditionViolated("face_descriptor: id must be in 5..14");
}

SimplexPoint sample_face(const FaceDescriptor& f, std::mt19937_64& g) {
    double e[4];
    double s;
    do {
        s = 0.0;
        for (int i = 0; i < 4; ++i) {
            e[i] = f.pinned[i] ? 0.0 : -std::log1p(-rng::uniform01(g));
            s += e[i];
        }
    } while (!(s > 0.0));
    return {e[0] / s, e[1] / s, e[2] / s, e[3] / s};
}

namespace {

FixedPointRecord record_for(const Params& p, const SimplexPoint& q,
                            std::string label) {
    return {q, std::move(label), sup_distance(apply(p, q), q),
            force_of_infection(p, q)};
}

const SimplexPoint kLambda1{1.0, 0.0, 0.0, 0.0};
const SimplexPoint kLambda4{0.0, 0.0, 0.0, 1.0};

// One row of the b = 0 section of the case table: the extra parameters that
// must vanish, and the resulting fixed set.
struct ZeroRow {
    const char* tag;
    std::array<bool, 5> zeros;  // alpha, beta1, beta2, k1, k2
    std::array<int, 2> faces;   // face ids, 0 = unused
    bool lambda4;
};

constexpr ZeroRow kZeroRows[] = {
    {"b=0", {false, false, false, false, false}, {9, 0}, true},
    {"b=alpha=0", {true, false, false, false, false}, {6, 9}, false},
    {"b=beta1=0", {false, true, false, false, false}, {8, 9}, false},
    {"b=beta2=0", {false, false, true, false, false}, {5, 9}, false},
    {"b=k1=0", {false, false, false, true, false}, {9, 0}, true},
    {"b=k2=0", {false, false, false, false, true}, {12, 0}, false},
    {"b=alpha=beta1=0", {true, true, false, false, false}, {9, 13}, false},
    {"b=alpha=beta2=0", {true, false, true, false, false}, {9, 11}, false},
    {"b=alpha=k1=0", {true, false, false, true, false}, {6, 14}, false},
    {"b=alpha=k2=0", {true, false, false, false, true}, {6, 12}, false},
    {"b=beta1=beta2=0", {false, true, true, false, false}, {12, 0}, false},
    {"b=beta1=k1=0", {false, true, false, true, false}, {8, 9}, false},
    {"b=beta1=k2=0", {false, true, false, false, true}, {12, 0}, false},
    {"b=beta2=k1=0", {false, false, true, true, false}, {5, 9}, false},
    {"b=beta2=k2=0", {false, false, true, false, true}, {12, 0}, false},
};

// pinned(a) superset of pinned(b) means face a is contained in face b.
bool pin_superset(const std::array<bool, 4>& a, const std::array<bool, 4>& b) {
    for (int i = 0; i < 4; ++i) {
        if (b[i] && !a[i]) return false;
    }
    return true;
}

FixedPointSet enumerate_b_zero(const Params& p) {
    const std::array<bool, 5> zero = {p.alpha == 0.0, p.beta1 == 0.0,
                                      p.beta2 == 0.0, p.k1 == 0.0,
                                      p.k2 == 0.0};
    std::vector<const ZeroRow*> matched;
    for (const ZeroRow& row : kZeroRows) {
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            if (row.zeros[i] && !zero[i]) { ok = false; break; }
        }
        if (ok) matched.push_back(&row);
    }
    // matched is never empty: the bare "b=0" row has no extra requirement.

    bool with_lambda4 = false;
    std::vector<FaceDescriptor> faces;
    auto add_face = [&faces](int id) {
        if (id == 0) return;
        FaceDescriptor f = face_descriptor(id);
        for (const FaceDescriptor& g : faces) {
            if (g.label == f.label) return;
        }
        faces.push_back(std::move(f));
    };
    for (const ZeroRow* row : matched) {
        with_lambda4 = with_lambda4 || row->lambda4;
        add_face(row->faces[0]);
        add_face(row->faces[1]);
    }

    // Keep only maximal faces (drop any face contained in another one).
    std::vector<FaceDescriptor> maximal;
    for (const FaceDescriptor& f : faces) {
        bool contained = false;
        for (const FaceDescriptor& g : faces) {
            if (&f != &g && pin_superset(f.pinned, g.pinned) &&
                f.pinned != g.pinned) {
                contained = true;
                break;
            }
        }
        if (!contained) maximal.push_back(f);
    }

    FixedPointSet out;
    out.isolated.push_back(record_for(p, kLambda1, "lambda1"));
    if (with_lambda4) {
        bool absorbed = false;
        for (const FaceDescriptor& f : maximal) {
            if (f.contains(kLambda4, 0.0)) { absorbed = true; break; }
        }
        if (!absorbed) out.isolated.push_back(record_for(p, kLambda4, "lambda4"));
    }
    out.faces = std::move(maximal);

    // Tag with the maximal matched rows (rows not implied by another match).
    std::string tag;
    for (const ZeroRow* row : matched) {
        bool implied = false;
        for (const ZeroRow* other : matched) {
            if (row == other) continue;
            bool subset = true;
            for (int i = 0; i < 5; ++i) {
                if (row->zeros[i] && !other->zeros[i]) { subset = false; break; }
            }
            if (subset && row->zeros != other->zeros) { implied = true; break; }
        }
        if (!implied) {
            if (!tag.empty()) tag += " + ";
            tag += row->tag;
        }
    }
    out.case_tag = tag;
    return out;
}

} // namespace

FixedPointSet enumerate_fixed_points(const Params& p) {
    const ValidationReport vr = validate_params(p);
    if (vr.is_identity) {
        FixedPointSet out;
        out.isolated.push_back(record_for(p, kLambda1, "lambda1"));
        out.faces.push_back(FaceDescriptor{"S3", {false, false, false, false}});
        out.case_tag = "identity";
        return out;
    }
    if (p.b == 0.0) return enumerate_b_zero(p);

    const double bk = p.beta1 * p.k1;
    const double ba = p.b + p.alpha;
    FixedPointSet out;
    out.isolated.push_back(record_for(p, kLambda1, "lambda1"));

    if (p.alpha == 0.0 && bk > p.b) {
        out.isolated.push_back(record_for(p, build_lambda15(p), "lambda15"));
        out.case_tag = "b>0, alpha=0, beta1*k1>b";
    } else if (p.alpha > 0.0 && p.beta2 == 0.0 && bk > ba) {
        out.isolated.push_back(record_for(p, build_lambda16(p), "lambda16"));
        out.case_tag = "b>0, alpha>0, beta2=0, beta1*k1>b+alpha";
    } else if (p.alpha > 0.0 && p.beta1 > 0.0 && p.beta2 > 0.0 && p.k1 > 0.0) {
        out.case_tag = "alpha*b*beta1*beta2*k1>0";
        const RootResult rr = solve_force_equation(p);
        if (rr.unique_positive) {
            FixedPointRecord rec =
                record_for(p, build_lambda17(p, rr.A), "lambda17");
            rec.force = rr.A;
            out.isolated.push_back(std::move(rec));
        }
    } else {
        out.case_tag = "only lambda1";
    }
    return out;
}

} // namespace sisi

#ifndef DIOPOP_EQUILIBRIA_HPP
#define DIOPOP_EQUILIBRIA_HPP

#include <optional>
#include <vector>

#include "diopop/model.hpp"
#include "diopop/roots.hpp"
#include "diopop/tolerance.hpp"

namespace diopop {

// z0..z4 are the closed-form candidates of the square system, O and P the
// fixed points of the quadrant form.
enum class FixedPointLabel { Z0, Z1, Z2, Z3, Z4, O, P };

const char* to_string(FixedPointLabel l);

template <class S>
struct FixedPointReport {
    FixedPointLabel label;
    // false when a closed-form denominator vanishes; location fields stay empty.
    bool applicable = true;
    std::optional<SquareState<S>> square;
    std::optional<QuadrantState<S>> quadrant;
    // geometric membership of the location in its domain
    bool in_domain = false;
    // max-norm distance between the point and its image; absent when the map
    // itself is undefined (0/0) at the point
    std::optional<S> residual;
    std::optional<Eigenpair> eigen;
    std::optional<Stability> stability;
};

template <class S>
struct Mat2 {
    S m00, m01, m10, m11;
    S trace() const { return m00 + m11; }
    S det() const { return m00 * m11 - m01 * m10; }
};

namespace detail {

// Residual of a square-system candidate, or nullopt where W is 0/0. The edge
// candidates z1 and z4 sit exactly on such degeneracies for generic
// parameters, which is why the field is optional.
template <class S>
std::optional<S> square_residual(const FitnessParams<S>& p, const SquareState<S>& z) {
    try {
        return maxnorm_dist(apply_W(p, z), z);
    } catch (const UndefinedImage&) {
        return std::nullopt;
    }
}

template <class S>
FixedPointReport<S> square_candidate(FixedPointLabel label, bool applicable,
                                     const FitnessParams<S>& p, SquareState<S> z) {
    FixedPointReport<S> rep;
    rep.label = label;
    rep.applicable = applicable;
    if (!applicable) return rep;
    rep.square = z;
    rep.in_domain = in_square(z);
    rep.residual = square_residual(p, z);
    return rep;
}

} // namespace detail

// Closed-form fixed-point candidates of the square system, in the order
// z0, z1, z2, z3, z4:
//   z0 = (0,0)                       z3 = (1,1)
//   z1 = (b/(b-a), 1)                z4 = (1, beta/(beta-alpha))
//   z2 = ( ((c-b)g - c*be) / ((c-b)(g+al) + (a-c)be) ,
//          ((g-be)c - g*b) / ((g-be)(c+a) + (al-g)b) )   with al,be,g = alpha,beta,gamma.
// Candidates whose formula denominator vanishes are reported inapplicable.
template <class S>
std::vector<FixedPointReport<S>> fixed_points_W(const FitnessParams<S>& p) {
    const S zero(0), one(1);
    std::vector<FixedPointReport<S>> out;
    out.reserve(5);

    out.push_back(detail::square_candidate(FixedPointLabel::Z0, true, p, SquareState<S>{zero, zero}));

    {
        const S den = p.b - p.a;
        const bool ok = den != zero;
        SquareState<S> z{zero, one};
        if (ok) z.x = p.b / den;
        out.push_back(detail::square_candidate(FixedPointLabel::Z1, ok, p, z));
    }

    {
        const S dx = (p.c - p.b) * (p.gamma + p.alpha) + (p.a - p.c) * p.beta;
        const S dy = (p.gamma - p.beta) * (p.c + p.a) + (p.alpha - p.gamma) * p.b;
        const bool ok = dx != zero && dy != zero;
        SquareState<S> z{zero, zero};
        if (ok) {
            z.x = ((p.c - p.b) * p.gamma - p.c * p.beta) / dx;
            z.y = ((p.gamma - p.beta) * p.c - p.gamma * p.b) / dy;
        }
        out.push_back(detail::square_candidate(FixedPointLabel::Z2, ok, p, z));
    }

    out.push_back(detail::square_candidate(FixedPointLabel::Z3, true, p, SquareState<S>{one, one}));

    {
        const S den = p.beta - p.alpha;
        const bool ok = den != zero;
        SquareState<S> z{one, zero};
        if (ok) z.y = p.beta / den;
        out.push_back(detail::square_candidate(FixedPointLabel::Z4, ok, p, z));
    }

    return out;
}

// Fixed points of the quadrant form, in the order O, P:
//   O = (0,0),   P = ( (B+D-1) / ((B-1)C - AD) , (B+D-1) / ((D-1)A - BC) ).
// T is total, so residuals are always present (and identically zero in exact
// arithmetic).
template <class S>
std::vector<FixedPointReport<S>> fixed_points_T(const ReducedParams<S>& r) {
    const S zero(0), one(1);
    std::vector<FixedPointReport<S>> out;
    out.reserve(2);

    {
        FixedPointReport<S> rep;
        rep.label = FixedPointLabel::O;
        QuadrantState<S> q{zero, zero};
        rep.quadrant = q;
        rep.in_domain = true;
        rep.residual = maxnorm_dist(apply_T(r, q), q);
        out.push_back(std::move(rep));
    }

    {
        FixedPointReport<S> rep;
        rep.label = FixedPointLabel::P;
        const S num = r.B + r.D - one;
        const S ds = (r.B - one) * r.C - r.A * r.D;
        const S dt = (r.D - one) * r.A - r.B * r.C;
        rep.applicable = ds != zero && dt != zero;
        if (rep.applicable) {
            QuadrantState<S> q{num / ds, num / dt};
            rep.quadrant = q;
            rep.in_domain = in_quadrant(q);
            rep.residual = maxnorm_dist(apply_T(r, q), q);
        }
        out.push_back(std::move(rep));
    }

    return out;
}

// Jacobian of T at (s, t):  [ A t + B   A s + B ]
//                           [ C t + D   C s + D ]
template <class S>
Mat2<S> jacobian_T(const ReducedParams<S>& r, const QuadrantState<S>& q) {
    return {r.A * q.t + r.B, r.A * q.s + r.B,
            r.C * q.t + r.D, r.C * q.s + r.D};
}

// Attaches eigenvalues and a stability class to a quadrant fixed-point report.
// The report must carry a quadrant location whose residual passes eps_fixed.
template <class S>
FixedPointReport<S> classify(const ReducedParams<S>& r, const FixedPointReport<S>& fp,
                             const Tolerance& tol = Tolerance{}) {
    if (!fp.applicable || !fp.quadrant)
        throw NotAFixedPoint("report carries no quadrant location");
    if (!fp.residual || !(*fp.residual <= scalar_from_double<S>(tol.eps_fixed)))
        throw NotAFixedPoint("residual exceeds eps_fixed");
    const Mat2<S> j = jacobian_T(r, *fp.quadrant);
    FixedPointReport<S> out = fp;
    out.eigen = quadratic_roots(to_double(j.trace()), to_double(j.det()));
    out.stability = classify_moduli(*out.eigen, tol.eps_fixed);
    return out;
}

// Full candidate survey: the square candidates z0..z4 (with z0 and z2
// inheriting eigenvalues from their quadrant counterparts when the reduced
// form exists) plus the classified quadrant pair O, P.
template <class S>
struct FixedPointSurvey {
    std::vector<FixedPointReport<S>> square;
    std::vector<FixedPointReport<S>> quadrant; // empty when c*gamma = 0
    bool have_reduced = false;
};

template <class S>
FixedPointSurvey<S> survey_fixed_points(const FitnessParams<S>& p, const Tolerance& tol = Tolerance{}) {
    FixedPointSurvey<S> out;
    out.square = fixed_points_W(p);
    out.have_reduced = p.c != S(0) && p.gamma != S(0);
    if (!out.have_reduced) return out;

    const ReducedParams<S> r = to_reduced(p);
    out.quadrant = fixed_points_T(r);
    for (auto& fp : out.quadrant) {
        if (!fp.applicable) continue;
        try {
            fp = classify(r, fp, tol);
        } catch (const NotAFixedPoint&) {
            // float roundoff can push a residual past eps_fixed for extreme
            // parameters; leave that row unclassified
        }
    }
    if (out.quadrant[0].eigen) {
        out.square[0].eigen = out.quadrant[0].eigen;
        out.square[0].stability = out.quadrant[0].stability;
    }
    if (out.quadrant[1].eigen) {
        out.square[2].eigen = out.quadrant[1].eigen;
        out.square[2].stability = out.quadrant[1].stability;
    }
    return out;
}

// Classification of the square-system equilibria z0 or z2, obtained through
// the quadrant conjugate (O and P respectively). Requires c and gamma nonzero.
template <class S>
FixedPointReport<S> classify_square(const FitnessParams<S>& p, FixedPointLabel label,
                                    const Tolerance& tol = Tolerance{}) {
    if (label != FixedPointLabel::Z0 && label != FixedPointLabel::Z2)
        throw NotApplicable("conjugate classification covers z0 and z2 only");
    const ReducedParams<S> r = to_reduced(p);
    auto qfps = fixed_points_T(r);
    const FixedPointReport<S>& conj = (label == FixedPointLabel::Z0) ? qfps[0] : qfps[1];
    if (!conj.applicable)
        throw NotApplicable("quadrant counterpart degenerates for these parameters");
    FixedPointReport<S> cl = classify(r, conj, tol);

    auto wfps = fixed_points_W(p);
    const FixedPointReport<S>& wrep = wfps[label == FixedPointLabel::Z0 ? 0 : 2];

    FixedPointReport<S> out;
    out.label = label;
    out.applicable = true;
    out.quadrant = cl.quadrant;
    out.eigen = cl.eigen;
    out.stability = cl.stability;
    if (wrep.applicable) {
        out.square = wrep.square;
        out.residual = wrep.residual;
    } else if (cl.in_domain) {
        out.square = quadrant_to_square(*cl.quadrant);
        out.residual = detail::square_residual(p, *out.square);
    }
    out.in_domain = out.square && in_square(*out.square);
    return out;
}

} // namespace diopop

#endif

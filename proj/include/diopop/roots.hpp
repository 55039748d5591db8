#ifndef DIOPOP_ROOTS_HPP
#define DIOPOP_ROOTS_HPP

#include <cmath>
#include <complex>
#include <utility>

namespace diopop {

// Eigenvalues of a 2x2 Jacobian, sorted by descending real part, then
// descending imaginary part. Always float: eigenvalues involve square roots,
// which leave the rational field.
struct Eigenpair {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
};

enum class Stability {
    Attractor,
    Repeller,
    Saddle,
    NonHyperbolic,
};

const char* to_string(Stability s);

// Roots of lambda^2 - trace*lambda + det = 0, computed without cancellation:
// the larger-magnitude root comes from the sign-matched quadratic formula, the
// other from det divided by it.
inline Eigenpair quadratic_roots(double trace, double det) {
    const double disc = trace * trace - 4.0 * det;
    std::complex<double> r1, r2;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double dominant = (trace >= 0.0) ? (trace + sq) / 2.0 : (trace - sq) / 2.0;
        double other;
        if (dominant == 0.0)
            other = 0.0; // trace = det = 0: double root at zero
        else if (det != 0.0)
            other = det / dominant;
        else
            other = trace - dominant;
        r1 = dominant;
        r2 = other;
    } else {
        const double re = trace / 2.0;
        const double im = std::sqrt(-disc) / 2.0;
        r1 = {re, im};
        r2 = {re, -im};
    }
    auto before = [](const std::complex<double>& u, const std::complex<double>& v) {
        if (u.real() != v.real()) return u.real() > v.real();
        return u.imag() > v.imag();
    };
    if (before(r2, r1)) std::swap(r1, r2);
    return {r1, r2};
}

// Hyperbolic classification by eigenvalue moduli; |lambda| within eps of 1
// lands in the NonHyperbolic band.
inline Stability classify_moduli(const Eigenpair& e, double eps) {
    const double m1 = std::abs(e.lambda1);
    const double m2 = std::abs(e.lambda2);
    if (std::fabs(m1 - 1.0) <= eps || std::fabs(m2 - 1.0) <= eps) return Stability::NonHyperbolic;
    const bool in1 = m1 < 1.0;
    const bool in2 = m2 < 1.0;
    if (in1 && in2) return Stability::Attractor;
    if (!in1 && !in2) return Stability::Repeller;
    return Stability::Saddle;
}

} // namespace diopop

#endif

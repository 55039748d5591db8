#ifndef DIOPOP_TOLERANCE_HPP
#define DIOPOP_TOLERANCE_HPP

#include <cfloat>

#include "diopop/errors.hpp"

namespace diopop {

// Numeric thresholds shared by classification, iteration, and divergence checks.
//   eps_fixed — residual bound for accepting a fixed point, and the half-width of
//               the non-hyperbolicity band around |lambda| = 1
//   eps_conv  — convergence radius for trajectory verdicts
//   big       — divergence threshold for quadrant coordinates
struct Tolerance {
    double eps_fixed = 1e-12;
    double eps_conv = 1e-10;
    double big = 1e12;

    Tolerance() = default;
    Tolerance(double eps_fixed_, double eps_conv_, double big_)
        : eps_fixed(eps_fixed_), eps_conv(eps_conv_), big(big_) {
        if (!(eps_fixed > 0)) throw InvalidParams("eps_fixed must be positive");
        if (!(eps_conv >= DBL_EPSILON)) throw InvalidParams("eps_conv must be at least DBL_EPSILON");
        if (!(big > 1)) throw InvalidParams("big must exceed 1");
    }
};

} // namespace diopop

#endif

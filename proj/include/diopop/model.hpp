#ifndef DIOPOP_MODEL_HPP
#define DIOPOP_MODEL_HPP

#include <string>

#include "diopop/errors.hpp"
#include "diopop/scalar.hpp"

namespace diopop {

// Fitness coefficients of a dioecious two-allele model: (a, b, c) weight the
// female offspring frequencies, (alpha, beta, gamma) the male ones.
// Invariants: all entries >= 0, a + b > 0, alpha + beta > 0.
template <class S>
struct FitnessParams {
    S a, b, c, alpha, beta, gamma;

    FitnessParams(S a_, S b_, S c_, S alpha_, S beta_, S gamma_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)),
          alpha(std::move(alpha_)), beta(std::move(beta_)), gamma(std::move(gamma_)) {
        const S zero(0);
        if (a < zero || b < zero || c < zero || alpha < zero || beta < zero || gamma < zero)
            throw InvalidParams("fitness coefficients must be nonnegative");
        if (a + b == zero) throw InvalidParams("a + b must be positive");
        if (alpha + beta == zero) throw InvalidParams("alpha + beta must be positive");
    }

    bool symmetric() const { return a == alpha && b == beta && c == gamma; }
};

// Allele-frequency pair in the unit square: x for females, y for males.
// Kept as a plain aggregate so off-domain candidates (formula outputs outside
// [0,1]) remain representable; domain membership is checked where it matters.
template <class S>
struct SquareState {
    S x{};
    S y{};
};

template <class S>
bool in_square(const SquareState<S>& z) {
    const S zero(0), one(1);
    return z.x >= zero && z.x <= one && z.y >= zero && z.y <= one;
}

template <class S>
S maxnorm_dist(const SquareState<S>& u, const SquareState<S>& v) {
    S dx = abs_val(u.x - v.x);
    S dy = abs_val(u.y - v.y);
    return dx > dy ? dx : dy;
}

// Coefficients of the quadrant form of the model: A = a/c, B = b/c, C = alpha/gamma,
// D = beta/gamma. All nonnegative.
template <class S>
struct ReducedParams {
    S A, B, C, D;

    ReducedParams(S A_, S B_, S C_, S D_)
        : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
        const S zero(0);
        if (A < zero || B < zero || C < zero || D < zero)
            throw InvalidParams("reduced coefficients must be nonnegative");
    }
};

// Odds-coordinate pair (s, t) = (x/(1-x), y/(1-y)) living in the closed first
// quadrant. Plain aggregate for the same reason as SquareState.
template <class S>
struct QuadrantState {
    S s{};
    S t{};
};

template <class S>
bool in_quadrant(const QuadrantState<S>& q) {
    const S zero(0);
    return q.s >= zero && q.t >= zero;
}

template <class S>
S maxnorm_dist(const QuadrantState<S>& u, const QuadrantState<S>& v) {
    S ds = abs_val(u.s - v.s);
    S dt = abs_val(u.t - v.t);
    return ds > dt ? ds : dt;
}

// One generation of the evolution operator W on the unit square:
//   x' = [a xy + b(x(1-y) + y(1-x))] / [a xy + b(x(1-y) + y(1-x)) + c(1-x)(1-y)]
// and the same shape with (alpha, beta, gamma) for y'. Both numerators and
// denominators are sums of nonnegative terms, so the image stays in the square;
// a vanishing denominator means the image is genuinely undefined (0/0).
template <class S>
SquareState<S> apply_W(const FitnessParams<S>& p, const SquareState<S>& z) {
    const S one(1), zero(0);
    const S xy = z.x * z.y;
    const S cross = z.x * (one - z.y) + z.y * (one - z.x);
    const S rest = (one - z.x) * (one - z.y);
    const S nx = p.a * xy + p.b * cross;
    const S dx = nx + p.c * rest;
    if (dx == zero) throw UndefinedImage('x');
    const S ny = p.alpha * xy + p.beta * cross;
    const S dy = ny + p.gamma * rest;
    if (dy == zero) throw UndefinedImage('y');
    return {nx / dx, ny / dy};
}

// x-coordinate of the image: the quantity deciding symmetric-case limits.
template <class S>
S mixing_value(const FitnessParams<S>& p, const SquareState<S>& z) {
    return apply_W(p, z).x;
}

// Restriction of W to the diagonal x = y of a symmetric model:
//   f(x) = (a x^2 + 2b x(1-x)) / (a x^2 + 2b x(1-x) + c (1-x)^2).
template <class S>
S apply_f(const FitnessParams<S>& p, const S& x) {
    if (!(p.symmetric() && p.a > S(0) && p.b > S(0)))
        throw NotSymmetric("diagonal map requires a = alpha > 0, b = beta > 0, c = gamma");
    const S one(1), two(2), zero(0);
    const S num = p.a * x * x + two * p.b * x * (one - x);
    const S den = num + p.c * (one - x) * (one - x);
    if (den == zero) throw UndefinedImage('x');
    return num / den;
}

// Reduced coefficients A = a/c, B = b/c, C = alpha/gamma, D = beta/gamma.
template <class S>
ReducedParams<S> to_reduced(const FitnessParams<S>& p) {
    if (p.c == S(0)) throw ZeroDenominator("c");
    if (p.gamma == S(0)) throw ZeroDenominator("gamma");
    return ReducedParams<S>(p.a / p.c, p.b / p.c, p.alpha / p.gamma, p.beta / p.gamma);
}

// Polynomial quadrant form of the model:
//   T(s, t) = (A s t + B (s + t), C s t + D (s + t)).
// Total on the quadrant. The overload with a divergence threshold throws once a
// coordinate passes it.
template <class S>
QuadrantState<S> apply_T(const ReducedParams<S>& r, const QuadrantState<S>& q) {
    const S st = q.s * q.t;
    const S sum = q.s + q.t;
    return {r.A * st + r.B * sum, r.C * st + r.D * sum};
}

template <class S>
QuadrantState<S> apply_T_checked(const ReducedParams<S>& r, const QuadrantState<S>& q, double big) {
    QuadrantState<S> out = apply_T(r, q);
    const S lim = scalar_from_double<S>(big);
    if (out.s > lim || out.t > lim)
        throw OverflowError("quadrant coordinate exceeded divergence threshold");
    return out;
}

// Odds transform (x, y) -> (x/(1-x), y/(1-y)); undefined on the far edges.
template <class S>
QuadrantState<S> square_to_quadrant(const SquareState<S>& z) {
    const S one(1);
    if (z.x == one || z.y == one)
        throw BoundaryState("odds transform undefined at x = 1 or y = 1");
    return {z.x / (one - z.x), z.y / (one - z.y)};
}

// Inverse odds transform (s, t) -> (s/(1+s), t/(1+t)); total on the quadrant.
template <class S>
SquareState<S> quadrant_to_square(const QuadrantState<S>& q) {
    const S one(1);
    if (one + q.s == S(0) || one + q.t == S(0))
        throw UndefinedImage(one + q.s == S(0) ? 'x' : 'y');
    return {q.s / (one + q.s), q.t / (one + q.t)};
}

} // namespace diopop

#endif

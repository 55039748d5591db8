#ifndef DIOPOP_DYNAMICS_HPP
#define DIOPOP_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "diopop/equilibria.hpp"
#include "diopop/model.hpp"
#include "diopop/tolerance.hpp"

namespace diopop {

// Exact rational orbits roughly double their operand bit length every step, so
// long runs are physically impossible; this budget turns them into a clean
// ResourceLimit error instead of an out-of-memory crash. Floats never grow.
inline constexpr std::size_t kDefaultBitLimit = std::size_t(1) << 21;

enum class VerdictKind { ConvergedTo, Cycling, MaxIterReached };

const char* to_string(VerdictKind v);

template <class S>
struct Trajectory {
    // states[0] is the initial point; states[k+1] = W(states[k])
    std::vector<SquareState<S>> states;
    VerdictKind verdict = VerdictKind::MaxIterReached;
    // target of a ConvergedTo verdict: a known fixed point when the orbit
    // entered its eps_conv ball, otherwise the last state before the final one
    std::optional<SquareState<S>> limit;
    std::size_t steps_used = 0;
};

namespace detail {

template <class S>
std::size_t state_bits(const SquareState<S>& z) {
    std::size_t bx = bit_size(z.x), by = bit_size(z.y);
    return bx > by ? bx : by;
}

} // namespace detail

// Orbit of W from z0 with a verdict:
//   ConvergedTo — the orbit entered the eps_conv ball of a known in-domain
//                 fixed point (verdict carries that point), or the step change
//                 dropped to eps_fixed (verdict carries the state producing it);
//   Cycling     — the new state returned within eps_conv of one of the last 8
//                 stored states other than its immediate predecessor;
//   MaxIterReached otherwise.
// UndefinedImage and ResourceLimit propagate annotated with the failing step.
template <class S>
Trajectory<S> iterate(const FitnessParams<S>& p, const SquareState<S>& z0,
                      std::size_t max_iter = 10000, const Tolerance& tol = Tolerance{},
                      std::size_t bit_limit = kDefaultBitLimit) {
    if (!in_square(z0)) throw InvalidParams("initial state outside the unit square");
    const S eps_conv = scalar_from_double<S>(tol.eps_conv);
    const S eps_fixed = scalar_from_double<S>(tol.eps_fixed);

    std::vector<SquareState<S>> snaps;
    for (const auto& fp : fixed_points_W(p))
        if (fp.applicable && fp.in_domain && fp.residual && *fp.residual <= eps_fixed)
            snaps.push_back(*fp.square);

    Trajectory<S> traj;
    traj.states.push_back(z0);
    for (std::size_t k = 0; k < max_iter; ++k) {
        const SquareState<S>& cur = traj.states.back();
        if constexpr (is_rational_v<S>) {
            const std::size_t bits = detail::state_bits(cur);
            if (bits > bit_limit) throw ResourceLimit(bits, bit_limit, k);
        }
        SquareState<S> next;
        try {
            next = apply_W(p, cur);
        } catch (const UndefinedImage& e) {
            throw UndefinedImage(e.coordinate, k);
        }
        const S change = maxnorm_dist(next, cur);
        traj.states.push_back(next);
        traj.steps_used = k + 1;

        bool snapped = false;
        for (const auto& z : snaps) {
            if (maxnorm_dist(traj.states.back(), z) <= eps_conv) {
                traj.verdict = VerdictKind::ConvergedTo;
                traj.limit = z;
                snapped = true;
                break;
            }
        }
        if (snapped) return traj;

        if (change <= eps_fixed) {
            // the previous state reproduces itself to within eps_fixed: accept
            // it as the limit even though no closed-form candidate matched
            traj.verdict = VerdictKind::ConvergedTo;
            traj.limit = traj.states[traj.states.size() - 2];
            return traj;
        }

        // revisiting a recent state (periods 2..8) counts as cycling
        const std::size_t m = traj.states.size();
        for (std::size_t back = 3; back <= 9 && back <= m; ++back) {
            if (maxnorm_dist(traj.states.back(), traj.states[m - back]) <= eps_conv) {
                traj.verdict = VerdictKind::Cycling;
                return traj;
            }
        }
    }
    traj.verdict = VerdictKind::MaxIterReached;
    return traj;
}

enum class SymmetricRegime {
    ShallowConvex, // c <= 2b: interior orbits climb to (1,1)
    Bistable,      // c > 2b: the diagonal saddle at x* separates the two corners
};

// Symmetric-admissible parameter set (a = alpha > 0, b = beta > 0, c = gamma)
// together with its regime and, when bistable, the diagonal threshold
// x* = (c - 2b) / (a - 2b + c).
template <class S>
struct SymmetricCase {
    FitnessParams<S> params;
    SymmetricRegime regime = SymmetricRegime::ShallowConvex;
    std::optional<S> x_star;

    explicit SymmetricCase(FitnessParams<S> p) : params(std::move(p)) {
        const S zero(0), two(2);
        if (!(params.symmetric() && params.a > zero && params.b > zero))
            throw NotSymmetric("symmetric case requires a = alpha > 0, b = beta > 0, c = gamma");
        if (params.c > two * params.b) {
            regime = SymmetricRegime::Bistable;
            x_star = (params.c - two * params.b) / (params.a - two * params.b + params.c);
        }
    }
};

template <class S>
struct SymmetricPrediction {
    SquareState<S> limit;
    // float backend only: the deciding value fell within eps_conv of the
    // threshold, so the saddle verdict cannot be certified
    bool low_confidence = false;
};

// Limit of the orbit of z0 under a symmetric model, decided by the single
// mixing value A = x-coordinate of W(z0) against the regime threshold.
template <class S>
SymmetricPrediction<S> predict_symmetric_limit(const SymmetricCase<S>& sc, const SquareState<S>& z0,
                                               const Tolerance& tol = Tolerance{}) {
    if (!in_square(z0)) throw InvalidParams("initial state outside the unit square");
    const S zero(0), one(1);
    const S A = mixing_value(sc.params, z0);
    SymmetricPrediction<S> out;
    if (sc.regime == SymmetricRegime::ShallowConvex) {
        out.limit = (A == zero) ? SquareState<S>{zero, zero} : SquareState<S>{one, one};
        return out;
    }
    const S& xs = *sc.x_star;
    if constexpr (is_rational_v<S>) {
        if (A < xs) out.limit = {zero, zero};
        else if (A > xs) out.limit = {one, one};
        else out.limit = {xs, xs};
    } else {
        if (std::fabs(A - xs) <= tol.eps_conv) {
            out.limit = {xs, xs};
            out.low_confidence = true;
        } else {
            out.limit = (A < xs) ? SquareState<S>{zero, zero} : SquareState<S>{one, one};
        }
    }
    return out;
}

// Witness that no orbit coordinate reaches 1 in finitely many steps when
// c > 0, gamma > 0, and the start has both coordinates below 1: records the
// exact gaps (1 - x_k, 1 - y_k) for k = 1..n. Exact backend only — the whole
// point is that the gaps are provably nonzero rationals.
struct LemmaQ2Report {
    bool holds = true;
    std::vector<std::pair<Rational, Rational>> gaps;
};

inline LemmaQ2Report check_lemma_q2(const FitnessParams<Rational>& p, const SquareState<Rational>& z0,
                                    std::size_t n, std::size_t bit_limit = kDefaultBitLimit) {
    const Rational zero(0), one(1);
    if (p.c == zero || p.gamma == zero)
        throw NotApplicable("gap witness requires c > 0 and gamma > 0");
    if (!in_square(z0)) throw InvalidParams("initial state outside the unit square");
    if (z0.x == one || z0.y == one)
        throw NotApplicable("gap witness requires x0 != 1 and y0 != 1");

    LemmaQ2Report rep;
    rep.gaps.reserve(n);
    SquareState<Rational> z = z0;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t bits = detail::state_bits(z);
        if (bits > bit_limit) throw ResourceLimit(bits, bit_limit, k);
        z = apply_W(p, z);
        rep.gaps.emplace_back(one - z.x, one - z.y);
        if (rep.gaps.back().first == zero || rep.gaps.back().second == zero) {
            rep.holds = false;
            break;
        }
    }
    return rep;
}

inline LemmaQ2Report check_lemma_q2(const FitnessParams<double>&, const SquareState<double>&,
                                    std::size_t, std::size_t = kDefaultBitLimit) {
    throw BackendMismatch("gap witness needs the exact rational backend");
}

} // namespace diopop

#endif

#ifndef DIOPOP_GEOMETRY_HPP
#define DIOPOP_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "diopop/dynamics.hpp"
#include "diopop/equilibria.hpp"

namespace diopop {

enum class BasinLabel : unsigned char { ToZ0, ToZ2, ToZ3, ToOther, Unresolved };

struct BasinCell {
    BasinLabel label = BasinLabel::Unresolved;
    // z-candidate index (1 or 4) for ToOther cells, -1 otherwise
    int other = -1;
};

// Node-based raster over the unit square: grid point (i, j) sits at
// x = j/(n-1), y = (n-1-i)/(n-1), so row 0 is the top edge y = 1 and the
// four corners are sampled exactly.
template <class S>
struct BasinRaster {
    std::size_t n = 0;
    FitnessParams<S> params;
    Tolerance tol;
    std::vector<BasinCell> cells; // row-major, n*n entries

    const BasinCell& at(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
};

namespace detail {

// In-domain candidates with verified residuals: the landing targets a basin
// scan can label.
template <class S>
struct BasinTarget {
    BasinLabel label;
    int other;
    SquareState<S> z;
};

template <class S>
std::vector<BasinTarget<S>> basin_targets(const FitnessParams<S>& p, const Tolerance& tol) {
    const S eps_fixed = scalar_from_double<S>(tol.eps_fixed);
    std::vector<BasinTarget<S>> out;
    for (const auto& fp : fixed_points_W(p)) {
        if (!(fp.applicable && fp.in_domain && fp.residual && *fp.residual <= eps_fixed)) continue;
        switch (fp.label) {
        case FixedPointLabel::Z0: out.push_back({BasinLabel::ToZ0, -1, *fp.square}); break;
        case FixedPointLabel::Z2: out.push_back({BasinLabel::ToZ2, -1, *fp.square}); break;
        case FixedPointLabel::Z3: out.push_back({BasinLabel::ToZ3, -1, *fp.square}); break;
        case FixedPointLabel::Z1: out.push_back({BasinLabel::ToOther, 1, *fp.square}); break;
        case FixedPointLabel::Z4: out.push_back({BasinLabel::ToOther, 4, *fp.square}); break;
        default: break;
        }
    }
    return out;
}

template <class S>
BasinCell label_orbit(const FitnessParams<S>& p, const SquareState<S>& z,
                      const std::vector<BasinTarget<S>>& targets, std::size_t max_iter,
                      const Tolerance& tol, std::size_t bit_limit) {
    const S eps_conv = scalar_from_double<S>(tol.eps_conv);
    try {
        Trajectory<S> traj = iterate(p, z, max_iter, tol, bit_limit);
        if (traj.verdict == VerdictKind::ConvergedTo) {
            for (const auto& t : targets)
                if (maxnorm_dist(*traj.limit, t.z) <= eps_conv) return {t.label, t.other};
        }
    } catch (const UndefinedImage&) {
    } catch (const ResourceLimit&) {
    }
    return {BasinLabel::Unresolved, -1};
}

} // namespace detail

// Labels every grid node by the landing target of its orbit. Rows are
// partitioned across threads; the result is identical for any thread count.
template <class S>
BasinRaster<S> scan_basins(const FitnessParams<S>& p, std::size_t n,
                           const Tolerance& tol = Tolerance{}, std::size_t max_iter = 10000,
                           unsigned threads = std::thread::hardware_concurrency(),
                           std::size_t bit_limit = kDefaultBitLimit) {
    if (n < 2 || n > 4096) throw InvalidParams("grid size must lie in [2, 4096]");
    const auto targets = detail::basin_targets(p, tol);

    BasinRaster<S> raster{n, p, tol, std::vector<BasinCell>(n * n)};
    const S denom = scalar_from_int<S>(static_cast<long>(n - 1));

    auto scan_rows = [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            const S y = scalar_from_int<S>(static_cast<long>(n - 1 - i)) / denom;
            for (std::size_t j = 0; j < n; ++j) {
                const S x = scalar_from_int<S>(static_cast<long>(j)) / denom;
                raster.cells[i * n + j] =
                    detail::label_orbit(p, SquareState<S>{x, y}, targets, max_iter, tol, bit_limit);
            }
        }
    };

    unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (nthreads == 1) {
        scan_rows(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            const std::size_t i0 = t * chunk;
            const std::size_t i1 = std::min(n, i0 + chunk);
            if (i0 >= i1) break;
            pool.emplace_back(scan_rows, i0, i1);
        }
        for (auto& th : pool) th.join();
    }
    return raster;
}

enum class CurveKind { Unstable, StableBoundary };

// Polyline approximation of an invariant set, in square coordinates.
template <class S>
struct ManifoldCurve {
    CurveKind kind = CurveKind::Unstable;
    FixedPointReport<S> anchor;
    std::vector<SquareState<S>> points;
    std::vector<double> arc; // cumulative Euclidean chord length per point

    // unstable curves: points = reversed negative branch, anchor, positive branch
    std::size_t anchor_index = 0;
    bool neg_diverged = false, pos_diverged = false;   // branch hit Tolerance::big
    bool neg_truncated = false, pos_truncated = false; // branch hit the bit budget
    std::optional<std::size_t> escape_neg, escape_pos; // first point index outside the escape ball

    // stable boundaries
    std::size_t rays_requested = 0;
    std::vector<std::size_t> skipped_rays;
};

// Radius of the ball around the anchor used to measure how fast unstable
// branches leave its neighbourhood.
inline constexpr double kEscapeRadius = 0.05;

namespace detail {

template <class S>
void fill_arc(ManifoldCurve<S>& curve) {
    curve.arc.assign(curve.points.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const double dx = to_double(curve.points[i].x) - to_double(curve.points[i - 1].x);
        const double dy = to_double(curve.points[i].y) - to_double(curve.points[i - 1].y);
        acc += std::sqrt(dx * dx + dy * dy);
        curve.arc[i] = acc;
    }
}

} // namespace detail

// Unstable-manifold polyline of a saddle or repeller of the quadrant form:
// seeds at offset h along the dominant eigendirection on both sides of the
// anchor, pushed forward by T and mapped back to the square. A branch ends
// early when a coordinate passes tol.big (divergence) or, on the exact
// backend, when the bit budget runs out.
template <class S>
ManifoldCurve<S> unstable_curve(const FitnessParams<S>& p, const FixedPointReport<S>& anchor,
                                std::size_t steps = 30, double offset = 1e-6,
                                const Tolerance& tol = Tolerance{},
                                std::size_t bit_limit = kDefaultBitLimit) {
    if (!anchor.stability ||
        (*anchor.stability != Stability::Saddle && *anchor.stability != Stability::Repeller))
        throw NotApplicable("unstable curve needs a saddle or repeller anchor");
    if (!anchor.quadrant || !anchor.eigen)
        throw NotApplicable("anchor carries no classified quadrant location");
    if (!(offset > 0)) throw InvalidParams("offset must be positive");

    const ReducedParams<S> r = to_reduced(p);
    const Mat2<S> j = jacobian_T(r, *anchor.quadrant);
    const double j00 = to_double(j.m00), j01 = to_double(j.m01);
    const double j10 = to_double(j.m10), j11 = to_double(j.m11);

    const double m1 = std::abs(anchor.eigen->lambda1);
    const double m2 = std::abs(anchor.eigen->lambda2);
    const std::complex<double> lam = (m1 >= m2) ? anchor.eigen->lambda1 : anchor.eigen->lambda2;
    if (lam.imag() != 0.0) throw NotApplicable("dominant eigenvalue is complex");
    const double l = lam.real();

    // eigenvector of the dominant eigenvalue, from whichever row of J - l*I is
    // numerically alive; oriented leading-component-positive
    double vx = j01, vy = l - j00;
    if (std::fabs(vx) + std::fabs(vy) < 1e-300) {
        vx = l - j11;
        vy = j10;
    }
    const double norm = std::sqrt(vx * vx + vy * vy);
    if (norm == 0.0) throw NotApplicable("dominant eigendirection degenerates");
    vx /= norm;
    vy /= norm;
    if (vx < 0.0 || (vx == 0.0 && vy < 0.0)) {
        vx = -vx;
        vy = -vy;
    }

    ManifoldCurve<S> curve;
    curve.kind = CurveKind::Unstable;
    curve.anchor = anchor;

    const QuadrantState<S>& q0 = *anchor.quadrant;
    const S lim = scalar_from_double<S>(tol.big);
    const S escape = scalar_from_double<S>(kEscapeRadius);

    auto run_branch = [&](double sign, bool& diverged, bool& truncated,
                          std::optional<std::size_t>& escape_at) {
        std::vector<QuadrantState<S>> pts;
        QuadrantState<S> q{q0.s + scalar_from_double<S>(sign * offset * vx),
                           q0.t + scalar_from_double<S>(sign * offset * vy)};
        if (q.s < S(0) || q.t < S(0)) return pts; // seed leaves the quadrant: branch absent
        for (std::size_t k = 0; k < steps; ++k) {
            pts.push_back(q);
            if (!escape_at && maxnorm_dist(q, q0) > escape) escape_at = pts.size() - 1;
            if constexpr (is_rational_v<S>) {
                const std::size_t bs = std::max(bit_size(q.s), bit_size(q.t));
                if (bs > bit_limit) {
                    truncated = true;
                    break;
                }
            }
            QuadrantState<S> next = apply_T(r, q);
            if (next.s > lim || next.t > lim) {
                diverged = true;
                break;
            }
            q = next;
        }
        return pts;
    };

    auto neg = run_branch(-1.0, curve.neg_diverged, curve.neg_truncated, curve.escape_neg);
    auto pos = run_branch(+1.0, curve.pos_diverged, curve.pos_truncated, curve.escape_pos);

    curve.points.reserve(neg.size() + pos.size() + 1);
    for (auto it = neg.rbegin(); it != neg.rend(); ++it)
        curve.points.push_back(quadrant_to_square(*it));
    curve.anchor_index = curve.points.size();
    curve.points.push_back(quadrant_to_square(q0));
    for (const auto& q : pos) curve.points.push_back(quadrant_to_square(q));

    detail::fill_arc(curve);
    return curve;
}

namespace detail {

// Orbit outcome collapsed to an id usable for bisection bracketing.
enum class SideId : int { Anchor = -2, Unmatched = -3, NonConvergent = -4, Failed = -5 };

template <class S>
int side_verdict(const FitnessParams<S>& p, const SquareState<S>& z, const SquareState<S>& anchor,
                 const std::vector<BasinTarget<S>>& targets, std::size_t max_iter,
                 const Tolerance& tol, std::size_t bit_limit) {
    const S eps_conv = scalar_from_double<S>(tol.eps_conv);
    try {
        Trajectory<S> traj = iterate(p, z, max_iter, tol, bit_limit);
        if (traj.verdict != VerdictKind::ConvergedTo) return static_cast<int>(SideId::NonConvergent);
        if (maxnorm_dist(*traj.limit, anchor) <= eps_conv) return static_cast<int>(SideId::Anchor);
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (maxnorm_dist(*traj.limit, targets[i].z) <= eps_conv) return static_cast<int>(i);
        return static_cast<int>(SideId::Unmatched);
    } catch (const UndefinedImage&) {
        return static_cast<int>(SideId::Failed);
    } catch (const ResourceLimit&) {
        return static_cast<int>(SideId::Failed);
    }
}

} // namespace detail

// Stable-set boundary of a saddle of the square system, located by bisection
// along radial rays from the anchor: each ray whose near and far endpoints
// land in different basins is narrowed until the bracket is eps_conv wide.
// Rays without such a bracket are recorded in skipped_rays. Points come out
// ordered by ray angle.
template <class S>
ManifoldCurve<S> stable_boundary(const FitnessParams<S>& p, const FixedPointReport<S>& anchor,
                                 std::size_t rays = 64, const Tolerance& tol = Tolerance{},
                                 std::size_t max_iter = 10000,
                                 std::size_t bit_limit = kDefaultBitLimit) {
    if (!anchor.stability || *anchor.stability != Stability::Saddle)
        throw NotApplicable("stable boundary needs a saddle anchor");
    if (!anchor.square) throw NotApplicable("anchor carries no square location");
    if (rays == 0) throw InvalidParams("ray count must be positive");

    const auto targets = detail::basin_targets(p, tol);
    const SquareState<S>& zs = *anchor.square;
    const double ax = to_double(zs.x), ay = to_double(zs.y);
    const double rho_min = std::max(1e-6, 10.0 * tol.eps_conv);

    ManifoldCurve<S> curve;
    curve.kind = CurveKind::StableBoundary;
    curve.anchor = anchor;
    curve.rays_requested = rays;

    auto probe = [&](double rho, double dx, double dy) {
        const double px = std::clamp(ax + rho * dx, 0.0, 1.0);
        const double py = std::clamp(ay + rho * dy, 0.0, 1.0);
        return SquareState<S>{scalar_from_double<S>(px), scalar_from_double<S>(py)};
    };
    auto verdict = [&](const SquareState<S>& z) {
        return detail::side_verdict(p, z, zs, targets, max_iter, tol, bit_limit);
    };

    for (std::size_t k = 0; k < rays; ++k) {
        const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(rays);
        const double dx = std::cos(theta), dy = std::sin(theta);

        // largest step staying inside the square
        double rho_max = 1e300;
        if (dx > 0) rho_max = std::min(rho_max, (1.0 - ax) / dx);
        if (dx < 0) rho_max = std::min(rho_max, ax / -dx);
        if (dy > 0) rho_max = std::min(rho_max, (1.0 - ay) / dy);
        if (dy < 0) rho_max = std::min(rho_max, ay / -dy);

        if (!(rho_max > rho_min)) {
            curve.skipped_rays.push_back(k);
            continue;
        }

        const int v_near = verdict(probe(rho_min, dx, dy));
        const int v_far = verdict(probe(rho_max, dx, dy));

        std::optional<SquareState<S>> found;
        if (v_near == static_cast<int>(detail::SideId::Anchor)) {
            found = probe(rho_min, dx, dy); // already on the stable set
        } else if (v_near < 0 || v_far < 0 || v_near == v_far) {
            // no pair of competing basins on this ray
        } else {
            double lo = rho_min, hi = rho_max;
            while (hi - lo > tol.eps_conv) {
                const double mid = lo + (hi - lo) / 2.0;
                const int vm = verdict(probe(mid, dx, dy));
                if (vm == v_near) {
                    lo = mid;
                } else if (vm == v_far) {
                    hi = mid;
                } else if (vm == static_cast<int>(detail::SideId::Anchor)) {
                    found = probe(mid, dx, dy); // the probe itself converges to the saddle
                    break;
                } else {
                    break; // a third verdict intruded: give the ray up
                }
            }
            if (!found && hi - lo <= tol.eps_conv) found = probe(lo + (hi - lo) / 2.0, dx, dy);
        }

        if (found)
            curve.points.push_back(*found);
        else
            curve.skipped_rays.push_back(k);
    }

    detail::fill_arc(curve);
    return curve;
}

} // namespace diopop

#endif

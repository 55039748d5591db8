#ifndef DIOPOP_REPORT_HPP
#define DIOPOP_REPORT_HPP

#include <ostream>
#include <string>

#include "diopop/geometry.hpp"
#include "diopop/pgm.hpp"

// Deterministic text writers for every artifact the toolkit produces. All
// float values go through format_scalar (%.17g), rationals print as p/q, and
// every layout detail here is part of the output contract: same input, same
// bytes.

namespace diopop {

const char* to_string(BasinLabel l);

inline unsigned char basin_gray(const BasinCell& c) {
    switch (c.label) {
    case BasinLabel::ToZ0: return 0;
    case BasinLabel::Unresolved: return 64;
    case BasinLabel::ToZ2: return 128;
    case BasinLabel::ToOther: return 192;
    case BasinLabel::ToZ3: return 255;
    }
    return 64;
}

namespace detail {

inline std::string fmt_bool(bool b) { return b ? "true" : "false"; }

template <class S>
std::string fmt_opt(const std::optional<S>& v) {
    return v ? format_scalar(*v) : std::string();
}

} // namespace detail

// Fixed-point candidate table: one row per square-system candidate z0..z4,
// then the quadrant pair O, P when the reduced form exists (c and gamma both
// nonzero); otherwise the quadrant rows are replaced by an explanatory
// comment. z0 and z2 inherit eigenvalues/stability from their quadrant
// counterparts.
template <class S>
void write_fixed_point_table(std::ostream& os, const FitnessParams<S>& p,
                             const Tolerance& tol = Tolerance{}) {
    const FixedPointSurvey<S> survey = survey_fixed_points(p, tol);

    os << "label,system,x,y,applicable,in_domain,residual,"
          "lambda1_re,lambda1_im,lambda2_re,lambda2_im,stability\n";
    auto row = [&os](const FixedPointReport<S>& fp, const char* system, const S* u, const S* v) {
        os << to_string(fp.label) << ',' << system << ','
           << (u ? format_scalar(*u) : std::string()) << ','
           << (v ? format_scalar(*v) : std::string()) << ','
           << detail::fmt_bool(fp.applicable) << ',' << detail::fmt_bool(fp.in_domain) << ','
           << detail::fmt_opt(fp.residual) << ',';
        if (fp.eigen) {
            os << format_scalar(fp.eigen->lambda1.real()) << ','
               << format_scalar(fp.eigen->lambda1.imag()) << ','
               << format_scalar(fp.eigen->lambda2.real()) << ','
               << format_scalar(fp.eigen->lambda2.imag()) << ',';
        } else {
            os << ",,,,";
        }
        os << (fp.stability ? to_string(*fp.stability) : "") << '\n';
    };
    for (const auto& fp : survey.square)
        row(fp, "square", fp.square ? &fp.square->x : nullptr, fp.square ? &fp.square->y : nullptr);
    if (survey.have_reduced) {
        for (const auto& fp : survey.quadrant)
            row(fp, "quadrant", fp.quadrant ? &fp.quadrant->s : nullptr,
                fp.quadrant ? &fp.quadrant->t : nullptr);
    } else {
        os << "# quadrant system omitted: "
           << (p.c == S(0) && p.gamma == S(0) ? "c = 0 and gamma = 0"
               : p.c == S(0)                  ? "c = 0"
                                              : "gamma = 0")
           << "\n";
    }
}

// State rows of a trajectory: step index plus coordinates.
template <class S>
void write_states_csv(std::ostream& os, const std::vector<SquareState<S>>& states) {
    os << "n,x,y\n";
    for (std::size_t k = 0; k < states.size(); ++k)
        os << k << ',' << format_scalar(states[k].x) << ',' << format_scalar(states[k].y) << '\n';
}

template <class S>
std::string verdict_comment(const Trajectory<S>& traj) {
    switch (traj.verdict) {
    case VerdictKind::ConvergedTo:
        return "# verdict: ConvergedTo(" + format_scalar(traj.limit->x) + "," +
               format_scalar(traj.limit->y) + ")";
    case VerdictKind::Cycling: return "# verdict: Cycling";
    case VerdictKind::MaxIterReached: return "# verdict: MaxIterReached";
    }
    return "# verdict: MaxIterReached";
}

template <class S>
void write_trajectory_csv(std::ostream& os, const Trajectory<S>& traj) {
    write_states_csv(os, traj.states);
    os << verdict_comment(traj) << '\n';
}

template <class S>
void write_basin_pgm(std::ostream& os, const BasinRaster<S>& raster) {
    std::vector<unsigned char> gray(raster.cells.size());
    for (std::size_t i = 0; i < raster.cells.size(); ++i) gray[i] = basin_gray(raster.cells[i]);
    write_pgm(os, raster.n, raster.n, gray);
}

// Legend: gray level -> label -> landing-point coordinates. The three named
// basins always get a row (coordinates empty when the point is not an
// in-domain fixed point for these parameters); ToOther rows appear per
// existing edge target.
template <class S>
void write_basin_legend(std::ostream& os, const BasinRaster<S>& raster) {
    const auto targets = detail::basin_targets(raster.params, raster.tol);
    auto find = [&](BasinLabel l, int other) -> const detail::BasinTarget<S>* {
        for (const auto& t : targets)
            if (t.label == l && t.other == other) return &t;
        return nullptr;
    };
    auto coords = [](const detail::BasinTarget<S>* t) {
        return t ? format_scalar(t->z.x) + "," + format_scalar(t->z.y) : std::string(",");
    };

    os << "gray,label,x,y\n";
    os << "0,ToZ0," << coords(find(BasinLabel::ToZ0, -1)) << '\n';
    os << "64,Unresolved,,\n";
    os << "128,ToZ2," << coords(find(BasinLabel::ToZ2, -1)) << '\n';
    if (const auto* t = find(BasinLabel::ToOther, 1)) os << "192,ToOther(z1)," << coords(t) << '\n';
    if (const auto* t = find(BasinLabel::ToOther, 4)) os << "192,ToOther(z4)," << coords(t) << '\n';
    os << "255,ToZ3," << coords(find(BasinLabel::ToZ3, -1)) << '\n';
}

// Curve polyline with per-point cumulative arc length; branch structure and
// skipped rays are recorded in comment lines between the header and the data.
template <class S>
void write_curve_csv(std::ostream& os, const ManifoldCurve<S>& curve) {
    os << "k,x,y,arc\n";
    if (curve.kind == CurveKind::Unstable) {
        os << "# kind: unstable\n";
        os << "# anchor: " << to_string(curve.anchor.label) << "; index " << curve.anchor_index
           << '\n';
        const std::size_t neg_pts = curve.anchor_index;
        const std::size_t pos_pts = curve.points.size() - curve.anchor_index - 1;
        auto branch = [&os](const char* name, std::size_t count, bool diverged, bool truncated,
                            const std::optional<std::size_t>& esc) {
            os << "# " << name << ": points=" << count << " diverged=" << detail::fmt_bool(diverged)
               << " truncated=" << detail::fmt_bool(truncated) << " escape=";
            if (esc)
                os << *esc;
            else
                os << "none";
            os << '\n';
        };
        branch("negative", neg_pts, curve.neg_diverged, curve.neg_truncated, curve.escape_neg);
        branch("positive", pos_pts, curve.pos_diverged, curve.pos_truncated, curve.escape_pos);
    } else {
        os << "# kind: stable-boundary\n";
        os << "# anchor: " << to_string(curve.anchor.label) << '\n';
        os << "# rays: " << curve.rays_requested << "; skipped: ";
        if (curve.skipped_rays.empty()) {
            os << "none";
        } else {
            for (std::size_t i = 0; i < curve.skipped_rays.size(); ++i)
                os << (i ? "," : "") << curve.skipped_rays[i];
        }
        os << '\n';
    }
    for (std::size_t k = 0; k < curve.points.size(); ++k)
        os << k << ',' << format_scalar(curve.points[k].x) << ',' << format_scalar(curve.points[k].y)
           << ',' << format_scalar(curve.arc[k]) << '\n';
}

} // namespace diopop

#endif

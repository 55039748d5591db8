// Python bindings for the float64 side of the toolkit, plus string-based entry
// points into the exact rational backend.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diopop/config.hpp"
#include "diopop/report.hpp"

namespace py = pybind11;
using namespace diopop;

namespace {

using Params = std::array<double, 6>;
using Point = std::pair<double, double>;

FitnessParams<double> make_params(const Params& p) {
    return {p[0], p[1], p[2], p[3], p[4], p[5]};
}

FitnessParams<Rational> make_params_exact(const std::array<std::string, 6>& p) {
    return {parse_rational(p[0]), parse_rational(p[1]), parse_rational(p[2]),
            parse_rational(p[3]), parse_rational(p[4]), parse_rational(p[5])};
}

SquareState<double> make_state(const Point& z) { return {z.first, z.second}; }

Tolerance make_tol(double eps_fixed, double eps_conv, double big) {
    return {eps_fixed, eps_conv, big};
}

FixedPointLabel parse_label(const std::string& name) {
    if (name == "z0") return FixedPointLabel::Z0;
    if (name == "z1") return FixedPointLabel::Z1;
    if (name == "z2") return FixedPointLabel::Z2;
    if (name == "z3") return FixedPointLabel::Z3;
    if (name == "z4") return FixedPointLabel::Z4;
    if (name == "O") return FixedPointLabel::O;
    if (name == "P") return FixedPointLabel::P;
    throw InvalidParams("unknown fixed-point label: " + name);
}

py::dict report_dict(const FixedPointReport<double>& fp, const char* system) {
    py::dict d;
    d["label"] = to_string(fp.label);
    d["system"] = system;
    d["applicable"] = fp.applicable;
    d["in_domain"] = fp.in_domain;
    if (fp.square) {
        d["x"] = fp.square->x;
        d["y"] = fp.square->y;
    }
    if (fp.quadrant) {
        d["s"] = fp.quadrant->s;
        d["t"] = fp.quadrant->t;
    }
    d["residual"] = fp.residual ? py::object(py::float_(*fp.residual)) : py::none();
    if (fp.eigen)
        d["eigen"] = py::make_tuple(fp.eigen->lambda1, fp.eigen->lambda2);
    else
        d["eigen"] = py::none();
    d["stability"] = fp.stability ? py::object(py::str(to_string(*fp.stability))) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evolution-operator toolkit for a dioecious population model";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ZeroDenominator>(m, "ZeroDenominatorError", PyExc_ZeroDivisionError);
    py::register_exception<UndefinedImage>(m, "UndefinedImageError", PyExc_ArithmeticError);
    py::register_exception<InvalidParams>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<NotApplicable>(m, "NotApplicableError", PyExc_ValueError);
    py::register_exception<NotSymmetric>(m, "NotSymmetricError", PyExc_ValueError);
    py::register_exception<BackendMismatch>(m, "BackendMismatchError", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimitError", PyExc_RuntimeError);

    m.def(
        "apply_W",
        [](const Params& p, const Point& z) {
            auto w = apply_W(make_params(p), make_state(z));
            return Point{w.x, w.y};
        },
        py::arg("params"), py::arg("z"),
        "One generation of the evolution operator on the unit square.");

    m.def(
        "apply_f",
        [](const Params& p, double x) { return apply_f(make_params(p), x); }, py::arg("params"),
        py::arg("x"), "Diagonal restriction of the symmetric model.");

    m.def(
        "to_reduced",
        [](const Params& p) {
            auto r = to_reduced(make_params(p));
            return std::array<double, 4>{r.A, r.B, r.C, r.D};
        },
        py::arg("params"), "Reduced coefficients (a/c, b/c, alpha/gamma, beta/gamma).");

    m.def(
        "apply_T",
        [](const std::array<double, 4>& r, const Point& q) {
            auto out = apply_T(ReducedParams<double>{r[0], r[1], r[2], r[3]},
                               QuadrantState<double>{q.first, q.second});
            return Point{out.s, out.t};
        },
        py::arg("reduced"), py::arg("q"), "Polynomial quadrant form of the model.");

    m.def(
        "square_to_quadrant",
        [](const Point& z) {
            auto q = square_to_quadrant(make_state(z));
            return Point{q.s, q.t};
        },
        py::arg("z"), "Odds transform (x, y) -> (x/(1-x), y/(1-y)).");

    m.def(
        "quadrant_to_square",
        [](const Point& q) {
            auto z = quadrant_to_square(QuadrantState<double>{q.first, q.second});
            return Point{z.x, z.y};
        },
        py::arg("q"), "Inverse odds transform.");

    m.def(
        "quadratic_roots",
        [](double trace, double det) {
            auto e = quadratic_roots(trace, det);
            return std::pair<std::complex<double>, std::complex<double>>{e.lambda1, e.lambda2};
        },
        py::arg("trace"), py::arg("det"),
        "Eigenvalues of a 2x2 matrix from its trace and determinant.");

    m.def(
        "fixed_points",
        [](const Params& p, double eps_fixed, double eps_conv, double big) {
            const auto survey =
                survey_fixed_points(make_params(p), make_tol(eps_fixed, eps_conv, big));
            py::list out;
            for (const auto& fp : survey.square) out.append(report_dict(fp, "square"));
            for (const auto& fp : survey.quadrant) out.append(report_dict(fp, "quadrant"));
            return out;
        },
        py::arg("params"), py::arg("eps_fixed") = 1e-12, py::arg("eps_conv") = 1e-10,
        py::arg("big") = 1e12,
        "All fixed-point candidates (z0..z4, then O and P when c*gamma != 0).");

    m.def(
        "classify_square",
        [](const Params& p, const std::string& label, double eps_fixed, double eps_conv,
           double big) {
            auto rep = classify_square(make_params(p), parse_label(label),
                                       make_tol(eps_fixed, eps_conv, big));
            return report_dict(rep, "square");
        },
        py::arg("params"), py::arg("label"), py::arg("eps_fixed") = 1e-12,
        py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Classify z0 or z2 through its quadrant conjugate.");

    m.def(
        "iterate",
        [](const Params& p, const Point& z, std::size_t max_iter, double eps_fixed,
           double eps_conv, double big) {
            auto traj =
                iterate(make_params(p), make_state(z), max_iter, make_tol(eps_fixed, eps_conv, big));
            py::dict d;
            py::list states;
            for (const auto& s : traj.states) states.append(py::make_tuple(s.x, s.y));
            d["states"] = states;
            d["verdict"] = to_string(traj.verdict);
            d["limit"] = traj.limit ? py::object(py::make_tuple(traj.limit->x, traj.limit->y))
                                    : py::none();
            d["steps_used"] = traj.steps_used;
            return d;
        },
        py::arg("params"), py::arg("z"), py::arg("max_iter") = 10000,
        py::arg("eps_fixed") = 1e-12, py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Orbit of the evolution operator with a convergence verdict.");

    m.def(
        "predict_symmetric_limit",
        [](const Params& p, const Point& z, double eps_fixed, double eps_conv, double big) {
            SymmetricCase<double> sc(make_params(p));
            auto pred =
                predict_symmetric_limit(sc, make_state(z), make_tol(eps_fixed, eps_conv, big));
            py::dict d;
            d["limit"] = py::make_tuple(pred.limit.x, pred.limit.y);
            d["low_confidence"] = pred.low_confidence;
            d["regime"] =
                sc.regime == SymmetricRegime::Bistable ? "bistable" : "shallow-convex";
            d["x_star"] = sc.x_star ? py::object(py::float_(*sc.x_star)) : py::none();
            return d;
        },
        py::arg("params"), py::arg("z"), py::arg("eps_fixed") = 1e-12,
        py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Limit of a symmetric-model orbit decided by one application of the operator.");

    m.def(
        "scan_basins",
        [](const Params& p, std::size_t n, std::size_t max_iter, double eps_fixed,
           double eps_conv, double big) {
            auto raster = scan_basins(make_params(p), n, make_tol(eps_fixed, eps_conv, big),
                                      max_iter);
            py::dict d;
            d["n"] = raster.n;
            py::list rows;
            std::string gray;
            gray.reserve(raster.cells.size());
            for (std::size_t i = 0; i < raster.n; ++i) {
                py::list row;
                for (std::size_t j = 0; j < raster.n; ++j) {
                    const BasinCell& c = raster.at(i, j);
                    row.append(to_string(c.label));
                    gray.push_back(static_cast<char>(basin_gray(c)));
                }
                rows.append(row);
            }
            d["labels"] = rows;
            d["gray"] = py::bytes(gray);
            return d;
        },
        py::arg("params"), py::arg("n"), py::arg("max_iter") = 10000,
        py::arg("eps_fixed") = 1e-12, py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Label every node of an n-by-n grid by the landing target of its orbit.");

    auto curve_dict = [](const ManifoldCurve<double>& curve) {
        py::dict d;
        py::list pts;
        for (const auto& z : curve.points) pts.append(py::make_tuple(z.x, z.y));
        d["points"] = pts;
        d["arc"] = curve.arc;
        if (curve.kind == CurveKind::Unstable) {
            d["kind"] = "unstable";
            d["anchor_index"] = curve.anchor_index;
            d["neg_diverged"] = curve.neg_diverged;
            d["pos_diverged"] = curve.pos_diverged;
            d["escape_neg"] = curve.escape_neg ? py::object(py::int_(*curve.escape_neg)) : py::none();
            d["escape_pos"] = curve.escape_pos ? py::object(py::int_(*curve.escape_pos)) : py::none();
        } else {
            d["kind"] = "stable-boundary";
            d["rays"] = curve.rays_requested;
            d["skipped_rays"] = curve.skipped_rays;
        }
        return d;
    };

    m.def(
        "unstable_curve",
        [curve_dict](const Params& p, const std::string& anchor, std::size_t steps, double offset,
                     double eps_fixed, double eps_conv, double big) {
            const Tolerance tol = make_tol(eps_fixed, eps_conv, big);
            auto params = make_params(p);
            auto rep = classify_square(params, parse_label(anchor), tol);
            return curve_dict(unstable_curve(params, rep, steps, offset, tol));
        },
        py::arg("params"), py::arg("anchor"), py::arg("steps") = 30, py::arg("offset") = 1e-6,
        py::arg("eps_fixed") = 1e-12, py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Unstable-manifold polyline seeded at z0 or z2.");

    m.def(
        "stable_boundary",
        [curve_dict](const Params& p, const std::string& anchor, std::size_t rays,
                     std::size_t max_iter, double eps_fixed, double eps_conv, double big) {
            const Tolerance tol = make_tol(eps_fixed, eps_conv, big);
            auto params = make_params(p);
            auto rep = classify_square(params, parse_label(anchor), tol);
            return curve_dict(stable_boundary(params, rep, rays, tol, max_iter));
        },
        py::arg("params"), py::arg("anchor"), py::arg("rays") = 64, py::arg("max_iter") = 10000,
        py::arg("eps_fixed") = 1e-12, py::arg("eps_conv") = 1e-10, py::arg("big") = 1e12,
        "Basin-boundary polyline through a saddle, located by radial bisection.");

    m.def(
        "apply_W_exact",
        [](const std::array<std::string, 6>& p, const std::pair<std::string, std::string>& z) {
            auto w = apply_W(make_params_exact(p),
                             SquareState<Rational>{parse_rational(z.first), parse_rational(z.second)});
            return std::pair<std::string, std::string>{format_scalar(w.x), format_scalar(w.y)};
        },
        py::arg("params"), py::arg("z"),
        "Exact-rational evolution step; scalars as 'p/q' or decimal strings.");

    m.def(
        "check_lemma_q2",
        [](const std::array<std::string, 6>& p, const std::pair<std::string, std::string>& z,
           std::size_t n, std::size_t bit_limit) {
            auto rep = check_lemma_q2(
                make_params_exact(p),
                SquareState<Rational>{parse_rational(z.first), parse_rational(z.second)}, n,
                bit_limit);
            py::dict d;
            d["holds"] = rep.holds;
            py::list gaps;
            for (const auto& g : rep.gaps)
                gaps.append(py::make_tuple(format_scalar(g.first), format_scalar(g.second)));
            d["gaps"] = gaps;
            return d;
        },
        py::arg("params"), py::arg("z"), py::arg("n"), py::arg("bit_limit") = kDefaultBitLimit,
        "Exact witness that orbit coordinates stay below 1 for n steps.");
}

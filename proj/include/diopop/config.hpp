#ifndef DIOPOP_CONFIG_HPP
#define DIOPOP_CONFIG_HPP

#include <array>
#include <cstddef>
#include <string>
#include <variant>

#include "diopop/equilibria.hpp"
#include "diopop/geometry.hpp"
#include "diopop/model.hpp"
#include "diopop/scalar.hpp"
#include "diopop/tolerance.hpp"

namespace diopop {

enum class Backend { Float64, Rational };

// A numeric literal as it appeared in the config, with enough type information
// to round-trip exactly: the rational backend accepts integers and strings
// ("3/10", "0.3") but rejects float literals, whose decimal intent is lost.
struct ScalarText {
    enum class Kind { Int, Float, Str } kind = Kind::Int;
    std::string text = "0";
};

template <class S>
S typed_scalar(const ScalarText& v) {
    if constexpr (is_rational_v<S>) {
        if (v.kind == ScalarText::Kind::Float)
            throw ConfigError("rational backend requires integers or string numerals, got a float literal: " +
                              v.text);
    }
    return parse_scalar<S>(v.text);
}

struct FixedPointsCmd {
    std::string out;
};

struct TrajectoryCmd {
    ScalarText x0, y0;
    std::size_t max_iter = 10000;
    std::string out;
};

struct BasinCmd {
    std::size_t grid = 0;
    std::size_t max_iter = 10000;
    std::string out_pgm, out_legend;
};

struct CurveCmd {
    CurveKind kind = CurveKind::Unstable;
    FixedPointLabel anchor = FixedPointLabel::Z2;
    std::size_t steps = 30;
    double offset = 1e-6;
    std::size_t rays = 64;
    std::size_t max_iter = 10000;
    std::string out;
};

struct RunConfig {
    Backend backend = Backend::Float64;
    std::array<ScalarText, 6> params; // a, b, c, alpha, beta, gamma
    Tolerance tol;
    std::variant<FixedPointsCmd, TrajectoryCmd, BasinCmd, CurveCmd> command;

    template <class S>
    FitnessParams<S> typed_params() const {
        return FitnessParams<S>(typed_scalar<S>(params[0]), typed_scalar<S>(params[1]),
                                typed_scalar<S>(params[2]), typed_scalar<S>(params[3]),
                                typed_scalar<S>(params[4]), typed_scalar<S>(params[5]));
    }
};

// Parses and validates a JSON run configuration, extracting the block named by
// `section` ("fixed_points", "trajectory", "basin", "curve"). Unknown keys
// anywhere are rejected; several command blocks may coexist in one file.
RunConfig load_config(const std::string& path, const std::string& section);

} // namespace diopop

#endif

#include "diopop/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "json.hpp"

namespace diopop {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing key '" + key + "'");
    return *it;
}

ScalarText scalar_text(const json& v, const std::string& where) {
    ScalarText out;
    if (v.is_number_integer()) {
        out.kind = ScalarText::Kind::Int;
        out.text = v.dump();
    } else if (v.is_number_float()) {
        out.kind = ScalarText::Kind::Float;
        out.text = format_scalar(v.get<double>());
    } else if (v.is_string()) {
        out.kind = ScalarText::Kind::Str;
        out.text = v.get<std::string>();
    } else {
        throw ConfigError(where + ": expected a number or a numeric string");
    }
    return out;
}

double double_field(const json& v, const std::string& where) {
    try {
        return parse_double(scalar_text(v, where).text);
    } catch (const InvalidParams& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

std::size_t uint_field(const json& obj, const char* key, std::size_t fallback, std::size_t lo,
                       std::size_t hi, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw ConfigError(where + "." + key + ": expected a nonnegative integer");
    const auto v = static_cast<std::size_t>(it->get<long long>());
    if (v < lo || v > hi)
        throw ConfigError(where + "." + key + ": value " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

std::string path_field(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string() || v.get<std::string>().empty())
        throw ConfigError(where + "." + key + ": expected a non-empty path string");
    return v.get<std::string>();
}

// Typed re-validation at load time so a bad config fails before any work runs.
template <class S>
void validate_typed(const RunConfig& cfg) {
    cfg.typed_params<S>();
    if (const auto* t = std::get_if<TrajectoryCmd>(&cfg.command)) {
        SquareState<S> z{typed_scalar<S>(t->x0), typed_scalar<S>(t->y0)};
        if (!in_square(z)) throw ConfigError("trajectory.initial: state outside the unit square");
    }
}

} // namespace

RunConfig load_config(const std::string& path, const std::string& section) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    check_keys(j, {"backend", "params", "tolerance", "fixed_points", "trajectory", "basin", "curve"},
               "config");

    RunConfig cfg;

    if (auto it = j.find("backend"); it != j.end()) {
        if (!it->is_string()) throw ConfigError("backend: expected \"float64\" or \"rational\"");
        const std::string b = it->get<std::string>();
        if (b == "float64")
            cfg.backend = Backend::Float64;
        else if (b == "rational")
            cfg.backend = Backend::Rational;
        else
            throw ConfigError("backend: expected \"float64\" or \"rational\", got \"" + b + "\"");
    }

    {
        const json& pj = require(j, "params", "config");
        if (!pj.is_object()) throw ConfigError("params: expected an object");
        check_keys(pj, {"a", "b", "c", "alpha", "beta", "gamma"}, "params");
        const char* names[6] = {"a", "b", "c", "alpha", "beta", "gamma"};
        for (int i = 0; i < 6; ++i)
            cfg.params[i] = scalar_text(require(pj, names[i], "params"), std::string("params.") + names[i]);
    }

    if (auto it = j.find("tolerance"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("tolerance: expected an object");
        check_keys(*it, {"eps_fixed", "eps_conv", "big"}, "tolerance");
        Tolerance defaults;
        const double ef = it->contains("eps_fixed") ? double_field((*it)["eps_fixed"], "tolerance.eps_fixed")
                                                    : defaults.eps_fixed;
        const double ec = it->contains("eps_conv") ? double_field((*it)["eps_conv"], "tolerance.eps_conv")
                                                   : defaults.eps_conv;
        const double bg = it->contains("big") ? double_field((*it)["big"], "tolerance.big") : defaults.big;
        try {
            cfg.tol = Tolerance(ef, ec, bg);
        } catch (const InvalidParams& e) {
            throw ConfigError(std::string("tolerance: ") + e.what());
        }
    }

    const json& sj = require(j, section.c_str(), "config");
    if (!sj.is_object()) throw ConfigError(section + ": expected an object");

    if (section == "fixed_points") {
        check_keys(sj, {"out"}, section);
        cfg.command = FixedPointsCmd{path_field(sj, "out", section)};
    } else if (section == "trajectory") {
        check_keys(sj, {"initial", "max_iter", "out"}, section);
        const json& init = require(sj, "initial", section);
        if (!init.is_array() || init.size() != 2)
            throw ConfigError("trajectory.initial: expected [x, y]");
        TrajectoryCmd cmd;
        cmd.x0 = scalar_text(init[0], "trajectory.initial[0]");
        cmd.y0 = scalar_text(init[1], "trajectory.initial[1]");
        cmd.max_iter = uint_field(sj, "max_iter", 10000, 1, 100000000, section);
        cmd.out = path_field(sj, "out", section);
        cfg.command = cmd;
    } else if (section == "basin") {
        check_keys(sj, {"grid", "max_iter", "out_pgm", "out_legend"}, section);
        BasinCmd cmd;
        cmd.grid = uint_field(sj, "grid", 0, 2, 4096, section);
        if (!sj.contains("grid")) throw ConfigError("basin: missing key 'grid'");
        cmd.max_iter = uint_field(sj, "max_iter", 10000, 1, 100000000, section);
        cmd.out_pgm = path_field(sj, "out_pgm", section);
        cmd.out_legend = path_field(sj, "out_legend", section);
        cfg.command = cmd;
    } else if (section == "curve") {
        check_keys(sj, {"kind", "anchor", "steps", "offset", "rays", "max_iter", "out"}, section);
        CurveCmd cmd;
        const json& kind = require(sj, "kind", section);
        if (kind.is_string() && kind.get<std::string>() == "unstable")
            cmd.kind = CurveKind::Unstable;
        else if (kind.is_string() && kind.get<std::string>() == "stable")
            cmd.kind = CurveKind::StableBoundary;
        else
            throw ConfigError("curve.kind: expected \"unstable\" or \"stable\"");
        const json& anchor = require(sj, "anchor", section);
        if (anchor.is_string() && anchor.get<std::string>() == "z0")
            cmd.anchor = FixedPointLabel::Z0;
        else if (anchor.is_string() && anchor.get<std::string>() == "z2")
            cmd.anchor = FixedPointLabel::Z2;
        else
            throw ConfigError("curve.anchor: expected \"z0\" or \"z2\"");
        cmd.steps = uint_field(sj, "steps", 30, 1, 1000000, section);
        if (sj.contains("offset")) {
            cmd.offset = double_field(sj["offset"], "curve.offset");
            if (!(cmd.offset > 0)) throw ConfigError("curve.offset: must be positive");
        }
        cmd.rays = uint_field(sj, "rays", 64, 1, 100000, section);
        cmd.max_iter = uint_field(sj, "max_iter", 10000, 1, 100000000, section);
        cmd.out = path_field(sj, "out", section);
        cfg.command = cmd;
    } else {
        throw ConfigError("unknown command section: " + section);
    }

    try {
        if (cfg.backend == Backend::Float64)
            validate_typed<double>(cfg);
        else
            validate_typed<Rational>(cfg);
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("config validation: ") + e.what());
    } catch (const ZeroDenominator& e) {
        throw ConfigError(std::string("config validation: ") + e.what());
    }

    return cfg;
}

} // namespace diopop

// diopop — command-line front end of the evolution-operator toolkit.
//
//   diopop fixed-points --config run.json
//   diopop trajectory   --config run.json
//   diopop basin        --config run.json
//   diopop curve        --config run.json
//
// Exit codes: 0 success, 2 configuration error, 3 zero denominator,
// 4 undefined image, 5 operation not applicable, 1 anything else.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "diopop/config.hpp"
#include "diopop/report.hpp"

namespace {

using namespace diopop;

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open output file: " + path);
    return os;
}

template <class S>
int run_fixed_points(const RunConfig& cfg, const FixedPointsCmd& cmd) {
    const FitnessParams<S> p = cfg.typed_params<S>();
    auto os = open_out(cmd.out);
    write_fixed_point_table(os, p, cfg.tol);
    return 0;
}

template <class S>
int run_trajectory(const RunConfig& cfg, const TrajectoryCmd& cmd) {
    const FitnessParams<S> p = cfg.typed_params<S>();
    const SquareState<S> z0{typed_scalar<S>(cmd.x0), typed_scalar<S>(cmd.y0)};
    auto os = open_out(cmd.out);
    try {
        Trajectory<S> traj = iterate(p, z0, cmd.max_iter, cfg.tol);
        write_trajectory_csv(os, traj);
        return 0;
    } catch (const UndefinedImage& e) {
        // the prefix before the failing step is deterministic: recompute it
        Trajectory<S> prefix = iterate(p, z0, *e.step, cfg.tol);
        write_states_csv(os, prefix.states);
        os << "# verdict: UndefinedImage(coordinate=" << e.coordinate << ",step=" << *e.step
           << ")\n";
        std::cerr << "diopop: " << e.what() << "\n";
        return 4;
    } catch (const ResourceLimit& e) {
        Trajectory<S> prefix = iterate(p, z0, e.step, cfg.tol);
        write_states_csv(os, prefix.states);
        os << "# verdict: ResourceLimit(bits=" << e.bits << ",step=" << e.step << ")\n";
        std::cerr << "diopop: " << e.what()
                  << "\n  exact orbits double their operand size every step; "
                     "use the float64 backend for long runs\n";
        return 1;
    }
}

template <class S>
int run_basin(const RunConfig& cfg, const BasinCmd& cmd) {
    const FitnessParams<S> p = cfg.typed_params<S>();
    BasinRaster<S> raster = scan_basins(p, cmd.grid, cfg.tol, cmd.max_iter);
    {
        auto os = open_out(cmd.out_pgm);
        write_basin_pgm(os, raster);
    }
    {
        auto os = open_out(cmd.out_legend);
        write_basin_legend(os, raster);
    }
    return 0;
}

template <class S>
int run_curve(const RunConfig& cfg, const CurveCmd& cmd) {
    const FitnessParams<S> p = cfg.typed_params<S>();
    const FixedPointReport<S> anchor = classify_square(p, cmd.anchor, cfg.tol);
    ManifoldCurve<S> curve = cmd.kind == CurveKind::Unstable
                                 ? unstable_curve(p, anchor, cmd.steps, cmd.offset, cfg.tol)
                                 : stable_boundary(p, anchor, cmd.rays, cfg.tol, cmd.max_iter);
    auto os = open_out(cmd.out);
    write_curve_csv(os, curve);
    return 0;
}

template <class S>
int run_typed(const RunConfig& cfg) {
    if (const auto* c = std::get_if<FixedPointsCmd>(&cfg.command)) return run_fixed_points<S>(cfg, *c);
    if (const auto* c = std::get_if<TrajectoryCmd>(&cfg.command)) return run_trajectory<S>(cfg, *c);
    if (const auto* c = std::get_if<BasinCmd>(&cfg.command)) return run_basin<S>(cfg, *c);
    return run_curve<S>(cfg, std::get<CurveCmd>(cfg.command));
}

int run(const std::string& section, const std::string& config_path) {
    try {
        RunConfig cfg = load_config(config_path, section);
        return cfg.backend == Backend::Float64 ? run_typed<double>(cfg) : run_typed<Rational>(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParams& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 2;
    } catch (const ZeroDenominator& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 3;
    } catch (const UndefinedImage& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 4;
    } catch (const NotApplicable& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 5;
    } catch (const NotSymmetric& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 5;
    } catch (const BackendMismatch& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 5;
    } catch (const ResourceLimit& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "diopop: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolution-operator toolkit for a dioecious population model"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* section;
        const char* help;
    };
    const Sub subs[] = {
        {"fixed-points", "fixed_points", "Enumerate and classify fixed-point candidates"},
        {"trajectory", "trajectory", "Iterate the evolution operator from an initial state"},
        {"basin", "basin", "Raster the basins of attraction over the unit square"},
        {"curve", "curve", "Approximate an invariant curve through an equilibrium"},
    };

    std::string section, config_path;
    for (const Sub& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("--config", config_path, "JSON run configuration")->required();
        sc->callback([&section, &s] { section = s.section; });
    }

    CLI11_PARSE(app, argc, argv);
    return run(section, config_path);
}

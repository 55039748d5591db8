#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int scratch_counter = 0;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("diopop-cli-" + std::to_string(::getpid()) + "-" + std::to_string(scratch_counter++));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const char* name) const { return (dir / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    REQUIRE(os.good());
    os << text;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const char* exe = std::getenv("DIOPOP_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "DIOPOP_CLI must point at the built binary");
    const std::string cmd = std::string("\"") + exe + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string bistable_rational(const std::string& extra) {
    return "{\n"
           "  \"backend\": \"rational\",\n"
           "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 4, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n" +
           extra + "\n}\n";
}

std::string bistable_float(const std::string& extra) {
    return "{\n"
           "  \"backend\": \"float64\",\n"
           "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 4, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n" +
           extra + "\n}\n";
}

} // namespace

TEST_CASE("cli: fixed-points writes the exact candidate table") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto out = s.file("fp.csv");
    write_file(cfg, bistable_rational("  \"fixed_points\": {\"out\": \"" + out + "\"}"));

    CHECK(run_cli("fixed-points --config " + cfg) == 0);
    CHECK(read_file(out) ==
          "label,system,x,y,applicable,in_domain,residual,"
          "lambda1_re,lambda1_im,lambda2_re,lambda2_im,stability\n"
          "z0,square,0,0,true,true,0,0.5,0,0,0,attractor\n"
          "z1,square,,,false,false,,,,,,\n"
          "z2,square,2/3,2/3,true,true,0,1.5,0,0,0,saddle\n"
          "z3,square,1,1,true,true,0,,,,,\n"
          "z4,square,,,false,false,,,,,,\n"
          "O,quadrant,0,0,true,true,0,0.5,0,0,0,attractor\n"
          "P,quadrant,2,2,true,true,0,1.5,0,0,0,saddle\n");

    // rerunning into a second file yields the same bytes
    const auto out2 = s.file("fp2.csv");
    const auto cfg2 = s.file("run2.json");
    write_file(cfg2, bistable_rational("  \"fixed_points\": {\"out\": \"" + out2 + "\"}"));
    CHECK(run_cli("fixed-points --config " + cfg2) == 0);
    CHECK(read_file(out2) == read_file(out));
}

TEST_CASE("cli: trajectory with the exact backend prints reduced fractions") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto out = s.file("orbit.csv");
    write_file(cfg, bistable_rational("  \"trajectory\": {\"initial\": [\"1/2\", \"1/2\"], "
                                      "\"max_iter\": 3, \"out\": \"" + out + "\"}"));

    CHECK(run_cli("trajectory --config " + cfg) == 0);
    CHECK(read_file(out) == "n,x,y\n"
                            "0,1/2,1/2\n"
                            "1,3/7,3/7\n"
                            "2,33/97,33/97\n"
                            "3,5313/21697,5313/21697\n"
                            "# verdict: MaxIterReached\n");
}

TEST_CASE("cli: trajectory that hits an undefined image keeps the prefix and exits 4") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto out = s.file("orbit.csv");
    write_file(cfg,
               "{\n"
               "  \"backend\": \"float64\",\n"
               "  \"params\": {\"a\": 0, \"b\": 1, \"c\": 0, \"alpha\": 0, \"beta\": 1, \"gamma\": 0},\n"
               "  \"trajectory\": {\"initial\": [0.5, 0.5], \"out\": \"" + out + "\"}\n"
               "}\n");

    CHECK(run_cli("trajectory --config " + cfg) == 4);
    CHECK(read_file(out) == "n,x,y\n"
                            "0,0.5,0.5\n"
                            "1,1,1\n"
                            "# verdict: UndefinedImage(coordinate=x,step=1)\n");
}

TEST_CASE("cli: trajectory honours the tolerance block") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto out = s.file("orbit.csv");
    write_file(cfg, "{\n"
                    "  \"backend\": \"float64\",\n"
                    "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 4, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n"
                    "  \"tolerance\": {\"eps_conv\": 0.01},\n"
                    "  \"trajectory\": {\"initial\": [0.5, 0.5], \"out\": \"" + out + "\"}\n"
                    "}\n");
    CHECK(run_cli("trajectory --config " + cfg) == 0);
    const std::string text = read_file(out);
    CHECK(text.rfind("n,x,y\n0,0.5,0.5\n", 0) == 0);
    CHECK(text.find("# verdict: ConvergedTo(0,0)\n") != std::string::npos);
    // the loose radius snaps the orbit far sooner than the default would
    CHECK(std::count(text.begin(), text.end(), '\n') <= 13);
}

TEST_CASE("cli: basin writes a PGM plus legend, deterministically") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto pgm = s.file("b.pgm");
    const auto legend = s.file("b.csv");
    write_file(cfg, bistable_float("  \"basin\": {\"grid\": 11, \"out_pgm\": \"" + pgm +
                                   "\", \"out_legend\": \"" + legend + "\"}"));

    CHECK(run_cli("basin --config " + cfg) == 0);
    const std::string raster = read_file(pgm);
    CHECK(raster.rfind("P2\n11 11\n255\n", 0) == 0);
    const std::string key = read_file(legend);
    CHECK(key.rfind("gray,label,x,y\n0,ToZ0,0,0\n64,Unresolved,,\n128,ToZ2,0.6666", 0) == 0);
    CHECK(key.find("255,ToZ3,1,1\n") != std::string::npos);

    const auto pgm2 = s.file("b2.pgm");
    const auto legend2 = s.file("b2.csv");
    const auto cfg2 = s.file("run2.json");
    write_file(cfg2, bistable_float("  \"basin\": {\"grid\": 11, \"out_pgm\": \"" + pgm2 +
                                    "\", \"out_legend\": \"" + legend2 + "\"}"));
    CHECK(run_cli("basin --config " + cfg2) == 0);
    CHECK(read_file(pgm2) == raster);
    CHECK(read_file(legend2) == key);
}

TEST_CASE("cli: curve subcommand, both kinds") {
    Scratch s;
    SUBCASE("stable boundary through the interior saddle") {
        const auto cfg = s.file("run.json");
        const auto out = s.file("sep.csv");
        write_file(cfg, bistable_float("  \"curve\": {\"kind\": \"stable\", \"anchor\": \"z2\", "
                                       "\"rays\": 8, \"out\": \"" + out + "\"}"));
        CHECK(run_cli("curve --config " + cfg) == 0);
        CHECK(read_file(out).rfind("k,x,y,arc\n# kind: stable-boundary\n# anchor: z2\n# rays: 8;",
                                   0) == 0);
    }
    SUBCASE("unstable curve out of the origin under equal fitness") {
        const auto cfg = s.file("run.json");
        const auto out = s.file("curve.csv");
        write_file(cfg, "{\n"
                        "  \"backend\": \"float64\",\n"
                        "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 1, \"alpha\": 1, \"beta\": 1, \"gamma\": 1},\n"
                        "  \"curve\": {\"kind\": \"unstable\", \"anchor\": \"z0\", \"out\": \"" + out + "\"}\n"
                        "}\n");
        CHECK(run_cli("curve --config " + cfg) == 0);
        CHECK(read_file(out).rfind("k,x,y,arc\n# kind: unstable\n# anchor: z0;", 0) == 0);
    }
}

TEST_CASE("cli: configuration problems exit with status 2") {
    Scratch s;
    const auto out = s.file("x.csv");

    const auto check2 = [&](const char* name, const std::string& text) {
        const auto cfg = s.file(name);
        write_file(cfg, text);
        CHECK(run_cli("fixed-points --config " + cfg) == 2);
    };

    check2("unknown.json", bistable_rational("  \"fixed_points\": {\"out\": \"" + out +
                                             "\"},\n  \"zzz\": 1"));
    check2("badbackend.json",
           "{\n  \"backend\": \"decimal\",\n"
           "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 4, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n"
           "  \"fixed_points\": {\"out\": \"" + out + "\"}\n}\n");
    check2("floatlit.json",
           "{\n  \"backend\": \"rational\",\n"
           "  \"params\": {\"a\": 0.5, \"b\": 1, \"c\": 4, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n"
           "  \"fixed_points\": {\"out\": \"" + out + "\"}\n}\n");
    check2("notjson.json", "this is not json");

    // section required for the invoked subcommand is missing
    const auto cfg = s.file("nosection.json");
    write_file(cfg, bistable_rational("  \"fixed_points\": {\"out\": \"" + out + "\"}"));
    CHECK(run_cli("trajectory --config " + cfg) == 2);

    // initial state outside the square is rejected at load time
    const auto cfg2 = s.file("offsquare.json");
    write_file(cfg2, bistable_float("  \"trajectory\": {\"initial\": [1.5, 0.5], \"out\": \"" +
                                    out + "\"}"));
    CHECK(run_cli("trajectory --config " + cfg2) == 2);

    CHECK(run_cli("fixed-points --config " + s.file("does-not-exist.json")) == 2);
}

TEST_CASE("cli: domain failures map to distinct exit codes") {
    Scratch s;
    const auto out = s.file("x.csv");

    // c = 0 leaves the curve machinery without its conjugate system
    const auto cfg = s.file("noc.json");
    write_file(cfg, "{\n"
                    "  \"backend\": \"float64\",\n"
                    "  \"params\": {\"a\": 1, \"b\": 1, \"c\": 0, \"alpha\": 1, \"beta\": 1, \"gamma\": 4},\n"
                    "  \"curve\": {\"kind\": \"unstable\", \"anchor\": \"z2\", \"out\": \"" + out + "\"}\n"
                    "}\n");
    CHECK(run_cli("curve --config " + cfg) == 3);

    // an attractor has no unstable curve
    const auto cfg2 = s.file("attractor.json");
    write_file(cfg2, bistable_float("  \"curve\": {\"kind\": \"unstable\", \"anchor\": \"z0\", "
                                    "\"out\": \"" + out + "\"}"));
    CHECK(run_cli("curve --config " + cfg2) == 5);
}

TEST_CASE("cli: several command blocks may share one config file") {
    Scratch s;
    const auto cfg = s.file("run.json");
    const auto fp = s.file("fp.csv");
    const auto orbit = s.file("orbit.csv");
    write_file(cfg, bistable_rational(
                        "  \"fixed_points\": {\"out\": \"" + fp + "\"},\n"
                        "  \"trajectory\": {\"initial\": [0, 0], \"out\": \"" + orbit + "\"}"));
    CHECK(run_cli("fixed-points --config " + cfg) == 0);
    CHECK(run_cli("trajectory --config " + cfg) == 0);
    CHECK(read_file(orbit) == "n,x,y\n0,0,0\n1,0,0\n# verdict: ConvergedTo(0,0)\n");
}

TEST_CASE("cli: bad invocations fail without writing anything") {
    CHECK(run_cli("") != 0);
    CHECK(run_cli("frobnicate") != 0);
    CHECK(run_cli("trajectory") != 0); // --config is required
}

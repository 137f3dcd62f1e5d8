#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "runner.hpp"

using namespace shapecalc;
using namespace shapecalc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("shapecalc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::string cell;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') quoted = !quoted;
            else if (ch == ',' && !quoted) {
                row.push_back(cell);
                cell.clear();
            } else cell += ch;
        }
        row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

int shell(const std::string& args) {
    const std::string cmd = std::string(SHAPECALC_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig config(const std::string& command) {
    ExperimentConfig c;
    c.command = command;
    return c;
}

}  // namespace

TEST(Descriptor, Parses) {
    const Descriptor d = parse_descriptor(" icosphere(3, 1.5, jitter=0.01) ", "surface");
    EXPECT_EQ(d.name, "icosphere");
    EXPECT_EQ(d.args, (std::vector<std::string>{"3", "1.5"}));
    EXPECT_EQ(d.named.at("jitter"), "0.01");
    EXPECT_EQ(parse_descriptor("radial", "velocity").name, "radial");
    EXPECT_THROW(parse_descriptor("torus(2,1", "surface"), ConfigError);
    EXPECT_THROW(parse_descriptor("f(a=1, 2)", "velocity"), ConfigError);
}

TEST(Surface, BuiltinsAndErrors) {
    EXPECT_EQ(make_surface("sphere(2)", 8).scale(), 2.0);
    EXPECT_EQ(make_surface("torus(2, 1, 0, 0, 1)", 8).shape().center, Vec3(0, 0, 1));
    try {
        make_surface("cube(1)", 8);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("surface"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("cube"), std::string::npos);
    }
    EXPECT_THROW(make_surface("torus(1, 2)", 8), ConfigError);
    EXPECT_THROW(make_surface("sphere(x)", 8), ConfigError);
}

TEST(Mesh, FromConfig) {
    auto c = config("flow");
    c.surface = "icosphere(2, jitter=0.01)";
    EXPECT_EQ(make_mesh(c).num_vertices(), 162u);
    c.surface = "torus_mesh(2, 1, 12, 6)";
    EXPECT_EQ(make_mesh(c).num_triangles(), 144u);
    c.surface = "icosphere(2, wobble=1)";
    EXPECT_THROW(make_mesh(c), ConfigError);
    c.surface.reset();
    c.mesh = scratch("missing.off").string();
    EXPECT_THROW(make_mesh(c), ConfigError);
}

TEST(Velocity, Families) {
    const auto s = make_surface("sphere(1)", 8);
    EXPECT_EQ(make_velocity("translation(z)", 1, 1, Vec3::Zero(), &s).direction(), Vec3::UnitZ());
    EXPECT_EQ(make_velocity("dilation", 1, 1, Vec3::Zero(), nullptr).family(), VelocityField::Family::dilation);
    EXPECT_THROW(make_velocity("normal_inflation", 1, 1, Vec3::Zero(), nullptr), ConfigError);
    EXPECT_THROW(make_velocity("swirl", 1, 1, Vec3::Zero(), nullptr), ConfigError);
    const auto a = make_velocity("random_polynomial(2)", 5, 1, Vec3::Zero(), nullptr);
    const auto b = make_velocity("random_polynomial(2, 5)", 9, 1, Vec3::Zero(), nullptr);
    EXPECT_EQ(a.value(Vec3(0.1, 0.2, 0.3)), b.value(Vec3(0.1, 0.2, 0.3)));
}

TEST(Config, JsonKeys) {
    const auto c = apply_json(nlohmann::json::parse(R"j({"surface": "torus(2,1)", "h": 0.002, "velocity": ["radial", "dilation"], "seed": 4})j"));
    EXPECT_EQ(*c.surface, "torus(2,1)");
    EXPECT_EQ(c.h, 0.002);
    EXPECT_EQ(c.velocities.size(), 2u);
    EXPECT_EQ(c.seed, 4u);
    try {
        apply_json(nlohmann::json::parse(R"j({"surfce": "sphere(1)"})j"));
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("surfce"), std::string::npos);
    }
    EXPECT_THROW(apply_json(nlohmann::json::parse(R"j({"h": "small"})j")), ConfigError);
    EXPECT_THROW(apply_json(nlohmann::json::parse("[1, 2]")), ConfigError);
}

TEST(Format, SeventeenDigits) {
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(format_real(-2), "-2");
}

TEST(GeometryCheck, SphereAndTorus) {
    for (const char* surface : {"sphere(1)", "torus(2,1)"}) {
        auto c = config("geometry-check");
        c.surface = surface;
        std::ostringstream csv;
        EXPECT_EQ(cmd_geometry_check(c, csv), kExitPass) << surface;
        const auto rows = parse_csv(csv.str());
        ASSERT_GE(rows.size(), 2u);
        EXPECT_EQ(rows[0], (std::vector<std::string>{"check_name", "max_error", "tolerance", "pass"}));
        for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][3], "true") << rows[i][0];
        EXPECT_EQ(rows.back()[0], "gauss_bonnet");
        EXPECT_LE(std::stod(rows.back()[1]), 1e-8);
    }
}

TEST(VerifyDerivatives, SphereRadial) {
    auto c = config("verify-derivatives");
    c.surface = "sphere(1)";
    c.velocities = {"radial"};
    std::ostringstream csv;
    EXPECT_EQ(cmd_verify_derivatives(c, csv), kExitPass);
    const auto rows = parse_csv(csv.str());
    EXPECT_EQ(rows[0], (std::vector<std::string>{"quantity", "surface", "velocity", "analytic", "oracle", "abs_err",
                                                 "rel_err", "pass"}));
    bool seen = false;
    for (const auto& r : rows)
        if (r[0].rfind("kappa_prime", 0) == 0) {
            seen = true;
            EXPECT_NEAR(std::stod(r[3]), -2.0, 1e-12);
            EXPECT_NEAR(std::stod(r[4]), -2.0, 1e-6);
        }
    EXPECT_TRUE(seen);
}

TEST(VerifyDerivatives, TranslationGaussRows) {
    auto c = config("verify-derivatives");
    c.surface = "sphere(1)";
    c.velocities = {"translation(z)"};
    std::ostringstream csv;
    EXPECT_EQ(cmd_verify_derivatives(c, csv), kExitPass);
    for (const auto& r : parse_csv(csv.str()))
        if (r[0].rfind("kappa_g_prime", 0) == 0) {
            EXPECT_NEAR(std::stod(r[3]), 0.0, 1e-12);
            EXPECT_NEAR(std::stod(r[4]), 0.0, 1e-6);
        }
}

TEST(Newton, AreaDampedShrink) {
    auto c = config("newton");
    c.functional = "area";
    c.surface = "icosphere(3)";
    c.max_iter = 1;
    c.alpha = 0.5;
    std::ostringstream csv;
    EXPECT_EQ(cmd_newton(c, csv), kExitNumeric);
    const auto rows = parse_csv(csv.str());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0][0], "iter");
    EXPECT_NEAR(std::stod(rows[1][3]), 1.0, 0.05);
    EXPECT_EQ(rows[1][6], "0.5");
    EXPECT_LT(std::stod(rows[2][1]), std::stod(rows[1][1]));
}

TEST(Newton, RejectsBadFunctional) {
    auto c = config("newton");
    c.functional = "total_gauss";
    c.surface = "icosphere(2)";
    std::ostringstream err;
    EXPECT_EQ(run(c, err), kExitConfig);
}

TEST(Flow, DilationAndTranslation) {
    auto c = config("flow");
    c.surface = "icosphere(3)";
    c.velocities = {"dilation"};
    c.dump_dir = scratch("dumps").string();
    std::ostringstream csv;
    EXPECT_EQ(cmd_flow(c, csv), kExitPass);
    auto rows = parse_csv(csv.str());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "area", "willmore", "total_gauss", "volume"}));
    EXPECT_NEAR(std::stod(rows[2][1]) / std::stod(rows[1][1]), std::exp(0.2), 1e-4);
    EXPECT_NEAR(std::stod(rows[2][3]), 4 * std::numbers::pi, 0.1);
    EXPECT_TRUE(fs::exists(fs::path(c.dump_dir) / "flow_001.off"));

    c.surface = "torus_mesh(2, 1, 24, 12)";
    c.velocities = {"translation(1, 2, 3)"};
    c.dump_dir.clear();
    c.times = {0.0, 0.1, 0.5};
    std::ostringstream csv2;
    EXPECT_EQ(cmd_flow(c, csv2), kExitPass);
    rows = parse_csv(csv2.str());
    for (int col = 1; col <= 4; ++col)
        for (std::size_t r = 2; r < rows.size(); ++r)
            EXPECT_NEAR(std::stod(rows[r][col]), std::stod(rows[1][col]), 1e-9 * std::max(1.0, std::abs(std::stod(rows[1][col]))));
}

TEST(Run, ExitCodesAndOutput) {
    auto c = config("geometry-check");
    c.surface = "cube(1)";
    std::ostringstream err;
    EXPECT_EQ(run(c, err), kExitConfig);
    EXPECT_NE(err.str().find("cube"), std::string::npos);

    c.surface = "sphere(1)";
    c.out = scratch("gc.csv").string();
    EXPECT_EQ(run(c, err), kExitPass);
    EXPECT_EQ(slurp(c.out).rfind("check_name,", 0), 0u);

    auto n = config("newton");
    n.mesh = scratch("nope.off").string();
    EXPECT_EQ(run(n, err), kExitConfig);
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(shell("geometry-check --surface 'sphere(1)'"), 0);
    EXPECT_EQ(shell("geometry-check --surface 'cube(1)'"), 2);
    EXPECT_EQ(shell("newton --mesh /nonexistent/mesh.off"), 2);
    EXPECT_EQ(shell("newton --surface 'icosphere(3)' --functional area --max-iter 1 --alpha 0.5"), 1);
    EXPECT_EQ(shell("flow --surface 'icosphere(2)' --bogus 1"), 2);
    EXPECT_EQ(shell(""), 2);
}

TEST(Binary, FlagsOverrideConfig) {
    const fs::path cfg = scratch("cfg.json"), out = scratch("cfg_out.csv");
    std::ofstream(cfg) << R"j({"command": "flow", "surface": "icosphere(2)", "velocity": "dilation", "times": [0, 0.05]})j";
    EXPECT_EQ(shell("flow --config " + cfg.string() + " --velocity 'translation(z)' --out " + out.string()), 0);
    const auto rows = parse_csv(slurp(out));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2][0], "0.050000000000000003");
    EXPECT_NEAR(std::stod(rows[2][1]), std::stod(rows[1][1]), 1e-9);
    EXPECT_EQ(shell("newton --config " + cfg.string()), 2);

    std::ofstream(cfg) << R"j({"surface": "icosphere(2)", "colour": "red"})j";
    EXPECT_EQ(shell("flow --config " + cfg.string()), 2);
}

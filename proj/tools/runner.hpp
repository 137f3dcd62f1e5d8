#pragma once

// Batch experiment driver behind the shapecalc command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/mesh.hpp"
#include "shapecalc/velocity.hpp"

namespace shapecalc::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;
    std::optional<std::string> surface;
    std::optional<std::string> mesh;
    std::string functional = "willmore";
    std::vector<std::string> velocities;
    double h = 1e-3;
    bool richardson = true;
    std::uint64_t seed = 1;
    std::string out;
    std::string dump_dir;
    std::optional<double> tol;
    int max_iter = 20;
    double alpha = 1.0;
    std::optional<double> epsilon;
    int q = 32;
    int samples = 5;
    std::vector<double> times{0.0, 0.1};
};

/// Applies the keys of a JSON object on top of base; unknown keys and
/// mistyped values throw ConfigError naming the key.
ExperimentConfig apply_json(const nlohmann::json& doc, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// name(arg, arg, key=value)
struct Descriptor {
    std::string name;
    std::vector<std::string> args;
    std::map<std::string, std::string> named;
    std::string text;
};
Descriptor parse_descriptor(const std::string& text, const std::string& key);

/// sphere(R), ellipsoid(a,b,c), torus(R,r); optional trailing centre x,y,z.
AnalyticSurface make_surface(const std::string& text, int q);

/// --mesh path, or --surface icosphere(sub[, R], jitter=a) / torus_mesh(R, r, nu, nv).
TriMesh make_mesh(const ExperimentConfig& config);

/// radial, dilation, translation(axis | x,y,z), normal_inflation,
/// rotation(x,y,z), random_polynomial(degree[, seed[, support]]).
/// Random fields are scaled by length around center; seed defaults to the config seed.
VelocityField make_velocity(const std::string& text, std::uint64_t seed, double length, const Vec3& center,
                            const AnalyticSurface* surface);

/// printf("%.17g")
std::string format_real(double v);

int cmd_geometry_check(const ExperimentConfig& config, std::ostream& csv);
int cmd_verify_derivatives(const ExperimentConfig& config, std::ostream& csv);
int cmd_newton(const ExperimentConfig& config, std::ostream& csv);
int cmd_flow(const ExperimentConfig& config, std::ostream& csv);

/// Dispatches on config.command, writes CSV to config.out (or stdout) and
/// maps exceptions to exit codes; diagnostics go to err.
int run(const ExperimentConfig& config, std::ostream& err);

}  // namespace shapecalc::cli

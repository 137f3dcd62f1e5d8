// shapecalc: geometry checks, derivative verification, Newton and flow runs.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "runner.hpp"

using namespace shapecalc::cli;

namespace {

struct Flags {
    std::optional<std::string> config, surface, mesh, functional, velocity, out, dump_dir;
    std::optional<double> h, tol, alpha, epsilon;
    std::optional<bool> richardson;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_iter;
};

void add_flags(CLI::App& app, Flags& f) {
    app.set_help_flag("--help", "print this help message and exit");
    app.add_option("--config", f.config, "JSON config file; flags override its keys");
    app.add_option("--surface", f.surface, "sphere(R), ellipsoid(a,b,c), torus(R,r), icosphere(sub[,R],jitter=a), torus_mesh(R,r,nu,nv)");
    app.add_option("--mesh", f.mesh, "OFF or OBJ mesh file");
    app.add_option("--functional", f.functional, "area, willmore, spontaneous(k0), total_gauss");
    app.add_option("--velocity", f.velocity, "radial, dilation, translation(axis), normal_inflation, rotation(x,y,z), random_polynomial(degree[,seed[,support]])");
    app.add_option("--h", f.h, "finite-difference step relative to the surface scale");
    app.add_option("--richardson", f.richardson, "one Richardson extrapolation level (true/false)");
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--out", f.out, "CSV output path (default stdout)");
    app.add_option("--dump-dir", f.dump_dir, "directory for OFF mesh dumps");
    app.add_option("--tol", f.tol, "pass tolerance");
    app.add_option("--max-iter", f.max_iter, "Newton iteration limit");
    app.add_option("--alpha", f.alpha, "Newton step length in (0, 1]");
    app.add_option("--epsilon", f.epsilon, "mass shift of the Newton system");
}

ExperimentConfig merge(const std::string& command, const Flags& f) {
    ExperimentConfig c;
    if (f.config) c = load_config_file(*f.config, c);
    if (!c.command.empty() && c.command != command)
        throw ConfigError("config command '" + c.command + "' does not match subcommand '" + command + "'");
    c.command = command;
    if (f.surface) c.surface = f.surface;
    if (f.mesh) c.mesh = f.mesh;
    if (f.functional) c.functional = *f.functional;
    if (f.velocity) c.velocities = {*f.velocity};
    if (f.h) c.h = *f.h;
    if (f.richardson) c.richardson = *f.richardson;
    if (f.seed) c.seed = *f.seed;
    if (f.out) c.out = *f.out;
    if (f.dump_dir) c.dump_dir = *f.dump_dir;
    if (f.tol) c.tol = f.tol;
    if (f.max_iter) c.max_iter = *f.max_iter;
    if (f.alpha) c.alpha = *f.alpha;
    if (f.epsilon) c.epsilon = f.epsilon;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape calculus experiments on analytic surfaces and triangle meshes"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    Flags flags;
    CLI::App* subs[] = {
        app.add_subcommand("geometry-check", "tangential calculus identities and Gauss-Bonnet"),
        app.add_subcommand("verify-derivatives", "closed-form shape derivatives against the finite-difference oracle"),
        app.add_subcommand("newton", "Newton iteration for area or Willmore on a mesh"),
        app.add_subcommand("flow", "meshes and functionals along the flow of a velocity field"),
    };
    for (CLI::App* s : subs) add_flags(*s, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        for (CLI::App* s : subs)
            if (s->parsed()) return run(merge(s->get_name(), flags), std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

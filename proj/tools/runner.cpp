#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "shapecalc/errors.hpp"
#include "shapecalc/flow.hpp"
#include "shapecalc/functionals.hpp"
#include "shapecalc/identities.hpp"
#include "shapecalc/mesh_io.hpp"
#include "shapecalc/newton.hpp"
#include "shapecalc/random.hpp"
#include "shapecalc/shape_derivatives.hpp"

namespace shapecalc::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double number(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("key '" + key + "': '" + s + "' is not a number");
}

int integer(const std::string& s, const std::string& key) {
    const double v = number(s, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "': '" + s + "' is not an integer");
    return static_cast<int>(v);
}

double get_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "': expected a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("key '" + key + "': expected an integer");
    return v.get<int>();
}

std::string get_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("key '" + key + "': expected a string");
    return v.get<std::string>();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Vec3 trailing_center(const Descriptor& d, std::size_t first) {
    if (d.args.size() == first) return Vec3::Zero();
    if (d.args.size() != first + 3) throw ConfigError("key 'surface': " + d.name + " takes a centre x,y,z or none");
    return Vec3(number(d.args[first], "surface"), number(d.args[first + 1], "surface"),
                number(d.args[first + 2], "surface"));
}

void require_args(const Descriptor& d, std::size_t lo, std::size_t hi, const std::string& key) {
    if (d.args.size() < lo || d.args.size() > hi)
        throw ConfigError("key '" + key + "': wrong number of arguments in '" + d.text + "'");
}

void check_positive(double v, const std::string& key) {
    if (!(v > 0)) throw ConfigError("key '" + key + "' must be positive");
}

struct Row {
    std::string quantity;
    double analytic, oracle;
    double denominator_floor;
};

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ExperimentConfig apply_json(const json& doc, ExperimentConfig c) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : doc.items()) {
        if (key == "command") c.command = get_string(v, key);
        else if (key == "surface") c.surface = get_string(v, key);
        else if (key == "mesh") c.mesh = get_string(v, key);
        else if (key == "functional") c.functional = get_string(v, key);
        else if (key == "velocity") {
            c.velocities.clear();
            if (v.is_array())
                for (const auto& e : v) c.velocities.push_back(get_string(e, key));
            else
                c.velocities.push_back(get_string(v, key));
        } else if (key == "h") c.h = get_number(v, key);
        else if (key == "richardson") {
            if (!v.is_boolean()) throw ConfigError("key 'richardson': expected true or false");
            c.richardson = v.get<bool>();
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("key 'seed': expected a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "out") c.out = get_string(v, key);
        else if (key == "dump_dir") c.dump_dir = get_string(v, key);
        else if (key == "tol") c.tol = get_number(v, key);
        else if (key == "max_iter") c.max_iter = get_int(v, key);
        else if (key == "alpha") c.alpha = get_number(v, key);
        else if (key == "epsilon") c.epsilon = get_number(v, key);
        else if (key == "q") c.q = get_int(v, key);
        else if (key == "samples") c.samples = get_int(v, key);
        else if (key == "times") {
            if (!v.is_array()) throw ConfigError("key 'times': expected an array of numbers");
            c.times.clear();
            for (const auto& e : v) c.times.push_back(get_number(e, key));
        } else
            throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return apply_json(doc, std::move(base));
}

Descriptor parse_descriptor(const std::string& text, const std::string& key) {
    Descriptor d;
    d.text = trim(text);
    const auto open = d.text.find('(');
    if (open == std::string::npos) {
        d.name = d.text;
    } else {
        if (d.text.back() != ')') throw ConfigError("key '" + key + "': unbalanced parentheses in '" + d.text + "'");
        d.name = trim(d.text.substr(0, open));
        const std::string inner = d.text.substr(open + 1, d.text.size() - open - 2);
        if (!trim(inner).empty()) {
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    if (!d.named.empty())
                        throw ConfigError("key '" + key + "': positional argument after named one in '" + d.text + "'");
                    d.args.push_back(item);
                } else {
                    d.named[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
                }
            }
        }
    }
    if (d.name.empty()) throw ConfigError("key '" + key + "': empty descriptor");
    return d;
}

AnalyticSurface make_surface(const std::string& text, int q) {
    const Descriptor d = parse_descriptor(text, "surface");
    if (!d.named.empty()) throw ConfigError("key 'surface': " + d.name + " takes no named arguments");
    if (q < 2) throw ConfigError("key 'q' must be at least 2");
    auto arg = [&](std::size_t i) { return number(d.args.at(i), "surface"); };
    if (d.name == "sphere") {
        if (d.args.empty()) return make_sphere(1.0, Vec3::Zero(), q);
        const double r = arg(0);
        check_positive(r, "surface");
        return make_sphere(r, trailing_center(d, 1), q);
    }
    if (d.name == "ellipsoid") {
        require_args(d, 3, 6, "surface");
        for (int i = 0; i < 3; ++i) check_positive(arg(i), "surface");
        return make_ellipsoid(arg(0), arg(1), arg(2), trailing_center(d, 3), q);
    }
    if (d.name == "torus") {
        require_args(d, 2, 5, "surface");
        if (!(arg(0) > arg(1) && arg(1) > 0)) throw ConfigError("key 'surface': torus needs R > r > 0");
        return make_torus(arg(0), arg(1), trailing_center(d, 2), q);
    }
    throw ConfigError("unknown surface '" + d.name + "' (key 'surface')");
}

TriMesh make_mesh(const ExperimentConfig& c) {
    try {
        if (c.mesh) {
            if (!std::filesystem::exists(*c.mesh)) throw ConfigError("key 'mesh': file '" + *c.mesh + "' not found");
            return read_mesh(*c.mesh);
        }
        if (!c.surface) throw ConfigError("a mesh is required: set 'mesh' or 'surface'");
        const Descriptor d = parse_descriptor(*c.surface, "surface");
        if (d.name == "icosphere") {
            require_args(d, 1, 2, "surface");
            const int sub = integer(d.args[0], "surface");
            if (sub < 0 || sub > 7) throw ConfigError("key 'surface': icosphere subdivisions must lie in [0, 7]");
            const double r = d.args.size() > 1 ? number(d.args[1], "surface") : 1.0;
            check_positive(r, "surface");
            TriMesh m = make_icosphere(sub, r);
            for (const auto& [k, v] : d.named) {
                if (k != "jitter") throw ConfigError("key 'surface': unknown icosphere option '" + k + "'");
                const double amp = number(v, "surface");
                if (amp < 0 || amp >= 0.5) throw ConfigError("key 'surface': jitter must lie in [0, 0.5)");
                if (amp > 0) m = jitter_radially(m, amp, c.seed);
            }
            return m;
        }
        if (d.name == "torus_mesh") {
            require_args(d, 4, 4, "surface");
            if (!d.named.empty()) throw ConfigError("key 'surface': torus_mesh takes no named arguments");
            const double R = number(d.args[0], "surface"), r = number(d.args[1], "surface");
            if (!(R > r && r > 0)) throw ConfigError("key 'surface': torus_mesh needs R > r > 0");
            const int nu = integer(d.args[2], "surface"), nv = integer(d.args[3], "surface");
            if (nu < 3 || nv < 3) throw ConfigError("key 'surface': torus_mesh needs nu, nv >= 3");
            return make_torus_mesh(R, r, nu, nv);
        }
        throw ConfigError("unknown mesh surface '" + d.name + "' (key 'surface'; expected icosphere or torus_mesh)");
    } catch (const MeshError& e) {
        throw ConfigError(std::string("invalid mesh: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("mesh file: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

VelocityField make_velocity(const std::string& text, std::uint64_t seed, double length, const Vec3& center,
                            const AnalyticSurface* surface) {
    const Descriptor d = parse_descriptor(text, "velocity");
    if (!d.named.empty()) throw ConfigError("key 'velocity': " + d.name + " takes no named arguments");
    auto arg = [&](std::size_t i) { return number(d.args.at(i), "velocity"); };
    VelocityField v = VelocityField::zero();
    if (d.name == "radial") {
        require_args(d, 0, 0, "velocity");
        v = VelocityField::radial();
    } else if (d.name == "dilation") {
        require_args(d, 0, 0, "velocity");
        v = VelocityField::dilation();
    } else if (d.name == "translation") {
        require_args(d, 1, 3, "velocity");
        Vec3 dir;
        if (d.args.size() == 1) {
            const std::string& a = d.args[0];
            if (a == "x") dir = Vec3::UnitX();
            else if (a == "y") dir = Vec3::UnitY();
            else if (a == "z") dir = Vec3::UnitZ();
            else throw ConfigError("key 'velocity': translation axis must be x, y, z or three numbers");
        } else if (d.args.size() == 3) {
            dir = Vec3(arg(0), arg(1), arg(2));
        } else {
            throw ConfigError("key 'velocity': translation axis must be x, y, z or three numbers");
        }
        v = VelocityField::translation(dir);
    } else if (d.name == "rotation") {
        require_args(d, 3, 3, "velocity");
        v = VelocityField::rotation(Vec3(arg(0), arg(1), arg(2)), center);
    } else if (d.name == "normal_inflation") {
        require_args(d, 0, 0, "velocity");
        if (!surface) throw ConfigError("key 'velocity': normal_inflation needs an analytic surface");
        v = VelocityField::normal_inflation(*surface);
    } else if (d.name == "random_polynomial") {
        require_args(d, 1, 3, "velocity");
        const int degree = integer(d.args[0], "velocity");
        if (degree < 0 || degree > 6) throw ConfigError("key 'velocity': degree must lie in [0, 6]");
        std::uint64_t s = seed;
        if (d.args.size() > 1) {
            const int si = integer(d.args[1], "velocity");
            if (si < 0) throw ConfigError("key 'velocity': seed must be non-negative");
            s = static_cast<std::uint64_t>(si);
        }
        const double support = d.args.size() > 2 ? arg(2) * length : 0.0;
        if (support < 0) throw ConfigError("key 'velocity': support radius must be non-negative");
        v = VelocityField::random_polynomial(degree, s, support, length, center);
    } else {
        throw ConfigError("unknown velocity '" + d.name + "' (key 'velocity')");
    }
    return v;
}

int cmd_geometry_check(const ExperimentConfig& c, std::ostream& csv) {
    if (!c.surface) throw ConfigError("key 'surface' is required");
    const AnalyticSurface s = make_surface(*c.surface, c.q);
    IdentityOptions opt;
    opt.seed = c.seed;
    opt.points = std::max(1, c.samples) * 8;
    if (c.tol) {
        check_positive(*c.tol, "tol");
        opt.tolerance = *c.tol;
    }
    const auto rows = tangential_identity_suite(s, opt);
    bool ok = true;
    csv << "check_name,max_error,tolerance,pass\n";
    for (const auto& r : rows) {
        csv << r.name << ',' << format_real(r.max_error) << ',' << format_real(r.tolerance) << ','
            << (r.pass() ? "true" : "false") << '\n';
        ok = ok && r.pass();
    }
    return ok ? kExitPass : kExitNumeric;
}

int cmd_verify_derivatives(const ExperimentConfig& c, std::ostream& csv) {
    if (!c.surface) throw ConfigError("key 'surface' is required");
    check_positive(c.h, "h");
    if (c.samples < 1) throw ConfigError("key 'samples' must be at least 1");
    const double tol = c.tol.value_or(1e-5);
    check_positive(tol, "tol");
    const AnalyticSurface s = make_surface(*c.surface, c.q);
    const std::vector<std::string> velocities =
        c.velocities.empty() ? std::vector<std::string>{"random_polynomial(2)"} : c.velocities;

    std::vector<VelocityField> fields;
    for (const auto& text : velocities) fields.push_back(make_velocity(text, c.seed, s.scale(), s.shape().center, &s));

    const auto& nodes = s.quadrature();
    SplitMix pick(c.seed);
    std::vector<std::size_t> sample(static_cast<std::size_t>(c.samples));
    for (auto& i : sample) i = static_cast<std::size_t>(pick.next() % nodes.size());

    FdOptions fd;
    fd.h = c.h;
    fd.richardson = c.richardson;

    bool ok = true;
    csv << "quantity,surface,velocity,analytic,oracle,abs_err,rel_err,pass\n";
    auto emit = [&](const std::string& vname, const Row& r) {
        const double abs_err = std::abs(r.analytic - r.oracle);
        const double rel_err =
            abs_err / std::max({std::abs(r.analytic), std::abs(r.oracle), r.denominator_floor});
        const bool pass = rel_err <= tol;
        ok = ok && pass;
        csv << r.quantity << ',' << csv_field(trim(*c.surface)) << ',' << csv_field(vname) << ','
            << format_real(r.analytic) << ',' << format_real(r.oracle) << ',' << format_real(abs_err) << ','
            << format_real(rel_err) << ',' << (pass ? "true" : "false") << '\n';
    };

    for (std::size_t vi = 0; vi < fields.size(); ++vi) {
        const VelocityField& v = fields[vi];
        const std::string vname = trim(velocities[vi]);
        const NormalSpeed vn = NormalSpeed::from_velocity(s, v.field());
        for (std::size_t k = 0; k < sample.size(); ++k) {
            const QuadratureNode& node = nodes[sample[k]];
            const SurfacePoint sp = s.at(node.point);
            const NormalSpeedData d = vn.at(sp);
            const std::string at = "[" + std::to_string(k) + "]";

            PointQuantitySpec q;
            q.kind = PointQuantity::kappa;
            emit(vname, {"kappa_prime" + at, curvature_prime(sp, d), fd_pointwise_derivative(q, s, node.where, v, fd)[0],
                         1.0});
            q.kind = PointQuantity::kappa_g;
            emit(vname, {"kappa_g_prime" + at, gauss_curvature_prime(sp, d),
                         fd_pointwise_derivative(q, s, node.where, v, fd)[0], 1.0});
            q.kind = PointQuantity::trace_power;
            q.p = 2;
            emit(vname, {"trace_power_prime_2" + at, trace_power_prime(sp, 2, d),
                         fd_pointwise_derivative(q, s, node.where, v, fd)[0], 1.0});
            q.kind = PointQuantity::normal;
            const auto no = fd_pointwise_derivative(q, s, node.where, v, fd);
            const Vec3 na = normal_prime(sp, d);
            const char* axis[3] = {"x", "y", "z"};
            for (int i = 0; i < 3; ++i)
                emit(vname, {std::string("normal_prime_") + axis[i] + at, na[i], no[static_cast<std::size_t>(i)], 1.0});
        }
        const std::pair<const char*, FunctionalSpec> functionals[] = {
            {"dArea", make_functional(BuiltinFunctional::area)},
            {"dWillmore", make_functional(BuiltinFunctional::willmore)},
            {"dSpontaneous", make_functional(BuiltinFunctional::spontaneous, 1.0)},
            {"dTotalGauss", make_functional(BuiltinFunctional::total_gauss)},
        };
        for (const auto& [name, j] : functionals) {
            const DerivativeIntegral a = first_shape_derivative_detail(j, s, vn);
            emit(vname, {name, a.value, fd_functional_derivative(j, s, v, fd), a.magnitude});
        }
    }
    return ok ? kExitPass : kExitNumeric;
}

int cmd_newton(const ExperimentConfig& c, std::ostream& csv) {
    NewtonConfig nc;
    const FunctionalSpec spec = [&] {
        try {
            return functional_by_name(c.functional);
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string(e.what()) + " (key 'functional')");
        }
    }();
    if (spec.kind != BuiltinFunctional::area && spec.kind != BuiltinFunctional::willmore)
        throw ConfigError("key 'functional': newton supports area and willmore only");
    nc.functional = spec.kind;
    if (c.max_iter < 0) throw ConfigError("key 'max_iter' must be non-negative");
    nc.max_iterations = c.max_iter;
    nc.tolerance = c.tol.value_or(1e-6);
    check_positive(nc.tolerance, "tol");
    if (!(c.alpha > 0 && c.alpha <= 1)) throw ConfigError("key 'alpha' must lie in (0, 1]");
    nc.alpha = c.alpha;
    if (c.epsilon && *c.epsilon < 0) throw ConfigError("key 'epsilon' must be non-negative");
    nc.epsilon = c.epsilon;
    nc.dump_dir = c.dump_dir;
    if (!nc.dump_dir.empty()) std::filesystem::create_directories(nc.dump_dir);

    const TriMesh mesh = make_mesh(c);
    const NewtonReport report = newton_iterate(mesh, nc);
    write_report_csv(report, csv);
    return report.termination == "converged" ? kExitPass : kExitNumeric;
}

int cmd_flow(const ExperimentConfig& c, std::ostream& csv) {
    if (c.times.empty()) throw ConfigError("key 'times' must not be empty");
    if (c.velocities.size() != 1) throw ConfigError("key 'velocity': flow needs exactly one velocity");
    const TriMesh mesh = make_mesh(c);
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& x : mesh.vertices()) centroid += x;
    centroid /= static_cast<double>(mesh.num_vertices());
    const VelocityField v = make_velocity(c.velocities.front(), c.seed, mesh.scale(), centroid, nullptr);
    if (!c.dump_dir.empty()) std::filesystem::create_directories(c.dump_dir);

    const FunctionalSpec willmore = make_functional(BuiltinFunctional::willmore);
    const FunctionalSpec gauss = make_functional(BuiltinFunctional::total_gauss);
    bool ok = true;
    csv << "t,area,willmore,total_gauss,volume\n";
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        const double t = c.times[k];
        const FlowedMesh fm = flow_mesh(mesh, v, t, default_steps(t));
        if (fm.inverted > 0) {
            std::cerr << "flow: " << fm.inverted << " inverted triangles at t = " << format_real(t) << '\n';
            ok = false;
        }
        const auto geo = mesh_quadrature(fm.mesh);
        csv << format_real(t) << ',' << format_real(mesh_area(fm.mesh)) << ',' << format_real(evaluate(willmore, geo))
            << ',' << format_real(evaluate(gauss, geo)) << ',' << format_real(mesh_volume(fm.mesh)) << '\n';
        if (!c.dump_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "flow_%03zu.off", k);
            write_mesh(fm.mesh, (std::filesystem::path(c.dump_dir) / name).string(), MeshFormat::off);
        }
    }
    return ok ? kExitPass : kExitNumeric;
}

int run(const ExperimentConfig& c, std::ostream& err) {
    try {
        std::ostringstream csv;
        int code;
        if (c.command == "geometry-check") code = cmd_geometry_check(c, csv);
        else if (c.command == "verify-derivatives") code = cmd_verify_derivatives(c, csv);
        else if (c.command == "newton") code = cmd_newton(c, csv);
        else if (c.command == "flow") code = cmd_flow(c, csv);
        else throw ConfigError("unknown command '" + c.command + "'");

        if (c.out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) throw ConfigError("cannot write '" + c.out + "' (key 'out')");
            f << csv.str();
        }
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace shapecalc::cli

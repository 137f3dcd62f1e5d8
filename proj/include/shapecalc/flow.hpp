#pragma once

// The velocity method: trajectories of ẋ = v(x), flowed surfaces Γ_t, and a
// finite-difference oracle for shape derivatives that never touches the
// closed-form formulas.

#include <functional>
#include <optional>
#include <vector>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/functionals.hpp"
#include "shapecalc/mesh.hpp"
#include "shapecalc/velocity.hpp"

namespace shapecalc {

/// max(16, ceil(|t| / 0.01))
int default_steps(double t);

/// Classical RK4 with uniform step t/steps. Negative t integrates backwards.
Vec3 integrate_trajectory(const VelocityField& v, const Vec3& x0, double t, int steps);

struct FlowedMesh {
    TriMesh mesh;
    /// Triangles whose normal opposes the mean of their transported vertex normals.
    std::size_t inverted = 0;
};

FlowedMesh flow_mesh(const TriMesh& mesh, const VelocityField& v, double t, int steps);
/// Serial reference of flow_mesh.
FlowedMesh flow_mesh_serial(const TriMesh& mesh, const VelocityField& v, double t, int steps);

/// Transports a chart jet: the point follows the flow, first partials obey
/// Ẏ = Dv Y, second partials ċ = D²v[a, b] + Dv c.
ChartJet transport_chart_jet(const VelocityField& v, const ChartJet& c0, double t, int steps);

/// Geometry of the surface parametrised by a chart jet.
struct FrameGeometry {
    Vec3 x;
    Vec3 normal;
    Mat3 shape;
    double area_element = 0.0;
};
FrameGeometry frame_geometry(const ChartJet& c);

/// Closed-form Γ_t for built-in surfaces under dilation, translation, radial
/// flow of a centred sphere, and normal inflation of spheres and tori.
struct ExactFamily {
    std::function<ShapeParameters(double)> shape;
    std::function<Vec3(const Vec3&, double)> track;
};
std::optional<ExactFamily> exact_family(const AnalyticSurface& surface, const VelocityField& v);

struct FdOptions {
    double h = 1e-3;           // relative to the surface scale
    bool richardson = true;
    bool use_exact = true;     // prefer closed-form families when available
};

/// J(Γ_t) by chart transport (or exact family).
double flowed_functional(const FunctionalSpec& j, const AnalyticSurface& surface, const VelocityField& v, double t,
                         bool use_exact = true);

/// Central difference of J(Γ_t) at t = 0, optionally Richardson-extrapolated.
double fd_functional_derivative(const FunctionalSpec& j, const AnalyticSurface& surface, const VelocityField& v,
                                const FdOptions& opt = {});

enum class PointQuantity { kappa, kappa_g, trace_power, normal, restriction };

struct PointQuantitySpec {
    PointQuantity kind = PointQuantity::kappa;
    int p = 2;                 // trace_power exponent
    AmbientScalarField phi;    // restriction field
};

/// Shape derivative of a pointwise quantity at the chart point X: the time
/// derivative at the tracked point x(t)(X) minus the convection ∇_Γ q · v.
std::vector<double> fd_pointwise_derivative(const PointQuantitySpec& q, const AnalyticSurface& surface,
                                            const ChartPoint& X, const VelocityField& v, const FdOptions& opt = {});

}  // namespace shapecalc

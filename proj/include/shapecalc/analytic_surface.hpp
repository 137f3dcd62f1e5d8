#pragma once

// Closed surfaces with exact geometry: a level set phi (phi < 0 inside) for
// normals and shape operators, plus an atlas of parametric charts used for
// quadrature and as an independent geometric description.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shapecalc/jet.hpp"
#include "shapecalc/polynomial.hpp"

namespace shapecalc {

/// Level-set description of Γ = {phi = 0}.
struct LevelSetGeometry {
    /// phi with gradient and Hessian.
    std::function<Jet(const Vec3&)> phi;
    /// Jets of the three partials of phi (carries third derivatives).
    std::function<VecJet(const Vec3&)> grad_jets;
    Vec3 box_min = Vec3::Constant(-1.0);
    Vec3 box_max = Vec3::Constant(1.0);

    static LevelSetGeometry from_polynomial(const Polynomial& p, const Vec3& box_min, const Vec3& box_max);

    /// Jets of the extended normal ∇phi/|∇phi| at x.
    VecJet normal_jets(const Vec3& x) const;
};

/// Chart position with first and second parameter derivatives.
struct ChartJet {
    Vec3 x, xu, xw, xuu, xuw, xww;
};

struct ParametricChart {
    std::function<ChartJet(double u, double w)> eval;
    double u0 = 0.0, u1 = 1.0, w0 = 0.0, w1 = 1.0;
    /// Optional inverse map from a point on the chart image to (u, w).
    std::function<std::optional<Eigen::Vector2d>(const Vec3&)> inverse;
};

/// Location of a point of Γ in the atlas.
struct ChartPoint {
    int chart = 0;
    double u = 0.0;
    double w = 0.0;
};

struct QuadratureNode {
    Vec3 point;
    double weight = 0.0;
    Vec3 normal;
    Mat3 shape_operator;
    ChartPoint where;
};

/// Geometry of Γ at one point together with the level-set extension of the
/// normal (ñ = ∇phi/|∇phi|) needed by second-order tangential operators.
struct SurfacePoint {
    Vec3 x;
    Vec3 normal;
    Mat3 projector;
    Mat3 shape;            // D_Γ n = P D²phi P / |∇phi|
    Mat3 normal_jacobian;  // ambient D ñ at x
    double kappa = 0.0;
    VecJet normal_jets;    // jets of ñ_i
};

/// Built-in shape parameters; used to construct exact perturbed families.
struct ShapeParameters {
    enum class Kind { sphere, ellipsoid, torus, custom };
    Kind kind = Kind::custom;
    Vec3 center = Vec3::Zero();
    Vec3 dims = Vec3::Zero();  // sphere: (R,·,·); ellipsoid: (a,b,c); torus: (R,r,·)
    bool inward = false;
};

class AnalyticSurface {
public:
    AnalyticSurface(std::string name, LevelSetGeometry level_set, std::vector<ParametricChart> atlas,
                    double scale, double tube_radius, int quadrature_order = 32,
                    ShapeParameters shape = {});

    const std::string& name() const { return name_; }
    double scale() const { return scale_; }
    double tube_radius() const { return tube_radius_; }
    int quadrature_order() const { return order_; }
    const ShapeParameters& shape() const { return shape_; }
    const LevelSetGeometry& level_set() const { return level_set_; }
    const std::vector<ParametricChart>& atlas() const { return atlas_; }

    /// Same surface with a different Gauss-Legendre order per chart direction.
    AnalyticSurface with_order(int q) const;
    /// Same set with the opposite orientation (phi -> -phi, charts mirrored).
    AnalyticSurface flipped() const;

    /// First-order distance estimate |phi| / |∇phi|.
    double distance_estimate(const Vec3& x) const;
    /// Points within this distance (times scale) count as lying on Γ.
    double surface_tolerance() const { return 1e-10 * scale_; }

    Vec3 normal_at(const Vec3& x) const;
    Mat3 shape_operator_at(const Vec3& x) const;
    SurfacePoint at(const Vec3& x) const;

    /// Tensor-product Gauss-Legendre nodes over every chart.
    const std::vector<QuadratureNode>& quadrature() const { return *nodes_; }

    /// Newton iteration x <- x - phi ∇phi / |∇phi|² onto Γ.
    Vec3 project(const Vec3& x) const;

    Vec3 chart_point(const ChartPoint& c) const { return atlas_.at(c.chart).eval(c.u, c.w).x; }
    std::optional<ChartPoint> locate(const Vec3& x) const;

private:
    std::string name_;
    LevelSetGeometry level_set_;
    std::vector<ParametricChart> atlas_;
    double scale_;
    double tube_radius_;
    int order_;
    ShapeParameters shape_;
    std::shared_ptr<const std::vector<QuadratureNode>> nodes_;
};

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int q, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

AnalyticSurface make_sphere(double radius, const Vec3& center = Vec3::Zero(), int q = 32);
AnalyticSurface make_ellipsoid(double a, double b, double c, const Vec3& center = Vec3::Zero(), int q = 32);
AnalyticSurface make_torus(double major, double minor, const Vec3& center = Vec3::Zero(), int q = 32);

/// Rebuilds a built-in surface from its parameters (orientation included).
AnalyticSurface make_builtin(const ShapeParameters& p, int q = 32);

}  // namespace shapecalc

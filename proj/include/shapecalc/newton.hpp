#pragma once

// Newton-type scheme for boundary functionals: find a scalar normal update u
// with J_v(Γ) + dJ_v(Γ, u n) = 0 for all P1 test functions v, then move every
// vertex by α u_i n_i.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shapecalc/fem.hpp"
#include "shapecalc/functionals.hpp"

namespace shapecalc {

struct NewtonConfig {
    BuiltinFunctional functional = BuiltinFunctional::area;
    int max_iterations = 20;
    double tolerance = 1e-6;   // on the residual dual norm
    double alpha = 1.0;
    /// Shift ε in (A + εM)u = rhs; default 1e-8·tr(M)/dof.
    std::optional<double> epsilon;
    int max_halvings = 5;
    FemOptions fem;
    /// If non-empty, the mesh after each accepted step is written there as OFF.
    std::string dump_dir;
};

struct NewtonIteration {
    int iter = 0;
    double J = 0.0;
    double residual = 0.0;
    double u_inf = 0.0;
    double u_l2 = 0.0;
    int cg_iters = 0;
    double alpha_used = 0.0;
    double epsilon = 0.0;
    double cg_error = 0.0;
    double skew_norm = 0.0;  // ‖(B - Bᵀ)/2‖_F of the assembled second form
};

struct NewtonReport {
    /// One row per step taken; when the iteration limit ends the run, a last
    /// row holds J and the residual of the final mesh (no update).
    std::vector<NewtonIteration> rows;
    std::string termination;  // converged | max_iterations | step_rejected
    std::optional<TriMesh> final_mesh;
};

/// -J_v tested against every hat function.
Vector assemble_rhs(BuiltinFunctional f, const SurfaceFemSpace& fem);

/// Symmetrised second form; skew_norm receives the norm of the discarded part.
SparseMatrix assemble_second_form(BuiltinFunctional f, const SurfaceFemSpace& fem, double* skew_norm = nullptr,
                                  bool parallel = true);

/// sqrt(Σ r_i² / m_i) with lumped masses m_i.
double residual_norm(const SurfaceFemSpace& fem, const Vector& rhs);

struct LinearSolve {
    Vector u;
    int iterations = 0;
    double error = 0.0;
    double epsilon = 0.0;
};

/// (A + εM) u = rhs by Jacobi-preconditioned CG, at most 10·dof iterations.
LinearSolve solve_update(const SparseMatrix& a, const SurfaceFemSpace& fem, const Vector& rhs,
                         std::optional<double> epsilon);

struct NewtonStep {
    TriMesh mesh;
    NewtonIteration row;
    bool accepted = false;
};

NewtonStep newton_step(const TriMesh& mesh, const NewtonConfig& config, int iter = 0);
NewtonReport newton_iterate(const TriMesh& mesh, const NewtonConfig& config);

/// CSV: iter,J,residual,u_inf,u_l2,cg_iters,alpha_used
void write_report_csv(const NewtonReport& report, std::ostream& out);

}  // namespace shapecalc

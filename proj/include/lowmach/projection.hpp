#pragma once

#include "lowmach/operators.hpp"

namespace lowmach {

struct PoissonSettings {
    double rel_tol = 1e-11;
    double abs_tol = 0.0;
    int max_vcycles = 200;
    int pre_smooth = 2;
    int post_smooth = 2;
    int coarsest_cells = 64;
    bool use_cg = false;  // wrap the V-cycle as a CG preconditioner
    // |sum(rhs) dV| above this (relative to ||rhs||_1 dV) is a solvability error
    double compat_tol = 1e-10;

    void validate() const {
        if (rel_tol <= 0.0 && abs_tol <= 0.0)
            throw ConfigError("poisson: rel_tol or abs_tol must be positive");
        if (max_vcycles < 1) throw ConfigError("poisson.max_vcycles must be >= 1");
    }
};

struct PoissonStats {
    int cycles = 0;
    double final_residual = 0.0;
    double rhs_norm = 0.0;
};

// Solve div(rho^{-1} grad phi) = rhs with the natural (periodic / homogeneous
// Neumann) boundary conditions of the staggered grid. The operator nullspace
// is the constants; rhs must be compatible and phi is returned mean-zero.
// Geometric multigrid: red-black Gauss-Seidel smoothing, factor-2 coarsening
// with face-coefficient averaging, dense solve on the coarsest level.
CellField solve_variable_poisson(const FaceVecField& rho_faces, const CellField& rhs,
                                 const PoissonSettings& settings, PoissonStats* stats = nullptr);

// S = (1/rho1_bar - 1/rho2_bar) div F.
CellField compute_S(const FaceVecField& F, const EosParams& p);

struct ProjectionResult {
    FaceVecField m;  // projected momentum (boundary faces passed through)
    FaceVecField v;  // m / rho_faces
    PoissonStats stats;
};

// Affine constraint projection R_S applied to momentum: subtracts
// rho^{-1} grad[L_rho^{-1}(div(m_tilde/rho) - S)] from the velocity so that
// div v = S. Boundary faces of m_tilde must already hold their
// boundary-determined values; they are not modified.
ProjectionResult project_RS(const FaceVecField& m_tilde, const CellField& rho,
                            const FaceVecField& rho_faces, const CellField& S,
                            const PoissonSettings& settings);

}  // namespace lowmach

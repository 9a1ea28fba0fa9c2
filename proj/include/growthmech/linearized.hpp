#pragma once

#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <functional>
#include <vector>

namespace growthmech::linearized {

struct SVKParams {
    double lambda = 1;
    double mu = 1;

    void validate() const {
        if (!(mu > 0)) throw configuration_error("mu must be positive");
        if (!(3 * lambda + 2 * mu > 0)) throw configuration_error("3 lambda + 2 mu must be positive");
    }
};

/// Vector field sampled on a grid (displacements, length units).
struct DisplacementField {
    GridSpec grid;
    std::vector<Eigen::Vector3d> u;
    double solver_residual = 0;  // final relative linear-solve residual
    int iterations = 0;

    const Eigen::Vector3d& at(int i, int j, int k) const { return u[grid.index(i, j, k)]; }
    Eigen::Vector3d& at(int i, int j, int k) { return u[grid.index(i, j, k)]; }
};

/// Symmetric strain eps_ab = (d_b U_a + d_a U_b)/2 by central differences;
/// Cartesian Euclidean ambient so covariant = partial. Boundary nodes copy
/// their nearest interior neighbour.
Lattice<Eigen::Matrix3d> linearized_strain(const DisplacementField& U);

/// Saint-Venant-Kirchhoff moduli at the stress-free Euclidean reference
/// (F = G = g = identity):
///   A^{aA}_b^B = lambda d_{aA} d_{bB} + mu d_{AB} d_{ab} + mu d_{aB} d_{bA}
///   B^{aACD} G_CD = -(3 lambda + 2 mu)/2 d^{aA}
struct SvkTensors {
    double A[3][3][3][3] = {};  // [a][A][b][B]
    Mat B_contraction;          // B^{aACD} G_CD

    /// A^{aA}_b^B d^2 U^b / dX^A dX^B for a Hessian stack H[b](A,B).
    Eigen::Vector3d apply(const std::array<Eigen::Matrix3d, 3>& hessians) const;
};
SvkTensors svk_tensors(const SVKParams& params);

/// Dirichlet problem for the linearized momentum balance
///   (lambda + mu) U_{b,ab} + mu U_{a,bb} = (3 lambda + 2 mu)/2 * dbeta/dx_a
/// on a 3D grid (>= 9 nodes per axis), second-order central discretization
/// (exact on quadratics), matrix-free conjugate gradients on the SPD form.
DisplacementField solve_linearized(const SVKParams& params, const ScalarField& beta,
                                   const GridSpec& grid,
                                   const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>&
                                       dirichlet,
                                   double tol = 1e-12, int max_iterations = 20000);

/// Variations of curvature about the Euclidean base metric for a metric
/// perturbation field dG (all indices down):
///   dRiem_ABCD = -1/2 (dG_BD,AC - dG_BC,AD - dG_AD,BC + dG_AC,BD)
///   dRic_AB    = -1/2 (dG_CD,AB - dG_BC,AD - dG_AD,BC + dG_AB,CD) delta^CD
///   dR         = (dG_BC,AD - dG_AB,CD) delta^AB delta^CD
struct CurvatureVariation {
    Tensor4 riem;  // dR_ABCD
    Mat ricci;     // dR_AB
    double scalar = 0;
};
CurvatureVariation linearized_curvature(const std::function<Mat(const Eigen::Vector3d&)>& dG,
                                        int dim, const Eigen::Vector3d& X, double h = 1e-4);

struct BetaVerdict {
    // 3D: the six conditions (three mixed second derivatives, three trace
    // rows); 2D: only residuals[0] = |lap beta| is populated.
    std::array<double, 6> residuals{};
    double max_residual = 0;
    bool stress_free = false;
};

/// Stress-free growth variation test: beta linear (3D) / harmonic (2D).
/// Residuals are max-abs over the grid nodes.
BetaVerdict stress_free_beta_check(const ScalarField& beta, int dim, const GridSpec& grid,
                                   double tol = 1e-8);

}  // namespace growthmech::linearized

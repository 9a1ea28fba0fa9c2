#pragma once

#include "growthmech/diffgeo.hpp"
#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <functional>
#include <optional>

namespace growthmech::kinematics {

/// Rotationally symmetric deformation (R, Theta[, Phi]) -> (r(R), Theta[, Phi]).
/// `r` carries dr/dR analytically (from the incompressibility ODE when built
/// by the residual solvers). Orientation-preserving: dr/dR > 0.
struct RadialMap {
    Profile r;
    diffgeo::RadialFamily family = diffgeo::RadialFamily::Iso2D;
    double R1 = 0, R2 = 0;  // material boundary radii

    int dim() const { return family == diffgeo::RadialFamily::Iso3D ? 3 : 2; }
    double r1() const { return r(R1); }
    double r2() const { return r(R2); }

    static RadialMap identity(diffgeo::RadialFamily family, double R1, double R2);
};

/// F = diag(r'(R), 1[, 1]) in the radial charts, with its analytic inverse.
/// Throws on dr/dR <= 0.
std::pair<Mat, Mat> deformation_gradient(const RadialMap& map, double R);

/// J = sqrt(det g / det G) * det F with g evaluated at the image point.
double jacobian(const RadialMap& map, const diffgeo::RadialMetric& metric, double R);

struct CauchyGreen {
    Mat lower;  // C_AB = g_ab F^a_A F^b_B
    Mat mixed;  // C^A_B = G^AC C_CB
    double trace_G = 0;  // C_AB G^AB
};
CauchyGreen cauchy_green(const RadialMap& map, const diffgeo::RadialMetric& metric, double R);

/// Orthonormal coframe data for a metric G: f_hat maps coordinate-basis
/// components to orthonormal ones (rows are the hatted index), and
/// f_hat_inv is its transposed inverse, so f_hat * G * f_hat^T = I and
/// G = f_hat_inv^T * f_hat_inv. Canonical gauge: the symmetric SPD root,
/// f_hat = G^{-1/2}; the residual SO(n) freedom (any rotation L gives
/// another valid frame L * f_hat) is fixed deterministically by this choice.
struct Frame {
    Mat f_hat;      // F_hatA^B
    Mat f_hat_inv;  // F^hatA_B
};
Frame orthonormal_frame(const Mat& G);

/// Multiplicative split of F driven by the material metric: Fg = G^{1/2}
/// (the frame inverse) and Fe = g^{1/2} F G^{-1/2}, i.e. F written with
/// orthonormal bases on both legs. With Cartesian ambient (g = I) the split
/// reassembles exactly, F = Fe * Fg; for general g the identity is
/// g^{1/2} F = Fe * Fg. In every chart det Fe = sqrt(det g / det G) det F
/// and tr(Fe^T Fe) = C_AB G^{AB}.
struct GrowthDecomposition {
    Mat F, Fe, Fg;
};
GrowthDecomposition decompose(const Mat& F, const Mat& G);
GrowthDecomposition decompose(const Mat& F, const Mat& G, const Mat& g);

/// Returns (tr_G Gdot, 2 tr Lg) for a time family of metrics, where
/// Lg = Fgdot * Fg^{-1} with Fg = G^{1/2}. The two agree for differentiable
/// families. Time derivatives by central differences with
/// dt = 1e-6 * max(1, |t|), or the supplied analytic Gdot.
std::pair<double, double> growth_trace_identity(const std::function<Mat(double)>& G_of_t, double t,
                                                const std::optional<Mat>& G_dot = std::nullopt);

/// Connection induced by a frame field: Gamma^I_JK = Fg^I_A d_K (Fg^{-1})^A_J,
/// curvature-free in the continuum, generally with torsion. Derivatives by
/// central differences on the lattice.
struct GrowthConnection {
    Lattice<Tensor3> gamma;    // valid on interior nodes (margin 1)
    Lattice<Tensor3> torsion;  // Gamma^I_JK - Gamma^I_KJ
    double curvature_residual = 0;  // max |R^I_JKL| over margin-2 interior
    double max_torsion = 0;         // over margin-1 interior
};
GrowthConnection growth_connection(const Lattice<Mat>& fg_field);

}  // namespace growthmech::kinematics

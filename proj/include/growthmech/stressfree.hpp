#pragma once

#include "growthmech/diffgeo.hpp"
#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <array>

namespace growthmech::stressfree {

/// Conformal growth distribution G = e^{2 Omega} delta on a 2D or 3D chart.
struct ConformalGrowth {
    int dim = 2;
    ScalarField omega;
};

struct Verdict2D {
    double max_laplacian = 0;
    double tolerance = 0;
    bool flat = false;
};

/// 2D flatness: the scalar curvature of e^{2 Omega} delta vanishes iff Omega
/// is harmonic; reports max |lap Omega| over the grid nodes.
Verdict2D check_2d(const ScalarField& omega, const GridSpec& grid,
                   double tol = diffgeo::kAnalyticFlatTol);

struct ConeFamily {
    ConformalGrowth growth;   // e^{2 Omega} = xi R^{2 eta}
    double xi_amplitude = 1;  // the family amplitude (the paper reuses "xi"
    double eta = 0;           // for the deficit angle; distinct names here)
    double cone_parameter = 1;  // c = 1 / (1 + eta)
    double deficit_angle = 0;   // 2 pi (1 - 1/|c|)
};

/// Radial harmonic family Omega = ln(xi)/2 + eta ln R; flat away from the
/// origin, globally a cone with the reported deficit angle. eta = -1 is the
/// degenerate cone.
ConeFamily radial_cone_family(double xi_amplitude, double eta);

struct Verdict3D {
    // Residuals of the six flatness PDEs, max over grid nodes:
    //   [0] Om_,12 - Om_,1 Om_,2        [3] Om_,11 + lap + Om_,2^2 + Om_,3^2
    //   [1] Om_,13 - Om_,1 Om_,3        [4] Om_,22 + lap + Om_,1^2 + Om_,3^2
    //   [2] Om_,23 - Om_,2 Om_,3        [5] Om_,33 + lap + Om_,1^2 + Om_,2^2
    std::array<double, 6> residuals{};
    double max_residual = 0;
    double grid_ricci_residual = 0;  // independent route: flatness_residual of e^{2Om} delta
    double tolerance = 0;
    bool flat = false;
};

/// 3D flatness of e^{2 Omega} delta via the six PDE residuals, cross-checked
/// against the grid-curvature route on the same lattice.
Verdict3D check_3d(const ScalarField& omega, const GridSpec& grid,
                   double tol = diffgeo::kAnalyticFlatTol);

/// Omega = -ln(c0 R^2 + c1 X1 + c2 X2 + c3 X3 + c4). Flat precisely when
/// c1^2 + c2^2 + c3^2 = 4 c0 c4 (e.g. the pure inversion c0 > 0, c = c4 = 0,
/// uniform growth c0 = c = 0, or any recentred inversion). Other parameter
/// choices give constant nonzero curvature: c0, c4 > 0 with c = 0 is
/// sphere-like, and the c1-only half-space field is hyperbolic.
ConformalGrowth log_quadratic_family(double c0, double c1, double c2, double c3, double c4);
bool log_quadratic_is_flat(double c0, double c1, double c2, double c3, double c4,
                           double tol = 1e-12);

/// Radial inversion X -> X / (c |X|^2), i.e. Rtilde = 1/(c R). Involution.
Eigen::Vector3d inversion_map(double c, const Eigen::Vector3d& point);

/// Margin-respecting grid over a box, excluding singular sets by shrinking
/// the box by `margin_fraction` of its extent on each side.
GridSpec punctured_box(int dim, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                       int nodes_per_axis, double margin_fraction = 0.1);

}  // namespace growthmech::stressfree

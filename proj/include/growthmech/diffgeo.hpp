#pragma once

#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <functional>

namespace growthmech::diffgeo {

/// Rotationally symmetric material metric families, all driven by a radial
/// conformal profile Omega(R) (time frozen):
///   Iso2D   : diag(e^{2Om},  R^2 e^{2Om})               on (R, Theta)
///   Aniso2D : diag(e^{2Om},  R^2 e^{-2Om})              on (R, Theta)
///   Iso3D   : e^{2Om} diag(1, R^2, R^2 sin^2 Theta)     on (R, Theta, Phi)
/// Iso3D uses the standard spherical chart with Theta the polar angle.
enum class RadialFamily { Iso2D, Aniso2D, Iso3D };

class RadialMetric {
  public:
    RadialMetric(RadialFamily family, Profile omega, double r_min, double r_max);

    RadialFamily family() const { return family_; }
    const Profile& omega() const { return omega_; }
    int dim() const { return family_ == RadialFamily::Iso3D ? 3 : 2; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }

    bool in_domain(double r) const { return r >= r_min_ && r <= r_max_; }
    void require_in_domain(const Eigen::Vector3d& point) const;

    Mat components(const Eigen::Vector3d& point) const;  // G_AB
    Mat inverse(const Eigen::Vector3d& point) const;     // G^AB
    double det(const Eigen::Vector3d& point) const;

  private:
    RadialFamily family_;
    Profile omega_;
    double r_min_, r_max_;
};

/// Ambient (spatial) metric of the chart a RadialFamily maps into: polar
/// plane for the 2D families, spherical coordinates for Iso3D. `point` is the
/// image point (r, theta[, phi]).
Mat ambient_metric(RadialFamily family, const Eigen::Vector3d& point);

/// General metric sampled on a uniform Cartesian lattice in chart
/// coordinates. Symmetric positive-definite at every node.
class GridMetric {
  public:
    GridMetric(GridSpec spec, std::vector<Mat> values);

    static GridMetric sample(const GridSpec& spec,
                             const std::function<Mat(const Eigen::Vector3d&)>& g);
    /// G = e^{2 Omega} * delta.
    static GridMetric conformal(const GridSpec& spec, const ScalarField& omega);

    const GridSpec& spec() const { return spec_; }
    int dim() const { return spec_.dim; }
    const Mat& node(int i, int j, int k = 0) const { return values_[spec_.index(i, j, k)]; }

    /// Nearest node of a chart point; throws domain_error when the point is
    /// farther than tol*h from any node or outside the lattice.
    std::array<int, 3> locate(const Eigen::Vector3d& point, double tol = 1e-9) const;

  private:
    GridSpec spec_;
    std::vector<Mat> values_;
};

struct CurvatureReport {
    Tensor4 riemann;        // R^A_{BCD}
    Mat ricci;              // R_AB
    double scalar = 0;      // R_AB G^{AB}
    double max_abs_riemann = 0;
    double max_abs_ricci = 0;
};

struct FdOptions {
    // 4th-order (Richardson) stencils instead of plain central differences;
    // needs twice the boundary margin on grids.
    bool richardson = false;
};

/// Levi-Civita connection coefficients Gamma^A_{BC}. Closed forms for the
/// radial families; central differences of G for grids (>= 1 cell margin,
/// or 2 with Richardson).
Tensor3 christoffel(const RadialMetric& metric, const Eigen::Vector3d& point);
Tensor3 christoffel(const GridMetric& metric, const Eigen::Vector3d& point, FdOptions fd = {});

/// Full curvature via R^a_{bcd} = d_c Gamma^a_{bd} - d_d Gamma^a_{bc}
///                              + Gamma^a_{ce} Gamma^e_{bd} - Gamma^a_{de} Gamma^e_{bc}.
/// Grid queries need >= 2 cells of margin (4 with Richardson).
CurvatureReport riemann(const RadialMetric& metric, const Eigen::Vector3d& point);
CurvatureReport riemann(const GridMetric& metric, const Eigen::Vector3d& point, FdOptions fd = {});

std::pair<Mat, double> ricci_scalar(const RadialMetric& metric, const Eigen::Vector3d& point);
std::pair<Mat, double> ricci_scalar(const GridMetric& metric, const Eigen::Vector3d& point,
                                    FdOptions fd = {});

/// Flatness residual over the interior of the lattice: max |scalar curvature|
/// in 2D (sufficient there), max |R_AB| in 3D. Needs >= 5 nodes per axis.
double flatness_residual(const GridMetric& metric, FdOptions fd = {});

/// Default verdict tolerances: fixed for analytic paths, h^2-scaled for grids.
inline constexpr double kAnalyticFlatTol = 1e-6;
double grid_flat_tolerance(const GridMetric& metric);

}  // namespace growthmech::diffgeo

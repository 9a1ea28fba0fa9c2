#pragma once

#include "growthmech/kinematics.hpp"
#include "growthmech/numerics.hpp"
#include "growthmech/scalar_field.hpp"

#include <functional>
#include <vector>

namespace growthmech::residual {

enum class GrowthExample { AnnulusIso, AnnulusAniso, SphereIso };
enum class BoundaryMode { PaperExact, TractionFree };

diffgeo::RadialFamily family_of(GrowthExample e);

struct GrowthBVP {
    GrowthExample example = GrowthExample::AnnulusIso;
    RadialTimeField omega;
    double time = 0;
    double R1 = 1, R2 = 2;  // 0 < R1 < R2
    double mu = 1;          // shear modulus > 0
    BoundaryMode mode = BoundaryMode::PaperExact;
    int grid_n = 512;
    // Mass ODE uses dOmega/dt; this switches to the literal dOmega/dR
    // coefficient as printed.
    bool literal_paper_mass_rate = false;

    void validate() const;
    Profile omega_profile() const { return omega.at_time(time); }
    diffgeo::RadialMetric metric() const;
};

/// Closed-form incompressible map for a trial inner radius:
///   AnnulusIso : r^2 = r1^2 + int 2 xi e^{2 Om},   r' = R e^{2 Om} / r
///   AnnulusAniso: r = sqrt(R^2 + C), C = r1^2 - R1^2, r' = R / r
///   SphereIso  : r^3 = r1^3 + int 3 xi^2 e^{3 Om}, r' = (R^2/r^2) e^{3 Om}
/// Throws geometry_error when the radicand degenerates on the domain.
kinematics::RadialMap solve_incompressibility(const GrowthBVP& bvp, double trial_inner);

/// The radial-balance integrand p'(R) for the example, exposed for oracle
/// integration routes.
std::function<double(double)> pressure_integrand(const GrowthBVP& bvp,
                                                 const kinematics::RadialMap& map);

/// Pressure as a cumulative quadrature of the example's radial-balance
/// integrand, anchored p(R1) = anchor.
class PressureProfile {
  public:
    PressureProfile() = default;
    PressureProfile(const GrowthBVP& bvp, const kinematics::RadialMap& map, double anchor = 0.0);

    double operator()(double R) const { return anchor_ + cumulative_(R); }
    double integrand(double R) const { return integrand_(R); }
    double anchor() const { return anchor_; }
    void shift_anchor(double anchor) { anchor_ = anchor; }

  private:
    std::function<double(double)> integrand_;
    numerics::CumulativeIntegral cumulative_;
    double anchor_ = 0;
};

PressureProfile pressure_profile(const GrowthBVP& bvp, const kinematics::RadialMap& map);

/// First Piola-Kirchhoff components. For the sphere, P_phPh is the reduced
/// azimuthal component sin^2(Theta) * P^{phi Phi} (equal to P^{theta Theta}
/// at the solution; Theta-independent).
struct StressSample {
    double P_rR = 0;
    double P_thTh = 0;
    double P_phPh = 0;
};

/// Closed-form per-example stress formulas.
StressSample stresses(const GrowthBVP& bvp, const kinematics::RadialMap& map, double p, double R);
/// Independent route: P^{aA} = 2 mu F^a_B G^{AB} - p (F^{-1})^A_b g^{ab}.
StressSample stresses_constitutive(const GrowthBVP& bvp, const kinematics::RadialMap& map,
                                   double p, double R);

struct RadialSolution {
    GrowthExample example = GrowthExample::AnnulusIso;
    BoundaryMode mode = BoundaryMode::PaperExact;
    std::vector<double> R, r, p, P_rR, P_thTh, P_phPh, J, momentum_residual;
    double constant = 0;  // solved r1 (iso / sphere) or C (aniso)
    double momentum_residual_norm = 0;  // max |P^{rA}|_A| over interior nodes
    double hoop_residual_norm = 0;      // assembled P^{theta A}|_A (and phi row, sphere)
};

/// Full solve: finds the free boundary constant per the boundary mode,
/// assembles stresses on the grid and runs the independent momentum check
/// (FD stress derivative + christoffel assembly).
///   PaperExact  : p(R1) = 0, constant from p(R2) = 0.
///   TractionFree: P^{rR}(R1) = 0 fixes the anchor, constant from P^{rR}(R2) = 0.
RadialSolution solve_bvp(const GrowthBVP& bvp);

/// Pointwise-in-R mass balance, RK4 in t:
///   AnnulusIso : drho/dt + 2 w rho = S_m
///   AnnulusAniso: drho/dt         = S_m
///   SphereIso  : drho/dt + 3 w rho = S_m
/// with w = dOmega/dt (or dOmega/dR under literal_paper_mass_rate).
struct MassDensityResult {
    std::vector<double> R;      // sample radii
    std::vector<double> t;      // time nodes
    std::vector<std::vector<double>> rho;  // rho[it][ir]
};
MassDensityResult mass_density(const GrowthBVP& bvp, double rho0_initial,
                               const std::function<double(double, double)>& S_m, double t0,
                               double t1, int steps, int r_samples = 9);

}  // namespace growthmech::residual

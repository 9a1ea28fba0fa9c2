#pragma once

#include "growthmech/types.hpp"

#include <functional>
#include <vector>

namespace growthmech::evolution {

/// State of the material-metric kinetic flow at one material point.
struct EvolutionState {
    Mat G;             // symmetric positive-definite
    double rho0 = 1;   // > 0
    double t = 0;
    double beta_d = 1;  // dissipation coefficient beta > 0 (omega = beta/2)

    void validate() const;
};

/// Free energy density Psi(G, F, g) with dPsi/dG (a symmetric 2-index object
/// with upper indices). FD fallback uses symmetrized matrix perturbations of
/// size fd_scale * ||G||, so the symmetry invariant holds by construction.
class FreeEnergy {
  public:
    using PsiFn = std::function<double(const Mat& G, const Mat& F, const Mat& g)>;
    using DPsiFn = std::function<Mat(const Mat& G, const Mat& F, const Mat& g)>;

    FreeEnergy() = default;
    explicit FreeEnergy(PsiFn psi) : psi_(std::move(psi)) {}
    FreeEnergy(PsiFn psi, DPsiFn dpsi) : psi_(std::move(psi)), dpsi_(std::move(dpsi)) {}

    /// Psi = mu C_AB G^{AB}; dPsi/dG_MN = -mu (G^{-1} C G^{-1})^{MN}.
    static FreeEnergy neo_hookean_trace(double mu);

    double psi(const Mat& G, const Mat& F, const Mat& g) const { return psi_(G, F, g); }
    Mat dpsi_dG(const Mat& G, const Mat& F, const Mat& g) const;

    double fd_scale = 1e-6;

  private:
    PsiFn psi_;
    DPsiFn dpsi_;
};

/// Kinetic law Gdot^sharp = -(rho0 / beta) dPsi/dG, returned with indices
/// lowered: Gdot_MN = G_MA Gdot^{AB} G_BN. Symmetric by construction; a
/// non-symmetric dPsi/dG beyond tolerance raises constitutive_error.
Mat metric_rate(const EvolutionState& state, const FreeEnergy& psi, const Mat& F, const Mat& g);

/// Joint RK4 step of (G, rho0):
///   Gdot from the kinetic law, rho0dot = S_m - (1/2) rho0 tr_G Gdot.
/// Re-verifies SPD afterwards; violation raises numeric_error (halve dt and
/// retry at the call site).
EvolutionState step(const EvolutionState& state, const FreeEnergy& psi,
                    const std::function<Mat(double)>& F_of_t, const Mat& g,
                    const std::function<double(double)>& S_m, double dt);

struct EntropyProduction {
    double quadratic = 0;   // beta tr Gdot^2 - thermal
    double constraint = 0;  // -rho0 dPsi/dG : Gdot - thermal
};

/// Both evaluations of the entropy production rate; they agree when Gdot
/// comes from metric_rate. `thermal_term` is the optional user-supplied
/// (1/Theta) dTheta . Q scalar (isothermal default 0).
EntropyProduction entropy_production(const EvolutionState& state, const Mat& G_dot,
                                     const FreeEnergy& psi, const Mat& F, const Mat& g,
                                     double thermal_term = 0.0);

struct TrajectorySample {
    double t = 0;
    Mat G;
    double rho0 = 0;
    double tr_G_Gdot = 0;
    double entropy_rate = 0;   // beta tr Gdot^2
    double det_G = 0;
    double volume_ratio = 0;   // sqrt(det G / det G0)
};

/// Fixed-step integration over [state.t, t_end] with guard rails: stops with
/// numeric_error if det G exceeds max_conformal_factor^dim times the initial
/// determinant (the trace free energy inflates without bound).
std::vector<TrajectorySample> evolve(EvolutionState state, const FreeEnergy& psi,
                                     const std::function<Mat(double)>& F_of_t, const Mat& g,
                                     const std::function<double(double)>& S_m, double t_end,
                                     double dt, double max_conformal_factor = 1e6);

}  // namespace growthmech::evolution

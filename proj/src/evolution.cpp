#include "growthmech/evolution.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace growthmech::evolution {

namespace {
bool spd(const Mat& G) {
    if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1 + G.cwiseAbs().maxCoeff()))
        return false;
    Eigen::LLT<Mat> llt(G);
    return llt.info() == Eigen::Success;
}
}  // namespace

void EvolutionState::validate() const {
    if (!spd(G)) throw definiteness_error("evolution state metric is not SPD");
    // rho0 = 0 is admitted as the degenerate no-mass limit (frozen metric);
    // the integrator keeps positive initial densities positive.
    if (!(rho0 >= 0)) throw configuration_error("evolution state density must be nonnegative");
    if (!(beta_d > 0)) throw configuration_error("dissipation coefficient must be positive");
}

FreeEnergy FreeEnergy::neo_hookean_trace(double mu) {
    return FreeEnergy(
        [mu](const Mat& G, const Mat& F, const Mat& g) {
            const Mat C = F.transpose() * g * F;
            return mu * (G.llt().solve(C)).trace();
        },
        [mu](const Mat& G, const Mat& F, const Mat& g) {
            const Mat C = F.transpose() * g * F;
            const Mat Ginv = G.inverse();
            return (-mu * Ginv * C * Ginv).eval();
        });
}

Mat FreeEnergy::dpsi_dG(const Mat& G, const Mat& F, const Mat& g) const {
    if (dpsi_) return dpsi_(G, F, g);
    const int n = static_cast<int>(G.rows());
    const double h = fd_scale * G.norm();
    Mat d = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Mat dG = Mat::Zero(n, n);
            dG(a, b) = dG(b, a) = 1.0;  // symmetrized direction
            const double dv = (psi_(G + h * dG, F, g) - psi_(G - h * dG, F, g)) / (2 * h);
            // dv = dPsi:dG picks up both off-diagonal slots
            d(a, b) = d(b, a) = (a == b) ? dv : dv / 2;
        }
    return d;
}

Mat metric_rate(const EvolutionState& state, const FreeEnergy& psi, const Mat& F, const Mat& g) {
    state.validate();
    const Mat dPsi = psi.dpsi_dG(state.G, F, g);
    const double scale = std::max(1.0, dPsi.cwiseAbs().maxCoeff());
    if ((dPsi - dPsi.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw constitutive_error("dPsi/dG is not symmetric");
    const Mat Gdot_sharp = -(state.rho0 / state.beta_d) * dPsi;
    return state.G * Gdot_sharp * state.G;
}

EvolutionState step(const EvolutionState& state, const FreeEnergy& psi,
                    const std::function<Mat(double)>& F_of_t, const Mat& g,
                    const std::function<double(double)>& S_m, double dt) {
    if (!(dt > 0)) throw configuration_error("step needs dt > 0");
    state.validate();
    const int n = static_cast<int>(state.G.rows());

    struct S {
        Mat G;
        double rho;
    };
    auto axpy = [](const S& y, double a, const S& k) -> S { return {y.G + a * k.G, y.rho + a * k.rho}; };
    auto deriv = [&](double t, const S& y) -> S {
        EvolutionState es{y.G, y.rho, t, state.beta_d};
        const Mat Gdot = metric_rate(es, psi, F_of_t(t), g);
        const double tr = y.G.llt().solve(Gdot).trace();
        return {Gdot, S_m(t) - 0.5 * y.rho * tr};
    };
    // RK4
    const double t = state.t;
    const S y{state.G, state.rho0};
    const S k1 = deriv(t, y);
    const S k2 = deriv(t + dt / 2, axpy(y, dt / 2, k1));
    const S k3 = deriv(t + dt / 2, axpy(y, dt / 2, k2));
    const S k4 = deriv(t + dt, axpy(y, dt, k3));
    const S ynext{y.G + (dt / 6.0) * (k1.G + 2 * k2.G + 2 * k3.G + k4.G),
                  y.rho + (dt / 6.0) * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho)};

    EvolutionState out{ynext.G, ynext.rho, t + dt, state.beta_d};
    if (!spd(out.G) || !(out.rho0 > 0) || !out.G.allFinite())
        throw numeric_error("metric left the SPD cone; halve dt and retry");
    (void)n;
    return out;
}

EntropyProduction entropy_production(const EvolutionState& state, const Mat& G_dot,
                                     const FreeEnergy& psi, const Mat& F, const Mat& g,
                                     double thermal_term) {
    state.validate();
    const Mat Ginv = state.G.inverse();
    EntropyProduction out;
    // tr Gdot^2 = Gdot_AB Gdot_CD G^{AC} G^{BD}
    out.quadratic = state.beta_d * (Ginv * G_dot * Ginv * G_dot).trace() - thermal_term;
    const Mat dPsi = psi.dpsi_dG(state.G, F, g);
    out.constraint = -state.rho0 * (dPsi.array() * G_dot.array()).sum() - thermal_term;
    return out;
}

std::vector<TrajectorySample> evolve(EvolutionState state, const FreeEnergy& psi,
                                     const std::function<Mat(double)>& F_of_t, const Mat& g,
                                     const std::function<double(double)>& S_m, double t_end,
                                     double dt, double max_conformal_factor) {
    state.validate();
    const double det0 = state.G.determinant();
    const int n = static_cast<int>(state.G.rows());
    const double det_guard = det0 * std::pow(max_conformal_factor, n);

    std::vector<TrajectorySample> traj;
    auto record = [&](const EvolutionState& s) {
        TrajectorySample smp;
        smp.t = s.t;
        smp.G = s.G;
        smp.rho0 = s.rho0;
        const Mat Gdot = metric_rate(s, psi, F_of_t(s.t), g);
        smp.tr_G_Gdot = s.G.llt().solve(Gdot).trace();
        smp.entropy_rate = entropy_production(s, Gdot, psi, F_of_t(s.t), g).quadratic;
        smp.det_G = s.G.determinant();
        smp.volume_ratio = std::sqrt(smp.det_G / det0);
        traj.push_back(std::move(smp));
    };
    record(state);
    while (state.t < t_end - 1e-12) {
        const double h = std::min(dt, t_end - state.t);
        state = step(state, psi, F_of_t, g, S_m, h);
        if (state.G.determinant() > det_guard)
            throw numeric_error("conformal guard tripped: metric inflated beyond the cap");
        record(state);
    }
    return traj;
}

}  // namespace growthmech::evolution

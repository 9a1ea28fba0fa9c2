#include "growthmech/evolution.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace growthmech;
using namespace growthmech::evolution;

namespace {
std::mt19937_64 rng(777);

Mat random_spd(int n) {
    std::normal_distribution<double> N(0, 1);
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = N(rng);
    return a.transpose() * a + 0.4 * Mat::Identity(n, n);
}
}  // namespace

TEST_CASE("metric rate for the trace free energy") {
    const double mu = 1.3, beta = 2.0, rho = 0.8;
    const FreeEnergy psi = FreeEnergy::neo_hookean_trace(mu);
    const Mat g = Mat::Identity(3, 3);

    // Gdot = (mu rho / beta) C
    const Mat G = random_spd(3);
    const Mat F = random_spd(3);  // any invertible works
    const Mat C = F.transpose() * g * F;
    EvolutionState s{G, rho, 0.0, beta};
    const Mat Gdot = metric_rate(s, psi, F, g);
    CHECK((Gdot - (mu * rho / beta) * C).cwiseAbs().maxCoeff() < 1e-10);

    // at the reference C = G: uniform conformal inflation rate
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    const Mat Fref = es.operatorSqrt();  // C = F^T F = G
    const Mat Gdot_ref = metric_rate(s, psi, Fref, g);
    CHECK((Gdot_ref - (mu * rho / beta) * G).cwiseAbs().maxCoeff() < 1e-10);

    // rho0 = 0 freezes the metric
    EvolutionState s0{G, 0.0, 0.0, beta};
    CHECK(metric_rate(s0, psi, F, g).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

    // FD fallback reproduces the analytic derivative
    const FreeEnergy psi_fd([mu](const Mat& G_, const Mat& F_, const Mat& g_) {
        return mu * (G_.inverse() * F_.transpose() * g_ * F_).trace();
    });
    const Mat Gdot_fd = metric_rate(s, psi_fd, F, g);
    CHECK((Gdot_fd - Gdot).cwiseAbs().maxCoeff() < 1e-6 * Gdot.cwiseAbs().maxCoeff());
}

TEST_CASE("non-symmetric energy derivative is rejected") {
    FreeEnergy bad([](const Mat&, const Mat&, const Mat&) { return 0.0; },
                   [](const Mat& G, const Mat&, const Mat&) {
                       Mat d = Mat::Zero(G.rows(), G.cols());
                       d(0, 1) = 1.0;  // not symmetric
                       return d;
                   });
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(metric_rate(s, bad, Mat::Identity(2, 2), Mat::Identity(2, 2)),
                    constitutive_error);
}

TEST_CASE("step: pure source accumulates linearly when the metric is frozen") {
    const FreeEnergy frozen([](const Mat&, const Mat&, const Mat&) { return 0.0; },
                            [](const Mat& G, const Mat&, const Mat&) {
                                return Mat::Zero(G.rows(), G.cols()).eval();
                            });
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 1.0};
    const double sigma = 0.7, dt = 0.01;
    const auto next = step(s, frozen, [](double) { return Mat::Identity(2, 2).eval(); },
                           Mat::Identity(2, 2), [sigma](double) { return sigma; }, dt);
    CHECK(next.rho0 == doctest::Approx(1.0 + sigma * dt).epsilon(1e-14));
    CHECK((next.G - s.G).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("step: density follows d(ln rho)/dt = -tr_G Gdot / 2") {
    const FreeEnergy psi = FreeEnergy::neo_hookean_trace(1.0);
    const Mat g = Mat::Identity(2, 2);
    auto F = [](double) { return Mat::Identity(2, 2).eval(); };
    auto no_src = [](double) { return 0.0; };
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 1.0};
    const double dt = 1e-3;
    // single step vs two half steps: both 4th order, difference O(dt^5)
    const auto one = step(s, psi, F, g, no_src, dt);
    const auto half = step(step(s, psi, F, g, no_src, dt / 2), psi, F, g, no_src, dt / 2);
    CHECK(std::abs(one.rho0 - half.rho0) < 1e-14);
    CHECK((one.G - half.G).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("entropy production: both routes agree and stay nonnegative") {
    const FreeEnergy psi = FreeEnergy::neo_hookean_trace(0.9);
    const Mat g = Mat::Identity(3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat G = random_spd(3), F = random_spd(3);
        EvolutionState s{G, 0.5 + 0.1 * trial, 0.0, 1.7};
        const Mat Gdot = metric_rate(s, psi, F, g);
        const auto lam = entropy_production(s, Gdot, psi, F, g);
        CHECK(lam.quadratic >= 0.0);
        CHECK(lam.quadratic == doctest::Approx(lam.constraint).epsilon(1e-10));
    }
    // zero rate, isothermal: no production
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 1.0};
    const auto lam0 = entropy_production(s, Mat::Zero(2, 2), psi, Mat::Identity(2, 2),
                                         Mat::Identity(2, 2));
    CHECK(lam0.quadratic == doctest::Approx(0.0));
    // the optional thermal term shifts both routes identically
    const auto lam_th = entropy_production(s, Mat::Zero(2, 2), psi, Mat::Identity(2, 2),
                                           Mat::Identity(2, 2), 0.25);
    CHECK(lam_th.quadratic == doctest::Approx(-0.25));
    CHECK(lam_th.constraint == doctest::Approx(-0.25));
}

TEST_CASE("trajectory: conformal inflation conserves mass and satisfies the trace law") {
    // F frozen at the initial reference: C = G0 = I, so the flow stays
    // conformal, G = c(t) I
    const FreeEnergy psi = FreeEnergy::neo_hookean_trace(1.0);
    const Mat g = Mat::Identity(2, 2);
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 1.0};
    const auto traj = evolve(s, psi, [](double) { return Mat::Identity(2, 2).eval(); }, g,
                             [](double) { return 0.0; }, 0.5, 1e-3);
    CHECK(traj.size() == 501);
    for (const auto& smp : traj) {
        // entropy production never negative along the flow
        CHECK(smp.entropy_rate >= 0.0);
        // G remains conformal
        CHECK(std::abs(smp.G(0, 1)) < 1e-14);
        CHECK(smp.G(0, 0) == doctest::Approx(smp.G(1, 1)).epsilon(1e-13));
        // with S_m = 0 the mass form rho dV is conserved:
        // rho(t) * sqrt(det G / det G0) = rho0
        CHECK(smp.rho0 * smp.volume_ratio == doctest::Approx(1.0).epsilon(1e-8));
    }
    // volume element ratio follows e^{N Omega} with e^{2 Omega} = G_00
    const auto& last = traj.back();
    const double omega = 0.5 * std::log(last.G(0, 0));
    CHECK(last.volume_ratio == doctest::Approx(std::exp(2 * omega)).epsilon(1e-12));
}

TEST_CASE("trajectory guard rails") {
    const FreeEnergy psi = FreeEnergy::neo_hookean_trace(1.0);
    const Mat g = Mat::Identity(2, 2);
    EvolutionState s{Mat::Identity(2, 2), 1.0, 0.0, 0.05};  // fast inflation
    CHECK_THROWS_AS(evolve(s, psi, [](double) { return Mat::Identity(2, 2).eval(); }, g,
                           [](double) { return 0.0; }, 50.0, 0.01, 1.5),
                    numeric_error);
    EvolutionState bad{Mat::Identity(2, 2), -1.0, 0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), configuration_error);
}

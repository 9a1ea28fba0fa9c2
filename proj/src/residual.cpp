#include "growthmech/residual.hpp"
#include <limits>

#include <cmath>
#include <memory>
#include <sstream>

namespace growthmech::residual {

diffgeo::RadialFamily family_of(GrowthExample e) {
    switch (e) {
        case GrowthExample::AnnulusIso: return diffgeo::RadialFamily::Iso2D;
        case GrowthExample::AnnulusAniso: return diffgeo::RadialFamily::Aniso2D;
        case GrowthExample::SphereIso: return diffgeo::RadialFamily::Iso3D;
    }
    throw configuration_error("unknown growth example");
}

void GrowthBVP::validate() const {
    if (!(0 < R1 && R1 < R2)) throw configuration_error("geometry needs 0 < R1 < R2");
    if (!(mu > 0)) throw configuration_error("shear modulus must be positive");
    if (grid_n < 8) throw configuration_error("grid must have at least 8 nodes");
}

diffgeo::RadialMetric GrowthBVP::metric() const {
    return diffgeo::RadialMetric(family_of(example), omega_profile(), R1, R2);
}

// ---------------------------------------------------------------------------
// Incompressibility

namespace {

// The growth integral is independent of the trial inner radius; cache it so
// the boundary root-find can re-map cheaply.
struct IncompressibleFamily {
    GrowthExample example;
    Profile omega;
    double R1, R2;
    std::shared_ptr<numerics::CumulativeIntegral> cum;  // unused for the aniso annulus

    explicit IncompressibleFamily(const GrowthBVP& bvp)
        : example(bvp.example), omega(bvp.omega_profile()), R1(bvp.R1), R2(bvp.R2) {
        const Profile om = omega;
        if (example == GrowthExample::AnnulusIso)
            cum = std::make_shared<numerics::CumulativeIntegral>(
                [om](double xi) { return 2 * xi * std::exp(2 * om(xi)); }, R1, R2);
        else if (example == GrowthExample::SphereIso)
            cum = std::make_shared<numerics::CumulativeIntegral>(
                [om](double xi) { return 3 * xi * xi * std::exp(3 * om(xi)); }, R1, R2);
    }

    kinematics::RadialMap map_for(double trial_inner) const {
        if (!(trial_inner > 0)) throw geometry_error("trial inner radius must be positive");
        kinematics::RadialMap map;
        map.family = family_of(example);
        map.R1 = R1;
        map.R2 = R2;
        const Profile om = omega;
        switch (example) {
            case GrowthExample::AnnulusIso: {
                const auto c = cum;
                const double r1sq = trial_inner * trial_inner;
                auto rfun = [c, r1sq](double R) {
                    const double s = r1sq + (*c)(R);
                    if (!(s > 0)) throw geometry_error("degenerate growth: r^2 <= 0");
                    return std::sqrt(s);
                };
                auto rprime = [om, rfun](double R) { return R * std::exp(2 * om(R)) / rfun(R); };
                // r'' from differentiating the ODE r r' = R e^{2Om}.
                auto rpp = [om, rfun, rprime](double R) {
                    const double r = rfun(R), rp = rprime(R);
                    return (std::exp(2 * om(R)) * (1 + 2 * R * om.d(R)) - rp * rp) / r;
                };
                map.r = Profile(rfun, rprime, rpp);
                break;
            }
            case GrowthExample::AnnulusAniso: {
                const double C = trial_inner * trial_inner - R1 * R1;
                auto rfun = [C](double R) {
                    const double s = R * R + C;
                    if (!(s > 0)) throw geometry_error("degenerate growth: R^2 + C <= 0");
                    return std::sqrt(s);
                };
                map.r = Profile(
                    rfun, [rfun](double R) { return R / rfun(R); },
                    [rfun, C](double R) {
                        const double r = rfun(R);
                        return C / (r * r * r);
                    });
                break;
            }
            case GrowthExample::SphereIso: {
                const auto c = cum;
                const double r1cb = trial_inner * trial_inner * trial_inner;
                auto rfun = [c, r1cb](double R) {
                    const double s = r1cb + (*c)(R);
                    if (!(s > 0)) throw geometry_error("degenerate growth: r^3 <= 0");
                    return std::cbrt(s);
                };
                auto rprime = [om, rfun](double R) {
                    const double r = rfun(R);
                    return R * R * std::exp(3 * om(R)) / (r * r);
                };
                auto rpp = [om, rfun, rprime](double R) {
                    const double r = rfun(R), rp = rprime(R);
                    const double e3 = std::exp(3 * om(R));
                    return (R * e3 * (2 + 3 * R * om.d(R)) - 2 * R * R * e3 * rp / r) / (r * r);
                };
                map.r = Profile(rfun, rprime, rpp);
                break;
            }
        }
        return map;
    }
};

}  // namespace

kinematics::RadialMap solve_incompressibility(const GrowthBVP& bvp, double trial_inner) {
    bvp.validate();
    return IncompressibleFamily(bvp).map_for(trial_inner);
}

// ---------------------------------------------------------------------------
// Pressure

std::function<double(double)> pressure_integrand(const GrowthBVP& bvp,
                                                 const kinematics::RadialMap& map) {
    const Profile om = bvp.omega_profile();
    const double mu = bvp.mu;
    const Profile r = map.r;
    switch (bvp.example) {
        case GrowthExample::AnnulusIso:
            return [om, mu, r](double R) {
                const double rr = r(R), e2 = std::exp(2 * om(R));
                return (2 * mu * R / (rr * rr)) * e2 *
                       (2 * (1 + R * om.d(R)) - (R * R / (rr * rr)) * e2 -
                        (rr * rr / (R * R)) / e2);
            };
        case GrowthExample::AnnulusAniso:
            return [om, mu, r](double R) {
                const double rr = r(R), e2 = std::exp(2 * om(R));
                return (2 * mu * R / (rr * rr)) / e2 *
                       (2 - 2 * R * om.d(R) - (rr * rr / (R * R)) * e2 * e2 -
                        (R * R) / (rr * rr));
            };
        case GrowthExample::SphereIso:
            // Bracket term 2 Om' per the radial balance; a single Om' (or the
            // stray double minus) does not satisfy it.
            return [om, mu, r](double R) {
                const double rr = r(R), e1 = std::exp(om(R));
                const double e3 = e1 * e1 * e1, e4 = e3 * e1;
                const double R2 = R * R, r3 = rr * rr * rr;
                return (4 * mu * R2 * R2 / (r3 * rr)) * e4 *
                       (2 / R + 2 * om.d(R) - (R2 / r3) * e3 - (r3 / (R2 * R2)) / e3);
            };
    }
    throw configuration_error("unknown growth example");
}

PressureProfile::PressureProfile(const GrowthBVP& bvp, const kinematics::RadialMap& map,
                                 double anchor)
    : anchor_(anchor) {
    integrand_ = pressure_integrand(bvp, map);
    cumulative_ = numerics::CumulativeIntegral(integrand_, bvp.R1, bvp.R2, 1024);
}

PressureProfile pressure_profile(const GrowthBVP& bvp, const kinematics::RadialMap& map) {
    return PressureProfile(bvp, map);
}

// ---------------------------------------------------------------------------
// Stresses

StressSample stresses(const GrowthBVP& bvp, const kinematics::RadialMap& map, double p,
                      double R) {
    const Profile om = bvp.omega_profile();
    const double mu = bvp.mu, rr = map.r(R);
    StressSample s;
    switch (bvp.example) {
        case GrowthExample::AnnulusIso: {
            const double e2 = std::exp(2 * om(R));
            s.P_rR = 2 * mu * R / rr - p * (rr / R) / e2;
            s.P_thTh = (2 * mu / (R * R)) / e2 - p / (rr * rr);
            break;
        }
        case GrowthExample::AnnulusAniso: {
            const double e2 = std::exp(2 * om(R));
            s.P_rR = 2 * mu * (R / rr) / e2 - p * rr / R;
            s.P_thTh = 2 * mu * e2 / (R * R) - p / (rr * rr);
            break;
        }
        case GrowthExample::SphereIso: {
            const double e1 = std::exp(om(R)), e2 = e1 * e1, e3 = e2 * e1;
            s.P_rR = 2 * mu * (R * R / (rr * rr)) * e1 - p * (rr * rr / (R * R)) / e3;
            s.P_thTh = (2 * mu / (R * R)) / e2 - p / (rr * rr);
            s.P_phPh = s.P_thTh;
            break;
        }
    }
    return s;
}

StressSample stresses_constitutive(const GrowthBVP& bvp, const kinematics::RadialMap& map,
                                   double p, double R) {
    const auto metric = bvp.metric();
    auto [F, Finv] = kinematics::deformation_gradient(map, R);
    const int n = map.dim();
    const Eigen::Vector3d Xm(R, M_PI / 2, 0), Xs(map.r(R), M_PI / 2, 0);
    const Mat Ginv = metric.inverse(Xm);
    const Mat ginv = diffgeo::ambient_metric(map.family, Xs).inverse();
    const Mat P = 2 * bvp.mu * F * Ginv - p * ginv * Finv.transpose();
    StressSample s;
    s.P_rR = P(0, 0);
    s.P_thTh = P(1, 1);
    if (n == 3) s.P_phPh = P(2, 2);  // reduced component: evaluated at the equator
    return s;
}

// ---------------------------------------------------------------------------
// Full solve

namespace {

// Assembled radial balance P^{rA}|_A on interior nodes: FD stress derivative
// (five-point, 4th order) plus christoffel trace from diffgeo plus
// ambient-connection terms.
std::vector<double> momentum_residual_radial(const GrowthBVP& bvp,
                                             const kinematics::RadialMap& map,
                                             const std::vector<double>& R,
                                             const std::vector<StressSample>& S) {
    const auto metric = bvp.metric();
    const int n = static_cast<int>(R.size());
    const bool sphere = bvp.example == GrowthExample::SphereIso;
    std::vector<double> resid(n, 0.0);
    for (int i = 2; i + 2 < n; ++i) {
        const double h = R[i + 1] - R[i];
        const double dPrR = (8 * (S[i + 1].P_rR - S[i - 1].P_rR) -
                             (S[i + 2].P_rR - S[i - 2].P_rR)) /
                            (12 * h);
        const Eigen::Vector3d Xm(R[i], M_PI / 2, 0), Xs(map.r(R[i]), M_PI / 2, 0);
        const Tensor3 Gamma = diffgeo::christoffel(metric, Xm);
        const Tensor3 gamma = [&] {
            // ambient connection at the image point
            const int d = sphere ? 3 : 2;
            Tensor3 g(d);
            const double r = Xs[0];
            g(0, 1, 1) = -r;
            g(1, 0, 1) = g(1, 1, 0) = 1.0 / r;
            if (sphere) {
                g(0, 2, 2) = -r;  // sin^2 folded into the reduced P_phPh
                g(2, 0, 2) = g(2, 2, 0) = 1.0 / r;
            }
            return g;
        }();
        double trace = 0;
        for (int A = 0; A < metric.dim(); ++A) trace += Gamma(A, A, 0);
        double v = dPrR + trace * S[i].P_rR + gamma(0, 1, 1) * S[i].P_thTh;
        if (sphere) v += gamma(0, 2, 2) * S[i].P_phPh;
        resid[i] = v;
    }
    if (n >= 5) {
        resid[0] = resid[1] = resid[2];
        resid[n - 1] = resid[n - 2] = resid[n - 3];
    }
    return resid;
}

// Hoop (and azimuthal) balance rows, assembled with the actual connection
// coefficients at a generic angle; identically zero for these families.
double hoop_residual(const GrowthBVP& bvp, const kinematics::RadialMap& map,
                     const std::vector<double>& R, const std::vector<StressSample>& S) {
    const auto metric = bvp.metric();
    const bool sphere = bvp.example == GrowthExample::SphereIso;
    const double theta = M_PI / 3;
    double worst = 0;
    for (std::size_t i = 0; i < R.size(); ++i) {
        const Eigen::Vector3d Xm(R[i], theta, 0), Xs(map.r(R[i]), theta, 0);
        const Tensor3 Gamma = diffgeo::christoffel(metric, Xm);
        const Tensor3 gamma = [&] {
            const int d = sphere ? 3 : 2;
            Tensor3 g(d);
            const double r = Xs[0];
            g(0, 1, 1) = -r;
            g(1, 0, 1) = g(1, 1, 0) = 1.0 / r;
            if (sphere) {
                const double s = std::sin(theta), c = std::cos(theta);
                g(0, 2, 2) = -r * s * s;
                g(1, 2, 2) = -s * c;
                g(2, 0, 2) = g(2, 2, 0) = 1.0 / r;
                g(2, 1, 2) = g(2, 2, 1) = c / s;
            }
            return g;
        }();
        const double s2 = std::sin(theta) * std::sin(theta);
        // nonzero stress components in this chart
        const double PthTh = S[i].P_thTh;
        const double PphPh = sphere ? S[i].P_phPh / s2 : 0.0;
        // theta row: Gamma^A_{A Theta} P^{th Th} + P^{bA} gamma^th_{b c} F^c_A
        double trace_th = 0;
        for (int A = 0; A < metric.dim(); ++A) trace_th += Gamma(A, A, 1);
        double row_th = trace_th * PthTh + gamma(1, 1, 1) * PthTh;
        if (sphere) row_th += gamma(1, 2, 2) * PphPh;
        worst = std::max(worst, std::abs(row_th));
        if (sphere) {
            // phi row: Gamma^A_{A Phi} P^{ph Ph} + gamma^{ph}_{..} terms
            double trace_ph = 0;
            for (int A = 0; A < 3; ++A) trace_ph += Gamma(A, A, 2);
            const double row_ph = trace_ph * PphPh + gamma(2, 2, 2) * PphPh;
            worst = std::max(worst, std::abs(row_ph));
        }
    }
    return worst;
}

double solved_constant(const GrowthBVP& bvp, double r1) {
    if (bvp.example == GrowthExample::AnnulusAniso) return r1 * r1 - bvp.R1 * bvp.R1;
    return r1;
}

}  // namespace

RadialSolution solve_bvp(const GrowthBVP& bvp) {
    bvp.validate();
    const IncompressibleFamily family(bvp);

    // Outer-boundary condition as a function of the trial inner radius.
    // Geometrically infeasible trials report NaN so the bracket scan skips
    // them.
    auto traction_outer = [&](double r1) {
        try {
            const auto map = family.map_for(r1);
            const auto integrand = pressure_integrand(bvp, map);
            const double p_total = numerics::integrate(integrand, bvp.R1, bvp.R2);
            if (bvp.mode == BoundaryMode::PaperExact) return p_total;
            // TractionFree: anchor picked so P^{rR}(R1) = 0, then demand
            // P^{rR}(R2) = 0. P_rR is affine in p.
            const StressSample s0 = stresses(bvp, map, 0.0, bvp.R1);
            const StressSample s1 = stresses(bvp, map, 1.0, bvp.R1);
            const double anchor = s0.P_rR / (s0.P_rR - s1.P_rR);
            const StressSample s2 = stresses(bvp, map, anchor + p_total, bvp.R2);
            return s2.P_rR;
        } catch (const geometry_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    const auto root = numerics::find_root(traction_outer, 0.8 * bvp.R1, 1.25 * bvp.R1, 1e-13,
                                          50, 1e-8 * bvp.mu);
    const double r1 = root.x;

    const auto map = family.map_for(r1);
    PressureProfile pres(bvp, map);
    if (bvp.mode == BoundaryMode::TractionFree) {
        const StressSample s0 = stresses(bvp, map, 0.0, bvp.R1);
        const StressSample s1 = stresses(bvp, map, 1.0, bvp.R1);
        pres.shift_anchor(s0.P_rR / (s0.P_rR - s1.P_rR));
    }

    RadialSolution sol;
    sol.example = bvp.example;
    sol.mode = bvp.mode;
    sol.constant = solved_constant(bvp, r1);

    const auto metric = bvp.metric();
    const int n = bvp.grid_n;
    std::vector<StressSample> samples(n);
    sol.R.resize(n);
    sol.r.resize(n);
    sol.p.resize(n);
    sol.P_rR.resize(n);
    sol.P_thTh.resize(n);
    sol.J.resize(n);
    if (bvp.example == GrowthExample::SphereIso) sol.P_phPh.resize(n);
    for (int i = 0; i < n; ++i) {
        const double R = bvp.R1 + (bvp.R2 - bvp.R1) * i / (n - 1);
        sol.R[i] = R;
        sol.r[i] = map.r(R);
        sol.p[i] = pres(R);
        samples[i] = stresses(bvp, map, sol.p[i], R);
        sol.P_rR[i] = samples[i].P_rR;
        sol.P_thTh[i] = samples[i].P_thTh;
        if (!sol.P_phPh.empty()) sol.P_phPh[i] = samples[i].P_phPh;
        sol.J[i] = kinematics::jacobian(map, metric, R);
    }
    sol.momentum_residual = momentum_residual_radial(bvp, map, sol.R, samples);
    for (double v : sol.momentum_residual)
        sol.momentum_residual_norm = std::max(sol.momentum_residual_norm, std::abs(v));
    sol.hoop_residual_norm = hoop_residual(bvp, map, sol.R, samples);
    return sol;
}

// ---------------------------------------------------------------------------
// Mass density

MassDensityResult mass_density(const GrowthBVP& bvp, double rho0_initial,
                               const std::function<double(double, double)>& S_m, double t0,
                               double t1, int steps, int r_samples) {
    bvp.validate();
    if (!(rho0_initial > 0)) throw configuration_error("initial density must be positive");
    if (steps < 1 || !(t1 > t0)) throw configuration_error("mass solve needs t1 > t0, steps >= 1");

    double coeff = 0;
    switch (bvp.example) {
        case GrowthExample::AnnulusIso: coeff = 2; break;
        case GrowthExample::AnnulusAniso: coeff = 0; break;
        case GrowthExample::SphereIso: coeff = 3; break;
    }
    const RadialTimeField& om = bvp.omega;
    const bool literal = bvp.literal_paper_mass_rate;
    auto rate = [&om, literal](double R, double t) { return literal ? om.dR(R, t) : om.dt(R, t); };

    MassDensityResult out;
    out.R.resize(r_samples);
    for (int i = 0; i < r_samples; ++i)
        out.R[i] = r_samples == 1 ? bvp.R1 : bvp.R1 + (bvp.R2 - bvp.R1) * i / (r_samples - 1);
    const double dt = (t1 - t0) / steps;
    std::vector<double> rho(r_samples, rho0_initial);
    out.t.push_back(t0);
    out.rho.push_back(rho);
    for (int s = 0; s < steps; ++s) {
        const double t = t0 + s * dt;
        for (int i = 0; i < r_samples; ++i) {
            const double R = out.R[i];
            rho[i] = numerics::rk4_step(rho[i], t, dt, [&](double tt, double y) {
                return S_m(R, tt) - coeff * rate(R, tt) * y;
            });
            if (!std::isfinite(rho[i])) throw numeric_error("mass density step failed");
        }
        out.t.push_back(t + dt);
        out.rho.push_back(rho);
    }
    return out;
}

}  // namespace growthmech::residual

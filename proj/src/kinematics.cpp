#include "growthmech/kinematics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace growthmech::kinematics {

RadialMap RadialMap::identity(diffgeo::RadialFamily family, double R1, double R2) {
    RadialMap m;
    m.r = Profile::analytic([](double r) { return r; }, [](double) { return 1.0; },
                            [](double) { return 0.0; });
    m.family = family;
    m.R1 = R1;
    m.R2 = R2;
    return m;
}

std::pair<Mat, Mat> deformation_gradient(const RadialMap& map, double R) {
    const double rp = map.r.d(R);
    if (!(rp > 0)) throw domain_error("deformation map is not orientation-preserving (dr/dR <= 0)");
    const int n = map.dim();
    Mat F = Mat::Identity(n, n), Finv = Mat::Identity(n, n);
    F(0, 0) = rp;
    Finv(0, 0) = 1.0 / rp;
    return {F, Finv};
}

double jacobian(const RadialMap& map, const diffgeo::RadialMetric& metric, double R) {
    metric.require_in_domain(Eigen::Vector3d(R, 0, 0));
    auto [F, Finv] = deformation_gradient(map, R);
    // Angular coordinates cancel between det g and det G; evaluate at the
    // equator in 3D.
    const Eigen::Vector3d Xm(R, M_PI / 2, 0), Xs(map.r(R), M_PI / 2, 0);
    const double det_g = diffgeo::ambient_metric(map.family, Xs).determinant();
    const double det_G = metric.det(Xm);
    return std::sqrt(det_g / det_G) * F.determinant();
}

CauchyGreen cauchy_green(const RadialMap& map, const diffgeo::RadialMetric& metric, double R) {
    auto [F, Finv] = deformation_gradient(map, R);
    const Eigen::Vector3d Xm(R, M_PI / 2, 0), Xs(map.r(R), M_PI / 2, 0);
    const Mat g = diffgeo::ambient_metric(map.family, Xs);
    const Mat Ginv = metric.inverse(Xm);
    CauchyGreen out;
    out.lower = F.transpose() * g * F;
    out.mixed = Ginv * out.lower;
    out.trace_G = out.mixed.trace();
    return out;
}

Frame orthonormal_frame(const Mat& G) {
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
        throw definiteness_error("orthonormal frame needs a positive-definite metric");
    Frame f;
    f.f_hat = es.operatorInverseSqrt();
    f.f_hat_inv = es.operatorSqrt();
    return f;
}

GrowthDecomposition decompose(const Mat& F, const Mat& G) {
    return decompose(F, G, Mat::Identity(F.rows(), F.cols()));
}

GrowthDecomposition decompose(const Mat& F, const Mat& G, const Mat& g) {
    if (std::abs(F.determinant()) < 1e-300)
        throw decomposition_error("deformation gradient is singular");
    const Frame material = orthonormal_frame(G);
    GrowthDecomposition d;
    d.F = F;
    d.Fg = material.f_hat_inv;  // G^{1/2}
    if (g.isIdentity(0.0)) {
        d.Fe = F * material.f_hat;
    } else {
        const Frame spatial = orthonormal_frame(g);
        d.Fe = spatial.f_hat_inv * F * material.f_hat;  // g^{1/2} F G^{-1/2}
    }
    return d;
}

std::pair<double, double> growth_trace_identity(const std::function<Mat(double)>& G_of_t, double t,
                                                const std::optional<Mat>& G_dot) {
    const Mat G = G_of_t(t);
    const double dt = 1e-6 * std::max(1.0, std::abs(t));
    const Mat Gdot = G_dot ? *G_dot : ((G_of_t(t + dt) - G_of_t(t - dt)) / (2 * dt)).eval();

    Eigen::LLT<Mat> llt(G);
    if (llt.info() != Eigen::Success)
        throw definiteness_error("metric family is not positive-definite at t");
    const double tr_G_Gdot = llt.solve(Gdot).trace();

    const Mat Fg = orthonormal_frame(G).f_hat_inv;
    const Mat Fg_dot =
        (orthonormal_frame(G_of_t(t + dt)).f_hat_inv - orthonormal_frame(G_of_t(t - dt)).f_hat_inv) /
        (2 * dt);
    const double tr_Lg = (Fg_dot * Fg.inverse()).trace();
    return {tr_G_Gdot, 2 * tr_Lg};
}

GrowthConnection growth_connection(const Lattice<Mat>& fg_field) {
    const GridSpec& spec = fg_field.spec;
    const int n = spec.dim;
    Lattice<Mat> inv(spec);
    for (std::size_t i = 0; i < fg_field.data.size(); ++i) {
        const Mat& f = fg_field.data[i];
        if (std::abs(f.determinant()) < 1e-300)
            throw decomposition_error("growth tensor field singular at a node");
        inv.data[i] = f.inverse();
    }

    GrowthConnection out;
    out.gamma = Lattice<Tensor3>(spec);
    out.torsion = Lattice<Tensor3>(spec);
    const int kmax = n == 3 ? spec.n[2] : 1;

    auto gamma_at = [&](int i, int j, int k) {
        Tensor3 g(n);
        for (int c = 0; c < n; ++c) {
            std::array<int, 3> e{0, 0, 0};
            e[c] = 1;
            const Mat dinv =
                (inv.at(i + e[0], j + e[1], k + e[2]) - inv.at(i - e[0], j - e[1], k - e[2])) /
                (2 * spec.h);
            const Mat gam = fg_field.at(i, j, k) * dinv;  // Gamma^I_J for fixed K=c
            for (int I = 0; I < n; ++I)
                for (int J = 0; J < n; ++J) g(I, J, c) = gam(I, J);
        }
        return g;
    };

    for (int k = 0; k < kmax; ++k)
        for (int j = 0; j < spec.n[1]; ++j)
            for (int i = 0; i < spec.n[0]; ++i) {
                if (!spec.interior(i, j, k, 1)) continue;
                Tensor3 g = gamma_at(i, j, k);
                Tensor3 tor(n);
                for (int I = 0; I < n; ++I)
                    for (int J = 0; J < n; ++J)
                        for (int K = 0; K < n; ++K) tor(I, J, K) = g(I, J, K) - g(I, K, J);
                out.max_torsion = std::max(out.max_torsion, tor.max_abs());
                out.gamma.at(i, j, k) = g;
                out.torsion.at(i, j, k) = tor;
            }

    // Curvature of the connection itself; margin 2 so the Gamma differences
    // stay on stored interior nodes.
    for (int k = 0; k < kmax; ++k)
        for (int j = 0; j < spec.n[1]; ++j)
            for (int i = 0; i < spec.n[0]; ++i) {
                if (!spec.interior(i, j, k, 2)) continue;
                const Tensor3& g = out.gamma.at(i, j, k);
                std::array<Tensor3, 3> dg;
                for (int c = 0; c < n; ++c) {
                    std::array<int, 3> e{0, 0, 0};
                    e[c] = 1;
                    const Tensor3& gp = out.gamma.at(i + e[0], j + e[1], k + e[2]);
                    const Tensor3& gm = out.gamma.at(i - e[0], j - e[1], k - e[2]);
                    dg[c] = Tensor3(n);
                    for (int I = 0; I < n; ++I)
                        for (int J = 0; J < n; ++J)
                            for (int K = 0; K < n; ++K)
                                dg[c](I, J, K) = (gp(I, J, K) - gm(I, J, K)) / (2 * spec.h);
                }
                // Curvature with the derivative-index-last convention the
                // frame connection is built in (the index order matters once
                // torsion is present): R^I_JKL = d_K Gamma^I_JL - d_L
                // Gamma^I_JK + Gamma^I_MK Gamma^M_JL - Gamma^I_ML Gamma^M_JK.
                double local = 0;
                for (int I = 0; I < n; ++I)
                    for (int J = 0; J < n; ++J)
                        for (int K = 0; K < n; ++K)
                            for (int L = 0; L < n; ++L) {
                                double v = dg[K](I, J, L) - dg[L](I, J, K);
                                for (int M = 0; M < n; ++M)
                                    v += g(I, M, K) * g(M, J, L) - g(I, M, L) * g(M, J, K);
                                local = std::max(local, std::abs(v));
                            }
                out.curvature_residual = std::max(out.curvature_residual, local);
            }
    return out;
}

}  // namespace growthmech::kinematics

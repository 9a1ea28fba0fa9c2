#include "growthmech/stressfree.hpp"

#include <cmath>

namespace growthmech::stressfree {

Verdict2D check_2d(const ScalarField& omega, const GridSpec& grid, double tol) {
    if (grid.dim != 2 || grid.n[0] < 5 || grid.n[1] < 5)
        throw configuration_error("2D flatness check needs a 2D grid with >= 5 nodes per axis");
    Verdict2D v;
    v.tolerance = tol;
    for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i) {
            const double lap = omega.laplacian(grid.point(i, j, 0));
            v.max_laplacian = std::max(v.max_laplacian, std::abs(lap));
        }
    v.flat = v.max_laplacian <= tol;
    return v;
}

ConeFamily radial_cone_family(double xi_amplitude, double eta) {
    if (!(xi_amplitude > 0)) throw configuration_error("cone family needs xi > 0");
    if (eta == -1) throw geometry_error("eta = -1 is the degenerate cone");
    ConeFamily fam;
    fam.xi_amplitude = xi_amplitude;
    fam.eta = eta;
    fam.cone_parameter = 1.0 / (1.0 + eta);
    fam.deficit_angle = 2 * M_PI * (1.0 - 1.0 / std::abs(fam.cone_parameter));
    const double half_log_xi = 0.5 * std::log(xi_amplitude);
    fam.growth.dim = 2;
    fam.growth.omega = ScalarField(
        2,
        [half_log_xi, eta](const Eigen::Vector3d& x) {
            return half_log_xi + eta * std::log(x.norm());
        },
        [eta](const Eigen::Vector3d& x) {
            const double r2 = x.squaredNorm();
            return (eta / r2 * x).eval();
        },
        [eta](const Eigen::Vector3d& x) {
            const double r2 = x.squaredNorm();
            Eigen::Matrix3d h =
                eta * (Eigen::Matrix3d::Identity() / r2 - 2.0 * x * x.transpose() / (r2 * r2));
            h.row(2).setZero();
            h.col(2).setZero();
            return h;
        });
    return fam;
}

Verdict3D check_3d(const ScalarField& omega, const GridSpec& grid, double tol) {
    if (grid.dim != 3 || grid.n[0] < 5 || grid.n[1] < 5 || grid.n[2] < 5)
        throw configuration_error("3D flatness check needs a 3D grid with >= 5 nodes per axis");
    Verdict3D v;
    v.tolerance = tol;
    for (int k = 0; k < grid.n[2]; ++k)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i) {
                const Eigen::Vector3d x = grid.point(i, j, k);
                double d1[3], d2[3][3];
                for (int a = 0; a < 3; ++a) d1[a] = omega.partial(a, x);
                for (int a = 0; a < 3; ++a)
                    for (int b = a; b < 3; ++b) d2[a][b] = d2[b][a] = omega.partial2(a, b, x);
                const double lap = d2[0][0] + d2[1][1] + d2[2][2];
                const double eq[6] = {
                    d2[0][1] - d1[0] * d1[1],
                    d2[0][2] - d1[0] * d1[2],
                    d2[1][2] - d1[1] * d1[2],
                    d2[0][0] + lap + d1[1] * d1[1] + d1[2] * d1[2],
                    d2[1][1] + lap + d1[0] * d1[0] + d1[2] * d1[2],
                    d2[2][2] + lap + d1[0] * d1[0] + d1[1] * d1[1],
                };
                for (int q = 0; q < 6; ++q)
                    v.residuals[q] = std::max(v.residuals[q], std::abs(eq[q]));
            }
    for (double r : v.residuals) v.max_residual = std::max(v.max_residual, r);

    // Independent route through the curvature kernel.
    const diffgeo::GridMetric metric = diffgeo::GridMetric::conformal(grid, omega);
    v.grid_ricci_residual = diffgeo::flatness_residual(metric);
    v.flat = v.max_residual <= tol;
    return v;
}

ConformalGrowth log_quadratic_family(double c0, double c1, double c2, double c3, double c4) {
    const Eigen::Vector3d c(c1, c2, c3);
    auto u = [c0, c, c4](const Eigen::Vector3d& x) {
        return c0 * x.squaredNorm() + c.dot(x) + c4;
    };
    auto du = [c0, c](const Eigen::Vector3d& x) { return (2 * c0 * x + c).eval(); };
    ConformalGrowth g;
    g.dim = 3;
    g.omega = ScalarField(
        3,
        [u](const Eigen::Vector3d& x) {
            const double v = u(x);
            if (!(v > 0)) throw domain_error("log-quadratic growth argument must stay positive");
            return -std::log(v);
        },
        [u, du](const Eigen::Vector3d& x) { return (-du(x) / u(x)).eval(); },
        [u, du, c0](const Eigen::Vector3d& x) {
            const double v = u(x);
            const Eigen::Vector3d d = du(x);
            return ((-2 * c0 / v) * Eigen::Matrix3d::Identity() +
                    d * d.transpose() / (v * v))
                .eval();
        });
    return g;
}

bool log_quadratic_is_flat(double c0, double c1, double c2, double c3, double c4, double tol) {
    return std::abs(c1 * c1 + c2 * c2 + c3 * c3 - 4 * c0 * c4) <= tol;
}

Eigen::Vector3d inversion_map(double c, const Eigen::Vector3d& point) {
    const double r2 = point.squaredNorm();
    if (!(r2 > 0)) throw domain_error("inversion is singular at the origin");
    if (c == 0) throw configuration_error("inversion needs c != 0");
    return point / (c * r2);
}

GridSpec punctured_box(int dim, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                       int nodes_per_axis, double margin_fraction) {
    if (nodes_per_axis < 5) throw configuration_error("grid needs at least 5 nodes per axis");
    Eigen::Vector3d a = lo, b = hi;
    for (int d = 0; d < dim; ++d) {
        const double m = margin_fraction * (hi[d] - lo[d]);
        a[d] += m;
        b[d] -= m;
        if (!(b[d] > a[d])) throw configuration_error("margin leaves an empty box");
    }
    for (int d = 1; d < dim; ++d)
        if (std::abs((b[d] - a[d]) - (b[0] - a[0])) > 1e-12 * (b[0] - a[0]))
            throw configuration_error("punctured box must be square (one lattice spacing)");
    GridSpec g;
    g.dim = dim;
    g.origin = a;
    g.h = (b[0] - a[0]) / (nodes_per_axis - 1);
    g.n = {nodes_per_axis, nodes_per_axis, dim == 3 ? nodes_per_axis : 1};
    return g;
}

}  // namespace growthmech::stressfree

#include "growthmech/diffgeo.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace growthmech::diffgeo {

namespace {

void require_positive_radius(double r) {
    if (!(r > 0)) throw domain_error("radial chart requires R > 0");
}

void require_off_axis(double theta) {
    if (std::abs(std::sin(theta)) < 1e-12)
        throw domain_error("spherical chart is singular at the poles");
}

Mat invert_spd(const Mat& g) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw definiteness_error("metric is not positive-definite");
    return llt.solve(Mat::Identity(g.rows(), g.cols()));
}

struct RadialGamma {
    Tensor3 gamma;
    std::array<Tensor3, 3> dgamma;  // dgamma[c](a, b, d) = d_c Gamma^a_{bd}
};

RadialGamma radial_gamma(const RadialMetric& m, const Eigen::Vector3d& x) {
    const double r = x[0];
    require_positive_radius(r);
    const Profile& om = m.omega();
    const double w1 = om.d(r), w2 = om.d2(r);
    const int n = m.dim();
    RadialGamma out;
    out.gamma = Tensor3(n);
    for (auto& t : out.dgamma) t = Tensor3(n);
    Tensor3& g = out.gamma;
    Tensor3& dR = out.dgamma[0];

    switch (m.family()) {
        case RadialFamily::Iso2D: {
            g(0, 0, 0) = w1;
            g(0, 1, 1) = -r - r * r * w1;
            g(1, 0, 1) = g(1, 1, 0) = 1.0 / r + w1;
            dR(0, 0, 0) = w2;
            dR(0, 1, 1) = -1 - 2 * r * w1 - r * r * w2;
            dR(1, 0, 1) = dR(1, 1, 0) = -1.0 / (r * r) + w2;
            break;
        }
        case RadialFamily::Aniso2D: {
            const double e4 = std::exp(-4 * om(r));
            g(0, 0, 0) = w1;
            g(0, 1, 1) = e4 * (r * r * w1 - r);
            g(1, 0, 1) = g(1, 1, 0) = 1.0 / r - w1;
            dR(0, 0, 0) = w2;
            dR(0, 1, 1) = e4 * (-4 * w1 * (r * r * w1 - r) + 2 * r * w1 + r * r * w2 - 1);
            dR(1, 0, 1) = dR(1, 1, 0) = -1.0 / (r * r) - w2;
            break;
        }
        case RadialFamily::Iso3D: {
            const double th = x[1];
            require_off_axis(th);
            const double s = std::sin(th), c = std::cos(th);
            Tensor3& dTh = out.dgamma[1];
            g(0, 0, 0) = w1;
            g(0, 1, 1) = -(r + r * r * w1);
            g(0, 2, 2) = -(r + r * r * w1) * s * s;
            g(1, 0, 1) = g(1, 1, 0) = 1.0 / r + w1;
            g(1, 2, 2) = -s * c;
            g(2, 0, 2) = g(2, 2, 0) = 1.0 / r + w1;
            g(2, 1, 2) = g(2, 2, 1) = c / s;
            dR(0, 0, 0) = w2;
            dR(0, 1, 1) = -(1 + 2 * r * w1 + r * r * w2);
            dR(0, 2, 2) = -(1 + 2 * r * w1 + r * r * w2) * s * s;
            dR(1, 0, 1) = dR(1, 1, 0) = -1.0 / (r * r) + w2;
            dR(2, 0, 2) = dR(2, 2, 0) = -1.0 / (r * r) + w2;
            dTh(0, 2, 2) = -(r + r * r * w1) * std::sin(2 * th);
            dTh(1, 2, 2) = -std::cos(2 * th);
            dTh(2, 1, 2) = dTh(2, 2, 1) = -1.0 / (s * s);
            break;
        }
    }
    return out;
}

CurvatureReport assemble_curvature(int n, const Tensor3& gamma, const std::array<Tensor3, 3>& dg,
                                   const Mat& g_inv) {
    CurvatureReport rep;
    rep.riemann = Tensor4(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double v = dg[c](a, b, d) - dg[d](a, b, c);
                    for (int e = 0; e < n; ++e)
                        v += gamma(a, c, e) * gamma(e, b, d) - gamma(a, d, e) * gamma(e, b, c);
                    rep.riemann(a, b, c, d) = v;
                }
    rep.ricci = Mat::Zero(n, n);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            double v = 0;
            for (int c = 0; c < n; ++c) v += rep.riemann(c, b, c, d);
            rep.ricci(b, d) = v;
        }
    rep.scalar = (g_inv.array() * rep.ricci.array()).sum();
    rep.max_abs_riemann = rep.riemann.max_abs();
    rep.max_abs_ricci = rep.ricci.cwiseAbs().maxCoeff();
    return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialMetric

RadialMetric::RadialMetric(RadialFamily family, Profile omega, double r_min, double r_max)
    : family_(family), omega_(std::move(omega)), r_min_(r_min), r_max_(r_max) {
    if (!(0 < r_min && r_min < r_max))
        throw configuration_error("radial metric domain needs 0 < R_min < R_max");
}

void RadialMetric::require_in_domain(const Eigen::Vector3d& point) const {
    if (!in_domain(point[0])) {
        std::ostringstream msg;
        msg << "point R=" << point[0] << " outside metric domain [" << r_min_ << ", " << r_max_
            << "]";
        throw domain_error(msg.str());
    }
}

Mat RadialMetric::components(const Eigen::Vector3d& point) const {
    const double r = point[0];
    require_positive_radius(r);
    const double e2 = std::exp(2 * omega_(r));
    switch (family_) {
        case RadialFamily::Iso2D: {
            Mat g(2, 2);
            g << e2, 0, 0, r * r * e2;
            return g;
        }
        case RadialFamily::Aniso2D: {
            Mat g(2, 2);
            g << e2, 0, 0, r * r / e2;
            return g;
        }
        case RadialFamily::Iso3D: {
            const double s = std::sin(point[1]);
            Mat g = Mat::Zero(3, 3);
            g(0, 0) = e2;
            g(1, 1) = r * r * e2;
            g(2, 2) = r * r * s * s * e2;
            return g;
        }
    }
    throw configuration_error("unknown radial family");
}

Mat RadialMetric::inverse(const Eigen::Vector3d& point) const {
    Mat g = components(point);
    for (int i = 0; i < g.rows(); ++i) {
        if (!(g(i, i) > 0)) throw definiteness_error("radial metric degenerate at query point");
        g(i, i) = 1.0 / g(i, i);
    }
    return g;
}

double RadialMetric::det(const Eigen::Vector3d& point) const {
    const Mat g = components(point);
    double d = 1;
    for (int i = 0; i < g.rows(); ++i) d *= g(i, i);
    return d;
}

Mat ambient_metric(RadialFamily family, const Eigen::Vector3d& point) {
    const double r = point[0];
    require_positive_radius(r);
    if (family != RadialFamily::Iso3D) {
        Mat g(2, 2);
        g << 1, 0, 0, r * r;
        return g;
    }
    const double s = std::sin(point[1]);
    Mat g = Mat::Zero(3, 3);
    g(0, 0) = 1;
    g(1, 1) = r * r;
    g(2, 2) = r * r * s * s;
    return g;
}

// ---------------------------------------------------------------------------
// GridMetric

GridMetric::GridMetric(GridSpec spec, std::vector<Mat> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.count())
        throw configuration_error("grid metric value count does not match lattice");
    for (const Mat& g : values_) {
        if (g.rows() != spec_.dim || g.cols() != spec_.dim)
            throw configuration_error("grid metric entry has wrong dimension");
        if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + g.cwiseAbs().maxCoeff()))
            throw configuration_error("grid metric entry is not symmetric");
        Eigen::LLT<Mat> llt(g);
        if (llt.info() != Eigen::Success)
            throw definiteness_error("grid metric entry is not positive-definite");
    }
}

GridMetric GridMetric::sample(const GridSpec& spec,
                              const std::function<Mat(const Eigen::Vector3d&)>& g) {
    std::vector<Mat> values(spec.count());
    for (int k = 0; k < spec.n[2]; ++k)
        for (int j = 0; j < spec.n[1]; ++j)
            for (int i = 0; i < spec.n[0]; ++i) values[spec.index(i, j, k)] = g(spec.point(i, j, k));
    return GridMetric(spec, std::move(values));
}

GridMetric GridMetric::conformal(const GridSpec& spec, const ScalarField& omega) {
    return sample(spec, [&](const Eigen::Vector3d& x) {
        return (std::exp(2 * omega(x)) * Mat::Identity(spec.dim, spec.dim)).eval();
    });
}

std::array<int, 3> GridMetric::locate(const Eigen::Vector3d& point, double tol) const {
    std::array<int, 3> idx{0, 0, 0};
    const Eigen::Vector3d rel = (point - spec_.origin) / spec_.h;
    for (int d = 0; d < spec_.dim; ++d) {
        const int i = static_cast<int>(std::lround(rel[d]));
        if (i < 0 || i >= spec_.n[d] || std::abs(rel[d] - i) > tol)
            throw domain_error("grid metric query point is not a lattice node");
        idx[d] = i;
    }
    return idx;
}

// ---------------------------------------------------------------------------
// Christoffel symbols

Tensor3 christoffel(const RadialMetric& metric, const Eigen::Vector3d& point) {
    metric.require_in_domain(point);
    return radial_gamma(metric, point).gamma;
}

namespace {

int fd_margin(const FdOptions& fd) { return fd.richardson ? 2 : 1; }

// d/dx_c of the node-valued quantity produced by `value`.
template <class F>
auto grid_diff(const F& value, const GridSpec& spec, int i, int j, int k, int c,
               const FdOptions& fd) {
    std::array<int, 3> e{0, 0, 0};
    e[c] = 1;
    if (!fd.richardson)
        return ((value(i + e[0], j + e[1], k + e[2]) - value(i - e[0], j - e[1], k - e[2])) /
                (2 * spec.h))
            .eval();
    return ((8 * (value(i + e[0], j + e[1], k + e[2]) - value(i - e[0], j - e[1], k - e[2])) -
             (value(i + 2 * e[0], j + 2 * e[1], k + 2 * e[2]) -
              value(i - 2 * e[0], j - 2 * e[1], k - 2 * e[2]))) /
            (12 * spec.h))
        .eval();
}

Tensor3 grid_gamma_at(const GridMetric& m, int i, int j, int k, const FdOptions& fd) {
    const GridSpec& spec = m.spec();
    const int n = spec.dim;
    if (!spec.interior(i, j, k, fd_margin(fd)))
        throw domain_error("christoffel needs at least one interior cell on a grid metric");
    const Mat g_inv = invert_spd(m.node(i, j, k));
    std::array<Mat, 3> dg;
    auto value = [&](int a, int b, int c) -> const Mat& { return m.node(a, b, c); };
    for (int c = 0; c < n; ++c) dg[c] = grid_diff(value, spec, i, j, k, c, fd);
    Tensor3 gamma(n);
    for (int kk = 0; kk < n; ++kk)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                double v = 0;
                for (int l = 0; l < n; ++l)
                    v += 0.5 * g_inv(kk, l) * (dg[a](b, l) + dg[b](a, l) - dg[l](a, b));
                gamma(kk, a, b) = gamma(kk, b, a) = v;
            }
    return gamma;
}

}  // namespace

Tensor3 christoffel(const GridMetric& metric, const Eigen::Vector3d& point, FdOptions fd) {
    auto [i, j, k] = metric.locate(point);
    return grid_gamma_at(metric, i, j, k, fd);
}

// ---------------------------------------------------------------------------
// Curvature

CurvatureReport riemann(const RadialMetric& metric, const Eigen::Vector3d& point) {
    metric.require_in_domain(point);
    const RadialGamma rg = radial_gamma(metric, point);
    return assemble_curvature(metric.dim(), rg.gamma, rg.dgamma, metric.inverse(point));
}

namespace {
CurvatureReport grid_riemann_at(const GridMetric& m, int i, int j, int k, const FdOptions& fd) {
    const GridSpec& spec = m.spec();
    const int n = spec.dim;
    if (!spec.interior(i, j, k, 2 * fd_margin(fd)))
        throw domain_error("riemann needs at least two interior cells on a grid metric");
    const Tensor3 gamma = grid_gamma_at(m, i, j, k, fd);
    auto gamma_mat = [&](int a, int b, int c) {
        Tensor3 g = grid_gamma_at(m, a, b, c, fd);
        Mat flat(n * n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r) flat(p * n + q, r) = g(p, q, r);
        return flat;
    };
    std::array<Tensor3, 3> dg;
    for (int c = 0; c < n; ++c) {
        const Mat d = grid_diff(gamma_mat, spec, i, j, k, c, fd);
        dg[c] = Tensor3(n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r) dg[c](p, q, r) = d(p * n + q, r);
    }
    return assemble_curvature(n, gamma, dg, invert_spd(m.node(i, j, k)));
}
}  // namespace

CurvatureReport riemann(const GridMetric& metric, const Eigen::Vector3d& point, FdOptions fd) {
    auto [i, j, k] = metric.locate(point);
    return grid_riemann_at(metric, i, j, k, fd);
}

std::pair<Mat, double> ricci_scalar(const RadialMetric& metric, const Eigen::Vector3d& point) {
    const CurvatureReport rep = riemann(metric, point);
    return {rep.ricci, rep.scalar};
}

std::pair<Mat, double> ricci_scalar(const GridMetric& metric, const Eigen::Vector3d& point,
                                    FdOptions fd) {
    const CurvatureReport rep = riemann(metric, point, fd);
    return {rep.ricci, rep.scalar};
}

double flatness_residual(const GridMetric& metric, FdOptions fd) {
    const GridSpec& spec = metric.spec();
    for (int d = 0; d < spec.dim; ++d)
        if (spec.n[d] < 5)
            throw configuration_error("flatness check needs at least 5 nodes per axis");
    const int margin = 2 * fd_margin(fd);
    double residual = 0;
    for (int k = 0; k < spec.n[2]; ++k)
        for (int j = 0; j < spec.n[1]; ++j)
            for (int i = 0; i < spec.n[0]; ++i) {
                if (!spec.interior(i, j, k, margin)) continue;
                const CurvatureReport rep = grid_riemann_at(metric, i, j, k, fd);
                residual = std::max(residual,
                                    spec.dim == 2 ? std::abs(rep.scalar) : rep.max_abs_ricci);
            }
    return residual;
}

double grid_flat_tolerance(const GridMetric& metric) {
    const GridSpec& spec = metric.spec();
    double gmax = 0;
    for (int k = 0; k < spec.n[2]; ++k)
        for (int j = 0; j < spec.n[1]; ++j)
            for (int i = 0; i < spec.n[0]; ++i)
                gmax = std::max(gmax, metric.node(i, j, k).cwiseAbs().maxCoeff());
    return 10.0 * spec.h * spec.h * gmax;
}

}  // namespace growthmech::diffgeo

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace growthmech {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch coarsely; the CLI maps numeric_error/solver failures to exit code 1
// and verification failures to exit code 2.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct definiteness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct configuration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct decomposition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct constitutive_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rank-3 tensor in dimension n <= 3, e.g. connection coefficients C^i_{jk}.
struct Tensor3 {
    int n = 0;
    std::array<double, 27> a{};

    explicit Tensor3(int dim = 0) : n(dim) { a.fill(0.0); }
    double& operator()(int i, int j, int k) { return a[(i * 3 + j) * 3 + k]; }
    double operator()(int i, int j, int k) const { return a[(i * 3 + j) * 3 + k]; }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) m = std::max(m, std::abs((*this)(i, j, k)));
        return m;
    }
};

// Rank-4 tensor in dimension n <= 3, e.g. curvature R^i_{jkl}.
struct Tensor4 {
    int n = 0;
    std::array<double, 81> a{};

    explicit Tensor4(int dim = 0) : n(dim) { a.fill(0.0); }
    double& operator()(int i, int j, int k, int l) { return a[((i * 3 + j) * 3 + k) * 3 + l]; }
    double operator()(int i, int j, int k, int l) const {
        return a[((i * 3 + j) * 3 + k) * 3 + l];
    }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) m = std::max(m, std::abs((*this)(i, j, k, l)));
        return m;
    }
};

// Uniform Cartesian lattice in chart coordinates. 2D grids use n[2] = 1.
struct GridSpec {
    int dim = 3;
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();
    double h = 1.0;
    std::array<int, 3> n = {1, 1, 1};

    static GridSpec line1d(double x0, double spacing, int nx) {
        GridSpec g;
        g.dim = 1;
        g.origin = {x0, 0.0, 0.0};
        g.h = spacing;
        g.n = {nx, 1, 1};
        return g;
    }
    static GridSpec square2d(double x0, double y0, double spacing, int nx, int ny) {
        GridSpec g;
        g.dim = 2;
        g.origin = {x0, y0, 0.0};
        g.h = spacing;
        g.n = {nx, ny, 1};
        return g;
    }
    static GridSpec cube3d(const Eigen::Vector3d& o, double spacing, int nx, int ny, int nz) {
        GridSpec g;
        g.dim = 3;
        g.origin = o;
        g.h = spacing;
        g.n = {nx, ny, nz};
        return g;
    }

    std::size_t count() const {
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
               static_cast<std::size_t>(n[2]);
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * n[1] + j) * n[0] + i;
    }
    Eigen::Vector3d point(int i, int j, int k) const {
        return origin + h * Eigen::Vector3d(i, j, k);
    }
    bool interior(int i, int j, int k, int margin) const {
        const int idx[3] = {i, j, k};
        for (int d = 0; d < dim; ++d)
            if (idx[d] < margin || idx[d] >= n[d] - margin) return false;
        return true;
    }
};

// Per-node storage over a GridSpec.
template <class T>
struct Lattice {
    GridSpec spec;
    std::vector<T> data;

    Lattice() = default;
    explicit Lattice(const GridSpec& s) : spec(s), data(s.count()) {}

    T& at(int i, int j, int k = 0) { return data[spec.index(i, j, k)]; }
    const T& at(int i, int j, int k = 0) const { return data[spec.index(i, j, k)]; }
};

}  // namespace growthmech

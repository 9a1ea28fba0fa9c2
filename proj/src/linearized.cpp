#include "growthmech/linearized.hpp"

#include <cmath>
#include <sstream>

namespace growthmech::linearized {

Lattice<Eigen::Matrix3d> linearized_strain(const DisplacementField& U) {
    const GridSpec& g = U.grid;
    Lattice<Eigen::Matrix3d> eps(g);
    const int kmax = g.dim == 3 ? g.n[2] : 1;
    auto clampi = [](int v, int lo, int hi) { return std::max(lo, std::min(v, hi)); };
    for (int k = 0; k < kmax; ++k)
        for (int j = 0; j < g.n[1]; ++j)
            for (int i = 0; i < g.n[0]; ++i) {
                // interior stencil, clamped to the nearest interior node
                const int ii = clampi(i, 1, g.n[0] - 2);
                const int jj = clampi(j, 1, g.n[1] - 2);
                const int kk = g.dim == 3 ? clampi(k, 1, g.n[2] - 2) : 0;
                Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
                for (int c = 0; c < g.dim; ++c) {
                    std::array<int, 3> e{0, 0, 0};
                    e[c] = 1;
                    const Eigen::Vector3d dU =
                        (U.at(ii + e[0], jj + e[1], kk + e[2]) -
                         U.at(ii - e[0], jj - e[1], kk - e[2])) /
                        (2 * g.h);
                    grad.col(c) = dU;  // grad(a, c) = d_c U_a
                }
                eps.at(i, j, k) = 0.5 * (grad + grad.transpose());
            }
    return eps;
}

SvkTensors svk_tensors(const SVKParams& params) {
    params.validate();
    SvkTensors t;
    const double l = params.lambda, m = params.mu;
    for (int a = 0; a < 3; ++a)
        for (int A = 0; A < 3; ++A)
            for (int b = 0; b < 3; ++b)
                for (int B = 0; B < 3; ++B)
                    t.A[a][A][b][B] = l * (a == A) * (b == B) + m * (A == B) * (a == b) +
                                      m * (a == B) * (b == A);
    t.B_contraction = (-(3 * l + 2 * m) / 2.0) * Mat::Identity(3, 3);
    return t;
}

Eigen::Vector3d SvkTensors::apply(const std::array<Eigen::Matrix3d, 3>& hessians) const {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p)
            for (int b = 0; b < 3; ++b)
                for (int q = 0; q < 3; ++q) out[a] += A[a][p][b][q] * hessians[b](p, q);
    return out;
}

namespace {

// Matrix-free application of the (negated) Navier operator
//   (L u)_a = (lambda+mu) u_{b,ab} + mu u_{a,bb}
// on interior nodes with homogeneous Dirichlet halo.
class NavierOperator {
  public:
    NavierOperator(const SVKParams& p, const GridSpec& g) : lm_(p.lambda + p.mu), mu_(p.mu), g_(g) {}

    // y = -L x  (SPD); x, y are interior-plus-boundary lattices of Vector3d,
    // boundary entries of x are treated as given (not touched in y).
    void apply(const std::vector<Eigen::Vector3d>& x, std::vector<Eigen::Vector3d>& y) const {
        const double h2 = g_.h * g_.h;
        for (int k = 1; k + 1 < g_.n[2]; ++k)
            for (int j = 1; j + 1 < g_.n[1]; ++j)
                for (int i = 1; i + 1 < g_.n[0]; ++i) {
                    Eigen::Vector3d lap = Eigen::Vector3d::Zero();
                    for (int c = 0; c < 3; ++c) {
                        std::array<int, 3> e{0, 0, 0};
                        e[c] = 1;
                        lap += x[g_.index(i + e[0], j + e[1], k + e[2])] +
                               x[g_.index(i - e[0], j - e[1], k - e[2])];
                    }
                    lap -= 6.0 * x[g_.index(i, j, k)];
                    lap /= h2;

                    // grad-div: (d_a d_b u_b)
                    Eigen::Vector3d gd = Eigen::Vector3d::Zero();
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) {
                            double val;
                            if (a == b) {
                                std::array<int, 3> e{0, 0, 0};
                                e[a] = 1;
                                val = (x[g_.index(i + e[0], j + e[1], k + e[2])][b] -
                                       2 * x[g_.index(i, j, k)][b] +
                                       x[g_.index(i - e[0], j - e[1], k - e[2])][b]) /
                                      h2;
                            } else {
                                std::array<int, 3> ea{0, 0, 0}, eb{0, 0, 0};
                                ea[a] = 1;
                                eb[b] = 1;
                                val = (x[g_.index(i + ea[0] + eb[0], j + ea[1] + eb[1],
                                                  k + ea[2] + eb[2])][b] -
                                       x[g_.index(i + ea[0] - eb[0], j + ea[1] - eb[1],
                                                  k + ea[2] - eb[2])][b] -
                                       x[g_.index(i - ea[0] + eb[0], j - ea[1] + eb[1],
                                                  k - ea[2] + eb[2])][b] +
                                       x[g_.index(i - ea[0] - eb[0], j - ea[1] - eb[1],
                                                  k - ea[2] - eb[2])][b]) /
                                      (4 * h2);
                            }
                            gd[a] += val;
                        }
                    y[g_.index(i, j, k)] = -(lm_ * gd + mu_ * lap);
                }
    }

  private:
    double lm_, mu_;
    GridSpec g_;
};

double dot_interior(const GridSpec& g, const std::vector<Eigen::Vector3d>& a,
                    const std::vector<Eigen::Vector3d>& b) {
    double s = 0;
    for (int k = 1; k + 1 < g.n[2]; ++k)
        for (int j = 1; j + 1 < g.n[1]; ++j)
            for (int i = 1; i + 1 < g.n[0]; ++i) s += a[g.index(i, j, k)].dot(b[g.index(i, j, k)]);
    return s;
}

}  // namespace

DisplacementField solve_linearized(const SVKParams& params, const ScalarField& beta,
                                   const GridSpec& grid,
                                   const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>&
                                       dirichlet,
                                   double tol, int max_iterations) {
    params.validate();
    if (grid.dim != 3 || grid.n[0] < 9 || grid.n[1] < 9 || grid.n[2] < 9)
        throw configuration_error("linearized solve needs a 3D grid with >= 9 nodes per axis");

    const std::size_t count = grid.count();
    const double rhs_scale = (3 * params.lambda + 2 * params.mu) / 2.0;
    const NavierOperator op(params, grid);

    auto interior = [&](int i, int j, int k) {
        return i > 0 && i < grid.n[0] - 1 && j > 0 && j < grid.n[1] - 1 && k > 0 &&
               k < grid.n[2] - 1;
    };

    // Boundary-extended lift: Dirichlet data on the boundary, zero inside.
    std::vector<Eigen::Vector3d> lift(count, Eigen::Vector3d::Zero());
    for (int k = 0; k < grid.n[2]; ++k)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i)
                if (!interior(i, j, k)) lift[grid.index(i, j, k)] = dirichlet(grid.point(i, j, k));

    // b = -f + L(lift) on interior nodes, where f_a = rhs_scale * dbeta/dx_a.
    std::vector<Eigen::Vector3d> b(count, Eigen::Vector3d::Zero());
    op.apply(lift, b);  // b = -L(lift) on interior
    for (int k = 1; k + 1 < grid.n[2]; ++k)
        for (int j = 1; j + 1 < grid.n[1]; ++j)
            for (int i = 1; i + 1 < grid.n[0]; ++i) {
                const Eigen::Vector3d X = grid.point(i, j, k);
                Eigen::Vector3d f;
                for (int a = 0; a < 3; ++a) f[a] = rhs_scale * beta.partial(a, X);
                // -L u = -f  with u = lift + v:  -L v = -f + L lift
                b[grid.index(i, j, k)] = -f - b[grid.index(i, j, k)];
            }

    // Conjugate gradients on -L v = b.
    std::vector<Eigen::Vector3d> v(count, Eigen::Vector3d::Zero()), r = b,
                                 p = b, Ap(count, Eigen::Vector3d::Zero());
    const double b_norm = std::sqrt(dot_interior(grid, b, b));
    const double stop = tol * std::max(1.0, b_norm);
    double rr = dot_interior(grid, r, r);
    int it = 0;
    std::vector<double> history;
    while (std::sqrt(rr) > stop && it < max_iterations) {
        op.apply(p, Ap);
        const double pAp = dot_interior(grid, p, Ap);
        if (!(pAp > 0)) throw numeric_error("CG breakdown: operator lost positive-definiteness");
        const double alpha = rr / pAp;
        for (int k = 1; k + 1 < grid.n[2]; ++k)
            for (int j = 1; j + 1 < grid.n[1]; ++j)
                for (int i = 1; i + 1 < grid.n[0]; ++i) {
                    const std::size_t q = grid.index(i, j, k);
                    v[q] += alpha * p[q];
                    r[q] -= alpha * Ap[q];
                }
        const double rr_new = dot_interior(grid, r, r);
        for (int k = 1; k + 1 < grid.n[2]; ++k)
            for (int j = 1; j + 1 < grid.n[1]; ++j)
                for (int i = 1; i + 1 < grid.n[0]; ++i) {
                    const std::size_t q = grid.index(i, j, k);
                    p[q] = r[q] + (rr_new / rr) * p[q];
                }
        rr = rr_new;
        ++it;
        if (it % 50 == 0) history.push_back(std::sqrt(rr));
    }
    if (std::sqrt(rr) > stop) {
        std::ostringstream msg;
        msg << "CG did not converge in " << max_iterations << " iterations; residual history:";
        for (double h : history) msg << ' ' << h;
        throw numeric_error(msg.str());
    }

    DisplacementField out;
    out.grid = grid;
    out.u.resize(count);
    for (std::size_t q = 0; q < count; ++q) out.u[q] = lift[q] + v[q];
    out.solver_residual = std::sqrt(rr) / std::max(1.0, b_norm);
    out.iterations = it;
    return out;
}

CurvatureVariation linearized_curvature(const std::function<Mat(const Eigen::Vector3d&)>& dG,
                                        int dim, const Eigen::Vector3d& X, double h) {
    // Second central differences of the perturbation components.
    auto d2 = [&](int A, int B) -> Mat {
        Eigen::Vector3d ea = Eigen::Vector3d::Zero(), eb = Eigen::Vector3d::Zero();
        ea[A] = h;
        eb[B] = h;
        if (A == B) return (dG(X + ea) - 2 * dG(X) + dG(X - ea)) / (h * h);
        return (dG(X + ea + eb) - dG(X + ea - eb) - dG(X - ea + eb) + dG(X - ea - eb)) /
               (4 * h * h);
    };
    std::array<std::array<Mat, 3>, 3> H;
    for (int A = 0; A < dim; ++A)
        for (int B = A; B < dim; ++B) {
            H[A][B] = d2(A, B);
            if (A != B) H[B][A] = H[A][B];
        }

    CurvatureVariation out;
    out.riem = Tensor4(dim);
    for (int A = 0; A < dim; ++A)
        for (int B = 0; B < dim; ++B)
            for (int C = 0; C < dim; ++C)
                for (int D = 0; D < dim; ++D)
                    out.riem(A, B, C, D) = -0.5 * (H[A][C](B, D) - H[A][D](B, C) -
                                                   H[B][C](A, D) + H[B][D](A, C));
    out.ricci = Mat::Zero(dim, dim);
    for (int A = 0; A < dim; ++A)
        for (int B = 0; B < dim; ++B) {
            double v = 0;
            for (int C = 0; C < dim; ++C)
                v += -0.5 * (H[A][B](C, C) - H[A][C](B, C) - H[B][C](A, C) + H[C][C](A, B));
            out.ricci(A, B) = v;
        }
    out.scalar = 0;
    for (int A = 0; A < dim; ++A)
        for (int C = 0; C < dim; ++C) out.scalar += H[A][C](A, C) - H[C][C](A, A);
    return out;
}

BetaVerdict stress_free_beta_check(const ScalarField& beta, int dim, const GridSpec& grid,
                                   double tol) {
    if (grid.dim != dim) throw configuration_error("grid dimension mismatch");
    BetaVerdict v;
    const int kmax = dim == 3 ? grid.n[2] : 1;
    for (int k = 0; k < kmax; ++k)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i) {
                const Eigen::Vector3d X = grid.point(i, j, k);
                if (dim == 2) {
                    v.residuals[0] = std::max(v.residuals[0], std::abs(beta.laplacian(X)));
                    continue;
                }
                double d2[3][3];
                for (int a = 0; a < 3; ++a)
                    for (int b = a; b < 3; ++b) d2[a][b] = d2[b][a] = beta.partial2(a, b, X);
                const double eq[6] = {
                    d2[0][1],
                    d2[0][2],
                    d2[1][2],
                    2 * d2[0][0] + d2[1][1] + d2[2][2],
                    d2[0][0] + 2 * d2[1][1] + d2[2][2],
                    d2[0][0] + d2[1][1] + 2 * d2[2][2],
                };
                for (int q = 0; q < 6; ++q)
                    v.residuals[q] = std::max(v.residuals[q], std::abs(eq[q]));
            }
    for (double r : v.residuals) v.max_residual = std::max(v.max_residual, r);
    v.stress_free = v.max_residual <= tol;
    return v;
}

}  // namespace growthmech::linearized

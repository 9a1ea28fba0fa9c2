#pragma once

#include "growthmech/types.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace growthmech {

/// Scalar function on a chart (dim 1..3) with optional analytic first and
/// second derivatives. Missing derivatives fall back to central finite
/// differences with step `fd_step` (O(h^2) accurate).
class ScalarField {
  public:
    using Fn = std::function<double(const Eigen::Vector3d&)>;
    using GradFn = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;
    using HessFn = std::function<Eigen::Matrix3d(const Eigen::Vector3d&)>;

    ScalarField() = default;
    ScalarField(int dim, Fn f) : dim_(dim), f_(std::move(f)) {}
    ScalarField(int dim, Fn f, GradFn g, HessFn h)
        : dim_(dim), f_(std::move(f)), grad_(std::move(g)), hess_(std::move(h)) {}

    static ScalarField constant(int dim, double c) {
        return ScalarField(
            dim, [c](const Eigen::Vector3d&) { return c; },
            [](const Eigen::Vector3d&) { return Eigen::Vector3d::Zero().eval(); },
            [](const Eigen::Vector3d&) { return Eigen::Matrix3d::Zero().eval(); });
    }

    int dim() const { return dim_; }
    bool has_analytic_derivatives() const { return static_cast<bool>(grad_); }
    double fd_step() const { return h_; }
    void set_fd_step(double h) { h_ = h; }

    double operator()(const Eigen::Vector3d& x) const { return f_(x); }

    double partial(int i, const Eigen::Vector3d& x) const {
        if (grad_) return grad_(x)[i];
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e[i] = h_;
        return (f_(x + e) - f_(x - e)) / (2 * h_);
    }

    double partial2(int i, int j, const Eigen::Vector3d& x) const {
        if (hess_) return hess_(x)(i, j);
        Eigen::Vector3d ei = Eigen::Vector3d::Zero(), ej = Eigen::Vector3d::Zero();
        ei[i] = h_;
        ej[j] = h_;
        if (i == j) return (f_(x + ei) - 2 * f_(x) + f_(x - ei)) / (h_ * h_);
        return (f_(x + ei + ej) - f_(x + ei - ej) - f_(x - ei + ej) + f_(x - ei - ej)) /
               (4 * h_ * h_);
    }

    Eigen::Vector3d gradient(const Eigen::Vector3d& x) const {
        if (grad_) return grad_(x);
        Eigen::Vector3d g = Eigen::Vector3d::Zero();
        for (int i = 0; i < dim_; ++i) g[i] = partial(i, x);
        return g;
    }

    double laplacian(const Eigen::Vector3d& x) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += partial2(i, i, x);
        return s;
    }

  private:
    int dim_ = 0;
    Fn f_;
    GradFn grad_;
    HessFn hess_;
    double h_ = 1e-4;
};

/// Radial profile f(R) with first and second derivatives; the 1D workhorse
/// behind the rotationally symmetric metric families.
class Profile {
  public:
    using Fn = std::function<double(double)>;

    Profile() : Profile(constant(0.0)) {}
    Profile(Fn f, Fn df, Fn d2f) : f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {}

    static Profile analytic(Fn f, Fn df, Fn d2f) {
        return Profile(std::move(f), std::move(df), std::move(d2f));
    }

    // FD-backed derivatives.
    static Profile numeric(Fn f, double h = 1e-4) {
        auto df = [f, h](double r) { return (f(r + h) - f(r - h)) / (2 * h); };
        auto d2f = [f, h](double r) { return (f(r + h) - 2 * f(r) + f(r - h)) / (h * h); };
        return Profile(std::move(f), std::move(df), std::move(d2f));
    }

    static Profile constant(double c) {
        return Profile([c](double) { return c; }, [](double) { return 0.0; },
                       [](double) { return 0.0; });
    }
    static Profile linear(double a, double b = 0.0) {  // a*R + b
        return Profile([a, b](double r) { return a * r + b; }, [a](double) { return a; },
                       [](double) { return 0.0; });
    }

    double operator()(double r) const { return f_(r); }
    double d(double r) const { return df_(r); }
    double d2(double r) const { return d2f_(r); }

  private:
    Fn f_, df_, d2f_;
};

/// Time-parametrized radial field f(R, t); time is a frozen parameter for the
/// boundary-value solves and a dynamic variable for mass balance.
class RadialTimeField {
  public:
    using Fn = std::function<double(double, double)>;

    RadialTimeField() : RadialTimeField(constant(0.0)) {}
    explicit RadialTimeField(Fn f) : f_(std::move(f)) {}
    RadialTimeField(Fn f, Fn dR, Fn dt, Fn d2R = nullptr)
        : f_(std::move(f)), dR_(std::move(dR)), dt_(std::move(dt)), d2R_(std::move(d2R)) {}

    static RadialTimeField constant(double c) {
        return RadialTimeField([c](double, double) { return c; },
                               [](double, double) { return 0.0; },
                               [](double, double) { return 0.0; },
                               [](double, double) { return 0.0; });
    }
    static RadialTimeField steady(const Profile& p) {
        return RadialTimeField([p](double r, double) { return p(r); },
                               [p](double r, double) { return p.d(r); },
                               [](double, double) { return 0.0; },
                               [p](double r, double) { return p.d2(r); });
    }

    double operator()(double r, double t) const { return f_(r, t); }

    double dR(double r, double t) const {
        if (dR_) return dR_(r, t);
        const double h = 1e-4;
        return (f_(r + h, t) - f_(r - h, t)) / (2 * h);
    }
    double d2R(double r, double t) const {
        if (d2R_) return d2R_(r, t);
        const double h = 1e-4;
        return (f_(r + h, t) - 2 * f_(r, t) + f_(r - h, t)) / (h * h);
    }
    double dt(double r, double t) const {
        if (dt_) return dt_(r, t);
        const double h = 1e-6 * std::max(1.0, std::abs(t));
        return (f_(r, t + h) - f_(r, t - h)) / (2 * h);
    }

    Profile at_time(double t) const {
        auto f = f_;
        RadialTimeField self = *this;
        return Profile([f, t](double r) { return f(r, t); },
                       [self, t](double r) { return self.dR(r, t); },
                       [self, t](double r) { return self.d2R(r, t); });
    }

  private:
    Fn f_, dR_, dt_, d2R_;
};

}  // namespace growthmech

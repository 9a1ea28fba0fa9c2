#pragma once

#include "growthmech/types.hpp"

#include <functional>
#include <vector>

namespace growthmech::numerics {

/// Adaptive Gauss-Kronrod integration of f over [a, b]. `abs_tol` is the
/// target for the error estimate; failure to reach it raises numeric_error
/// with the achieved estimate in the message.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Cumulative integral x -> int_a^x f, backed by per-cell Gauss-Kronrod
/// panels with prefix sums. Evaluations off the panel boundaries cost one
/// extra panel. Deterministic; accuracy near machine precision for smooth f.
class CumulativeIntegral {
  public:
    CumulativeIntegral() = default;
    CumulativeIntegral(std::function<double(double)> f, double a, double b, int cells = 2048);

    double operator()(double x) const;
    double lower() const { return a_; }
    double upper() const { return b_; }

  private:
    std::function<double(double)> f_;
    double a_ = 0, b_ = 1, dx_ = 1;
    std::vector<double> prefix_;  // prefix_[k] = int_a^{a + k dx}
};

struct RootResult {
    double x = 0;
    int iterations = 0;
};

/// Bracketed root find, TOMS 748 (Brent-class) primary. The initial bracket
/// [lo, hi] is expanded by doubling (up to `max_doublings`) until a scan
/// finds a sign change; no sign change -> solver_error with bracket
/// diagnostics. With tangent_tol > 0, roots the objective merely touches
/// (no sign change, e.g. a zero-growth boundary condition) are rescued by
/// rooting the finite-difference derivative near the smallest scanned |f|
/// and accepting when |f| <= tangent_tol there.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-13, int max_doublings = 50, double tangent_tol = 0.0);

/// Plain bisection on the same expanding-bracket policy; the independent
/// cross-check partner of find_root.
RootResult find_root_bisect(const std::function<double(double)>& f, double lo, double hi,
                            double tol = 1e-13, int max_doublings = 50);

/// Worker count for data-parallel grid scans: hardware concurrency capped by
/// the GROWTHMECH_THREADS environment variable (>= 1).
int worker_count();

/// Max-reduce f(k) over k in [0, n), partitioned across workers. Safe for
/// pure f; exceptions from workers are rethrown on the calling thread.
double parallel_max(std::size_t n, const std::function<double(std::size_t)>& f);

/// One classical RK4 step for any state with (+) and scalar (*) provided via
/// axpy semantics: state = state + dt * deriv.
template <class State, class Deriv>
State rk4_step(const State& y, double t, double dt, const Deriv& f) {
    State k1 = f(t, y);
    State k2 = f(t + dt / 2, y + (dt / 2) * k1);
    State k3 = f(t + dt / 2, y + (dt / 2) * k2);
    State k4 = f(t + dt, y + dt * k3);
    return y + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace growthmech::numerics

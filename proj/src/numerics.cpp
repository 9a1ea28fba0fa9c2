#include "growthmech/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace growthmech::numerics {

namespace {
using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

// Expand [lo, hi] by doubling its width about the midpoint until a scan of
// the interval finds a sign change between consecutive probe points.
// Non-finite probe values (objective undefined there) are skipped.
std::pair<double, double> bracket_sign_change(const std::function<double(double)>& f, double lo,
                                              double hi, int max_doublings) {
    constexpr int kProbes = 17;
    for (int k = 0; k <= max_doublings; ++k) {
        double prev_x = 0, prev_f = 0;
        bool prev_ok = false;
        for (int q = 0; q < kProbes; ++q) {
            const double x = lo + (hi - lo) * q / (kProbes - 1);
            const double fx = f(x);
            if (!std::isfinite(fx)) {
                prev_ok = false;
                continue;
            }
            if (fx == 0.0) return {x, x};
            if (prev_ok && (prev_f < 0) != (fx < 0)) return {prev_x, x};
            prev_x = x;
            prev_f = fx;
            prev_ok = true;
        }
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        lo = mid - 2 * half;
        hi = mid + 2 * half;
    }
    std::ostringstream msg;
    msg << "root bracket not found after " << max_doublings << " doublings: [" << lo << ", " << hi
        << "]";
    throw solver_error(msg.str());
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    double err = 0, l1 = 0;
    const double v = GK15::integrate(f, a, b, 10, 1e-12, &err, &l1);
    // The Kronrod estimate is a conservative per-panel sum; accept on either
    // the absolute target or the estimator's own L1-relative criterion.
    if (err > std::max(abs_tol, 1e-10 * l1)) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate " << err
            << " exceeds tolerance " << abs_tol << " (L1 " << l1 << ")";
        throw numeric_error(msg.str());
    }
    return v;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, double a, double b,
                                       int cells)
    : f_(std::move(f)), a_(a), b_(b) {
    if (cells < 1 || !(b > a)) throw configuration_error("cumulative integral needs b > a");
    dx_ = (b - a) / cells;
    prefix_.resize(cells + 1);
    prefix_[0] = 0.0;
    for (int k = 0; k < cells; ++k) {
        const double x0 = a_ + k * dx_, x1 = (k + 1 == cells) ? b_ : a_ + (k + 1) * dx_;
        prefix_[k + 1] = prefix_[k] + GK15::integrate(f_, x0, x1, 1, 1e-13);
    }
}

double CumulativeIntegral::operator()(double x) const {
    if (x < a_ - 1e-12 || x > b_ + 1e-12)
        throw domain_error("cumulative integral evaluated outside [a, b]");
    x = std::clamp(x, a_, b_);
    const int k = std::min(static_cast<int>((x - a_) / dx_), static_cast<int>(prefix_.size()) - 2);
    const double xk = a_ + k * dx_;
    if (x == xk) return prefix_[k];
    return prefix_[k] + GK15::integrate(f_, xk, x, 1, 1e-13);
}

namespace {
RootResult solve_in_bracket(const std::function<double(double)>& f, double a, double b,
                            double tol) {
    if (a == b) return {a, 0};
    std::uintmax_t iters = 200;
    auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol * (1 + std::abs(x)); };
    auto r = boost::math::tools::toms748_solve(f, a, b, stop, iters);
    return {0.5 * (r.first + r.second), static_cast<int>(iters)};
}

// Grazing-root rescue: locate the extremum of f near x0 by rooting the
// central-difference derivative, accept when |f| is small enough there.
std::optional<RootResult> tangent_rescue(const std::function<double(double)>& f, double x0,
                                         double spacing, double tangent_tol) {
    const double d = 1e-5 * (1 + std::abs(x0));
    auto g = [&](double x) { return f(x + d) - f(x - d); };
    const double ga = g(x0 - spacing), gb = g(x0 + spacing);
    if (!std::isfinite(ga) || !std::isfinite(gb) || (ga < 0) == (gb < 0)) return std::nullopt;
    const auto ext = solve_in_bracket(g, x0 - spacing, x0 + spacing, 1e-14);
    const double fx = f(ext.x);
    if (std::isfinite(fx) && std::abs(fx) <= tangent_tol) return ext;
    return std::nullopt;
}
}  // namespace

RootResult find_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                     int max_doublings, double tangent_tol) {
    constexpr int kProbes = 17;
    for (int k = 0; k <= max_doublings; ++k) {
        double prev_x = 0, prev_f = 0, best_x = lo, best_f = std::numeric_limits<double>::infinity();
        bool prev_ok = false;
        for (int q = 0; q < kProbes; ++q) {
            const double x = lo + (hi - lo) * q / (kProbes - 1);
            const double fx = f(x);
            if (!std::isfinite(fx)) {
                prev_ok = false;
                continue;
            }
            if (fx == 0.0) return {x, 0};
            if (std::abs(fx) < best_f) {
                best_f = std::abs(fx);
                best_x = x;
            }
            if (prev_ok && (prev_f < 0) != (fx < 0)) return solve_in_bracket(f, prev_x, x, tol);
            prev_x = x;
            prev_f = fx;
            prev_ok = true;
        }
        if (tangent_tol > 0 && std::isfinite(best_f)) {
            const double spacing = (hi - lo) / (kProbes - 1);
            if (auto rescued = tangent_rescue(f, best_x, spacing, tangent_tol)) return *rescued;
        }
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        lo = mid - 2 * half;
        hi = mid + 2 * half;
    }
    std::ostringstream msg;
    msg << "root bracket not found after " << max_doublings << " doublings: [" << lo << ", " << hi
        << "]";
    throw solver_error(msg.str());
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* cap = std::getenv("GROWTHMECH_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) hw = std::min(hw, c);
    }
    return hw;
}

double parallel_max(std::size_t n, const std::function<double(std::size_t)>& f) {
    const int workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        double m = 0;
        for (std::size_t k = 0; k < n; ++k) m = std::max(m, f(k));
        return m;
    }
    std::vector<double> partial(workers, 0.0);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                double m = 0;
                for (std::size_t k = w; k < n; k += workers) m = std::max(m, f(k));
                partial[w] = m;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    double m = 0;
    for (double v : partial) m = std::max(m, v);
    return m;
}

RootResult find_root_bisect(const std::function<double(double)>& f, double lo, double hi,
                            double tol, int max_doublings) {
    auto [a, b] = bracket_sign_change(f, lo, hi, max_doublings);
    if (a == b) return {a, 0};
    double fa = f(a);
    int it = 0;
    while (std::abs(b - a) > tol * (1 + std::abs(a)) && it < 200) {
        const double m = 0.5 * (a + b), fm = f(m);
        if (fm == 0.0) return {m, it};
        if ((fa < 0) != (fm < 0))
            b = m;
        else {
            a = m;
            fa = fm;
        }
        ++it;
    }
    return {0.5 * (a + b), it};
}

}  // namespace growthmech::numerics

#include "growthmech/numerics.hpp"

#include <doctest.h>

#include <cmath>

namespace num = growthmech::numerics;

TEST_CASE("adaptive quadrature against closed forms") {
    CHECK(num::integrate([](double x) { return x * x; }, 0, 3) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(num::integrate([](double x) { return std::exp(-x); }, 0, 20) ==
          doctest::Approx(1.0 - std::exp(-20.0)).epsilon(1e-12));
    CHECK(num::integrate([](double x) { return std::sin(x); }, 0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cumulative integral matches direct quadrature at arbitrary points") {
    auto f = [](double x) { return std::cos(3 * x) * std::exp(0.5 * x); };
    num::CumulativeIntegral cum(f, 0.25, 2.0, 128);
    for (double x : {0.25, 0.3, 0.77, 1.5, 2.0}) {
        CHECK(cum(x) == doctest::Approx(num::integrate(f, 0.25, x)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(cum(2.5), growthmech::domain_error);
}

TEST_CASE("root finders agree and expand brackets") {
    auto f = [](double x) { return x * x - 2.0; };
    const auto a = num::find_root(f, 1.3, 1.5);
    const auto b = num::find_root_bisect(f, 1.3, 1.5);
    CHECK(a.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(b.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    // brackets that do not straddle the root: expansion + scan required
    const auto c = num::find_root(f, 0.9, 1.0);
    CHECK(c.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    const auto d = num::find_root(f, 3.0, 4.0);
    CHECK(std::abs(std::abs(d.x) - std::sqrt(2.0)) < 1e-9);
    CHECK_THROWS_AS(num::find_root([](double) { return 1.0; }, 0, 1, 1e-13, 5),
                    growthmech::solver_error);
}

TEST_CASE("rk4 step has 4th-order local accuracy") {
    // y' = y, y(0) = 1
    auto f = [](double, double y) { return y; };
    const double dt = 0.05;
    const double y1 = num::rk4_step(1.0, 0.0, dt, f);  // local error ~ dt^5/120
    CHECK(std::abs(y1 - std::exp(dt)) < 1e-8);
}

#include "growthmech/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>

using growthmech::Expr;
using growthmech::Profile;
using growthmech::usage_error;

TEST_CASE("expression evaluation over R, X, t") {
    const Eigen::Vector3d x(0.5, -1.25, 2.0);
    CHECK(Expr::parse("2 + 3*X1").eval(x) == doctest::Approx(3.5));
    CHECK(Expr::parse("X1^2 - X2*X3").eval(x) == doctest::Approx(0.25 + 2.5));
    CHECK(Expr::parse("R").eval(x) == doctest::Approx(x.norm()));
    CHECK(Expr::parse("exp(ln(2.5))").eval(x) == doctest::Approx(2.5));
    CHECK(Expr::parse("cos(X1)^2 + sin(X1)^2").eval(x) == doctest::Approx(1.0));
    CHECK(Expr::parse("t*X1").eval(x, 3.0) == doctest::Approx(1.5));
    CHECK(Expr::parse("-R^2").eval(Eigen::Vector3d(2, 0, 0)) == doctest::Approx(-4.0));
    CHECK(Expr::parse("X1^-2").eval(Eigen::Vector3d(2, 0, 0)) == doctest::Approx(0.25));
}

TEST_CASE("parse errors carry a column") {
    CHECK_THROWS_WITH_AS(Expr::parse("ln("), doctest::Contains("col 4"), usage_error);
    CHECK_THROWS_AS(Expr::parse("2 +"), usage_error);
    CHECK_THROWS_AS(Expr::parse("foo(1)"), usage_error);
    CHECK_THROWS_AS(Expr::parse("1 2"), usage_error);
    CHECK_THROWS_AS(Expr::parse("X1^X2"), usage_error);
}

TEST_CASE("symbolic derivatives match finite differences") {
    const char* exprs[] = {"-R", "-R^2", "0.37*R", "cos(R)^2", "-ln(R^2)",
                           "exp(0.2*X1 - X2)", "X1*X2 + sin(3*X2)", "t*R + t^2"};
    const Eigen::Vector3d x(1.3, 0.7, -0.4);
    const double t = 0.9, h = 1e-5;
    for (const char* s : exprs) {
        const Expr e = Expr::parse(s);
        for (int v = 0; v < 4; ++v) {
            Eigen::Vector3d xp = x, xm = x;
            double tp = t, tm = t;
            if (v < 3) {
                xp[v] += h;
                xm[v] -= h;
            } else {
                tp += h;
                tm -= h;
            }
            const double fd = (e.eval(xp, tp) - e.eval(xm, tm)) / (2 * h);
            CHECK(e.derivative(v).eval(x, t) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("profile view gives radial derivatives") {
    const Profile om = Expr::parse("-R^2").as_profile();
    CHECK(om(1.5) == doctest::Approx(-2.25));
    CHECK(om.d(1.5) == doctest::Approx(-3.0));
    CHECK(om.d2(1.5) == doctest::Approx(-2.0));
}

TEST_CASE("time field splits R and t derivatives") {
    const auto f = Expr::parse("t*R^2").as_radial_time_field();
    CHECK(f(2.0, 3.0) == doctest::Approx(12.0));
    CHECK(f.dR(2.0, 3.0) == doctest::Approx(12.0));
    CHECK(f.dt(2.0, 3.0) == doctest::Approx(4.0));
    CHECK(Expr::parse("t*R").depends_on_time());
    CHECK(!Expr::parse("R^2").depends_on_time());
}

TEST_CASE("tabulated profile reproduces a cubic") {
    // natural spline is exact on data it interpolates and close on smooth f
    const std::string path = "test_table_tmp.csv";
    {
        std::ofstream out(path);
        out << "# R, omega\n";
        for (int i = 0; i <= 40; ++i) {
            const double r = 0.5 + i * 0.05;
            out << r << "," << std::sin(r) << "\n";
        }
    }
    const Profile p = growthmech::profile_from_table(path);
    CHECK(p(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-6));
    CHECK(p.d(1.3) == doctest::Approx(std::cos(1.3)).epsilon(1e-3));
    CHECK(growthmech::is_table_spec("@foo.csv"));
    CHECK(!growthmech::is_table_spec("-R^2"));
    std::remove(path.c_str());
}

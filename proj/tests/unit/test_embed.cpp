#include "growthmech/embed.hpp"

#include "growthmech/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>

using namespace growthmech;
using namespace growthmech::embed;

TEST_CASE("discriminants of the four published cases") {
    // iso, Omega = -R: M^2 - N'^2 = e^{-2R}(2R - R^2), valid on (0, 2)
    {
        auto [M, N] = profile_functions_iso(Expr::parse("-R").as_profile());
        for (double R : {0.2, 0.9, 1.7}) {
            const double expected = std::exp(-2 * R) * (2 * R - R * R);
            CHECK(discriminant(M, N, R) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(discriminant(M, N, 2.2) < 0);
    }
    // iso, Omega = -R^2: 4 R^2 e^{-2R^2} (1 - R^2), valid on (0, 1)
    {
        auto [M, N] = profile_functions_iso(Expr::parse("-R^2").as_profile());
        for (double R : {0.3, 0.8}) {
            const double expected = 4 * R * R * std::exp(-2 * R * R) * (1 - R * R);
            CHECK(discriminant(M, N, R) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(discriminant(M, N, 1.1) < 0);
    }
    // aniso, Omega = cos^2 R, Pi = 0: e^{2 cos^2 R} - 1 > 0 everywhere
    {
        auto [M, N] = profile_functions_aniso(Expr::parse("cos(R)^2").as_profile(),
                                              Profile::constant(0.0));
        for (double R : {0.5, 2.0, 5.0, 9.0}) {
            const double expected = std::exp(2 * std::cos(R) * std::cos(R)) - 1;
            CHECK(discriminant(M, N, R) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(discriminant(M, N, R) >= 0);
        }
    }
    // aniso, Omega = 0, Pi = -ln R^2: 1 - 1/R^4, valid R > 1
    {
        auto [M, N] = profile_functions_aniso(Profile::constant(0.0),
                                              Expr::parse("-ln(R^2)").as_profile());
        for (double R : {1.2, 2.0, 4.0}) {
            const double expected = 1 - 1 / std::pow(R, 4);
            CHECK(discriminant(M, N, R) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(discriminant(M, N, 0.8) < 0);
    }
}

TEST_CASE("flat polar metric embeds as a plane") {
    const Profile M = Profile::constant(1.0);
    const Profile N = Profile::linear(1.0);  // N = R
    const auto curve = embed_metric(M, N, 0.5, 2.0, 64);
    CHECK(curve.fully_valid);
    for (std::size_t i = 0; i < curve.s.size(); ++i) {
        CHECK(curve.rho[i] == doctest::Approx(curve.s[i]));
        CHECK(std::abs(curve.xi[i]) < 1e-12);
    }
}

TEST_CASE("partial embeddability returns the maximal valid prefix") {
    auto [M, N] = profile_functions_iso(Expr::parse("-R").as_profile());
    const auto curve = embed_metric(M, N, 0.1, 3.0, 128);
    CHECK(!curve.fully_valid);
    CHECK(curve.s_valid_end == doctest::Approx(2.0).epsilon(1e-6));
    // xi is monotone nondecreasing on the valid prefix
    double prev = -1;
    for (std::size_t i = 0; i < curve.s.size() && curve.valid[i]; ++i) {
        CHECK(curve.xi[i] >= prev - 1e-14);
        prev = curve.xi[i];
    }
    // fully outside: error
    auto [Ma, Na] = profile_functions_aniso(Profile::constant(0.0),
                                            Expr::parse("-ln(R^2)").as_profile());
    CHECK_THROWS_AS(embed_metric(Ma, Na, 0.3, 0.8, 32), geometry_error);
}

TEST_CASE("revolved plane is flat with parallel normals") {
    const auto curve = embed_metric(Profile::constant(1.0), Profile::linear(1.0), 0.5, 2.0, 32);
    const auto mesh = revolve(curve, 48);
    CHECK(mesh.vertices.size() == 32u * 48u);
    CHECK(mesh.faces.size() == 31u * 48u * 2u);
    Eigen::Vector3d first_normal = Eigen::Vector3d::Zero();
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d a = mesh.vertices[f[0]], b = mesh.vertices[f[1]],
                              c = mesh.vertices[f[2]];
        Eigen::Vector3d nrm = (b - a).cross(c - a).normalized();
        if (first_normal.isZero())
            first_normal = nrm;
        else
            CHECK(nrm.dot(first_normal) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("induced metric of the dome mesh matches the target") {
    // iso Omega = -R^2 on its valid interval, production resolution
    auto [M, N] = profile_functions_iso(Expr::parse("-R^2").as_profile());
    const auto curve = embed_metric(M, N, 0.05, 0.95, 256);
    REQUIRE(curve.fully_valid);
    const auto mesh = revolve(curve, 128);
    const auto chk = check_induced_metric(curve, mesh, M, N, 128);
    CHECK(chk.max_rel_error_s < 1e-3);
    CHECK(chk.max_rel_error_theta < 1e-3);
}

TEST_CASE("angle defect sign matches the intrinsic curvature sign") {
    // Omega = -R^2: scalar curvature -2 e^{-2Om} lap(Om) = 8 e^{2R^2} > 0
    auto [M, N] = profile_functions_iso(Expr::parse("-R^2").as_profile());
    const auto curve = embed_metric(M, N, 0.1, 0.9, 64);
    const auto mesh = revolve(curve, 64);
    // interior vertex ring i = 32: angle defect of the vertex star
    const int n_theta = 64, i = 32, j = 10;
    const int v = i * n_theta + j;
    const Eigen::Vector3d p = mesh.vertices[v];
    double angle_sum = 0;
    auto at = [&](int ii, int jj) { return mesh.vertices[ii * n_theta + ((jj + n_theta) % n_theta)]; };
    const Eigen::Vector3d ring[6] = {at(i - 1, j),     at(i - 1, j + 1), at(i, j + 1),
                                     at(i + 1, j),     at(i + 1, j - 1), at(i, j - 1)};
    for (int k = 0; k < 6; ++k) {
        const Eigen::Vector3d a = ring[k] - p, b = ring[(k + 1) % 6] - p;
        angle_sum += std::acos(a.normalized().dot(b.normalized()));
    }
    const double defect = 2 * M_PI - angle_sum;
    CHECK(defect > 0);  // positive curvature dome

    // sanity: the intrinsic scalar curvature from the radial metric family
    const diffgeo::RadialMetric metric(diffgeo::RadialFamily::Iso2D,
                                       Expr::parse("-R^2").as_profile(), 0.1, 0.9);
    const auto [ric, scal] = diffgeo::ricci_scalar(metric, Eigen::Vector3d(0.5, 0, 0));
    CHECK(scal > 0);
}

TEST_CASE("obj export writes a parseable deterministic mesh") {
    const auto curve = embed_metric(Profile::constant(1.0), Profile::linear(1.0), 0.5, 1.0, 8);
    const auto mesh = revolve(curve, 12);
    const std::string path = "embed_test_tmp.obj";
    mesh.write_obj(path, "flat annulus");
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int v = 0, f = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) ++f;
    }
    CHECK(v == static_cast<int>(mesh.vertices.size()));
    CHECK(f == static_cast<int>(mesh.faces.size()));
    std::remove(path.c_str());
}

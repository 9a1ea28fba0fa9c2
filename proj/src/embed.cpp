#include "growthmech/embed.hpp"

#include "growthmech/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace growthmech::embed {

double discriminant(const Profile& M, const Profile& N, double s) {
    const double m = M(s), np = N.d(s);
    return m * m - np * np;
}

std::pair<Profile, Profile> profile_functions_iso(const Profile& omega) {
    Profile M([omega](double r) { return std::exp(omega(r)); },
              [omega](double r) { return std::exp(omega(r)) * omega.d(r); },
              [omega](double r) {
                  const double w1 = omega.d(r);
                  return std::exp(omega(r)) * (w1 * w1 + omega.d2(r));
              });
    Profile N([omega](double r) { return r * std::exp(omega(r)); },
              [omega](double r) { return std::exp(omega(r)) * (1 + r * omega.d(r)); },
              [omega](double r) {
                  const double w1 = omega.d(r), w2 = omega.d2(r);
                  return std::exp(omega(r)) * (w1 * (1 + r * w1) + w1 + r * w2);
              });
    return {M, N};
}

std::pair<Profile, Profile> profile_functions_aniso(const Profile& omega, const Profile& pi) {
    Profile M([omega](double r) { return std::exp(omega(r)); },
              [omega](double r) { return std::exp(omega(r)) * omega.d(r); },
              [omega](double r) {
                  const double w1 = omega.d(r);
                  return std::exp(omega(r)) * (w1 * w1 + omega.d2(r));
              });
    Profile N([pi](double r) { return r * std::exp(pi(r)); },
              [pi](double r) { return std::exp(pi(r)) * (1 + r * pi.d(r)); },
              [pi](double r) {
                  const double p1 = pi.d(r), p2 = pi.d2(r);
                  return std::exp(pi(r)) * (p1 * (1 + r * p1) + p1 + r * p2);
              });
    return {M, N};
}

EmbeddingCurve embed_metric(const Profile& M, const Profile& N, double s0, double s1,
                            int samples) {
    if (!(s1 > s0) || samples < 2) throw configuration_error("embed needs s1 > s0, samples >= 2");
    if (!(M(s0) > 0) || !(N(s0) > 0))
        throw configuration_error("embedding requires M, N > 0 on the domain");

    EmbeddingCurve curve;
    curve.s.resize(samples);
    curve.rho.resize(samples);
    curve.xi.assign(samples, 0.0);
    curve.valid.assign(samples, false);

    // Locate the end of the valid prefix (bisection on the discriminant when
    // it changes sign between samples).
    double end = s1;
    bool violated = false;
    const double ds = (s1 - s0) / (samples - 1);
    if (discriminant(M, N, s0) < 0) throw geometry_error("metric not embeddable anywhere near s0");
    for (int i = 1; i < samples; ++i) {
        const double s = s0 + i * ds;
        if (discriminant(M, N, s) < 0) {
            double lo = s - ds, hi = s;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (discriminant(M, N, mid) >= 0 ? lo : hi) = mid;
            }
            end = lo;
            violated = true;
            break;
        }
    }
    curve.s_valid_end = end;
    curve.fully_valid = !violated;

    auto integrand = [&M, &N](double s) {
        const double d = discriminant(M, N, s);
        return d > 0 ? std::sqrt(d) : 0.0;
    };
    numerics::CumulativeIntegral xi(integrand, s0, end, std::max(512, 4 * samples));
    for (int i = 0; i < samples; ++i) {
        const double s = s0 + i * ds;
        curve.s[i] = s;
        curve.rho[i] = N(s);
        if (s <= end + 1e-14) {
            curve.valid[i] = discriminant(M, N, s) >= 0;
            if (curve.valid[i]) curve.xi[i] = xi(std::min(s, end));
        }
    }
    return curve;
}

TriangleMesh revolve(const EmbeddingCurve& curve, int n_theta) {
    if (n_theta < 3) throw configuration_error("revolve needs at least 3 angular segments");
    std::vector<int> rows;
    for (std::size_t i = 0; i < curve.s.size(); ++i)
        if (curve.valid[i]) rows.push_back(static_cast<int>(i));
    if (rows.size() < 2) throw configuration_error("fewer than 2 valid samples to revolve");

    TriangleMesh mesh;
    mesh.vertices.reserve(rows.size() * n_theta);
    for (int row : rows) {
        const double rho = curve.rho[row], z = curve.xi[row];
        for (int j = 0; j < n_theta; ++j) {
            const double th = 2 * M_PI * j / n_theta;
            mesh.vertices.emplace_back(rho * std::cos(th), rho * std::sin(th), z);
        }
    }
    // Band between consecutive rows, wrapping in theta. Outward orientation:
    // for an increasing-xi surface of revolution the outward normal points
    // away from the axis; order triangles counterclockwise seen from there.
    const int nr = static_cast<int>(rows.size());
    for (int i = 0; i + 1 < nr; ++i)
        for (int j = 0; j < n_theta; ++j) {
            const int jn = (j + 1) % n_theta;
            const int a = i * n_theta + j, b = i * n_theta + jn;
            const int c = (i + 1) * n_theta + j, d = (i + 1) * n_theta + jn;
            mesh.faces.push_back({a, b, d});
            mesh.faces.push_back({a, d, c});
        }
    return mesh;
}

void TriangleMesh::write_obj(const std::string& path, const std::string& header_comment) const {
    std::ofstream out(path);
    if (!out) throw numeric_error("cannot open OBJ output: " + path);
    if (!header_comment.empty()) {
        out << "# " << header_comment << "\n";
    }
    char buf[128];
    for (const auto& v : vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& f : faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1
                                    << "\n";
}

InducedMetricCheck check_induced_metric(const EmbeddingCurve& curve, const TriangleMesh& mesh,
                                        const Profile& M, const Profile& N, int n_theta) {
    std::vector<int> rows;
    for (std::size_t i = 0; i < curve.s.size(); ++i)
        if (curve.valid[i]) rows.push_back(static_cast<int>(i));
    InducedMetricCheck chk;
    const int nr = static_cast<int>(rows.size());
    for (int i = 0; i + 1 < nr; ++i) {
        const double s_lo = curve.s[rows[i]], s_hi = curve.s[rows[i + 1]];
        const double s_mid = 0.5 * (s_lo + s_hi);
        // meridian edge (fixed theta = 0)
        const Eigen::Vector3d p0 = mesh.vertices[i * n_theta];
        const Eigen::Vector3d p1 = mesh.vertices[(i + 1) * n_theta];
        const double target_s = M(s_mid) * (s_hi - s_lo);
        if (target_s > 0)
            chk.max_rel_error_s = std::max(chk.max_rel_error_s,
                                           std::abs((p1 - p0).norm() - target_s) / target_s);
        // parallel edge at this row (chord vs arc N dTheta)
        const Eigen::Vector3d q0 = mesh.vertices[i * n_theta];
        const Eigen::Vector3d q1 = mesh.vertices[i * n_theta + 1];
        const double dth = 2 * M_PI / n_theta;
        const double chord_target = 2 * N(s_lo) * std::sin(dth / 2);
        if (chord_target > 0)
            chk.max_rel_error_theta =
                std::max(chk.max_rel_error_theta,
                         std::abs((q1 - q0).norm() - chord_target) / chord_target);
    }
    return chk;
}

}  // namespace growthmech::embed

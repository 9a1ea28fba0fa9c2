#pragma once

#include "growthmech/diffgeo.hpp"
#include "growthmech/scalar_field.hpp"
#include "growthmech/types.hpp"

#include <string>
#include <vector>

namespace growthmech::embed {

/// Profile curve (rho(s), xi(s)) realizing the metric M^2 ds^2 + N^2 dTheta^2
/// as a surface of revolution: rho = N, xi' = sqrt(M^2 - N'^2), xi(s0) = 0.
/// `valid` marks samples where M^2 >= N'^2; the curve data stops at the first
/// violation (maximal valid prefix).
struct EmbeddingCurve {
    std::vector<double> s;      // arc parameter samples (= R)
    std::vector<double> rho;    // N(s)
    std::vector<double> xi;     // height
    std::vector<bool> valid;
    double s_valid_end = 0;     // end of the valid prefix interval
    bool fully_valid = false;
};

/// M, N > 0 on [s0, s1]. N' analytic when the profile supplies it. Raises
/// geometry_error when no valid prefix exists at all.
EmbeddingCurve embed_metric(const Profile& M, const Profile& N, double s0, double s1,
                            int samples = 256);

/// Convenience builders for the rotationally symmetric families:
///   iso   : M = e^Om,  N = R e^Om
///   aniso : M = e^Om,  N = R e^Pi
std::pair<Profile, Profile> profile_functions_iso(const Profile& omega);
std::pair<Profile, Profile> profile_functions_aniso(const Profile& omega, const Profile& pi);

/// M^2 - N'^2, the embeddability discriminant.
double discriminant(const Profile& M, const Profile& N, double s);

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;  // counterclockwise from outside

    void write_obj(const std::string& path, const std::string& header_comment = "") const;
};

/// Revolve the valid prefix of the curve about the z-axis into a closed band
/// (n_theta segments around). Fewer than 2 valid samples raises
/// configuration_error.
TriangleMesh revolve(const EmbeddingCurve& curve, int n_theta);

struct InducedMetricCheck {
    double max_rel_error_s = 0;      // meridian edge lengths vs M ds
    double max_rel_error_theta = 0;  // parallel edge lengths vs N dTheta
};

/// Discrete first-fundamental-form check of a revolved mesh against the
/// target (M, N).
InducedMetricCheck check_induced_metric(const EmbeddingCurve& curve, const TriangleMesh& mesh,
                                        const Profile& M, const Profile& N, int n_theta);

}  // namespace growthmech::embed

// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/shape_diameter.hpp"

#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <algorithm>
#include <cmath>

namespace nudf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Orthonormal frame completion with a deterministic reference pick.
void make_frame(const Vec3& axis, Vec3& e1, Vec3& e2) {
    int smallest = 0;
    axis.cwiseAbs().minCoeff(&smallest);
    Vec3 ref = Vec3::Zero();
    ref[smallest] = 1;
    e1 = axis.cross(ref).normalized();
    e2 = axis.cross(e1);
}

std::optional<double> aggregate(std::vector<double>& hits, SdConfig::Aggregation mode) {
    if (hits.empty()) return std::nullopt;
    if (mode == SdConfig::Aggregation::RobustMedianFiltered && hits.size() >= 3) {
        std::sort(hits.begin(), hits.end());
        const double median = hits[hits.size() / 2];
        double mean = 0;
        for (const double t : hits) mean += t;
        mean /= double(hits.size());
        double var = 0;
        for (const double t : hits) var += (t - mean) * (t - mean);
        const double stddev = std::sqrt(var / double(hits.size()));
        double kept_sum = 0;
        std::size_t kept = 0;
        for (const double t : hits) {
            if (std::abs(t - median) <= stddev) {
                kept_sum += t;
                ++kept;
            }
        }
        if (kept > 0) return kept_sum / double(kept);
        return median;
    }
    double sum = 0;
    for (const double t : hits) sum += t;
    return sum / double(hits.size());
}

}  // namespace

std::vector<Vec3> cone_ray_directions(const Vec3& axis, double half_angle_deg, int n, std::uint64_t seed) {
    if (n < 1) throw InputError("cone_ray_directions: n must be at least 1");
    if (half_angle_deg < 0 || half_angle_deg >= 90)
        throw InputError("cone_ray_directions: half angle must be in [0, 90)");
    const Vec3 a = axis.normalized();

    std::vector<Vec3> dirs;
    dirs.reserve(std::size_t(n));
    if (half_angle_deg == 0) {
        dirs.assign(std::size_t(n), a);
        return dirs;
    }

    Vec3 e1, e2;
    make_frame(a, e1, e2);
    const double cos_cap = std::cos(half_angle_deg * kPi / 180.0);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        // Uniform over the cap: cos(theta) uniform in [cos_cap, 1].
        const double c = 1.0 - rng.uniform() * (1.0 - cos_cap);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = 2 * kPi * rng.uniform();
        dirs.push_back(c * a + s * std::cos(phi) * e1 + s * std::sin(phi) * e2);
    }
    return dirs;
}

SdResult shape_diameter_at(const MeshIndex& index, const Vec3& point, const Vec3& normal, const SdConfig& cfg,
                           std::uint64_t seed) {
    const double diag = index.mesh().bbox_diagonal();
    const double t_min = cfg.t_min >= 0 ? cfg.t_min : 1e-5 * diag;
    const double t_max = diag;

    SdResult result;
    for (int orientation = 0; orientation < 2; ++orientation) {
        const Vec3 axis = orientation == 0 ? normal : Vec3(-normal);
        const auto dirs =
            cone_ray_directions(axis, cfg.cone_half_angle_deg, cfg.n_rays, derive_stream(seed, std::uint64_t(orientation)));
        std::vector<double> hits;
        hits.reserve(dirs.size());
        for (const Vec3& dir : dirs) {
            const auto hit = index.ray_first_hit(point, dir, t_min, t_max);
            if (hit) hits.push_back(hit->t);
        }
        const double fraction = double(hits.size()) / double(cfg.n_rays);
        const auto sd = aggregate(hits, cfg.aggregation);
        if (orientation == 0) {
            result.sd_forward = sd;
            result.hit_fraction_forward = fraction;
        } else {
            result.sd_flipped = sd;
            result.hit_fraction_flipped = fraction;
        }
    }
    return result;
}

std::vector<SdResult> shape_diameter_field(const MeshIndex& index, const SurfaceSamples& samples,
                                           const SdConfig& cfg, std::uint64_t seed) {
    std::vector<SdResult> out(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        out[i] = shape_diameter_at(index, samples.points[i], samples.normals[i], cfg, derive_stream(seed, i));
    });
    return out;
}

}  // namespace nudf

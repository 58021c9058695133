// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/bvh.hpp"
#include "nudf/mesh.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nudf {

// Local thickness probe: rays in a cone around the (possibly flipped) surface
// normal, aggregated over the nearest hits.
struct SdConfig {
    double cone_half_angle_deg = 45.0;  // aperture measured from the cone axis
    int n_rays = 30;
    double t_min = -1.0;                // <0: auto, 1e-5 x bbox diagonal
    enum class Aggregation { Mean, RobustMedianFiltered } aggregation = Aggregation::Mean;
};

struct SdResult {
    std::optional<double> sd_forward;   // cone along +normal; empty when no ray hit
    std::optional<double> sd_flipped;   // cone along -normal
    double hit_fraction_forward = 0;
    double hit_fraction_flipped = 0;

    // Smaller of the available orientations; empty when both cones miss.
    std::optional<double> min_sd() const {
        if (sd_forward && sd_flipped) return std::min(*sd_forward, *sd_flipped);
        return sd_forward ? sd_forward : sd_flipped;
    }
};

// n unit vectors uniformly distributed by solid angle over the spherical cap
// of half_angle degrees around axis; deterministic per seed.
std::vector<Vec3> cone_ray_directions(const Vec3& axis, double half_angle_deg, int n, std::uint64_t seed);

SdResult shape_diameter_at(const MeshIndex& index, const Vec3& point, const Vec3& normal, const SdConfig& cfg,
                           std::uint64_t seed);

// Elementwise shape_diameter_at with per-sample substreams keyed by
// (seed, sample index); order preserved, thread-count independent.
std::vector<SdResult> shape_diameter_field(const MeshIndex& index, const SurfaceSamples& samples,
                                           const SdConfig& cfg, std::uint64_t seed);

}  // namespace nudf

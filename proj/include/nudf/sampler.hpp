// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/bvh.hpp"
#include "nudf/mesh.hpp"
#include "nudf/shape_diameter.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nudf {

// Training-set generator settings. Length-valued fields (thresholds, sigmas)
// are in the same units as the mesh they are applied to. Near-surface offsets
// use N(0, SD/4) of the matching cone orientation below sd_threshold; wider
// shells at sigma1/sigma2 above it (the alternative reading, sigma1/sigma2
// everywhere, is not implemented).
struct SamplerConfig {
    std::size_t n_uniform = 10000;
    std::size_t n_surface = 100000;
    double lambda = 500;        // selection weight for small-SD candidates, >= 1
    double sd_threshold = 10;   // small/large split on min-orientation SD
    double sigma1 = 10;         // large-SD shell, also the no-hit fallback
    double sigma2 = 20;         // second large-SD shell
    double sigma_split = 0.5;   // fraction of large-SD emissions using sigma1
    SdConfig sd;
    Box3 domain{Vec3(-1, -1, -1), Vec3(1, 1, 1)};  // offsets are redrawn until inside
    std::uint64_t seed = 0;
};

// One near-surface point plus the bookkeeping tests need to audit it.
struct SurfaceEmission {
    Vec3 position = Vec3::Zero();  // final location, inside the domain box
    Vec3 candidate = Vec3::Zero(); // surface point the offset started from
    Vec3 normal = Vec3::Zero();    // direction actually used (already negated when flipped)
    int triangle_id = -1;
    double offset = 0;             // signed displacement along normal
    double sigma = 0;              // standard deviation the offset was drawn with
    bool flipped = false;
    bool small_sd = false;
    bool clamped = false;          // ran out of redraws, position clamped to the box
};

struct SampleMeta {
    std::uint64_t mesh_hash = 0;
    std::uint64_t seed = 0;
    SamplerConfig config;
    NormalizeTransform transform;
    bool has_sidecar = false;
};

// Labelled supervision pairs: a position and its unsigned distance.
struct SampleSet {
    std::vector<Vec3> positions;
    std::vector<double> distances;
    SampleMeta meta;

    std::size_t size() const { return positions.size(); }
};

// n i.i.d. uniform points in the box, deterministic per seed.
std::vector<Vec3> generate_uniform_samples(const Box3& box, std::size_t n, std::uint64_t seed);

// SD-adaptive near-surface points. Candidates are area-weighted surface
// samples (one per emitted pair); candidates whose min-orientation SD falls
// below cfg.sd_threshold are selected with weight cfg.lambda, the rest with
// weight 1. Each selection emits one point along the forward barycentric
// normal and one along the flipped normal. An odd cfg.n_surface is rounded
// down (points come in pairs).
std::vector<SurfaceEmission> generate_surface_samples_detailed(const TriangleMesh& mesh, const MeshIndex& index,
                                                               const SamplerConfig& cfg);
std::vector<Vec3> generate_surface_samples(const TriangleMesh& mesh, const MeshIndex& index,
                                           const SamplerConfig& cfg);

// Ground-truth unsigned distances for the given points; positions pass
// through unchanged and meta.mesh_hash records the labelling mesh.
SampleSet label_distances(const MeshIndex& index, const std::vector<Vec3>& points);

// Binary sample file plus a JSON sidecar (<name>.meta.json) echoing the
// config, seed, mesh hash and normalization transform. Layout: magic
// "NUDS0001", u64 little-endian count, then count records of float32
// x, y, z, distance.
void write_samples(const SampleSet& set, const std::string& path);
SampleSet read_samples(const std::string& path);

// Sidecar path for a sample file: extension replaced by ".meta.json".
std::string sample_sidecar_path(const std::string& path);

}  // namespace nudf

// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/sampler.hpp"

#include "nudf/config_io.hpp"
#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace nudf {

namespace {

// Substream purposes, so candidate generation, SD probing and per-pair
// emission never share RNG state.
constexpr std::uint64_t kStreamCandidates = 1;
constexpr std::uint64_t kStreamShapeDiameter = 2;
constexpr std::uint64_t kStreamPairs = 3;

void check_config(const SamplerConfig& cfg) {
    if (cfg.lambda < 1) throw InputError("sampler lambda must be >= 1");
    if (!(cfg.sigma1 > 0) || !(cfg.sigma2 > 0)) throw InputError("sampler sigmas must be > 0");
    if (cfg.sigma_split < 0 || cfg.sigma_split > 1) throw InputError("sigma_split must be in [0,1]");
    if (cfg.domain.isEmpty()) throw InputError("sampler domain box is empty");
}

void append_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void append_f32_le(std::string& out, float f) {
    const std::uint32_t v = std::bit_cast<std::uint32_t>(f);
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

std::uint64_t read_u64_le(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(p[i])) << (8 * i);
    return v;
}

float read_f32_le(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(p[i])) << (8 * i);
    return std::bit_cast<float>(v);
}

}  // namespace

std::vector<Vec3> generate_uniform_samples(const Box3& box, std::size_t n, std::uint64_t seed) {
    if (box.isEmpty()) throw InputError("uniform sample box is empty");
    std::vector<Vec3> points(n);
    parallel_for(n, [&](std::size_t i) {
        Rng rng(seed, i);
        points[i] = rng.uniform_in_box(box);
    });
    return points;
}

std::vector<SurfaceEmission> generate_surface_samples_detailed(const TriangleMesh& mesh, const MeshIndex& index,
                                                               const SamplerConfig& cfg) {
    check_config(cfg);
    const std::size_t n_pairs = cfg.n_surface / 2;
    if (n_pairs == 0) return {};

    const SurfaceSamples candidates = area_weighted_sample(mesh, n_pairs, derive_stream(cfg.seed, kStreamCandidates));
    const std::vector<SdResult> sd =
        shape_diameter_field(index, candidates, cfg.sd, derive_stream(cfg.seed, kStreamShapeDiameter));

    std::vector<char> small(n_pairs);
    std::vector<double> cdf(n_pairs);
    double total = 0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const auto m = sd[i].min_sd();
        small[i] = m && *m < cfg.sd_threshold;
        total += small[i] ? cfg.lambda : 1.0;
        cdf[i] = total;
    }

    std::vector<SurfaceEmission> out(2 * n_pairs);
    parallel_for(n_pairs, [&](std::size_t k) {
        Rng rng(cfg.seed, kStreamPairs, k);
        const double u = rng.uniform() * total;
        std::size_t c = std::size_t(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (c >= n_pairs) c = n_pairs - 1;

        for (int orientation = 0; orientation < 2; ++orientation) {
            const bool flipped = orientation == 1;
            SurfaceEmission e;
            e.candidate = candidates.points[c];
            e.normal = flipped ? Vec3(-candidates.normals[c]) : candidates.normals[c];
            e.triangle_id = candidates.triangle_ids[c];
            e.flipped = flipped;
            e.small_sd = small[c] != 0;

            const std::optional<double>& sd_here = flipped ? sd[c].sd_flipped : sd[c].sd_forward;
            if (e.small_sd)
                e.sigma = sd_here ? *sd_here / 4.0 : cfg.sigma1;
            else
                e.sigma = rng.uniform() < cfg.sigma_split ? cfg.sigma1 : cfg.sigma2;

            e.offset = rng.normal(0.0, e.sigma);
            e.position = e.candidate + e.offset * e.normal;
            for (int retry = 0; retry < 10 && !cfg.domain.contains(e.position); ++retry) {
                e.offset = rng.normal(0.0, e.sigma);
                e.position = e.candidate + e.offset * e.normal;
            }
            if (!cfg.domain.contains(e.position)) {
                e.position = e.position.cwiseMax(cfg.domain.min()).cwiseMin(cfg.domain.max());
                e.clamped = true;
            }
            out[2 * k + std::size_t(orientation)] = e;
        }
    });
    return out;
}

std::vector<Vec3> generate_surface_samples(const TriangleMesh& mesh, const MeshIndex& index,
                                           const SamplerConfig& cfg) {
    const std::vector<SurfaceEmission> detailed = generate_surface_samples_detailed(mesh, index, cfg);
    std::vector<Vec3> points;
    points.reserve(detailed.size());
    for (const SurfaceEmission& e : detailed) points.push_back(e.position);
    return points;
}

SampleSet label_distances(const MeshIndex& index, const std::vector<Vec3>& points) {
    SampleSet set;
    set.positions = points;
    set.distances = index.batch_unsigned_distance(points);
    set.meta.mesh_hash = index.mesh().content_hash();
    return set;
}

std::string sample_sidecar_path(const std::string& path) {
    std::filesystem::path p(path);
    p.replace_extension(".meta.json");
    return p.string();
}

void write_samples(const SampleSet& set, const std::string& path) {
    std::string bytes;
    bytes.reserve(16 + 16 * set.size());
    bytes.append("NUDS0001", 8);
    append_u64_le(bytes, set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        append_f32_le(bytes, float(set.positions[i].x()));
        append_f32_le(bytes, float(set.positions[i].y()));
        append_f32_le(bytes, float(set.positions[i].z()));
        append_f32_le(bytes, float(set.distances[i]));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw IoError("write failed: " + path);

    nlohmann::json side{{"format", "NUDS0001"},
                        {"config", to_json(set.meta.config)},
                        {"seed", set.meta.seed},
                        {"mesh_hash", to_hex(set.meta.mesh_hash)},
                        {"transform", set.meta.transform.row_major_3x4()}};
    std::ofstream meta(sample_sidecar_path(path));
    if (!meta) throw IoError("cannot open for writing: " + sample_sidecar_path(path));
    meta << side.dump(2) << "\n";
}

SampleSet read_samples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 16) throw FormatError("sample file too short for its header: " + path);
    if (bytes.compare(0, 8, "NUDS0001") != 0) throw FormatError("bad magic in sample file: " + path);
    const std::uint64_t count = read_u64_le(bytes.data() + 8);
    const std::uint64_t expected = 16 + 16 * count;
    if (bytes.size() != expected)
        throw FormatError("sample file length mismatch: expected " + std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()));

    SampleSet set;
    set.positions.resize(count);
    set.distances.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const char* rec = bytes.data() + 16 + 16 * i;
        const float x = read_f32_le(rec), y = read_f32_le(rec + 4), z = read_f32_le(rec + 8),
                    d = read_f32_le(rec + 12);
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || !std::isfinite(d) || d < 0)
            throw FormatError("invalid sample record " + std::to_string(i) + " in " + path);
        set.positions[i] = Vec3(x, y, z);
        set.distances[i] = d;
    }

    const std::string side_path = sample_sidecar_path(path);
    if (std::filesystem::exists(side_path)) {
        std::ifstream side(side_path);
        nlohmann::json j;
        try {
            side >> j;
            set.meta.config = sampler_config_from_json(j.value("config", nlohmann::json::object()));
            set.meta.seed = j.value("seed", std::uint64_t(0));
            if (j.contains("mesh_hash")) set.meta.mesh_hash = std::stoull(j.at("mesh_hash").get<std::string>(), nullptr, 16);
            if (j.contains("transform")) {
                const auto t = j.at("transform").get<std::vector<double>>();
                if (t.size() != 12) throw FormatError("transform must have 12 entries");
                set.meta.transform.scale = t[0];
                set.meta.transform.offset = Vec3(t[3], t[7], t[11]);
            }
            set.meta.has_sidecar = true;
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("bad sample sidecar " + side_path + ": " + e.what());
        }
    }
    return set;
}

}  // namespace nudf

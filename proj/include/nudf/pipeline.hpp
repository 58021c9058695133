// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/bvh.hpp"
#include "nudf/extract.hpp"
#include "nudf/field.hpp"
#include "nudf/mesh.hpp"
#include "nudf/metrics.hpp"
#include "nudf/mlp.hpp"
#include "nudf/sampler.hpp"
#include "nudf/surface.hpp"
#include "nudf/types.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace nudf {

// Settings for the full shape-to-report run. Length-valued fields (sampler
// sigmas and thresholds, meshing radii, completion tolerance, label clamp)
// are in input-mesh units; resolve_config rescales them into working units.
// The one exception is sampler.domain, which is already the working-space
// box. The network and trainer defaults are the single-shape profile, not
// the library defaults.
struct PipelineConfig {
    SamplerConfig sampler;
    MlpConfig mlp;
    TrainConfig train;
    ExtractConfig extract;
    MeshingConfig meshing;
    MetricsConfig metrics;
    std::uint64_t seed = 0;        // global seed; stage seeds derive from it
    bool normalize = true;         // map the input into [-1,1]^3 before sampling
    NormalizeTransform transform;  // input -> working space; computed when normalize is set
    std::string units = "mm";      // unit of the input mesh, recorded in artifacts

    PipelineConfig() {
        mlp.n_frequencies = 6;
        mlp.hidden_width = 128;
        train.learning_rate = 1e-3;
        train.batch_size = 512;
        train.max_epochs = 350;
        train.early_stop_patience = 350;
        meshing.subsample_target = 2000;
    }
};

// Stage seeds sit at fixed offsets from the global seed, so one integer pins
// down the whole run and the standalone commands agree with the pipeline.
inline constexpr std::uint64_t kSampleSeedOffset = 1;
inline constexpr std::uint64_t kFitSeedOffset = 2;
inline constexpr std::uint64_t kExtractSeedOffset = 3;
inline constexpr std::uint64_t kMetricsSeedOffset = 4;

// Copy of cfg with stage seeds derived from the global seed and every
// length-valued setting multiplied by scale (input units to working units).
// Auto sentinels (values <= 0) pass through untouched.
PipelineConfig resolve_config(const PipelineConfig& cfg, double scale);

// Labelled training set for a working-space mesh: cfg.n_uniform points drawn
// in the domain box plus the SD-adaptive near-surface set, labelled with
// exact distances against index. meta echoes cfg and the labelling mesh.
SampleSet build_training_set(const TriangleMesh& mesh, const MeshIndex& index,
                             const SamplerConfig& cfg);

// Extraction output as a savable point cloud; residuals ride along as the
// scalar attribute.
PointCloud cloud_with_residuals(const DensePointCloud& cloud);

// Extraction through metrics on an already-built field: project a dense
// cloud, mesh it, score it against reference, all in working space. The
// shared back half of run_pipeline, also the equal-footing harness for
// alternative field sources such as voxel grids.
struct FieldEvaluation {
    DensePointCloud cloud;
    TriangleMesh mesh;
    MetricsReport report;
};
FieldEvaluation evaluate_field(const DistanceField& field, const TriangleMesh& reference,
                               const PipelineConfig& resolved, const std::string& field_id = {});

// Everything one run produces. The CLI writes these to files; tests inspect
// them in memory. Lengths in report are working units (normalized units when
// cfg.normalize is set); config.transform maps them back to input units.
struct PipelineResult {
    PipelineConfig config;   // echo of the run with the transform filled in
    TriangleMesh reference;  // cleaned input in working space, the metrics ground truth
    SampleSet samples;
    TrainReport train_report;
    MlpField field;
    DensePointCloud cloud;
    TriangleMesh mesh;       // reconstructed surface in working space
    MetricsReport report;
};

// Full run: clean, normalize, sample, fit, extract, mesh, score against the
// working-space input.
PipelineResult run_pipeline(const TriangleMesh& input, const PipelineConfig& cfg);

// Closed-form field from a "name:p1,p2,..." spec. Forms:
//   sphere:cx,cy,cz,r
//   capsule:ax,ay,az,bx,by,bz,r
//   torus:cx,cy,cz,major,minor
//   disk:cx,cy,cz,nx,ny,nz,r
//   plates:cx,cy,cz,gap
// Anything else throws InputError.
std::unique_ptr<DistanceField> make_analytic_field(const std::string& spec);

}  // namespace nudf

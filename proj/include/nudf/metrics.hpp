// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/mesh.hpp"

#include <cstddef>
#include <cstdint>

namespace nudf {

// Evaluation knobs. Samples are area weighted per surface; both directions
// reuse the same seed, so swapping the meshes swaps the direction means.
struct MetricsConfig {
    std::size_t n_samples = 100000;
    double accuracy_fraction = 0.9;
    double completion_tol = 2.0;
    std::uint64_t seed = 0;
};

struct MetricsReport {
    double chamfer = 0.0;            // 0.5 * (mean pred->gt + mean gt->pred)
    double accuracy = 0.0;           // quantile of pred->gt sample distances
    double completion = 0.0;         // gt samples within completion_tol of pred
    double pred_to_gt_mean = 0.0;
    double gt_to_pred_mean = 0.0;
    MetricsConfig config;
    std::uint64_t pred_hash = 0;
    std::uint64_t gt_hash = 0;
};

// Symmetric Chamfer distance: half the sum of the two directed mean
// sample-to-surface distances. Distances are exact to the triangles.
double chamfer_distance(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg = {});

// accuracy_fraction-quantile (linear interpolation between order statistics)
// of the distances from pred surface samples to the gt surface.
double mesh_accuracy(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg = {});

// Fraction of gt surface samples within completion_tol of the pred surface.
double mesh_completion(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg = {});

// All three metrics from one pair of sample sets, with the config echo and
// content hashes a reproducible report needs.
MetricsReport evaluate_metrics(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg = {});

}  // namespace nudf

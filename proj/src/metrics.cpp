// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/metrics.hpp"

#include "nudf/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace nudf {

namespace {

void validate(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg) {
    if (pred.empty()) throw InputError("metrics: pred mesh is empty");
    if (gt.empty()) throw InputError("metrics: gt mesh is empty");
    if (cfg.n_samples < 1) throw InputError("metrics: n_samples must be at least 1");
    if (!(cfg.accuracy_fraction > 0.0) || !(cfg.accuracy_fraction < 1.0)) {
        throw InputError("metrics: accuracy_fraction must lie strictly between 0 and 1");
    }
    if (!(cfg.completion_tol > 0.0)) throw InputError("metrics: completion_tol must be positive");
}

std::vector<double> directed_distances(const TriangleMesh& from, const MeshIndex& to, const MetricsConfig& cfg) {
    SurfaceSamples samples = area_weighted_sample(from, cfg.n_samples, cfg.seed);
    return to.batch_unsigned_distance(samples.points);
}

double mean(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / double(values.size());
}

// Linear interpolation between order statistics at fraction q.
double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    double h = q * double(values.size() - 1);
    std::size_t lo = std::size_t(h);
    double frac = h - double(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace

double chamfer_distance(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg) {
    validate(pred, gt, cfg);
    MeshIndex pred_index(pred);
    MeshIndex gt_index(gt);
    double forward = mean(directed_distances(pred, gt_index, cfg));
    double backward = mean(directed_distances(gt, pred_index, cfg));
    return 0.5 * (forward + backward);
}

double mesh_accuracy(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg) {
    validate(pred, gt, cfg);
    MeshIndex gt_index(gt);
    return quantile(directed_distances(pred, gt_index, cfg), cfg.accuracy_fraction);
}

double mesh_completion(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg) {
    validate(pred, gt, cfg);
    MeshIndex pred_index(pred);
    std::vector<double> d = directed_distances(gt, pred_index, cfg);
    std::size_t covered = 0;
    for (double v : d) {
        if (v <= cfg.completion_tol) ++covered;
    }
    return double(covered) / double(d.size());
}

MetricsReport evaluate_metrics(const TriangleMesh& pred, const TriangleMesh& gt, const MetricsConfig& cfg) {
    validate(pred, gt, cfg);
    MeshIndex pred_index(pred);
    MeshIndex gt_index(gt);
    std::vector<double> pred_to_gt = directed_distances(pred, gt_index, cfg);
    std::vector<double> gt_to_pred = directed_distances(gt, pred_index, cfg);

    MetricsReport report;
    report.config = cfg;
    report.pred_hash = pred.content_hash();
    report.gt_hash = gt.content_hash();
    report.pred_to_gt_mean = mean(pred_to_gt);
    report.gt_to_pred_mean = mean(gt_to_pred);
    report.chamfer = 0.5 * (report.pred_to_gt_mean + report.gt_to_pred_mean);
    report.accuracy = quantile(std::move(pred_to_gt), cfg.accuracy_fraction);
    std::size_t covered = 0;
    for (double v : gt_to_pred) {
        if (v <= cfg.completion_tol) ++covered;
    }
    report.completion = double(covered) / double(gt_to_pred.size());
    return report;
}

}  // namespace nudf

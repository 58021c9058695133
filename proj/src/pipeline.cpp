// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace nudf {

namespace {

std::vector<double> parse_number_list(const std::string& spec, const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const char* first = text.data() + start;
        const char* last = text.data() + end;
        double v = 0;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || first == last)
            throw InputError("analytic field '" + spec + "': bad number '" +
                             std::string(first, last) + "'");
        values.push_back(v);
        if (end == text.size()) break;
        start = end + 1;
    }
    return values;
}

void require_params(const std::string& spec, const std::vector<double>& p, std::size_t n) {
    if (p.size() != n)
        throw InputError("analytic field '" + spec + "': expected " + std::to_string(n) +
                         " numbers, got " + std::to_string(p.size()));
}

}  // namespace

PipelineConfig resolve_config(const PipelineConfig& cfg, double scale) {
    if (!(scale > 0) || !std::isfinite(scale))
        throw InputError("pipeline: transform scale must be positive and finite");
    PipelineConfig out = cfg;
    out.sampler.seed = cfg.seed + kSampleSeedOffset;
    out.train.seed = cfg.seed + kFitSeedOffset;
    out.extract.seed = cfg.seed + kExtractSeedOffset;
    out.metrics.seed = cfg.seed + kMetricsSeedOffset;

    out.sampler.sd_threshold *= scale;
    out.sampler.sigma1 *= scale;
    out.sampler.sigma2 *= scale;
    if (out.sampler.sd.t_min > 0) out.sampler.sd.t_min *= scale;
    if (out.train.target_clamp) *out.train.target_clamp *= scale;
    if (out.extract.accept_tol > 0) out.extract.accept_tol *= scale;
    if (out.extract.reseed_sigma > 0) out.extract.reseed_sigma *= scale;
    for (double& r : out.meshing.bpa_radii) r *= scale;
    out.meshing.support_radius *= scale;
    out.meshing.hole_max_radius *= scale;
    out.metrics.completion_tol *= scale;
    return out;
}

SampleSet build_training_set(const TriangleMesh& mesh, const MeshIndex& index,
                             const SamplerConfig& cfg) {
    std::vector<Vec3> points = generate_uniform_samples(cfg.domain, cfg.n_uniform, cfg.seed);
    const std::vector<Vec3> surface = generate_surface_samples(mesh, index, cfg);
    points.insert(points.end(), surface.begin(), surface.end());
    SampleSet set = label_distances(index, points);
    set.meta.seed = cfg.seed;
    set.meta.config = cfg;
    return set;
}

PointCloud cloud_with_residuals(const DensePointCloud& cloud) {
    PointCloud pc;
    pc.points = cloud.points;
    pc.scalars = cloud.residuals;
    pc.scalar_name = "residual";
    return pc;
}

FieldEvaluation evaluate_field(const DistanceField& field, const TriangleMesh& reference,
                               const PipelineConfig& resolved, const std::string& field_id) {
    FieldEvaluation out;
    out.cloud = extract_dense_cloud(field, resolved.extract, field_id);
    out.mesh = mesh_from_cloud(cloud_with_residuals(out.cloud), resolved.meshing);
    out.report = evaluate_metrics(out.mesh, reference, resolved.metrics);
    return out;
}

PipelineResult run_pipeline(const TriangleMesh& input, const PipelineConfig& cfg) {
    PipelineResult result;
    result.config = cfg;

    result.reference = input;
    cleanup_mesh(result.reference);
    if (result.reference.triangles.empty())
        throw InputError("pipeline: input mesh has no usable triangles");
    if (result.config.normalize)
        result.config.transform = normalization_to_unit_cube(result.reference);
    result.reference = result.reference.transformed(result.config.transform);

    const PipelineConfig resolved = resolve_config(result.config, result.config.transform.scale);
    const MeshIndex index = build_index(result.reference);

    result.samples = build_training_set(result.reference, index, resolved.sampler);
    result.samples.meta.transform = result.config.transform;

    result.field = init_mlp(resolved.mlp, resolved.train.seed);
    result.field.set_domain(resolved.sampler.domain);
    result.train_report = train(result.field, result.samples, resolved.train);

    FieldEvaluation eval = evaluate_field(result.field, result.reference, resolved, "mlp");
    result.cloud = std::move(eval.cloud);
    result.mesh = std::move(eval.mesh);
    result.report = std::move(eval.report);
    return result;
}

std::unique_ptr<DistanceField> make_analytic_field(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size())
        throw InputError("analytic field '" + spec + "': expected name:p1,p2,...");
    const std::string name = spec.substr(0, colon);
    const std::vector<double> p = parse_number_list(spec, spec.substr(colon + 1));

    if (name == "sphere") {
        require_params(spec, p, 4);
        return std::make_unique<SphereField>(Vec3(p[0], p[1], p[2]), p[3]);
    }
    if (name == "capsule") {
        require_params(spec, p, 7);
        return std::make_unique<CapsuleField>(Vec3(p[0], p[1], p[2]), Vec3(p[3], p[4], p[5]), p[6]);
    }
    if (name == "torus") {
        require_params(spec, p, 5);
        return std::make_unique<TorusField>(Vec3(p[0], p[1], p[2]), p[3], p[4]);
    }
    if (name == "disk") {
        require_params(spec, p, 7);
        return std::make_unique<OpenDiskField>(Vec3(p[0], p[1], p[2]), Vec3(p[3], p[4], p[5]), p[6]);
    }
    if (name == "plates") {
        require_params(spec, p, 4);
        return std::make_unique<PlatePairField>(Vec3(p[0], p[1], p[2]), p[3]);
    }
    throw InputError("analytic field '" + spec +
                     "': unknown form '" + name + "' (sphere, capsule, torus, disk, plates)");
}

}  // namespace nudf

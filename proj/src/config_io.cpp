// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/config_io.hpp"

#include "nudf/types.hpp"

#include <string>

namespace nudf {

using nlohmann::json;

json box_to_json(const Box3& box) {
    return json{{"min", {box.min().x(), box.min().y(), box.min().z()}},
                {"max", {box.max().x(), box.max().y(), box.max().z()}}};
}

Box3 box_from_json(const json& j) {
    const auto& lo = j.at("min");
    const auto& hi = j.at("max");
    if (lo.size() != 3 || hi.size() != 3) throw FormatError("box needs 3-element min and max");
    return Box3(Vec3(lo[0].get<double>(), lo[1].get<double>(), lo[2].get<double>()),
                Vec3(hi[0].get<double>(), hi[1].get<double>(), hi[2].get<double>()));
}

json to_json(const SdConfig& cfg) {
    return json{{"cone_half_angle_deg", cfg.cone_half_angle_deg},
                {"n_rays", cfg.n_rays},
                {"t_min", cfg.t_min},
                {"aggregation", cfg.aggregation == SdConfig::Aggregation::Mean ? "mean" : "robust"}};
}

SdConfig sd_config_from_json(const json& j, SdConfig base) {
    base.cone_half_angle_deg = j.value("cone_half_angle_deg", base.cone_half_angle_deg);
    base.n_rays = j.value("n_rays", base.n_rays);
    base.t_min = j.value("t_min", base.t_min);
    if (j.contains("aggregation")) {
        const std::string a = j.at("aggregation").get<std::string>();
        if (a == "mean")
            base.aggregation = SdConfig::Aggregation::Mean;
        else if (a == "robust")
            base.aggregation = SdConfig::Aggregation::RobustMedianFiltered;
        else
            throw FormatError("unknown SD aggregation '" + a + "' (expected mean or robust)");
    }
    return base;
}

json to_json(const SamplerConfig& cfg) {
    return json{{"n_uniform", cfg.n_uniform}, {"n_surface", cfg.n_surface},
                {"lambda", cfg.lambda},       {"sd_threshold", cfg.sd_threshold},
                {"sigma1", cfg.sigma1},       {"sigma2", cfg.sigma2},
                {"sigma_split", cfg.sigma_split}, {"sd", to_json(cfg.sd)},
                {"domain", box_to_json(cfg.domain)}, {"seed", cfg.seed}};
}

json to_json(const MlpConfig& cfg) {
    return json{{"n_frequencies", cfg.n_frequencies},
                {"hidden_layers", cfg.hidden_layers},
                {"hidden_width", cfg.hidden_width},
                {"activation", cfg.activation == MlpConfig::Activation::Relu ? "relu" : "softplus"}};
}

MlpConfig mlp_config_from_json(const json& j, MlpConfig base) {
    base.n_frequencies = j.value("n_frequencies", base.n_frequencies);
    base.hidden_layers = j.value("hidden_layers", base.hidden_layers);
    base.hidden_width = j.value("hidden_width", base.hidden_width);
    if (j.contains("activation")) {
        const std::string a = j.at("activation").get<std::string>();
        if (a == "relu")
            base.activation = MlpConfig::Activation::Relu;
        else if (a == "softplus")
            base.activation = MlpConfig::Activation::Softplus;
        else
            throw FormatError("unknown activation '" + a + "' (expected relu or softplus)");
    }
    return base;
}

json to_json(const TrainConfig& cfg) {
    json j{{"learning_rate", cfg.learning_rate},
           {"batch_size", cfg.batch_size},
           {"max_epochs", cfg.max_epochs},
           {"early_stop_patience", cfg.early_stop_patience},
           {"holdout_fraction", cfg.holdout_fraction},
           {"seed", cfg.seed}};
    j["target_clamp"] = cfg.target_clamp ? json(*cfg.target_clamp) : json(nullptr);
    return j;
}

TrainConfig train_config_from_json(const json& j, TrainConfig base) {
    base.learning_rate = j.value("learning_rate", base.learning_rate);
    base.batch_size = j.value("batch_size", base.batch_size);
    base.max_epochs = j.value("max_epochs", base.max_epochs);
    base.early_stop_patience = j.value("early_stop_patience", base.early_stop_patience);
    base.holdout_fraction = j.value("holdout_fraction", base.holdout_fraction);
    if (j.contains("target_clamp")) {
        const auto& t = j.at("target_clamp");
        base.target_clamp = t.is_null() ? std::optional<double>{} : std::optional<double>{t.get<double>()};
    }
    base.seed = j.value("seed", base.seed);
    return base;
}

SamplerConfig sampler_config_from_json(const json& j, SamplerConfig base) {
    base.n_uniform = j.value("n_uniform", base.n_uniform);
    base.n_surface = j.value("n_surface", base.n_surface);
    base.lambda = j.value("lambda", base.lambda);
    base.sd_threshold = j.value("sd_threshold", base.sd_threshold);
    base.sigma1 = j.value("sigma1", base.sigma1);
    base.sigma2 = j.value("sigma2", base.sigma2);
    base.sigma_split = j.value("sigma_split", base.sigma_split);
    if (j.contains("sd")) base.sd = sd_config_from_json(j.at("sd"), base.sd);
    if (j.contains("domain")) base.domain = box_from_json(j.at("domain"));
    base.seed = j.value("seed", base.seed);
    return base;
}

json to_json(const ExtractConfig& cfg) {
    return json{{"n_initial", cfg.n_initial},
                {"target_points", cfg.target_points},
                {"max_iters", cfg.max_iters},
                {"accept_tol", cfg.accept_tol},
                {"reseed_sigma", cfg.reseed_sigma},
                {"max_rounds", cfg.max_rounds},
                {"normalize_gradient", cfg.normalize_gradient},
                {"seed", cfg.seed}};
}

ExtractConfig extract_config_from_json(const json& j, ExtractConfig base) {
    base.n_initial = j.value("n_initial", base.n_initial);
    base.target_points = j.value("target_points", base.target_points);
    base.max_iters = j.value("max_iters", base.max_iters);
    base.accept_tol = j.value("accept_tol", base.accept_tol);
    base.reseed_sigma = j.value("reseed_sigma", base.reseed_sigma);
    base.max_rounds = j.value("max_rounds", base.max_rounds);
    base.normalize_gradient = j.value("normalize_gradient", base.normalize_gradient);
    base.seed = j.value("seed", base.seed);
    return base;
}

json to_json(const MeshingConfig& cfg) {
    return json{{"subsample_target", cfg.subsample_target},
                {"knn_normals", cfg.knn_normals},
                {"bpa_radii", cfg.bpa_radii},
                {"support_radius", cfg.support_radius},
                {"hole_max_radius", cfg.hole_max_radius}};
}

MeshingConfig meshing_config_from_json(const json& j, MeshingConfig base) {
    base.subsample_target = j.value("subsample_target", base.subsample_target);
    base.knn_normals = j.value("knn_normals", base.knn_normals);
    base.bpa_radii = j.value("bpa_radii", base.bpa_radii);
    base.support_radius = j.value("support_radius", base.support_radius);
    base.hole_max_radius = j.value("hole_max_radius", base.hole_max_radius);
    return base;
}

json to_json(const MetricsConfig& cfg) {
    return json{{"n_samples", cfg.n_samples},
                {"accuracy_fraction", cfg.accuracy_fraction},
                {"completion_tol", cfg.completion_tol},
                {"seed", cfg.seed}};
}

MetricsConfig metrics_config_from_json(const json& j, MetricsConfig base) {
    base.n_samples = j.value("n_samples", base.n_samples);
    base.accuracy_fraction = j.value("accuracy_fraction", base.accuracy_fraction);
    base.completion_tol = j.value("completion_tol", base.completion_tol);
    base.seed = j.value("seed", base.seed);
    return base;
}

json to_json(const NormalizeTransform& t) {
    return json{{"scale", t.scale}, {"offset", {t.offset.x(), t.offset.y(), t.offset.z()}}};
}

NormalizeTransform transform_from_json(const json& j, NormalizeTransform base) {
    base.scale = j.value("scale", base.scale);
    if (j.contains("offset")) {
        const auto& o = j.at("offset");
        if (o.size() != 3) throw FormatError("transform offset needs 3 elements");
        base.offset = Vec3(o[0].get<double>(), o[1].get<double>(), o[2].get<double>());
    }
    return base;
}

json to_json(const PipelineConfig& cfg) {
    return json{{"seed", cfg.seed},
                {"units", cfg.units},
                {"normalize", cfg.normalize},
                {"transform", to_json(cfg.transform)},
                {"sampler", to_json(cfg.sampler)},
                {"mlp", to_json(cfg.mlp)},
                {"train", to_json(cfg.train)},
                {"extract", to_json(cfg.extract)},
                {"meshing", to_json(cfg.meshing)},
                {"metrics", to_json(cfg.metrics)}};
}

PipelineConfig pipeline_config_from_json(const json& j, PipelineConfig base) {
    base.seed = j.value("seed", base.seed);
    base.units = j.value("units", base.units);
    base.normalize = j.value("normalize", base.normalize);
    if (j.contains("transform")) base.transform = transform_from_json(j.at("transform"), base.transform);
    if (j.contains("sampler")) base.sampler = sampler_config_from_json(j.at("sampler"), base.sampler);
    if (j.contains("mlp")) base.mlp = mlp_config_from_json(j.at("mlp"), base.mlp);
    if (j.contains("train")) base.train = train_config_from_json(j.at("train"), base.train);
    if (j.contains("extract")) base.extract = extract_config_from_json(j.at("extract"), base.extract);
    if (j.contains("meshing")) base.meshing = meshing_config_from_json(j.at("meshing"), base.meshing);
    if (j.contains("metrics")) base.metrics = metrics_config_from_json(j.at("metrics"), base.metrics);
    return base;
}

json to_json(const TrainReport& report) {
    return json{{"epochs", report.epochs},
                {"final_train_l1", report.final_train_l1},
                {"final_val_l1", report.final_val_l1},
                {"train_curve", report.train_curve},
                {"val_curve", report.val_curve}};
}

json to_json(const MetricsReport& report) {
    return json{{"chamfer_mm", report.chamfer},
                {"accuracy_mm", report.accuracy},
                {"completion", report.completion},
                {"n_samples", report.config.n_samples},
                {"seed", report.config.seed},
                {"pred_hash", report.pred_hash},
                {"gt_hash", report.gt_hash}};
}

}  // namespace nudf

// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/extract.hpp"
#include "nudf/metrics.hpp"
#include "nudf/mlp.hpp"
#include "nudf/pipeline.hpp"
#include "nudf/sampler.hpp"
#include "nudf/shape_diameter.hpp"
#include "nudf/surface.hpp"

#include <json.hpp>

namespace nudf {

// JSON <-> config structs. from_* accept partial objects; missing keys keep
// the defaults of the passed-in base so config files stay diff-sized.

nlohmann::json to_json(const SdConfig& cfg);
SdConfig sd_config_from_json(const nlohmann::json& j, SdConfig base = {});

nlohmann::json to_json(const SamplerConfig& cfg);
SamplerConfig sampler_config_from_json(const nlohmann::json& j, SamplerConfig base = {});

nlohmann::json to_json(const MlpConfig& cfg);
MlpConfig mlp_config_from_json(const nlohmann::json& j, MlpConfig base = {});

nlohmann::json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});

nlohmann::json to_json(const ExtractConfig& cfg);
ExtractConfig extract_config_from_json(const nlohmann::json& j, ExtractConfig base = {});

nlohmann::json to_json(const MeshingConfig& cfg);
MeshingConfig meshing_config_from_json(const nlohmann::json& j, MeshingConfig base = {});

nlohmann::json to_json(const MetricsConfig& cfg);
MetricsConfig metrics_config_from_json(const nlohmann::json& j, MetricsConfig base = {});

nlohmann::json to_json(const NormalizeTransform& t);
NormalizeTransform transform_from_json(const nlohmann::json& j, NormalizeTransform base = {});

nlohmann::json to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const nlohmann::json& j, PipelineConfig base = {});

// Canonical evaluation record; equal inputs must serialize to equal bytes.
nlohmann::json to_json(const MetricsReport& report);

// Training summary written next to saved weights.
nlohmann::json to_json(const TrainReport& report);

nlohmann::json box_to_json(const Box3& box);
Box3 box_from_json(const nlohmann::json& j);

}  // namespace nudf

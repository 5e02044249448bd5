// Copyright 2026 The snnfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>
#include <string>

#include "snnfc/dataset.hpp"
#include "snnfc/hardware.hpp"
#include "snnfc/learning.hpp"

namespace snnfc {

using Json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "snnfc-0.1.0";

Json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const Json& j);

Json train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const Json& j);

Json noise_model_to_json(const NoiseModel& noise);
NoiseModel noise_model_from_json(const Json& j);

Json eval_result_to_json(const EvalResult& result, const FeatureSchema& schema);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Binary record cache written by `prepare` and consumed by the other
// commands: schema JSON header plus packed int32 value/label rows.
void save_dataset_cache(const Dataset& dataset, const std::string& path);
Dataset load_dataset_cache(const std::string& path);

}  // namespace snnfc

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

#include <string>

#include "snnfc/learning.hpp"

namespace snnfc {

// Tuned per-dataset defaults for each model family. `layers` counts weight
// matrices (2 = one hidden layer + output); it applies to the backprop
// families and is ignored by STDP and the logistic baseline.
TrainConfig preset_config(ModelKind kind, const std::string& dataset, int layers = 2);

// Maps the system numbering used on the command line onto model kinds.
// System 1 = STDP (mode "unsup"/"sup"), 2 = probabilistic backprop,
// 3 = deterministic backprop (SNU).
ModelKind system_to_kind(int system, const std::string& mode);

}  // namespace snnfc

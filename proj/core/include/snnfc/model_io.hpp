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

// Versioned model container: an 8-byte magic, a JSON header (kind, schema,
// config snapshot, decoder data, metrics), then raw row-major 64-bit float
// weight blocks. Round-trips bit-exactly; target patterns are regenerated
// from their seeds on load, never stored.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace snnfc

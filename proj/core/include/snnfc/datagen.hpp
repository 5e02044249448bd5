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

#include <cstddef>
#include <cstdint>
#include <string>

namespace snnfc {

// Synthetic stand-in datasets for offline testing. Each generator emits files
// in the exact format of the corresponding UCI dataset (same attribute names,
// value tokens, and row counts), with labels produced by hierarchical decision
// models chosen to approximate the original class balances and difficulty.
// They are NOT the UCI data; results on them are comparable in character but
// not in value to results on the originals.

// Full factorial enumeration of the car attribute space (1728 rows),
// labeled by a two-level monotone decision model.
size_t synth_car(const std::string& path);

// Full factorial enumeration of the nursery attribute space (12960 rows).
size_t synth_nursery(const std::string& path);

// Seeded generative sampler over the adult (census income) schema; writes
// train and test files (numeric fields raw, "?" missing tokens included).
void synth_adult(const std::string& train_path, const std::string& test_path, uint64_t seed,
                 size_t n_train = 32561, size_t n_test = 16281);

// Seeded 8-ply connect-4 positions labeled by a line-counting evaluator.
size_t synth_connect4(const std::string& path, uint64_t seed, size_t n_rows = 67557);

// Labeling functions exposed for tests (argument order = schema key order,
// values = indices into the schema token lists). Return class indices.
int synth_car_label(int buying, int maint, int doors, int persons, int lug_boot, int safety);
int synth_nursery_label(int parents, int has_nurs, int form, int children, int housing,
                        int finance, int social, int health);

}  // namespace snnfc

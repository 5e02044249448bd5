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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snnfc/dataset.hpp"

namespace snnfc {

// Binary neurons x timesteps matrix; a 1 marks a spike.
struct SpikePattern {
  int n_neurons = 0;
  int n_steps = 0;
  std::vector<uint8_t> spikes;  // row-major, n_neurons * n_steps

  SpikePattern() = default;
  SpikePattern(int neurons, int steps)
      : n_neurons(neurons), n_steps(steps),
        spikes(static_cast<size_t>(neurons) * static_cast<size_t>(steps), 0) {}

  uint8_t at(int neuron, int t) const {
    return spikes[static_cast<size_t>(neuron) * static_cast<size_t>(n_steps) + static_cast<size_t>(t)];
  }
  void set(int neuron, int t, uint8_t v) {
    spikes[static_cast<size_t>(neuron) * static_cast<size_t>(n_steps) + static_cast<size_t>(t)] = v;
  }
  const uint8_t* row(int neuron) const {
    return spikes.data() + static_cast<size_t>(neuron) * static_cast<size_t>(n_steps);
  }
  uint8_t* row(int neuron) {
    return spikes.data() + static_cast<size_t>(neuron) * static_cast<size_t>(n_steps);
  }
  long total_spikes() const {
    long n = 0;
    for (uint8_t s : spikes) n += s;
    return n;
  }
  bool operator==(const SpikePattern&) const = default;
};

// Inner product of the flattened binary matrices (= shared spike count).
long pattern_dot(const SpikePattern& a, const SpikePattern& b);

struct EncodingConfig {
  int n_per_key = 20;      // input neurons per metadata key
  int n_steps = 80;        // encoding window, dt = 1 step
  double spike_rate = 4.0; // expected spikes per neuron over the window
  uint64_t master_seed = 1;
};

// Deterministic map from (key, value) to a fixed pseudo-random sub-pattern on
// that key's neuron group. Patterns are regenerated from seeds, never stored
// on disk; identical records always encode to identical spike matrices, and
// records sharing key-value pairs share the corresponding sub-patterns.
class Codebook {
 public:
  Codebook(const FeatureSchema& schema, const EncodingConfig& config);

  int input_neurons() const { return static_cast<int>(schema_.keys.size()) * config_.n_per_key; }
  int n_steps() const { return config_.n_steps; }
  const EncodingConfig& config() const { return config_; }
  const FeatureSchema& schema() const { return schema_; }
  std::string schema_fingerprint() const { return schema_fingerprint_; }

  // First neuron index of key k's group; groups are contiguous and disjoint.
  int group_begin(int key) const { return key * config_.n_per_key; }

  // The cached n_per_key x n_steps sub-pattern for (key, value).
  const SpikePattern& sub_pattern(int key, int value) const;

 private:
  FeatureSchema schema_;
  EncodingConfig config_;
  std::string schema_fingerprint_;
  std::vector<std::vector<SpikePattern>> cache_;  // [key][value]
};

SpikePattern encode_record(const Record& record, const Codebook& codebook);

struct TargetConfig {
  int n_steps = 80;
  int spikes_per_target = 4;
  double tau = 10.0;              // van Rossum kernel time constant, in steps
  double separation_floor = 1.0;  // minimum pairwise van Rossum distance
  uint64_t seed = 1;
  int max_attempts = 1000;
};

// Predetermined per-class output patterns. With n_out == M each class target
// spikes only on its own neuron row.
struct TargetSet {
  int n_out = 0;
  int n_steps = 0;
  double tau = 10.0;
  uint64_t seed = 0;
  std::vector<SpikePattern> patterns;  // one per class

  int class_count() const { return static_cast<int>(patterns.size()); }
};

TargetSet generate_targets(int n_classes, int n_out, const TargetConfig& config);

// L2 distance between spike trains after causal exponential filtering:
// trace_t = trace_{t-1} * exp(-1/tau) + spike_t, d^2 = (dt/tau) * sum of
// squared trace differences over neurons and steps.
double van_rossum_distance(const SpikePattern& a, const SpikePattern& b, double tau);

// Class of the neuron with the highest spike count; ties break to the lowest
// neuron index.
int decode_rate(const SpikePattern& output, std::span<const int> class_map);

// Nearest predetermined target under the van Rossum distance; ties break to
// the lowest class index.
int decode_temporal(const SpikePattern& output, const TargetSet& targets);

}  // namespace snnfc

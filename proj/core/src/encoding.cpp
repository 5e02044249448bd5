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

#include "snnfc/encoding.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"

namespace snnfc {

long pattern_dot(const SpikePattern& a, const SpikePattern& b) {
  if (a.n_neurons != b.n_neurons || a.n_steps != b.n_steps)
    throw ConfigError("pattern_dot: shape mismatch");
  long dot = 0;
  for (size_t i = 0; i < a.spikes.size(); ++i) dot += a.spikes[i] & b.spikes[i];
  return dot;
}

Codebook::Codebook(const FeatureSchema& schema, const EncodingConfig& config)
    : schema_(schema), config_(config), schema_fingerprint_(schema.fingerprint()) {
  if (config.n_per_key < 1 || config.n_steps < 1)
    throw ConfigError("codebook: n_per_key and n_steps must be >= 1");
  if (!(config.spike_rate > 0.0 && config.spike_rate <= config.n_steps))
    throw ConfigError("codebook: spike_rate must be in (0, n_steps]");

  // Per-step Bernoulli with p = spike_rate / n_steps, drawn from a stateless
  // keyed hash so the same (seed, key, value, neuron, step) always agrees.
  const double p = config.spike_rate / static_cast<double>(config.n_steps);
  const auto threshold = static_cast<uint64_t>(p * 18446744073709551616.0 /* 2^64 */);
  cache_.resize(schema_.keys.size());
  for (size_t k = 0; k < schema_.keys.size(); ++k) {
    const int card = schema_.keys[k].cardinality();
    cache_[k].reserve(static_cast<size_t>(card));
    for (int v = 0; v < card; ++v) {
      SpikePattern sub(config.n_per_key, config.n_steps);
      for (int n = 0; n < config.n_per_key; ++n) {
        uint8_t* row = sub.row(n);
        for (int t = 0; t < config.n_steps; ++t) {
          uint64_t h = hash_mix({config.master_seed, static_cast<uint64_t>(k),
                                 static_cast<uint64_t>(v), static_cast<uint64_t>(n),
                                 static_cast<uint64_t>(t)});
          row[t] = h < threshold ? 1 : 0;
        }
      }
      cache_[k].push_back(std::move(sub));
    }
  }
}

const SpikePattern& Codebook::sub_pattern(int key, int value) const {
  return cache_[static_cast<size_t>(key)][static_cast<size_t>(value)];
}

SpikePattern encode_record(const Record& record, const Codebook& codebook) {
  const auto& schema = codebook.schema();
  if (record.values.size() != schema.keys.size())
    throw DataError("encode_record: record arity does not match codebook schema");
  SpikePattern out(codebook.input_neurons(), codebook.n_steps());
  const int n_per_key = codebook.config().n_per_key;
  for (size_t k = 0; k < schema.keys.size(); ++k) {
    const int v = record.values[k];
    if (v < 0 || v >= schema.keys[k].cardinality())
      throw DataError("encode_record: value id out of range for key " + schema.keys[k].name);
    const SpikePattern& sub = codebook.sub_pattern(static_cast<int>(k), v);
    std::memcpy(out.row(codebook.group_begin(static_cast<int>(k))), sub.spikes.data(),
                static_cast<size_t>(n_per_key) * static_cast<size_t>(codebook.n_steps()));
  }
  return out;
}

TargetSet generate_targets(int n_classes, int n_out, const TargetConfig& config) {
  if (n_classes < 1 || n_out < 1) throw ConfigError("generate_targets: need n_classes, n_out >= 1");
  if (config.spikes_per_target > config.n_steps)
    throw ConfigError("generate_targets: more spikes than timesteps");

  Rng rng(config.seed);
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    TargetSet set;
    set.n_out = n_out;
    set.n_steps = config.n_steps;
    set.tau = config.tau;
    set.seed = config.seed;
    Rng attempt_rng = rng.fork(static_cast<uint64_t>(attempt));
    for (int c = 0; c < n_classes; ++c) {
      SpikePattern p(n_out, config.n_steps);
      // Spikes live on the class's own output neuron row.
      const int neuron = c % n_out;
      Rng class_rng = attempt_rng.fork(static_cast<uint64_t>(c));
      int placed = 0;
      while (placed < config.spikes_per_target) {
        int t = static_cast<int>(class_rng.next_below(static_cast<uint64_t>(config.n_steps)));
        if (!p.at(neuron, t)) {
          p.set(neuron, t, 1);
          ++placed;
        }
      }
      set.patterns.push_back(std::move(p));
    }
    bool ok = true;
    for (int a = 0; a < n_classes && ok; ++a)
      for (int b = a + 1; b < n_classes && ok; ++b) {
        if (set.patterns[static_cast<size_t>(a)] == set.patterns[static_cast<size_t>(b)] ||
            van_rossum_distance(set.patterns[static_cast<size_t>(a)],
                                set.patterns[static_cast<size_t>(b)],
                                config.tau) <= config.separation_floor)
          ok = false;
      }
    if (ok) return set;
  }
  throw ConfigError("generate_targets: separation floor unreachable; output window too small");
}

double van_rossum_distance(const SpikePattern& a, const SpikePattern& b, double tau) {
  if (a.n_neurons != b.n_neurons || a.n_steps != b.n_steps)
    throw ConfigError("van_rossum_distance: shape mismatch");
  if (!(tau > 0.0)) throw ConfigError("van_rossum_distance: tau must be > 0");
  const double alpha = std::exp(-1.0 / tau);
  double sum_sq = 0.0;
  for (int n = 0; n < a.n_neurons; ++n) {
    const uint8_t* ra = a.row(n);
    const uint8_t* rb = b.row(n);
    double trace_a = 0.0, trace_b = 0.0;
    for (int t = 0; t < a.n_steps; ++t) {
      trace_a = trace_a * alpha + ra[t];
      trace_b = trace_b * alpha + rb[t];
      const double d = trace_a - trace_b;
      sum_sq += d * d;
    }
  }
  return std::sqrt(sum_sq / tau);
}

int decode_rate(const SpikePattern& output, std::span<const int> class_map) {
  if (static_cast<int>(class_map.size()) != output.n_neurons)
    throw ConfigError("decode_rate: class map size mismatch");
  int best_neuron = 0;
  long best_count = -1;
  for (int n = 0; n < output.n_neurons; ++n) {
    long count = 0;
    const uint8_t* row = output.row(n);
    for (int t = 0; t < output.n_steps; ++t) count += row[t];
    if (count > best_count) {
      best_count = count;
      best_neuron = n;
    }
  }
  return class_map[static_cast<size_t>(best_neuron)];
}

int decode_temporal(const SpikePattern& output, const TargetSet& targets) {
  int best_class = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int c = 0; c < targets.class_count(); ++c) {
    double d = van_rossum_distance(output, targets.patterns[static_cast<size_t>(c)], targets.tau);
    if (d < best_dist) {
      best_dist = d;
      best_class = c;
    }
  }
  return best_class;
}

}  // namespace snnfc

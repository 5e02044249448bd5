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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snnfc {

enum class KeyKind { kCategorical, kNumeric };

// One metadata key. Categorical keys enumerate their value tokens (the last
// token is always "?", the explicit missing/unknown category). Numeric keys
// are discretized against strictly increasing bin edges; their value set is
// the bins plus the trailing missing category.
struct KeySpec {
  std::string name;
  KeyKind kind = KeyKind::kCategorical;
  std::vector<std::string> values;      // categorical tokens incl. trailing "?"
  std::vector<double> bin_edges;        // numeric only; strictly increasing

  int cardinality() const {
    return kind == KeyKind::kCategorical ? static_cast<int>(values.size())
                                         : static_cast<int>(bin_edges.size()) + 2;
  }
  int missing_value() const { return cardinality() - 1; }
};

struct FeatureSchema {
  std::string name;                     // e.g. "car", "nursery"
  std::vector<KeySpec> keys;
  std::vector<std::string> class_names;

  int feature_count() const { return static_cast<int>(keys.size()); }
  int class_count() const { return static_cast<int>(class_names.size()); }
  int one_hot_dim() const;
  void validate() const;                // throws ConfigError on broken invariants
  std::string fingerprint() const;      // SHA-256 over a canonical rendering
};

// One file's metadata after binning: K discrete value ids plus a class label.
struct Record {
  std::vector<int> values;
  int label = -1;
};

struct Dataset {
  FeatureSchema schema;
  std::vector<Record> records;
  uint64_t split_seed = 0;
  double train_fraction = 0.8;

  // Fixed train/test membership, set for datasets with an official split
  // (Adult); empty means "use the stratified seeded split".
  std::vector<uint8_t> fixed_is_test;
};

struct LoadStats {
  size_t rows = 0;
  size_t unknown_tokens = 0;            // mapped to the missing category
};

struct Split {
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};

// Maps a real value onto its bin: i such that value is in [edge_i, edge_{i+1}),
// with everything below the first edge in bin 0 and everything at/above the
// last edge in the last bin. Throws DataError on NaN.
int bin_numeric(double value, std::span<const double> edges);

std::vector<double> compute_quantile_edges(std::vector<double> values, int n_bins);

// Parses a UCI-style CSV (comma separated, label in the last column,
// no quoting). Numeric keys must already carry resolved bin edges.
Dataset load_uci_csv(const std::string& path, const FeatureSchema& schema,
                     LoadStats* stats = nullptr);

// One-hot encoding over the concatenated per-key value sets; exactly K ones.
std::vector<double> one_hot(const Record& record, const FeatureSchema& schema);

// Deterministic stratified split: per-class shuffles seeded from split_seed,
// train sizes allocated by largest remainder so that the global train count is
// round(n * train_fraction). Honors fixed_is_test when present.
Split stratified_split(const Dataset& dataset);

std::vector<Record> gather(const Dataset& dataset, const std::vector<int>& indices);

std::vector<int> class_counts(const std::vector<Record>& records, int n_classes);
double majority_class_fraction(const std::vector<Record>& records, int n_classes);

// Schemas for the four supported UCI datasets. Adult's numeric keys come back
// without bin edges; resolve_adult_bins() fills them from raw training rows.
FeatureSchema car_schema();
FeatureSchema nursery_schema();
FeatureSchema connect4_schema();
FeatureSchema adult_schema();

// Computes quantile bin edges for Adult's numeric keys from the raw training
// file (default 8 bins per numeric key) and returns the resolved schema.
FeatureSchema resolve_adult_bins(const std::string& train_path, int n_bins = 8);

// SHA-256 fingerprint of a record list (values + labels, canonical bytes).
std::string records_fingerprint(const std::vector<Record>& records);

}  // namespace snnfc

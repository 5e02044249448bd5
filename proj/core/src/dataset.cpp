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

#include "snnfc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"
#include "snnfc/sha256.hpp"

namespace snnfc {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  std::stringstream ss(line);
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

KeySpec cat_key(std::string name, std::vector<std::string> values) {
  KeySpec k;
  k.name = std::move(name);
  k.kind = KeyKind::kCategorical;
  k.values = std::move(values);
  k.values.push_back("?");
  return k;
}

KeySpec num_key(std::string name) {
  KeySpec k;
  k.name = std::move(name);
  k.kind = KeyKind::kNumeric;
  return k;
}

}  // namespace

int FeatureSchema::one_hot_dim() const {
  int dim = 0;
  for (const auto& k : keys) dim += k.cardinality();
  return dim;
}

void FeatureSchema::validate() const {
  if (class_count() < 2) throw ConfigError("schema '" + name + "': needs at least 2 classes");
  std::vector<std::string> names;
  for (const auto& k : keys) {
    names.push_back(k.name);
    if (k.kind == KeyKind::kCategorical) {
      if (k.values.size() < 2 || k.values.back() != "?")
        throw ConfigError("key '" + k.name + "': categorical value set must end with the missing token");
    } else {
      for (size_t i = 1; i < k.bin_edges.size(); ++i)
        if (!(k.bin_edges[i - 1] < k.bin_edges[i]))
          throw ConfigError("key '" + k.name + "': bin edges must be strictly increasing");
    }
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw ConfigError("schema '" + name + "': duplicate key names");
}

std::string FeatureSchema::fingerprint() const {
  std::ostringstream os;
  os << name << '\n';
  for (const auto& k : keys) {
    os << k.name << '|' << (k.kind == KeyKind::kCategorical ? 'c' : 'n') << '|';
    if (k.kind == KeyKind::kCategorical) {
      for (const auto& v : k.values) os << v << ';';
    } else {
      os.precision(17);
      for (double e : k.bin_edges) os << e << ';';
    }
    os << '\n';
  }
  for (const auto& c : class_names) os << c << ';';
  return Sha256::hex_of_string(os.str());
}

int bin_numeric(double value, std::span<const double> edges) {
  if (std::isnan(value)) throw DataError("bin_numeric: NaN input");
  int bin = 0;
  for (double e : edges) {
    if (value >= e)
      ++bin;
    else
      break;
  }
  return bin;
}

std::vector<double> compute_quantile_edges(std::vector<double> values, int n_bins) {
  std::vector<double> edges;
  if (values.empty() || n_bins < 2) return edges;
  std::sort(values.begin(), values.end());
  for (int k = 1; k < n_bins; ++k) {
    size_t idx = std::min(values.size() - 1, (values.size() * static_cast<size_t>(k)) / static_cast<size_t>(n_bins));
    double e = values[idx];
    if (edges.empty() || e > edges.back()) edges.push_back(e);
  }
  // Degenerate distributions (e.g. capital-gain, mostly zero) can collapse to
  // a single leading edge equal to the minimum; drop it so bin 0 is non-empty.
  if (!edges.empty() && edges.front() <= values.front()) edges.erase(edges.begin());
  return edges;
}

Dataset load_uci_csv(const std::string& path, const FeatureSchema& schema, LoadStats* stats) {
  schema.validate();
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);

  const int n_keys = schema.feature_count();
  std::vector<std::unordered_map<std::string, int>> lookup(n_keys);
  for (int k = 0; k < n_keys; ++k) {
    if (schema.keys[k].kind != KeyKind::kCategorical) continue;
    for (size_t v = 0; v < schema.keys[k].values.size(); ++v)
      lookup[k].emplace(schema.keys[k].values[v], static_cast<int>(v));
  }
  std::unordered_map<std::string, int> label_lookup;
  for (size_t c = 0; c < schema.class_names.size(); ++c)
    label_lookup.emplace(schema.class_names[c], static_cast<int>(c));

  Dataset ds;
  ds.schema = schema;
  LoadStats local;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '|') continue;  // adult.test carries a banner line
    auto tokens = split_csv_line(t);
    if (static_cast<int>(tokens.size()) != n_keys + 1)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(n_keys + 1) + " fields, got " + std::to_string(tokens.size()));
    Record rec;
    rec.values.resize(n_keys);
    for (int k = 0; k < n_keys; ++k) {
      const auto& key = schema.keys[k];
      const std::string& tok = tokens[k];
      if (key.kind == KeyKind::kCategorical) {
        auto it = lookup[k].find(tok);
        if (it == lookup[k].end()) {
          rec.values[k] = key.missing_value();
          ++local.unknown_tokens;
        } else {
          rec.values[k] = it->second;
        }
      } else {
        if (tok == "?") {
          rec.values[k] = key.missing_value();
        } else {
          char* end = nullptr;
          double v = std::strtod(tok.c_str(), &end);
          if (end == tok.c_str() || *end != '\0')
            throw DataError(path + ":" + std::to_string(line_no) + ": bad numeric value '" + tok +
                            "' for key " + key.name);
          rec.values[k] = bin_numeric(v, key.bin_edges);
        }
      }
    }
    std::string label_tok = tokens[n_keys];
    if (!label_tok.empty() && label_tok.back() == '.') label_tok.pop_back();  // adult.test labels
    auto lit = label_lookup.find(label_tok);
    if (lit == label_lookup.end())
      throw DataError(path + ":" + std::to_string(line_no) + ": unknown class label '" + label_tok + "'");
    rec.label = lit->second;
    ds.records.push_back(std::move(rec));
    ++local.rows;
  }
  if (ds.records.empty()) throw DataError(path + ": empty file");
  if (stats) *stats = local;
  return ds;
}

std::vector<double> one_hot(const Record& record, const FeatureSchema& schema) {
  std::vector<double> out(static_cast<size_t>(schema.one_hot_dim()), 0.0);
  int offset = 0;
  for (int k = 0; k < schema.feature_count(); ++k) {
    out[static_cast<size_t>(offset + record.values[static_cast<size_t>(k)])] = 1.0;
    offset += schema.keys[static_cast<size_t>(k)].cardinality();
  }
  return out;
}

Split stratified_split(const Dataset& dataset) {
  const auto& recs = dataset.records;
  Split split;
  if (!dataset.fixed_is_test.empty()) {
    for (size_t i = 0; i < recs.size(); ++i) {
      if (dataset.fixed_is_test[i])
        split.test_indices.push_back(static_cast<int>(i));
      else
        split.train_indices.push_back(static_cast<int>(i));
    }
    return split;
  }

  const double f = dataset.train_fraction;
  if (!(f > 0.0 && f < 1.0)) throw ConfigError("train_fraction must be in (0,1)");
  const int n_classes = dataset.schema.class_count();
  std::vector<std::vector<int>> by_class(static_cast<size_t>(n_classes));
  for (size_t i = 0; i < recs.size(); ++i)
    by_class[static_cast<size_t>(recs[i].label)].push_back(static_cast<int>(i));
  for (int c = 0; c < n_classes; ++c)
    if (by_class[static_cast<size_t>(c)].size() < 2)
      throw DataError("class '" + dataset.schema.class_names[static_cast<size_t>(c)] +
                      "' has fewer than 2 records; cannot split");

  // Largest-remainder allocation: global train size is round(n*f) exactly.
  const long long total_train = std::llround(static_cast<double>(recs.size()) * f);
  std::vector<long long> take(static_cast<size_t>(n_classes));
  std::vector<std::pair<double, int>> remainders;
  long long assigned = 0;
  for (int c = 0; c < n_classes; ++c) {
    double exact = static_cast<double>(by_class[static_cast<size_t>(c)].size()) * f;
    take[static_cast<size_t>(c)] = static_cast<long long>(std::floor(exact));
    assigned += take[static_cast<size_t>(c)];
    remainders.push_back({exact - std::floor(exact), c});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (size_t i = 0; assigned < total_train && i < remainders.size(); ++i, ++assigned)
    ++take[static_cast<size_t>(remainders[i].second)];
  // Keep at least one record per class on each side.
  for (int c = 0; c < n_classes; ++c) {
    auto n_c = static_cast<long long>(by_class[static_cast<size_t>(c)].size());
    take[static_cast<size_t>(c)] = std::clamp(take[static_cast<size_t>(c)], 1ll, n_c - 1);
  }

  Rng rng(dataset.split_seed);
  for (int c = 0; c < n_classes; ++c) {
    auto& idx = by_class[static_cast<size_t>(c)];
    Rng class_rng = rng.fork(static_cast<uint64_t>(c));
    class_rng.shuffle(idx.data(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      if (static_cast<long long>(i) < take[static_cast<size_t>(c)])
        split.train_indices.push_back(idx[i]);
      else
        split.test_indices.push_back(idx[i]);
    }
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  return split;
}

std::vector<Record> gather(const Dataset& dataset, const std::vector<int>& indices) {
  std::vector<Record> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(dataset.records[static_cast<size_t>(i)]);
  return out;
}

std::vector<int> class_counts(const std::vector<Record>& records, int n_classes) {
  std::vector<int> counts(static_cast<size_t>(n_classes), 0);
  for (const auto& r : records) ++counts[static_cast<size_t>(r.label)];
  return counts;
}

double majority_class_fraction(const std::vector<Record>& records, int n_classes) {
  if (records.empty()) return 0.0;
  auto counts = class_counts(records, n_classes);
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
         static_cast<double>(records.size());
}

std::string records_fingerprint(const std::vector<Record>& records) {
  Sha256 h;
  for (const auto& r : records) {
    for (int v : r.values) {
      int32_t le = v;
      h.update(&le, sizeof(le));
    }
    int32_t label = r.label;
    h.update(&label, sizeof(label));
  }
  return h.hex_digest();
}

FeatureSchema car_schema() {
  FeatureSchema s;
  s.name = "car";
  s.keys = {
      cat_key("buying", {"vhigh", "high", "med", "low"}),
      cat_key("maint", {"vhigh", "high", "med", "low"}),
      cat_key("doors", {"2", "3", "4", "5more"}),
      cat_key("persons", {"2", "4", "more"}),
      cat_key("lug_boot", {"small", "med", "big"}),
      cat_key("safety", {"low", "med", "high"}),
  };
  s.class_names = {"unacc", "acc", "good", "vgood"};
  return s;
}

FeatureSchema nursery_schema() {
  FeatureSchema s;
  s.name = "nursery";
  s.keys = {
      cat_key("parents", {"usual", "pretentious", "great_pret"}),
      cat_key("has_nurs", {"proper", "less_proper", "improper", "critical", "very_crit"}),
      cat_key("form", {"complete", "completed", "incomplete", "foster"}),
      cat_key("children", {"1", "2", "3", "more"}),
      cat_key("housing", {"convenient", "less_conv", "critical"}),
      cat_key("finance", {"convenient", "inconv"}),
      cat_key("social", {"nonprob", "slightly_prob", "problematic"}),
      cat_key("health", {"recommended", "priority", "not_recom"}),
  };
  s.class_names = {"not_recom", "recommend", "very_recom", "priority", "spec_prior"};
  return s;
}

FeatureSchema connect4_schema() {
  FeatureSchema s;
  s.name = "connect4";
  static const char* kCols = "abcdefg";
  for (int c = 0; c < 7; ++c)
    for (int r = 1; r <= 6; ++r)
      s.keys.push_back(cat_key(std::string(1, kCols[c]) + std::to_string(r), {"b", "x", "o"}));
  s.class_names = {"win", "loss", "draw"};
  return s;
}

FeatureSchema adult_schema() {
  FeatureSchema s;
  s.name = "adult";
  s.keys = {
      num_key("age"),
      cat_key("workclass", {"Private", "Self-emp-not-inc", "Self-emp-inc", "Federal-gov",
                            "Local-gov", "State-gov", "Without-pay", "Never-worked"}),
      num_key("fnlwgt"),
      cat_key("education", {"Bachelors", "Some-college", "11th", "HS-grad", "Prof-school",
                            "Assoc-acdm", "Assoc-voc", "9th", "7th-8th", "12th", "Masters",
                            "1st-4th", "10th", "Doctorate", "5th-6th", "Preschool"}),
      num_key("education-num"),
      cat_key("marital-status", {"Married-civ-spouse", "Divorced", "Never-married", "Separated",
                                 "Widowed", "Married-spouse-absent", "Married-AF-spouse"}),
      cat_key("occupation", {"Tech-support", "Craft-repair", "Other-service", "Sales",
                             "Exec-managerial", "Prof-specialty", "Handlers-cleaners",
                             "Machine-op-inspct", "Adm-clerical", "Farming-fishing",
                             "Transport-moving", "Priv-house-serv", "Protective-serv",
                             "Armed-Forces"}),
      cat_key("relationship", {"Wife", "Own-child", "Husband", "Not-in-family", "Other-relative",
                               "Unmarried"}),
      cat_key("race", {"White", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other", "Black"}),
      cat_key("sex", {"Female", "Male"}),
      num_key("capital-gain"),
      num_key("capital-loss"),
      num_key("hours-per-week"),
      cat_key("native-country",
              {"United-States", "Cambodia", "England", "Puerto-Rico", "Canada", "Germany",
               "Outlying-US(Guam-USVI-etc)", "India", "Japan", "Greece", "South", "China", "Cuba",
               "Iran", "Honduras", "Philippines", "Italy", "Poland", "Jamaica", "Vietnam",
               "Mexico", "Portugal", "Ireland", "France", "Dominican-Republic", "Laos", "Ecuador",
               "Taiwan", "Haiti", "Columbia", "Hungary", "Guatemala", "Nicaragua", "Scotland",
               "Thailand", "Yugoslavia", "El-Salvador", "Trinadad&Tobago", "Peru", "Hong",
               "Holand-Netherlands"}),
  };
  s.class_names = {"<=50K", ">50K"};
  return s;
}

FeatureSchema resolve_adult_bins(const std::string& train_path, int n_bins) {
  FeatureSchema schema = adult_schema();
  std::ifstream in(train_path);
  if (!in) throw DataError("cannot open dataset file: " + train_path);
  std::vector<std::vector<double>> numeric_values(schema.keys.size());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '|') continue;
    auto tokens = split_csv_line(t);
    if (tokens.size() != schema.keys.size() + 1)
      throw DataError(train_path + ":" + std::to_string(line_no) + ": bad arity");
    for (size_t k = 0; k < schema.keys.size(); ++k) {
      if (schema.keys[k].kind != KeyKind::kNumeric || tokens[k] == "?") continue;
      char* end = nullptr;
      double v = std::strtod(tokens[k].c_str(), &end);
      if (end != tokens[k].c_str() && *end == '\0') numeric_values[k].push_back(v);
    }
  }
  for (size_t k = 0; k < schema.keys.size(); ++k) {
    if (schema.keys[k].kind != KeyKind::kNumeric) continue;
    schema.keys[k].bin_edges = compute_quantile_edges(std::move(numeric_values[k]), n_bins);
  }
  return schema;
}

}  // namespace snnfc

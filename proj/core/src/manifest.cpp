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

#include "snnfc/manifest.hpp"

#include <fstream>

#include "snnfc/errors.hpp"

namespace snnfc {

Json schema_to_json(const FeatureSchema& schema) {
  Json keys = Json::array();
  for (const auto& k : schema.keys) {
    Json key;
    key["name"] = k.name;
    key["kind"] = k.kind == KeyKind::kCategorical ? "categorical" : "numeric";
    if (k.kind == KeyKind::kCategorical)
      key["values"] = k.values;
    else
      key["bin_edges"] = k.bin_edges;
    keys.push_back(std::move(key));
  }
  return Json{{"name", schema.name}, {"keys", std::move(keys)}, {"classes", schema.class_names}};
}

FeatureSchema schema_from_json(const Json& j) {
  FeatureSchema schema;
  schema.name = j.at("name").get<std::string>();
  for (const auto& key : j.at("keys")) {
    KeySpec k;
    k.name = key.at("name").get<std::string>();
    if (key.at("kind").get<std::string>() == "categorical") {
      k.kind = KeyKind::kCategorical;
      k.values = key.at("values").get<std::vector<std::string>>();
    } else {
      k.kind = KeyKind::kNumeric;
      k.bin_edges = key.at("bin_edges").get<std::vector<double>>();
    }
    schema.keys.push_back(std::move(k));
  }
  schema.class_names = j.at("classes").get<std::vector<std::string>>();
  return schema;
}

Json train_config_to_json(const TrainConfig& c) {
  return Json{
      {"kind", model_kind_name(c.kind)},
      {"hidden_layers", c.hidden_layers},
      {"learning_rate", c.learning_rate},
      {"epochs", c.epochs},
      {"batch_size", c.batch_size},
      {"seed", c.seed},
      {"encoding",
       {{"n_per_key", c.encoding.n_per_key},
        {"n_steps", c.encoding.n_steps},
        {"spike_rate", c.encoding.spike_rate},
        {"master_seed", c.encoding.master_seed}}},
      {"targets",
       {{"n_steps", c.targets.n_steps},
        {"spikes_per_target", c.targets.spikes_per_target},
        {"tau", c.targets.tau},
        {"separation_floor", c.targets.separation_floor},
        {"seed", c.targets.seed},
        {"max_attempts", c.targets.max_attempts}}},
      {"stdp",
       {{"a_plus", c.stdp.a_plus},
        {"a_minus", c.stdp.a_minus},
        {"tau_plus", c.stdp.tau_plus},
        {"tau_minus", c.stdp.tau_minus},
        {"w_min", c.stdp.w_min},
        {"w_max", c.stdp.w_max},
        {"neurons_per_class", c.stdp.neurons_per_class},
        {"inhibition", c.stdp.inhibition},
        {"threshold", c.stdp.threshold},
        {"theta_increment", c.stdp.theta_increment},
        {"theta_decay", c.stdp.theta_decay},
        {"epochs", c.stdp.epochs},
        {"init_weight_scale", c.stdp.init_weight_scale},
        {"weight_norm_mean", c.stdp.weight_norm_mean},
        {"lif_leak", c.stdp.lif_leak},
        {"lif_refractory", c.stdp.lif_refractory}}},
      {"srm",
       {{"eps_tau_m", c.srm.eps_tau_m},
        {"eps_tau_s", c.srm.eps_tau_s},
        {"kappa_tau", c.srm.kappa_tau},
        {"kappa_amplitude", c.srm.kappa_amplitude},
        {"beta", c.srm.beta}}},
      {"snu_leak", c.snu_leak},
      {"snu_bias", c.snu_bias},
      {"snu_init_shift", c.snu_init_shift},
      {"snu_positive_weight", c.snu_positive_weight},
      {"surrogate_steepness", c.surrogate_steepness},
      {"srm_sampled_eval", c.srm_sampled_eval},
      {"eval_seed", c.eval_seed},
      {"logreg",
       {{"learning_rate", c.logreg.learning_rate},
        {"l2", c.logreg.l2},
        {"epochs", c.logreg.epochs},
        {"seed", c.logreg.seed}}},
  };
}

TrainConfig train_config_from_json(const Json& j) {
  TrainConfig c;
  c.kind = model_kind_from_name(j.at("kind").get<std::string>());
  c.hidden_layers = j.at("hidden_layers").get<std::vector<int>>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.seed = j.at("seed").get<uint64_t>();
  const auto& e = j.at("encoding");
  c.encoding.n_per_key = e.at("n_per_key").get<int>();
  c.encoding.n_steps = e.at("n_steps").get<int>();
  c.encoding.spike_rate = e.at("spike_rate").get<double>();
  c.encoding.master_seed = e.at("master_seed").get<uint64_t>();
  const auto& t = j.at("targets");
  c.targets.n_steps = t.at("n_steps").get<int>();
  c.targets.spikes_per_target = t.at("spikes_per_target").get<int>();
  c.targets.tau = t.at("tau").get<double>();
  c.targets.separation_floor = t.at("separation_floor").get<double>();
  c.targets.seed = t.at("seed").get<uint64_t>();
  c.targets.max_attempts = t.at("max_attempts").get<int>();
  const auto& s = j.at("stdp");
  c.stdp.a_plus = s.at("a_plus").get<double>();
  c.stdp.a_minus = s.at("a_minus").get<double>();
  c.stdp.tau_plus = s.at("tau_plus").get<double>();
  c.stdp.tau_minus = s.at("tau_minus").get<double>();
  c.stdp.w_min = s.at("w_min").get<double>();
  c.stdp.w_max = s.at("w_max").get<double>();
  c.stdp.neurons_per_class = s.at("neurons_per_class").get<int>();
  c.stdp.inhibition = s.at("inhibition").get<double>();
  c.stdp.threshold = s.at("threshold").get<double>();
  c.stdp.theta_increment = s.at("theta_increment").get<double>();
  c.stdp.theta_decay = s.at("theta_decay").get<double>();
  c.stdp.epochs = s.at("epochs").get<int>();
  c.stdp.init_weight_scale = s.at("init_weight_scale").get<double>();
  c.stdp.weight_norm_mean = s.at("weight_norm_mean").get<double>();
  c.stdp.lif_leak = s.at("lif_leak").get<double>();
  c.stdp.lif_refractory = s.at("lif_refractory").get<int>();
  const auto& k = j.at("srm");
  c.srm.eps_tau_m = k.at("eps_tau_m").get<double>();
  c.srm.eps_tau_s = k.at("eps_tau_s").get<double>();
  c.srm.kappa_tau = k.at("kappa_tau").get<double>();
  c.srm.kappa_amplitude = k.at("kappa_amplitude").get<double>();
  c.srm.beta = k.at("beta").get<double>();
  c.snu_leak = j.at("snu_leak").get<double>();
  c.snu_bias = j.at("snu_bias").get<double>();
  c.snu_init_shift = j.at("snu_init_shift").get<double>();
  c.snu_positive_weight = j.at("snu_positive_weight").get<double>();
  c.surrogate_steepness = j.at("surrogate_steepness").get<double>();
  c.srm_sampled_eval = j.at("srm_sampled_eval").get<bool>();
  c.eval_seed = j.at("eval_seed").get<uint64_t>();
  const auto& lr = j.at("logreg");
  c.logreg.learning_rate = lr.at("learning_rate").get<double>();
  c.logreg.l2 = lr.at("l2").get<double>();
  c.logreg.epochs = lr.at("epochs").get<int>();
  c.logreg.seed = lr.at("seed").get<uint64_t>();
  return c;
}

Json noise_model_to_json(const NoiseModel& n) {
  return Json{{"c0", n.c0},       {"c1", n.c1},   {"c2", n.c2},
              {"noise_scale", n.noise_scale}, {"seed", n.seed}};
}

NoiseModel noise_model_from_json(const Json& j) {
  NoiseModel n;
  n.c0 = j.at("c0").get<double>();
  n.c1 = j.at("c1").get<double>();
  n.c2 = j.at("c2").get<double>();
  n.noise_scale = j.at("noise_scale").get<double>();
  n.seed = j.at("seed").get<uint64_t>();
  return n;
}

Json eval_result_to_json(const EvalResult& result, const FeatureSchema& schema) {
  Json confusion = Json::array();
  for (Eigen::Index r = 0; r < result.confusion.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < result.confusion.cols(); ++c) row.push_back(result.confusion(r, c));
    confusion.push_back(std::move(row));
  }
  return Json{{"accuracy", result.accuracy},
              {"confusion", std::move(confusion)},
              {"classes", schema.class_names},
              {"n_samples", result.predictions.size()}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open JSON file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write JSON file: " + path);
  out << j.dump(2) << '\n';
}

namespace {
constexpr char kCacheMagic[8] = {'S', 'N', 'F', 'C', 'D', 'S', '0', '1'};
}

void save_dataset_cache(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset cache: " + path);
  out.write(kCacheMagic, sizeof(kCacheMagic));
  Json header;
  header["schema"] = schema_to_json(dataset.schema);
  header["split_seed"] = dataset.split_seed;
  header["train_fraction"] = dataset.train_fraction;
  header["n_records"] = dataset.records.size();
  header["has_fixed_split"] = !dataset.fixed_is_test.empty();
  const std::string hs = header.dump();
  const auto len = static_cast<uint64_t>(hs.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(hs.data(), static_cast<std::streamsize>(hs.size()));
  for (size_t i = 0; i < dataset.records.size(); ++i) {
    const Record& r = dataset.records[i];
    for (int v : r.values) {
      int32_t le = v;
      out.write(reinterpret_cast<const char*>(&le), sizeof(le));
    }
    int32_t label = r.label;
    out.write(reinterpret_cast<const char*>(&label), sizeof(label));
    if (!dataset.fixed_is_test.empty()) {
      uint8_t flag = dataset.fixed_is_test[i];
      out.write(reinterpret_cast<const char*>(&flag), sizeof(flag));
    }
  }
  if (!out) throw DataError("failed writing dataset cache: " + path);
}

Dataset load_dataset_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset cache: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::string(magic, 8) != std::string(kCacheMagic, 8))
    throw DataError("not a dataset cache (bad magic): " + path);
  uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string hs(len, '\0');
  in.read(hs.data(), static_cast<std::streamsize>(len));
  if (!in) throw DataError("dataset cache truncated: " + path);
  Json header = Json::parse(hs);

  Dataset ds;
  ds.schema = schema_from_json(header.at("schema"));
  ds.split_seed = header.at("split_seed").get<uint64_t>();
  ds.train_fraction = header.at("train_fraction").get<double>();
  const auto n = header.at("n_records").get<size_t>();
  const bool fixed = header.at("has_fixed_split").get<bool>();
  const int k = ds.schema.feature_count();
  ds.records.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Record r;
    r.values.resize(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      int32_t v;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      r.values[static_cast<size_t>(j)] = v;
    }
    int32_t label;
    in.read(reinterpret_cast<char*>(&label), sizeof(label));
    r.label = label;
    if (fixed) {
      uint8_t flag;
      in.read(reinterpret_cast<char*>(&flag), sizeof(flag));
      ds.fixed_is_test.push_back(flag);
    }
    ds.records.push_back(std::move(r));
  }
  if (!in) throw DataError("dataset cache truncated: " + path);
  return ds;
}

}  // namespace snnfc

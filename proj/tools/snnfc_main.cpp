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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "snnfc/datagen.hpp"  // Eigen first; httplib drags in resolv.h whose _res macro breaks it
#include "snnfc/dataset.hpp"
#include "snnfc/errors.hpp"
#include "snnfc/hardware.hpp"
#include "snnfc/learning.hpp"
#include "snnfc/manifest.hpp"
#include "snnfc/model_io.hpp"
#include "snnfc/presets.hpp"
#include "snnfc/sha256.hpp"

#include <CLI11.hpp>
#include <httplib.h>

namespace fs = std::filesystem;
using namespace snnfc;

namespace {

const std::vector<std::string> kDatasets = {"adult", "nursery", "car", "connect4"};

// Structural fingerprints of the original UCI files, used as a sanity check
// when real data is supplied.
const std::map<std::string, size_t> kOfficialRows = {
    {"car", 1728}, {"nursery", 12960}, {"connect4", 67557}, {"adult", 32561}};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string default_data_dir() {
  if (const char* env = std::getenv("SNNFC_DATA_DIR")) return env;
  return "data";
}

void require_known_dataset(const std::string& name) {
  for (const auto& d : kDatasets)
    if (d == name) return;
  std::ostringstream os;
  os << "unknown dataset '" << name << "'; expected one of {";
  for (size_t i = 0; i < kDatasets.size(); ++i) os << (i ? ", " : "") << kDatasets[i];
  os << "}";
  throw ConfigError(os.str());
}

struct DatasetFiles {
  std::vector<std::string> paths;  // adult has two files, the rest one
};

DatasetFiles dataset_files(const std::string& name, const std::string& data_dir) {
  DatasetFiles f;
  if (name == "car") f.paths = {data_dir + "/car.data"};
  if (name == "nursery") f.paths = {data_dir + "/nursery.data"};
  if (name == "connect4") f.paths = {data_dir + "/connect-4.data"};
  if (name == "adult") f.paths = {data_dir + "/adult.data", data_dir + "/adult.test"};
  return f;
}

void synthesize(const std::string& name, const std::string& data_dir, uint64_t seed) {
  fs::create_directories(data_dir);
  DatasetFiles files = dataset_files(name, data_dir);
  if (name == "car") synth_car(files.paths[0]);
  if (name == "nursery") synth_nursery(files.paths[0]);
  if (name == "connect4") synth_connect4(files.paths[0], seed);
  if (name == "adult") synth_adult(files.paths[0], files.paths[1], seed);
}

// Loads a dataset from raw UCI-format files, resolving Adult's quantile bins
// from its training file and preserving its official train/test membership.
Dataset load_raw(const std::string& name, const DatasetFiles& files, uint64_t split_seed,
                 double train_fraction, int adult_bins, LoadStats* stats) {
  Dataset ds;
  if (name == "adult") {
    FeatureSchema schema = resolve_adult_bins(files.paths[0], adult_bins);
    LoadStats train_stats, test_stats;
    Dataset train_ds = load_uci_csv(files.paths[0], schema, &train_stats);
    Dataset test_ds = load_uci_csv(files.paths[1], schema, &test_stats);
    ds.schema = schema;
    ds.records = train_ds.records;
    ds.fixed_is_test.assign(train_ds.records.size(), 0);
    for (auto& r : test_ds.records) {
      ds.records.push_back(std::move(r));
      ds.fixed_is_test.push_back(1);
    }
    if (stats) {
      stats->rows = train_stats.rows + test_stats.rows;
      stats->unknown_tokens = train_stats.unknown_tokens + test_stats.unknown_tokens;
    }
  } else {
    FeatureSchema schema =
        name == "car" ? car_schema() : (name == "nursery" ? nursery_schema() : connect4_schema());
    ds = load_uci_csv(files.paths[0], schema, stats);
  }
  ds.split_seed = split_seed;
  ds.train_fraction = train_fraction;
  return ds;
}

struct PreparedData {
  Dataset dataset;
  std::vector<Record> train;
  std::vector<Record> test;
};

PreparedData split_prepared(Dataset ds) {
  Split sp = stratified_split(ds);
  PreparedData out;
  out.train = gather(ds, sp.train_indices);
  out.test = gather(ds, sp.test_indices);
  out.dataset = std::move(ds);
  return out;
}

std::string prepared_cache_path(const std::string& run_dir, const std::string& dataset) {
  return run_dir + "/prepare-" + dataset + "/dataset.bin";
}

// Loads the `prepare` output; falls back to raw files in data_dir when no
// cache exists yet.
PreparedData load_prepared(const std::string& dataset, const std::string& run_dir,
                           const std::string& data_dir) {
  const std::string cache = prepared_cache_path(run_dir, dataset);
  if (fs::exists(cache)) return split_prepared(load_dataset_cache(cache));
  DatasetFiles files = dataset_files(dataset, data_dir);
  for (const auto& p : files.paths)
    if (!fs::exists(p))
      throw DataError("no prepared cache at " + cache + " and raw file missing: " + p +
                      " (run `snnfc prepare` or `snnfc synth` first)");
  return split_prepared(load_raw(dataset, files, 7, 0.8, 8, nullptr));
}

Json dataset_manifest(const std::string& name, const Dataset& ds, const DatasetFiles& files,
                      const LoadStats& stats, const PreparedData& prepared, bool synthetic) {
  Json sources = Json::array();
  for (const auto& p : files.paths)
    sources.push_back({{"path", p}, {"sha256", Sha256::hex_of_file(p)}});
  Json counts = Json::array();
  for (int c : class_counts(ds.records, ds.schema.class_count())) counts.push_back(c);
  return Json{
      {"artifact_version", kArtifactVersion},
      {"command", "prepare"},
      {"dataset", name},
      {"synthetic", synthetic},
      {"source_files", std::move(sources)},
      {"rows", stats.rows},
      {"unknown_tokens", stats.unknown_tokens},
      {"schema", schema_to_json(ds.schema)},
      {"schema_fingerprint", ds.schema.fingerprint()},
      {"split_seed", ds.split_seed},
      {"train_fraction", ds.train_fraction},
      {"official_split", !ds.fixed_is_test.empty()},
      {"class_counts", std::move(counts)},
      {"train_rows", prepared.train.size()},
      {"test_rows", prepared.test.size()},
      {"train_fingerprint", records_fingerprint(prepared.train)},
      {"test_fingerprint", records_fingerprint(prepared.test)},
  };
}

// Plain-HTTP fetch helper. The UCI mirrors increasingly require TLS, so this
// exists for environments with an HTTP egress proxy; offline use goes through
// `synth` or manually placed files.
void fetch_dataset(const std::string& name, const std::string& data_dir) {
  static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> kUrls = {
      {"car", {{"/ml/machine-learning-databases/car/car.data", "car.data"}}},
      {"nursery", {{"/ml/machine-learning-databases/nursery/nursery.data", "nursery.data"}}},
      {"connect4",
       {{"/ml/machine-learning-databases/connect-4/connect-4.data.Z", "connect-4.data.Z"}}},
      {"adult",
       {{"/ml/machine-learning-databases/adult/adult.data", "adult.data"},
        {"/ml/machine-learning-databases/adult/adult.test", "adult.test"}}},
  };
  fs::create_directories(data_dir);
  httplib::Client client("archive.ics.uci.edu", 80);
  client.set_follow_location(true);
  for (const auto& [remote, local] : kUrls.at(name)) {
    auto res = client.Get(remote);
    if (!res || res->status != 200)
      throw DataError("fetch failed for " + remote +
                      " (no network or TLS-only mirror); place the file under " + data_dir +
                      " manually or use --synth / `snnfc synth`");
    std::ofstream out(data_dir + "/" + local, std::ios::binary);
    out << res->body;
    std::cout << "fetched " << local << " (" << res->body.size() << " bytes)\n";
  }
  if (name == "connect4" && fs::exists(data_dir + "/connect-4.data.Z"))
    throw DataError("connect-4 ships compressed (.Z); decompress it to connect-4.data");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"snnfc: spiking-neural-network file classification toolkit"};
  app.require_subcommand(1);

  std::string data_dir = default_data_dir();
  std::string run_dir = "runs";
  app.add_option("--data-dir", data_dir, "Directory with raw dataset files")
      ->envname("SNNFC_DATA_DIR");
  app.add_option("--run-dir", run_dir, "Directory for prepared caches, models, manifests");

  // ---- prepare ----
  auto* prepare = app.add_subcommand("prepare", "Load, validate, bin, and split a dataset");
  std::string p_dataset;
  uint64_t p_seed = 7;
  double p_fraction = 0.8;
  int p_bins = 8;
  bool p_synth = false, p_fetch = false;
  prepare->add_option("dataset", p_dataset, "One of adult|nursery|car|connect4")->required();
  prepare->add_option("--seed", p_seed, "Split seed (ignored for adult's official split)");
  prepare->add_option("--train-fraction", p_fraction, "Train share for the seeded split");
  prepare->add_option("--bins", p_bins, "Quantile bins per numeric key (adult)");
  prepare->add_flag("--synth", p_synth, "Generate the synthetic stand-in if files are missing");
  prepare->add_flag("--fetch", p_fetch, "Try downloading missing files over plain HTTP");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "Write synthetic stand-in dataset files");
  std::string s_dataset = "all";
  uint64_t s_seed = 1;
  synth->add_option("dataset", s_dataset, "Dataset name or 'all'");
  synth->add_option("--seed", s_seed, "Generator seed (adult/connect4)");

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "Train a classifier");
  std::string t_dataset, t_mode, t_config_file, t_out, t_hidden;
  int t_system = 3, t_layers = 2;
  int t_epochs = -1, t_batch = -1;
  double t_lr = -1.0;
  int64_t t_seed = -1;
  bool t_logreg = false;
  train_cmd->add_option("dataset", t_dataset, "One of adult|nursery|car|connect4")->required();
  train_cmd->add_option("--system", t_system, "1 = STDP, 2 = probabilistic BP, 3 = SNU BPTT");
  train_cmd->add_option("--mode", t_mode, "System 1 only: unsup|sup");
  train_cmd->add_flag("--logreg", t_logreg, "Train the logistic-regression baseline instead");
  train_cmd->add_option("--layers", t_layers, "Weight-matrix count (backprop systems)");
  train_cmd->add_option("--hidden", t_hidden, "Comma-separated hidden sizes (overrides preset)");
  train_cmd->add_option("--epochs", t_epochs, "Override preset epochs");
  train_cmd->add_option("--lr", t_lr, "Override preset learning rate");
  train_cmd->add_option("--batch", t_batch, "Override preset batch size");
  train_cmd->add_option("--seed", t_seed, "Override preset seed");
  train_cmd->add_option("--config", t_config_file, "JSON config file (flags still win)");
  train_cmd->add_option("--out", t_out, "Model output path");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a stored model");
  std::string e_model, e_dataset, e_split = "test", e_out;
  eval_cmd->add_option("--model", e_model, "Model file")->required();
  eval_cmd->add_option("--dataset", e_dataset, "Dataset name")->required();
  eval_cmd->add_option("--split", e_split, "test|train");
  eval_cmd->add_option("--out", e_out, "Metrics JSON output path");

  // ---- hw-eval ----
  auto* hw_cmd = app.add_subcommand("hw-eval", "Evaluate on the memristive crossbar simulator");
  std::string h_model, h_dataset, h_out;
  double h_scale = 1.0, h_c0 = NoiseModel{}.c0, h_c1 = NoiseModel{}.c1, h_c2 = NoiseModel{}.c2;
  uint64_t h_seed = 1;
  bool h_ideal_adc = false, h_per_sample = false;
  hw_cmd->add_option("--model", h_model, "Model file (SNU)")->required();
  hw_cmd->add_option("--dataset", h_dataset, "Dataset name")->required();
  hw_cmd->add_option("--noise-scale", h_scale, "Multiplier on sigma(g); 0 disables noise");
  hw_cmd->add_option("--noise-seed", h_seed, "Device programming seed");
  hw_cmd->add_option("--c0", h_c0, "sigma(g) constant coefficient (muS)");
  hw_cmd->add_option("--c1", h_c1, "sigma(g) linear coefficient");
  hw_cmd->add_option("--c2", h_c2, "sigma(g) quadratic coefficient");
  hw_cmd->add_flag("--ideal-adc", h_ideal_adc, "Disable 8-bit output quantization");
  hw_cmd->add_flag("--per-sample-noise", h_per_sample, "Resample device noise per inference");
  hw_cmd->add_option("--out", h_out, "Metrics JSON output path");

  // ---- sweep-noise ----
  auto* sweep_cmd = app.add_subcommand("sweep-noise", "Noise sweep over scales and seeds");
  std::string w_model, w_dataset, w_scales = "0,1,5,10", w_out = "sweep.csv";
  int w_seeds = 5;
  sweep_cmd->add_option("--model", w_model, "Model file (SNU)")->required();
  sweep_cmd->add_option("--dataset", w_dataset, "Dataset name")->required();
  sweep_cmd->add_option("--scales", w_scales, "Comma-separated noise scales");
  sweep_cmd->add_option("--seeds", w_seeds, "Seeds per scale");
  sweep_cmd->add_option("--out", w_out, "CSV output path");

  // ---- report ----
  auto* report_cmd = app.add_subcommand("report", "Summarize run manifests as a table + CSV");
  std::string r_runs = "runs", r_out = "report";
  report_cmd->add_option("--runs", r_runs, "Directory scanned recursively for run.json files");
  report_cmd->add_option("--out", r_out, "Output prefix (.txt and .csv)");

  CLI11_PARSE(app, argc, argv);

  // ------------------------------------------------------------------
  if (synth->parsed()) {
    Timer timer;
    std::vector<std::string> names;
    if (s_dataset == "all")
      names = kDatasets;
    else {
      require_known_dataset(s_dataset);
      names = {s_dataset};
    }
    for (const auto& n : names) {
      synthesize(n, data_dir, s_seed);
      std::cout << "synth: wrote " << n << " stand-in into " << data_dir << "\n";
    }
    Json manifest{{"artifact_version", kArtifactVersion},
                  {"command", "synth"},
                  {"datasets", names},
                  {"seed", s_seed},
                  {"wall_seconds", timer.seconds()}};
    fs::create_directories(run_dir);
    write_json_file(run_dir + "/synth.json", manifest);
    return 0;
  }

  if (prepare->parsed()) {
    Timer timer;
    require_known_dataset(p_dataset);
    DatasetFiles files = dataset_files(p_dataset, data_dir);
    bool missing = false;
    for (const auto& p : files.paths) missing = missing || !fs::exists(p);
    bool synthetic = false;
    if (missing && p_fetch) fetch_dataset(p_dataset, data_dir);
    missing = false;
    for (const auto& p : files.paths) missing = missing || !fs::exists(p);
    if (missing && p_synth) {
      synthesize(p_dataset, data_dir, p_seed);
      synthetic = true;
    }
    for (const auto& p : files.paths)
      if (!fs::exists(p)) throw DataError("missing dataset file: " + p);

    LoadStats stats;
    Dataset ds = load_raw(p_dataset, files, p_seed, p_fraction, p_bins, &stats);
    auto official = kOfficialRows.find(p_dataset);
    const size_t expected = official->second + (p_dataset == "adult" ? 16281 : 0);
    if (stats.rows != expected)
      std::cerr << "prepare: note: " << stats.rows << " rows (official file has " << expected
                << ")\n";
    PreparedData prepared = split_prepared(ds);

    const std::string out_dir = run_dir + "/prepare-" + p_dataset;
    fs::create_directories(out_dir);
    save_dataset_cache(ds, out_dir + "/dataset.bin");
    Json manifest = dataset_manifest(p_dataset, ds, files, stats, prepared, synthetic);
    manifest["wall_seconds"] = timer.seconds();
    write_json_file(out_dir + "/dataset.json", manifest);
    std::cout << "prepare: " << p_dataset << ": " << ds.records.size() << " records, train "
              << prepared.train.size() << " / test " << prepared.test.size() << ", cache "
              << out_dir << "\n";
    return 0;
  }

  if (train_cmd->parsed()) {
    Timer timer;
    require_known_dataset(t_dataset);
    ModelKind kind = t_logreg ? ModelKind::kLogReg : system_to_kind(t_system, t_mode);
    if (t_logreg && (!t_mode.empty() || train_cmd->count("--system")))
      throw ConfigError("--logreg conflicts with --system/--mode");
    if (kind == ModelKind::kStdpSupervised || kind == ModelKind::kStdpUnsupervised) {
      if (train_cmd->count("--layers") || !t_hidden.empty())
        throw ConfigError("system 1 is a single plastic layer; --layers/--hidden do not apply");
    }

    TrainConfig config = preset_config(kind, t_dataset, t_layers);
    if (!t_config_file.empty()) {
      Json file_json = read_json_file(t_config_file);
      TrainConfig file_config = train_config_from_json(file_json);
      if (file_config.kind != kind)
        throw ConfigError("config file model kind disagrees with the command line");
      config = file_config;
    }
    if (!t_hidden.empty()) {
      config.hidden_layers.clear();
      std::stringstream ss(t_hidden);
      std::string tok;
      while (std::getline(ss, tok, ','))
        config.hidden_layers.push_back(std::stoi(tok));
    }
    if (t_epochs > 0) config.epochs = t_epochs;
    if (t_lr > 0) config.learning_rate = t_lr;
    if (t_batch > 0) config.batch_size = t_batch;
    if (t_seed >= 0) config.seed = static_cast<uint64_t>(t_seed);

    PreparedData prepared = load_prepared(t_dataset, run_dir, data_dir);
    TrainedModel model = train_model(prepared.train, prepared.dataset.schema, config);
    EvalResult train_result = evaluate(model, prepared.train);
    EvalResult test_result = evaluate(model, prepared.test);

    std::string out = t_out;
    if (out.empty()) {
      std::string tag = t_logreg ? "logreg" : "sys" + std::to_string(t_system);
      if (!t_mode.empty()) tag += "-" + t_mode;
      const std::string dir = run_dir + "/" + t_dataset + "-" + tag;
      fs::create_directories(dir);
      out = dir + "/model.bin";
    } else if (fs::path(out).has_parent_path()) {
      fs::create_directories(fs::path(out).parent_path());
    }
    save_model(model, out);

    Json manifest{{"artifact_version", kArtifactVersion},
                  {"command", "train"},
                  {"dataset", t_dataset},
                  {"model_file", out},
                  {"model_kind", model_kind_name(kind)},
                  {"config", train_config_to_json(config)},
                  {"schema_fingerprint", prepared.dataset.schema.fingerprint()},
                  {"train_fingerprint", records_fingerprint(prepared.train)},
                  {"test_fingerprint", records_fingerprint(prepared.test)},
                  {"loss_curve", model.loss_curve},
                  {"metrics",
                   {{"train", eval_result_to_json(train_result, model.schema)},
                    {"test", eval_result_to_json(test_result, model.schema)}}},
                  {"wall_seconds", timer.seconds()}};
    write_json_file(fs::path(out).parent_path().empty()
                        ? "run.json"
                        : (fs::path(out).parent_path() / "run.json").string(),
                    manifest);
    std::printf("train: %s %s: train %.4f, test %.4f (%.1fs) -> %s\n", t_dataset.c_str(),
                model_kind_name(kind).c_str(), train_result.accuracy, test_result.accuracy,
                timer.seconds(), out.c_str());
    return 0;
  }

  auto check_model_dataset = [&](const TrainedModel& model, const PreparedData& prepared) {
    if (model.schema.fingerprint() != prepared.dataset.schema.fingerprint())
      throw DataError("model/dataset encoding mismatch: model was trained on schema " +
                      model.schema.fingerprint().substr(0, 12) + ", dataset has " +
                      prepared.dataset.schema.fingerprint().substr(0, 12));
  };

  if (eval_cmd->parsed()) {
    Timer timer;
    require_known_dataset(e_dataset);
    TrainedModel model = load_model(e_model);
    PreparedData prepared = load_prepared(e_dataset, run_dir, data_dir);
    check_model_dataset(model, prepared);
    const auto& records = e_split == "train" ? prepared.train : prepared.test;
    EvalResult result = evaluate(model, records);
    Json manifest{{"artifact_version", kArtifactVersion},
                  {"command", "eval"},
                  {"dataset", e_dataset},
                  {"split", e_split},
                  {"model_file", e_model},
                  {"model_kind", model_kind_name(model.kind)},
                  {"config", train_config_to_json(model.config)},
                  {"records_fingerprint", records_fingerprint(records)},
                  {"metrics", eval_result_to_json(result, model.schema)},
                  {"wall_seconds", timer.seconds()}};
    write_json_file(e_out.empty() ? e_model + ".eval.json" : e_out, manifest);
    std::printf("eval: %s on %s/%s: accuracy %.4f\n", model_kind_name(model.kind).c_str(),
                e_dataset.c_str(), e_split.c_str(), result.accuracy);
    return 0;
  }

  if (hw_cmd->parsed()) {
    Timer timer;
    require_known_dataset(h_dataset);
    TrainedModel model = load_model(h_model);
    PreparedData prepared = load_prepared(h_dataset, run_dir, data_dir);
    check_model_dataset(model, prepared);
    NoiseModel noise;
    noise.c0 = h_c0;
    noise.c1 = h_c1;
    noise.c2 = h_c2;
    noise.noise_scale = h_scale;
    noise.seed = h_seed;
    CrossbarConfig cb;
    cb.quantize = !h_ideal_adc;
    cb.per_sample_noise = h_per_sample;
    EvalResult result = hw_evaluate(model, prepared.test, noise, cb);
    Json manifest{{"artifact_version", kArtifactVersion},
                  {"command", "hw-eval"},
                  {"dataset", h_dataset},
                  {"model_file", h_model},
                  {"noise", noise_model_to_json(noise)},
                  {"quantize", cb.quantize},
                  {"per_sample_noise", cb.per_sample_noise},
                  {"metrics", eval_result_to_json(result, model.schema)},
                  {"wall_seconds", timer.seconds()}};
    write_json_file(h_out.empty() ? h_model + ".hweval.json" : h_out, manifest);
    std::printf("hw-eval: %s noise %.1fx seed %llu: accuracy %.4f\n", h_dataset.c_str(), h_scale,
                static_cast<unsigned long long>(h_seed), result.accuracy);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    Timer timer;
    require_known_dataset(w_dataset);
    TrainedModel model = load_model(w_model);
    PreparedData prepared = load_prepared(w_dataset, run_dir, data_dir);
    check_model_dataset(model, prepared);
    std::vector<double> scales;
    {
      std::stringstream ss(w_scales);
      std::string tok;
      while (std::getline(ss, tok, ',')) scales.push_back(std::stod(tok));
    }
    std::ofstream csv(w_out);
    if (!csv) throw DataError("cannot write CSV: " + w_out);
    csv << "dataset,noise_scale,seed,accuracy\n";
    Json rows = Json::array();
    for (double scale : scales) {
      for (int seed = 1; seed <= w_seeds; ++seed) {
        NoiseModel noise;
        noise.noise_scale = scale;
        noise.seed = static_cast<uint64_t>(seed);
        CrossbarConfig cb;
        EvalResult result = hw_evaluate(model, prepared.test, noise, cb);
        csv << w_dataset << ',' << scale << ',' << seed << ',' << result.accuracy << '\n';
        rows.push_back({{"noise_scale", scale}, {"seed", seed}, {"accuracy", result.accuracy}});
      }
    }
    Json manifest{{"artifact_version", kArtifactVersion},
                  {"command", "sweep-noise"},
                  {"dataset", w_dataset},
                  {"model_file", w_model},
                  {"scales", scales},
                  {"seeds_per_scale", w_seeds},
                  {"rows", std::move(rows)},
                  {"wall_seconds", timer.seconds()}};
    write_json_file(w_out + ".json", manifest);
    std::printf("sweep-noise: %zu rows -> %s\n",
                scales.size() * static_cast<size_t>(w_seeds), w_out.c_str());
    return 0;
  }

  if (report_cmd->parsed()) {
    struct Row {
      std::string dataset, kind;
      double train = 0, test = 0;
      std::string file;
    };
    std::vector<Row> rows;
    if (fs::exists(r_runs))
      for (const auto& entry : fs::recursive_directory_iterator(r_runs)) {
        if (entry.path().filename() != "run.json") continue;
        Json j = read_json_file(entry.path().string());
        if (j.value("command", "") != "train") continue;
        Row row;
        row.dataset = j.value("dataset", "?");
        row.kind = j.value("model_kind", "?");
        row.train = j["metrics"]["train"]["accuracy"].get<double>();
        row.test = j["metrics"]["test"]["accuracy"].get<double>();
        row.file = entry.path().string();
        rows.push_back(std::move(row));
      }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(a.dataset, a.kind) < std::tie(b.dataset, b.kind);
    });
    std::ofstream txt(r_out + ".txt");
    std::ofstream csv(r_out + ".csv");
    csv << "dataset,model,train_accuracy,test_accuracy,manifest\n";
    txt << std::left;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %-12s %8s %8s\n", "dataset", "model", "train",
                  "test");
    txt << line;
    for (const auto& row : rows) {
      std::snprintf(line, sizeof(line), "%-10s %-12s %7.2f%% %7.2f%%\n", row.dataset.c_str(),
                    row.kind.c_str(), 100 * row.train, 100 * row.test);
      txt << line;
      csv << row.dataset << ',' << row.kind << ',' << row.train << ',' << row.test << ','
          << row.file << '\n';
      std::cout << line;
    }
    std::cout << "report: " << rows.size() << " training runs -> " << r_out << ".txt/.csv\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const TrainError& e) {
    std::cerr << "training error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
